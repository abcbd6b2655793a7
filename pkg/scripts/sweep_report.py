"""Run the exhaustive property sweep over several rings and print a summary table.

    python scripts/sweep_report.py --rings Z/4 Z/12 --max-size 128
    python scripts/sweep_report.py --json sweep.json
"""

import argparse
import json
import time

from purecomp.parsing import parse_ring
from purecomp.verify import modules_up_to, run_suite

DEFAULT_RINGS = ["Z/4", "Z/8", "Z/12", "Z/16", "Z/24", "Z/36"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rings", nargs="+", default=DEFAULT_RINGS)
    ap.add_argument("--max-size", type=int, default=256)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--skip-warfield", action="store_true", help="skip the slow RD-versus-pure sweep")
    ap.add_argument("--json", help="also write the full report here")
    args = ap.parse_args()

    report = []
    print(f"{'ring':<8} {'modules':>7}  {'property':<42} {'checked':>8} {'ok':>4} {'seconds':>8}")
    for text in args.rings:
        R = parse_ring(text)
        count = len(modules_up_to(R, args.max_size))
        t = time.perf_counter()
        results = run_suite(R, args.max_size, seed=args.seed, warfield=not args.skip_warfield)
        for r in results:
            print(f"{text:<8} {count:>7}  {r.name:<42} {r.checked:>8} {'yes' if r.ok else 'NO':>4} "
                  f"{r.seconds:>8.1f}")
        report.append({"ring": text, "modules": count, "seconds": round(time.perf_counter() - t, 2),
                       "properties": [r.as_json() for r in results]})
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)


if __name__ == "__main__":
    main()
