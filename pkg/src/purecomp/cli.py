"""``purecomp`` command line.

Exit codes: 0 success, 1 a checked property failed, 2 usage or input error.
Reports go to standard output as JSON; a one-line summary goes to standard error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .counterexamples import (SUPPORTED_Q, rd_injectivity_failure, rd_series_obstruction, rd_vs_pure,
                              witness_ring)
from .decompose import canonical_form, diagonal_reduce, indecomposable_refine, mu
from .goldie import goldie_bruteforce, goldie_structural
from .module import build_module
from .parsing import InputDocument, ParseError, format_value, parse_document, parse_ring
from .rings import RingError
from .series import (enumerate_series, normalize_series, series_from_decomposition, series_outcomes)


class UsageError(Exception):
    pass


def threads() -> int:
    """Parallelism cap from ``PURECOMP_THREADS`` (computations here run on one thread)."""
    raw = os.environ.get("PURECOMP_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"PURECOMP_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError("PURECOMP_THREADS must be at least 1")
    return n


def _load(path, name: str | None):
    if isinstance(path, InputDocument):
        doc = path
        try:
            return doc.module(name)
        except KeyError as e:
            raise UsageError(str(e)) from None
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(str(e)) from None
    doc = parse_document(text)
    try:
        entry = doc.module(name)
    except KeyError as e:
        raise UsageError(str(e)) from None
    return entry


def _matrix(R, M) -> list:
    return [[format_value(R, a) for a in row] for row in M]


def cmd_reduce(args) -> tuple[dict, int]:
    entry = _load(args.file, args.module)
    p = entry.presentation
    red = diagonal_reduce(p.ring, [list(r) for r in p.entries], ncols=p.nrels)
    R = p.ring
    return {"ring": R.descriptor(), "U": _matrix(R, red.U), "D": _matrix(R, red.D),
            "V": _matrix(R, red.V)}, 0


def cmd_decompose(args) -> tuple[dict, int]:
    entry = _load(args.file, args.module)
    M = build_module(entry.presentation)
    R = M.ring
    out = M.as_json()
    out["canonical"] = [R.format(I.generator) for I in canonical_form(M)]
    if R.finite:
        out["indecomposable"] = [R.format(I.generator)
                                 for I in indecomposable_refine(canonical_form(M)).factors]
    out["mu"] = mu(M)
    out["annihilator"] = R.format(M.annihilator().generator)
    return out, 0


def cmd_series(args) -> tuple[dict, int]:
    entry = _load(args.file, args.module)
    M = build_module(entry.presentation)
    if not M.ring.finite:
        raise UsageError("series need a finite module")
    out = {"module": M.as_json()}
    s = series_from_decomposition(M, mode=args.mode)
    out["decomposition_series"] = s.as_json() | {"chain": s.generator_indices}
    status = 0
    if args.enumerate:
        oc = series_outcomes(M, args.mode)
        R = M.ring
        out["outcomes"] = [{"annihilators": [R.format(a) for a in ms], "series": c}
                           for ms, c in sorted(oc.counts.items(), key=lambda kv: str(kv[0]))]
        out["total_series"] = oc.total
        listed = enumerate_series(M, args.mode, limit=args.limit)
        out["series"] = [t.as_json() | {"chain": t.generator_indices} for t in listed]
        if not oc.unique:
            status = 1
    if args.normalize:
        targets = out.get("series") and enumerate_series(M, args.mode, limit=args.limit) or [s]
        normalized = []
        for t in targets:
            n = normalize_series(t)
            normalized.append(n.as_json() | {"chain": n.generator_indices, "cases": list(n.trace),
                                             "almost_increasing": n.predicates().almost_increasing})
            if not n.predicates().almost_increasing:
                status = 1
        out["normalized"] = normalized
    return out, status


def cmd_goldie(args) -> tuple[dict, int]:
    entry = _load(args.file, args.module)
    M = build_module(entry.presentation)
    out = {"module": M.as_json(), "structural": goldie_structural(M)}
    status = 0
    if M.ring.finite:
        T = M.to_table()
        rep = goldie_bruteforce(T)
        out["bruteforce"] = rep.dimension
        if args.witness:
            out["witness"] = rep.as_json(T)["witness"]
        status = int(rep.dimension != out["structural"])
    return out, status


def cmd_verify(args) -> tuple[dict, int]:
    from .verify import run_suite

    R = parse_ring(args.ring)
    results = run_suite(R, args.max_size, seed=args.seed, warfield=not args.skip_warfield)
    report = {"ring": R.descriptor(), "max_size": args.max_size,
              "properties": [r.as_json() for r in results]}
    return report, 0 if all(r.ok for r in results) else 1


def cmd_counterexample(args) -> tuple[dict, int]:
    if args.q not in SUPPORTED_Q:
        raise UsageError(f"--q must be one of {SUPPORTED_Q}")
    W = witness_ring(args.q)
    parts = [args.part] if args.part else ["rd-series", "rd-vs-pure", "rd-injective"]
    out, ok = {"ring": str(W.ring), "q": args.q, "ring_facts": W.facts()}, all(W.facts().values())
    if "rd-series" in parts:
        rep = rd_series_obstruction(W)
        out["rd_series"] = rep.as_json()
        ok &= rep.no_rd_series and rep.indecomposable and rep.mu == 2
    if "rd-vs-pure" in parts:
        sep = rd_vs_pure(W)
        out["rd_vs_pure"] = {"rd": sep.rd, "pure": sep.pure, "separates": sep.separates}
        ok &= sep.separates
    if "rd-injective" in parts:
        wit = rd_injectivity_failure(W, control=args.q <= 3)
        out["rd_injective"] = wit.as_json()
        ok &= wit.certified
    return out, 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="purecomp", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def with_file(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        p.add_argument("--module", help="module name (default: first in the file)")
        return p

    with_file("reduce", "diagonal reduction U*A*V = D of a presentation matrix")
    with_file("decompose", "canonical form and indecomposable refinement")
    p = with_file("series", "composition series with indecomposable cyclic factors")
    p.add_argument("--enumerate", action="store_true", help="count all series and list some")
    p.add_argument("--normalize", action="store_true", help="normalize the reported series")
    p.add_argument("--mode", choices=("rd", "pure"), default="rd")
    p.add_argument("--limit", type=int, default=20, help="number of series to list")
    p = with_file("goldie", "Goldie dimension")
    p.add_argument("--witness", action="store_true")
    p = sub.add_parser("verify", help="exhaustive property sweep over one ring")
    p.add_argument("ring")
    p.add_argument("--max-size", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--skip-warfield", action="store_true", help="skip the RD-versus-pure sweep")
    p = sub.add_parser("counterexample", help="witness constructions over F_q[x,y]/(x^2,xy,y^2)")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--part", choices=("rd-series", "rd-vs-pure", "rd-injective"))
    return ap


COMMANDS = {"reduce": cmd_reduce, "decompose": cmd_decompose, "series": cmd_series,
            "goldie": cmd_goldie, "verify": cmd_verify, "counterexample": cmd_counterexample}


def run(command: str, document=None, *options: str) -> tuple[dict, int]:
    """Library entry point: ``(report, exit code)`` for one command.

    ``document`` is an :class:`InputDocument`, the text of one, or ``None``
    for ``verify`` and ``counterexample``; ``options`` are extra CLI flags.
    """
    if isinstance(document, str):
        document = parse_document(document)
    argv = [command] + (["-"] if document is not None else []) + list(options)
    args = build_parser().parse_args(argv)
    if document is not None:
        args.file = document
    threads()
    return COMMANDS[command](args)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        threads()
        report, status = COMMANDS[args.command](args)
    except (ParseError, UsageError) as e:
        print(f"purecomp: {e}", file=sys.stderr)
        return 2
    except RingError as e:
        print(f"purecomp: {e}", file=sys.stderr)
        return 2
    json.dump(report, sys.stdout, indent=2, sort_keys=False, default=str)
    sys.stdout.write("\n")
    print(f"purecomp {args.command}: {'ok' if status == 0 else 'property violated'}", file=sys.stderr)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
