"""Witness constructions over F_q[x,y]/(x^2,xy,y^2) for every supported q, with timings."""

import argparse
import time

from purecomp.counterexamples import (SUPPORTED_Q, rd_injectivity_failure, rd_series_obstruction, rd_vs_pure,
                                      witness_ring)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="+", default=list(SUPPORTED_Q))
    args = ap.parse_args()
    print(f"{'q':>2} {'|R|':>5} {'|M|':>6} {'indec':>6} {'mu':>3} {'rd series':>9} "
          f"{'rd':>5} {'pure':>5} {'|Hom(L,S)|':>10} {'|Hom(N,S)|':>10} {'certified':>9} {'seconds':>8}")
    for q in args.q:
        t = time.perf_counter()
        W = witness_ring(q)
        assert all(W.facts().values()), W.facts()
        obs = rd_series_obstruction(W)
        sep = rd_vs_pure(W)
        wit = rd_injectivity_failure(W, control=q <= 3)
        print(f"{q:>2} {W.ring.size:>5} {obs.size:>6} {str(obs.indecomposable):>6} {obs.mu:>3} "
              f"{obs.rd_series_count:>9} {str(sep.rd):>5} {str(sep.pure):>5} {wit.hom_L_S:>10} "
              f"{wit.hom_N_S:>10} {str(wit.certified):>9} {time.perf_counter() - t:>8.1f}")


if __name__ == "__main__":
    main()
