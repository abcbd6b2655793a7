"""Repeat the witness-module checks over Z/4[y]/(2y, y^2) next to F_2[x,y]/(x^2,xy,y^2).

Both rings are local with P^2 = 0 and two incomparable principal ideals
generating P; the first has characteristic 4.
"""

from purecomp.counterexamples import obstruction_over, witness_ring, z4_y_ring
from purecomp.finite_rings import is_arithmetic


def main():
    W = witness_ring(2)
    R, two, y = z4_y_ring()
    for ring, a, b in ((W.ring, W.a, W.b), (R, two, y)):
        out = obstruction_over(ring, a, b)
        print(f"{str(ring):<22} arithmetic={is_arithmetic(ring)} " +
              " ".join(f"{k}={v}" for k, v in out.items()))


if __name__ == "__main__":
    main()
