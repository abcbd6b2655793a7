"""Dense univariate polynomials over a prime field F_p.

A polynomial is a tuple of coefficients in ``[0, p)``, lowest degree first,
with no trailing zeros.  The zero polynomial is ``()``.
"""

from __future__ import annotations

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor

Poly = tuple


def trim(c) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def from_int(a: int, p: int) -> Poly:
    return trim((a % p,))


def deg(f: Poly) -> int:
    return len(f) - 1


def add(f: Poly, g: Poly, p: int) -> Poly:
    n = max(len(f), len(g))
    return trim(((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p
                for i in range(n))


def neg(f: Poly, p: int) -> Poly:
    return tuple((-c) % p for c in f)


def sub(f: Poly, g: Poly, p: int) -> Poly:
    return add(f, neg(g, p), p)


def scale(f: Poly, c: int, p: int) -> Poly:
    return trim((c * a) % p for a in f)


def mul(f: Poly, g: Poly, p: int) -> Poly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(c % p for c in out)


def divmod_(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = deg(g)
    inv = pow(g[-1], -1, p)
    q = [0] * max(len(f) - dg, 0)
    for k in range(len(f) - 1 - dg, -1, -1):
        c = (r[k + dg] * inv) % p
        q[k] = c
        if c:
            for j, b in enumerate(g):
                r[k + j] = (r[k + j] - c * b) % p
    return trim(q), trim(r[:dg] if dg > 0 else [])


def mod(f: Poly, g: Poly, p: int) -> Poly:
    return divmod_(f, g, p)[1]


def monic(f: Poly, p: int) -> Poly:
    if not f:
        return ()
    return scale(f, pow(f[-1], -1, p), p)


def gcdex(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly, Poly]:
    """Return ``(h, s, t)`` with ``s*f + t*g = h`` and ``h`` monic (or zero)."""
    r0, r1 = f, g
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return (), (), ()
    c = pow(r0[-1], -1, p)
    return scale(r0, c, p), scale(s0, c, p), scale(t0, c, p)


def gcd(f: Poly, g: Poly, p: int) -> Poly:
    return gcdex(f, g, p)[0]


def lcm(f: Poly, g: Poly, p: int) -> Poly:
    if not f or not g:
        return ()
    return monic(divmod_(mul(f, g, p), gcd(f, g, p), p)[0], p)


def factor(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Monic irreducible factorization of a nonzero ``f`` as ``[(g, e), ...]``."""
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if deg(f) == 0:
        return []
    _, facs = gf_factor([ZZ(c) for c in reversed(f)], p, ZZ)
    out = [(trim(int(c) for c in reversed(g)), e) for g, e in facs]
    out.sort(key=lambda ge: (deg(ge[0]), ge[0]))
    return out


def power(f: Poly, e: int, p: int) -> Poly:
    out: Poly = (1,)
    for _ in range(e):
        out = mul(out, f, p)
    return out


def all_polys(p: int, max_deg: int):
    """Every polynomial of degree < ``max_deg`` (including zero)."""
    from itertools import product

    for coeffs in product(range(p), repeat=max_deg):
        yield trim(coeffs)


def format_poly(f: Poly, var: str = "t") -> str:
    if not f:
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms)
