"""Polynomials over the prime field GF(q).

A polynomial is a list of ints in ``range(q)``, constant term first, with a
nonzero last entry; ``[]`` is zero.  Everything here is plain Python and
works for any prime ``q``; the degree sieve uses the compiled kernels in
``polyred._kernels`` instead.
"""

from __future__ import annotations

import random
from typing import Sequence

Poly = list


def strip(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce_mod(coeffs: Sequence[int], q: int) -> Poly:
    return strip([c % q for c in coeffs])


def symmetric(coeffs: Sequence[int], m: int) -> list[int]:
    """Lift residues mod m into (-m/2, m/2]."""
    h = m // 2
    return [c - m if c > h else c for c in (v % m for v in coeffs)]


def add(a: Poly, b: Poly, q: int) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] = (out[i] + v) % q
    return strip(out)


def sub(a: Poly, b: Poly, q: int) -> Poly:
    out = list(a) + [0] * (len(b) - len(a))
    for i, v in enumerate(b):
        out[i] = (out[i] - v) % q
    return strip(out)


def scale(a: Poly, k: int, q: int) -> Poly:
    k %= q
    if k == 0:
        return []
    return [(k * v) % q for v in a]


def mul(a: Poly, b: Poly, q: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return strip([v % q for v in out])


def divmod_(a: Poly, b: Poly, q: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv = pow(b[-1], -1, q)
    quo = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = (r[k + db] * inv) % q
        quo[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] = (r[k + j] - c * b[j]) % q
    return strip(quo), strip(r[:db])


def rem(a: Poly, b: Poly, q: int) -> Poly:
    return divmod_(a, b, q)[1]


def monic(a: Poly, q: int) -> Poly:
    if not a or a[-1] == 1:
        return list(a)
    return scale(a, pow(a[-1], -1, q), q)


def gcd(a: Poly, b: Poly, q: int) -> Poly:
    a, b = list(a), list(b)
    while b:
        a, b = b, rem(a, b, q)
    return monic(a, q)


def gcdex(a: Poly, b: Poly, q: int) -> tuple[Poly, Poly, Poly]:
    """Return ``(s, t, g)`` with ``s*a + t*b = g`` and g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        quo, r = divmod_(r0, r1, q)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(quo, s1, q), q)
        t0, t1 = t1, sub(t0, mul(quo, t1, q), q)
    if not r0:
        return s0, t0, r0
    inv = pow(r0[-1], -1, q)
    return scale(s0, inv, q), scale(t0, inv, q), scale(r0, inv, q)


def powmod(a: Poly, e: int, f: Poly, q: int) -> Poly:
    result = [1]
    base = rem(a, f, q)
    while e:
        if e & 1:
            result = rem(mul(result, base, q), f, q)
        e >>= 1
        if e:
            base = rem(mul(base, base, q), f, q)
    return result


def deriv(a: Poly, q: int) -> Poly:
    return strip([(i * a[i]) % q for i in range(1, len(a))])


def _pth_root(a: Poly, q: int) -> Poly:
    return [a[i] for i in range(0, len(a), q)]


def squarefree_decomposition(f: Poly, q: int) -> list[tuple[Poly, int]]:
    """Monic squarefree parts ``[(g, i), ...]`` with ``f = lc * prod g**i``."""
    f = monic(f, q)
    out: list[tuple[Poly, int]] = []
    if len(f) <= 1:
        return out
    g = gcd(f, deriv(f, q), q)
    w = divmod_(f, g, q)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, g, q)
        z = divmod_(w, y, q)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        g = divmod_(g, y, q)[0]
    if len(g) > 1:
        for h, m in squarefree_decomposition(_pth_root(g, q), q):
            out.append((h, m * q))
    return out


def distinct_degree(f: Poly, q: int) -> list[tuple[Poly, int]]:
    """Split a monic squarefree ``f`` into products of equal-degree irreducibles."""
    out = []
    h = [0, 1]
    x = [0, 1]
    i = 0
    f = list(f)
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = powmod(h, q, f, q)
        g = gcd(f, sub(h, x, q), q)
        if len(g) > 1:
            out.append((g, i))
            f = divmod_(f, g, q)[0]
            h = rem(h, f, q)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(f: Poly, e: int, q: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a product of degree-``e`` irreducibles."""
    n = len(f) - 1
    if n == e:
        return [f]
    while True:
        a = strip([rng.randrange(q) for _ in range(n)])
        if len(a) <= 1:
            continue
        if q == 2:
            # trace map a + a^2 + ... + a^(2^(e-1))
            t = list(a)
            b = list(a)
            for _ in range(e - 1):
                b = rem(mul(b, b, q), f, q)
                t = add(t, b, q)
            g = gcd(f, t, q)
        else:
            g = gcd(f, a, q)
            if len(g) == 1:
                b = powmod(a, (q**e - 1) // 2, f, q)
                g = gcd(f, sub(b, [1], q), q)
        if 1 < len(g) < len(f):
            rest = divmod_(f, g, q)[0]
            return equal_degree(g, e, q, rng) + equal_degree(rest, e, q, rng)


def factor_squarefree(f: Poly, q: int, rng: random.Random) -> list[Poly]:
    """Monic irreducible factors of a monic squarefree polynomial."""
    out = []
    for g, e in distinct_degree(f, q):
        out.extend(equal_degree(g, e, q, rng))
    out.sort(key=lambda p: (len(p), p))
    return out


def factor(f: Poly, q: int, rng: random.Random) -> tuple[int, list[tuple[Poly, int]]]:
    """Full factorization ``(lc, [(g, mult), ...])`` into monic irreducibles."""
    f = strip(list(f))
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    lc = f[-1]
    out = []
    for g, m in squarefree_decomposition(f, q):
        out.extend((h, m) for h in factor_squarefree(g, q, rng))
    out.sort(key=lambda t: (len(t[0]), t[0], t[1]))
    return lc, out
