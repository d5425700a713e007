"""Irreducibility and factorization over Q for integer polynomials.

The pipeline, cheapest step first:

1. a zero constant term (x divides),
2. rational roots from the rational-root theorem,
3. squarefreeness (certified by any prime modulo which the polynomial stays
   squarefree; otherwise an exact gcd with the derivative),
4. a degree sieve over small primes,
5. Zassenhaus: Hensel lifting plus subset recombination.

Most random polynomials are settled by steps 1-4.
"""

from __future__ import annotations

import enum
import math
import random
import zlib
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from polyred import _kernels, bigpoly, gf
from polyred.bigpoly import IntPolynomial


class DecisionPath(str, enum.Enum):
    RATIONAL_ROOT = "rational-root"
    SQUAREFREE_GCD = "squarefree-gcd"
    DEGREE_SIEVE = "degree-sieve"
    ZASSENHAUS = "zassenhaus"


class FactorizationError(ValueError):
    """Input cannot be factored (zero or constant polynomial)."""


class UnusablePrimeError(ValueError):
    def __init__(self, prime: int, reason: str):
        super().__init__(f"prime {prime} is unusable: {reason}")
        self.prime = prime


def _odd_primes(count: int) -> list[int]:
    out, k = [], 3
    while len(out) < count:
        if all(k % p for p in out if p * p <= k):
            out.append(k)
        k += 2
    return out


SIEVE_PRIMES = _odd_primes(60)
_SIEVE_ARRAY = np.array(SIEVE_PRIMES, dtype=np.int64)
#: usable primes the sieve consults before handing over to Zassenhaus
SIEVE_DEPTH = 3
SIEVE_EXTENDED_DEPTH = 12
_KERNEL_PRIME_LIMIT = 1 << 24
_SMALL_MODULUS = 1 << 31
_INT64_SAFE = 1 << 62
_DIVISOR_LIMIT = 10**9
_SCAN_LIMIT = 20000


@dataclass(frozen=True)
class FactorReport:
    input_degree: int
    content: int
    factors: tuple[tuple[IntPolynomial, int], ...]
    is_reducible: bool
    min_factor_degree: int
    decision_path: DecisionPath

    def as_dict(self) -> dict:
        return {
            "input_degree": self.input_degree,
            "content": self.content,
            "factors": [
                {"coeffs": list(g.coeffs), "degree": g.degree, "multiplicity": m}
                for g, m in self.factors
            ],
            "is_reducible": self.is_reducible,
            "min_factor_degree": self.min_factor_degree,
            "decision_path": self.decision_path.value,
        }

    def expand(self) -> IntPolynomial:
        out = (self.content,)
        for g, m in self.factors:
            for _ in range(m):
                out = bigpoly.mul(out, g.coeffs)
        return IntPolynomial(out)


# ---------------------------------------------------------------- roots


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in SIEVE_PRIMES[:12] + [2]:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=65536)
def _divisors(n: int) -> tuple[int, ...]:
    """Sorted positive divisors of n > 0 (trial division)."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


def _root_bound(f: Sequence[int]) -> float:
    """Fujiwara bound on the absolute value of every complex root."""
    n = len(f) - 1
    ln_lead = math.log(abs(f[-1]))
    best = -math.inf
    for i in range(1, n + 1):
        a = f[n - i]
        if a:
            v = math.log(abs(a)) - ln_lead
            if i == n:
                v -= math.log(2)
            best = max(best, v / i)
    if best == -math.inf:
        return 0.0
    return 2.0 * math.exp(best) * (1 + 1e-9) + 1e-9


def _homogeneous_eval(f: Sequence[int], u: int, v: int) -> int:
    # v**n * f(u/v)
    acc = 0
    vp = 1
    for a in reversed(f):
        acc = acc * u + a * vp
        vp *= v
    return acc


def _rational_roots_fast(f: Sequence[int]) -> list[Fraction] | None:
    """Rational roots of f (f[0] != 0), or None if candidates are too many."""
    a0, an = f[0], f[-1]
    p1 = bigpoly.horner(f, 1)
    pm1 = bigpoly.horner(f, -1)
    roots = []
    if p1 == 0:
        roots.append(Fraction(1))
    if pm1 == 0:
        roots.append(Fraction(-1))
    bound = _root_bound(f)
    if bound < 1.5 and abs(an) == 1:
        return roots
    if abs(an) > _DIVISOR_LIMIT:
        return None
    vs = _divisors(abs(an))
    if abs(a0) <= _DIVISOR_LIMIT:
        us = _divisors(abs(a0))
    else:
        top = int(bound * vs[-1]) + 1
        if top > _SCAN_LIMIT:
            return None
        us = tuple(u for u in range(1, top + 1) if a0 % u == 0)
    for v in vs:
        lim = bound * v
        for u in us:
            if u > lim:
                break
            if (u == 1 and v == 1) or math.gcd(u, v) != 1:
                continue
            for s in (u, -u):
                # (v*x - s) | f forces (v - s) | f(1) and (v + s) | f(-1)
                if p1 % (v - s) or pm1 % (v + s):
                    continue
                if _homogeneous_eval(f, s, v) == 0:
                    roots.append(Fraction(s, v))
    roots.sort()
    return roots


# ---------------------------------------------------------------- sieve


def _run_sieve(f: Sequence[int], depth: int) -> tuple[np.ndarray, np.ndarray]:
    if max(f) < _INT64_SAFE and min(f) > -_INT64_SAFE:
        return _kernels.sieve_int64(np.array(f, dtype=np.int64), _SIEVE_ARRAY, depth)
    rows = np.array([[c % q for c in f] for q in SIEVE_PRIMES], dtype=np.int64)
    return _kernels.sieve_residues(rows, _SIEVE_ARRAY, depth)


def _certified(allowed: np.ndarray) -> bool:
    return not allowed[1:-1].any()


def degree_sieve(p: IntPolynomial, primes: Iterable[int]) -> set[int]:
    """Possible degrees of factors over Q, from factorizations mod each prime.

    Every prime must be coprime to the leading coefficient and keep ``p``
    squarefree; otherwise :class:`UnusablePrimeError` names it.
    """
    f = p.coeffs
    n = p.degree
    if n < 1:
        raise FactorizationError("degree sieve needs degree >= 1")
    allowed = set(range(n + 1))
    for q in primes:
        q = int(q)
        if not _is_prime(q):
            raise UnusablePrimeError(q, "not prime")
        if f[-1] % q == 0:
            raise UnusablePrimeError(q, "divides the leading coefficient")
        counts = _mod_degree_counts(f, q)
        if counts is None:
            raise UnusablePrimeError(q, "polynomial is not squarefree modulo it")
        reach = {0}
        for k, c in enumerate(counts):
            for _ in range(c):
                reach |= {s + k for s in reach}
        allowed &= reach
    return allowed


def _mod_degree_counts(f: Sequence[int], q: int) -> list[int] | None:
    g = gf.monic(gf.reduce_mod(f, q), q)
    n = len(g) - 1
    if q < _KERNEL_PRIME_LIMIT:
        counts = np.zeros(n + 1, dtype=np.int64)
        r = _kernels.ddf_counts(np.array(g, dtype=np.int64), q, counts)
        return None if r == _kernels.NOT_SQUAREFREE else counts.tolist()
    if len(gf.gcd(g, gf.deriv(g, q), q)) > 1:
        return None
    counts = [0] * (n + 1)
    for h, e in gf.distinct_degree(g, q):
        counts[e] += (len(h) - 1) // e
    return counts


# ------------------------------------------------------------- Hensel


def _pmod(a: Sequence[int], m: int) -> list[int]:
    out = [c % m for c in a]
    while out and out[-1] == 0:
        out.pop()
    return out


def _mulm(a, b, m):
    return _pmod(bigpoly.mul(a, b), m)


def _addm(a, b, m):
    return _pmod(bigpoly.add(a, b), m)


def _subm(a, b, m):
    return _pmod(bigpoly.sub(a, b), m)


def _divmod_monic(a, h, m):
    """Division by monic h over Z/m."""
    r = list(a)
    dh = len(h) - 1
    if len(r) - 1 < dh:
        return [], _pmod(r, m)
    quo = [0] * (len(r) - dh)
    for k in range(len(r) - 1 - dh, -1, -1):
        c = r[k + dh] % m
        quo[k] = c
        if c:
            for j in range(dh + 1):
                r[k + j] -= c * h[j]
    return _pmod(quo, m), _pmod(r[:dh], m)


def _hensel_step(M, f, g, h, s, t):
    """Lift f = g*h, s*g + t*h = 1 from modulus m to M (m < M <= m*m)."""
    e = _subm(f, bigpoly.mul(g, h), M)
    quo, r = _divmod_monic(_mulm(s, e, M), h, M)
    g2 = _pmod(bigpoly.add(bigpoly.add(g, bigpoly.mul(t, e)), bigpoly.mul(quo, g)), M)
    h2 = _addm(h, r, M)
    b = _pmod(bigpoly.sub(bigpoly.add(bigpoly.mul(s, g2), bigpoly.mul(t, h2)), (1,)), M)
    c, d = _divmod_monic(_mulm(s, b, M), h2, M)
    s2 = _subm(s, d, M)
    t2 = _pmod(bigpoly.sub(bigpoly.sub(t, bigpoly.mul(t, b)), bigpoly.mul(c, g2)), M)
    return g2, h2, s2, t2


def _hensel_lift(f, factors, q, Q):
    """Lift ``f = lc(f) * prod(factors) (mod q)`` to monic factors mod Q."""
    if len(factors) == 1:
        inv = pow(f[-1] % Q, -1, Q)
        return [_pmod([c * inv for c in f], Q)]
    half = len(factors) // 2
    left, right = factors[:half], factors[half:]
    g = gf.scale(_prod_mod(left, q), f[-1], q)
    h = _prod_mod(right, q)
    s, t, one = gf.gcdex(g, h, q)
    if one != [1]:
        raise ArithmeticError("modular factors are not coprime")
    # normalize so deg s < deg h and deg t < deg g
    quo, s = gf.divmod_(s, h, q)
    t = gf.add(t, gf.mul(quo, g, q), q)
    if Q < _SMALL_MODULUS:
        g, h = _lift_pair_small(f, g, h, s, t, q, Q)
        return _hensel_lift(g, left, q, Q) + _hensel_lift(h, right, q, Q)
    m = q
    fQ = _pmod(f, Q)
    while m < Q:
        M = min(m * m, Q)
        g, h, s, t = _hensel_step(M, _pmod(fQ, M), g, h, s, t)
        m = M
    return _hensel_lift(g, left, q, Q) + _hensel_lift(h, right, q, Q)


def _lift_pair_small(f, g, h, s, t, q, Q):
    dg, dh = len(g) - 1, len(h) - 1

    def arr(p, size):
        out = np.zeros(size, dtype=np.int64)
        out[: len(p)] = p
        return out

    g2, h2 = _kernels.hensel_pair(
        arr(_pmod(f, Q), len(f)), arr(g, dg + 1), arr(h, dh + 1),
        arr(s, dh), arr(t, dg), q, Q,
    )
    return gf.strip(g2.tolist()), gf.strip(h2.tolist())


def _prod_mod(polys, m):
    out = [1]
    for p in polys:
        out = _mulm(out, p, m)
    return out


def factor_bound(f: Sequence[int], m: int) -> int:
    """Coefficient bound 2**m * ||f||_2 * |lc(f)| for degree-m factors."""
    norm = math.isqrt(bigpoly.norm2_sq(f)) + 1
    return (1 << m) * norm * abs(f[-1])


def _choose_prime(f: Sequence[int], nfactors: np.ndarray | None) -> int:
    best, best_r = None, None
    if nfactors is not None:
        for q, r in zip(SIEVE_PRIMES, nfactors.tolist()):
            if r > 0 and (best_r is None or r < best_r):
                best, best_r = q, r
    if best is not None:
        return best
    q = SIEVE_PRIMES[-1] + 2
    while True:
        if _is_prime(q) and f[-1] % q and _mod_degree_counts(f, q) is not None:
            return q
        q += 2


def _modular_factors(f: Sequence[int], q: int) -> list[list[int]]:
    """Monic irreducible factors of f mod q (f squarefree mod q)."""
    g = gf.monic(gf.reduce_mod(f, q), q)
    seed = zlib.crc32(f"{tuple(f)}|{q}".encode())
    if 2 < q < _KERNEL_PRIME_LIMIT:
        rows = _kernels.factor_squarefree_odd(np.array(g, dtype=np.int64), q, seed)
        out = [gf.strip(row) for row in rows.tolist()]
        out.sort(key=lambda p: (len(p), p))
        return out
    return gf.factor_squarefree(g, q, random.Random(seed))


def _zassenhaus(f: tuple[int, ...], nfactors: np.ndarray | None) -> list[tuple[int, ...]]:
    """Irreducible factors of a primitive squarefree f with f(0) != 0."""
    n = len(f) - 1
    q = _choose_prime(f, nfactors)
    modular = _modular_factors(f, q)
    if len(modular) == 1:
        return [f]
    bound = factor_bound(f, n - 1)
    Q = q
    while Q <= 2 * bound:
        Q *= q
    lifted = _hensel_lift(list(f), modular, q, Q)

    found = []
    cur = f
    s = 1
    while 2 * s <= len(lifted):
        hit = False
        lc = cur[-1]
        lc_trail = lc * cur[0]
        for subset in combinations(range(len(lifted)), s):
            t = lc
            for i in subset:
                t = t * lifted[i][0] % Q
            if t > Q // 2:
                t -= Q
            if t == 0 or lc_trail % t:
                continue
            g = [lc]
            for i in subset:
                g = _mulm(g, lifted[i], Q)
            g = bigpoly.primitive(gf.symmetric(g, Q))
            quo = bigpoly.divmod_exact(cur, g)
            if quo is None:
                continue
            found.append(g)
            cur = bigpoly.primitive(quo)
            lifted = [p for i, p in enumerate(lifted) if i not in subset]
            hit = True
            break
        if not hit:
            s += 1
    found.append(cur)
    return found


# ---------------------------------------------------------- pipeline


def _split_x(f: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    k = 0
    while f[k] == 0:
        k += 1
    return k, f[k:]


def _squarefree_parts(f: tuple[int, ...]) -> list[tuple[tuple[int, ...], int]]:
    """Squarefree decomposition of a primitive f over Z."""
    g = bigpoly.gcd(f, bigpoly.diff(f))
    if len(g) == 1:
        return [(f, 1)]
    out = []
    w = bigpoly.divmod_exact(f, g)
    i = 1
    while len(w) > 1:
        y = bigpoly.gcd(w, g)
        z = bigpoly.divmod_exact(w, y)
        if len(z) > 1:
            out.append((bigpoly.primitive(z), i))
        i += 1
        w = y
        g = bigpoly.divmod_exact(g, y)
    return out


def _linear_factor(r: Fraction) -> tuple[int, ...]:
    return (-r.numerator, r.denominator)


def _factor_squarefree(f: tuple[int, ...]) -> tuple[list[tuple[int, ...]], DecisionPath]:
    """Irreducible factors of a primitive squarefree f with f(0) != 0."""
    if len(f) == 2:
        return [f], DecisionPath.RATIONAL_ROOT
    out = []
    path = None
    roots = _rational_roots_fast(f)
    if roots:
        path = DecisionPath.RATIONAL_ROOT
        for r in roots:
            lin = _linear_factor(r)
            out.append(lin)
            f = bigpoly.divmod_exact(f, lin)
        if len(f) <= 2:
            if len(f) == 2:
                out.append(bigpoly.primitive(f))
            return out, path
    allowed, nfactors = _run_sieve(f, SIEVE_EXTENDED_DEPTH)
    if _certified(allowed):
        out.append(f)
        return out, path or DecisionPath.DEGREE_SIEVE
    parts = _zassenhaus(f, nfactors)
    out.extend(parts)
    return out, path or DecisionPath.ZASSENHAUS


def _require_factorable(p: IntPolynomial) -> None:
    if p.degree < 1:
        raise FactorizationError(
            "cannot factor the zero polynomial" if p.is_zero() else "cannot factor a constant"
        )


def factor(p: IntPolynomial) -> FactorReport:
    """Complete factorization of ``p`` over Q into primitive integer irreducibles."""
    _require_factorable(p)
    f = p.coeffs
    n = p.degree
    c = bigpoly.content(f)
    if f[-1] < 0:
        c = -c
    f = tuple(v // c for v in f)
    irreducibles: dict[tuple[int, ...], int] = {}
    k, g = _split_x(f)
    if k:
        irreducibles[(0, 1)] = k
    sub_path = DecisionPath.RATIONAL_ROOT
    squarefree = True
    if len(g) > 1:
        parts = _squarefree_parts(g)
        squarefree = len(parts) == 1 and parts[0][1] == 1
        for part, mult in parts:
            facs, sub_path = _factor_squarefree(part)
            for h in facs:
                h = bigpoly.primitive(h)
                irreducibles[h] = irreducibles.get(h, 0) + mult
    ordered = sorted(irreducibles.items(), key=lambda t: (len(t[0]), t[0]))
    factors = tuple((IntPolynomial(h), m) for h, m in ordered)
    min_degree = min(h.degree for h, _ in factors)
    # report the first pipeline stage that settles the question
    if n == 1 or min_degree == 1:
        path = DecisionPath.RATIONAL_ROOT
    elif not squarefree:
        path = DecisionPath.SQUAREFREE_GCD
    else:
        path = sub_path
    return FactorReport(
        input_degree=n,
        content=c,
        factors=factors,
        is_reducible=sum(m for _, m in factors) >= 2,
        min_factor_degree=min_degree,
        decision_path=path,
    )


def classify(coeffs: Sequence[int]) -> tuple[bool, int, DecisionPath]:
    """``(is_reducible, min_factor_degree, decision_path)`` for a degree >= 1 input.

    Avoids a full factorization unless the polynomial is reducible without
    a rational root.
    """
    f = bigpoly.trim(int(v) for v in coeffs)
    n = len(f) - 1
    if n < 1:
        raise FactorizationError("classify needs a polynomial of degree >= 1")
    if n == 1:
        return False, 1, DecisionPath.RATIONAL_ROOT
    if f[0] == 0:
        return True, 1, DecisionPath.RATIONAL_ROOT
    c = bigpoly.content(f)
    if c != 1:
        f = tuple(v // c for v in f)
    roots = _rational_roots_fast(f)
    if roots:
        return True, 1, DecisionPath.RATIONAL_ROOT
    allowed, nfactors = _run_sieve(f, SIEVE_EXTENDED_DEPTH)
    if _certified(allowed):
        return False, n, DecisionPath.DEGREE_SIEVE
    if (nfactors > 0).any():
        # a usable prime proves f squarefree; no roots, so recombine directly
        parts = _zassenhaus(f, nfactors)
        return len(parts) > 1, min(len(p) - 1 for p in parts), DecisionPath.ZASSENHAUS
    report = factor(IntPolynomial(f))
    return report.is_reducible, report.min_factor_degree, report.decision_path


def classify_many(polys) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized :func:`classify` returning ``(reducible, min_degree)`` arrays.

    ``polys`` is an int64 array with one equal-degree row per polynomial
    (nonzero lead), or any iterable of coefficient sequences.  Rows the
    batched sieve certifies skip the per-polynomial pipeline.
    """
    if isinstance(polys, np.ndarray) and polys.dtype == np.int64 and polys.ndim == 2:
        m, width = polys.shape
        reducible = np.zeros(m, dtype=np.bool_)
        min_degree = np.full(m, width - 1, dtype=np.int64)
        if m == 0:
            return reducible, min_degree
        done = _kernels.certify_batch(polys, _SIEVE_ARRAY, SIEVE_EXTENDED_DEPTH)
        for r in np.flatnonzero(~done).tolist():
            red, k, _ = classify(polys[r].tolist())
            reducible[r] = red
            min_degree[r] = k
        return reducible, min_degree
    rows = [tuple(p) for p in polys]
    reducible = np.zeros(len(rows), dtype=np.bool_)
    min_degree = np.zeros(len(rows), dtype=np.int64)
    for r, p in enumerate(rows):
        red, k, _ = classify(p)
        reducible[r] = red
        min_degree[r] = k
    return reducible, min_degree


def is_reducible(p: IntPolynomial) -> bool:
    """Reducibility over Q, exiting as soon as the answer is certain."""
    _require_factorable(p)
    f = p.coeffs
    if p.degree == 1:
        return False
    if f[0] == 0:
        return True
    f = bigpoly.primitive(f)
    if _rational_roots_fast(f):
        return True
    allowed, nfactors = _run_sieve(f, SIEVE_EXTENDED_DEPTH)
    if _certified(allowed):
        return False
    if not (nfactors > 0).any():
        if len(bigpoly.gcd(f, bigpoly.diff(f))) > 1:
            return True
    parts = _zassenhaus(f, nfactors)
    return len(parts) > 1


def rational_roots(p: IntPolynomial) -> set[Fraction]:
    """All rational roots, each verified by exact evaluation."""
    _require_factorable(p)
    k, f = _split_x(p.coeffs)
    roots: set[Fraction] = {Fraction(0)} if k else set()
    if len(f) <= 1:
        return roots
    fast = _rational_roots_fast(f)
    if fast is None:
        fast = []
        for h, _ in factor(IntPolynomial(f)).factors:
            if h.degree == 1:
                fast.append(Fraction(-h[0], h[1]))
    for r in fast:
        if _homogeneous_eval(f, r.numerator, r.denominator) != 0:
            raise ArithmeticError(f"spurious root {r}")
        roots.add(r)
    return roots


def factor_mod_p(p: IntPolynomial, prime: int) -> list[tuple[tuple[int, ...], int]]:
    """Monic irreducible factors of ``p`` mod ``prime`` with multiplicities.

    The product of the factors equals ``p`` mod ``prime`` up to the unit
    ``p.lead % prime``.
    """
    prime = int(prime)
    if prime < 2 or not _is_prime(prime):
        raise ValueError(f"{prime} is not a prime")
    if p.is_zero() or p.lead % prime == 0:
        raise UnusablePrimeError(prime, "divides the leading coefficient")
    rng = random.Random(f"{p.coeffs}|{prime}")
    _, facs = gf.factor(gf.reduce_mod(p.coeffs, prime), prime, rng)
    return [(tuple(g), m) for g, m in facs]
