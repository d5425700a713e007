"""Brute-force reference implementations shared by the tests."""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

from polyred import bigpoly

_POINTS = np.arange(-3, 4, dtype=np.int64)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    return [k for k in range(1, n + 1) if n % k == 0]


@lru_cache(maxsize=None)
def _candidates(m: int, lead: int, const: int, norm_sq: int) -> np.ndarray:
    """All integer degree-m polynomials with positive lead dividing ``lead``,
    constant dividing ``const`` and interior coefficients within the
    Mignotte bound |b_j| <= C(m, j) ||f||_2."""
    bounds = [math.isqrt(math.comb(m, j) ** 2 * norm_sq) for j in range(1, m)]
    interior = list(itertools.product(*[range(-b, b + 1) for b in bounds]))
    rows = []
    for lc in _divisors(lead):
        for c0 in _divisors(const):
            for sign in (1, -1):
                for mid in interior:
                    rows.append((sign * c0, *mid, lc))
    return np.array(rows, dtype=np.int64).reshape(-1, m + 1)


def _screen(cands: np.ndarray, f: tuple[int, ...]) -> np.ndarray:
    powers = _POINTS[None, :] ** np.arange(cands.shape[1])[:, None]
    G = cands @ powers
    F = np.array([bigpoly.horner(f, int(x)) for x in _POINTS], dtype=np.int64)
    safe = np.where(G == 0, 1, G)
    ok = np.where(G == 0, F[None, :] == 0, F[None, :] % safe == 0)
    return cands[ok.all(axis=1)]


def brute_reducible(coeffs) -> bool:
    """Reducibility over Q by exhaustive bounded-divisor trial division."""
    f = bigpoly.trim(int(c) for c in coeffs)
    n = len(f) - 1
    if n < 1:
        raise ValueError("degree must be >= 1")
    if n == 1:
        return False
    if f[0] == 0:
        return True
    f = bigpoly.primitive(f)
    norm_sq = bigpoly.norm2_sq(f)
    for m in range(1, n // 2 + 1):
        for g in _screen(_candidates(m, abs(f[-1]), f[0], norm_sq), f):
            if bigpoly.divmod_exact(f, tuple(int(v) for v in g)) is not None:
                return True
    return False


def brute_min_factor_degree(coeffs) -> int:
    f = bigpoly.primitive(bigpoly.trim(int(c) for c in coeffs))
    n = len(f) - 1
    if f[0] == 0:
        return 1
    norm_sq = bigpoly.norm2_sq(f)
    for m in range(1, n // 2 + 1):
        for g in _screen(_candidates(m, abs(f[-1]), f[0], norm_sq), f):
            if bigpoly.divmod_exact(f, tuple(int(v) for v in g)) is not None:
                return m
    return n


def all_polys(max_degree: int, lo: int, hi: int):
    """Every integer polynomial of degree 1..max_degree with coefficients in [lo, hi]."""
    vals = range(lo, hi + 1)
    for d in range(1, max_degree + 1):
        for tail in itertools.product(vals, repeat=d):
            for lead in vals:
                if lead:
                    yield tail + (lead,)
