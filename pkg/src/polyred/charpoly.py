"""Random sign matrices and their exact characteristic polynomials.

``characteristic_polynomial`` runs the Faddeev-LeVerrier recurrence in
Python integers; every division in it is exact.  ``charpoly_batch`` runs
the same recurrence on a stack of sign matrices modulo a few 26-bit primes
(float64 matrix products, exact at this size) and rebuilds the coefficients
by CRT.  It is the fast path used by the samplers and is checked against
the exact version in the tests.
``determinant`` is fraction-free Bareiss elimination, kept independent of
both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from polyred.bigpoly import IntPolynomial


@dataclass(frozen=True)
class SignMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.entries)
        d = len(rows)
        if d == 0 or any(len(r) != d for r in rows):
            raise ValueError("a sign matrix must be square and nonempty")
        if any(v not in (-1, 1) for r in rows for v in r):
            raise ValueError("sign matrix entries must be +1 or -1")
        object.__setattr__(self, "entries", rows)

    @property
    def dimension(self) -> int:
        return len(self.entries)

    @classmethod
    def from_array(cls, a) -> SignMatrix:
        return cls(tuple(tuple(r) for r in np.asarray(a).tolist()))

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)


def sample_matrices(d: int, rng: np.random.Generator, count: int) -> np.ndarray:
    """``count`` independent uniform sign matrices as a (count, d, d) array."""
    if d < 1:
        raise ValueError("matrix dimension must be >= 1")
    return 2 * rng.integers(0, 2, size=(count, d, d), dtype=np.int64) - 1


def sample_matrix(d: int, rng: np.random.Generator) -> SignMatrix:
    return SignMatrix.from_array(sample_matrices(d, rng, 1)[0])


def matrices_by_index(d: int, idx: np.ndarray) -> np.ndarray:
    """Sign matrices numbered by the bits of ``idx`` (bit k set -> entry k is -1).

    Entry k is row k // d, column k % d; requires d*d <= 62.
    """
    if d * d > 62:
        raise ValueError("indexed enumeration supports d*d <= 62")
    bits = (idx[:, None] >> np.arange(d * d, dtype=np.int64)[None, :]) & 1
    return (1 - 2 * bits).reshape(-1, d, d)


def _matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def characteristic_polynomial_int(a: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """det(xI - A) for any square integer matrix, constant term first."""
    d = len(a)
    coeffs = [0] * (d + 1)
    coeffs[d] = 1
    m = [[0] * d for _ in range(d)]
    for k in range(1, d + 1):
        c_prev = coeffs[d - k + 1]
        for i in range(d):
            m[i][i] += c_prev
        am = _matmul(a, m)
        tr = sum(am[i][i] for i in range(d))
        if tr % k:
            raise ArithmeticError("inexact Faddeev-LeVerrier division")
        coeffs[d - k] = -tr // k
        m = am
    return tuple(coeffs)


def characteristic_polynomial(m: SignMatrix) -> IntPolynomial:
    return IntPolynomial(characteristic_polynomial_int(m.entries))


def determinant_int(a: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination."""
    m = [list(r) for r in a]
    d = len(m)
    sign = 1
    prev = 1
    for k in range(d - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, d) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, d):
            for j in range(k + 1, d):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return sign * m[d - 1][d - 1]


def determinant(m: SignMatrix) -> int:
    return determinant_int(m.entries)


# ---------------------------------------------------------- batched path


def coefficient_bound(d: int) -> int:
    """Bound on |coefficients| of det(xI - A) for a d x d sign matrix.

    The x^(d-k) coefficient is a signed sum of C(d,k) principal k x k
    minors, each at most k^(k/2) by Hadamard.
    """
    return max(math.comb(d, k) * (math.isqrt(k ** k) + 1) for k in range(d + 1))


def _primes_below(limit: int, count: int) -> list[int]:
    out = []
    n = limit - 1
    while len(out) < count:
        if n % 2 and all(n % p for p in range(3, math.isqrt(n) + 1, 2)):
            out.append(n)
        n -= 2
    return out


_PRIMES = _primes_below(1 << 26, 24)


def _charpoly_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Faddeev-LeVerrier mod p on a stack of +-1 matrices; (n, d+1) residues.

    The matrix products run in float64: entries of ``a`` are +-1 and those of
    ``m`` lie in (-3p, 3p), so each product entry is an integer of size
    below 3dp, exact while 3dp < 2**53.
    """
    n, d, _ = a.shape
    out = np.zeros((n, d + 1), dtype=np.int64)
    out[:, d] = 1
    af = a.astype(np.float64)
    m = np.zeros((n, d, d), dtype=np.float64)
    diag = np.arange(d)
    inv_p = 1.0 / p
    for k in range(1, d + 1):
        m[:, diag, diag] += out[:, d - k + 1][:, None]
        m = np.matmul(af, m)
        # floor(m/p) may be off by one, leaving residues in (-p, 2p)
        m -= np.floor(m * inv_p) * p
        tr = m[:, diag, diag].sum(axis=1).astype(np.int64) % p
        out[:, d - k] = (p - tr) % p * pow(k, -1, p) % p
    return out


def charpoly_batch(mats: np.ndarray) -> list[tuple[int, ...]]:
    """Exact characteristic polynomials of a (n, d, d) stack of sign matrices."""
    mats = np.asarray(mats, dtype=np.int64)
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
        raise ValueError("expected a stack of square matrices")
    n, d, _ = mats.shape
    if n == 0:
        return []
    bound = 2 * coefficient_bound(d) + 1
    primes, modulus = [], 1
    for p in _PRIMES:
        primes.append(p)
        modulus *= p
        if modulus > bound:
            break
    else:
        raise ValueError(f"dimension {d} needs more CRT primes than available")
    residues = [_charpoly_mod(mats, p) for p in primes]
    if len(primes) == 1:
        p = primes[0]
        r = residues[0]
        vals = np.where(r > p // 2, r - p, r)
        return [tuple(row) for row in vals.tolist()]
    # Garner mixed-radix digits stay below each prime, then Python ints
    digits = [residues[0]]
    for i in range(1, len(primes)):
        p = primes[i]
        v = residues[i].copy()
        for j in range(i):
            v = (v - digits[j]) % p * pow(primes[j], -1, p) % p
        digits.append(v)
    acc = np.zeros((n, d + 1), dtype=object)
    radix = 1
    for j, p in enumerate(primes):
        acc = acc + digits[j].astype(object) * radix
        radix *= p
    half = modulus // 2
    return [tuple(v - modulus if v > half else v for v in row) for row in acc.tolist()]
