"""Random polynomial ensembles.

Every family has fixed degree ``d`` and independent coefficients, except
``charpm1`` whose polynomial is the characteristic polynomial of a random
d x d sign matrix.  A model is described by a :class:`ModelSpec`; the CLI
grammar is ``family:degree[:K]``.

Sampling is organised in fixed-size chunks.  Chunk ``c`` of a run with seed
``s`` is drawn from a Philox stream keyed by ``(s, c)``, and a whole chunk
is always drawn even when only a prefix is used.  Trial ``i`` is therefore a
function of ``(s, i)`` alone, whatever the number of workers.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from polyred import charpoly
from polyred.bigpoly import IntPolynomial

CHUNK = 4096
DEFAULT_ENUMERATION_CAP = 1 << 30


class Family(str, enum.Enum):
    ZERO_ONE_FIXED_ENDS = "z1"
    ZERO_ONE_FREE_CONSTANT = "z1-free"
    PLUS_MINUS_ONE = "pm1"
    MONIC_UNIFORM_SYM = "monic-sym"
    MONIC_UNIFORM_NONNEG = "monic-nonneg"
    NON_MONIC_UNIFORM = "nonmonic"
    MONIC_BINOMIAL = "binomial"
    CHAR_POLY_PM1 = "charpm1"


_FIXED_SUPPORT = {
    Family.ZERO_ONE_FIXED_ENDS,
    Family.ZERO_ONE_FREE_CONSTANT,
    Family.PLUS_MINUS_ONE,
    Family.CHAR_POLY_PM1,
}


class ModelError(ValueError):
    pass


class SupportTooLarge(ModelError):
    def __init__(self, size: int, cap: int):
        super().__init__(f"support has {size} elements, above the enumeration cap {cap}")
        self.size = size
        self.cap = cap


@dataclass(frozen=True)
class ModelSpec:
    family: Family
    degree: int
    support: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not isinstance(self.degree, int) or self.degree < 1:
            raise ModelError(f"degree must be a positive integer, got {self.degree!r}")
        if self.family in _FIXED_SUPPORT:
            if self.support is not None:
                raise ModelError(f"{self.family.value} takes no support parameter K")
        elif not isinstance(self.support, int) or self.support < 1:
            raise ModelError(f"{self.family.value} needs a support parameter K >= 1")

    @classmethod
    def parse(cls, text: str) -> ModelSpec:
        parts = text.strip().split(":")
        if len(parts) not in (2, 3):
            raise ModelError(f"model spec must look like family:degree[:K], got {text!r}")
        try:
            family = Family(parts[0])
        except ValueError:
            names = ", ".join(f.value for f in Family)
            raise ModelError(f"unknown family {parts[0]!r}; known: {names}") from None
        try:
            nums = [int(p) for p in parts[1:]]
        except ValueError:
            raise ModelError(f"degree and K must be integers in {text!r}") from None
        return cls(family, nums[0], nums[1] if len(nums) == 2 else None)

    def with_degree(self, d: int) -> ModelSpec:
        return ModelSpec(self.family, d, self.support)

    def __str__(self):
        if self.support is None:
            return f"{self.family.value}:{self.degree}"
        return f"{self.family.value}:{self.degree}:{self.support}"


# ------------------------------------------------------------ coordinates
#
# Each family except charpm1 is a product law over coefficient positions.
# ``_coordinates`` gives, per coefficient index 0..d, the value list and
# integer weights (probability = weight / sum of weights).


def _binomial_weights(K: int) -> list[int]:
    # P(v) = C(K,v) (K-1)^(K-v) / K^K
    return [math.comb(K, v) * (K - 1) ** (K - v) for v in range(K + 1)]


def _coordinates(spec: ModelSpec) -> list[tuple[list[int], list[int]]]:
    d, K, fam = spec.degree, spec.support, spec.family
    one = ([1], [1])
    if fam is Family.ZERO_ONE_FIXED_ENDS:
        return [one] + [([0, 1], [1, 1])] * (d - 1) + [one]
    if fam is Family.ZERO_ONE_FREE_CONSTANT:
        return [([0, 1], [1, 1])] * d + [one]
    if fam is Family.PLUS_MINUS_ONE:
        return [([-1, 1], [1, 1])] * d + [one]
    if fam is Family.MONIC_UNIFORM_SYM:
        vals = list(range(-K, K + 1))
        return [(vals, [1] * len(vals))] * d + [one]
    if fam is Family.MONIC_UNIFORM_NONNEG:
        vals = list(range(K + 1))
        return [(vals, [1] * len(vals))] * d + [one]
    if fam is Family.NON_MONIC_UNIFORM:
        vals = list(range(-K, K + 1))
        lead = [v for v in vals if v]
        return [(vals, [1] * len(vals))] * d + [(lead, [1] * len(lead))]
    if fam is Family.MONIC_BINOMIAL:
        return [(list(range(K + 1)), _binomial_weights(K))] * d + [one]
    raise ModelError("charpm1 has no coefficient-wise law")


def support_size(spec: ModelSpec) -> int:
    """Number of elementary outcomes; sign matrices for charpm1."""
    if spec.family is Family.CHAR_POLY_PM1:
        return 2 ** (spec.degree * spec.degree)
    return math.prod(len(v) for v, _ in _coordinates(spec))


# --------------------------------------------------------------- sampling


def chunk_generator(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, chunk])))


def _draw_chunk_array(spec: ModelSpec, rng: np.random.Generator, size: int) -> np.ndarray:
    d, K, fam = spec.degree, spec.support, spec.family
    out = np.ones((size, d + 1), dtype=np.int64)
    if fam is Family.ZERO_ONE_FIXED_ENDS:
        out[:, 1:d] = rng.integers(0, 2, size=(size, d - 1))
    elif fam is Family.ZERO_ONE_FREE_CONSTANT:
        out[:, :d] = rng.integers(0, 2, size=(size, d))
    elif fam is Family.PLUS_MINUS_ONE:
        out[:, :d] = 2 * rng.integers(0, 2, size=(size, d)) - 1
    elif fam is Family.MONIC_UNIFORM_SYM:
        out[:, :d] = rng.integers(-K, K + 1, size=(size, d))
    elif fam is Family.MONIC_UNIFORM_NONNEG:
        out[:, :d] = rng.integers(0, K + 1, size=(size, d))
    elif fam is Family.NON_MONIC_UNIFORM:
        out[:, :] = rng.integers(-K, K + 1, size=(size, d + 1))
        zero = np.flatnonzero(out[:, d] == 0)
        while zero.size:
            out[zero, d] = rng.integers(-K, K + 1, size=zero.size)
            zero = zero[out[zero, d] == 0]
    elif fam is Family.MONIC_BINOMIAL:
        # K independent Bernoulli(1/K) summands per coefficient
        for i in range(d):
            hits = rng.integers(0, K, size=(size, K)) == 0
            out[:, i] = hits.sum(axis=1)
    else:
        raise ModelError("charpm1 is drawn as matrices")
    return out


def draw_chunk(spec: ModelSpec, seed: int, chunk: int, count: int = CHUNK):
    """The first ``count`` trials of chunk ``chunk``.

    Returns an int64 array with one coefficient row per trial, or for
    large-dimension charpm1 a list of coefficient tuples (entries may
    exceed 64 bits).
    """
    if not 0 <= count <= CHUNK:
        raise ValueError(f"count must lie in [0, {CHUNK}]")
    rng = chunk_generator(seed, chunk)
    if spec.family is Family.CHAR_POLY_PM1:
        mats = charpoly.sample_matrices(spec.degree, rng, CHUNK)
        rows = charpoly.charpoly_batch(mats[:count])
        if charpoly.coefficient_bound(spec.degree) < 1 << 62:
            return np.array(rows, dtype=np.int64).reshape(count, spec.degree + 1)
        return rows
    return _draw_chunk_array(spec, rng, CHUNK)[:count]


def sample(spec: ModelSpec, rng: np.random.Generator) -> IntPolynomial:
    """One draw from the model using ``rng``."""
    if spec.family is Family.CHAR_POLY_PM1:
        m = charpoly.sample_matrix(spec.degree, rng)
        return charpoly.characteristic_polynomial(m)
    return IntPolynomial(_draw_chunk_array(spec, rng, 1)[0].tolist())


# ------------------------------------------------------------ enumeration


def enumerate_support(spec: ModelSpec, cap: int = DEFAULT_ENUMERATION_CAP
                      ) -> Iterator[tuple[IntPolynomial, Fraction]]:
    """Every support polynomial once with its exact probability.

    Coefficient vectors come in lexicographic order (constant term most
    significant).  For charpm1 all 2**(d*d) sign matrices are enumerated
    and equal characteristic polynomials are merged.
    """
    size = support_size(spec)
    if size > cap:
        raise SupportTooLarge(size, cap)
    if spec.family is Family.CHAR_POLY_PM1:
        yield from _enumerate_charpoly(spec.degree, size)
        return
    coords = _coordinates(spec)
    total = math.prod(sum(w) for _, w in coords)
    tables = [list(zip(v, w)) for v, w in coords]
    for combo in itertools.product(*tables):
        weight = math.prod(w for _, w in combo)
        yield IntPolynomial(v for v, _ in combo), Fraction(weight, total)


def _enumerate_charpoly(d: int, size: int) -> Iterator[tuple[IntPolynomial, Fraction]]:
    acc: dict[tuple[int, ...], int] = {}
    step = 1 << 14
    for start in range(0, size, step):
        mats = charpoly.matrices_by_index(d, np.arange(start, min(size, start + step), dtype=np.int64))
        for c in charpoly.charpoly_batch(mats):
            acc[c] = acc.get(c, 0) + 1
    for c in sorted(acc):
        yield IntPolynomial(c), Fraction(acc[c], size)


def index_block(spec: ModelSpec, start: int, stop: int) -> tuple[np.ndarray, np.ndarray]:
    """Support elements ``start .. stop-1`` in enumeration order.

    Returns ``(rows, weights)``: int64 coefficient rows and int64 integer
    weights (probability = weight / :func:`weight_total`).  Not defined for
    charpm1.
    """
    coords = _coordinates(spec)
    idx = np.arange(start, stop, dtype=np.int64)
    rows = np.empty((idx.size, len(coords)), dtype=np.int64)
    weights = np.ones(idx.size, dtype=object)
    uniform = all(len(set(w)) == 1 for _, w in coords)
    rest = idx.copy()
    for j in range(len(coords) - 1, -1, -1):
        vals, w = coords[j]
        digit = rest % len(vals)
        rest //= len(vals)
        rows[:, j] = np.asarray(vals, dtype=np.int64)[digit]
        if not uniform:
            weights = weights * np.asarray(w, dtype=object)[digit]
    if uniform:
        return rows, np.ones(idx.size, dtype=np.int64)
    return rows, weights


def weight_total(spec: ModelSpec) -> int:
    if spec.family is Family.CHAR_POLY_PM1:
        return support_size(spec)
    coords = _coordinates(spec)
    if all(len(set(w)) == 1 for _, w in coords):
        return support_size(spec)
    return math.prod(sum(w) for _, w in coords)


# ------------------------------------------------------------- baselines


def lowest_possible_factor_degree(spec: ModelSpec) -> int:
    """2 for even-degree pm1 (no integer root is possible), else 1."""
    if spec.family is Family.PLUS_MINUS_ONE and spec.degree % 2 == 0 and spec.degree >= 2:
        return 2
    return 1


def baseline_event_probability(spec: ModelSpec) -> Fraction:
    """Exact denominator of the reducible-over-lowest-factor ratio."""
    from polyred import analytic

    fam, K, d = spec.family, spec.support, spec.degree
    if fam in (Family.MONIC_UNIFORM_SYM, Family.NON_MONIC_UNIFORM):
        return Fraction(1, 2 * K + 1)
    if fam is Family.MONIC_UNIFORM_NONNEG:
        return Fraction(1, K + 1)
    if fam is Family.MONIC_BINOMIAL:
        return Fraction(K - 1, K) ** K
    if fam is Family.ZERO_ONE_FREE_CONSTANT:
        return Fraction(1, 2)
    if fam is Family.PLUS_MINUS_ONE:
        if d % 2 == 0:
            raise ModelError("even-degree pm1 cannot have a linear factor, so it has no baseline")
        return analytic.pm1_linear_counts(d).exact
    if fam is Family.CHAR_POLY_PM1:
        if d < 2:
            raise ModelError("charpm1 baseline needs d >= 2")
        return analytic.matrix_singularity_lower_bound(d).exact
    raise ModelError(
        "z1 has no constant-zero baseline; the x+1 probability comes from "
        "analytic.linear_factor_prob_zero_one"
    )
