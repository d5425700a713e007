"""Exact event probabilities by enumerating a model's whole support.

The support is walked in blocks of consecutive enumeration indices, each
block is classified with the batched pipeline, and integer-weighted counts
are summed.  Probabilities are exact fractions over the model's weight
total.  Memory stays flat in the support size.
"""

from __future__ import annotations

import multiprocessing as mp
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from polyred import charpoly, factorint, models
from polyred.models import Family, ModelSpec, SupportTooLarge

BLOCK = 1 << 14


@dataclass(frozen=True)
class ExactStats:
    """Weighted event totals over a full support; probability = weight / total_weight."""

    model: ModelSpec
    support_size: int
    total_weight: int
    consumed_weight: int = 0
    reducible_weight: int = 0
    linear_weight: int = 0
    constant_zero_weight: int = 0
    min_degree_weight: dict = field(default_factory=dict)

    def _p(self, w: int) -> Fraction:
        return Fraction(w, self.total_weight)

    @property
    def reducible_prob(self) -> Fraction:
        return self._p(self.reducible_weight)

    @property
    def linear_factor_prob(self) -> Fraction:
        return self._p(self.linear_weight)

    @property
    def constant_zero_prob(self) -> Fraction:
        return self._p(self.constant_zero_weight)

    @property
    def min_degree_probs(self) -> dict[int, Fraction]:
        return {k: self._p(v) for k, v in sorted(self.min_degree_weight.items())}

    def as_dict(self) -> dict:
        def s(f: Fraction) -> dict:
            return {"exact": str(f), "approx": float(f)}

        return {
            "model": str(self.model),
            "support_size": self.support_size,
            "reducible_prob": s(self.reducible_prob),
            "linear_factor_prob": s(self.linear_factor_prob),
            "constant_zero_prob": s(self.constant_zero_prob),
            "min_degree_probs": {str(k): s(v) for k, v in self.min_degree_probs.items()},
        }


def _merge(a: ExactStats, b: ExactStats) -> ExactStats:
    hist = Counter(a.min_degree_weight)
    hist.update(b.min_degree_weight)
    return ExactStats(
        model=a.model,
        support_size=a.support_size,
        total_weight=a.total_weight,
        consumed_weight=a.consumed_weight + b.consumed_weight,
        reducible_weight=a.reducible_weight + b.reducible_weight,
        linear_weight=a.linear_weight + b.linear_weight,
        constant_zero_weight=a.constant_zero_weight + b.constant_zero_weight,
        min_degree_weight=dict(hist),
    )


def _block_rows(spec: ModelSpec, start: int, stop: int):
    if spec.family is Family.CHAR_POLY_PM1:
        mats = charpoly.matrices_by_index(spec.degree, np.arange(start, stop, dtype=np.int64))
        rows = np.array(charpoly.charpoly_batch(mats), dtype=np.int64)
        return rows, np.ones(stop - start, dtype=np.int64)
    return models.index_block(spec, start, stop)


def _wsum(weights: np.ndarray, mask: np.ndarray) -> int:
    if weights.dtype == object:
        return int(sum(weights[mask].tolist()))
    return int(weights[mask].sum())


def _range_stats(spec: ModelSpec, start: int, stop: int, total: int, size: int) -> ExactStats:
    acc = ExactStats(spec, size, total)
    for lo in range(start, stop, BLOCK):
        hi = min(stop, lo + BLOCK)
        rows, weights = _block_rows(spec, lo, hi)
        reducible, min_degree = factorint.classify_many(rows)
        hist = {int(k): _wsum(weights, min_degree == k) for k in np.unique(min_degree).tolist()}
        part = ExactStats(
            model=spec,
            support_size=size,
            total_weight=total,
            consumed_weight=_wsum(weights, np.ones(len(rows), dtype=bool)),
            reducible_weight=_wsum(weights, reducible),
            linear_weight=_wsum(weights, min_degree == 1),
            constant_zero_weight=_wsum(weights, rows[:, 0] == 0),
            min_degree_weight=hist,
        )
        acc = _merge(acc, part)
    return acc


def exact(spec: ModelSpec, cap: int = models.DEFAULT_ENUMERATION_CAP, workers: int = 1) -> ExactStats:
    """Classify every support element once and return exact probabilities."""
    size = models.support_size(spec)
    if size > cap:
        raise SupportTooLarge(size, cap)
    if spec.family is Family.CHAR_POLY_PM1 and spec.degree ** 2 > 62:
        raise SupportTooLarge(size, cap)
    total = models.weight_total(spec)
    if workers <= 1 or size <= BLOCK:
        out = _range_stats(spec, 0, size, total, size)
    else:
        nblocks = (size + BLOCK - 1) // BLOCK
        edges = [min(size, (i * nblocks // workers) * BLOCK) for i in range(workers + 1)]
        ctx = mp.get_context("fork")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            parts = list(pool.map(_range_stats, [spec] * workers, edges[:-1], edges[1:],
                                  [total] * workers, [size] * workers))
        out = parts[0]
        for p in parts[1:]:
            out = _merge(out, p)
    if out.consumed_weight != total:
        raise RuntimeError(f"enumeration consumed weight {out.consumed_weight} of {total}")
    return out


def conditional_linear_given_reducible(spec_or_stats) -> Fraction:
    """P(linear factor | reducible), exactly."""
    stats = spec_or_stats if isinstance(spec_or_stats, ExactStats) else exact(spec_or_stats)
    if stats.reducible_weight == 0:
        raise ZeroDivisionError(f"{stats.model} is never reducible; the conditional is undefined")
    return Fraction(stats.linear_weight, stats.reducible_weight)


@dataclass(frozen=True)
class UnitRootCounts:
    support_size: int
    root_plus_one: int
    root_minus_one: int
    both: int

    @property
    def either(self) -> int:
        return self.root_plus_one + self.root_minus_one - self.both


def unit_root_counts(spec: ModelSpec, cap: int = models.DEFAULT_ENUMERATION_CAP) -> UnitRootCounts:
    """Count support polynomials vanishing at +1, at -1 and at both.

    Evaluation only, no factoring; intended for uniform-weight families
    where these are the only possible rational roots (0/1 and +-1 models).
    """
    if spec.family is Family.CHAR_POLY_PM1:
        raise ValueError("unit-root counting enumerates coefficient vectors, not matrices")
    size = models.support_size(spec)
    if size > cap:
        raise SupportTooLarge(size, cap)
    signs = np.array([(-1) ** i for i in range(spec.degree + 1)], dtype=np.int64)
    plus = minus = both = 0
    step = BLOCK * 4
    for lo in range(0, size, step):
        rows, _ = models.index_block(spec, lo, min(size, lo + step))
        at1 = rows.sum(axis=1) == 0
        atm1 = rows @ signs == 0
        plus += int(at1.sum())
        minus += int(atm1.sum())
        both += int((at1 & atm1).sum())
    return UnitRootCounts(size, plus, minus, both)
