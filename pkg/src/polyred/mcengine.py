"""Monte Carlo reducibility experiments.

Trials are grouped into chunks of :data:`polyred.models.CHUNK`.  Chunk ``c``
draws from a generator keyed by ``(seed, c)``, so a run is the ordered merge
of per-chunk counts, and the result does not depend on how chunks are
spread over worker processes.
"""

from __future__ import annotations

import enum
import math
import multiprocessing as mp
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from polyred import analytic, factorint, models
from polyred.models import Family, ModelSpec

DEFAULT_SIGMA = 5.0


class Method(str, enum.Enum):
    CONSERVATIVE = "conservative"
    WALD = "wald"


class BaselineUndefined(ValueError):
    pass


@dataclass(frozen=True)
class TrialStats:
    model: ModelSpec
    trials: int = 0
    reducible: int = 0
    linear_factor: int = 0
    constant_zero: int = 0
    min_degree_histogram: dict = field(default_factory=dict)
    seed: int | None = None

    def __post_init__(self):
        hist = {int(k): int(v) for k, v in sorted(self.min_degree_histogram.items()) if v}
        object.__setattr__(self, "min_degree_histogram", hist)

    @property
    def reducible_prob(self) -> float:
        return self.reducible / self.trials

    def as_dict(self) -> dict:
        return {
            "model": str(self.model),
            "seed": self.seed,
            "trials": self.trials,
            "reducible": self.reducible,
            "linear_factor": self.linear_factor,
            "constant_zero": self.constant_zero,
            "min_degree_histogram": {str(k): v for k, v in self.min_degree_histogram.items()},
        }


@dataclass(frozen=True)
class ConfidenceInterval:
    point: float
    halfwidth: float
    sigma_level: float
    method: Method

    @property
    def low(self) -> float:
        return self.point - self.halfwidth

    @property
    def high(self) -> float:
        return self.point + self.halfwidth

    def contains(self, x: float) -> bool:
        return self.low <= x <= self.high

    def as_dict(self) -> dict:
        return {
            "point": self.point,
            "halfwidth": self.halfwidth,
            "sigma_level": self.sigma_level,
            "method": self.method.value,
        }


def empty(spec: ModelSpec, seed: int | None = None) -> TrialStats:
    return TrialStats(model=spec, seed=seed)


def merge(a: TrialStats, b: TrialStats) -> TrialStats:
    if a.model != b.model:
        raise ValueError(f"cannot merge statistics of {a.model} and {b.model}")
    hist = Counter(a.min_degree_histogram)
    hist.update(b.min_degree_histogram)
    seed = a.seed if a.seed == b.seed else None
    return TrialStats(
        model=a.model,
        trials=a.trials + b.trials,
        reducible=a.reducible + b.reducible,
        linear_factor=a.linear_factor + b.linear_factor,
        constant_zero=a.constant_zero + b.constant_zero,
        min_degree_histogram=dict(hist),
        seed=seed,
    )


def tally(spec: ModelSpec, polys, seed: int | None = None) -> TrialStats:
    """Event counts for a block of sampled coefficient rows."""
    reducible, min_degree = factorint.classify_many(polys)
    if isinstance(polys, np.ndarray):
        const_zero = int((polys[:, 0] == 0).sum())
    else:
        const_zero = sum(1 for p in polys if p[0] == 0)
    values, counts = np.unique(min_degree, return_counts=True)
    return TrialStats(
        model=spec,
        trials=len(min_degree),
        reducible=int(reducible.sum()),
        linear_factor=int((min_degree == 1).sum()),
        constant_zero=const_zero,
        min_degree_histogram=dict(zip(values.tolist(), counts.tolist())),
        seed=seed,
    )


def _chunk_plan(trials: int) -> list[tuple[int, int]]:
    C = models.CHUNK
    return [(c, min(C, trials - c * C)) for c in range((trials + C - 1) // C)]


def _run_chunks(spec: ModelSpec, seed: int, plan: list[tuple[int, int]]) -> TrialStats:
    acc = empty(spec, seed)
    for c, count in plan:
        acc = merge(acc, tally(spec, models.draw_chunk(spec, seed, c, count), seed))
    return acc


def run(spec: ModelSpec, trials: int, seed: int, workers: int = 1) -> TrialStats:
    """Sample and classify ``trials`` polynomials; identical for any ``workers``."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    plan = _chunk_plan(trials)
    workers = min(workers, len(plan))
    if workers == 1:
        return _run_chunks(spec, seed, plan)
    # contiguous slices keep each worker's chunks together
    slices = [plan[i * len(plan) // workers:(i + 1) * len(plan) // workers] for i in range(workers)]
    ctx = mp.get_context("fork")
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        parts = list(pool.map(_run_chunks, [spec] * workers, [seed] * workers, slices))
    acc = empty(spec, seed)
    for part in parts:
        acc = merge(acc, part)
    return acc


# ------------------------------------------------------------- intervals


def halfwidth(trials: int, z: float = DEFAULT_SIGMA, method: Method = Method.CONSERVATIVE,
              p_hat: float | None = None) -> float:
    method = Method(method)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if z <= 0:
        raise ValueError("sigma level must be positive")
    if method is Method.CONSERVATIVE:
        return z / (2 * math.sqrt(trials))
    if p_hat is None:
        raise ValueError("the Wald interval needs a point estimate")
    return z * math.sqrt(p_hat * (1 - p_hat) / trials)


def confidence(stats: TrialStats, z: float = DEFAULT_SIGMA,
               method: Method = Method.CONSERVATIVE) -> ConfidenceInterval:
    """Interval for the reducibility probability."""
    p = stats.reducible / stats.trials
    return ConfidenceInterval(p, halfwidth(stats.trials, z, method, p), z, Method(method))


def baseline(spec: ModelSpec) -> Fraction:
    """Probability of the lowest-possible-degree factor event used as the ratio denominator."""
    if spec.family is Family.ZERO_ONE_FIXED_ENDS:
        if spec.degree < 2:
            raise BaselineUndefined("z1 baseline needs d >= 2")
        value = analytic.linear_factor_prob_zero_one(spec.degree).exact
    else:
        try:
            value = models.baseline_event_probability(spec)
        except models.ModelError as exc:
            raise BaselineUndefined(f"{exc}; inspect min_degree_histogram instead") from None
    if value <= 0:
        raise BaselineUndefined(f"baseline probability of {spec} is {value}; inspect min_degree_histogram instead")
    return value


def heuristic_ratio(stats: TrialStats, z: float = DEFAULT_SIGMA,
                    method: Method = Method.CONSERVATIVE) -> ConfidenceInterval:
    """P(reducible) divided by the baseline, with the interval scaled alike."""
    b = baseline(stats.model)
    ci = confidence(stats, z, method)
    inv = 1 / float(b)
    return ConfidenceInterval(ci.point * inv, ci.halfwidth * inv, z, ci.method)
