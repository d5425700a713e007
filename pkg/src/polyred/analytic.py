"""Closed-form probabilities, counts and constants for the random models.

Exact values are :class:`fractions.Fraction`; real constants are computed
with mpmath at 40 significant digits and carry an explicit error bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath

_DPS = 40


class AnalyticError(ValueError):
    pass


@dataclass(frozen=True)
class AnalyticValue:
    """A formula value.

    ``approx`` is within ``precision`` of the true value.  ``asymptotic``
    marks formulas that hold only up to a (1 + o(1)) factor; ``main_term``
    is the leading asymptotic expression where one is defined.
    """

    label: str
    approx: float
    precision: float
    exact: Fraction | None = None
    asymptotic: bool = False
    main_term: float | None = None
    count: int | None = None
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {
            "label": self.label,
            "approx": self.approx,
            "precision": self.precision,
            "asymptotic": self.asymptotic,
        }
        if self.exact is not None:
            out["exact"] = str(self.exact)
        if self.main_term is not None:
            out["main_term"] = self.main_term
        if self.count is not None:
            out["count"] = self.count
        out.update(self.extra)
        return out


def _exact_value(label: str, value: Fraction, **kw) -> AnalyticValue:
    return AnalyticValue(label=label, approx=float(value), precision=1e-15, exact=value, **kw)


# ------------------------------------------------------- linear factors


def z1_linear_count(d: int) -> int:
    """Number of degree-d 0/1 polynomials with both end coefficients 1 divisible by x+1."""
    if d % 2:
        return math.comb(d - 1, (d - 1) // 2)
    k = d // 2 - 2
    return math.comb(d - 1, k) if k >= 0 else 0


def linear_factor_prob_zero_one(d: int) -> AnalyticValue:
    """P(x+1 divides the polynomial) for the fixed-ends 0/1 model, exactly."""
    if d <= 1:
        raise AnalyticError("the 0/1 linear-factor probability needs d >= 2")
    count = z1_linear_count(d)
    return _exact_value(
        "z1-linear",
        Fraction(count, 2 ** (d - 1)),
        count=count,
        main_term=math.sqrt(2 / (math.pi * d)),
    )


def pm1_linear_counts(d: int) -> AnalyticValue:
    """Exact count and probability of a root at +1 or -1 for monic +-1 polynomials."""
    if d < 1 or d % 2 == 0:
        raise AnalyticError(
            f"pm1 linear-factor count is defined for odd d; degree {d} "
            "polynomials with +-1 coefficients cannot have a linear factor"
        )
    h = (d + 1) // 2
    union = math.comb(d + 1, h)
    both = math.comb(h, h // 2) ** 2 // 2 if d % 4 == 3 else 0
    count = union - both
    return _exact_value(
        "pm1-linear",
        Fraction(count, 2 ** d),
        count=count,
        main_term=pm1_main_term(d),
        extra={"root_plus_one": union // 2, "both_roots": both},
    )


def pm1_main_term(d: int) -> float:
    x = d + 1
    return 2 * math.sqrt(2 / (math.pi * x)) - 4 / (math.pi * x)


def z1_main_term(d: int) -> float:
    return math.sqrt(2 / (math.pi * d))


# ------------------------------------------------------------ constants


def _bernoulli(n: int) -> list[Fraction]:
    B = [Fraction(0)] * (n + 1)
    B[0] = Fraction(1)
    for m in range(1, n + 1):
        B[m] = -sum(math.comb(m + 1, k) * B[k] for k in range(m)) / (m + 1)
    return B


_B = _bernoulli(40)


@lru_cache(maxsize=None)
def _zeta_mp(s: int) -> tuple[mpmath.mpf, mpmath.mpf]:
    """zeta(s) by direct summation to N-1 and an Euler-Maclaurin tail.

    The tail sum_{n>=N} n^-s is the integral N^(1-s)/(s-1) plus N^-s/2 and
    Bernoulli corrections; for this completely monotone summand the error
    is at most the first omitted correction.
    """
    with mpmath.workdps(_DPS):
        N = 24
        total = mpmath.fsum(mpmath.mpf(n) ** -s for n in range(1, N))
        Nm = mpmath.mpf(N)
        tail = Nm ** (1 - s) / (s - 1) + Nm ** (-s) / 2
        rising = mpmath.mpf(s)  # s (s+1) ... (s+2k-2)
        err = mpmath.mpf(0)
        for k in range(1, 12):
            term = mpmath.mpf(_B[2 * k].numerator) / _B[2 * k].denominator
            term = term / math.factorial(2 * k) * rising * Nm ** (-s - 2 * k + 1)
            tail += term
            rising *= (s + 2 * k - 1) * (s + 2 * k)
            nxt = mpmath.mpf(abs(_B[2 * k + 2].numerator)) / _B[2 * k + 2].denominator
            err = nxt / math.factorial(2 * k + 2) * rising * Nm ** (-s - 2 * k - 1)
        return total + tail, err


def zeta_int(s: int) -> AnalyticValue:
    if not isinstance(s, int) or s < 2:
        raise AnalyticError("zeta_int needs an integer s >= 2")
    value, err = _zeta_mp(s)
    return AnalyticValue(
        label="zeta",
        approx=float(value),
        precision=max(float(err), 1e-16 * float(value)),
        extra={"digits": mpmath.nstr(value, 30)},
    )


def irwin_hall_cdf(n: int, t: Fraction) -> Fraction:
    """P(U_1 + ... + U_n <= t) for independent uniforms on [0, 1]."""
    t = Fraction(t)
    if t <= 0:
        return Fraction(0)
    if t >= n:
        return Fraction(1)
    acc = Fraction(0)
    for k in range(math.floor(t) + 1):
        acc += (-1) ** k * math.comb(n, k) * (t - k) ** n
    return acc / math.factorial(n)


@lru_cache(maxsize=None)
def slab_volume(n: int) -> Fraction:
    """Exact volume of {x in [-1,1]^n : |x_1 + ... + x_n| <= 1}.

    With x_i = 2 u_i - 1 the condition becomes (n-1)/2 <= sum u_i <= (n+1)/2.
    """
    if n < 1:
        raise AnalyticError("slab_volume needs n >= 1")
    lo = Fraction(n - 1, 2)
    hi = Fraction(n + 1, 2)
    return 2 ** n * (irwin_hall_cdf(n, hi) - irwin_hall_cdf(n, lo))


def chela_constant(d: int) -> AnalyticValue:
    """Limit of P(reducible) * (2K+1) as K grows, monic uniform [-K, K] model:
    2 zeta(d-1) - 1 + k_d / 2^(d-2), with k_d = slab_volume(d-1)."""
    if d <= 2:
        raise AnalyticError("the limit constant is defined for d >= 3")
    z, err = _zeta_mp(d - 1)
    k = slab_volume(d - 1)
    with mpmath.workdps(_DPS):
        value = 2 * z - 1 + mpmath.mpf(k.numerator) / k.denominator / mpmath.mpf(2) ** (d - 2)
    return AnalyticValue(
        label="chela",
        approx=float(value),
        precision=max(2 * float(err), 1e-15),
        asymptotic=True,
        extra={"slab_volume": str(k), "digits": mpmath.nstr(value, 30)},
    )


# --------------------------------------------------------- sign matrices


def matrix_singularity_lower_bound(d: int) -> AnalyticValue:
    """4 C(d,2) 2^-d - 2 C(d,2)^2 2^-d 2^-(d-2), with main term 4 C(d,2) 2^-d."""
    if d <= 1:
        raise AnalyticError("the singularity bound needs d >= 2")
    c = math.comb(d, 2)
    first = Fraction(4 * c, 2 ** d)
    second = Fraction(2 * c * c, 2 ** d * 2 ** (d - 2))
    return _exact_value("matrix-bound", first - second, asymptotic=True, main_term=float(first))


# ------------------------------------------------------------- registry

FORMULAS = {
    "z1-linear": linear_factor_prob_zero_one,
    "pm1-linear": pm1_linear_counts,
    "chela": chela_constant,
    "zeta": zeta_int,
    "matrix-bound": matrix_singularity_lower_bound,
}


def evaluate_formula(label: str, d: int) -> AnalyticValue:
    if label == "slab":
        v = slab_volume(d)
        return _exact_value("slab", v)
    try:
        fn = FORMULAS[label]
    except KeyError:
        known = ", ".join(sorted([*FORMULAS, "slab"]))
        raise AnalyticError(f"unknown formula {label!r}; known: {known}") from None
    return fn(d)
