"""Exact integer polynomials in one variable.

Coefficients are stored constant term first, so ``coeffs[i]`` is the
coefficient of ``x**i``.  The zero polynomial has an empty coefficient
tuple and degree -1.

The module-level helpers (``trim``, ``mul``, ``divmod_exact`` and friends)
work on plain lists and tuples.  The factorization engine calls them
directly in its hot loops; :class:`IntPolynomial` is the immutable public
wrapper.
"""

from __future__ import annotations

import math
from functools import reduce
from typing import Iterable, Sequence


def trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def horner(coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for a in reversed(coeffs):
        acc = acc * x + a
    return acc


def add(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return trim(out)


def sub(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return add(a, [-v for v in b])


def mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return trim(out)


def scale(a: Sequence[int], k: int) -> tuple[int, ...]:
    if k == 0:
        return ()
    return tuple(k * v for v in a)


def diff(a: Sequence[int]) -> tuple[int, ...]:
    return trim(i * a[i] for i in range(1, len(a)))


def content(a: Sequence[int]) -> int:
    return reduce(math.gcd, a, 0)


def primitive(a: Sequence[int]) -> tuple[int, ...]:
    """Primitive part with positive leading coefficient."""
    c = content(a)
    if c == 0:
        return ()
    if a[-1] < 0:
        c = -c
    return tuple(v // c for v in a)


def divmod_exact(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...] | None:
    """Return ``a / b`` if ``b`` divides ``a`` in Z[x], else None."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(a) - 1 < db:
        return () if not any(a) else None
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        top = a[k + db]
        if top % lb:
            return None
        c = top // lb
        q[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] -= c * b[j]
    if any(a[:db]):
        return None
    return tuple(q)


def pseudo_rem(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Pseudo-remainder prem(a, b): lc(b)**(deg a - deg b + 1) * a mod b."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    k = len(r) - 1 - db
    if k < 0:
        return tuple(r)
    for _ in range(k + 1):
        if len(r) - 1 < db:
            r = [lb * v for v in r]
            continue
        top = r[-1]
        shift = len(r) - 1 - db
        r = [lb * v for v in r]
        for j in range(db + 1):
            r[shift + j] -= top * b[j]
        r = list(trim(r))
    return trim(r)


def gcd(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Primitive gcd over Z[x] (positive leading coefficient) via primitive PRS."""
    a, b = trim(a), trim(b)
    if not a:
        return primitive(b)
    if not b:
        return primitive(a)
    c = math.gcd(content(a), content(b))
    a, b = primitive(a), primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = pseudo_rem(a, b)
        a, b = b, primitive(r) if r else ()
    return primitive(a) if len(a) > 1 else (1,)


def norm2_sq(a: Sequence[int]) -> int:
    return sum(v * v for v in a)


class IntPolynomial:
    """Immutable polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = trim(int(v) for v in coeffs)
        object.__setattr__(self, "_c", c)

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def parse(cls, text: str) -> IntPolynomial:
        """Parse ``"a0,a1,...,ad"`` (constant term first)."""
        if text is None or not text.strip():
            raise ValueError("empty polynomial text")
        parts = [p.strip() for p in text.split(",")]
        try:
            return cls(int(p) for p in parts)
        except ValueError:
            raise ValueError(f"not a comma-separated integer list: {text!r}") from None

    @classmethod
    def monomial(cls, d: int, c: int = 1) -> IntPolynomial:
        return cls([0] * d + [c])

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def lead(self) -> int:
        return self._c[-1] if self._c else 0

    def is_zero(self) -> bool:
        return not self._c

    def __getitem__(self, i: int) -> int:
        return self._c[i] if 0 <= i < len(self._c) else 0

    def __iter__(self):
        return iter(self._c)

    def __len__(self):
        return len(self._c)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == trim([other])
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __lt__(self, other: IntPolynomial):
        return (self.degree, self._c) < (other.degree, other._c)

    def __add__(self, other):
        return IntPolynomial(add(self._c, _coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return IntPolynomial(sub(self._c, _coerce(other)))

    def __rsub__(self, other):
        return IntPolynomial(sub(_coerce(other), self._c))

    def __neg__(self):
        return IntPolynomial(-v for v in self._c)

    def __mul__(self, other):
        return IntPolynomial(mul(self._c, _coerce(other)))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = (1,)
        for _ in range(n):
            out = mul(out, self._c)
        return IntPolynomial(out)

    def __call__(self, x: int) -> int:
        return horner(self._c, x)

    def to_text(self) -> str:
        return ",".join(str(v) for v in self._c) if self._c else "0"

    def __str__(self):
        if not self._c:
            return "0"
        terms = []
        for i in range(len(self._c) - 1, -1, -1):
            a = self._c[i]
            if a == 0:
                continue
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                xs = "x" if i == 1 else f"x^{i}"
                body = xs if mag == 1 else f"{mag}*{xs}"
            sign = "-" if a < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"IntPolynomial({list(self._c)})"


def _coerce(v) -> tuple[int, ...]:
    if isinstance(v, IntPolynomial):
        return v.coeffs
    if isinstance(v, int):
        return trim([v])
    raise TypeError(f"cannot combine IntPolynomial with {type(v).__name__}")


def evaluate(p: IntPolynomial, x: int) -> int:
    return horner(p.coeffs, x)


def multiply(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    return IntPolynomial(mul(p.coeffs, q.coeffs))


def derivative(p: IntPolynomial) -> IntPolynomial:
    return IntPolynomial(diff(p.coeffs))


def content_and_primitive(p: IntPolynomial) -> tuple[int, IntPolynomial]:
    """Split ``p`` into positive content and primitive part.

    The sign stays with the primitive part, so ``-3x`` gives ``(3, -x)``.
    """
    if p.is_zero():
        raise ValueError("content of the zero polynomial is undefined")
    c = content(p.coeffs)
    return c, IntPolynomial(v // c for v in p.coeffs)
