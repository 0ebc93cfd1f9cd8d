"""Exact integer polynomials in ``x`` and truncated power series in ``y``.

A :class:`Polynomial` is a dense tuple of Python ints, constant term first,
with trailing zeros trimmed (the zero polynomial is the empty tuple).  A
:class:`Series` is a tuple of polynomials indexed by the power of ``y``,
truncated at an inclusive order.  Both are immutable values.
"""
from __future__ import annotations

import dataclasses
from collections.abc import Iterable, Sequence


class NotDivisible(ArithmeticError):
    """Exact division left a nonzero remainder."""


class ConstantTermNonzero(ArithmeticError):
    """Division by ``x`` requested on a polynomial with a constant term."""


class NonUnitLeading(ArithmeticError):
    """The ``y**0`` coefficient of a series denominator does not divide exactly."""


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclasses.dataclass(frozen=True, init=False)
class Polynomial:
    """Dense univariate polynomial with arbitrary-precision integer coefficients.

    >>> Polynomial([0, 1, 1])
    Polynomial('x^2 + x')
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @classmethod
    def monomial(cls, power: int, coeff: int = 1) -> Polynomial:
        if power < 0:
            raise ValueError("negative power")
        return cls([0] * power + [coeff])

    @classmethod
    def const(cls, value: int) -> Polynomial:
        return cls([value])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: Polynomial | int) -> Polynomial:
        return poly_add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: Polynomial | int) -> Polynomial:
        return poly_add(self, -_coerce(other))

    def __rsub__(self, other: Polynomial | int) -> Polynomial:
        return poly_add(_coerce(other), -self)

    def __mul__(self, other: Polynomial | int) -> Polynomial:
        return poly_mul(self, _coerce(other))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        return poly_pow(self, n)

    def __call__(self, v: int) -> int:
        return poly_eval_int(self, v)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


X = Polynomial([0, 1])
ONE = Polynomial([1])
ZERO = Polynomial()


def _coerce(p: Polynomial | int) -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    if isinstance(p, int):
        return Polynomial([p])
    return NotImplemented


def poly(*coeffs: int) -> Polynomial:
    """Shorthand constructor, constant term first: ``poly(0, 1, 1) == x^2 + x``."""
    return Polynomial(coeffs)


def format_poly(p: Polynomial) -> str:
    """Render as ``c_k x^k + ... + c_1 x + c_0`` in descending powers."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            var = "x" if k == 1 else f"x^{k}"
            body = var if mag == 1 else f"{mag}{var}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    n = max(len(a.coeffs), len(b.coeffs))
    return Polynomial(a[i] + b[i] for i in range(n))


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.is_zero() or b.is_zero():
        return ZERO
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ca in enumerate(a.coeffs):
        if ca == 0:
            continue
        for j, cb in enumerate(b.coeffs):
            out[i + j] += ca * cb
    return Polynomial(out)


def poly_pow(a: Polynomial, n: int) -> Polynomial:
    """Square-and-multiply power; ``a**0 == 1`` including for ``a == 0``."""
    if n < 0:
        raise ValueError("negative exponent")
    result, base = ONE, a
    while n:
        if n & 1:
            result = poly_mul(result, base)
        n >>= 1
        if n:
            base = poly_mul(base, base)
    return result


def poly_divmod(a: Polynomial, d: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Long division over the rationals restricted to integer quotients.

    Raises :class:`NotDivisible` as soon as a quotient coefficient is not an
    integer, since no integer quotient can then exist.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(a.coeffs)
    lead = d.coeffs[-1]
    dd = d.degree
    if len(rem) - 1 < dd:
        return ZERO, a
    quot = [0] * (len(rem) - dd)
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        q, r = divmod(c, lead)
        if r:
            raise NotDivisible(f"leading coefficient {lead} does not divide {c}")
        quot[i - dd] = q
        for j, cd in enumerate(d.coeffs):
            rem[i - dd + j] -= q * cd
    return Polynomial(quot), Polynomial(rem)


def poly_div_exact(a: Polynomial, d: Polynomial) -> Polynomial:
    q, r = poly_divmod(a, d)
    if not r.is_zero():
        raise NotDivisible(f"({a}) / ({d}) leaves remainder {r}")
    return q


def poly_shift_down(a: Polynomial) -> Polynomial:
    """Divide by ``x``."""
    if a[0] != 0:
        raise ConstantTermNonzero(f"constant term of {a} is {a[0]}")
    return Polynomial(a.coeffs[1:])


def poly_shift_up(a: Polynomial, k: int = 1) -> Polynomial:
    """Multiply by ``x**k``."""
    if a.is_zero():
        return a
    return Polynomial((0,) * k + a.coeffs)


def poly_eval_int(a: Polynomial, v: int) -> int:
    acc = 0
    for c in reversed(a.coeffs):
        acc = acc * v + c
    return acc


@dataclasses.dataclass(frozen=True)
class Series:
    """Power series in ``y`` with :class:`Polynomial` coefficients, kept to ``y**order``.

    Arithmetic between two series truncates to the smaller order.
    """

    terms: tuple[Polynomial, ...]
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        terms = tuple(
            t if isinstance(t, Polynomial) else Polynomial([t]) if isinstance(t, int) else Polynomial(t)
            for t in self.terms[: self.order + 1]
        )
        terms += (ZERO,) * (self.order + 1 - len(terms))
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_terms(cls, terms: Sequence[Polynomial | int], order: int | None = None) -> Series:
        """Build from ``y``-coefficients; the default order is ``len(terms) - 1``."""
        if order is None:
            order = max(len(terms) - 1, 0)
        return cls(tuple(terms), order)

    def __getitem__(self, k: int) -> Polynomial:
        return self.terms[k]

    def __add__(self, other: Series) -> Series:
        order = min(self.order, other.order)
        return Series(tuple(self[i] + other[i] for i in range(order + 1)), order)

    def __mul__(self, other: Series) -> Series:
        order = min(self.order, other.order)
        out = [ZERO] * (order + 1)
        for i in range(order + 1):
            if self[i].is_zero():
                continue
            for j in range(order + 1 - i):
                out[i + j] = out[i + j] + self[i] * other[j]
        return Series(tuple(out), order)

    def scale(self, p: Polynomial) -> Series:
        return Series(tuple(t * p for t in self.terms), self.order)


def series_rational_expand(numer: Series, denom: Series, order: int) -> Series:
    """Expand ``numer / denom`` as a series in ``y`` up to ``y**order``.

    Each step divides by the ``y**0`` coefficient of ``denom`` exactly; if a
    step would need a fraction, :class:`NonUnitLeading` is raised.  Terms of
    ``numer`` or ``denom`` beyond their own orders are treated as zero.
    """
    d0 = denom[0]
    if d0.is_zero():
        raise NonUnitLeading("denominator has zero constant term in y")
    out: list[Polynomial] = []
    for k in range(order + 1):
        acc = numer[k] if k <= numer.order else ZERO
        for j in range(1, min(k, denom.order) + 1):
            acc = acc - denom[j] * out[k - j]
        try:
            out.append(poly_div_exact(acc, d0))
        except NotDivisible as exc:
            raise NonUnitLeading(f"y^{k} coefficient {acc} not divisible by {d0}") from exc
    return Series(tuple(out), order)
