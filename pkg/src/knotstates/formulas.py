"""Closed forms, recurrences, composition laws and generating functions.

Nothing here touches a diagram: every polynomial is produced from the
family data below by exact algebra, so it can be checked against the brute
force state sums of :mod:`knotstates.diagram`.
"""
from __future__ import annotations

import dataclasses

from .algebra import (
    ONE,
    X,
    NotDivisible,
    Polynomial,
    Series,
    poly,
    poly_div_exact,
    poly_shift_down,
    series_rational_expand,
)
from .families import CLOSES, FamilySpec, UnsupportedSpec, family

x = X


class NegativeComponent(ArithmeticError):
    """A solved component has a negative coefficient, so it cannot count states."""


@dataclasses.dataclass(frozen=True)
class Components:
    """Split of a shadow's states by whether its two cut points share a circle.

    ``K = x*alpha + x**2*beta`` and the closure is ``x**2*alpha + x*beta``.
    """

    alpha: Polynomial
    beta: Polynomial

    def open_poly(self) -> Polynomial:
        return x * self.alpha + x * x * self.beta

    def closed_poly(self) -> Polynomial:
        return x * x * self.alpha + x * self.beta


# x**-1 times the one-copy polynomial of each chain generator
GROWTH: dict[str, Polynomial] = {
    "unknot": ONE,
    "twist-loop": x + 1,
    "link": 2 * x + 2,
    "twist-link": 2 * x * x + 4 * x + 2,
    "hitch": x * x + 4 * x + 3,
    "overhand": x * x + 4 * x + 3,
    "twist-loop-2n": x * x + 2 * x + 1,
    "twist-loop-3n": x**3 + 3 * x * x + 3 * x + 1,
    "alt-a": x * x + 2 * x + 1,
    "alt-b": x**3 + 3 * x * x + 3 * x + 1,
    "alt-c": x**3 + 3 * x * x + 3 * x + 1,
    "alt-d": 2 * x * x + 4 * x + 2,
    "alt-e": 2 * x * x + 4 * x + 2,
}

# components of each generator relative to its entry and exit cut points
GENERATOR_COMPONENTS: dict[str, Components] = {
    "unknot": Components(ONE, poly()),
    "twist-loop": Components(ONE, ONE),
    "link": Components(x + 2, ONE),
    "twist-link": Components(x + 2, 2 * x + 3),
    "hitch": Components(2 * x + 3, x + 2),
    "overhand": Components(x * x + 3 * x + 3, ONE),
    "twist-loop-2n": Components(ONE, x + 2),
    "twist-loop-3n": Components(ONE, x * x + 3 * x + 3),
    "alt-a": Components(x + 1, x + 1),
    "alt-b": Components(x + 1, x * x + 3 * x + 2),
    "alt-c": Components(x * x + 2 * x + 1, x * x + 2 * x + 1),
    "alt-d": Components(x * x + 3 * x + 2, x + 1),
    "alt-e": Components(2 * x + 2, 2 * x + 2),
}

_XX1 = x * x - 1


def _closed_table(n: int) -> dict[str, Polynomial]:
    return {
        "unknot": x,
        "twist-loop": x * (x + 1) ** n,
        "link": x * (2 * x + 2) ** n,
        "twist-link": x * (2 * x * x + 4 * x + 2) ** n,
        "hitch": x * (x * x + 4 * x + 3) ** n,
        "overhand": x * (x * x + 4 * x + 3) ** n,
        "twist-loop-2n": x * (x * x + 2 * x + 1) ** n,
        "twist-loop-3n": x * (x**3 + 3 * x * x + 3 * x + 1) ** n,
        "foil": (x + 1) ** n + _XX1,
        "foil-2n": (x * x + 2 * x + 1) ** n + _XX1,
        "foil-3n": (x**3 + 3 * x * x + 3 * x + 1) ** n + _XX1,
        "chain-link": (2 * x + 2) ** n + _XX1 * (x + 2) ** n,
        "twist-bracelet": (2 * x * x + 4 * x + 2) ** n + _XX1 * (x + 2) ** n,
        "ringbolt": (x * x + 4 * x + 3) ** n + _XX1 * (2 * x + 3) ** n,
        "sinnet": (x * x + 4 * x + 3) ** n + _XX1 * (x * x + 3 * x + 3) ** n,
        "twist-knot": 2 * (x + 1) ** (n + 1) + x**3 + 2 * x * x - x - 2,
        "alt-a": (x * x + 2 * x + 1) ** n + _XX1 * (x + 1) ** n,
        "alt-b": (x**3 + 3 * x * x + 3 * x + 1) ** n + _XX1 * (x + 1) ** n,
        "alt-c": (x**3 + 3 * x * x + 3 * x + 1) ** n + _XX1 * (x * x + 2 * x + 1) ** n,
        "alt-d": (2 * x * x + 4 * x + 2) ** n + _XX1 * (x * x + 3 * x + 2) ** n,
        "alt-e": (2 * x * x + 4 * x + 2) ** n + _XX1 * (2 * x + 2) ** n,
    }


def family_poly_closed(spec: FamilySpec) -> Polynomial:
    """Expanded closed form of the state-sum polynomial of ``spec``."""
    try:
        return _closed_table(spec.n)[spec.family]
    except KeyError:
        raise UnsupportedSpec(str(spec)) from None


def _open_partner(name: str) -> str:
    return CLOSES.get(name, name)


def family_poly_recurrence(spec: FamilySpec) -> Polynomial:
    """Iterate the family's first-order recurrence from ``n = 0``.

    Open chains multiply by their growth factor; closures follow
    ``closed_n = alpha*closed_{n-1} + beta*open_{n-1}``; twist knots are
    ``(x+2)*foil_n + twist_loop_n``.
    """
    f = family(spec.family)
    n = spec.n
    if f.kind == "unknot":
        return x
    if f.kind == "open":
        k = x
        for _ in range(n):
            k = GROWTH[f.name] * k
        return k
    if f.kind in ("closure", "alt"):
        partner = _open_partner(f.name)
        c = GENERATOR_COMPONENTS[partner]
        growth = GROWTH[partner]
        k, kbar = x, x * x
        for _ in range(n):
            k, kbar = growth * k, c.alpha * kbar + c.beta * k
        return kbar
    if f.kind == "twist-knot":
        foil = family_poly_recurrence(FamilySpec("foil", n))
        twist = family_poly_recurrence(FamilySpec("twist-loop", n))
        return (x + 2) * foil + twist
    raise UnsupportedSpec(str(spec))


def csum_poly(p: Polynomial, q: Polynomial) -> Polynomial:
    """Polynomial of a connected sum: ``x**-1 * p * q``."""
    return poly_shift_down(p * q)


def generated_poly(k: Polynomial, n: int) -> Polynomial:
    """Polynomial of the ``n``-fold connected sum of a shadow with polynomial ``k``."""
    return x * poly_shift_down(k) ** n


def components_solve(k: Polynomial, k_closed: Polynomial) -> Components:
    """Recover ``(alpha, beta)`` from a shadow's polynomial and its closure's."""
    d = x**3 - x
    alpha = poly_div_exact(x * k_closed - k, d)
    beta = poly_div_exact(x * k - k_closed, d)
    if any(c < 0 for c in alpha.coeffs + beta.coeffs):
        raise NegativeComponent(f"alpha={alpha}, beta={beta}")
    return Components(alpha, beta)


def closure_of_generated(c: Components, n: int) -> Polynomial:
    """Closure of the ``n``-fold chain: ``(alpha + x*beta)**n + (x**2-1)*alpha**n``."""
    return (c.alpha + x * c.beta) ** n + _XX1 * c.alpha**n


def closure_of_csum(c: Components, kprime: Polynomial, kprime_closed: Polynomial) -> Polynomial:
    """Closure of ``K # K'`` from the components of ``K``."""
    return c.alpha * kprime_closed + c.beta * kprime


def _series(*terms: Polynomial | int, order: int) -> Series:
    return Series.from_terms(list(terms), order)


def family_gf(name: str, order: int) -> Series:
    """Generating function ``sum_n P_n(x) y**n`` of a family, to ``y**order``."""
    f = family(name)
    if f.kind in ("unknot", "open"):
        k1 = x * GROWTH[f.name]
        return series_rational_expand(
            _series(x * x, order=order), _series(x, -k1, order=order), order
        )
    if f.kind in ("closure", "alt"):
        partner = _open_partner(f.name)
        c = GENERATOR_COMPONENTS[partner]
        k1 = x * GROWTH[partner]
        # (x^2 + y*beta*K(x;y)) / (1 - y*alpha) with K(x;y) = x^2 / (x - y*K1)
        numer = _series(x**3, x * x * (c.beta - k1), order=order)
        denom = _series(1, -c.alpha, order=order) * _series(x, -k1, order=order)
        return series_rational_expand(numer, denom, order)
    if f.kind == "twist-knot":
        tail = x**3 + 2 * x * x - x - 2
        numer = _series(2 * x + 2, -(2 * x + 2), order=order) + _series(
            tail, -tail * (x + 1), order=order
        )
        denom = _series(1, -(x + 1), order=order) * _series(1, -1, order=order)
        return series_rational_expand(numer, denom, order)
    raise UnsupportedSpec(name)


def coefficient(spec: FamilySpec, k: int) -> int:
    """Coefficient of ``x**k`` in the closed form of ``spec``."""
    return family_poly_closed(spec)[k]


def generator_components(name: str) -> Components:
    """Components of a chain generator, cross-checked against its one-copy polynomial."""
    c = GENERATOR_COMPONENTS[name]
    if c.open_poly() != x * GROWTH[name]:
        raise NotDivisible(f"components of {name} disagree with its polynomial")
    return c
