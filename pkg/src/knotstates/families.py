"""Canonical shadows for the knot families, with entry/exit cut points.

Every generator carries two cut points, ``cuts[0]`` (entry) and ``cuts[1]``
(exit), on darts bordering a common face.  Chains join the exit of one copy
to the entry of the next, which keeps the chain's own entry and exit on a
common face, so the chain can always be closed.
"""
from __future__ import annotations

import dataclasses
import functools

from .diagram import (
    UNKNOT,
    CutPoint,
    Shadow,
    connected_sum,
    self_closure,
)


class UnsupportedSpec(ValueError):
    pass


def _gen(peer: tuple[int, ...], entry: int, exit_: int) -> Shadow:
    return Shadow(peer, 0, (CutPoint(entry), CutPoint(exit_)))


# One half twist: two loops on a single crossing.
TWIST = _gen((1, 0, 3, 2), 1, 3)
# Hopf link: two circles meeting at two crossings.
HOPF = _gen((6, 5, 4, 7, 2, 1, 0, 3), 0, 5)
# Hopf link with one extra twist on one component.
TWIST_LINK = _gen((1, 0, 10, 4, 3, 9, 8, 11, 6, 5, 2, 7), 1, 7)
# Both trefoil shadows; the cut darts differ, which changes the closure.
HITCH = _gen((10, 4, 7, 11, 1, 9, 8, 2, 6, 5, 0, 3), 0, 4)
OVERHAND = _gen((10, 5, 4, 11, 2, 1, 9, 8, 7, 6, 0, 3), 1, 4)

GENERATORS = {
    "twist-loop": TWIST,
    "link": HOPF,
    "twist-link": TWIST_LINK,
    "hitch": HITCH,
    "overhand": OVERHAND,
}


@dataclasses.dataclass(frozen=True)
class Family:
    name: str
    symbol: str
    kind: str  # "unknot", "open", "closure", "twist-knot", "alt"
    crossings_per_n: int
    crossings_offset: int = 0


CATALOG: dict[str, Family] = {
    f.name: f
    for f in [
        Family("unknot", "u", "unknot", 0),
        Family("twist-loop", "t", "open", 1),
        Family("link", "ell", "open", 2),
        Family("twist-link", "w", "open", 3),
        Family("hitch", "h", "open", 3),
        Family("overhand", "o", "open", 3),
        Family("foil", "f", "closure", 1),
        Family("chain-link", "c", "closure", 2),
        Family("twist-bracelet", "b", "closure", 3),
        Family("ringbolt", "r", "closure", 3),
        Family("sinnet", "s", "closure", 3),
        Family("twist-knot", "tau", "twist-knot", 1, 2),
        Family("alt-a", "sigma_a", "alt", 2),
        Family("alt-b", "sigma_b", "alt", 3),
        Family("alt-c", "sigma_c", "alt", 3),
        Family("alt-d", "sigma_d", "alt", 3),
        Family("alt-e", "sigma_e", "alt", 3),
        Family("twist-loop-2n", "t2", "open", 2),
        Family("twist-loop-3n", "t3", "open", 3),
        Family("foil-2n", "f2", "closure", 2),
        Family("foil-3n", "f3", "closure", 3),
    ]
}

# The sixteen named families plus the unknot, in display order.
PRIMARY_FAMILIES = tuple(list(CATALOG)[:17])

# closure family -> the open family it closes
CLOSES = {
    "foil": "twist-loop",
    "chain-link": "link",
    "twist-bracelet": "twist-link",
    "ringbolt": "hitch",
    "sinnet": "overhand",
    "foil-2n": "twist-loop-2n",
    "foil-3n": "twist-loop-3n",
}

EXPR_SYMBOLS = {
    "T": "twist-loop",
    "L": "link",
    "W": "twist-link",
    "H": "hitch",
    "O": "overhand",
    "TK": "twist-knot",
}


@dataclasses.dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int = 0

    def __post_init__(self):
        if self.family not in CATALOG:
            raise UnsupportedSpec(f"unknown family {self.family!r}")
        if self.n < 0:
            raise UnsupportedSpec("n must be nonnegative")

    def __str__(self) -> str:
        return f"{self.family}({self.n})"


def family(name: str) -> Family:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnsupportedSpec(f"unknown family {name!r}") from None


def crossing_count(spec: FamilySpec) -> int:
    f = family(spec.family)
    return f.crossings_per_n * spec.n + f.crossings_offset


def chain(gen: Shadow, n: int) -> Shadow:
    """``n`` copies of ``gen`` joined exit-to-entry; zero copies is the unknot."""
    if n == 0:
        return UNKNOT
    acc = gen
    for _ in range(n - 1):
        acc = connected_sum(acc, acc.cuts[1], gen, gen.cuts[0])
    return acc


def hang(main: Shadow, spare: Shadow, at: CutPoint) -> Shadow:
    """Connect ``spare`` onto ``main`` away from ``main``'s cut points.

    The result keeps only ``main``'s entry and exit, so closing a chain of
    such pieces leaves every ``spare`` as a pendant summand.
    """
    joined = connected_sum(main, at, spare, spare.cuts[0])
    return joined.with_cuts(joined.cuts[:2])


def _alt_generator(name: str) -> Shadow:
    t2 = chain(TWIST, 2)
    # main part, pendant part, and the dart of the main part carrying the pendant
    table = {
        "alt-a": (TWIST, TWIST, CutPoint(0)),
        "alt-b": (t2, TWIST, CutPoint(0)),
        "alt-c": (TWIST, t2, CutPoint(0)),
        "alt-d": (HOPF, TWIST, CutPoint(1)),
        "alt-e": (TWIST, HOPF, CutPoint(0)),
    }
    main, spare, at = table[name]
    return hang(main, spare, at)


@functools.lru_cache(maxsize=None)
def generator(name: str) -> Shadow:
    """One-copy generator of an open or alternative-closure family."""
    if name in GENERATORS:
        return GENERATORS[name]
    if name == "twist-loop-2n":
        return chain(TWIST, 2)
    if name == "twist-loop-3n":
        return chain(TWIST, 3)
    if name.startswith("alt-"):
        return _alt_generator(name)
    raise UnsupportedSpec(f"{name} has no generator")


def build(spec: FamilySpec) -> Shadow:
    """The canonical shadow of ``spec``."""
    f = family(spec.family)
    n = spec.n
    if f.kind == "unknot":
        return UNKNOT
    if f.kind == "open":
        return chain(generator(f.name), n)
    if f.kind == "closure":
        return self_closure(chain(generator(CLOSES[f.name]), n))
    if f.kind == "alt":
        return self_closure(chain(generator(f.name), n))
    if f.kind == "twist-knot":
        twists = chain(TWIST, n)
        return self_closure(connected_sum(HOPF, HOPF.cuts[1], twists, twists.cuts[0]))
    raise UnsupportedSpec(str(spec))
