"""Coefficient triangles, reference fixtures and the typo registry.

A triangle row ``n`` lists the coefficients of ``x^0 .. x^deg`` of the
``n``-th polynomial of a family.  Rows are produced twice, once from a
coefficient recurrence and once from the expanded closed form, and must
agree.  Reference fixtures under ``data/`` are kept exactly as printed in
the source tables; every place where they disagree with the derived values
is listed in ``data/typos.csv``.
"""
from __future__ import annotations

import csv
import dataclasses
import functools
import io
import json
from collections.abc import Callable
from fractions import Fraction
from importlib import resources

from .algebra import X, Polynomial
from .families import FamilySpec
from .formulas import family_poly_closed

# table id -> family name
TABLE_FAMILY: dict[str, str] = {
    "t": "twist-loop",
    "t2": "twist-loop-2n",
    "t3": "twist-loop-3n",
    "ell": "link",
    "w": "twist-link",
    "h": "hitch",
    "o": "overhand",
    "f": "foil",
    "f2": "foil-2n",
    "f3": "foil-3n",
    "c": "chain-link",
    "b": "twist-bracelet",
    "r": "ringbolt",
    "s": "sinnet",
    "tau": "twist-knot",
    "sigma_a": "alt-a",
    "sigma_b": "alt-b",
    "sigma_c": "alt-c",
    "sigma_d": "alt-d",
    "sigma_e": "alt-e",
}
FAMILY_TABLE = {v: k for k, v in TABLE_FAMILY.items()}

# ids with an embedded reference fixture, in display order
REFERENCE_IDS = (
    "t", "t2", "t3", "ell", "w", "h", "f", "f2", "f3", "c", "b", "r", "s",
    "tau", "sigma_a", "sigma_b", "sigma_c", "sigma_d", "sigma_e",
)


class RecurrenceMismatch(ArithmeticError):
    def __init__(self, tag: str, n: int, k: int, recurrence: int, closed: int):
        super().__init__(
            f"{tag}({n},{k}): recurrence gives {recurrence}, closed form gives {closed}"
        )
        self.tag, self.n, self.k = tag, n, k
        self.recurrence, self.closed = recurrence, closed


def resolve_tag(tag: str) -> str:
    """Accept a table id or a family name; return the table id."""
    if tag in TABLE_FAMILY:
        return tag
    if tag in FAMILY_TABLE:
        return FAMILY_TABLE[tag]
    raise KeyError(f"no coefficient triangle for {tag!r}")


@dataclasses.dataclass(frozen=True)
class Rule:
    """``row_n[k] = bases[k](n)`` or a sum of shifted terms of row ``n-1``.

    Terms are ``(coefficient, shift)`` pairs read on the family's own
    previous row and, when ``aux`` is set, on the previous row of another
    table.
    """

    bases: dict[int, Callable[[int], Fraction | int]]
    own: tuple[tuple[int, int], ...]
    aux: str | None = None
    aux_terms: tuple[tuple[int, int], ...] = ()


def _zero(n):
    return 0


def _pow(b):
    return lambda n: Fraction(b) ** n


RULES: dict[str, Rule] = {
    "t": Rule({0: _zero, 1: lambda n: 1}, ((1, 1), (1, 0))),
    "t2": Rule({0: _zero, 1: lambda n: 1, 2: lambda n: 2 * n}, ((1, 2), (2, 1), (1, 0))),
    "t3": Rule(
        {0: _zero, 1: lambda n: 1, 2: lambda n: 3 * n,
         3: lambda n: Fraction(3 * n * (3 * n - 1), 2)},
        ((1, 3), (3, 2), (3, 1), (1, 0)),
    ),
    "ell": Rule({0: _zero, 1: _pow(2)}, ((2, 1), (2, 0))),
    "w": Rule(
        {0: _zero, 1: _pow(2), 2: lambda n: n * Fraction(2) ** (n + 1)},
        ((2, 2), (4, 1), (2, 0)),
    ),
    "h": Rule(
        {0: _zero, 1: _pow(3), 2: lambda n: 4 * n * Fraction(3) ** (n - 1)},
        ((1, 2), (4, 1), (3, 0)),
    ),
    "f": Rule({0: _zero, 1: lambda n: n}, ((1, 0),), "t", ((1, 0),)),
    "f2": Rule({0: _zero, 1: lambda n: 2 * n}, ((1, 0),), "t2", ((1, 1), (2, 0))),
    "f3": Rule(
        {0: _zero, 1: lambda n: 3 * n, 2: lambda n: Fraction(9 * n * n - 3 * n + 2, 2)},
        ((1, 0),), "t3", ((1, 2), (3, 1), (3, 0)),
    ),
    "c": Rule({0: _zero, 1: lambda n: n * Fraction(2) ** (n - 1)},
              ((1, 1), (2, 0)), "ell", ((1, 0),)),
    "b": Rule({0: _zero, 1: lambda n: 3 * n * Fraction(2) ** (n - 1)},
              ((1, 1), (2, 0)), "w", ((2, 1), (3, 0))),
    "r": Rule({0: _zero, 1: lambda n: 2 * n * Fraction(3) ** (n - 1)},
              ((2, 1), (3, 0)), "h", ((1, 1), (2, 0))),
    "s": Rule(
        {0: _zero, 1: lambda n: n * Fraction(3) ** (n - 1),
         2: lambda n: Fraction(3) ** n + Fraction(7 * n * (n - 1), 2) * Fraction(3) ** (n - 2)},
        ((1, 2), (3, 1), (3, 0)), "h", ((1, 0),),
    ),
    "sigma_a": Rule({0: _zero, 1: lambda n: n}, ((1, 1), (1, 0)), "t2", ((1, 1), (1, 0))),
    "sigma_b": Rule(
        {0: _zero, 1: lambda n: 2 * n, 2: lambda n: 4 * n * n - n + 1},
        ((1, 1), (1, 0)), "t3", ((1, 2), (3, 1), (2, 0)),
    ),
    "sigma_c": Rule(
        {0: _zero, 1: lambda n: n, 2: lambda n: Fraction(5 * n * n - n + 2, 2)},
        ((1, 2), (2, 1), (1, 0)), "t3", ((1, 2), (2, 1), (1, 0)),
    ),
    "sigma_d": Rule(
        {0: _zero, 1: lambda n: n * Fraction(2) ** (n - 1),
         2: lambda n: Fraction(2) ** (n - 3) * (7 * n * n - 3 * n + 8)},
        ((1, 2), (3, 1), (2, 0)), "w", ((1, 1), (1, 0)),
    ),
    "sigma_e": Rule({0: _zero, 1: lambda n: n * Fraction(2) ** n},
                    ((2, 1), (2, 0)), "w", ((2, 1), (2, 0))),
}
RULES["o"] = RULES["h"]

# recurrences exactly as printed, where the print is wrong
PRINTED_RULES: dict[str, Rule] = {
    "ell": dataclasses.replace(RULES["ell"], own=((1, 1), (1, 0))),
    "h": dataclasses.replace(
        RULES["h"],
        bases={**RULES["h"].bases, 2: lambda n: 4 * (n - 1) * Fraction(3) ** (n - 2)},
    ),
    "sigma_c": dataclasses.replace(RULES["sigma_c"], aux_terms=((1, 2), (2, 0), (1, 0))),
}


@dataclasses.dataclass(frozen=True)
class Triangle:
    tag: str
    family: str
    rows: tuple[tuple[int, ...], ...]
    first: int = 0

    def __getitem__(self, nk: tuple[int, int]) -> int:
        n, k = nk
        row = self.rows[n - self.first]
        return row[k] if 0 <= k < len(row) else 0

    def select(self, lo: int, hi: int | None = None) -> Triangle:
        """Rows ``lo..hi`` inclusive (just ``lo`` when ``hi`` is omitted)."""
        hi = lo if hi is None else hi
        return dataclasses.replace(
            self, rows=self.rows[lo - self.first : hi - self.first + 1], first=lo
        )


def _row(p: Polynomial) -> tuple[int, ...]:
    return tuple(p.coeffs)


def closed_rows(tid: str, max_n: int) -> list[tuple[int, ...]]:
    name = TABLE_FAMILY[tid]
    return [_row(family_poly_closed(FamilySpec(name, n))) for n in range(max_n + 1)]


def _at(row, k: int) -> int:
    return row[k] if 0 <= k < len(row) else 0


def _recurrence_rows(tid: str, max_n: int, rule: Rule, closed) -> list[tuple[int, ...]]:
    aux = _recurrence_rows_cached(rule.aux, max_n) if rule.aux else None
    rows = [closed[0]]
    for n in range(1, max_n + 1):
        prev = rows[-1]
        out = []
        for k in range(len(closed[n])):
            if k in rule.bases:
                v = Fraction(rule.bases[k](n))
                out.append(int(v) if v.denominator == 1 else v)
                continue
            v = sum(c * _at(prev, k - s) for c, s in rule.own)
            if aux is not None:
                v += sum(c * _at(aux[n - 1], k - s) for c, s in rule.aux_terms)
            out.append(v)
        rows.append(tuple(out))
    return rows


@functools.lru_cache(maxsize=None)
def _recurrence_rows_cached(tid: str, max_n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(triangle(tid, max_n).rows)


def _tau_rows(max_n: int) -> list[tuple[int, ...]]:
    # same-n combination (x+2) f_n + t_n
    f = triangle("f", max_n).rows
    t = triangle("t", max_n).rows
    out = []
    for n in range(max_n + 1):
        width = len(f[n]) + 1
        out.append(tuple(
            _at(f[n], k - 1) + 2 * _at(f[n], k) + _at(t[n], k) for k in range(width)
        ))
    return out


def triangle(tag: str, max_n: int, printed: bool = False) -> Triangle:
    """Rows ``0..max_n`` of a family's coefficient triangle.

    The recurrence and the closed form are both evaluated; any disagreement
    raises :class:`RecurrenceMismatch`.  ``printed=True`` uses the misprinted
    recurrences, which is how the registered formula typos are confirmed.
    """
    tid = resolve_tag(tag)
    closed = closed_rows(tid, max_n)
    if tid == "tau":
        rec = _tau_rows(max_n)
    else:
        rule = (PRINTED_RULES if printed else RULES).get(tid, RULES[tid])
        rec = _recurrence_rows(tid, max_n, rule, closed)
    for n, (a, b) in enumerate(zip(rec, closed)):
        for k in range(max(len(a), len(b))):
            if _at(a, k) != _at(b, k):
                raise RecurrenceMismatch(tid, n, k, _at(a, k), _at(b, k))
    return Triangle(tid, TABLE_FAMILY[tid], tuple(closed))


def _data_text(name: str) -> str:
    return resources.files(__package__).joinpath("data", name).read_text(encoding="utf-8")


@functools.lru_cache(maxsize=None)
def load_reference(tid: str) -> tuple[tuple[str, tuple[int, ...]], ...]:
    """Printed rows of a reference table as ``(row label, values)`` pairs."""
    lines = [ln for ln in _data_text(f"table_{tid}.csv").splitlines() if not ln.startswith("#")]
    return tuple((r[0], tuple(int(v) for v in r[1:])) for r in csv.reader(lines) if r)


@dataclasses.dataclass(frozen=True)
class TypoRegistryEntry:
    kind: str  # "value", "row_label" or "formula"
    table: str
    n: int | None
    k: int | None
    printed: str
    derived: str
    note: str

    def key(self) -> tuple:
        if self.kind == "value":
            return ("value", self.n, self.k, int(self.printed), int(self.derived))
        if self.kind == "row_label":
            return ("row_label", self.n, self.printed)
        return ("formula", self.printed)


def _opt_int(s: str) -> int | None:
    return int(s) if s.strip() else None


@functools.lru_cache(maxsize=None)
def load_registry() -> tuple[TypoRegistryEntry, ...]:
    rows = csv.DictReader(io.StringIO(_data_text("typos.csv")))
    return tuple(
        TypoRegistryEntry(r["kind"], r["table"], _opt_int(r["n"]), _opt_int(r["k"]),
                          r["printed"], r["derived"], r["note"])
        for r in rows
    )


@dataclasses.dataclass(frozen=True)
class ComparisonReport:
    table: str
    rows: int
    mismatches: frozenset
    registered: frozenset

    @property
    def unregistered(self) -> frozenset:
        return self.mismatches - self.registered

    @property
    def stale(self) -> frozenset:
        return self.registered - self.mismatches

    @property
    def passed(self) -> bool:
        return self.mismatches == self.registered

    def summary(self) -> str:
        status = "ok" if self.passed else "FAIL"
        text = f"{self.table}: {status} ({self.rows} rows, {len(self.mismatches)} registered differences)"
        for m in sorted(self.unregistered, key=repr):
            text += f"\n  unregistered {m}"
        for m in sorted(self.stale, key=repr):
            text += f"\n  stale {m}"
        return text


def compare_with_reference(tid: str) -> ComparisonReport:
    """Diff a printed table against derived rows; differences must all be registered."""
    tid = resolve_tag(tid)
    ref = load_reference(tid)
    derived = closed_rows(tid, len(ref) - 1)
    found = set()
    for n, ((label, values), row) in enumerate(zip(ref, derived)):
        if label != str(n):
            found.add(("row_label", n, label))
        for k in range(max(len(values), len(row))):
            printed = values[k] if k < len(values) else None
            if printed != _at(row, k):
                found.add(("value", n, k, printed, _at(row, k)))
    registered = {
        e.key() for e in load_registry() if e.table == tid and e.kind in ("value", "row_label")
    }
    return ComparisonReport(tid, len(ref), frozenset(found), frozenset(registered))


def _printed_recurrence_fails(tid: str) -> bool:
    try:
        triangle(tid, 6, printed=True)
    except RecurrenceMismatch:
        return True
    return False


def verify_formula_entry(entry: TypoRegistryEntry) -> bool:
    """True when the printed formula is wrong and the derived one is right."""
    x = X
    if entry.table in PRINTED_RULES:
        triangle(entry.table, 6)
        return _printed_recurrence_fails(entry.table)
    if entry.table == "t2":
        printed_ok = all(
            x * (x + 2 * x + 1) ** n == family_poly_closed(FamilySpec("twist-loop-2n", n))
            for n in range(4)
        )
        derived_ok = all(
            x * (x * x + 2 * x + 1) ** n == family_poly_closed(FamilySpec("twist-loop-2n", n))
            for n in range(4)
        )
        return derived_ok and not printed_ok
    if entry.table == "w":
        target = 2 * x**3 + 4 * x * x + 2 * x
        ringbolt_1 = family_poly_closed(FamilySpec("ringbolt", 1))
        w = [family_poly_closed(FamilySpec("twist-link", n)) for n in (1, 3)]
        return ringbolt_1 == target and w[0] == target and w[1] != target
    raise KeyError(f"no check for formula entry on {entry.table}")


def export(tri: Triangle, fmt: str) -> bytes:
    """Serialize as ``csv``, ``json``, ``bfile`` or ``md``."""
    if fmt == "csv":
        text = "".join(",".join(map(str, r)) + "\n" for r in tri.rows)
    elif fmt == "json":
        text = json.dumps([list(r) for r in tri.rows]) + "\n"
    elif fmt == "bfile":
        flat = [v for r in tri.rows for v in r]
        text = "".join(f"{i} {v}\n" for i, v in enumerate(flat))
    elif fmt == "md":
        width = max(len(r) for r in tri.rows)
        head = "| n | " + " | ".join(f"x^{k}" for k in range(width)) + " |\n"
        rule = "|---" * (width + 1) + "|\n"
        body = ""
        for i, r in enumerate(tri.rows, start=tri.first):
            cells = [str(v) for v in r] + [""] * (width - len(r))
            body += f"| {i} | " + " | ".join(cells) + " |\n"
        text = head + rule + body
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return text.encode("utf-8")


@functools.lru_cache(maxsize=None)
def load_oeis() -> dict[str, dict]:
    return json.loads(_data_text("oeis.json"))


def _oeis_derived(seq_id: str, count: int) -> list[int]:
    n_max = count
    if seq_id == "A007318":
        t = triangle("t", n_max)
        return [t[n, k + 1] for n in range(n_max) for k in range(n + 1)][:count]
    if seq_id == "A038208":
        ell = triangle("ell", n_max)
        return [ell[n, k + 1] for n in range(n_max) for k in range(n + 1)][:count]
    if seq_id == "A000244":
        h = triangle("h", count - 1)
        return [h[n, 1] for n in range(count)]
    if seq_id == "A152947":
        f = triangle("f", count - 1)
        return [f[n, 2] for n in range(count)]
    if seq_id == "A001787":
        c = triangle("c", count - 1)
        return [c[n, 1] for n in range(count)]
    if seq_id == "A062741":
        s = triangle("s", count - 1)
        return [s[n, 2 * n] for n in range(count)]
    if seq_id == "A014206":
        tau = triangle("tau", count - 1)
        return [tau[n, 2] for n in range(count)]
    raise KeyError(seq_id)


def oeis_checks() -> list[tuple[str, str, bool]]:
    """``(sequence id, description, matches)`` for each embedded OEIS prefix."""
    out = []
    for seq_id, item in load_oeis().items():
        terms = item["terms"]
        out.append((seq_id, item["description"], _oeis_derived(seq_id, len(terms)) == terms))
    return out
