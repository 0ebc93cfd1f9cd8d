"""Knot shadows as port tables, their surgery, and the exhaustive state sum.

A crossing ``c`` owns ports ``4c .. 4c+3`` in counterclockwise order; ports
``4c+i`` and ``4c+i+2`` are opposite, so a strand passes straight through from
one to the other.  The shadow is the perfect matching ``peer`` on ports (the
edges), plus a count of crossing-free loops.

Positions on the diagram are named by *darts*: the dart of port ``p`` is the
edge leaving ``p`` towards ``peer[p]``, and it borders the face on its left.
Face tracing turns left at every crossing, i.e. after arriving at port ``j``
the walk leaves through port ``j - 1``.  Surgery (connected sum, closure) is
band surgery inside the face to the left of the named darts.

A negative ``port`` in a :class:`CutPoint` refers to free loop ``-port - 1``.
"""
from __future__ import annotations

import dataclasses
import os
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _kernel
from .algebra import ONE, Polynomial

GUARD_ENV = "KNOTSTATES_MAX_CROSSINGS"
DEFAULT_GUARD = 30
HARD_CAP = 34

# Port pairings of the two splits, as offsets inside one crossing.
SPLIT_PAIRS = {0: ((0, 1), (2, 3)), 1: ((1, 2), (3, 0))}

_CHUNK_CELLS = 1 << 22


class DiagramError(ValueError):
    """Base class for malformed shadows and invalid surgery requests."""


class InvalidShadow(DiagramError):
    pass


class LengthMismatch(DiagramError):
    pass


class TooManyCrossings(DiagramError):
    pass


class InvalidArc(DiagramError):
    pass


class InvalidCut(DiagramError):
    pass


@dataclasses.dataclass(frozen=True, order=True)
class CutPoint:
    """A position on the dart of ``port``; ``slot`` separates points on one edge."""

    port: int
    slot: int = 0

    @property
    def on_loop(self) -> bool:
        return self.port < 0

    @property
    def loop(self) -> int:
        return -self.port - 1


ArcRef = CutPoint


def loop_point(j: int = 0, slot: int = 0) -> CutPoint:
    return CutPoint(-j - 1, slot)


@dataclasses.dataclass(frozen=True)
class Shadow:
    peer: tuple[int, ...]
    free_loops: int = 0
    cuts: tuple[CutPoint, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "peer", tuple(int(p) for p in self.peer))
        object.__setattr__(self, "cuts", tuple(self.cuts))
        if len(self.peer) % 4:
            raise InvalidShadow("port table length must be a multiple of 4")
        if self.free_loops < 0:
            raise InvalidShadow("negative free loop count")

    @property
    def m(self) -> int:
        """Number of crossings."""
        return len(self.peer) // 4

    @property
    def ports(self) -> int:
        return len(self.peer)

    def with_cuts(self, cuts: Sequence[CutPoint]) -> Shadow:
        return dataclasses.replace(self, cuts=tuple(cuts))

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted port pairs, ordered by their smaller port."""
        return [(p, q) for p, q in enumerate(self.peer) if p < q]


UNKNOT = Shadow((), 1, (loop_point(0, 0), loop_point(0, 1)))
EMPTY = Shadow((), 0, ())


def _matching_problems(k: Shadow) -> list[str]:
    problems = []
    n = k.ports
    for p, q in enumerate(k.peer):
        if not 0 <= q < n:
            problems.append(f"port {p // 4}.{p % 4} is unmatched")
        elif q == p:
            problems.append(f"port {p // 4}.{p % 4} is matched to itself")
        elif k.peer[q] != p:
            problems.append(f"ports {p // 4}.{p % 4} and {q // 4}.{q % 4} are not mutual")
    return problems


def _check(k: Shadow) -> None:
    problems = _matching_problems(k)
    if problems:
        raise InvalidShadow("; ".join(problems))


def face_next(k: Shadow, dart: int) -> int:
    """The dart following ``dart`` around the face on its left."""
    q = k.peer[dart]
    return 4 * (q // 4) + (q + 3) % 4


def faces(k: Shadow) -> list[tuple[int, ...]]:
    """Faces as cycles of darts; every dart lies on exactly one face."""
    _check(k)
    seen = [False] * k.ports
    out = []
    for start in range(k.ports):
        if seen[start]:
            continue
        cycle = []
        d = start
        while not seen[d]:
            seen[d] = True
            cycle.append(d)
            d = face_next(k, d)
        out.append(tuple(cycle))
    return out


def face_index(k: Shadow) -> list[int]:
    idx = [0] * k.ports
    for i, cyc in enumerate(faces(k)):
        for d in cyc:
            idx[d] = i
    return idx


def graph_components(k: Shadow) -> int:
    """Connected components of the 4-valent graph, counting each free loop."""
    _check(k)
    parent = list(range(k.m))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p, q in enumerate(k.peer):
        ra, rb = find(p // 4), find(q // 4)
        if ra != rb:
            parent[ra] = rb
    return len({find(c) for c in range(k.m)}) + k.free_loops


def is_spherical(k: Shadow) -> bool:
    """Euler check: each graph component must embed in its own sphere."""
    if k.m == 0:
        return True
    v, e, f = k.m, 2 * k.m, len(faces(k))
    return v - e + f == 2 * (graph_components(k) - k.free_loops)


def straight_components(k: Shadow) -> int:
    """Closed curves of the shadow itself (strands pass straight through)."""
    _check(k)
    seen = [False] * k.ports
    count = 0
    for start in range(k.ports):
        if seen[start]:
            continue
        count += 1
        p = start
        while not seen[p]:
            q = k.peer[p]
            seen[p] = seen[q] = True
            p = 4 * (q // 4) + (q + 2) % 4
    return count + k.free_loops


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def resolve_state(k: Shadow, bits: Sequence[int]) -> int:
    """Number of circles after splitting crossing ``i`` by type ``bits[i]``."""
    if len(bits) != k.m:
        raise LengthMismatch(f"{len(bits)} bits for {k.m} crossings")
    _check(k)
    uf = _UnionFind(k.ports)
    sets = k.ports
    for p, q in enumerate(k.peer):
        if p < q and uf.union(p, q):
            sets -= 1
    for c, b in enumerate(bits):
        for i, j in SPLIT_PAIRS[int(b)]:
            if uf.union(4 * c + i, 4 * c + j):
                sets -= 1
    return sets + k.free_loops


def state_circles(k: Shadow) -> dict[tuple[int, ...], int]:
    """Circle count of every state, keyed by its bit tuple (crossing 0 first)."""
    out = {}
    for s in range(1 << k.m):
        bits = tuple((s >> i) & 1 for i in range(k.m))
        out[bits] = resolve_state(k, bits)
    return out


def crossing_guard(override: int | None = None) -> int:
    """Active crossing limit: explicit override, else the environment, else the default."""
    if override is None:
        env = os.environ.get(GUARD_ENV)
        override = int(env) if env else DEFAULT_GUARD
    if override > HARD_CAP:
        raise TooManyCrossings(f"guard {override} exceeds hard cap {HARD_CAP}")
    return override


def _split_tables(m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    ports = np.arange(4 * m)
    c, j = ports // 4, ports % 4
    return c, 4 * c + (j ^ 1), 4 * c + (3 - j)


def circle_counts(k: Shadow, lo: int, hi: int) -> np.ndarray:
    """Circle counts for states ``lo .. hi-1`` (bit ``i`` of the index = crossing ``i``).

    A state closes every port into a cycle alternating edges and split arcs;
    the permutation ``peer o split`` has two orbits per circle.  Orbits are
    counted in bulk by pointer jumping on a ``states x ports`` array.
    """
    m = k.m
    if m == 0:
        return np.full(hi - lo, k.free_loops, dtype=np.int64)
    peer = np.asarray(k.peer, dtype=np.intp)
    cross, split0, split1 = _split_tables(m)
    states = np.arange(lo, hi, dtype=np.int64)
    bits = ((states[:, None] >> np.arange(m, dtype=np.int64)) & 1).astype(bool)
    split = np.where(bits[:, cross], split1, split0)
    nxt = peer[split]
    ports = np.arange(4 * m, dtype=np.intp)
    label = np.broadcast_to(ports, nxt.shape).copy()
    for _ in range((4 * m).bit_length()):
        label = np.minimum(label, np.take_along_axis(label, nxt, axis=1))
        nxt = np.take_along_axis(nxt, nxt, axis=1)
    orbits = (label == ports).sum(axis=1)
    return orbits // 2 + k.free_loops


def _histogram(k: Shadow, lo: int, hi: int, width: int, compiled: bool) -> np.ndarray:
    if compiled and _kernel.circle_histogram is not None and k.m:
        out = np.zeros(width, dtype=np.int64)
        _kernel.circle_histogram(np.asarray(k.peer, dtype=np.int64), lo, hi, out)
        if k.free_loops:
            out = np.concatenate([np.zeros(k.free_loops, dtype=np.int64), out])
        return out
    return np.bincount(circle_counts(k, lo, hi), minlength=width)


def state_sum(
    k: Shadow, guard: int | None = None, workers: int = 1, compiled: bool = True
) -> Polynomial:
    """Sum of ``x**circles`` over all ``2**m`` states.

    The index range is cut into fixed chunks whose histograms are added, so
    the result does not depend on ``workers``.  ``compiled=False`` forces the
    numpy path even when the compiled kernel is available.
    """
    limit = crossing_guard(guard)
    if k.m > limit:
        raise TooManyCrossings(f"{k.m} crossings exceeds guard {limit}")
    _check(k)
    total = 1 << k.m
    step = max(1, _CHUNK_CELLS // max(1, 4 * k.m))
    ranges = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
    width = k.m + graph_components(k) + 1

    def hist(r: tuple[int, int]) -> np.ndarray:
        return _histogram(k, r[0], r[1], width, compiled)

    if workers > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(hist, ranges))
    else:
        parts = [hist(r) for r in ranges]
    counts = [0] * max(len(p) for p in parts)
    for p in parts:
        for i, v in enumerate(p.tolist()):
            counts[i] += v
    poly = Polynomial(counts)
    return poly if not poly.is_zero() else ONE


def _shift_cut(c: CutPoint, port_off: int, loop_off: int) -> CutPoint:
    if c.on_loop:
        return loop_point(c.loop + loop_off, c.slot)
    return CutPoint(c.port + port_off, c.slot)


def disjoint_union(a: Shadow, b: Shadow) -> Shadow:
    """Side-by-side placement; ``b`` is relabeled after ``a``."""
    off = a.ports
    peer = a.peer + tuple(q + off for q in b.peer)
    cuts = a.cuts + tuple(_shift_cut(c, off, a.free_loops) for c in b.cuts)
    return Shadow(peer, a.free_loops + b.free_loops, cuts)


def _check_arc(k: Shadow, c: CutPoint, err: type[DiagramError]) -> None:
    if c.on_loop:
        if c.loop >= k.free_loops:
            raise err(f"free loop {c.loop} does not exist")
    elif not 0 <= c.port < k.ports:
        raise err(f"port {c.port} does not exist")


def _drop_loop(k: Shadow, j: int) -> Shadow:
    cuts = []
    for c in k.cuts:
        if c.on_loop and c.loop > j:
            c = loop_point(c.loop - 1, c.slot)
        cuts.append(c)
    return Shadow(k.peer, k.free_loops - 1, tuple(cuts))


def _band(peer: list[int], u1: int, u2: int) -> None:
    v1, v2 = peer[u1], peer[u2]
    peer[u1], peer[v2] = v2, u1
    peer[u2], peer[v1] = v1, u2


def connected_sum(a: Shadow, arc_a: ArcRef, b: Shadow, arc_b: ArcRef) -> Shadow:
    """Cut ``a`` at ``arc_a`` and ``b`` at ``arc_b`` and bridge the four ends.

    Cut points of ``a`` come first in the result, then those of ``b``.  The
    two arcs used are consumed; other cut points on a free loop that is
    absorbed move to the position of the opposite arc.
    """
    if a.m + a.free_loops == 0 or b.m + b.free_loops == 0:
        raise InvalidArc("connected sum needs two nonempty shadows")
    _check_arc(a, arc_a, InvalidArc)
    _check_arc(b, arc_b, InvalidArc)
    _check(a)
    _check(b)
    u = disjoint_union(a, b)
    off, loop_off = a.ports, a.free_loops
    ua, ub = arc_a, _shift_cut(arc_b, off, loop_off)
    a_cuts = [c for c in a.cuts if c != arc_a]
    b_cuts = [_shift_cut(c, off, loop_off) for c in b.cuts if c != arc_b]

    def relocate(cuts: list[CutPoint], loop: CutPoint, target: CutPoint) -> list[CutPoint]:
        return [target if c.on_loop and c.loop == loop.loop else c for c in cuts]

    if ua.on_loop:
        a_cuts = relocate(a_cuts, ua, ub)
        res = Shadow(u.peer, u.free_loops, tuple(a_cuts + b_cuts))
        return _drop_loop(res, ua.loop)
    if ub.on_loop:
        b_cuts = relocate(b_cuts, ub, ua)
        res = Shadow(u.peer, u.free_loops, tuple(a_cuts + b_cuts))
        return _drop_loop(res, ub.loop)
    peer = list(u.peer)
    _band(peer, ua.port, ub.port)
    return Shadow(tuple(peer), u.free_loops, tuple(a_cuts + b_cuts))


def self_closure(k: Shadow, c1: CutPoint | None = None, c2: CutPoint | None = None) -> Shadow:
    """Cut the curve at ``c1`` and ``c2`` and close each of the two strands on itself.

    Defaults to the shadow's first two cut points.  The two darts must border
    a common face; the result carries no cut points.
    """
    if c1 is None or c2 is None:
        if len(k.cuts) < 2:
            raise InvalidCut("shadow carries fewer than two cut points")
        c1, c2 = k.cuts[0], k.cuts[1]
    if c1 == c2:
        raise InvalidCut("cut points coincide")
    _check(k)
    _check_arc(k, c1, InvalidCut)
    _check_arc(k, c2, InvalidCut)
    if c1.on_loop or c2.on_loop:
        if c1.on_loop and c2.on_loop and c1.loop == c2.loop:
            return Shadow(k.peer, k.free_loops + 1, ())
        # cutting a free loop and another strand splices the loop into it
        return Shadow(k.peer, k.free_loops - 1, ())
    p1, p2 = c1.port, c2.port
    if p2 in (p1, k.peer[p1]):
        return Shadow(k.peer, k.free_loops + 1, ())
    fidx = face_index(k)
    if fidx[p1] != fidx[p2]:
        raise InvalidCut(f"darts {p1} and {p2} do not border a common face")
    peer = list(k.peer)
    _band(peer, p1, p2)
    return Shadow(tuple(peer), k.free_loops, ())


@dataclasses.dataclass(frozen=True)
class ValidationReport:
    valid: bool
    crossings: int
    components: int
    problems: tuple[str, ...] = ()

    def __str__(self) -> str:
        head = "valid" if self.valid else "invalid"
        lines = [f"{head}: {self.crossings} crossings, {self.components} components"]
        lines += [f"  {p}" for p in self.problems]
        return "\n".join(lines)


def validate(k: Shadow) -> ValidationReport:
    problems = _matching_problems(k)
    if k.m + k.free_loops == 0:
        problems.append("shadow is empty")
    for c in k.cuts:
        if c.on_loop:
            if c.loop >= k.free_loops:
                problems.append(f"cut point on missing free loop {c.loop}")
        elif not 0 <= c.port < k.ports:
            problems.append(f"cut point on missing port {c.port}")
    if len(set(k.cuts)) != len(k.cuts):
        problems.append("duplicate cut points")
    components = 0 if _matching_problems(k) else graph_components(k)
    return ValidationReport(not problems, k.m, components, tuple(problems))


def dumps(k: Shadow) -> str:
    """Text form: headers, then one line per crossing giving each port's peer.

    ::

        loops: 0
        cuts: 1:0,3:0
        0.1 0.0 0.3 0.2
    """
    cuts = ",".join(f"{c.port}:{c.slot}" for c in k.cuts)
    lines = [f"loops: {k.free_loops}", f"cuts: {cuts}"]
    for c in range(k.m):
        row = k.peer[4 * c: 4 * c + 4]
        lines.append(" ".join(f"{q // 4}.{q % 4}" for q in row))
    return "\n".join(lines) + "\n"


def loads(text: str) -> Shadow:
    loops, cuts, peer = 0, [], []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("loops:"):
            loops = int(line.split(":", 1)[1])
        elif line.startswith("cuts:"):
            body = line.split(":", 1)[1].strip()
            for item in filter(None, (s.strip() for s in body.split(","))):
                port, slot = item.split(":")
                cuts.append(CutPoint(int(port), int(slot)))
        else:
            fields = line.split()
            if len(fields) != 4:
                raise InvalidShadow(f"crossing line needs 4 ports: {raw!r}")
            for f in fields:
                c, i = f.split(".")
                peer.append(4 * int(c) + int(i))
    return Shadow(tuple(peer), loops, tuple(cuts))
