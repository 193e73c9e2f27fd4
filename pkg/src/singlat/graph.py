"""Resolution graphs, their intersection form, and graph surgeries.

A resolution graph is a decorated multigraph: each vertex carries a
self-intersection (Euler number) and a genus, and parallel edges encode
multiple intersection points of the corresponding curves. Loops are
rejected because components are smooth; disconnected input is rejected
because links are connected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from . import linalg
from .cycles import RatCycle
from .errors import InputError, InternalError, PreconditionError


@dataclass(frozen=True)
class Vertex:
    id: str
    euler: int
    genus: int = 0


@dataclass(frozen=True)
class ResolutionGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple((str(u), str(v)) for u, v in self.edges))
        if not self.vertices:
            raise InputError("a resolution graph needs at least one vertex")
        seen = set()
        for vert in self.vertices:
            if vert.id in seen:
                raise InputError(f"duplicate vertex id {vert.id!r}")
            if vert.genus < 0:
                raise InputError(f"vertex {vert.id!r} has negative genus")
            seen.add(vert.id)
        for u, v in self.edges:
            if u not in seen or v not in seen:
                raise InputError(f"edge ({u!r}, {v!r}) references an unknown vertex")
            if u == v:
                raise InputError(f"loop edge at {u!r}: components are smooth curves")
        if not self._connected():
            raise InputError("graph is not connected")

    def _connected(self) -> bool:
        ids = [v.id for v in self.vertices]
        adjacency = {vid: set() for vid in ids}
        for u, v in self.edges:
            adjacency[u].add(v)
            adjacency[v].add(u)
        reached = {ids[0]}
        frontier = [ids[0]]
        while frontier:
            for nb in adjacency[frontier.pop()]:
                if nb not in reached:
                    reached.add(nb)
                    frontier.append(nb)
        return len(reached) == len(ids)

    @classmethod
    def from_data(cls, vertices: Iterable, edges: Iterable[tuple[str, str]] = ()) -> "ResolutionGraph":
        """Build from (id, euler[, genus]) tuples and edge pairs."""
        verts = []
        for item in vertices:
            if isinstance(item, Vertex):
                verts.append(item)
            else:
                verts.append(Vertex(str(item[0]), int(item[1]), int(item[2]) if len(item) > 2 else 0))
        return cls(tuple(verts), tuple(edges))

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    def vertex(self, vid: str) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise InputError(f"unknown vertex id {vid!r}")

    def index(self, vid: str) -> int:
        for i, v in enumerate(self.vertices):
            if v.id == vid:
                return i
        raise InputError(f"unknown vertex id {vid!r}")

    def degree(self, vid: str) -> int:
        self.vertex(vid)
        return sum(1 for u, v in self.edges if vid in (u, v))

    @property
    def betti1(self) -> int:
        """First Betti number of the underlying graph (0 for trees)."""
        return len(self.edges) - len(self.vertices) + 1

    @property
    def is_tree(self) -> bool:
        return self.betti1 == 0

    @property
    def all_genus_zero(self) -> bool:
        return all(v.genus == 0 for v in self.vertices)

    @property
    def is_cycle_graph(self) -> bool:
        """A single cycle: connected with every vertex of degree two."""
        return (len(self.edges) == len(self.vertices)
                and all(self.degree(v.id) == 2 for v in self.vertices))

    @property
    def is_minimal_resolution(self) -> bool:
        """No genus-zero vertex with self-intersection -1."""
        return not any(v.euler == -1 and v.genus == 0 for v in self.vertices)

    def fresh_id(self, base: str) -> str:
        taken = set(self.ids)
        if base not in taken:
            return base
        k = 2
        while f"{base}{k}" in taken:
            k += 1
        return f"{base}{k}"


@dataclass(frozen=True)
class IntersectionMatrix:
    ids: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    def entry(self, u: str, v: str) -> int:
        return self.rows[self.ids.index(u)][self.ids.index(v)]

    def negated(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(-x for x in row) for row in self.rows)


@dataclass(frozen=True)
class BlowUpMap:
    """Total-transform data for a single blow-up."""

    source: ResolutionGraph
    target: ResolutionGraph
    locus: Union[str, tuple[str, str]]
    new_id: str


@lru_cache(maxsize=None)
def intersection_matrix(g: ResolutionGraph) -> IntersectionMatrix:
    """Symmetric matrix with Euler numbers on the diagonal and edge
    multiplicities off it."""
    ids = g.ids
    n = len(ids)
    pos = {vid: i for i, vid in enumerate(ids)}
    rows = [[0] * n for _ in range(n)]
    for i, vert in enumerate(g.vertices):
        rows[i][i] = vert.euler
    for u, v in g.edges:
        rows[pos[u]][pos[v]] += 1
        rows[pos[v]][pos[u]] += 1
    return IntersectionMatrix(ids, tuple(tuple(row) for row in rows))


def is_negative_definite(m: IntersectionMatrix) -> bool:
    """Exact test: all leading principal minors of -M are positive."""
    return linalg.is_positive_definite(m.negated())


@lru_cache(maxsize=None)
def _negative_definite(g: ResolutionGraph) -> bool:
    return is_negative_definite(intersection_matrix(g))


def require_negative_definite(g: ResolutionGraph) -> None:
    if not _negative_definite(g):
        raise PreconditionError("intersection form is not negative definite")


@lru_cache(maxsize=None)
def lattice_determinant(g: ResolutionGraph) -> int:
    """det(-M); equals the order of the discriminant group when positive."""
    return linalg.determinant(intersection_matrix(g).negated())


def _coefficient_vector(g: ResolutionGraph, cycle: RatCycle) -> list[Fraction]:
    unknown = [vid for vid in cycle.support if vid not in g.ids]
    if unknown:
        raise InputError(f"cycle mentions unknown vertex id {unknown[0]!r}")
    return [cycle.coefficient(vid) for vid in g.ids]


def pairing(g: ResolutionGraph, a: RatCycle, b: RatCycle) -> Fraction:
    """Intersection pairing extended bilinearly to rational cycles."""
    va = _coefficient_vector(g, a)
    vb = _coefficient_vector(g, b)
    rows = intersection_matrix(g).rows
    total = Fraction(0)
    for i, x in enumerate(va):
        if x:
            total += x * sum(rows[i][j] * vb[j] for j in range(len(vb)) if vb[j])
    return total


def pairing_vector(g: ResolutionGraph, cycle: RatCycle) -> list[Fraction]:
    """Pairings of the cycle with every vertex basis element, in order."""
    vec = _coefficient_vector(g, cycle)
    rows = intersection_matrix(g).rows
    return [sum(Fraction(rows[i][j]) * vec[j] for j in range(len(vec))) for i in range(len(vec))]


@lru_cache(maxsize=None)
def _neg_inverse(g: ResolutionGraph) -> tuple[tuple[Fraction, ...], ...]:
    require_negative_definite(g)
    try:
        inv = linalg.invert(intersection_matrix(g).negated())
    except ValueError as exc:  # pragma: no cover - negative definite => invertible
        raise InternalError("negative-definite matrix failed to invert") from exc
    return tuple(tuple(row) for row in inv)


def dual_cycle(g: ResolutionGraph, vid: str) -> RatCycle:
    """The rational cycle pairing -1 with the given vertex and 0 with the rest.

    Its coefficients form the corresponding column of (-M)^-1 and are all
    strictly positive on a connected negative-definite graph.
    """
    col = g.index(vid)
    inv = _neg_inverse(g)
    return RatCycle({g.ids[i]: inv[i][col] for i in range(len(g.ids))})


def dual_basis(g: ResolutionGraph) -> dict[str, RatCycle]:
    return {vid: dual_cycle(g, vid) for vid in g.ids}


def adjunction_targets(g: ResolutionGraph) -> list[int]:
    """Required pairings of the canonical cycle: E_v^2 + 2 - 2g(E_v)."""
    return [v.euler + 2 - 2 * v.genus for v in g.vertices]


@lru_cache(maxsize=None)
def canonical_cycle(g: ResolutionGraph) -> RatCycle:
    """The unique rational cycle realising the adjunction pairings.

    Integrality of the result is the numerically Gorenstein condition.
    """
    require_negative_definite(g)
    sol = linalg.solve(intersection_matrix(g).rows, adjunction_targets(g))
    return RatCycle(dict(zip(g.ids, sol)))


def chi(g: ResolutionGraph, cycle: RatCycle) -> Fraction:
    """Riemann-Roch expression -(l, l - K)/2 against the canonical cycle.

    Evaluated through the adjunction targets, so no linear solve is needed.
    """
    require_negative_definite(g)
    vec = _coefficient_vector(g, cycle)
    targets = adjunction_targets(g)
    with_k = sum(x * t for x, t in zip(vec, targets))
    return -(pairing(g, cycle, cycle) - with_k) / 2


def blow_up(g: ResolutionGraph, locus: Union[str, tuple[str, str]]) -> tuple[ResolutionGraph, BlowUpMap]:
    """Blow up a generic point of a vertex, or the point of an existing edge.

    The new vertex has Euler number -1 and genus 0; touched vertices have
    their Euler number dropped by one, and an edge locus loses one copy of
    that edge. Total transforms through the returned map preserve all
    pairings, hence det(-M).
    """
    new_id = g.fresh_id("new")
    if isinstance(locus, str):
        vid = locus
        g.vertex(vid)
        verts = tuple(Vertex(v.id, v.euler - 1 if v.id == vid else v.euler, v.genus)
                      for v in g.vertices) + (Vertex(new_id, -1, 0),)
        edges = g.edges + ((vid, new_id),)
        target = ResolutionGraph(verts, edges)
    else:
        u, v = locus
        g.vertex(u)
        g.vertex(v)
        match = next((i for i, e in enumerate(g.edges) if set(e) == {u, v}), None)
        if match is None:
            raise InputError(f"no edge between {u!r} and {v!r}")
        verts = tuple(Vertex(w.id, w.euler - 1 if w.id in (u, v) else w.euler, w.genus)
                      for w in g.vertices) + (Vertex(new_id, -1, 0),)
        edges = g.edges[:match] + g.edges[match + 1:] + ((u, new_id), (v, new_id))
        target = ResolutionGraph(verts, edges)
        locus = (u, v)
    if not _negative_definite(target):  # pragma: no cover - blow-up is unimodular
        raise InternalError("blow-up target is not negative definite")
    return target, BlowUpMap(g, target, locus, new_id)


def total_transform(bmap: BlowUpMap, cycle: RatCycle) -> RatCycle:
    """Pull a cycle back through a blow-up; pairings are preserved."""
    unknown = [vid for vid in cycle.support if vid not in bmap.source.ids]
    if unknown:
        raise InputError(f"cycle is not supported on the source graph: {unknown[0]!r}")
    data = {vid: cycle.coefficient(vid) for vid in cycle.support}
    if isinstance(bmap.locus, str):
        extra = cycle.coefficient(bmap.locus)
    else:
        extra = cycle.coefficient(bmap.locus[0]) + cycle.coefficient(bmap.locus[1])
    if extra:
        data[bmap.new_id] = extra
    return RatCycle(data)


def _extended(g: ResolutionGraph, vid: str, euler: int) -> ResolutionGraph:
    new_id = g.fresh_id("ext")
    verts = g.vertices + (Vertex(new_id, euler, 0),)
    return ResolutionGraph(verts, g.edges + ((vid, new_id),))


def extend_graph(g: ResolutionGraph, vid: str, euler: int | None = None) -> ResolutionGraph:
    """Glue one genus-zero vertex of the given Euler number onto a vertex.

    When the Euler number is omitted, search downward from -2 for the
    largest value whose extension is negative definite with the new vertex
    appearing with multiplicity one in the fundamental cycle, and whose
    rationality/multiplicity verdicts agree at the two next-lower values.
    """
    require_negative_definite(g)
    g.vertex(vid)
    if euler is not None:
        ext = _extended(g, vid, euler)
        if not _negative_definite(ext):
            raise PreconditionError(
                f"extension at {vid!r} with Euler number {euler} is not negative definite")
        return ext

    from . import laufer  # local import: verdict checks live upstream

    def verdicts(k: int):
        ext = _extended(g, vid, k)
        if not _negative_definite(ext):
            return None
        new_id = ext.ids[-1]
        mult = laufer.fundamental_cycle(ext).end.coefficient(new_id)
        return ext, (laufer.laufer_rational(ext), mult == 1)

    # the extension is negative definite exactly below -1 * the matching
    # diagonal entry of the inverse form, so the search cannot run forever
    inv_self = _neg_inverse(g)[g.index(vid)][g.index(vid)]
    lower_limit = -(math.floor(inv_self) + 12)
    k = -2
    while k >= lower_limit:
        probe = verdicts(k)
        if probe is not None and probe[1][1]:
            nxt, nxt2 = verdicts(k - 1), verdicts(k - 2)
            if nxt is not None and nxt2 is not None and probe[1] == nxt[1] == nxt2[1]:
                return probe[0]
        k -= 1
    raise InternalError(f"no stable negative-definite extension found at {vid!r}")
