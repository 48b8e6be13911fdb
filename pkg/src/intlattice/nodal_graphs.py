"""Dual graphs of nodal curves: boundary maps, cycle bases and formal extension classes.

Vertices carry a genus label. Edges are unordered endpoint pairs; loops and
multi-edges are allowed and edges are addressed by index. An orientation
orders each edge as ``(beg, end)``; the branch point ``P_e^-`` lies over
``beg`` and ``P_e^+`` over ``end``, so that ``∂(e) = end - beg`` and the
class of ``e`` is ``P_e^+ - P_e^-``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, NotACycle
from .linalg import Matrix, Sublattice, kernel


@dataclass(frozen=True)
class DualGraph:
    genera: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = len(self.genera)
        if any(g < 0 for g in self.genera):
            raise ValueError("genus labels must be non-negative")
        canon = []
        for e in self.edges:
            if len(e) != 2:
                raise ValueError("an edge has exactly two endpoints")
            a, b = int(e[0]), int(e[1])
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge {e} has an endpoint outside 0..{n - 1}")
            canon.append((min(a, b), max(a, b)))
        object.__setattr__(self, "genera", tuple(int(g) for g in self.genera))
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def num_vertices(self) -> int:
        return len(self.genera)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def components(self) -> list[list[int]]:
        parent = list(range(self.num_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            parent[find(a)] = find(b)
        groups: dict[int, list[int]] = {}
        for v in range(self.num_vertices):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def to_json(self) -> dict:
        return {
            "vertices": [{"genus": str(g)} for g in self.genera],
            "edges": [[str(a), str(b)] for a, b in self.edges],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DualGraph":
        genera = tuple(int(v["genus"]) for v in obj["vertices"])
        edges = tuple((int(e[0]), int(e[1])) for e in obj["edges"])
        return cls(genera, edges)


@dataclass(frozen=True)
class Orientation:
    pairs: tuple[tuple[int, int], ...]  # (beg, end) per edge

    def for_graph(self, g: DualGraph) -> "Orientation":
        if len(self.pairs) != g.num_edges:
            raise DimensionMismatch("orientation must give one ordering per edge")
        for (b, e), edge in zip(self.pairs, g.edges):
            if (min(b, e), max(b, e)) != edge:
                raise ValueError(f"ordering {(b, e)} does not match edge {edge}")
        return self

    def to_json(self) -> list:
        return [[str(b), str(e)] for b, e in self.pairs]

    @classmethod
    def from_json(cls, obj) -> "Orientation":
        return cls(tuple((int(p[0]), int(p[1])) for p in obj))


def canonical_orientation(g: DualGraph) -> Orientation:
    """Lower vertex index at the beginning of every edge."""
    return Orientation(tuple(g.edges))


def boundary_matrix(g: DualGraph, o: Orientation) -> Matrix:
    """``∂ : C_1 → C_0`` as a ``|V| × |E|`` matrix; loops give zero columns."""
    o.for_graph(g)
    rows = [[0] * g.num_edges for _ in range(g.num_vertices)]
    for j, (b, e) in enumerate(o.pairs):
        rows[e][j] += 1
        rows[b][j] -= 1
    return Matrix(rows, ncols=g.num_edges)


def first_betti(g: DualGraph) -> int:
    return g.num_edges - g.num_vertices + len(g.components())


def cycle_space(g: DualGraph, o: Orientation) -> Sublattice:
    """``H_1(Γ, Z) = Ker ∂`` as a sublattice of ``C_1``."""
    if g.num_edges == 0:
        return Sublattice.zero(0)
    return Sublattice(g.num_edges, kernel(boundary_matrix(g, o)))


def is_compact_type(g: DualGraph) -> bool:
    """The dual graph is a tree."""
    return g.is_connected() and first_betti(g) == 0


@dataclass(frozen=True)
class Cycle:
    """A closed walk ``v_1 -e_1- v_2 ... -e_m- v_1`` and its class ``Σ ε_j e_j``."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    signs: tuple[int, ...]
    num_edges: int

    @property
    def coefficients(self) -> tuple[int, ...]:
        c = [0] * self.num_edges
        for e, s in zip(self.edges, self.signs):
            c[e] += s
        return tuple(c)

    def to_json(self) -> dict:
        return {
            "vertices": [str(v) for v in self.vertices],
            "edges": [str(e) for e in self.edges],
            "signs": [str(s) for s in self.signs],
            "coefficients": [str(c) for c in self.coefficients],
        }


def _sign(o: Orientation, edge: int, frm: int, to: int) -> int:
    b, e = o.pairs[edge]
    return 1 if (b, e) == (frm, to) else -1


def breadth_first_forest(g: DualGraph) -> tuple[list[int | None], list[int | None], list[int]]:
    """Parents, parent edges and depths of a BFS forest (vertex and edge order fixed)."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.num_vertices)]
    for j, (a, b) in enumerate(g.edges):
        adj[a].append((j, b))
        if a != b:
            adj[b].append((j, a))
    parent: list[int | None] = [None] * g.num_vertices
    parent_edge: list[int | None] = [None] * g.num_vertices
    depth = [-1] * g.num_vertices
    for root in range(g.num_vertices):
        if depth[root] >= 0:
            continue
        depth[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for j, w in adj[u]:
                if depth[w] < 0:
                    depth[w] = depth[u] + 1
                    parent[w], parent_edge[w] = u, j
                    queue.append(w)
    return parent, parent_edge, depth


def loop_cycle_basis(g: DualGraph, o: Orientation) -> list[Cycle]:
    """Fundamental cycles of a BFS spanning forest: an integral basis of ``Ker ∂``.

    The non-tree edge is traversed along its orientation, from ``beg`` to
    ``end``, and the walk returns to ``beg`` through the tree.
    """
    o.for_graph(g)
    parent, parent_edge, depth = breadth_first_forest(g)
    tree = {j for j in parent_edge if j is not None}
    cycles = []
    for j in range(g.num_edges):
        if j in tree:
            continue
        b, e = o.pairs[j]
        if b == e:
            cycles.append(Cycle((b,), (j,), (1,), g.num_edges))
            continue
        # tree paths from e and from b up to their common ancestor
        up_e, up_b = [e], [b]
        x, y = e, b
        while depth[x] > depth[y]:
            x = parent[x]
            up_e.append(x)
        while depth[y] > depth[x]:
            y = parent[y]
            up_b.append(y)
        while x != y:
            x, y = parent[x], parent[y]
            up_e.append(x)
            up_b.append(y)
        walk = up_e + up_b[-2::-1]  # e → ancestor → b
        verts = [b] + walk[:-1]
        edges, signs = [j], [1]
        for u, w in zip(walk, walk[1:]):
            child = u if parent[u] == w else w
            pe = parent_edge[child]
            edges.append(pe)
            signs.append(_sign(o, pe, u, w))
        cycles.append(Cycle(tuple(verts), tuple(edges), tuple(signs), g.num_edges))
    return cycles


def cycle_basis_lattice(g: DualGraph, o: Orientation) -> Sublattice:
    cycles = loop_cycle_basis(g, o)
    if not cycles:
        return Sublattice.zero(g.num_edges)
    return Sublattice.span(g.num_edges, [c.coefficients for c in cycles])


# -- formal extension classes ---------------------------------------------------------


def point_symbol(edge: int, side: str) -> str:
    return f"P{edge}{side}"


@dataclass(frozen=True)
class ExtensionClass:
    """Per-vertex formal divisors in the branch symbols ``P_e^±``."""

    divisors: tuple[dict[str, int], ...]

    def degrees(self) -> tuple[int, ...]:
        return tuple(sum(d.values()) for d in self.divisors)

    def is_zero(self) -> bool:
        return not any(self.divisors)

    def __add__(self, other: "ExtensionClass") -> "ExtensionClass":
        return ExtensionClass(tuple(_combine(a, b, 1) for a, b in zip(self.divisors, other.divisors)))

    def scaled(self, c: int) -> "ExtensionClass":
        return ExtensionClass(tuple(_combine({}, d, c) for d in self.divisors))

    def to_json(self) -> dict:
        return {
            "vertices": [{s: str(c) for s, c in sorted(d.items())} for d in self.divisors],
            "degrees": [str(x) for x in self.degrees()],
        }


def _combine(a: dict[str, int], b: dict[str, int], c: int) -> dict[str, int]:
    out = dict(a)
    for s, x in b.items():
        out[s] = out.get(s, 0) + c * x
        if out[s] == 0:
            del out[s]
    return out


def extension_class(g: DualGraph, o: Orientation, cycle: Sequence[int] | Cycle) -> ExtensionClass:
    """``c^t(h) = Σ h_e (P_e^+ - P_e^-)`` sorted onto the vertices carrying each point."""
    o.for_graph(g)
    h = list(cycle.coefficients if isinstance(cycle, Cycle) else cycle)
    if len(h) != g.num_edges:
        raise DimensionMismatch("cycle has the wrong number of edge coefficients")
    d = boundary_matrix(g, o) @ Matrix.column_vector(h) if g.num_edges else Matrix.zeros(g.num_vertices, 1)
    if not d.is_zero():
        raise NotACycle("the chain has nonzero boundary")
    divs: list[dict[str, int]] = [{} for _ in range(g.num_vertices)]
    for j, c in enumerate(h):
        if not c:
            continue
        b, e = o.pairs[j]
        divs[e] = _combine(divs[e], {point_symbol(j, "+"): 1}, c)
        divs[b] = _combine(divs[b], {point_symbol(j, "-"): 1}, -c)
    return ExtensionClass(tuple(divs))


@dataclass(frozen=True)
class HyperellipticNodalClass:
    """One vertex, one loop, branch points exchanged by the involution."""

    graph: DualGraph
    orientation: Orientation
    generator: Cycle
    extension: ExtensionClass
    point: str  # x
    conjugate: str  # ι(x)

    def involution(self, cls: ExtensionClass) -> ExtensionClass:
        swap = {self.point: self.conjugate, self.conjugate: self.point}
        return ExtensionClass(tuple({swap.get(s, s): c for s, c in d.items()} for d in cls.divisors))

    def to_json(self) -> dict:
        return {
            "graph": self.graph.to_json(),
            "class": self.extension.to_json(),
            "x": self.point,
            "iota_x": self.conjugate,
            "formula": f"{self.point} - {self.conjugate}",
        }


def hyperelliptic_onenodal_class(genus: int = 1) -> HyperellipticNodalClass:
    """``c^t(γ) = x - ι(x)`` for an irreducible one-nodal hyperelliptic curve.

    The normalization has genus ``genus - 1``; the two preimages of the node
    are exchanged by the involution.
    """
    if genus < 1:
        raise ValueError("the curve needs arithmetic genus at least 1")
    g = DualGraph((genus - 1,), ((0, 0),))
    o = canonical_orientation(g)
    (gamma,) = loop_cycle_basis(g, o)
    cls = extension_class(g, o, gamma)
    return HyperellipticNodalClass(g, o, gamma, cls, point_symbol(0, "+"), point_symbol(0, "-"))
