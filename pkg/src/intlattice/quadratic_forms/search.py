"""Backtracking isometry search and stabilizer-chain automorphism counting.

A candidate isometry is a tuple of images ``x_1..x_n`` of the basis vectors,
taken from a finite inventory of short vectors, with ``x_i·x_j`` prescribed.
Domains are bitsets (Python ints) over the inventory and are refined by
forward checking after each choice.
"""

from __future__ import annotations

from ..linalg import Matrix
from .enumeration import signed_vectors
from .form import QForm, lll, require_positive_definite

Vector = tuple[int, ...]


class _Inventory:
    """Short vectors of a form with cached pairing bitsets."""

    def __init__(self, q: QForm, vectors: list[Vector]):
        self.q = q
        self.vectors = vectors
        self.index = {v: a for a, v in enumerate(vectors)}
        g = q.gram.rows()
        n = q.rank
        self._w = [tuple(sum(v[i] * g[i][j] for i in range(n) if v[i]) for j in range(n)) for v in vectors]
        self._masks: dict[int, dict[int, int]] = {}
        self.by_norm: dict[int, int] = {}
        for a, v in enumerate(vectors):
            nv = sum(x * y for x, y in zip(self._w[a], v))
            self.by_norm[nv] = self.by_norm.get(nv, 0) | (1 << a)

    def masks(self, a: int) -> dict[int, int]:
        m = self._masks.get(a)
        if m is None:
            wa = self._w[a]
            m = {}
            for b, v in enumerate(self.vectors):
                c = sum(x * y for x, y in zip(wa, v) if y)
                m[c] = m.get(c, 0) | (1 << b)
            self._masks[a] = m
        return m

    def pair_mask(self, a: int, c: int) -> int:
        return self.masks(a).get(c, 0)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Matcher:
    """Finds images of basis vectors with a prescribed Gram matrix ``target``."""

    def __init__(self, inv: _Inventory, target: list[list[int]]):
        self.inv = inv
        self.t = target
        self.n = len(target)
        self.base = [inv.by_norm.get(target[i][i], 0) for i in range(self.n)]

    def _restrict(self, domains: list[int], depth: int, a: int) -> list[int] | None:
        masks = self.inv.masks(a)
        out = domains[:]
        for l in range(depth + 1, self.n):
            d = out[l] & masks.get(self.t[l][depth], 0)
            if not d:
                return None
            out[l] = d
        return out

    def initial(self, prefix: list[int]) -> list[int] | None:
        domains = self.base[:]
        for depth, a in enumerate(prefix):
            if not (domains[depth] >> a) & 1:
                return None
            domains = self._restrict(domains, depth, a)
            if domains is None:
                return None
        return domains

    def extend(self, prefix: list[int]) -> list[int] | None:
        domains = self.initial(prefix)
        if domains is None:
            return None
        chosen = list(prefix)
        return self._dfs(chosen, domains)

    def _dfs(self, chosen: list[int], domains: list[int]) -> list[int] | None:
        depth = len(chosen)
        if depth == self.n:
            return chosen[:]
        for a in _bits(domains[depth]):
            nxt = self._restrict(domains, depth, a)
            if nxt is None:
                continue
            chosen.append(a)
            found = self._dfs(chosen, nxt)
            chosen.pop()
            if found is not None:
                return found
        return None


def _images_matrix(inv: _Inventory, idx: list[int]) -> Matrix:
    return Matrix([list(inv.vectors[a]) for a in idx], ncols=inv.q.rank)


def isometry(q1: QForm, q2: QForm) -> Matrix | None:
    """Unimodular ``γ`` with ``γ · gram2 · γ^t = gram1``, or ``None``."""
    require_positive_definite(q1)
    require_positive_definite(q2)
    if q1.rank != q2.rank:
        return None
    if q1.det() != q2.det():
        return None
    n = q1.rank
    if n == 0:
        return Matrix.zeros(0, 0)
    u1, r1 = lll(q1)
    bound = max(r1.gram[i, i] for i in range(n))
    inv = _Inventory(q2, signed_vectors(q2, bound))
    found = _Matcher(inv, r1.gram.tolist()).extend([])
    if found is None:
        return None
    delta = _images_matrix(inv, found)
    gamma = (u1.inverse() @ delta).to_integer()
    # certificate check; never trust the search alone
    if gamma @ q2.gram @ gamma.T != q1.gram or not gamma.is_unimodular():
        raise AssertionError("isometry search produced an invalid witness")
    return gamma


class AutomorphismGroup:
    """Stabilizer chain of ``Aut(q)`` along an LLL-reduced basis.

    ``orbit_sizes[i]`` is the orbit length of the ``i``-th reduced basis
    vector under the pointwise stabilizer of the earlier ones; the group
    order is the product of these lengths.
    """

    def __init__(self, q: QForm):
        require_positive_definite(q)
        self.q = q
        n = q.rank
        self.u, self.reduced = lll(q)
        bound = max((self.reduced.gram[i, i] for i in range(n)), default=0)
        self.inv = _Inventory(self.reduced, signed_vectors(self.reduced, bound) if n else [])
        self.generators: list[list[int]] = []  # permutations of the inventory
        self.generator_matrices: list[Matrix] = []
        self.orbit_sizes: list[int] = [1] * n
        self.searches = 0
        if n:
            self._build()

    def _perm(self, x: Matrix) -> list[int]:
        inv = self.inv
        rows = x.rows()
        n = self.q.rank
        out = []
        for v in inv.vectors:
            img = tuple(sum(v[i] * rows[i][j] for i in range(n) if v[i]) for j in range(n))
            out.append(inv.index[img])
        return out

    def _orbit(self, start: int, gens: list[list[int]]) -> set[int]:
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for a in frontier:
                for p in gens:
                    b = p[a]
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return seen

    def _build(self) -> None:
        n = self.q.rank
        inv = self.inv
        unit = [inv.index[tuple(int(i == j) for j in range(n))] for i in range(n)]
        matcher = _Matcher(inv, self.reduced.gram.tolist())
        gens: list[list[int]] = []
        for i in range(n - 1, -1, -1):
            prefix = unit[:i]
            domains = matcher.initial(prefix)
            candidates = domains[i] if domains is not None else 0
            orbit = self._orbit(unit[i], gens)
            excluded: set[int] = set()
            for a in _bits(candidates):
                if a in orbit or a in excluded:
                    continue
                self.searches += 1
                found = matcher.extend(prefix + [a])
                if found is None:
                    excluded |= self._orbit(a, gens)
                    continue
                x = _images_matrix(inv, found)
                if x @ self.reduced.gram @ x.T != self.reduced.gram:
                    raise AssertionError("automorphism search produced an invalid witness")
                gens.append(self._perm(x))
                self.generator_matrices.append(x)
                orbit = self._orbit(unit[i], gens)
            self.orbit_sizes[i] = len(orbit)
        self.generators = gens

    @property
    def order(self) -> int:
        out = 1
        for s in self.orbit_sizes:
            out *= s
        return out

    def generators_original(self) -> list[Matrix]:
        """Generators written in the coordinates of the input form."""
        u = self.u
        u_inv = u.inverse()
        return [(u_inv @ x @ u).to_integer() for x in self.generator_matrices]


def automorphism_order(q: QForm) -> int:
    """``|{γ ∈ GL_k(Z) : γ gram γ^t = gram}|``."""
    if q.rank == 0:
        return 1
    return AutomorphismGroup(q).order

