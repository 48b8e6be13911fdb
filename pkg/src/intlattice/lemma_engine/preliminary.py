"""Instances for the two-congruence lemma ``M ∩ W^{⊕k} = α_i · W^{⊕k}``."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..linalg import Matrix, Sublattice
from ..sampling import random_nonsingular, random_unimodular
from .basic import act, check_preliminary_three, power
from .report import Report


@dataclass(frozen=True)
class PreliminaryThreeInstance:
    h_rank: int
    w: Sublattice
    v1: Sublattice
    v2: Sublattice
    m: Sublattice
    a1: Matrix
    a2: Matrix
    construction: dict = field(default_factory=dict, compare=False)

    @property
    def k(self) -> int:
        return self.a1.nrows

    def check(self) -> Report:
        return check_preliminary_three(self.h_rank, self.w, self.v1, self.v2, self.m, self.a1, self.a2)

    def to_json(self) -> dict:
        return {
            "kind": "preliminary_three",
            "h_rank": str(self.h_rank),
            "w": self.w.to_json(),
            "v1": self.v1.to_json(),
            "v2": self.v2.to_json(),
            "m": self.m.to_json(),
            "a1": self.a1.to_json(),
            "a2": self.a2.to_json(),
            "construction": self.construction,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PreliminaryThreeInstance":
        sub = {key: Sublattice.from_json(obj[key]) for key in ("w", "v1", "v2", "m")}
        return cls(
            int(obj["h_rank"]),
            a1=Matrix.from_json(obj["a1"]),
            a2=Matrix.from_json(obj["a2"]),
            construction=dict(obj.get("construction", {})),
            **sub,
        )


def _coords(n: int, cs) -> Sublattice:
    return Sublattice.span(n, [[int(i == c) for i in range(n)] for c in sorted(cs)])


def generate_preliminary_three(h_rank: int, k: int, rng: random.Random) -> PreliminaryThreeInstance:
    """``W``, ``V_1``, ``V_2`` and a complement ``C`` are coordinate spans moved by ``U``.

    ``M = α W^{⊕k}`` plus vectors ``c + v`` with ``c`` running over
    independent elements of ``C^{⊕k}`` and ``v ∈ (V_1 ⊕ V_2)^{⊕k}``. Such
    vectors never meet ``W^{⊕k}`` in a new element, so the congruences hold
    while ``M`` itself carries ``V``-components.
    """
    n = h_rank
    coords = list(range(n))
    rng.shuffle(coords)
    w_size = rng.randint(1, n)
    w_c, c_c = coords[:w_size], coords[w_size:]
    budget = rng.randint(0, w_size - 1)
    p1, p2 = [], []
    for c in w_c[:budget]:
        (p1 if rng.random() < 0.5 else p2).append(c)
    u = random_unimodular(rng, n)
    w, v1, v2 = (_coords(n, s).image(u) for s in (w_c, p1, p2))
    alpha = random_nonsingular(rng, k)
    gamma = random_unimodular(rng, k) if rng.random() < 0.5 else Matrix.identity(k)
    m = act(alpha, w, k)
    noise = []
    vk = power(v1 + v2, k)
    uk = Matrix.identity(k).kron(u)
    slots = [(copy, c) for copy in range(k) for c in c_c]
    rng.shuffle(slots)
    for copy, c in slots[: rng.randint(0, len(slots))]:
        x = [0] * (n * k)
        x[copy * n + c] = rng.choice((-3, -2, -1, 1, 2, 3))
        x = _apply(uk, x)
        for b in vk.vectors():
            coeff = rng.randint(-2, 2)
            x = [xi + coeff * bi for xi, bi in zip(x, b)]
        noise.append(x)
    if noise:
        m = m + Sublattice.span(n * k, noise)
    construction = {
        "w_coordinates": [str(c) for c in sorted(w_c)],
        "v1_coordinates": [str(c) for c in sorted(p1)],
        "v2_coordinates": [str(c) for c in sorted(p2)],
        "change_of_basis": u.to_json(),
        "alpha": alpha.to_json(),
        "gamma": gamma.to_json(),
        "noise_vectors": str(len(noise)),
    }
    return PreliminaryThreeInstance(n, w, v1, v2, m, alpha, alpha @ gamma, construction)


def _apply(m: Matrix, x) -> list[int]:
    return list((m @ Matrix.column_vector(x)).column(0))
