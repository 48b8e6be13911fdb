"""Four congruences modulo ``V_i^{⊕k}`` pinning down ``α_i · H^{⊕k} ⊂ M``.

Only the module structure of ``H`` matters here; the symplectic space is
carried along because the configurations come from degenerations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import reduce

from ..linalg import Matrix, Sublattice, is_saturated
from ..sampling import random_nonsingular, random_unimodular
from ..symplectic import SymplecticSpace, standard_space
from .basic import act, congruent, image_of_full, power, quotient_gamma
from .report import Report


@dataclass(frozen=True)
class FourDegenInstance:
    h: SymplecticSpace
    k: int
    w: tuple[Sublattice, ...]
    v: tuple[Sublattice, ...]
    m: Sublattice
    alphas: tuple[Matrix, ...]
    construction: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "kind": "four_degenerations",
            "h": self.h.to_json(),
            "k": str(self.k),
            "w": [s.to_json() for s in self.w],
            "v": [s.to_json() for s in self.v],
            "m": self.m.to_json(),
            "alphas": [a.to_json() for a in self.alphas],
            "construction": self.construction,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FourDegenInstance":
        return cls(
            SymplecticSpace.from_json(obj["h"]),
            int(obj["k"]),
            tuple(Sublattice.from_json(s) for s in obj["w"]),
            tuple(Sublattice.from_json(s) for s in obj["v"]),
            Sublattice.from_json(obj["m"]),
            tuple(Matrix.from_json(a) for a in obj["alphas"]),
            dict(obj.get("construction", {})),
        )


def _sum(parts) -> Sublattice:
    return reduce(lambda a, b: a + b, parts)


def check_four_degenerations(inst: FourDegenInstance) -> Report:
    """Every hypothesis is evaluated independently; nothing is assumed to imply anything."""
    n, k = inst.h.rank, inst.k
    w, v, alphas = inst.w, inst.v, inst.alphas
    rep = Report("four_degenerations")
    hyp = rep.hypotheses
    hyp["alphas-nonsingular"] = all(a.shape == (k, k) and a.det() != 0 for a in alphas)
    hyp["v-in-w"] = all(vi <= wi for vi, wi in zip(v, w))

    vsum = _sum(v)
    hyp["(1) direct-sum"] = vsum.rank == sum(vi.rank for vi in v)
    hyp["(1) torsion-free-cokernel"] = is_saturated(vsum)

    w12, w34 = w[0] & w[1], w[2] & w[3]
    w1234 = w12 & w34
    hyp["(2) spanning"] = (w12 + w34).is_full()
    for name, s, vs in (("W12", w12, v[0] + v[1]), ("W34", w34, v[2] + v[3]), ("W1234", w1234, vsum)):
        hyp[f"(3) {name} nonzero"] = not s.is_zero()
        hyp[f"(3) {name} saturated"] = is_saturated(s)
        hyp[f"(3) {name} strictly contains V-sum"] = vs < s

    ok_alphas = hyp["alphas-nonsingular"]
    for i in range(4):
        if not ok_alphas:
            hyp[f"congruence-{i + 1}"] = False
            continue
        lhs = inst.m & power(w[i], k)
        hyp[f"congruence-{i + 1}"] = congruent(lhs, act(alphas[i], w[i], k), power(v[i], k))

    if ok_alphas:
        images = [image_of_full(a, n) for a in alphas]
        rep.conclusions["images-equal"] = all(im == images[0] for im in images)
        rep.conclusions["images-in-M"] = all(im <= inst.m for im in images)
        gammas = [quotient_gamma(alphas[0], a) for a in alphas]
        rep.details["gammas"] = [g if g is not None else "none" for g in gammas]
    else:
        rep.conclusions["images-equal"] = False
        rep.conclusions["images-in-M"] = False
    rep.details["ranks"] = {
        "W12": w12.rank,
        "W34": w34.rank,
        "W1234": w1234.rank,
        "V-sum": vsum.rank,
    }
    return rep


# -- generators ------------------------------------------------------------------


def _coordinate_span(n: int, coords) -> Sublattice:
    return Sublattice.span(n, [[int(i == c) for i in range(n)] for c in sorted(coords)]) if coords else Sublattice.zero(n)


def _transport(u: Matrix, s: Sublattice) -> Sublattice:
    return s.image(u)


def canonical_configuration(g: int) -> tuple[list[Sublattice], list[Sublattice]]:
    """``W_i`` omits ``γ_i`` and ``V_i = ⟨δ_i⟩`` in the standard basis.

    Hypothesis (3) holds only for ``g ≥ 5``: the quadruple intersection is
    ``⟨δ_1..δ_g, γ_5..γ_g⟩``, which equals ``V_1 ⊕ .. ⊕ V_4`` when ``g = 4``.
    """
    if g < 4:
        raise ValueError("the pattern needs four distinct symplectic pairs")
    n = 2 * g
    w = [_coordinate_span(n, [c for c in range(n) if c != g + i]) for i in range(4)]
    v = [_coordinate_span(n, [i]) for i in range(4)]
    return w, v


def random_configuration(rng: random.Random, n: int) -> tuple[list[Sublattice], list[Sublattice], dict]:
    """Coordinate configuration satisfying (1)-(3), moved by a random ``U ∈ GL_n(Z)``.

    A core ``Q`` plays the quadruple intersection. Disjoint ``P_i ⊂ Q`` with
    ``|∪P_i| < |Q|`` span the ``V_i`` (possibly zero). Each remaining
    coordinate lies in ``W_1 ∩ W_2`` or in ``W_3 ∩ W_4`` and possibly in one
    more ``W_j`` from the other pair.
    """
    coords = list(range(n))
    rng.shuffle(coords)
    q_size = rng.randint(1, n)
    core, rest = coords[:q_size], coords[q_size:]
    budget = rng.randint(0, q_size - 1)
    pool = core[:]
    rng.shuffle(pool)
    p = [[] for _ in range(4)]
    for c in pool[:budget]:
        p[rng.randrange(4)].append(c)
    s = [set(core) for _ in range(4)]
    for c in rest:
        pair = (0, 1) if rng.random() < 0.5 else (2, 3)
        other = (2, 3) if pair == (0, 1) else (0, 1)
        for j in pair:
            s[j].add(c)
        if rng.random() < 0.3:
            s[rng.choice(other)].add(c)
    u = random_unimodular(rng, n)
    w = [_transport(u, _coordinate_span(n, si)) for si in s]
    v = [_transport(u, _coordinate_span(n, pi)) for pi in p]
    audit = {
        "core": [str(c) for c in sorted(core)],
        "v_coordinates": [[str(c) for c in sorted(pi)] for pi in p],
        "w_coordinates": [[str(c) for c in sorted(si)] for si in s],
        "change_of_basis": u.to_json(),
    }
    return w, v, audit


def build_instance(
    h: SymplecticSpace,
    k: int,
    w,
    v,
    alpha: Matrix,
    gammas,
    extra: Matrix | None = None,
    construction: dict | None = None,
) -> FourDegenInstance:
    """``M = α · H^{⊕k}`` (plus the columns of ``extra``), ``α_i = α γ_i``."""
    m = image_of_full(alpha, h.rank)
    if extra is not None and extra.ncols:
        m = m + Sublattice.span(h.rank * k, extra)
    alphas = tuple(alpha @ gm for gm in gammas)
    return FourDegenInstance(h, k, tuple(w), tuple(v), m, alphas, construction or {})


def generate_four_degenerations(g: int, k: int, rng: random.Random) -> tuple[FourDegenInstance, Report | None]:
    """Instance plus its report when one was already computed while filtering noise."""
    h, _ = standard_space(g)
    n = h.rank
    alpha = random_nonsingular(rng, k)
    gammas = [random_unimodular(rng, k) if rng.random() < 0.5 else Matrix.identity(k) for _ in range(4)]
    if g >= 5 and rng.random() < 0.5:
        w, v = canonical_configuration(g)
        audit = {"pattern": "omit-gamma-i"}
    else:
        w, v, audit = random_configuration(rng, n)
        audit["pattern"] = "random-coordinates"
    audit["alpha"] = alpha.to_json()
    audit["gammas"] = [gm.to_json() for gm in gammas]
    if rng.random() < 0.5:
        noise = Matrix.from_columns([[rng.randint(-3, 3) for _ in range(n * k)]], nrows=n * k)
        noisy = build_instance(h, k, w, v, alpha, gammas, noise, dict(audit, noise=noise.to_json()))
        rep = check_four_degenerations(noisy)
        if rep.hypotheses_hold:
            return noisy, rep
    return build_instance(h, k, w, v, alpha, gammas, construction=dict(audit, noise="none")), None
