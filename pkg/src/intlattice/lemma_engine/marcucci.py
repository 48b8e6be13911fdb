"""Two monodromy operators, their invariant lattices, and ``nG ⊂ H ⊂ G``.

``G`` carries a unimodular symplectic form. The weak statement (invariants
span, meet nontrivially, ``H^{T_i} = n_i G^{T_i}``) gives ``nG ⊂ H``; adding
the basis shape of the invariants and proportionality of the forms gives
``H = nG``. :func:`marcucci_counterexample` shows the weak hypotheses do not
give equality.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..errors import BadParameters
from ..linalg import INFINITE, Matrix, Sublattice, elementary_divisors, index
from ..sampling import random_symplectic
from ..symplectic import (
    MonodromyOperator,
    SymplecticBasis,
    SymplecticSpace,
    invariants,
    standard_space,
    transvection,
)
from .report import Report


@dataclass(frozen=True)
class MarcucciInstance:
    g_lattice: SymplecticSpace
    h_sub: Sublattice
    t1: MonodromyOperator
    t2: MonodromyOperator
    n: int
    k: int
    basis: SymplecticBasis | None = None
    construction: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        vec = lambda v: [str(x) for x in v]  # noqa: E731
        return {
            "kind": "marcucci",
            "g_lattice": self.g_lattice.to_json(),
            "h_sub": self.h_sub.to_json(),
            "t1": self.t1.to_json(),
            "t2": self.t2.to_json(),
            "n": str(self.n),
            "k": str(self.k),
            "basis": (
                {"deltas": [vec(x) for x in self.basis.deltas], "gammas": [vec(x) for x in self.basis.gammas]}
                if self.basis
                else None
            ),
            "construction": self.construction,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MarcucciInstance":
        vecs = lambda vs: tuple(tuple(int(x) for x in v) for v in vs)  # noqa: E731
        b = obj.get("basis")
        return cls(
            SymplecticSpace.from_json(obj["g_lattice"]),
            Sublattice.from_json(obj["h_sub"]),
            MonodromyOperator.from_json(obj["t1"]),
            MonodromyOperator.from_json(obj["t2"]),
            int(obj["n"]),
            int(obj["k"]),
            SymplecticBasis(vecs(b["deltas"]), vecs(b["gammas"])) if b else None,
            dict(obj.get("construction", {})),
        )


def marcucci_counterexample(n: int, k: int) -> MarcucciInstance:
    """``H = ⟨ne_1, ne_2, nf_1, (n/k)(f_1 + f_2)⟩`` with ``T_i`` the transvection by ``k e_i``."""
    if k <= 1 or k > n or n % k:
        raise BadParameters(f"need k | n and 1 < k <= n, got n={n}, k={k}")
    g, basis = standard_space(2)
    c = n // k
    # coordinates (e_1, e_2, f_1, f_2)
    h = Sublattice.span(4, [[n, 0, 0, 0], [0, n, 0, 0], [0, 0, n, 0], [0, 0, c, c]])
    t1 = transvection(g, [k, 0, 0, 0])
    t2 = transvection(g, [0, k, 0, 0])
    return MarcucciInstance(g, h, t1, t2, n, k, basis, {"family": "counterexample"})


def preserves(t: MonodromyOperator, s: Sublattice) -> bool:
    return s.image(t.matrix) <= s


def invariant_multiple(h: Sublattice, g_inv: Sublattice) -> int | None:
    """``n`` with ``H ∩ G^T = n · G^T``, if it exists."""
    h_inv = h & g_inv
    if h_inv.rank != g_inv.rank or g_inv.is_zero():
        return None
    coords = g_inv.coordinates(h_inv.basis)
    divisors = elementary_divisors(coords)
    if len(set(divisors)) != 1:
        return None
    n = divisors[0]
    # equal elementary divisors n means the coordinate lattice is n·Z^r
    return n if g_inv.scaled(n) == h_inv else None


def proportional_form(space: SymplecticSpace, h: Sublattice) -> int | None:
    """``m`` with ``E_G|_H = m · (unimodular form)``, if it exists."""
    gram = space.restricted_gram(h.vectors())
    m = gram.content()
    if m == 0:
        return None
    scaled = Matrix([[x // m for x in r] for r in gram.rows()], ncols=gram.ncols)
    return m if abs(scaled.det()) == 1 else None


def _invariants_match_basis(inst: MarcucciInstance, g1: Sublattice, g2: Sublattice) -> bool:
    b = inst.basis
    if b is None or not b.is_valid(inst.g_lattice) or len(b.deltas) < 2:
        return False
    r = inst.g_lattice.rank
    d, gm = list(b.deltas), list(b.gammas)
    want1 = Sublattice.span(r, d + [x for j, x in enumerate(gm) if j != 0])
    want2 = Sublattice.span(r, d + [x for j, x in enumerate(gm) if j != 1])
    return g1 == want1 and g2 == want2


def check_marcucci(inst: MarcucciInstance, improved: bool = False) -> Report:
    """Weak hypotheses and ``nG ⊂ H``; with ``improved`` also (ii), (iii) and ``H = nG``."""
    rep = Report("marcucci_improved" if improved else "marcucci")
    hyp, con = rep.hypotheses, rep.conclusions
    g, h = inst.g_lattice, inst.h_sub
    full = g.full()
    hyp["H-in-G-same-rank"] = h.rank == g.rank
    hyp["T-automorphisms"] = all(t.matrix.is_unimodular() for t in (inst.t1, inst.t2))
    hyp["T-preserve-H"] = all(preserves(t, h) for t in (inst.t1, inst.t2))
    g1, g2 = invariants(inst.t1), invariants(inst.t2)
    hyp["(1) invariants-span"] = (g1 + g2) == full
    hyp["(2) invariants-meet"] = not (g1 & g2).is_zero()
    n1, n2 = invariant_multiple(h, g1), invariant_multiple(h, g2)
    hyp["(3) invariant-multiples"] = n1 is not None and n2 is not None
    rep.details["n1"] = n1 if n1 is not None else "none"
    rep.details["n2"] = n2 if n2 is not None else "none"

    weak_hold = all(hyp.values())
    n = n1 if n1 is not None else inst.n
    nG = full.scaled(n)
    con["n1-equals-n2"] = n1 is not None and n1 == n2
    con["nG-in-H"] = nG <= h
    q = index(h, nG) if nG <= h else INFINITE
    rep.details["quotient_order"] = q if q is not INFINITE else "infinite"
    rep.details["weak_hypotheses_hold"] = weak_hold
    rep.details["weak_conclusion_holds"] = all(con.values())

    if improved:
        hyp["(ii) invariants-from-basis"] = _invariants_match_basis(inst, g1, g2)
        m = proportional_form(g, h)
        hyp["(iii) proportional-form"] = m is not None
        rep.details["form_multiple"] = m if m is not None else "none"
        gram = g.restricted_gram(h.vectors())
        c = gram.content()
        if c:
            rep.details["scaled_form_determinant"] = Matrix([[x // c for x in r] for r in gram.rows()], ncols=gram.ncols).det()
        con["H-equals-nG"] = h == nG
    rep.details["blocking"] = rep.failing_hypotheses
    return rep


def generate_marcucci_improved(g: int, k: int, rng: random.Random, attempts: int = 12) -> MarcucciInstance:
    """Instances satisfying every hypothesis of the strong statement.

    ``T_i`` is the transvection by ``c_i δ_i`` with ``1 ≤ c_i ≤ k``. ``H`` is
    ``nG`` enlarged by a few vectors ``(n/d) v`` with ``d | n`` (``d = 1``
    allowed); candidates are kept only when all hypotheses hold, so ``H = nG``
    is what the check must confirm.
    """
    space, _ = standard_space(g)
    r = space.rank
    s = random_symplectic(rng, g)
    cols = s.columns()
    basis = SymplecticBasis(tuple(cols[:g]), tuple(cols[g:]))
    c1, c2 = rng.randint(1, k), rng.randint(1, k)
    t1 = transvection(space, [c1 * x for x in basis.deltas[0]])
    t2 = transvection(space, [c2 * x for x in basis.deltas[1]])
    n = rng.randint(1, 6)
    base = Sublattice.full(r).scaled(n)
    tried = 0
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    for _ in range(attempts):
        extra = []
        for _ in range(rng.randint(1, 2)):
            d = rng.choice(divisors)
            extra.append([(n // d) * rng.randint(-2, 2) for _ in range(r)])
        cand = base + Sublattice.span(r, extra)
        tried += 1
        inst = MarcucciInstance(space, cand, t1, t2, n, k, basis, {})
        if check_marcucci(inst, improved=True).hypotheses_hold:
            return MarcucciInstance(
                space, cand, t1, t2, n, k, basis, _audit(s, c1, c2, n, extra, tried)
            )
    return MarcucciInstance(space, base, t1, t2, n, k, basis, _audit(s, c1, c2, n, [], tried))


def _audit(s, c1, c2, n, extra, tried) -> dict:
    return {
        "family": "improved",
        "symplectic_change": s.to_json(),
        "multipliers": [str(c1), str(c2)],
        "n": str(n),
        "extra_vectors": [[str(x) for x in v] for v in extra],
        "candidates_tried": str(tried),
    }
