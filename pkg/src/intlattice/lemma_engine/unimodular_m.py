"""Sublattices ``M ⊂ H^{⊕k}`` on which ``E^{⊕k}(β^{-1}·, ·)`` is unimodular."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..errors import HypothesisFailed, NotPositiveDefinite
from ..linalg import Matrix, Sublattice, index
from ..polarization import determinant_division_check, pullback_form
from ..quadratic_forms import QForm
from ..sampling import random_nonsingular, random_symplectic, random_unimodular
from ..symplectic import SymplecticBasis, SymplecticSpace, standard_space
from .basic import check_images_lemma, congruent, image_of_full, power
from .report import Report


def distinguished_sublattices(basis: SymplecticBasis, k: int) -> dict[str, Sublattice]:
    """``H'_1, H'_2`` (omit ``f_1`` resp. ``f_2`` in every copy) and ``V_1, V_2`` (``e_1`` resp. ``e_2``)."""
    n = 2 * len(basis.deltas)
    e, f = basis.deltas, basis.gammas

    def span(vs):
        return power(Sublattice.span(n, list(vs)), k)

    return {
        "h1": span(list(e) + [x for j, x in enumerate(f) if j != 0]),
        "h2": span(list(e) + [x for j, x in enumerate(f) if j != 1]),
        "v1": span([e[0]]),
        "v2": span([e[1]]),
    }


@dataclass(frozen=True)
class DualityWitness:
    """Data for the determinant relation coming from a perfect pairing ``ψ``."""

    psi: Matrix
    es: tuple[tuple[int, ...], ...]
    fs: tuple[tuple[int, ...], ...]
    a1: Matrix
    a2: Matrix
    b1: Matrix
    b2: Matrix

    def to_json(self) -> dict:
        return {
            "psi": self.psi.to_json(),
            "es": [[str(x) for x in v] for v in self.es],
            "fs": [[str(x) for x in v] for v in self.fs],
            "a1": self.a1.to_json(),
            "a2": self.a2.to_json(),
            "b1": self.b1.to_json(),
            "b2": self.b2.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DualityWitness":
        vecs = lambda key: tuple(tuple(int(x) for x in v) for v in obj[key])  # noqa: E731
        mats = [Matrix.from_json(obj[key]) for key in ("a1", "a2", "b1", "b2")]
        return cls(Matrix.from_json(obj["psi"]), vecs("es"), vecs("fs"), *mats)


@dataclass(frozen=True)
class UnimodularMInstance:
    h: SymplecticSpace
    basis: SymplecticBasis
    k: int
    beta: Matrix
    m: Sublattice
    alphas: tuple[Matrix, Matrix]
    h1: Sublattice
    h2: Sublattice
    v1: Sublattice
    v2: Sublattice
    witness: DualityWitness | None = None
    construction: dict = field(default_factory=dict, compare=False)

    @classmethod
    def build(cls, h, basis, k, beta, m, alphas, witness=None, construction=None) -> "UnimodularMInstance":
        if isinstance(beta, QForm):
            beta = beta.gram
        d = distinguished_sublattices(basis, k)
        return cls(h, basis, k, beta, m, tuple(alphas), d["h1"], d["h2"], d["v1"], d["v2"], witness, construction or {})

    def to_json(self) -> dict:
        vec = lambda v: [str(x) for x in v]  # noqa: E731
        return {
            "kind": "unimodular_m",
            "h": self.h.to_json(),
            "basis": {"deltas": [vec(x) for x in self.basis.deltas], "gammas": [vec(x) for x in self.basis.gammas]},
            "k": str(self.k),
            "beta": self.beta.to_json(),
            "m": self.m.to_json(),
            "alphas": [a.to_json() for a in self.alphas],
            "h1": self.h1.to_json(),
            "h2": self.h2.to_json(),
            "v1": self.v1.to_json(),
            "v2": self.v2.to_json(),
            "witness": self.witness.to_json() if self.witness else None,
            "construction": self.construction,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "UnimodularMInstance":
        vecs = lambda vs: tuple(tuple(int(x) for x in v) for v in vs)  # noqa: E731
        basis = SymplecticBasis(vecs(obj["basis"]["deltas"]), vecs(obj["basis"]["gammas"]))
        sub = {key: Sublattice.from_json(obj[key]) for key in ("h1", "h2", "v1", "v2")}
        w = obj.get("witness")
        return cls(
            SymplecticSpace.from_json(obj["h"]),
            basis,
            int(obj["k"]),
            Matrix.from_json(obj["beta"]),
            Sublattice.from_json(obj["m"]),
            tuple(Matrix.from_json(a) for a in obj["alphas"]),
            witness=DualityWitness.from_json(w) if w else None,
            construction=dict(obj.get("construction", {})),
            **sub,
        )


def check_unimodular_m(inst: UnimodularMInstance) -> Report:
    rep = Report("unimodular_m")
    hyp, con = rep.hypotheses, rep.conclusions
    h, k, beta, m = inst.h, inst.k, inst.beta, inst.m
    a1, a2 = inst.alphas
    hyp["symplectic-basis"] = len(inst.basis.deltas) >= 2 and inst.basis.is_valid(h)
    if hyp["symplectic-basis"]:
        d = distinguished_sublattices(inst.basis, k)
        hyp["distinguished-sublattices"] = (inst.h1, inst.h2, inst.v1, inst.v2) == (d["h1"], d["h2"], d["v1"], d["v2"])
    else:
        hyp["distinguished-sublattices"] = False
    hyp["beta-positive-det"] = beta.shape == (k, k) and beta.det() > 0
    hyp["alphas-nonsingular"] = all(a.shape == (k, k) and a.det() != 0 for a in (a1, a2))
    full_rank = m.rank == m.ambient_rank
    diag = None
    if hyp["beta-positive-det"] and full_rank:
        try:
            diag = pullback_form(h, beta, m)
        except NotPositiveDefinite:
            diag = None
    hyp["em-integral"] = diag is not None and diag.status != "not-integral"
    hyp["em-unimodular"] = diag is not None and diag.ok
    if diag is not None:
        rep.details["em"] = diag.status
    ok_alphas = hyp["alphas-nonsingular"]
    images = [image_of_full(a, h.rank) for a in (a1, a2)] if ok_alphas else []
    hyp["alpha1-in-M"] = ok_alphas and images[0] <= m
    hyp["alpha2-in-M"] = ok_alphas and images[1] <= m
    for i, (a, hp, v) in enumerate(((a1, inst.h1, inst.v1), (a2, inst.h2, inst.v2)), start=1):
        if not ok_alphas:
            hyp[f"congruence-{i}"] = False
            continue
        hyp[f"congruence-{i}"] = congruent(m & hp, hp.image(a.kron(Matrix.identity(h.rank))), v)

    if ok_alphas:
        gamma = check_images_lemma(a1, a2, h.rank)
        con["gamma-exists"] = gamma is not None
        if gamma is not None:
            rep.details["gamma"] = gamma
    else:
        con["gamma-exists"] = False
    db = beta.det() if beta.is_square() else 0
    con["det-relation"] = ok_alphas and all(a.det() ** 2 == db for a in (a1, a2))
    con["m-equals-image"] = ok_alphas and all(im == m for im in images)
    if full_rank and db > 0:
        idx = index(Sublattice.full(m.ambient_rank), m)
        rep.details["index"] = idx
        rep.details["det_beta_pow_g"] = db ** (h.rank // 2)
        con["index-formula"] = idx == db ** (h.rank // 2)
    else:
        con["index-formula"] = False
    if inst.witness is not None:
        wt = inst.witness
        try:
            rep.details["det-division"] = determinant_division_check(wt.a1, wt.a2, wt.b1, wt.b2, wt.psi, wt.es, wt.fs)
        except HypothesisFailed as exc:
            rep.details["det-division"] = f"hypothesis {exc.hypothesis} fails"
    return rep


def generate_unimodular_m(g: int, k: int, rng: random.Random, twisted: bool = False) -> UnimodularMInstance:
    """``M = α · H^{⊕k}`` with ``β = α α^t``, or ``β = α u α^t`` for ``u ∈ SL_k(Z)`` when twisted.

    Then ``E_M`` has Gram ``u^{-t} ⊗ E`` on ``α · H^{⊕k}``, which is
    unimodular. The symplectic basis is moved by a random symplectic matrix.
    """
    h, _ = standard_space(g)
    s = random_symplectic(rng, g)
    cols = s.columns()
    basis = SymplecticBasis(tuple(cols[:g]), tuple(cols[g:]))
    alpha = random_nonsingular(rng, k)
    u = Matrix.identity(k)
    if twisted:
        u = random_unimodular(rng, k)
        if u.det() < 0:
            u = Matrix([[-x for x in u.row(0)], *u.rows()[1:]], ncols=k)
    beta = alpha @ u @ alpha.T
    gamma = random_unimodular(rng, k) if rng.random() < 0.5 else Matrix.identity(k)
    m = image_of_full(alpha, h.rank)
    # ψ = E^{⊕k} pairs β^{-1} α e_{2i} against α u^t f_{2j} to δ_ij.
    n = h.rank
    es = tuple(tuple(basis.deltas[1][j - c * n] if c * n <= j < (c + 1) * n else 0 for j in range(n * k)) for c in range(k))
    fs = tuple(tuple(basis.gammas[1][j - c * n] if c * n <= j < (c + 1) * n else 0 for j in range(n * k)) for c in range(k))
    witness = DualityWitness(Matrix.identity(k).kron(h.gram), es, fs, alpha, alpha @ u.T, beta, Matrix.identity(k))
    construction = {
        "alpha": alpha.to_json(),
        "u": u.to_json(),
        "gamma": gamma.to_json(),
        "symplectic_change": s.to_json(),
    }
    return UnimodularMInstance.build(h, basis, k, beta, m, (alpha, alpha @ gamma), witness, construction)
