"""Matrix side of polarizations on ``A^k`` with ``End(A) = Z``.

A polarization ``λ_α`` corresponds to a symmetric positive definite
``α ∈ M_k(Z)``; isomorphisms of polarized powers are ``α ↦ γ α γ^t``.
The abelian variety itself is never modelled. Lattices ``M ⊂ H^{⊕k}`` use
copy-major coordinates (see :mod:`intlattice.symplectic`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import DimensionMismatch, HypothesisFailed, NotAPolarization, NotPositiveDefinite
from .linalg import INFINITE, Matrix, RationalMatrix, Sublattice, index
from .quadratic_forms import (
    Decomposition,
    QForm,
    automorphism_order,
    decompose,
    e8_gram,
    is_positive_definite,
    isometry,
)
from .symplectic import SymplecticSpace


@dataclass(frozen=True)
class PolarizationMatrix:
    k: int
    alpha: QForm

    def __post_init__(self):
        if self.alpha.rank != self.k or not is_positive_definite(self.alpha):
            raise NotAPolarization("α must be symmetric positive definite of size k")

    @classmethod
    def of(cls, alpha: Matrix) -> "PolarizationMatrix":
        if not is_polarization(alpha):
            raise NotAPolarization("α is not symmetric positive definite")
        return cls(alpha.nrows, QForm(alpha.nrows, alpha))


def is_polarization(alpha: Matrix) -> bool:
    if not alpha.is_square():
        raise DimensionMismatch("α must be square")
    return alpha.is_symmetric() and is_positive_definite(QForm(alpha.nrows, alpha))


def _as_form(alpha: Matrix) -> QForm:
    if not is_polarization(alpha):
        raise NotAPolarization("α is not symmetric positive definite")
    return QForm(alpha.nrows, alpha)


def is_principal(alpha: Matrix) -> bool:
    return abs(_as_form(alpha).det()) == 1


def equivalent_polarizations(a1: Matrix, a2: Matrix) -> Matrix | None:
    """``γ`` with ``γ a2 γ^t = a1``, if the polarized powers are isomorphic."""
    return isometry(_as_form(a1), _as_form(a2))


def decompose_polarization(alpha: Matrix) -> Decomposition:
    """Indecomposable polarized factors, one block per factor."""
    return decompose(_as_form(alpha))


# -- pulled back symplectic forms -------------------------------------------------


@dataclass(frozen=True)
class PulledBackForm:
    ambient: SymplecticSpace  # H^{⊕k}
    h_rank: int
    beta: Matrix
    m_basis: Sublattice
    gram: Matrix  # E_M on the canonical basis of m

    @property
    def k(self) -> int:
        return self.beta.nrows

    @property
    def genus(self) -> int:
        return self.h_rank // 2


@dataclass(frozen=True)
class PullbackDiagnosis:
    """Outcome of :func:`pullback_form`; ``form`` is set only when ``status == "ok"``."""

    status: str  # "ok", "not-integral" or "not-unimodular"
    gram: RationalMatrix
    determinant: Fraction
    form: PulledBackForm | None = None

    @property
    def ok(self) -> bool:
        return self.form is not None

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "gram": self.gram.to_json(),
            "determinant": str(self.determinant),
        }


def pullback_gram(h: SymplecticSpace, beta: Matrix, basis: Matrix) -> RationalMatrix:
    """``E_M(x, y) = E^{⊕k}(β^{-1} x, y)`` on the columns of ``basis``.

    ``(β^{-1} ⊗ 1)^t (1 ⊗ E) = β^{-t} ⊗ E``.
    """
    k = beta.nrows
    if basis.nrows != h.rank * k:
        raise DimensionMismatch("basis does not live in H^{⊕k}")
    form = beta.inverse().T.kron(h.gram)
    return basis.T @ form @ basis


def pullback_form(h: SymplecticSpace, beta: QForm | Matrix, m: Sublattice) -> PullbackDiagnosis:
    """Evaluate ``E_M`` on ``m`` and report whether it is integral and unimodular."""
    b = beta.gram if isinstance(beta, QForm) else beta
    if not b.is_square():
        raise DimensionMismatch("β must be square")
    k = b.nrows
    if m.ambient_rank != h.rank * k:
        raise DimensionMismatch("m does not live in H^{⊕k}")
    if m.rank != m.ambient_rank:
        raise DimensionMismatch("m must have full rank")
    if b.det() <= 0:
        raise NotPositiveDefinite("β must have positive determinant")
    gram = pullback_gram(h, b, m.basis)
    det = gram.det()
    if not gram.is_integral():
        return PullbackDiagnosis("not-integral", gram, det)
    if abs(det) != 1:
        return PullbackDiagnosis("not-unimodular", gram, det)
    ambient = SymplecticSpace(h.rank * k, Matrix.identity(k).kron(h.gram))
    pb = PulledBackForm(ambient, h.rank, b, m, gram.to_integer())
    return PullbackDiagnosis("ok", gram, det, pb)


@dataclass(frozen=True)
class IndexCheck:
    index: int
    det_beta_pow_g: int
    equal: bool

    def to_json(self) -> dict:
        return {"index": str(self.index), "det_beta_pow_g": str(self.det_beta_pow_g), "equal": self.equal}


def index_formula_check(pb: PulledBackForm) -> IndexCheck:
    """``[H^{⊕k} : M]`` against ``det(β)^g``."""
    full = Sublattice.full(pb.m_basis.ambient_rank)
    idx = index(full, pb.m_basis)
    if idx is INFINITE:
        raise DimensionMismatch("m is not of full rank")
    rhs = pb.beta.det() ** pb.genus
    return IndexCheck(idx, rhs, idx == rhs)


# -- the numerical contradiction in rank 8 ---------------------------------------------


def hurwitz_bound(genus: int) -> int:
    return 84 * (genus - 1)


def weyl_vs_hurwitz() -> dict:
    """Compare ``|Aut(E8)|`` with the Hurwitz bound in genus 8."""
    order = automorphism_order(e8_gram())
    bound = hurwitz_bound(8)
    halved = order // 2
    product = factorial(4) * factorial(6) * factorial(8)
    exceeds = order > bound and halved > bound
    return {
        "weyl_order": str(order),
        "factorial_product": str(product),
        "factorial_product_matches": order == product,
        "genus": "8",
        "hurwitz_bound": str(bound),
        "halved_weyl_order": str(halved),
        "weyl_exceeds_bound": order > bound,
        "halved_exceeds_bound": halved > bound,
        "verdict": "contradiction" if exceeds else "consistent",
    }


# -- determinants from a duality ------------------------------------------------------


def dual_pairing_matrix(
    psi: Matrix, es: Sequence[Sequence[int]], fs: Sequence[Sequence[int]], b1: RationalMatrix, b2: RationalMatrix
) -> RationalMatrix:
    """``(ψ(γ_1 e_i, γ_2 f_j))_ij`` where ``γ e_i = Σ_j γ_ji e_j``."""
    n = psi.nrows
    e = Matrix.from_columns(es, nrows=n)
    f = Matrix.from_columns(fs, nrows=n)
    return (e @ b1).T @ psi @ (f @ b2)


def determinant_division_check(
    a1: Matrix,
    a2: Matrix,
    b1: Matrix,
    b2: Matrix,
    psi: Matrix,
    es: Sequence[Sequence[int]],
    fs: Sequence[Sequence[int]],
) -> bool:
    """``det α_1 det α_2 | det β_1 det β_2`` given ``ψ(β_1^{-1}α_1 e_i, β_2^{-1}α_2 f_j) = δ_ij``.

    Raises :class:`HypothesisFailed` when the duality does not hold.
    """
    k = a1.nrows
    for m in (a1, a2, b1, b2):
        if m.shape != (k, k):
            raise DimensionMismatch("all four matrices must be k × k")
        if m.det() == 0:
            raise HypothesisFailed("nonzero-determinant", "a supplied matrix is singular")
    if len(es) != k or len(fs) != k:
        raise DimensionMismatch("need k vectors e_i and k vectors f_j")
    if not psi.is_square():
        raise DimensionMismatch("ψ must be square")
    pairing = dual_pairing_matrix(psi, es, fs, b1.inverse() @ a1, b2.inverse() @ a2)
    if pairing != RationalMatrix.identity(k):
        raise HypothesisFailed("duality", "ψ(β1^-1 α1 e_i, β2^-1 α2 f_j) is not the identity")
    lhs = a1.det() * a2.det()
    rhs = b1.det() * b2.det()
    return rhs % lhs == 0
