"""The preliminary module lemmas: images of matrices, saturated embeddings, sandwiches."""

from __future__ import annotations

from ..errors import DimensionMismatch, HypothesisFailed, NotSaturated, SingularMatrix
from ..linalg import Matrix, Sublattice, direct_sum_power, is_saturated
from .report import Report


def power(s: Sublattice, k: int) -> Sublattice:
    return direct_sum_power(s, k)


def act(alpha: Matrix, s: Sublattice, k: int) -> Sublattice:
    """``α · s^{⊕k}`` for ``s ⊂ Z^r``."""
    return power(s, k).image(alpha.kron(Matrix.identity(s.ambient_rank)))


def image_of_full(alpha: Matrix, r: int) -> Sublattice:
    """``α · (Z^r)^{⊕k}``."""
    return Sublattice.span(r * alpha.nrows, alpha.kron(Matrix.identity(r)))


def congruent(a: Sublattice, b: Sublattice, v: Sublattice) -> bool:
    """``a ≡ b mod v``, read as ``a + v = b + v``."""
    return a + v == b + v


def quotient_gamma(a1: Matrix, a2: Matrix) -> Matrix | None:
    """``α_1^{-1} α_2`` when it lies in ``GL_k(Z)``."""
    g = a1.inverse() @ a2
    if not g.is_integral():
        return None
    g = g.to_integer()
    return g if g.is_unimodular() else None


def check_images_lemma(a1: Matrix, a2: Matrix, rank: int) -> Matrix | None:
    """Unimodular ``γ`` with ``a2 = a1 γ`` iff ``α_1 Λ^n = α_2 Λ^n`` for ``Λ = Z^rank``."""
    if a1.shape != a2.shape or not a1.is_square():
        raise DimensionMismatch("α_1 and α_2 must be square of equal size")
    if a1.det() == 0 or a2.det() == 0:
        raise SingularMatrix("both matrices need nonzero determinant")
    if rank < 1:
        raise DimensionMismatch("Λ must have positive rank")
    same = image_of_full(a1, rank) == image_of_full(a2, rank)
    gamma = quotient_gamma(a1, a2)
    if same != (gamma is not None):
        raise AssertionError("lattice image equality disagrees with integrality of α_1^{-1} α_2")
    return gamma


def check_saturated_embedding(n_sub: Sublattice, ambient_rank: int, k: int, alpha: Matrix) -> bool:
    """``N^{⊕k} ∩ α·M^{⊕k} = α·N^{⊕k}`` with ``M = Z^ambient_rank``."""
    if n_sub.ambient_rank != ambient_rank:
        raise DimensionMismatch("N does not live in M")
    if not is_saturated(n_sub):
        raise NotSaturated("N must be saturated")
    if alpha.shape != (k, k):
        raise DimensionMismatch("α must be k × k")
    if alpha.det() == 0:
        raise SingularMatrix("α needs nonzero determinant")
    lhs = power(n_sub, k) & image_of_full(alpha, ambient_rank)
    return lhs == act(alpha, n_sub, k)


def check_basic_lemma(m1: Sublattice, m2: Sublattice, n: Sublattice) -> Report:
    """``M_1 ⊆ M_2``, ``M_1 + N = M_2 + N``, ``M_1 ∩ N = M_2 ∩ N`` ⟹ ``M_1 = M_2``."""
    rep = Report("basic")
    rep.hypotheses["m1-in-m2"] = m1 <= m2
    rep.hypotheses["sums-equal"] = m1 + n == m2 + n
    rep.hypotheses["intersections-equal"] = (m1 & n) == (m2 & n)
    rep.conclusions["equal"] = m1 == m2
    return rep


def check_preliminary_three(
    h_rank: int,
    w: Sublattice,
    v1: Sublattice,
    v2: Sublattice,
    m: Sublattice,
    a1: Matrix,
    a2: Matrix,
) -> Report:
    """Two congruences modulo ``V_i^{⊕k}`` force ``M ∩ W^{⊕k} = α_i W^{⊕k}``.

    Hypotheses are checked in order and the first failure is raised as
    :class:`HypothesisFailed`. ``V_1 ⊕ V_2`` being saturated is checked
    explicitly because the argument relies on it.
    """
    k = a1.nrows
    for s in (w, v1, v2):
        if s.ambient_rank != h_rank:
            raise DimensionMismatch("W and V_i must live in H")
    if m.ambient_rank != h_rank * k or a2.shape != (k, k):
        raise DimensionMismatch("M must live in H^{⊕k} and α_i must be k × k")
    rep = Report("preliminary_three")
    vsum = v1 + v2
    checks = [
        ("v-saturated", lambda: is_saturated(v1) and is_saturated(v2)),
        ("v-disjoint", lambda: (v1 & v2).is_zero()),
        ("v-in-w", lambda: v1 <= w and v2 <= w),
        ("strict-containment", lambda: vsum != w),
        ("sum-saturated", lambda: is_saturated(vsum)),
        ("nonzero-determinant", lambda: a1.det() != 0 and a2.det() != 0),
    ]
    for name, fn in checks:
        ok = fn()
        rep.hypotheses[name] = ok
        if not ok:
            raise HypothesisFailed(name)
    wk = power(w, k)
    mw = m & wk
    images = [act(a, w, k) for a in (a1, a2)]
    for i, (a, v) in enumerate(((a1, v1), (a2, v2)), start=1):
        ok = congruent(mw, images[i - 1], power(v, k))
        rep.hypotheses[f"congruence-{i}"] = ok
        if not ok:
            raise HypothesisFailed(f"congruence-{i}")
    gamma = quotient_gamma(a1, a2)
    rep.conclusions["gamma-exists"] = gamma is not None
    rep.conclusions["m-cap-w-equals-image"] = mw == images[0] == images[1]
    if gamma is not None:
        rep.details["gamma"] = gamma
    return rep
