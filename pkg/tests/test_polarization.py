from __future__ import annotations

import random
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from intlattice.errors import DimensionMismatch, HypothesisFailed, NotAPolarization
from intlattice.lemma_engine import generate_instance
from intlattice.linalg import Matrix, Sublattice
from intlattice.polarization import (
    decompose_polarization,
    determinant_division_check,
    equivalent_polarizations,
    hurwitz_bound,
    index_formula_check,
    is_polarization,
    is_principal,
    pullback_form,
    weyl_vs_hurwitz,
)
from intlattice.quadratic_forms import e8_gram
from intlattice.sampling import random_unimodular
from intlattice.symplectic import standard_space


def test_polarization_predicates():
    assert is_polarization(Matrix.identity(3))
    assert not is_polarization(Matrix([[1, 2], [2, 1]]))
    assert is_polarization(Matrix([[2, 1], [1, 1]]))
    assert not is_polarization(Matrix([[1, 1], [0, 1]]))  # not symmetric
    assert is_principal(Matrix.identity(2))
    assert not is_principal(Matrix.diag([1, 2]))
    assert is_principal(Matrix([[2, 1], [1, 1]]))
    with pytest.raises(NotAPolarization):
        is_principal(Matrix([[0, 1], [1, 0]]))


def test_equivalent_polarizations():
    assert equivalent_polarizations(Matrix.identity(2), Matrix.identity(2)) is not None
    rng = random.Random(2)
    gamma = random_unimodular(rng, 2)
    a = gamma @ gamma.T
    w = equivalent_polarizations(a, Matrix.identity(2))
    assert w is not None and w @ w.T == a
    assert equivalent_polarizations(Matrix.identity(8), e8_gram().gram) is None


def test_decompose_polarization():
    assert decompose_polarization(Matrix.identity(3)).ranks == (1, 1, 1)
    assert decompose_polarization(e8_gram().gram).ranks == (8,)
    e8 = e8_gram().gram
    block = Matrix([list(r) + [0] for r in e8.rows()] + [[0] * 8 + [1]])
    assert sorted(decompose_polarization(block).ranks) == [1, 8]


# -- pullback form and index ---------------------------------------------------------


def test_pullback_examples():
    h, _ = standard_space(1)
    m = Sublattice.span(2, [[1, 0], [0, 2]])
    diag = pullback_form(h, Matrix([[2]]), m)
    assert diag.ok and diag.determinant == 1
    assert diag.form.gram[0, 1] in (1, -1)
    check = index_formula_check(diag.form)
    assert (check.index, check.det_beta_pow_g, check.equal) == (2, 2, True)

    ident = pullback_form(h, Matrix.identity(1), Sublattice.full(2))
    assert ident.ok and ident.form.gram == h.gram
    assert index_formula_check(ident.form).equal

    bad = pullback_form(h, Matrix([[2]]), Sublattice.full(2).scaled(2))
    assert not bad.ok and bad.status == "not-unimodular"
    frac = pullback_form(h, Matrix([[2]]), Sublattice.full(2))
    assert frac.status == "not-integral"


def test_index_formula_genus_two():
    h, _ = standard_space(2)
    m = Sublattice.span(4, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 3, 0], [0, 0, 0, 3]])
    diag = pullback_form(h, Matrix([[3]]), m)
    assert diag.ok
    check = index_formula_check(diag.form)
    assert check.index == 9 == check.det_beta_pow_g


def test_pullback_rejects_wrong_shapes():
    h, _ = standard_space(1)
    with pytest.raises(DimensionMismatch):
        pullback_form(h, Matrix.identity(2), Sublattice.full(2))
    with pytest.raises(DimensionMismatch):
        pullback_form(h, Matrix.identity(1), Sublattice.span(2, [[1, 0]]))


@given(st.integers(0, 10**6), st.integers(1, 3), st.integers(1, 3))
def test_index_formula_on_generated_instances(seed, g, k):
    inst = generate_instance("unimodular_m", max(g, 2), k, seed)
    diag = pullback_form(inst.h, inst.beta, inst.m)
    assert diag.ok
    check = index_formula_check(diag.form)
    assert check.equal and check.index == inst.beta.det() ** inst.h.genus


# -- rank-8 numerics ------------------------------------------------------------------


def test_weyl_vs_hurwitz():
    rep = weyl_vs_hurwitz()
    assert rep["weyl_order"] == "696729600"
    assert rep["hurwitz_bound"] == "588"
    assert rep["verdict"] == "contradiction"
    assert int(rep["weyl_order"]) == factorial(4) * factorial(6) * factorial(8)
    assert hurwitz_bound(8) == 84 * 7


# -- determinant relation from a duality ---------------------------------------------


def test_determinant_division_examples():
    one = Matrix.identity(1)
    std = Matrix([[0, 1], [-1, 0]])
    assert determinant_division_check(one, one, one, one, std, [(1, 0)], [(0, 1)])
    two = Matrix([[2]])
    assert determinant_division_check(one, one, two, two, std * 4, [(1, 0)], [(0, 1)])
    with pytest.raises(HypothesisFailed):
        determinant_division_check(one, one, two, two, std, [(1, 0)], [(0, 1)])


@given(st.integers(0, 10**6), st.integers(2, 3), st.integers(1, 3), st.booleans())
def test_determinant_division_on_generated_instances(seed, g, k, twisted):
    from intlattice.lemma_engine.unimodular_m import check_unimodular_m, generate_unimodular_m

    inst = generate_unimodular_m(g, k, random.Random(seed), twisted=twisted)
    rep = check_unimodular_m(inst)
    assert rep.details["det-division"] is True
