"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` (the lines are printed
even without ``-s``).
"""

from __future__ import annotations

import io
import json
import sys
import time
from contextlib import redirect_stdout
from pathlib import Path

import pytest

from generators import orthogonal_cycles, random_isotropic, random_multigraph
from intlattice import cli
from intlattice.lemma_engine import (
    CampaignConfig,
    check_marcucci,
    check_unimodular_m,
    generate_instance,
    marcucci_counterexample,
    run_campaign,
)
from intlattice.linalg import Matrix, RationalMatrix, Sublattice, index, snf
from intlattice.nodal_graphs import boundary_matrix, cycle_basis_lattice, cycle_space, first_betti, is_compact_type, loop_cycle_basis
from intlattice.polarization import weyl_vs_hurwitz
from intlattice.quadratic_forms import QForm, decompose, e8_gram, gl_action, isometry, rational_splitting
from intlattice.sampling import random_unimodular, rng_for
from intlattice.symplectic import (
    MonodromyOperator,
    complete_isotropic,
    invariants_stable_under_powers,
    is_isotropic,
    restricted_determinant,
    standard_space,
    transvection,
)

SEED = 0


@pytest.fixture
def report(capsys):
    """Print one verdict line per criterion, bypassing output capture."""

    def _report(number: int, title: str, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\ncriterion {number:>2} {'PASS' if ok else 'FAIL'}: {title} ({detail})")
        assert ok, detail

    return _report


def test_criterion_01_e8_automorphism_order(report, tmp_path):
    cli.emit_fixtures(tmp_path)
    path = Path(tmp_path) / "e8.json"
    start = time.perf_counter()
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.run(["qform", "aut-order", "--input", str(path)])
    elapsed = time.perf_counter() - start
    out = json.loads(buf.getvalue())
    ok = code == 0 and out == {"order": "696729600"} and elapsed < 120
    report(1, "E8 automorphism order", ok, f"order {out.get('order')}, {elapsed:.1f}s")


def test_criterion_02_weyl_vs_hurwitz(report):
    rep = weyl_vs_hurwitz()
    ok = rep["weyl_order"] == "696729600" and rep["hurwitz_bound"] == "588" and rep["verdict"] == "contradiction"
    report(2, "Weyl order against the Hurwitz bound", ok, f"{rep['weyl_order']} vs {rep['hurwitz_bound']}: {rep['verdict']}")


def test_criterion_03_kneser_desk_check(report):
    start = time.perf_counter()
    bad = []
    for k in range(1, 8):
        ident = QForm(k, Matrix.identity(k))
        for i in range(200):
            rng = rng_for(SEED, "kneser", k, i)
            q = gl_action(random_unimodular(rng, k), ident)
            d = decompose(q)
            gamma = isometry(q, ident)
            if d.ranks != (1,) * k or not d.verify(q) or gamma is None:
                bad.append((k, i))
    e8 = e8_gram()
    e8_ok = decompose(e8).ranks == (8,) and isometry(e8, QForm(8, Matrix.identity(8))) is None
    elapsed = time.perf_counter() - start
    ok = not bad and e8_ok and elapsed < 300
    report(3, "scrambled identities split, E8 does not", ok, f"{1400 - len(bad)}/1400 scrambles, E8 ok={e8_ok}, {elapsed:.1f}s")


def test_criterion_04_counterexample_family(report):
    pairs = [(n, k) for n in range(2, 31) for k in range(2, n + 1) if n % k == 0]
    bad = []
    for n, k in pairs:
        inst = marcucci_counterexample(n, k)
        rep = check_marcucci(inst)
        ng = Sublattice.full(4).scaled(n)
        if not (rep.hypotheses_hold and ng < inst.h_sub and index(inst.h_sub, ng) == k):
            bad.append((n, k))
    report(4, "counterexample family nG ⊊ H with quotient of order k", not bad, f"{len(pairs) - len(bad)}/{len(pairs)} pairs")


def test_criterion_05_improved_statement(report):
    result = run_campaign(CampaignConfig("marcucci_improved", count=500, seed=SEED))
    improved_ok = result.hypotheses_held == 500 and result.conclusions_held == 500
    pairs = [(n, k) for n in range(2, 31) for k in range(2, n + 1) if n % k == 0]
    blocked = [check_marcucci(marcucci_counterexample(n, k), improved=True).failing_hypotheses for n, k in pairs]
    family_ok = all(b == ["(iii) proportional-form"] for b in blocked)
    report(
        5,
        "form condition forces H = nG; counterexamples blocked by it",
        improved_ok and family_ok,
        f"{result.conclusions_held}/500 equal, {sum(b == ['(iii) proportional-form'] for b in blocked)}/{len(pairs)} blocked by (iii)",
    )


def test_criterion_06_four_degenerations_campaign(report):
    start = time.perf_counter()
    result = run_campaign(CampaignConfig("four_degenerations", count=1000, seed=SEED))
    elapsed = time.perf_counter() - start
    ok = result.hypotheses_held == 1000 and result.conclusions_held == 1000 and elapsed < 600
    report(6, "four congruences campaign", ok, f"{result.hypotheses_held} verified, {result.conclusions_held} concluded, {elapsed:.0f}s")


def test_criterion_07_unimodular_m_campaign(report):
    result = run_campaign(CampaignConfig("unimodular_m", count=1000, seed=SEED))
    # spot-check the individual conclusions on a sample of the same instances
    sample_ok = True
    for rec in result.records[:50]:
        inst = generate_instance("unimodular_m", int(rec["g"]), int(rec["k"]), int(rec["seed"]))
        rep = check_unimodular_m(inst)
        alpha = Matrix.from_json(inst.construction["alpha"])
        sample_ok &= (
            rep.conclusions["m-equals-image"]
            and inst.beta.det() == alpha.det() ** 2
            and rep.details["index"] == inst.beta.det() ** inst.h.genus
        )
    ok = result.hypotheses_held == 1000 and result.conclusions_held == 1000 and sample_ok
    report(7, "unimodular M campaign with index cross-check", ok, f"{result.conclusions_held}/1000 concluded")


def test_criterion_08_picard_lefschetz(report):
    bad = 0
    for i in range(500):
        rng = rng_for(SEED, "picard-lefschetz", i)
        g = rng.randint(1, 5)
        h, _ = standard_space(g)
        t = Matrix.identity(2 * g)
        for d in orthogonal_cycles(rng, g, rng.randint(1, g + 1)):
            t = t @ transvection(h, d).matrix ** rng.randint(1, 3)
        op = MonodromyOperator(t)
        ok = op.preserves(h.gram) and all(invariants_stable_under_powers(op, m) for m in (2, 3, 5, 7))
        bad += not ok
    report(8, "monodromy preserves the form, invariants stable under powers", bad == 0, f"{500 - bad}/500 operators")


def test_criterion_09_isotropic_completion(report):
    bad = 0
    for i in range(500):
        rng = rng_for(SEED, "isotropic", i)
        g = rng.randint(1, 5)
        r = rng.randint(1, min(3, g))
        h, _ = standard_space(g)
        u = random_isotropic(rng, g, r)
        c = complete_isotropic(h, u)
        ok = is_isotropic(h, u) and c.rank == r and abs(restricted_determinant(h, u, c)) == 1
        bad += not ok
    report(9, "isotropic completions are unimodular", bad == 0, f"{500 - bad}/500 completions")


def _rank(m: Matrix) -> int:
    d, _, _ = snf(m)
    return sum(1 for i in range(min(d.shape)) if d[i, i])


def test_criterion_10_graph_homology(report):
    bad = 0
    for i in range(500):
        rng = rng_for(SEED, "graphs", i)
        g, o = random_multigraph(rng)
        kernel_rank = g.num_edges - (_rank(boundary_matrix(g, o)) if g.num_edges else 0)
        cycles = loop_cycle_basis(g, o)
        basis_ok = len(cycles) == kernel_rank and (not cycles or index(cycle_space(g, o), cycle_basis_lattice(g, o)) == 1)
        tree = g.is_connected() and g.num_edges == g.num_vertices - 1
        ok = first_betti(g) == kernel_rank and basis_ok and is_compact_type(g) == tree
        bad += not ok
    report(10, "Betti numbers, integral cycle bases, compact type", bad == 0, f"{500 - bad}/500 graphs")


def test_criterion_11_rational_splitting(report):
    q = e8_gram()
    gamma = rational_splitting(q, 16)
    ok = gamma is not None and gamma @ q.gram.to_rational() @ gamma.T == RationalMatrix.identity(8)
    detail = f"max denominator {gamma.max_denominator()}" if gamma is not None else "not found"
    report(11, "rational splitting of E8", ok, detail)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
