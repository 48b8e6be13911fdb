"""JSON command-line interface.

Every subcommand reads one JSON document (``--input`` file, default standard
input) and prints one JSON document. Exit status: 0 success, 1 a predicate
came out false or a searched-for object does not exist, 2 malformed input.
Diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable

from . import lemma_engine as le
from . import nodal_graphs as ng
from . import polarization as pol
from . import symplectic as sp
from .errors import LatticeError
from .linalg import INFINITE, Matrix, Sublattice, hnf, index, is_saturated, saturation, snf
from .quadratic_forms import (
    QForm,
    automorphism_order,
    decompose,
    e8_fixture_json,
    isometry,
    rational_splitting,
    short_vectors,
)

OK, FALSE, MALFORMED = 0, 1, 2


class Malformed(Exception):
    pass


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# -- input helpers ------------------------------------------------------------------


def _read(args) -> Any:
    src = getattr(args, "input", "-")
    try:
        text = sys.stdin.read() if src in (None, "-") else Path(src).read_text()
    except OSError as exc:
        raise Malformed(f"cannot read input: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise Malformed(f"input is not JSON: {exc}") from exc


def _matrix(obj) -> Matrix:
    if isinstance(obj, dict) and "entries" in obj:
        return Matrix.from_json(obj)
    if isinstance(obj, dict) and "gram" in obj:
        return _matrix(obj["gram"])
    if isinstance(obj, list):
        rows = [[int(x) for x in r] for r in obj]
        return Matrix(rows, ncols=len(rows[0]) if rows else 0)
    raise Malformed("expected a matrix")


def _sublattice(obj) -> Sublattice:
    if isinstance(obj, dict) and "ambient_rank" in obj:
        return Sublattice.from_json(obj)
    m = _matrix(obj)
    return Sublattice.span(m.nrows, m)


def _vector(obj) -> list[int]:
    return [int(x) for x in obj]


def _form(obj) -> QForm:
    m = _matrix(obj)
    return QForm(m.nrows, m)


def _space(obj: dict) -> sp.SymplecticSpace:
    if "space" in obj:
        return sp.SymplecticSpace.from_json(obj["space"])
    if "genus" in obj:
        return sp.standard_space(int(obj["genus"]))[0]
    raise Malformed("need 'space' or 'genus'")


def _vec_json(v) -> list[str]:
    return [str(x) for x in v]


# -- linalg ----------------------------------------------------------------------


def linalg_hnf(args):
    h, u = hnf(_matrix(_read(args)))
    return {"h": h.to_json(), "u": u.to_json()}, OK


def linalg_snf(args):
    d, u, v = snf(_matrix(_read(args)))
    return {"d": d.to_json(), "u": u.to_json(), "v": v.to_json()}, OK


def linalg_saturate(args):
    s = _sublattice(_read(args))
    return {"saturation": saturation(s).to_json(), "is_saturated": is_saturated(s)}, OK


def linalg_index(args):
    obj = _read(args)
    outer, inner = _sublattice(obj["outer"]), _sublattice(obj["inner"])
    idx = index(outer, inner)
    return {"index": "infinite" if idx is INFINITE else str(idx)}, OK


# -- symplectic -------------------------------------------------------------------


def symplectic_complete(args):
    obj = _read(args)
    space, u = _space(obj), _sublattice(obj["sublattice"])
    xs = sp.isotropic_completion_basis(space, u)
    det = sp.restricted_determinant(space, u, Sublattice.span(space.rank, xs)) if xs else 1
    return {"completion": [_vec_json(x) for x in xs], "restricted_determinant": str(det)}, OK


def _operator(obj) -> sp.MonodromyOperator:
    if "operator" in obj:
        return sp.MonodromyOperator(_matrix(obj["operator"]))
    space = _space(obj)
    cycles = obj.get("cycles") or [obj["delta"]]
    return sp.monodromy_from_cycles(space, [_vector(c) for c in cycles])


def symplectic_transvection(args):
    obj = _read(args)
    space = _space(obj)
    op = _operator(obj)
    out = {"operator": op.to_json(), "preserves_form": op.preserves(space.gram)}
    if "vector" in obj:
        out["image"] = _vec_json(op(_vector(obj["vector"])))
    return out, OK


def symplectic_invariants(args):
    op = _operator(_read(args))
    return {"invariants": sp.invariants(op).to_json()}, OK


def symplectic_power_check(args):
    obj = _read(args)
    op = _operator(obj)
    powers = [int(m) for m in obj.get("powers", [2, 3, 5, 7])]
    stable = {str(m): sp.invariants_stable_under_powers(op, m) for m in powers}
    return {"stable": stable}, OK if all(stable.values()) else FALSE


# -- quadratic forms -------------------------------------------------------------


def qform_decompose(args):
    return decompose(_form(_read(args))).to_json(), OK


def qform_isometry(args):
    obj = _read(args)
    gamma = isometry(_form(obj["a"]), _form(obj["b"]))
    if gamma is None:
        return {"isometric": False}, FALSE
    return {"isometric": True, "gamma": gamma.to_json()}, OK


def qform_aut_order(args):
    return {"order": str(automorphism_order(_form(_read(args))))}, OK


def qform_short_vectors(args):
    vs = short_vectors(_form(_read(args)), args.bound)
    return {
        "count": str(len(vs)),
        "vectors": [{"vector": _vec_json(v), "norm": str(n)} for v, n in vs],
    }, OK


def qform_rational_split(args):
    gamma = rational_splitting(_form(_read(args)), args.bound)
    if gamma is None:
        return {"found": False}, FALSE
    return {"found": True, "gamma": gamma.to_json(), "denominator": str(gamma.max_denominator())}, OK


# -- polarization ----------------------------------------------------------------


def polarization_check(args):
    a = _matrix(_read(args))
    if not pol.is_polarization(a):
        return {"polarization": False, "principal": False}, FALSE
    return {"polarization": True, "principal": pol.is_principal(a)}, OK


def polarization_decompose(args):
    return pol.decompose_polarization(_matrix(_read(args))).to_json(), OK


def polarization_pullback(args):
    obj = _read(args)
    space = _space(obj)
    diag = pol.pullback_form(space, _matrix(obj["beta"]), _sublattice(obj["m"]))
    out = diag.to_json()
    if diag.ok:
        out["index_check"] = pol.index_formula_check(diag.form).to_json()
    return out, OK if diag.ok else FALSE


def polarization_weyl(args):
    return pol.weyl_vs_hurwitz(), OK


# -- lemmas ----------------------------------------------------------------------


def lemma_check(args):
    obj = _read(args)
    if not isinstance(obj, dict):
        raise Malformed("instance must be a JSON object")
    kind = obj.get("kind")
    if args.kind and args.kind != kind and not (args.kind == "marcucci_improved" and kind == "marcucci"):
        raise Malformed(f"instance kind {kind!r} does not match --kind {args.kind!r}")
    inst = le.load_instance(obj)
    rep = le.check_instance(inst, improved=args.kind != "marcucci")
    out = rep.to_json()
    out["sound"] = rep.sound
    return out, OK if rep.sound else FALSE


def lemma_campaign(args):
    cfg = le.CampaignConfig(args.kind, count=args.count, seed=args.seed)
    res = le.run_campaign(cfg)
    out = res.summary()
    out["records"] = res.records
    return out, OK if res.sound else FALSE


def lemma_counterexample(args):
    inst = le.marcucci_counterexample(args.n, args.k)
    rep = le.check_marcucci(inst, improved=True)
    return {
        "instance": inst.to_json(),
        "report": rep.to_json(),
        "quotient_order": str(rep.details["quotient_order"]),
        "blocking": rep.failing_hypotheses,
    }, OK


# -- graphs ------------------------------------------------------------------------


def _graph(obj) -> tuple[ng.DualGraph, ng.Orientation]:
    g = ng.DualGraph.from_json(obj.get("graph", obj))
    o = ng.Orientation.from_json(obj["orientation"]) if "orientation" in obj else ng.canonical_orientation(g)
    return g, o.for_graph(g)


def graph_betti(args):
    g, _ = _graph(_read(args))
    return {"betti": str(ng.first_betti(g))}, OK


def graph_compact_type(args):
    g, _ = _graph(_read(args))
    ok = ng.is_compact_type(g)
    return {"compact_type": ok}, OK if ok else FALSE


def graph_cycle_basis(args):
    g, o = _graph(_read(args))
    return {"cycles": [c.to_json() for c in ng.loop_cycle_basis(g, o)], "orientation": o.to_json()}, OK


def graph_extension_class(args):
    obj = _read(args)
    g, o = _graph(obj)
    if "cycle" in obj:
        classes = [ng.extension_class(g, o, _vector(obj["cycle"]))]
    else:
        classes = [ng.extension_class(g, o, c) for c in ng.loop_cycle_basis(g, o)]
    return {"classes": [c.to_json() for c in classes]}, OK


# -- fixtures ----------------------------------------------------------------------

FIXTURE_MARCUCCI = ((4, 2), (6, 2), (6, 3), (9, 3))
FIXTURE_LEMMAS = (
    ("four_degenerations", 4, 2, 7),
    ("unimodular_m", 2, 1, 1),
    ("preliminary_three", 3, 2, 0),
    ("marcucci_improved", 2, 2, 0),
)


def fixture_documents() -> dict[str, Any]:
    docs: dict[str, Any] = {"e8.json": e8_fixture_json()}
    for g in range(1, 6):
        space, basis = sp.standard_space(g)
        docs[f"symplectic_g{g}.json"] = {
            "space": space.to_json(),
            "deltas": [_vec_json(v) for v in basis.deltas],
            "gammas": [_vec_json(v) for v in basis.gammas],
        }
    for n, k in FIXTURE_MARCUCCI:
        docs[f"marcucci_n{n}_k{k}.json"] = le.marcucci_counterexample(n, k).to_json()
    for kind, g, k, seed in FIXTURE_LEMMAS:
        inst = le.generate_instance(kind, g, k, seed)
        if not le.check_instance(inst).conclusion_holds:
            raise AssertionError(f"fixture for {kind} fails its checker")
        docs[f"lemma_{kind}.json"] = inst.to_json()
    return docs


def emit_fixtures(directory: str | Path) -> list[Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, doc in sorted(fixture_documents().items()):
        path = out / name
        path.write_text(dumps(doc))
        written.append(path)
    return written


def fixtures_emit(args):
    paths = emit_fixtures(args.dir)
    return {"written": [p.name for p in paths], "directory": str(args.dir)}, OK


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="intlattice", description=__doc__.splitlines()[0])
    top = p.add_subparsers(dest="group", required=True)

    def group(name: str, help: str):
        sub = top.add_parser(name, help=help).add_subparsers(dest="command", required=True)
        return sub

    def cmd(sub, name: str, fn: Callable, help: str, reads: bool = True):
        c = sub.add_parser(name, help=help)
        if reads:
            c.add_argument("--input", "-i", default="-", help="JSON file (default: standard input)")
        c.set_defaults(fn=fn)
        return c

    g = group("linalg", "normal forms and sublattices")
    cmd(g, "hnf", linalg_hnf, "column Hermite normal form")
    cmd(g, "snf", linalg_snf, "Smith normal form")
    cmd(g, "saturate", linalg_saturate, "saturation of a sublattice")
    cmd(g, "index", linalg_index, "index of inner in outer")

    g = group("symplectic", "symplectic lattices and monodromy")
    cmd(g, "complete-isotropic", symplectic_complete, "complete a saturated isotropic sublattice")
    cmd(g, "transvection", symplectic_transvection, "Picard-Lefschetz operator of cycles")
    cmd(g, "invariants", symplectic_invariants, "invariant sublattice of an operator")
    cmd(g, "power-check", symplectic_power_check, "invariants of powers agree")

    g = group("qform", "positive definite quadratic forms")
    cmd(g, "decompose", qform_decompose, "orthogonal decomposition into indecomposables")
    cmd(g, "isometry", qform_isometry, "isometry between two forms")
    cmd(g, "aut-order", qform_aut_order, "order of the automorphism group")
    c = cmd(g, "short-vectors", qform_short_vectors, "vectors of norm at most the bound")
    c.add_argument("--bound", type=int, required=True)
    c = cmd(g, "rational-split", qform_rational_split, "rational γ with γ G γ^t = I")
    c.add_argument("--bound", type=int, default=16, help="largest denominator to try")

    g = group("polarization", "polarizations on powers")
    cmd(g, "check", polarization_check, "symmetric positive definite test")
    cmd(g, "decompose", polarization_decompose, "indecomposable polarized factors")
    cmd(g, "pullback", polarization_pullback, "pulled back symplectic form on a sublattice")
    cmd(g, "weyl-vs-hurwitz", polarization_weyl, "compare |W(E8)| with the Hurwitz bound", reads=False)

    g = group("lemma", "lemma instances and campaigns")
    c = cmd(g, "check", lemma_check, "check an instance file")
    c.add_argument("--kind", choices=le.KINDS + ("marcucci",))
    c.add_argument("--instance", dest="input", default="-", help="instance JSON file")
    c = cmd(g, "campaign", lemma_campaign, "seeded soundness campaign", reads=False)
    c.add_argument("--kind", choices=le.KINDS, required=True)
    c.add_argument("--count", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c = cmd(g, "counterexample", lemma_counterexample, "the (n, k) counterexample family", reads=False)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)

    g = group("graph", "dual graphs of nodal curves")
    cmd(g, "betti", graph_betti, "first Betti number")
    cmd(g, "compact-type", graph_compact_type, "is the graph a tree")
    cmd(g, "cycle-basis", graph_cycle_basis, "fundamental cycle basis")
    cmd(g, "extension-class", graph_extension_class, "formal extension class of cycles")

    g = group("fixtures", "reference data")
    c = cmd(g, "emit", fixtures_emit, "write fixture files", reads=False)
    c.add_argument("--dir", default="fixtures")
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already wrote usage to stderr
        code = exc.code if isinstance(exc.code, int) else MALFORMED
        return OK if code == 0 else MALFORMED
    try:
        result, status = args.fn(args)
    except (Malformed, LatticeError, KeyError, TypeError, ValueError, IndexError) as exc:
        kind = type(exc).__name__
        msg = str(exc) if not isinstance(exc, KeyError) else f"missing field {exc}"
        print(f"error: {kind}: {msg}", file=sys.stderr)
        sys.stdout.write(dumps({"error": kind, "message": msg}))
        return MALFORMED
    sys.stdout.write(dumps(result))
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
