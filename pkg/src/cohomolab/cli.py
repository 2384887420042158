"""Batch command-line driver: every computation behind a subcommand with
deterministic JSON reports (wall-clock timings go to stderr so reruns are
byte-identical), plus scenario files that bundle steps with expected
results.

Exit codes: 0 pass, 1 expectation/certification failure, 2 input error,
3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import importlib.resources
import json
import os
import sys
import time
from fractions import Fraction
from typing import Optional

from . import bar_cohomology as bc
from . import davis as dv
from .char_chern import pc_report
from .cohomology_ring_models import (
    RingAutomorphism,
    build_model,
    fixed_dims as model_fixed_dims,
    named_action,
)
from .groups import build_group
from .invariant_rings import (
    GradedAlgebra,
    MatrixAction,
    dickson_check,
    fixed_subspace,
    held_5_part_check,
)

SCHEMA_VERSION = 1

EXIT_PASS = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3


def _frac(x: Fraction) -> str:
    return str(x)


def _group(arg: str):
    return build_group(json.loads(arg))


# ---------------------------------------------------------------------------
# subcommand handlers (each returns a JSON-ready report dict)
# ---------------------------------------------------------------------------


def _cmd_cohomology(args) -> dict:
    G = _group(args.group)
    if args.action == "dims":
        dims = bc.cohomology_dims_mod_p(G, args.p, args.max_degree,
                                        max_cells=args.max_cells,
                                        cache_dir=args.cache_dir)
        if args.dump_matrix:
            M = bc.coboundary_matrix(G, args.max_degree, args.p)
            with open(args.dump_matrix, "w") as fh:
                fh.write(M.dump())
        return {"group": G.name, "p": args.p,
                "max_degree": args.max_degree, "dims": dims}
    rank, torsion = bc.integral_cohomology(G, args.degree,
                                           max_cells=args.max_cells,
                                           cache_dir=args.cache_dir)
    order = 1
    for d in torsion:
        order *= d
    return {"group": G.name, "degree": args.degree, "rank": rank,
            "torsion": list(torsion), "order": order}


def _cmd_massey(args) -> dict:
    G = _group(args.group)
    basis = bc.class_basis(G, 1, args.p)
    if not basis:
        raise ValueError("the group has no degree-one classes mod p")
    y = basis[0]
    res = bc.massey(y, y, y)
    return {
        "group": G.name,
        "p": args.p,
        "equals_bockstein": res.equals_cochain(bc.bockstein(y)),
        "is_zero": res.is_zero_modulo_indeterminacy(),
        "indeterminacy_size": len(res.indeterminacy),
    }


def _cmd_chern(args) -> dict:
    G = _group(args.group)
    rep = pc_report(G, args.p)
    return {
        "group": G.name,
        "p": args.p,
        "pc": rep.pc,
        "alternative_lcm_2m": rep.alternative_lcm_2m,
        "per_class": [
            {"generators": [r.subgroup.members[1]],
             "m": r.m,
             "exponents": sorted(r.exponent_set)}
            for r in rep.per_class
        ],
    }


def _encode_elements(A: GradedAlgebra, elements) -> list:
    """[[e1, e2, ..., b1, b2, ...], coef] per monomial, sorted."""
    out = []
    for e in elements:
        out.append(sorted([list(exps) + list(bits), c]
                          for (exps, bits), c in e.items()))
    return sorted(out)


def _cmd_invariants(args) -> dict:
    if args.action == "dickson":
        rep = dickson_check(args.p, args.max_degree)
        return {"p": rep.p, "max_degree": rep.max_degree,
                "sl2_fixed_dims": rep.sl2_fixed_dims,
                "sl2_subalgebra_dims": rep.sl2_subalgebra_dims,
                "gl2_fixed_dims": rep.gl2_fixed_dims,
                "gl2_subalgebra_dims": rep.gl2_subalgebra_dims,
                "passed": rep.passed}
    if args.action == "held5":
        rep = held_5_part_check(args.max_degree)
        return {"group_order": rep.group_order,
                "max_degree": rep.max_degree,
                "fixed": rep.fixed, "presented": rep.presented,
                "relation_printed": rep.relation_printed,
                "relation_used": rep.relation_used,
                "passed": rep.passed}
    spec = json.loads(args.action_spec)
    A = GradedAlgebra(args.p, spec["poly_degrees"],
                      spec.get("ext_degrees", []))
    act = MatrixAction(A, [tuple(map(tuple, M)) for M in spec["matrices"]],
                       ext_twists=spec.get("ext_twists"))
    dims = []
    basis = {}
    for d in range(args.max_degree + 1):
        fixed = fixed_subspace(A, act, d)
        dims.append(len(fixed))
        if fixed:
            basis[str(d)] = _encode_elements(A, fixed)
    return {"p": args.p, "max_degree": args.max_degree,
            "group_order": act.group_order(),
            "fixed_dims": dims, "fixed_basis": basis}


def _cmd_ringmodel(args) -> dict:
    model = build_model(args.p)
    if args.action_spec.lstrip().startswith("["):
        autos = [RingAutomorphism.from_matrix(
                     model, tuple(map(tuple, a["matrix"])), a["j"])
                 for a in json.loads(args.action_spec)]
        action_name = "custom"
    else:
        autos = named_action(model, args.action_spec)
        action_name = args.action_spec
    dims = model_fixed_dims(model, autos, args.max_degree)
    return {"p": args.p, "action": action_name,
            "max_degree": args.max_degree, "fixed_dims": dims}


def _load_complex(path: str) -> dv.SimplicialComplex:
    with open(path) as fh:
        return dv.complex_from_dict(json.load(fh))


def _homology_table(K: dv.SimplicialComplex) -> list:
    return [{"rank": h.rank, "torsion": list(h.torsion)}
            for h in dv.homology(K)]


def _cmd_davis(args) -> dict:
    if args.action == "bestvina":
        rep = dv.bestvina_check(args.n)
        return {
            "n": rep.n,
            "quotient_f_vector": list(rep.quotient_f_vector),
            "quotient_homology": [
                {"rank": h.rank, "torsion": list(h.torsion)}
                for h in rep.quotient_homology],
            "h3_cohomology": {"rank": rep.h3_cohomology.rank,
                              "torsion": list(rep.h3_cohomology.torsion)},
            "h0_is_z": rep.h0_is_z,
            "vanishing_above_three": rep.vanishing_above_three,
            "torsion_exponent": rep.torsion_exponent,
            "torsion_divides_n": rep.torsion_divides_n,
            "rank_h3_zero": rep.rank_h3_zero,
            "passed": rep.passed,
        }
    K = _load_complex(args.k)
    if args.action == "homology":
        return {"f_vector": K.f_vector(), "full": K.is_full(),
                "homology": _homology_table(K)}
    if args.action == "chi":
        chis, orb = dv.chiswell_chi(K), dv.orbifold_chi(K)
        return {"n_i": K.f_vector(), "chi_chiswell": _frac(chis),
                "chi_orbifold": _frac(orb), "equal": chis == orb}
    q = dv.davis_quotient(dv.racg_from_complex(K),
                          dv.torsion_free_coloring(K))
    return {
        "n_i": list(q.euler.n_i),
        "k": q.k,
        "quotient_f_vector": q.complex.f_vector(),
        "chi_chiswell": _frac(q.euler.chi_chiswell),
        "chi_orbifold": _frac(q.euler.chi_orbifold),
        "chi_quotient_over_index": _frac(q.euler.chi_quotient_over_index),
        "euler_passed": q.euler.passed,
        "homology": _homology_table(q.complex),
    }


# ---------------------------------------------------------------------------
# scenarios
# ---------------------------------------------------------------------------


def _resolve_scenario(path: str) -> str:
    if os.path.exists(path):
        return path
    bundled = importlib.resources.files("cohomolab") / "scenarios" / path
    if bundled.is_file():
        return str(bundled)
    raise FileNotFoundError(f"no scenario file {path!r}")


def _subset_match(expected, actual) -> bool:
    if isinstance(expected, dict):
        return isinstance(actual, dict) and all(
            k in actual and _subset_match(v, actual[k])
            for k, v in expected.items())
    if isinstance(expected, list):
        return isinstance(actual, list) and len(expected) == len(actual) \
            and all(_subset_match(e, a) for e, a in zip(expected, actual))
    return expected == actual


class BudgetExceeded(RuntimeError):
    pass


def run_scenario(path: str, cache_dir: Optional[str] = None,
                 max_cells: Optional[int] = None) -> dict:
    """Run every step of a scenario file, matching each step's report
    against its expectations.  Raises BudgetExceeded past the declared
    time budget and ValueError on a malformed file."""
    with open(_resolve_scenario(path)) as fh:
        try:
            scenario = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed scenario file: {exc}") from exc
    if not isinstance(scenario, dict) or "steps" not in scenario:
        raise ValueError("scenario must be an object with a 'steps' list")
    budget = scenario.get("budget_seconds")
    start = time.monotonic()
    results = []
    for i, step in enumerate(scenario["steps"]):
        argv = list(step["argv"])
        if cache_dir:
            argv = ["--cache-dir", cache_dir] + argv
        if max_cells is not None:
            argv = ["--max-cells", str(max_cells)] + argv
        entry = {"step": i, "argv": step["argv"],
                 "provenance": step.get("provenance", "derived")}
        try:
            report, _ = _dispatch(argv)
            entry["passed"] = _subset_match(step.get("expect", {}), report)
            entry["report"] = report
        except Exception as exc:  # a failing step must not halt the run
            entry["passed"] = False
            entry["error"] = f"{type(exc).__name__}: {exc}"
        results.append(entry)
        if budget is not None and time.monotonic() - start > budget:
            raise BudgetExceeded(
                f"scenario exceeded its {budget}s budget at step {i}")
    return {"name": scenario.get("name", os.path.basename(path)),
            "steps": results,
            "passed": all(r["passed"] for r in results)}


# ---------------------------------------------------------------------------
# parser and entry point
# ---------------------------------------------------------------------------


class _UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # input errors exit 2 without argparse noise
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    # subparsers inherit _Parser, so bad usage raises instead of exiting
    top = _Parser(
        prog="cohomolab",
        description="exact-arithmetic group-cohomology workbench")
    top.add_argument("--cache-dir", default=os.environ.get("COHOMOLAB_CACHE"))
    top.add_argument("--max-cells", type=int, default=None)
    top.add_argument("--json-out", default=None)
    sub = top.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cohomology")
    ca = c.add_subparsers(dest="action", required=True)
    dims = ca.add_parser("dims")
    dims.add_argument("--group", required=True)
    dims.add_argument("--p", type=int, required=True)
    dims.add_argument("--max-degree", type=int, required=True)
    dims.add_argument("--dump-matrix", default=None)
    integ = ca.add_parser("integral")
    integ.add_argument("--group", required=True)
    integ.add_argument("--degree", type=int, required=True)

    m = sub.add_parser("massey")
    ma = m.add_subparsers(dest="action", required=True)
    tri = ma.add_parser("triple")
    tri.add_argument("--group", required=True)
    tri.add_argument("--p", type=int, required=True)

    ch = sub.add_parser("chern")
    cha = ch.add_subparsers(dest="action", required=True)
    pcp = cha.add_parser("pc")
    pcp.add_argument("--group", required=True)
    pcp.add_argument("--p", type=int, required=True)

    inv = sub.add_parser("invariants")
    inva = inv.add_subparsers(dest="action", required=True)
    dk = inva.add_parser("dickson")
    dk.add_argument("--p", type=int, required=True)
    dk.add_argument("--max-degree", type=int, required=True)
    h5 = inva.add_parser("held5")
    h5.add_argument("--max-degree", type=int, default=120)
    fx = inva.add_parser("fixed")
    fx.add_argument("--p", type=int, required=True)
    fx.add_argument("--action", dest="action_spec", required=True)
    fx.add_argument("--max-degree", type=int, required=True)

    rm = sub.add_parser("ringmodel")
    rma = rm.add_subparsers(dest="action", required=True)
    rfx = rma.add_parser("fixed")
    rfx.add_argument("--p", type=int, required=True)
    rfx.add_argument("--action", dest="action_spec", required=True)
    rfx.add_argument("--max-degree", type=int, required=True)

    dvp = sub.add_parser("davis")
    dva = dvp.add_subparsers(dest="action", required=True)
    for name in ("build", "homology", "chi"):
        pp = dva.add_parser(name)
        pp.add_argument("--k", required=True)
        pp.add_argument("--out", default=None)
    bb = dva.add_parser("bestvina")
    bb.add_argument("--n", type=int, required=True)
    bb.add_argument("--out", default=None)

    sc = sub.add_parser("scenario")
    sca = sc.add_subparsers(dest="action", required=True)
    run = sca.add_parser("run")
    run.add_argument("path")
    return top


_HANDLERS = {
    "cohomology": _cmd_cohomology,
    "massey": _cmd_massey,
    "chern": _cmd_chern,
    "invariants": _cmd_invariants,
    "ringmodel": _cmd_ringmodel,
    "davis": _cmd_davis,
}


def _dispatch(argv: list[str]) -> tuple[dict, Optional[str]]:
    """Parse argv and run the handler; returns (report, json_out path)."""
    args = build_parser().parse_args(argv)
    if args.command == "scenario":
        report = run_scenario(args.path, cache_dir=args.cache_dir,
                              max_cells=args.max_cells)
    else:
        report = _HANDLERS[args.command](args)
    report = {"schema_version": SCHEMA_VERSION,
              "command": args.command, "action": args.action, **report}
    out = args.json_out or getattr(args, "out", None)
    return report, out


def main(argv: Optional[list[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    start = time.monotonic()
    try:
        report, out = _dispatch(argv)
    except (_UsageError, ValueError, KeyError, OSError,
            json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (bc.ResourceLimitError, BudgetExceeded) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ArithmeticError as exc:
        print(f"certification failure: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"elapsed: {time.monotonic() - start:.3f}s", file=sys.stderr)
    if report.get("passed") is False:
        return EXIT_FAILURE
    return EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
