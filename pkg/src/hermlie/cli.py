"""Command-line interface.

Subcommands: ``check`` (structure checks), ``curvature`` (torsion,
curvature, H summary, constant-H test), ``verify`` (the theorem pipeline),
``catalog`` (emit a named example), ``scramble`` (seeded invariance
transform).  Exit codes: 0 all checks passed / verdict computed, 2 parse or
validation failure, 3 constant-H-without-flatness candidate (the instance
is dumped with the report).

The global tolerance default may be set through the HERMLIE_TOL environment
variable and overridden per call with --tol.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .admissible import verify_theorem
from .catalog import (
    CatalogParams,
    heisenberg_example,
    kodaira_thurston,
    pure_typeII_instance,
    random_scramble,
    six_dim_constraints,
    six_dim_instance,
)
from .checks import (
    adjoint_trace_defect,
    bianchi_defect,
    classify_pure_type,
    jacobi_defect,
    nijenhuis_defect,
    series_report,
    unimodular_defect,
)
from .chern import chern_curvature, chern_torsion, constant_H_test, holomorphic_sectional
from .errors import HermlieError, JacobiViolation, ParseError, TheoremViolationCandidate, ValidationError
from .io import (
    emit_algebra,
    emit_report,
    instance_payload,
    parse_algebra,
    presentation_payload,
)
from .utils import DEFAULT_TOL


def _default_tol() -> float:
    env = os.environ.get("HERMLIE_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            raise ValidationError(f"HERMLIE_TOL={env!r} is not a number", "HERMLIE_TOL") from None
    return DEFAULT_TOL


def _emit(args, results: dict, payload=None, human: str = ""):
    if args.json:
        sys.stdout.write(emit_report(results, payload, tolerance=args.tol, seed=args.seed))
    else:
        sys.stdout.write(human if human.endswith("\n") else human + "\n")


def _cmd_check(args) -> int:
    doc = parse_algebra(args.file)
    tol = args.tol
    results: dict = {"checks": {}}
    lines = []
    alg, h, frame = doc.instance()
    checks = results["checks"]
    checks["jacobi"] = jacobi_defect(alg)
    checks["nijenhuis"] = nijenhuis_defect(alg, h)
    checks["adjoint_trace"] = adjoint_trace_defect(alg)
    pres = doc.as_presentation() if doc.kind == "complex" else None
    if pres is None:
        from .core import complexify

        pres = complexify(alg, h, frame, tol=max(tol, 1e-8))
    b1, b2, b3 = bianchi_defect(pres)
    checks["bianchi"] = [b1, b2, b3]
    checks["unimodular"] = unimodular_defect(pres)
    structural_ok = max(checks["jacobi"], checks["nijenhuis"], b1, b2, b3) <= tol
    if structural_ok:
        series = series_report(alg, max(tol, 1e-8))
        results["series"] = {
            "derived": series.derived_series,
            "lower_central": series.lower_central_series,
            "is_solvable": series.is_solvable,
            "is_nilpotent": series.is_nilpotent,
        }
        ptype = classify_pure_type(alg, h, max(tol, 1e-8))
        results["pure_type"] = {
            "types": sorted(ptype.types),
            "commutator_is_complex": ptype.commutator_is_complex,
            "dim_intersection": ptype.dim_intersection,
            "dim_V": ptype.dim_V,
            "dim_W": ptype.dim_W,
            "degenerate": ptype.degenerate,
        }
    results["passed"] = structural_ok
    lines.append(f"jacobi defect          {checks['jacobi']:.3g}")
    lines.append(f"nijenhuis defect       {checks['nijenhuis']:.3g}")
    lines.append(f"bianchi defects        {b1:.3g} {b2:.3g} {b3:.3g}")
    lines.append(f"unimodular defect      {checks['unimodular']:.3g}")
    lines.append(f"adjoint trace defect   {checks['adjoint_trace']:.3g}")
    if structural_ok:
        lines.append(f"series                 derived {results['series']['derived']}, "
                     f"lower central {results['series']['lower_central']}")
        lines.append(f"pure types             {results['pure_type']['types']} "
                     f"(commutator complex: {results['pure_type']['commutator_is_complex']})")
    lines.append("PASS" if structural_ok else "FAIL")
    _emit(args, results, doc.payload, "\n".join(lines))
    return 0 if structural_ok else 2


def _cmd_curvature(args) -> int:
    doc = parse_algebra(args.file)
    pres = doc.as_presentation()
    T = chern_torsion(pres)
    R = chern_curvature(pres)
    const, c = constant_H_test(R, args.tol)
    n = pres.n
    h_diag = [holomorphic_sectional(R, np.eye(n, dtype=complex)[i]) for i in range(n)]
    rng = np.random.default_rng(args.seed or 0)
    samples = []
    for _ in range(256):
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        samples.append(holomorphic_sectional(R, v))
    results = {
        "torsion_max": float(np.max(np.abs(T.T))) if T.T.size else 0.0,
        "curvature_max": float(np.max(np.abs(R.R))) if R.R.size else 0.0,
        "H_coordinate_directions": h_diag,
        "H_sample_min": min(samples) if samples else 0.0,
        "H_sample_max": max(samples) if samples else 0.0,
        "constant_H": bool(const),
        "c": c,
    }
    human = [
        f"max |T|              {results['torsion_max']:.6g}",
        f"max |R|              {results['curvature_max']:.6g}",
        f"H at e_i             {[f'{x:.6g}' for x in h_diag]}",
        f"H sampled range      [{results['H_sample_min']:.6g}, {results['H_sample_max']:.6g}]",
        f"constant H           {const} (c = {c:.6g})",
    ]
    _emit(args, results, doc.payload, "\n".join(human))
    return 0


def _cmd_verify(args) -> int:
    doc = parse_algebra(args.file)
    alg, h, _ = doc.instance()
    try:
        verdict = verify_theorem(alg, h, seed=args.seed or 0, tol_flat=args.tol)
    except TheoremViolationCandidate as e:
        results = {
            "verdict": "theorem_violation_candidate",
            "message": str(e),
            "diagnostics": e.diagnostics,
        }
        _emit(args, results, e.instance, f"THEOREM VIOLATION CANDIDATE: {e}\n"
              + emit_algebra(e.instance))
        return 3
    results = {
        "verdict": verdict.status,
        "reason": verdict.reason,
        "residuals": verdict.residuals,
        "c": verdict.c,
        "max_abs_R": verdict.max_abs_R,
        "r": verdict.r,
        "h_spread": verdict.h_spread,
    }
    if verdict.witnesses:
        results["witnesses"] = [
            {"direction": w, "H": hv} for (w, hv) in verdict.witnesses
        ]
    human = [f"verdict: {verdict.status}"]
    if verdict.reason:
        human.append(f"reason:  {verdict.reason}")
    if verdict.status == "constant_H_chern_flat":
        human.append(f"c = {verdict.c:.3g}, max|R| = {verdict.max_abs_R:.3g}, r = {verdict.r}")
    if verdict.status == "non_constant_H":
        human.append(f"H spread {verdict.h_spread:.6g} across witnesses "
                     f"{[f'{hv:.6g}' for _, hv in verdict.witnesses]}")
    _emit(args, results, doc.payload, "\n".join(human))
    return 0


def _params(args) -> dict:
    if not args.params:
        return {}
    try:
        return json.loads(args.params)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, location="--params") from None


def _cmd_catalog(args) -> int:
    name = args.name
    params = _params(args)

    def as_complex_list(values):
        return [complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v) for v in values]

    if name == "kodaira_thurston":
        alg, h, _ = kodaira_thurston()
        payload = instance_payload(alg, h, name)
    elif name == "heisenberg":
        if "lambda" in params:
            lam = as_complex_list(params["lambda"])
        else:
            lam = CatalogParams.random("heisenberg", args.seed or 0, r=int(params.get("r", 2))).lam
        alg, h, _ = heisenberg_example(lam)
        payload = instance_payload(alg, h, name)
    elif name == "pure_type2":
        r, n = int(params.get("r", 2)), int(params.get("n", 3))
        if all(k in params for k in "xyuv"):
            xyuv = tuple(np.asarray(params[k], dtype=float) for k in "xyuv")
        else:
            xyuv = CatalogParams.random("pure_type2", args.seed or 0, r=r, n=n).xyuv
        alg, h, _ = pure_typeII_instance(*xyuv, r, n)
        payload = instance_payload(alg, h, name)
    elif name == "complex_lie":
        from .catalog import complex_lie_instance
        from .core import realify

        n = int(params.get("n", 3))
        C = np.zeros((n, n, n), dtype=complex)
        for j, i, k, re, im in params.get("C", [[3, 1, 2, 1.0, 0.0]]):
            C[j - 1, i - 1, k - 1] += complex(re, im)
            C[j - 1, k - 1, i - 1] -= complex(re, im)
        alg, h, _ = realify(complex_lie_instance(C, n))
        payload = instance_payload(alg, h, name)
    elif name == "six_dim":
        yz = params.get("YZ", [[0.0, 2.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]])
        y1, z1, y2, z2 = as_complex_list(yz)
        report = six_dim_constraints(y1, z1, y2, z2)
        if not report.passes:
            results = {
                "accepted": False,
                "defect": report.defect,
                "violated_triples": report.violated_triples,
                "constraints": report.constraints,
                "note": report.note,
            }
            _emit(args, results, None,
                  "six_dim rejected by the closure gate:\n  "
                  + "\n  ".join(f"{t}: residual {r:.3g}" for t, r in report.violated_triples)
                  + f"\nnote: {report.note}")
            return 2
        alg, h, _ = six_dim_instance(y1, z1, y2, z2)
        payload = instance_payload(alg, h, name)
        payload["note"] = report.note
    else:
        raise ValidationError(f"unknown catalog entry {name!r}", "name")
    sys.stdout.write(emit_algebra(payload))
    return 0


def _cmd_scramble(args) -> int:
    doc = parse_algebra(args.file)
    instance = doc.instance()
    scrambled = random_scramble(instance, args.seed or 0, basis_change=args.basis_change)
    alg, h, frame = scrambled
    from .core import complexify

    pres = complexify(alg, h, frame, tol=1e-8)
    payload = presentation_payload(pres, name=(doc.name + "-scrambled").lstrip("-"))
    sys.stdout.write(emit_algebra(payload))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hermlie",
        description="Chern-connection invariants of left-invariant Hermitian structures",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_file=True):
        if needs_file:
            p.add_argument("file", help="algebra document (JSON)")
        p.add_argument("--tol", type=float, default=None, help="absolute tolerance")
        p.add_argument("--seed", type=int, default=None, help="seed for randomized steps")
        p.add_argument("--json", action="store_true", help="emit a machine-readable report")

    p = sub.add_parser("check", help="structure checks (Jacobi, integrability, Bianchi, ...)")
    common(p)
    p.set_defaults(func=_cmd_check)
    p = sub.add_parser("curvature", help="torsion, curvature, H summary, constant-H test")
    common(p)
    p.set_defaults(func=_cmd_curvature)
    p = sub.add_parser("verify", help="run the constant-H implies Chern-flat pipeline")
    common(p)
    p.set_defaults(func=_cmd_verify)
    p = sub.add_parser("catalog", help="emit a named example instance")
    p.add_argument("name", help="kodaira_thurston | heisenberg | pure_type2 | complex_lie | six_dim")
    p.add_argument("--params", help="family parameters as JSON")
    common(p, needs_file=False)
    p.set_defaults(func=_cmd_catalog)
    p = sub.add_parser("scramble", help="seeded random unitary frame change")
    common(p)
    p.add_argument("--basis-change", action="store_true",
                   help="also apply a random J-commuting orthogonal basis change")
    p.set_defaults(func=_cmd_scramble)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.tol is None:
        try:
            args.tol = _default_tol()
        except ValidationError as e:
            sys.stderr.write(f"error: {e}\n")
            return 2
    try:
        return args.func(args)
    except (ParseError, ValidationError, JacobiViolation) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except HermlieError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
