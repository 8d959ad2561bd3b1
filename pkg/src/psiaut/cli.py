"""Command-line front end.

    psiaut <command> [--psi FILE] [--phi FILE] [--format json|text] ...

Commands: decide, group, classify, verify, mult, selftest.  JSON output is
canonical (sorted keys, floats at 15 significant digits, infinities as the
string "inf") so identical inputs give byte-identical output.

Exit codes: 0 success / accepted / agreement, 1 rejected / disagreement /
failed selftest, 2 any error (a JSON object {"code", "message"} is printed).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import catalogue, moebius
from .decision import decide
from .errors import PsiAutError, UnsupportedConfigurationError, ValidationError
from .groups import enumerate_group
from .moebius import DiscAutomorphism, classify
from .numerics import DEFAULT_ANGULAR, DEFAULT_BOUND, DEFAULT_RADII, ContourSpec, count_zeros, \
    count_zeros_composed, ratio_bounds
from .psi_model import PsiSpec

SNAP_ZERO = 1e-14

FAMILY_SAMPLE_PARAMS = {
    "rotation_conjugate": [(0.0,), (math.pi / 2,), (math.pi,)],
    "boundary_stabilizer": [(0.0, 0.0), (0.5, 0.0), (-0.3, 0.6)],
    "boundary_pair_fixing": [(-0.5,), (0.0,), (0.5,)],
    "boundary_pair_swapping": [(-0.5,), (0.0,), (0.5,)],
    "parabolic_at": [(-1.0,), (0.0,), (1.0,)],
}


class CliError(PsiAutError):
    def __init__(self, message, code="usage"):
        super().__init__(message)
        self.code = code


# -- canonical output --------------------------------------------------------

def _num(x: float):
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    # round-off residue below SNAP_ZERO is printed as 0 so golden files do not
    # depend on the last bits of a composition
    if abs(x) < SNAP_ZERO:
        return 0.0
    return float(f"{x:.15g}")


def canonical(obj):
    """Recursively convert to JSON-ready values with fixed float formatting."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return _num(obj)
    if isinstance(obj, complex):
        return [_num(obj.real), _num(obj.imag)]
    if isinstance(obj, DiscAutomorphism):
        return {"eta": canonical(obj.eta), "a": canonical(obj.a)}
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if hasattr(obj, "item"):
        return canonical(obj.item())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(canonical(obj), sort_keys=True, indent=2, ensure_ascii=False)


def _fmt_point(z) -> str:
    z = canonical(complex(z))
    return f"{z[0]}{'+' if not str(z[1]).startswith('-') else ''}{z[1]}i"


# -- input parsing -----------------------------------------------------------

def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", code="io") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}", code="parse") from exc


def _pair(v, what) -> complex:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2 and all(isinstance(x, (int, float)) for x in v):
        return complex(float(v[0]), float(v[1]))
    raise ValidationError(f"{what} must be [re, im], got {v!r}")


def parse_phi(obj) -> DiscAutomorphism:
    """phi JSON: {"eta": [re, im], "a": [re, im]} or one of the sugar forms."""
    if not isinstance(obj, dict) or len(obj) == 0:
        raise ValidationError("phi JSON must be a non-empty object")
    keys = set(obj)
    if keys == {"eta", "a"}:
        return DiscAutomorphism(_pair(obj["eta"], "eta"), _pair(obj["a"], "a"))
    if keys == {"rotation_theta"}:
        return moebius.rotation(float(obj["rotation_theta"]))
    if keys == {"tau"}:
        return moebius.tau(_pair(obj["tau"], "tau"))
    if keys == {"identity"}:
        return moebius.identity()
    if keys == {"parabolic"}:
        p = obj["parabolic"]
        if not isinstance(p, dict) or set(p) != {"w", "zeta"}:
            raise ValidationError("parabolic needs exactly {\"w\", \"zeta\"}")
        return moebius.parabolic(moebius.to_boundary(_pair(p["w"], "w")), float(p["zeta"]))
    raise ValidationError(f"unrecognised phi fields {sorted(keys)}")


def _need(args, name):
    path = getattr(args, name)
    if path is None:
        raise CliError(f"--{name} is required for '{args.command}'")
    return path


def _psi(args) -> PsiSpec:
    return PsiSpec.from_json(_load_json(_need(args, "psi")))


def _phi(args) -> DiscAutomorphism:
    return parse_phi(_load_json(_need(args, "phi")))


def _grid(args):
    radii = tuple(args.radii) if args.radii else DEFAULT_RADII
    if any(not 0 < r < 1 for r in radii):
        raise CliError("--radii values must lie in (0, 1)", code="validation")
    if not 1 <= args.angular <= 100000:
        raise CliError("--angular must lie in [1, 100000]", code="validation")
    return radii, args.angular


# -- commands ----------------------------------------------------------------

def _report_json(r):
    return {"sup_estimate": r.sup_estimate, "inf_estimate": r.inf_estimate, "raw_sup": r.raw_sup,
            "raw_inf": r.raw_inf, "invertible_verdict": r.invertible_verdict, "stable": r.stable,
            "grid": r.grid, "growth": r.growth}


def cmd_decide(args):
    spec, phi = _psi(args), _phi(args)
    v = decide(spec, phi, tol=args.tol)
    out = {"accepted": v.accepted, "derived_rule": v.derived_rule}
    if v.accepted:
        out["certificate"] = v.certificate_lines()
        out["permutation"] = {k: [[s, t] for s, t in pairs] for k, pairs in v.permutation.items()}
    else:
        out["reason"] = v.reason
        out["detail"] = v.detail
    if not args.no_witness:
        radii, angular = _grid(args)
        r = ratio_bounds(spec, phi, radii, angular, args.bound)
        out["numeric_witness"] = {"sup": r.sup_estimate, "inf": r.inf_estimate,
                                  "agrees": r.invertible_verdict == v.accepted}
    lines = [f"accepted: {str(v.accepted).lower()}"]
    if v.accepted:
        lines += ["certificate:"] + [f"  {c}" for c in out["certificate"]]
    else:
        lines += [f"reason: {v.reason}", f"detail: {v.detail}"]
    if v.derived_rule:
        lines.append("note: derived-rule")
    if "numeric_witness" in out:
        w = canonical(out["numeric_witness"])
        lines.append(f"numeric witness: sup={w['sup']} inf={w['inf']} agrees={str(w['agrees']).lower()}")
    return out, lines, 0 if v.accepted else 1


def cmd_group(args):
    spec = _psi(args)
    try:
        d = enumerate_group(spec)
    except UnsupportedConfigurationError as exc:
        err = {"code": exc.code, "message": str(exc)}
        return err, [f"error [{exc.code}]: {exc}"], 2
    out = {"kind": d.kind, "derived_rule": d.derived_rule, "elements": list(d.elements), "families": []}
    lines = [f"kind: {d.kind}"]
    if d.derived_rule:
        lines.append("note: derived-rule")
    for g in d.elements:
        lines.append(f"  eta={_fmt_point(g.eta)} a={_fmt_point(g.a)}")
    for fam in d.families:
        params = FAMILY_SAMPLE_PARAMS[fam.name]
        samples = [{"params": list(p), "member": fam.sample(*p)} for p in params]
        out["families"].append(dict(fam.to_json(), samples=samples))
        pts = ", ".join(_fmt_point(p) for p in fam.points)
        lines.append(f"family {fam.name}({pts}), {fam.param_count} parameter(s), {fam.ranges}")
        for s in samples:
            m = s["member"]
            ps = ", ".join(str(_num(x)) for x in s["params"])
            lines.append(f"  ({ps}) -> eta={_fmt_point(m.eta)} a={_fmt_point(m.a)}")
    return out, lines, 0


def cmd_classify(args):
    phi = _phi(args)
    c = classify(phi)
    out = {"kind": c.kind, "fixed_points": list(c.fixed_points), "multiplier": c.multiplier,
           "phi": phi}
    lines = [f"kind: {c.kind}", "fixed points: " + (", ".join(_fmt_point(p) for p in c.fixed_points) or "-"),
             f"multiplier: {_num(c.multiplier)}"]
    return out, lines, 0


def cmd_verify(args):
    spec, phi = _psi(args), _phi(args)
    radii, angular = _grid(args)
    v = decide(spec, phi, tol=args.tol)
    r = ratio_bounds(spec, phi, radii, angular, args.bound)
    agree = r.invertible_verdict == v.accepted
    if args.csv:
        _dump_grid_csv(args.csv, spec, phi, radii, angular)
    out = {"symbolic_accepted": v.accepted, "agreement": agree, "report": _report_json(r), "bound": args.bound}
    rc = canonical(out["report"])
    lines = [f"symbolic: {'accepted' if v.accepted else 'rejected'}",
             f"numeric: sup={rc['sup_estimate']} inf={rc['inf_estimate']} "
             f"invertible={str(r.invertible_verdict).lower()} stable={str(r.stable).lower()}",
             f"agreement: {str(agree).lower()}"]
    return out, lines, 0 if agree else 1


def _dump_grid_csv(path, spec, phi, radii, angular):
    import csv

    import numpy as np

    from . import _kernels
    from .psi_model import spec_arrays

    theta = 2.0 * np.pi * np.arange(angular) / angular
    arrays = spec_arrays(spec)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["r", "theta", "log_abs_ratio"])
        for r in radii:
            z = r * np.exp(1j * theta)
            with np.errstate(all="ignore"):
                lg = _kernels.log_abs_psi(phi(z), *arrays) - _kernels.log_abs_psi(z, *arrays)
            for t, val in zip(theta, lg):
                w.writerow([f"{r:.15g}", f"{t:.15g}", f"{val:.15g}"])


def cmd_mult(args):
    spec = _psi(args)
    if args.radius is None:
        raise CliError("--radius is required for 'mult'")
    contour = ContourSpec(complex(*args.center), args.radius, args.samples)
    if args.phi is not None:
        n = count_zeros_composed(spec, _phi(args), contour)
    else:
        n = count_zeros(spec, contour)
    out = {"count": n, "center": contour.center, "radius": contour.radius, "samples": contour.samples,
           "composed": args.phi is not None}
    return out, [f"zeros inside |z - {_fmt_point(contour.center)}| < {_num(contour.radius)}: {n}"], 0


def cmd_selftest(args):
    results = catalogue.run_selftest()
    out = {"results": [{"label": lab, "passed": ok, "checks": n} for lab, ok, n in results],
           "all_passed": all(ok for _, ok, _ in results)}
    lines = [f"{'PASS' if ok else 'FAIL'}  {lab} ({n} checks)" for lab, ok, n in results]
    return out, lines, 0 if out["all_passed"] else 1


COMMANDS = {
    "decide": cmd_decide,
    "group": cmd_group,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "mult": cmd_mult,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="psiaut", description="Automorphisms of psi * H-infinity.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--psi", help="psi JSON file")
    p.add_argument("--phi", help="phi JSON file")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--radii", type=float, nargs="+", help="ratio grid radii in (0, 1)")
    p.add_argument("--angular", type=int, default=DEFAULT_ANGULAR, help="angular samples per radius")
    p.add_argument("--samples", type=int, default=4096, help="contour samples for 'mult'")
    p.add_argument("--center", type=float, nargs=2, default=(0.0, 0.0), metavar=("RE", "IM"))
    p.add_argument("--radius", type=float, help="contour radius for 'mult'")
    p.add_argument("--tol", type=float, default=moebius.MATCH_TOL, help="point-matching tolerance")
    p.add_argument("--bound", type=float, default=DEFAULT_BOUND, help="invertibility bound B")
    p.add_argument("--no-witness", action="store_true", help="skip the numeric witness in 'decide'")
    p.add_argument("--csv", help="'verify': also dump log|g| on the polar grid to this CSV file")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if not 0 < args.tol <= 1e-3:
            raise CliError("--tol must lie in (0, 1e-3]", code="validation")
        if not args.bound > 1:
            raise CliError("--bound must exceed 1", code="validation")
        out, lines, code = COMMANDS[args.command](args)
    except (PsiAutError, ValueError) as exc:
        err_code = getattr(exc, "code", "validation")
        out, lines, code = {"code": err_code, "message": str(exc)}, [f"error [{err_code}]: {exc}"], 2
    sys.stdout.write(dumps(out) + "\n" if args.format == "json" else "\n".join(lines) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
