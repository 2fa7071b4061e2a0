"""Command-line entry point.

    conetorsion torsion sphere --p 2 --alpha 0.5236 --l 1 --format json
    conetorsion torsion lowdim --m 5 --heat-file inv.json
    conetorsion verify identities|phi|bessel|duality [...]
    conetorsion tables phi|residues|anomaly|spectrum [...]

Exit status: 0 when every requested check passes, 1 on a failed check,
2 on invalid input.

Heat-invariants JSON:
    {"vol": 1.0, "int_tau": 0.0, "int_tau_sq": 0.0, "int_ric_sq": 0.0, "int_riem_sq": 0.0}
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


def rational_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def rational_from_json(d: dict) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


def nupoly_json(poly) -> list:
    return [{"power": e, "coefficient": rational_json(v)} for e, v in poly.items()]


def nupoly_from_json(rows):
    from .exact import NuPoly
    return NuPoly({int(r["power"]): rational_from_json(r["coefficient"]) for r in rows})


@dataclass
class CommandConfig:
    command: str
    target: str
    params: dict = field(default_factory=dict)
    heat_file: Optional[str] = None
    fmt: str = "text"
    output: Optional[str] = None


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


# formatting ------------------------------------------------------------------

def _checks_artifact(checks: List[Check], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"ok": all(c.passed for c in checks),
                           "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks]},
                          indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["check", "status", "detail"])
        for c in checks:
            w.writerow([c.name, "pass" if c.passed else "FAIL", c.detail])
        return buf.getvalue()
    width = max((len(c.name) for c in checks), default=0)
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name.ljust(width)}  {c.detail}" for c in checks]
    n_fail = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - n_fail}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n"


def _table(header, rows, fmt):
    if fmt == "json":
        return json.dumps([dict(zip(header, r)) for r in rows], indent=2)
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _report_artifact(report, fmt):
    d = report.to_dict()
    if fmt == "json":
        return json.dumps(d, indent=2)
    keys = ["regular", "singular", "anomaly", "total", "reidemeister", "cheeger_muller_gap", "relative_total"]
    if fmt == "csv":
        return _table(["field", "value"], [[k, repr(d[k])] for k in keys], "csv")
    lines = [f"{k:>20}  {d[k]!r}" for k in keys]
    lines += [f"{k:>20}  {v}" for k, v in d["metadata"].items()]
    return "\n".join(lines) + "\n"


# commands --------------------------------------------------------------------

def _torsion_sphere(cfg):
    from .torsion import torsion_sphere_report
    p, a, l = cfg.params["p"], cfg.params["alpha"], cfg.params["l"]
    if p < 1 or p > 8:
        raise InputError("p must be in 1..8")
    if not l > 0 or not 0 < math.sin(a) <= 1:
        raise InputError("need l > 0 and 0 < sin(alpha) <= 1")
    r = torsion_sphere_report(p, a, l)
    if cfg.fmt == "json":
        from .torsion import anomaly_sphere, singular_term_sphere
        d = r.to_dict()
        d["exact"] = {"variable": "sin(alpha)", "singular": nupoly_json(singular_term_sphere(p)),
                      "anomaly": nupoly_json(anomaly_sphere(p))}
        return EXIT_OK, json.dumps(d, indent=2)
    return EXIT_OK, _report_artifact(r, cfg.fmt)


def load_heat_invariants(path):
    from .sphere import HeatInvariants
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read heat invariants: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("heat invariants must be a JSON object")
    try:
        return HeatInvariants.from_dict(doc)
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def _torsion_lowdim(cfg):
    from .torsion import torsion_lowdim_report
    m = cfg.params["m"]
    if m not in (3, 5):
        raise InputError("m must be 3 or 5")
    if not cfg.heat_file:
        raise InputError("--heat-file is required")
    inv = load_heat_invariants(cfg.heat_file)
    r = torsion_lowdim_report(m, inv)
    d = r.to_dict()
    if cfg.fmt == "json":
        out = {"m": m, "singular": d["singular"], "anomaly": d["anomaly"],
               "difference": d["singular"] - d["anomaly"], "invariants": inv.as_dict()}
        return EXIT_OK, json.dumps(out, indent=2)
    rows = [["singular", repr(d["singular"])], ["anomaly", repr(d["anomaly"])],
            ["difference", repr(d["singular"] - d["anomaly"])]]
    if cfg.fmt == "csv":
        return EXIT_OK, _table(["field", "value"], rows, "csv")
    return EXIT_OK, "".join(f"{k:>12}  {v}\n" for k, v in rows)


def _verify_identities(cfg):
    from .exact import verify_binomial_identities
    from .sphere import zeta_u_at_zero
    from .torsion import anomaly_sphere, mn_coefficients, singular_term_sphere
    p_max = cfg.params["p_max"]
    if not 1 <= p_max <= 8:
        raise InputError("p-max must be in 1..8")
    checks = []
    rep = verify_binomial_identities(max(2 * p_max, 4))
    for name, (n, f) in rep.summary().items():
        if "literal" in name:
            checks.append(Check(f"identity {name}", True, f"informational: {n - f}/{n} instances hold"))
        else:
            checks.append(Check(f"identity {name}", f == 0, f"{n - f}/{n} instances"))
    for p in range(1, p_max + 1):
        bad = [(j, k) for k in range(p) for j in range(k + 1) if len(set(mn_coefficients(p, j, k))) != 1]
        checks.append(Check(f"M_j(p,k) = N_j(p,k), p={p}", not bad, f"mismatches {bad}" if bad else "exact"))
    for p in range(1, p_max + 1):
        ok = singular_term_sphere(p) == anomaly_sphere(p)
        checks.append(Check(f"singular = anomaly on S^{2 * p - 1}", ok, "exact polynomial equality"))
    for p in range(1, p_max + 1):
        try:
            vals = [zeta_u_at_zero(p, q) for q in range(p)]
            checks.append(Check(f"zeta(0,U_q) = (-1)^(q+1), p={p}", True, str([str(v) for v in vals])))
        except ArithmeticError as exc:
            checks.append(Check(f"zeta(0,U_q) = (-1)^(q+1), p={p}", False, str(exc)))
    return checks


def _verify_phi(cfg):
    from .fixtures import LOWDIM_COEFFICIENTS, PHI_FINITE_PARTS, PHI_REPORT_ONLY
    from .olver import finite_part, phi_polynomial, phi_residue
    from .torsion import singular_coefficients_lowdim
    checks = []
    for (p, q, j), ref in PHI_FINITE_PARTS.items():
        got = finite_part(j, p, q)
        checks.append(Check(f"Rz Phi_{j},{q} (p={p})", got == ref, f"{got} (reference {ref})"))
    for (p, q, j), ref_text in PHI_REPORT_ONLY.items():
        got = finite_part(j, p, q)
        same = got == Fraction(ref_text)
        checks.append(Check(f"Rz Phi_{j},{q} (p={p}) [report only]", True,
                            f"{got}; reference {ref_text} {'agrees' if same else 'differs'}"))
    p_max = cfg.params.get("p_max", 6)
    bad = []
    for p in range(1, p_max + 1):
        for q in range(p):
            for j in range(1, 2 * p):
                phi = phi_polynomial(j, p, q)
                if phi(Fraction(1)) != 0 or (j % 2 and phi_residue(phi) != 0):
                    bad.append((p, q, j))
    checks.append(Check(f"phi_j,q(1) = 0 and residues vanish, p<={p_max}", not bad, str(bad) if bad else "exact"))
    for m, ref in LOWDIM_COEFFICIENTS.items():
        got = singular_coefficients_lowdim(m)
        checks.append(Check(f"m={m} singular coefficients", got == ref,
                            ", ".join(str(v) for v in got.values())))
    return checks


def _verify_bessel(cfg):
    from .bessel import BACKEND, hadamard_product_check, quadratic_bessel_zeta_det
    K = cfg.params["K"]
    if K < 100:
        raise InputError("K must be >= 100")
    tol = cfg.params["tol"]
    checks = []
    for nu in (0.5, 2.5):
        for c in (None, 1.0, -1.0):
            h = hadamard_product_check(nu, c, 0.7, K)
            checks.append(Check(f"Hadamard nu={nu} c={c} K={K}", h.relative_error < tol,
                                f"rel err {h.relative_error:.2e} [{BACKEND}]"))
    for l in (0.5, 1.0, 2.0, 10.0):
        err = abs(quadratic_bessel_zeta_det(0.5, 0.0, l) - math.log(2 * l))
        checks.append(Check(f"-z'(0) = log 2l at l={l}", err < 1e-10, f"abs err {err:.1e}"))
    for nu in (0.5, 2.5):
        err = abs(quadratic_bessel_zeta_det(nu, 1e-7, 1.3) - quadratic_bessel_zeta_det(nu, 0.0, 1.3))
        checks.append(Check(f"q -> 0 limit, nu={nu}", err < 1e-8, f"abs err {err:.1e}"))
    return checks


def _verify_duality(cfg):
    from .bessel import poincare_duality_check
    checks = []
    ps = [cfg.params["p"]] if cfg.params.get("p") else [1, 2]
    for p in ps:
        if not 1 <= p <= 3:
            raise InputError("duality check supports p in 1..3")
        rep = poincare_duality_check(p, cfg.params["nu"], cfg.params["l"], cfg.params["cutoff"])
        m = 2 * p - 1
        for q, ok, detail in rep.results:
            checks.append(Check(f"p={p}: abs q={q} vs rel q={m + 1 - q}", ok, detail))
    return checks


def _spectrum_table(cfg, fmt):
    from .bessel import ConeSpectrumSpec, cone_spectrum_rows
    try:
        spec = ConeSpectrumSpec(cfg.params["p"], cfg.params["q"], cfg.params["bc"],
                                cfg.params["nu"], cfg.params["l"], cfg.params["cutoff"])
        rows = [[repr(float(v)), m, t] for v, m, t in cone_spectrum_rows(spec)]
    except (ValueError, RuntimeError) as exc:
        raise InputError(str(exc)) from exc
    return _table(["value", "multiplicity", "family"], rows, fmt)


def _tables(cfg):
    from .olver import finite_part_table
    from .sphere import zeta_u_residues
    from .torsion import anomaly_sphere
    fmt = "json" if cfg.fmt == "json" else "csv"
    if cfg.target == "spectrum":
        return _spectrum_table(cfg, fmt)
    p_max = cfg.params.get("p_max", 0)
    if not 1 <= p_max <= 8:
        raise InputError("p-max must be in 1..8")
    if cfg.target == "phi":
        rows = [[r.p, r.q, r.j, str(r.value.numerator), str(r.value.denominator)] for r in finite_part_table(p_max)]
        return _table(["p", "q", "j", "finite_part_numerator", "finite_part_denominator"], rows, fmt)
    if cfg.target == "residues":
        rows = []
        for p in range(1, p_max + 1):
            for q in range(p):
                for s, poly in zeta_u_residues(p, q).entries.items():
                    for e, v in poly.items():
                        rows.append([p, q, s, e, str(v.numerator), str(v.denominator)])
        return _table(["p", "q", "pole", "x_exponent", "numerator", "denominator"], rows, fmt)
    if cfg.target == "anomaly":
        rows = [[p, e, str(v.numerator), str(v.denominator)]
                for p in range(1, p_max + 1) for e, v in anomaly_sphere(p).items()]
        return _table(["p", "x_exponent", "numerator", "denominator"], rows, fmt)
    raise InputError(f"unknown table {cfg.target}")


VERIFIERS = {"identities": _verify_identities, "phi": _verify_phi,
             "bessel": _verify_bessel, "duality": _verify_duality}


def run(cfg: CommandConfig):
    """Execute one command; returns (exit status, artifact text)."""
    try:
        if cfg.command == "torsion":
            if cfg.target == "sphere":
                return _torsion_sphere(cfg)
            if cfg.target == "lowdim":
                return _torsion_lowdim(cfg)
        elif cfg.command == "verify" and cfg.target in VERIFIERS:
            checks = VERIFIERS[cfg.target](cfg)
            status = EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL
            return status, _checks_artifact(checks, cfg.fmt)
        elif cfg.command == "tables":
            return EXIT_OK, _tables(cfg)
        raise InputError(f"unknown command {cfg.command} {cfg.target}")
    except InputError as exc:
        return EXIT_INPUT, json.dumps({"error": str(exc)})


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", dest="fmt", choices=["text", "json", "csv"], default="text")
    fmt.add_argument("--output", "-o")

    parser = argparse.ArgumentParser(prog="conetorsion", description="Analytic torsion of finite metric cones")
    sub = parser.add_subparsers(dest="command", required=True)

    tor = sub.add_parser("torsion").add_subparsers(dest="target", required=True)
    sp = tor.add_parser("sphere", parents=[fmt])
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--alpha", type=float, default=math.pi / 2)
    sp.add_argument("--l", type=float, default=1.0)
    ld = tor.add_parser("lowdim", parents=[fmt])
    ld.add_argument("--m", type=int, required=True)
    ld.add_argument("--heat-file", required=True)

    ver = sub.add_parser("verify").add_subparsers(dest="target", required=True)
    vi = ver.add_parser("identities", parents=[fmt])
    vi.add_argument("--p-max", type=int, default=8)
    vp = ver.add_parser("phi", parents=[fmt])
    vp.add_argument("--p-max", type=int, default=6)
    vb = ver.add_parser("bessel", parents=[fmt])
    vb.add_argument("--K", type=int, default=5000)
    vb.add_argument("--tol", type=float, default=1e-6)
    vd = ver.add_parser("duality", parents=[fmt])
    vd.add_argument("--p", type=int)
    vd.add_argument("--nu", type=float, default=1.0)
    vd.add_argument("--l", type=float, default=1.0)
    vd.add_argument("--cutoff", type=float, default=100.0)

    tab = sub.add_parser("tables").add_subparsers(dest="target", required=True)
    for name in ("phi", "residues", "anomaly"):
        t = tab.add_parser(name, parents=[fmt])
        t.add_argument("--p-max", type=int, default=5)
    ts = tab.add_parser("spectrum", parents=[fmt])
    ts.add_argument("--p", type=int, default=1)
    ts.add_argument("--q", type=int, default=0)
    ts.add_argument("--bc", choices=["absolute", "relative"], default="absolute")
    ts.add_argument("--nu", type=float, default=1.0)
    ts.add_argument("--l", type=float, default=1.0)
    ts.add_argument("--cutoff", type=float, default=50.0)
    return parser


def config_from_args(ns: argparse.Namespace) -> CommandConfig:
    skip = {"command", "target", "fmt", "output", "heat_file"}
    params = {k: v for k, v in vars(ns).items() if k not in skip}
    return CommandConfig(ns.command, ns.target, params, getattr(ns, "heat_file", None), ns.fmt, ns.output)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = config_from_args(ns)
    status, artifact = run(cfg)
    if cfg.output and status != EXIT_INPUT:
        with open(cfg.output, "w") as fh:
            fh.write(artifact)
    else:
        stream = sys.stderr if status == EXIT_INPUT else sys.stdout
        stream.write(artifact if artifact.endswith("\n") else artifact + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
