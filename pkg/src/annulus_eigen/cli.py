"""Command-line front end.

Subcommands ``verify-identities``, ``steklov``, ``neumann`` and ``report``
each take a flat JSON config (``--config``); ``--tol`` overrides the
config's tolerance. Exit status: 0 all checks pass, 1 a check failed,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any, Callable, Iterable

from .errors import AnnulusEigenError
from .reports import CheckReport

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(Exception):
    pass


DEFAULTS: dict[str, dict[str, Any]] = {
    "verify-identities": {
        "k_max": 5,
        "t_max": 10,
        "R2": [1.0, 2.0],
        "x_over_R2": [0.0, 0.1, 0.45, 0.4],
        "energy_n": [3, 4, 5, 6, 7, 8],
        "energy_R1": 1.0,
        "energy_R2": 2.0,
        "energy_x": [0.09, 0.18, 0.27, 0.36, 0.45, 0.54, 0.63, 0.72, 0.81, 0.9],
        "inequality_tol": 1e-12,
        "tol": 1e-9,
    },
    "steklov": {
        "n": [2, 3, 4, 5],
        "R1": 1.0,
        "R2": 2.0,
        "x": [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9],
        "modes": 64,
        "tol": 1e-8,
    },
    "neumann": {
        "spaces": ["euclidean:2", "euclidean:3", "rank1:1:3", "rank1:2:2"],
        "shells": [[1.0, 2.0], [0.5, 1.5]],
        "ellipse_ratios": [1.0, 1.2, 1.5, 2.0],
        "ellipse_r2": 1.5,
        "ellipse_r1": 0.4,
        "fem_mesh": None,
        "tol": 1e-10,
    },
    "report": {
        "identities": None,
        "steklov": None,
        "neumann": None,
        "tol": 0.0,
    },
}


def load_config(command: str, path: str | None, tol: float | None) -> dict[str, Any]:
    cfg = dict(DEFAULTS[command])
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                user = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(user, dict):
            raise ConfigError("config must be a JSON object")
        unknown = sorted(set(user) - set(cfg))
        if unknown:
            raise ConfigError(f"unknown config keys for {command}: {', '.join(unknown)}")
        cfg.update(user)
    if tol is not None:
        cfg["tol"] = tol
    if not (isinstance(cfg["tol"], (int, float)) and cfg["tol"] >= 0):
        raise ConfigError("tol must be a non-negative number")
    return cfg


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------

def format_value(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def render(rows: list[dict[str, Any]], columns: list[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{c: r.get(c) for c in columns} for r in rows], indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([format_value(r.get(c)) for c in columns])
    return buf.getvalue()


def emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# --------------------------------------------------------------------------
# verify-identities
# --------------------------------------------------------------------------

CHECK_COLUMNS = ["name", "params", "lhs", "rhs", "relation", "tolerance", "pass"]


def _as_list(cfg: dict, key: str, cast: Callable = float) -> list:
    value = cfg[key]
    if not isinstance(value, list):
        raise ConfigError(f"{key} must be a list")
    try:
        return [cast(v) for v in value]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad entry in {key}: {exc}") from exc


def identity_checks(cfg: dict[str, Any]) -> list[CheckReport]:
    from .quadgeom import boundary_energy_profile, offset_kernel_integral
    from .specfun import CoeffFamily, kernel_exponents, series_coefficient

    tol = float(cfg["tol"])
    ineq_tol = float(cfg["inequality_tol"])
    k_max, t_max = int(cfg["k_max"]), int(cfg["t_max"])
    checks: list[CheckReport] = []

    for fam in CoeffFamily:
        k_lo = 2 if fam in (CoeffFamily.ALPHA_HAT, CoeffFamily.BETA_HAT) else 1
        for k in range(k_lo, k_max + 1):
            lead = series_coefficient(fam, k, 0)
            for t in range(t_max + 1):
                closed = series_coefficient(fam, k, t)
                summed = series_coefficient(fam, k, t, method="finite_sum")
                params = {"family": fam.value, "k": k, "t": t}
                checks.append(CheckReport("coefficient_identity", summed, closed, "=",
                                          tol * max(1.0, abs(closed)), params))
                if fam in (CoeffFamily.BETA, CoeffFamily.BETA_HAT) and t >= 1:
                    checks.append(CheckReport("coefficient_vanishing", summed / lead, 0.0,
                                              "=", tol, params))

    pairs = [("odd", CoeffFamily.ALPHA, CoeffFamily.BETA, 1),
             ("even", CoeffFamily.ALPHA_HAT, CoeffFamily.BETA_HAT, 2)]
    for parity, ineq_fam, eq_fam, k_lo in pairs:
        for k in range(k_lo, k_max + 1):
            for R2 in _as_list(cfg, "R2"):
                for frac in _as_list(cfg, "x_over_R2"):
                    x = frac * R2
                    params = {"k": k, "R2": R2, "x": x}
                    w, p = kernel_exponents(ineq_fam, k)
                    lhs = offset_kernel_integral(w, p, R2, x)
                    rhs = series_coefficient(ineq_fam, k, 0) / R2 ** (2 * p)
                    checks.append(CheckReport(f"{parity}_kernel_lower_bound", lhs, rhs, ">=",
                                              ineq_tol, params))
                    w, p = kernel_exponents(eq_fam, k)
                    lhs = offset_kernel_integral(w, p, R2, x)
                    rhs = series_coefficient(eq_fam, k, 0) / R2 ** (2 * p)
                    checks.append(CheckReport(f"{parity}_kernel_identity", lhs, rhs, "=",
                                              tol * abs(rhs), params))

    R1, R2 = float(cfg["energy_R1"]), float(cfg["energy_R2"])
    for n in _as_list(cfg, "energy_n", int):
        base = boundary_energy_profile(n, R1, R2, 0.0)
        parity = "odd" if n % 2 else "even"
        for x in _as_list(cfg, "energy_x"):
            value = boundary_energy_profile(n, R1, R2, x)
            checks.append(CheckReport(f"{parity}_boundary_energy", value, base, ">=", 0.0,
                                      {"n": n, "R1": R1, "R2": R2, "x": x}))
    return checks


def cmd_verify_identities(cfg: dict[str, Any], fmt: str, out: str | None) -> int:
    checks = identity_checks(cfg)
    emit(render([c.as_row() for c in checks], CHECK_COLUMNS, fmt), out)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


# --------------------------------------------------------------------------
# steklov
# --------------------------------------------------------------------------

STEKLOV_COLUMNS = ["n", "R1", "R2", "x", "tau1_concentric", "tau1_bound", "tau1_oracle",
                   "pass", "tol"]


def steklov_rows(cfg: dict[str, Any]) -> list[dict[str, Any]]:
    from .bounds import steklov_testfn_quotient
    from .oracle2d import steklov_eccentric_tau1
    from .quadgeom import OffsetAnnulusSpec
    from .radial import steklov_concentric_mode, steklov_concentric_shoot

    tol = float(cfg["tol"])
    R1, R2 = float(cfg["R1"]), float(cfg["R2"])
    modes = int(cfg["modes"])
    rows = []
    for n in _as_list(cfg, "n", int):
        tau0, _ = steklov_concentric_mode(n, R1, R2, 0)
        shot = steklov_concentric_shoot(n, R1, R2, 0)
        shoot_ok = abs(shot - tau0) <= tol * tau0
        for x in _as_list(cfg, "x"):
            OffsetAnnulusSpec(n, R1, R2, x)
            bound = oracle = None
            if n >= 3:
                bound = steklov_testfn_quotient(OffsetAnnulusSpec(n, R1, R2, x)).quotient
                value = bound
            else:
                oracle = steklov_eccentric_tau1(R1, R2, x, modes)
                value = oracle
            if x == 0.0:
                ok = abs(value - tau0) <= tol * tau0
            elif oracle is not None:
                ok = value < tau0 - tol * tau0
            else:
                ok = value <= tau0 * (1.0 + tol)
            rows.append({"n": n, "R1": R1, "R2": R2, "x": x, "tau1_concentric": tau0,
                         "tau1_bound": bound, "tau1_oracle": oracle,
                         "pass": bool(ok and shoot_ok), "tol": tol})
    return rows


def cmd_steklov(cfg: dict[str, Any], fmt: str, out: str | None) -> int:
    rows = steklov_rows(cfg)
    emit(render(rows, STEKLOV_COLUMNS, fmt), out)
    return EXIT_OK if all(r["pass"] for r in rows) else EXIT_FAIL


# --------------------------------------------------------------------------
# neumann
# --------------------------------------------------------------------------

NEUMANN_COLUMNS = ["space", "k", "n", "r1", "r2", "mu1", "tau2", "lambda1_r2", "certs_pass",
                   "aspect", "mu1_annulus", "bound", "tol"]


def parse_space(label: str):
    from .radial import space_from_name

    parts = label.split(":")
    try:
        if parts[0] == "euclidean" and len(parts) == 2:
            return space_from_name("euclidean", int(parts[1]))
        if parts[0] == "rank1" and len(parts) == 3:
            return space_from_name("rank1", int(parts[2]), int(parts[1]))
    except ValueError as exc:
        raise ConfigError(f"bad space {label!r}: {exc}") from exc
    raise ConfigError(f"bad space {label!r}; use 'euclidean:n' or 'rank1:k:n'")


def _fem_ellipse_mu1(a: float, b: float, r1: float, mesh_size) -> tuple[float, float]:
    """Fine-mesh FEM value and its self-convergence error estimate."""
    from .oracle2d import ellipse_mesh, fem_neumann_mu1

    n_r, n_theta = mesh_size
    coarse = fem_neumann_mu1(ellipse_mesh(a, b, r1, n_r, n_theta))
    fine = fem_neumann_mu1(ellipse_mesh(a, b, r1, 2 * n_r, 2 * n_theta))
    return fine, abs(fine - coarse)


def neumann_rows(cfg: dict[str, Any]) -> list[dict[str, Any]]:
    from .bounds import SymmetricDomainSpec, neumann_testfn_bound
    from .radial import (AnnulusSpec, b_function_profile, lambda1_sphere, neumann_h_certificate,
                         neumann_radial_mu1, neumann_radial_tau2, psi_b_certificate)

    tol = float(cfg["tol"])
    if not tol > 0:
        raise ConfigError("neumann needs tol > 0 (bisection tolerance)")
    spaces = [parse_space(s) for s in _as_list(cfg, "spaces", str)]
    shells = cfg["shells"]
    if not isinstance(shells, list) or not all(isinstance(s, list) and len(s) == 2 for s in shells):
        raise ConfigError("shells must be a list of [r1, r2] pairs")
    rows = []
    for space in spaces:
        for r1, r2 in shells:
            shell = AnnulusSpec(float(r1), float(r2))
            mu1, _ = neumann_radial_mu1(space, shell, tol)
            tau2, _ = neumann_radial_tau2(space, shell, tol)
            certs = (neumann_h_certificate(space, shell, tol), psi_b_certificate(space, shell, tol),
                     b_function_profile(space, shell, tol=tol))
            rows.append({"space": space.label, "k": space.k, "n": space.n,
                         "r1": shell.r1, "r2": shell.r2, "mu1": mu1, "tau2": tau2,
                         "lambda1_r2": float(lambda1_sphere(space, shell.r2)),
                         "certs_pass": all(c.passed for c in certs), "tol": tol})

    r_eq, r_in = float(cfg["ellipse_r2"]), float(cfg["ellipse_r1"])
    mesh_size = cfg["fem_mesh"]
    if mesh_size is not None and not (isinstance(mesh_size, list) and len(mesh_size) == 2):
        raise ConfigError("fem_mesh must be null or [n_r, n_theta]")
    for ratio in _as_list(cfg, "ellipse_ratios"):
        a, b = r_eq * math.sqrt(ratio), r_eq / math.sqrt(ratio)
        nb = neumann_testfn_bound(SymmetricDomainSpec.ellipse(a, b, r_in), tol=tol)
        ok = nb.bound <= nb.mu1_annulus * (1.0 + 1e-9)
        fem = None
        if mesh_size is not None:
            fem, err = _fem_ellipse_mu1(a, b, r_in, [int(v) for v in mesh_size])
            ok = ok and fem <= nb.mu1_annulus + 2.0 * err and fem <= nb.bound + 2.0 * err
        rows.append({"space": "ellipse", "k": 1, "n": 2, "r1": r_in, "r2": nb.r2, "mu1": fem,
                     "lambda1_r2": 1.0 / nb.r2 ** 2, "certs_pass": bool(ok), "aspect": ratio,
                     "mu1_annulus": nb.mu1_annulus, "bound": nb.bound, "tol": tol})
    return rows


def cmd_neumann(cfg: dict[str, Any], fmt: str, out: str | None) -> int:
    rows = neumann_rows(cfg)
    emit(render(rows, NEUMANN_COLUMNS, fmt), out)
    return EXIT_OK if all(r["certs_pass"] for r in rows) else EXIT_FAIL


# --------------------------------------------------------------------------
# report
# --------------------------------------------------------------------------

def _read_csv(path: str) -> list[dict[str, str]]:
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            return list(csv.DictReader(fh))
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc


def _claim_key(source: str, row: dict[str, str]) -> tuple[str, str]:
    """(claim key, pass column) for one CSV row."""
    if source == "identities":
        name = row["name"]
        if name.startswith("coefficient_"):
            return "coefficient_identities", "pass"
        return name, "pass"
    if source == "steklov":
        if row["tau1_oracle"]:
            return "steklov_concentric_maximizes_planar", "pass"
        return "steklov_concentric_maximizes_testfn", "pass"
    if row["space"] == "ellipse":
        return "neumann_annulus_maximizes_ellipses", "certs_pass"
    if row["space"].startswith("rank1"):
        return "neumann_radial_certificates_rank1", "certs_pass"
    return "neumann_radial_certificates_euclidean", "certs_pass"


def summarize(sources: dict[str, str | None]) -> dict[str, dict[str, Any]]:
    summary: dict[str, dict[str, Any]] = {}
    for source, path in sources.items():
        if path is None:
            continue
        for row in _read_csv(path):
            key, col = _claim_key(source, row)
            entry = summary.setdefault(key, {"rows": 0, "passed": 0})
            entry["rows"] += 1
            entry["passed"] += row[col] == "true"
    for entry in summary.values():
        entry["all_pass"] = entry["passed"] == entry["rows"]
    return dict(sorted(summary.items()))


def cmd_report(cfg: dict[str, Any], fmt: str, out: str | None) -> int:
    summary = summarize({k: cfg[k] for k in ("identities", "steklov", "neumann")})
    if fmt == "json":
        text = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    else:
        text = render([{"claim": k, **v} for k, v in summary.items()],
                      ["claim", "rows", "passed", "all_pass"], "csv")
    emit(text, out)
    return EXIT_OK if all(v["all_pass"] for v in summary.values()) else EXIT_FAIL


COMMANDS: dict[str, Callable[[dict, str, str | None], int]] = {
    "verify-identities": cmd_verify_identities,
    "steklov": cmd_steklov,
    "neumann": cmd_neumann,
    "report": cmd_report,
}

HELP = {
    "verify-identities": "coefficient identities, kernel identities/inequalities, boundary-energy monotonicity",
    "steklov": "concentric Steklov value vs eccentric test-function bounds (n>=3) and planar oracle (n=2)",
    "neumann": "radial mu1/tau2 with certificates; ellipse sweep with test-function bound and optional FEM",
    "report": "aggregate CSV outputs into a JSON summary per claim",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="annulus-eigen", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, defaults in DEFAULTS.items():
        epilog = "config defaults: " + json.dumps(defaults)
        p = sub.add_parser(name, help=HELP[name], description=HELP[name], epilog=epilog)
        p.add_argument("--config", help="flat JSON file with parameter overrides")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"),
                       default="json" if name == "report" else "csv")
        p.add_argument("--tol", type=float, help="override the config tolerance")
    return parser


def main(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(None if argv is None else list(argv))
    try:
        cfg = load_config(args.command, args.config, args.tol)
        return COMMANDS[args.command](cfg, args.format, args.out)
    except (ConfigError, AnnulusEigenError, ValueError, TypeError, KeyError) as exc:
        print(f"annulus-eigen: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
