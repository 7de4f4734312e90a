"""Command-line surface: scenario files in, JSON/CSV reports out.

One subcommand per mode; every input beyond the global flags lives in a
scenario JSON file so runs are reproducible by passing the same file
around.  Every report embeds the scenario it came from.  Exit codes:
0 pass (or informational mode), 2 verification failure, 1 input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass
from typing import Any, Sequence

from . import __version__
from .enumeration import DEFAULT_CAP, canonical_classes, enumerate_symmetries
from .errors import InputError
from .exponents import (
    BalancedType,
    balanced_types_upto,
    identity_critical_gamma,
    identity_exponent_count,
    identity_partition,
    report_for_family,
    report_for_type,
)
from .extremal import (
    default_eps_grid,
    default_r_grid,
    local_growth_experiment,
    sharpness_experiment,
)
from .exponents import per_function_exponents
from .functions import constant_integrand, random_block_invariant
from .extremal import ExtremalParams, extremal_function
from .quadrature import RNG_ALGORITHM, QuadConfig, holder_verify
from .symmetry import EdgeSet, Symmetry, decompose, lie_closure

MODES = ("decompose", "exponents", "enumerate", "identities",
         "verify-holder", "verify-sharpness", "verify-local")


@dataclass(frozen=True)
class Scenario:
    """A mode plus its validated JSON payload."""

    mode: str
    payload: dict

    def to_dict(self) -> dict:
        return {"mode": self.mode, "payload": self.payload}


@dataclass(frozen=True)
class RunRecord:
    """Self-describing result envelope written by every run."""

    scenario: Scenario
    tool_version: str
    rng_algorithm: str
    wall_time_s: float
    results: dict
    passed: bool | None

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario.to_dict(),
            "tool_version": self.tool_version,
            "rng_algorithm": self.rng_algorithm,
            "wall_time_s": self.wall_time_s,
            "results": self.results,
            "passed": self.passed,
        }


# --- payload validation -------------------------------------------------------


def _require(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise InputError(path, message)


def _edge_set(data: Any, path: str) -> EdgeSet:
    _require(isinstance(data, dict), path, "expected an object with n and edges")
    _require(isinstance(data.get("n"), int), f"{path}.n", "integer dimension required")
    edges = data.get("edges")
    _require(isinstance(edges, list), f"{path}.edges", "list of [i, j] pairs required")
    n = data["n"]
    pairs = []
    for k, e in enumerate(edges):
        epath = f"{path}.edges[{k}]" if path else f"edges[{k}]"
        _require(isinstance(e, (list, tuple)) and len(e) == 2,
                 epath, "expected a pair [i, j]")
        i, j = e
        _require(isinstance(i, int) and isinstance(j, int), epath, "integers required")
        _require(i < j, epath, "i<j required")
        _require(1 <= i and j <= n, epath, f"indices must lie in [1, {n}]")
        pairs.append((i, j))
    try:
        return EdgeSet.of(n, pairs)
    except ValueError as exc:
        raise InputError(path or "input", str(exc)) from exc


def _balanced_type(data: Any, path: str) -> BalancedType:
    _require(isinstance(data, dict), path, "expected an object with n and lengths")
    _require(isinstance(data.get("n"), int), f"{path}.n", "integer dimension required")
    _require(isinstance(data.get("lengths"), list) and data["lengths"],
             f"{path}.lengths", "nonempty list of block lengths required")
    try:
        return BalancedType(data["n"], tuple(data["lengths"]))
    except ValueError as exc:
        raise InputError(f"{path}.lengths", str(exc)) from exc


def _quad_config(data: Any, path: str) -> QuadConfig:
    if data is None:
        return QuadConfig()
    _require(isinstance(data, dict), path, "expected an object")
    allowed = {"samples", "seed", "shards"}
    for key in data:
        _require(key in allowed, f"{path}.{key}", "unknown field")
    try:
        return QuadConfig(**data)
    except (TypeError, ValueError) as exc:
        raise InputError(path, str(exc)) from exc


def _grid(data: Any, path: str, default: list[float], decreasing: bool) -> list[float]:
    if data is None:
        return default
    if isinstance(data, list):
        _require(len(data) >= 3, path, "need at least 3 grid points")
        vals = [float(v) for v in data]
        _require(all(v > 0 for v in vals), path, "grid values must be positive")
        return sorted(vals, reverse=decreasing)
    if isinstance(data, dict) and data.get("kind") == "dyadic":
        lo, hi = data.get("min_exp"), data.get("max_exp")
        _require(isinstance(lo, int) and isinstance(hi, int) and lo < hi,
                 path, "dyadic grid needs integer min_exp < max_exp")
        if decreasing:
            return [2.0**-k for k in range(lo, hi + 1)]
        return [2.0**k for k in range(lo, hi + 1)]
    raise InputError(path, "expected a list of values or a dyadic spec")


def _family_from_payload(payload: dict, path_root: str = "") -> list[Symmetry]:
    fams_data = payload.get("families")
    path = f"{path_root}families" if path_root else "families"
    _require(isinstance(fams_data, list) and fams_data, path,
             "nonempty list of edge sets required")
    out = []
    for k, item in enumerate(fams_data):
        es = _edge_set(item, f"{path}[{k}]")
        try:
            out.append(decompose(es))
        except ValueError as exc:
            raise InputError(f"{path}[{k}]", str(exc)) from exc
    return out


# --- mode handlers ------------------------------------------------------------


def _run_decompose(payload: dict) -> tuple[dict, bool | None]:
    es = _edge_set(payload, "")
    if payload.get("close"):
        es = lie_closure(es)
    try:
        sym = decompose(es)
    except ValueError as exc:
        raise InputError("edges", str(exc)) from exc
    return {"symmetry": sym.to_dict(), "edges_closed": es.to_dict()}, None


def _run_exponents(payload: Any) -> tuple[dict, bool | None]:
    if isinstance(payload, list):
        fams = []
        for k, item in enumerate(payload):
            es = _edge_set(item, f"[{k}]")
            try:
                fams.append(decompose(es))
            except ValueError as exc:
                raise InputError(f"[{k}]", str(exc)) from exc
        try:
            report = report_for_family(fams)
        except ValueError as exc:
            raise InputError("input", str(exc)) from exc
        return {"report": report.to_dict(), "input_kind": "family"}, None
    if isinstance(payload, dict) and "families" in payload:
        fams = _family_from_payload(payload)
        try:
            report = report_for_family(fams)
        except ValueError as exc:
            raise InputError("families", str(exc)) from exc
        return {"report": report.to_dict(), "input_kind": "family"}, None
    t = _balanced_type(payload, "")
    return {"report": report_for_type(t).to_dict(),
            "input_kind": "balanced", "type": t.to_dict()}, None


def _run_enumerate(payload: dict) -> tuple[dict, bool | None]:
    t = _balanced_type(payload, "")
    cap = payload.get("cap", DEFAULT_CAP)
    _require(isinstance(cap, int) and cap > 0, "cap", "positive integer required")
    try:
        fams = enumerate_symmetries(t, cap=cap)
    except Exception as exc:
        raise InputError("input", str(exc)) from exc
    results: dict = {"count": len(fams), "type": t.to_dict()}
    if payload.get("classes"):
        classes = canonical_classes(fams)
        results["classes"] = [[s.to_dict() for s in cl] for cl in classes]
        results["class_count"] = len(classes)
    else:
        results["symmetries"] = [s.to_dict() for s in fams]
    return results, None


def _run_identities(payload: dict) -> tuple[dict, bool | None]:
    n_max = payload.get("n_max", 10)
    _require(isinstance(n_max, int) and 3 <= n_max <= 16, "n_max",
             "integer in [3, 16] required")
    checks = []
    all_pass = True
    for t in balanced_types_upto(n_max):
        a = identity_exponent_count(t)
        b = identity_partition(t)
        c = identity_critical_gamma(t)
        all_pass = all_pass and a and b and c
        checks.append({
            "type": t.to_dict(),
            "exponent_count": a,
            "partition": b,
            "critical_gamma": c,
        })
    return {"checks": checks, "all_pass": all_pass}, all_pass


def _holder_functions(fn_cfg: Any, fams: list[Symmetry], repetition: int,
                      fallback_seed: int):
    fn_cfg = fn_cfg or {"kind": "random-symmetric"}
    _require(isinstance(fn_cfg, dict) and "kind" in fn_cfg, "functions",
             "expected an object with a 'kind'")
    kind = fn_cfg["kind"]
    if kind == "random-symmetric":
        amplitude = float(fn_cfg.get("amplitude", 1.0))
        base = int(fn_cfg.get("seed", fallback_seed)) + 977 * repetition
        return [random_block_invariant(s, seed=base + 101 * j, amplitude=amplitude)
                for j, s in enumerate(fams)]
    if kind == "extremal":
        _require("gamma" in fn_cfg and "trunc" in fn_cfg, "functions",
                 "extremal functions need gamma and trunc")
        params = ExtremalParams(gamma=float(fn_cfg["gamma"]), trunc=float(fn_cfg["trunc"]))
        return [extremal_function(s, params) for s in fams]
    if kind == "constant":
        value = float(fn_cfg.get("value", 1.0))
        return [constant_integrand(s.n, value, tag=s) for s in fams]
    raise InputError("functions.kind", f"unknown kind {kind!r}")


def _run_verify_holder(payload: dict) -> tuple[dict, bool | None]:
    quad = _quad_config(payload.get("quad"), "quad")
    if "type" in payload:
        t = _balanced_type(payload["type"], "type")
        fams = enumerate_symmetries(t)
        type_label = f"{t.n},{list(t.lengths)}"
    else:
        fams = _family_from_payload(payload)
        type_label = "family"
    exps = per_function_exponents(fams)
    if "ps" in payload:
        ps = payload["ps"]
        _require(isinstance(ps, list) and len(ps) == len(fams), "ps",
                 f"expected {len(fams)} exponents")
        ps = [float(p) for p in ps]
    else:
        p = payload.get("p", max(exps))
        ps = [float(p)] * len(fams)
    count = payload.get("count", 1)
    _require(isinstance(count, int) and 1 <= count <= 1000, "count",
             "integer in [1, 1000] required")
    records = []
    ok = True
    for rep in range(count):
        fs = _holder_functions(payload.get("functions"), fams,
                               repetition=rep, fallback_seed=quad.seed)
        try:
            rec = holder_verify(fams, fs, ps, quad)
        except ValueError as exc:
            raise InputError("ps", str(exc)) from exc
        ok = ok and rec.passed
        records.append(rec)
    return {
        "type_label": type_label,
        "records": [r.to_dict() for r in records],
        "all_pass": ok,
    }, ok


def _run_verify_sharpness(payload: dict) -> tuple[dict, bool | None]:
    t = _balanced_type(payload.get("type"), "type")
    _require("p" in payload, "p", "exponent p required")
    p = float(payload["p"])
    quad = _quad_config(payload.get("quad"), "quad")
    eps_grid = _grid(payload.get("eps_grid"), "eps_grid", default_eps_grid(),
                     decreasing=True)
    gamma = payload.get("gamma")
    cap = payload.get("cap", DEFAULT_CAP)
    try:
        report = sharpness_experiment(
            t, p, quad, eps_grid=eps_grid,
            gamma=None if gamma is None else float(gamma), cap=cap)
    except ValueError as exc:
        raise InputError("input", str(exc)) from exc
    return {"report": report.to_dict(), "type": t.to_dict()}, report.passed


def _run_verify_local(payload: dict) -> tuple[dict, bool | None]:
    if "type" in payload:
        t = _balanced_type(payload["type"], "type")
        fams = enumerate_symmetries(t)
    else:
        fams = _family_from_payload(payload)
    exps = per_function_exponents(fams)
    eta = float(payload.get("eta", 0.1))
    _require(eta > 0, "eta", "positive eta required")
    quad = _quad_config(payload.get("quad"), "quad")
    r_grid = _grid(payload.get("r_grid"), "r_grid", default_r_grid(),
                   decreasing=False)
    report = local_growth_experiment(fams, exps, eta, r_grid, quad)
    # the growth bound caps the admissible slope at delta
    passed = report.fitted_slope <= float(report.delta_target) + 3 * report.slope_stderr
    window = payload.get("slope_window")
    if window is not None:
        _require(isinstance(window, list) and len(window) == 2, "slope_window",
                 "expected [lo, hi]")
        passed = passed and window[0] <= report.fitted_slope <= window[1]
    return {"report": report.to_dict(), "passed": passed}, passed


_HANDLERS = {
    "decompose": _run_decompose,
    "exponents": _run_exponents,
    "enumerate": _run_enumerate,
    "identities": _run_identities,
    "verify-holder": _run_verify_holder,
    "verify-sharpness": _run_verify_sharpness,
    "verify-local": _run_verify_local,
}


def run(scenario: Scenario) -> RunRecord:
    """Dispatch a validated scenario and wrap the results."""
    if scenario.mode not in _HANDLERS:
        raise InputError("mode", f"unknown mode {scenario.mode!r}")
    start = time.perf_counter()
    results, passed = _HANDLERS[scenario.mode](scenario.payload)
    return RunRecord(
        scenario=scenario,
        tool_version=__version__,
        rng_algorithm=RNG_ALGORITHM,
        wall_time_s=time.perf_counter() - start,
        results=results,
        passed=passed,
    )


# --- CSV ------------------------------------------------------------------------


def emit_csv(record: RunRecord, path: str) -> None:
    """Write the series data of a record as RFC 4180 CSV (header always)."""
    mode = record.scenario.mode
    results = record.results
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        if mode == "verify-sharpness":
            writer.writerow(["eps", "lhs", "lhs_stderr", "pass"])
            rep = results["report"]
            for eps, est in zip(rep["eps_grid"], rep["lhs"]):
                writer.writerow([repr(eps), repr(est["value"]),
                                 repr(est["stderr"]), rep["passed"]])
        elif mode == "verify-local":
            writer.writerow(["R", "lhs", "lhs_stderr"])
            rep = results["report"]
            for r, est in zip(rep["r_grid"], rep["lhs"]):
                writer.writerow([repr(r), repr(est["value"]), repr(est["stderr"])])
        elif mode == "verify-holder":
            writer.writerow(["type", "p", "LHS", "RHS", "margin", "pass"])
            for rec in results["records"]:
                writer.writerow([
                    results["type_label"],
                    rec["ps"][0] if rec["ps"] else "",
                    repr(rec["lhs"]["value"]),
                    repr(rec["rhs_value"]),
                    repr(rec["margin"]),
                    rec["passed"],
                ])
        else:
            raise InputError("csv", f"mode {mode!r} produces no series data")


# --- entry point -----------------------------------------------------------------


def _load_payload(arg: str | None) -> Any:
    if arg is None:
        return {}
    try:
        if arg == "-":
            return json.load(sys.stdin)
        with open(arg) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError("scenario", f"no such file: {arg}")
    except json.JSONDecodeError as exc:
        raise InputError("scenario", f"invalid JSON: {exc}")


def _summary(record: RunRecord) -> str:
    mode = record.scenario.mode
    res = record.results
    if mode == "decompose":
        sym = res["symmetry"]
        return f"blocks {sym['alphas']} free {sym['r']}"
    if mode == "exponents":
        rep = res["report"]
        delta = rep["delta"]
        return (f"p={rep['p_uniform']} j_count={rep['j_count']} "
                f"delta={delta['num']}/{delta['den']} overcount={rep['overcount']}")
    if mode == "enumerate":
        extra = f" classes={res['class_count']}" if "class_count" in res else ""
        return f"count={res['count']}{extra}"
    if mode == "identities":
        return f"checked {len(res['checks'])} types, all_pass={res['all_pass']}"
    if mode == "verify-holder":
        return f"{len(res['records'])} run(s), all_pass={res['all_pass']}"
    if mode == "verify-sharpness":
        rep = res["report"]
        return (f"slope={rep['slope']:.4g} (+-{rep['slope_stderr']:.2g}) "
                f"rhs_converged={rep['rhs_converged']} passed={rep['passed']}")
    if mode == "verify-local":
        rep = res["report"]
        tgt = rep["delta_target"]
        return (f"slope={rep['fitted_slope']:.4g} (+-{rep['slope_stderr']:.2g}) "
                f"target={tgt['num']}/{tgt['den']}")
    return ""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spherebl",
        description="sharp product inequalities on spheres: exponents, "
                    "enumeration and Monte Carlo verification")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode in MODES:
        sp = sub.add_parser(mode)
        sp.add_argument("scenario", nargs="?", default=None,
                        help="scenario JSON file ('-' for stdin)")
        sp.add_argument("--seed", type=int, default=None,
                        help="override the quadrature seed")
        sp.add_argument("--samples", type=int, default=None,
                        help="override the sample count")
        sp.add_argument("--json", action="store_true",
                        help="print the full run record as JSON")
        sp.add_argument("--csv", metavar="PATH", default=None,
                        help="write series data as CSV")
        if mode == "decompose":
            sp.add_argument("--close", action="store_true",
                            help="apply the Lie closure before decomposing")
        if mode == "enumerate":
            sp.add_argument("--classes", action="store_true",
                            help="group symmetries differing by block order")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload = _load_payload(args.scenario)
        if isinstance(payload, dict):
            if getattr(args, "close", False):
                payload["close"] = True
            if getattr(args, "classes", False):
                payload["classes"] = True
            if args.seed is not None or args.samples is not None:
                quad = dict(payload.get("quad") or {})
                if args.seed is not None:
                    quad["seed"] = args.seed
                if args.samples is not None:
                    quad["samples"] = args.samples
                payload["quad"] = quad
        record = run(Scenario(mode=args.mode, payload=payload))
        if args.csv:
            emit_csv(record, args.csv)
        if args.json:
            json.dump(record.to_dict(), sys.stdout, indent=2)
            sys.stdout.write("\n")
        else:
            print(f"{args.mode}: {_summary(record)}")
        if record.passed is None:
            return 0
        return 0 if record.passed else 2
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
