"""Command-line surface: scenario-driven curves, fits, presets, verification.

Subcommands
-----------
pdf      tabulate a branch or sum density to CSV
ber      compute a BER curve (mc | exact | foxh | mgf | asymptotic) to CSV
fit      extract (kappa1, kappa2) from a curve CSV
presets  list the shipped measurement presets
verify   run the oracle cross-check suite, printing PASS/FAIL per invariant

Scenario files are strict JSON: unknown keys are rejected with the offending
path, SNR is given in dB externally and converted to linear Upsilon = 10^(dB/10).
Outputs are byte-stable: identical inputs (including seed) produce identical
files, floats are serialized with 17 significant digits, and every `ber` run
writes a JSON sidecar with the scenario echo, library version, and seed.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .ber_analytic import (
    ber_alpha_mu_gen_asymptote,
    ber_alpha_mu_gen_foxh,
    ber_alpha_mu_iid_asymptote,
    ber_exact_quadrature,
    ber_mg_asymptote,
    ber_mg_mgf,
)
from .channel_models import (
    AlphaMuA,
    AlphaMuB,
    LinkBudget,
    MixtureGamma,
    Scenario,
    alpha_mu_a_preset,
    alpha_mu_b_preset,
    envelope_pdf,
    list_presets,
    mg_preset,
    power_pdf,
)
from .diversity_fit import compare_to_theory, fit_power_law
from .errors import AccuracyError, DomainError, EvaluationError
from .mg_laplace import (
    SquaredMgSnr,
    laplace_high_snr,
    laplace_numeric_oracle,
    snr_pdf_mg,
)
from .monte_carlo import BerCurve, BerPoint, simulate_mrc_ber
from .sum_dist import (
    IidAlphaMuSum,
    convolution_oracle,
    iid_sum_power_pdf,
    inid_sum_power_pdf,
    solve_mixture_nodes,
)

CSV_HEADER = "snr_db,upsilon,ber,se,method,kappa1,kappa2"


class ScenarioError(ValueError):
    """Malformed scenario document; message carries the offending path."""


def _fmt(x: float) -> str:
    return f"{x:.17g}"


# --- strict scenario parsing -------------------------------------------------

def _pop(d: dict, key: str, path: str, required: bool = False, default=None):
    if key in d:
        return d.pop(key)
    if required:
        raise ScenarioError(f"{path}: missing required field '{key}'")
    return default


def _reject_unknown(d: dict, path: str):
    if d:
        raise ScenarioError(f"{path}: unknown field(s) {sorted(d)}")


def _parse_branch(node, idx: int):
    path = f"branches[{idx}]"
    if not isinstance(node, dict):
        raise ScenarioError(f"{path}: expected an object")
    node = dict(node)
    copies = int(_pop(node, "copies", path, default=1))
    if copies < 1:
        raise ScenarioError(f"{path}: copies must be >= 1")
    preset = _pop(node, "preset", path)
    kind = _pop(node, "type", path)
    if preset is not None:
        if str(preset).startswith("mg_"):
            if kind not in (None, "mixture_gamma"):
                raise ScenarioError(f"{path}: preset '{preset}' is mixture_gamma")
            model = mg_preset(str(preset))
        elif kind == "alpha_mu_b":
            model = alpha_mu_b_preset(str(preset),
                                      x_mean=float(_pop(node, "x_mean", path, default=1.0)))
        else:
            model = alpha_mu_a_preset(str(preset),
                                      z_hat=float(_pop(node, "z_hat", path, default=1.0)))
        _reject_unknown(node, path)
        return [model] * copies
    if kind == "alpha_mu_a":
        model = AlphaMuA(alpha=float(_pop(node, "alpha", path, required=True)),
                         mu=float(_pop(node, "mu", path, required=True)),
                         z_hat=float(_pop(node, "z_hat", path, default=1.0)))
    elif kind == "alpha_mu_b":
        model = AlphaMuB(alpha=float(_pop(node, "alpha", path, required=True)),
                         mu=float(_pop(node, "mu", path, required=True)),
                         x_mean=float(_pop(node, "x_mean", path, default=1.0)))
    elif kind == "mixture_gamma":
        comps = _pop(node, "components", path, required=True)
        model = MixtureGamma(components=tuple(tuple(map(float, c)) for c in comps))
    else:
        raise ScenarioError(f"{path}: unknown branch type {kind!r}")
    _reject_unknown(node, path)
    return [model] * copies


def _parse_link(node) -> LinkBudget:
    if node is None:
        return LinkBudget()
    if not isinstance(node, dict):
        raise ScenarioError("link: expected an object")
    node = dict(node)
    kwargs = {}
    for key in ("f", "d", "kabs", "rho", "pt", "gt", "gr",
                "temperature", "bandwidth"):
        if key in node:
            kwargs[key] = float(node.pop(key))
    if "normalized" in node:
        kwargs["normalized"] = bool(node.pop("normalized"))
    _reject_unknown(node, "link")
    return LinkBudget(**kwargs)


def _parse_grid(node) -> tuple[float, ...]:
    if not isinstance(node, dict):
        raise ScenarioError("snr_db: expected {start, stop, step}")
    node = dict(node)
    start = float(_pop(node, "start", "snr_db", required=True))
    stop = float(_pop(node, "stop", "snr_db", required=True))
    step = float(_pop(node, "step", "snr_db", required=True))
    _reject_unknown(node, "snr_db")
    if step <= 0 or stop < start:
        raise ScenarioError("snr_db: needs step > 0 and stop >= start")
    count = int(round((stop - start) / step)) + 1
    db = [start + step * i for i in range(count)]
    return tuple(10.0 ** (v / 10.0) for v in db)


def load_scenario(path: str):
    """Parse a scenario file into (Scenario, mc settings dict, raw echo)."""
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(raw, dict):
        raise ScenarioError("scenario root must be an object")
    echo = json.loads(json.dumps(raw))
    doc = dict(raw)
    modulation = _pop(doc, "modulation", "scenario", default="bpsk")
    if modulation != "bpsk":
        raise ScenarioError(f"modulation: only 'bpsk' is supported, got {modulation!r}")
    g = float(_pop(doc, "g", "scenario", default=0.5))
    link = _parse_link(_pop(doc, "link", "scenario"))
    branches_node = _pop(doc, "branches", "scenario", required=True)
    if not isinstance(branches_node, list) or not branches_node:
        raise ScenarioError("branches: expected a non-empty list")
    branches: list = []
    for i, b in enumerate(branches_node):
        branches.extend(_parse_branch(b, i))
    grid = _parse_grid(_pop(doc, "snr_db", "scenario", required=True))
    mc_node = _pop(doc, "mc", "scenario", default={})
    if not isinstance(mc_node, dict):
        raise ScenarioError("mc: expected an object")
    mc_node = dict(mc_node)
    mc = {
        "trials": int(_pop(mc_node, "trials", "mc", default=1_000_000)),
        "seed": int(_pop(mc_node, "seed", "mc", default=0)),
        "method": str(_pop(mc_node, "method", "mc", default="conditional_q")),
    }
    _reject_unknown(mc_node, "mc")
    _reject_unknown(doc, "scenario")
    try:
        scenario = Scenario(branches=tuple(branches), link=link, g=g,
                            snr_grid=grid)
    except DomainError as exc:
        raise ScenarioError(f"scenario: {exc}") from exc
    return scenario, mc, echo


# --- sum-density construction ------------------------------------------------

def _family(scenario: Scenario) -> str:
    kinds = {type(b) for b in scenario.branches}
    if kinds == {AlphaMuA}:
        return "alpha_mu_a"
    if kinds == {AlphaMuB}:
        return "alpha_mu_b"
    if kinds == {MixtureGamma}:
        return "mixture_gamma"
    raise ScenarioError("branches: mixing fading families is not supported")


def _sum_density(scenario: Scenario):
    """Callable density of ||h||^2 for the scenario's branch set."""
    fam = _family(scenario)
    nu = scenario.nu
    if fam == "alpha_mu_a":
        if len(set(scenario.branches)) != 1:
            raise ScenarioError("alpha_mu_a sums require identical branches")
        model = scenario.branches[0]
        s = IidAlphaMuSum.build(model, nu, scenario.l_branches)
        return lambda y: iid_sum_power_pdf(s, y)
    if fam == "alpha_mu_b":
        nodes = solve_mixture_nodes(scenario.branches, nu)
        return lambda y: inid_sum_power_pdf(nodes, y)
    pdfs = [lambda y, m=m: power_pdf(m, nu, y) for m in scenario.branches]
    if len(pdfs) == 1:
        return pdfs[0]
    table = convolution_oracle(pdfs)
    return table


# --- curve computation -------------------------------------------------------

def _compute_curve(scenario: Scenario, method: str, mc: dict) -> BerCurve:
    grid = np.array(scenario.snr_grid)
    fam = _family(scenario)
    meta: dict = {}

    if method == "mc":
        return simulate_mrc_ber(scenario, trials=mc["trials"], seed=mc["seed"],
                                method=mc["method"])

    if method == "exact":
        if fam == "mixture_gamma":
            bers = [ber_mg_mgf(scenario.branches, scenario.nu,
                               scenario.l_branches, u, g=scenario.g,
                               mode="exact") for u in grid]
        else:
            pdf = _sum_density(scenario)
            bers = [ber_exact_quadrature(pdf, u, g=scenario.g) for u in grid]
        points = [BerPoint(float(u), float(p), 0.0, 1)
                  for u, p in zip(grid, bers)]
        return BerCurve(tuple(points), seed=0, method="exact", metadata=meta)

    if method == "foxh":
        if fam != "alpha_mu_b":
            raise ScenarioError("method 'foxh' applies to alpha_mu_b branches")
        nodes = solve_mixture_nodes(scenario.branches, scenario.nu)
        points = [BerPoint(float(u),
                           float(min(ber_alpha_mu_gen_foxh(nodes, u), 0.5)),
                           0.0, 1) for u in grid]
        return BerCurve(tuple(points), seed=0, method="foxh", metadata=meta)

    if method == "mgf":
        if fam != "mixture_gamma":
            raise ScenarioError("method 'mgf' applies to mixture_gamma branches")
        points = [BerPoint(float(u),
                           float(ber_mg_mgf(scenario.branches, scenario.nu,
                                            scenario.l_branches, u,
                                            g=scenario.g, mode="exact")),
                           0.0, 1) for u in grid]
        return BerCurve(tuple(points), seed=0, method="mgf", metadata=meta)

    if method == "asymptotic":
        if fam == "alpha_mu_a":
            model = scenario.branches[0]
            if len(set(scenario.branches)) != 1:
                raise ScenarioError("alpha_mu_a asymptote requires identical branches")
            vals, law = ber_alpha_mu_iid_asymptote(
                model, scenario.nu, scenario.l_branches, grid, g=scenario.g)
        elif fam == "alpha_mu_b":
            nodes = solve_mixture_nodes(scenario.branches, scenario.nu)
            vals, law = ber_alpha_mu_gen_asymptote(nodes, grid)
        else:
            vals, law = ber_mg_asymptote(scenario.branches, scenario.nu, grid,
                                         g=scenario.g, dominant_only=True)
        meta = {"kappa1": law.kappa1, "kappa2": law.kappa2,
                "source": law.source.value}
        points = [BerPoint(float(u), float(min(v, 1.0)), 0.0, 1)
                  for u, v in zip(grid, np.atleast_1d(vals))]
        return BerCurve(tuple(points), seed=0, method="asymptotic", metadata=meta)

    raise ScenarioError(f"unknown ber method {method!r}")


def write_curve_csv(curve: BerCurve, path: str):
    k1 = curve.metadata.get("kappa1")
    k2 = curve.metadata.get("kappa2")
    lines = [CSV_HEADER]
    for p in curve.points:
        snr_db = 10.0 * math.log10(p.upsilon)
        kc1 = _fmt(k1) if (k1 is not None and curve.method == "asymptotic") else ""
        kc2 = _fmt(k2) if (k2 is not None and curve.method == "asymptotic") else ""
        lines.append(",".join([
            _fmt(snr_db), _fmt(p.upsilon), _fmt(p.ber), _fmt(p.se),
            curve.method, kc1, kc2,
        ]))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def read_curve_csv(path: str) -> BerCurve:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ScenarioError(f"{path}: expected header '{CSV_HEADER}'")
    points = []
    method = "unknown"
    for ln in lines[1:]:
        cols = ln.split(",")
        if len(cols) != 7:
            raise ScenarioError(f"{path}: malformed row {ln!r}")
        _, u, ber, se, method, _, _ = cols
        points.append(BerPoint(float(u), float(ber), float(se), 1))
    return BerCurve(tuple(points), seed=0, method=method)


# --- subcommands -------------------------------------------------------------

def _cmd_pdf(args) -> int:
    scenario, _, _ = load_scenario(args.scenario)
    if args.branch is not None:
        model = scenario.branches[args.branch]
        if args.envelope:
            pdf = lambda y: envelope_pdf(model, y)
        else:
            pdf = lambda y: power_pdf(model, scenario.nu, y)
    else:
        pdf = _sum_density(scenario)
    y = np.linspace(args.ymin, args.ymax, args.points)
    vals = np.array([float(pdf(v)) for v in y])
    lines = ["y,pdf"] + [f"{_fmt(a)},{_fmt(b)}" for a, b in zip(y, vals)]
    _emit(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_ber(args) -> int:
    scenario, mc, echo = load_scenario(args.scenario)
    curve = _compute_curve(scenario, args.method, mc)
    write_curve_csv(curve, args.out)
    sidecar = {
        "scenario": echo,
        "method": args.method,
        "seed": curve.seed,
        "version": __version__,
        "metadata": {k: v for k, v in curve.metadata.items()},
    }
    with open(args.out + ".json", "w") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {args.out} ({len(curve.points)} points, method={args.method})")
    return 0


def _cmd_fit(args) -> int:
    curve = read_curve_csv(args.csv)
    window = None
    if args.window_lo is not None or args.window_hi is not None:
        if args.window_lo is None or args.window_hi is None:
            raise ScenarioError("--window-lo and --window-hi must be given together")
        window = (args.window_lo, args.window_hi)
    report = fit_power_law(curve, window=window)
    if args.theory_kappa2 is not None:
        from .ber_analytic import AsymptoteLaw, AsymptoteSource
        theory = AsymptoteLaw(kappa1=1.0, kappa2=args.theory_kappa2,
                              source=AsymptoteSource.FITTED)
        report = compare_to_theory(report, theory, tolerance=args.tol)
    out = {
        "kappa1": report.law.kappa1,
        "kappa2": report.law.kappa2,
        "r_squared": report.r_squared,
        "window": list(report.window),
        "excluded_zero_points": report.excluded_zero_points,
    }
    if report.relative_gap is not None:
        out["theory_kappa2"] = report.theory.kappa2
        out["relative_gap"] = report.relative_gap
        out["passed"] = report.passed
    _emit(args.out, json.dumps(out, indent=2, sort_keys=True) + "\n")
    return 0 if report.passed is not False else 1


def _cmd_presets(args) -> int:
    _emit(args.out, json.dumps(list_presets(), indent=2, sort_keys=True) + "\n")
    return 0


def _check(name: str, ok: bool, detail: str) -> bool:
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    return ok


def _cmd_verify(args) -> int:
    from scipy import integrate

    ok = True
    # Density normalization.
    model = alpha_mu_a_preset("indoor_1")
    mass, _ = integrate.quad(lambda y: power_pdf(model, 1.0, y), 0, np.inf)
    ok &= _check("alpha-mu power density normalizes", abs(mass - 1) < 1e-6,
                 f"mass={mass:.9f}")
    mg = mg_preset("mg_config1")
    mass, _ = integrate.quad(lambda y: envelope_pdf(mg, y), 0, np.inf, limit=200)
    ok &= _check("MG envelope density normalizes", abs(mass - 1) < 1e-6,
                 f"mass={mass:.9f}")

    # Fox-H route vs quadrature (form B, L=2).
    branches = [alpha_mu_b_preset("indoor_1")] * 2
    nodes = solve_mixture_nodes(branches, 1.0)
    u = 40.0
    p_h = ber_alpha_mu_gen_foxh(nodes, u)
    p_q = ber_exact_quadrature(lambda y: inid_sum_power_pdf(nodes, y), u, g=0.5)
    rel = abs(p_h - p_q) / p_q
    ok &= _check("Fox-H equals quadrature (form B, L=2)", rel < 1e-4,
                 f"rel={rel:.3e}")

    # Series vs convolution (form A, L=2) at a few points.
    a_model = alpha_mu_a_preset("indoor_1")
    s = IidAlphaMuSum.build(a_model, 1.0, 2)
    conv = convolution_oracle([lambda y: power_pdf(a_model, 1.0, y)] * 2)
    ys = np.linspace(0.2, 3.0, 9)
    sup = max(abs(iid_sum_power_pdf(s, y) - conv(y)) / conv(y) for y in ys)
    ok &= _check("series matches convolution (form A, L=2)", sup < 0.01,
                 f"sup rel={sup:.3e}")

    # Appendix-style Laplace: high-SNR vs numeric oracle.
    snr = SquaredMgSnr.from_model(mg, 1e6, 1.0)
    lap_h = float(laplace_high_snr(snr, 1.0))
    lap_n = laplace_numeric_oracle(lambda y: snr_pdf_mg(snr, y), 1.0)
    rel = abs(lap_h - lap_n) / lap_n
    ok &= _check("high-SNR Laplace within 1% at Upsilon=1e6", rel < 0.01,
                 f"rel={rel:.3e}")

    # MG i.n.i.d. diversity exponent (Configs 1+2).
    _, law = ber_mg_asymptote([mg_preset("mg_config1"), mg_preset("mg_config2")],
                              1.0, 1e6, dominant_only=True)
    expect = 0.5 * (min(mg_preset("mg_config1").shapes)
                    + min(mg_preset("mg_config2").shapes))
    ok &= _check("MG i.n.i.d. Configs 1+2 diversity exponent",
                 abs(law.kappa2 - expect) < 1e-9,
                 f"kappa2={law.kappa2:.9f}")
    return 0 if ok else 1


def _emit(path: str | None, text: str):
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thzdiv",
        description="BER of MRC diversity receivers over THz fading channels")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pdf", help="tabulate a density to CSV")
    p.add_argument("--scenario", required=True)
    p.add_argument("--branch", type=int, default=None,
                   help="branch index (default: the L-branch sum density)")
    p.add_argument("--envelope", action="store_true",
                   help="envelope density instead of power density")
    p.add_argument("--ymin", type=float, default=1e-3)
    p.add_argument("--ymax", type=float, default=10.0)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_pdf)

    p = sub.add_parser("ber", help="compute a BER curve to CSV (+JSON sidecar)")
    p.add_argument("--scenario", required=True)
    p.add_argument("--method", required=True,
                   choices=["mc", "exact", "foxh", "mgf", "asymptotic"])
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_ber)

    p = sub.add_parser("fit", help="fit a power law to a curve CSV")
    p.add_argument("--csv", required=True)
    p.add_argument("--window-lo", type=float, default=None)
    p.add_argument("--window-hi", type=float, default=None)
    p.add_argument("--theory-kappa2", type=float, default=None)
    p.add_argument("--tol", type=float, default=0.05)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("presets", help="list shipped measurement presets")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_presets)

    p = sub.add_parser("verify", help="run the oracle cross-check suite")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"scenario error: {exc}", file=sys.stderr)
        return 1
    except AccuracyError as exc:
        print(f"numeric accuracy failure: {exc}", file=sys.stderr)
        return 1
    except (DomainError, EvaluationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
