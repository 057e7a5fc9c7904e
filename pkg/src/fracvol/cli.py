"""Command-line front end.

Every run writes a manifest holding the resolved configuration, the seeds
and the SHA-256 of each artifact.  ``fracvol replay MANIFEST`` re-executes
the run and checks that the artifacts are byte-identical.

Exit codes: 0 success, 1 check failed (verify-modes threshold, replay
mismatch), 2 configuration error, 3 numerical or data error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from ._rng import derive_seed, generator
from .errors import (ConfigurationError, DataError, DomainError, FracVolError, GenerationError,
                     NumericalError)
from .fbm import generate_fbm, generate_fbm_cholesky
from .io import (load_volatility_csv, read_json, write_json, write_scaling_report,
                 write_series_csv)
from .model import FvmParams, simulate_fvm
from .pricing import (OptionSpec, PdeConfig, mode_constants, price_black_scholes,
                      price_monte_carlo, price_pde, price_smile, verify_mode_ode)
from .scaling import ScalingConfig, analyze_volatility

EXIT_OK, EXIT_CHECK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3


class CheckFailed(Exception):
    pass


def _sha256(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _load_json_arg(path, what):
    try:
        return read_json(path)
    except FileNotFoundError:
        raise ConfigurationError(f"{what} file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{what} file {path} is not valid JSON: {exc}") from None


def _params(cfg):
    if not isinstance(cfg, dict):
        raise ConfigurationError("params must be a JSON object")
    return FvmParams.from_dict(cfg)


def _write_manifest(path, command, config, seeds, artifacts, base):
    doc = {
        "tool": "fracvol",
        "version": __version__,
        "command": command,
        "config": config,
        "seeds": seeds,
        "artifacts": [{"path": str(Path(a).relative_to(base)), "sha256": _sha256(a)}
                      for a in artifacts],
    }
    write_json(path, doc)
    return doc


def _file_outputs(out):
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    return out, out.with_name(out.name + ".manifest.json")


# --- subcommands -----------------------------------------------------------
# Each ``run_*`` takes the resolved config dict so replay can call it directly.

def run_gen_fbm(cfg, out):
    out, manifest = _file_outputs(out)
    gen = generate_fbm_cholesky if cfg["method"] == "cholesky" else generate_fbm
    path = gen(cfg["hurst"], cfg["n"], cfg["step"], cfg["seed"])
    write_series_csv(out, {"t": path.times, "value": path.values})
    return _write_manifest(manifest, "gen-fbm", cfg, [cfg["seed"]], [out], out.parent)


def run_simulate(cfg, out):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    params = _params(cfg["params"])
    dt = params.delta if cfg["dt"] is None else cfg["dt"]
    sv, sp = derive_seed(cfg["seed"], 0), derive_seed(cfg["seed"], 1)
    path = simulate_fvm(params, cfg["s0"], cfg["n"], dt, sv, sp)
    a = write_series_csv(out / "sigma.csv", {"t": path.vol.times, "sigma": path.vol.sigmas})
    b = write_series_csv(out / "price.csv", {"t": path.times, "price": path.prices})
    c = write_json(out / "params.json", params.to_dict())
    return _write_manifest(out / "manifest.json", "simulate", cfg, [cfg["seed"], sv, sp],
                           [a, b, c], out)


def run_analyze(cfg, out):
    out, manifest = _file_outputs(out)
    src = Path(cfg["input"])
    if not src.is_file():
        raise ConfigurationError(f"input file not found: {src}")
    ds = load_volatility_csv(src, unit=cfg["unit"])
    delta = ds.delta if cfg["delta"] is None else cfg["delta"]
    config = ScalingConfig(raw_fit=tuple(cfg["raw_fit"]), integrated_fit=tuple(cfg["integrated_fit"]))
    report = analyze_volatility(ds.series, delta=delta, config=config)
    written = write_scaling_report(report, out)
    logs = np.log(ds.series.values)
    resid = np.cumsum(logs)
    idx = np.arange(resid.size)
    resid = resid - np.polyval(np.polyfit(idx, resid, 1), idx)
    written.append(write_series_csv(out.with_name(f"{out.stem}.log_sigma.csv"),
                                    {"t": ds.series.times, "log_sigma": logs}))
    written.append(write_series_csv(out.with_name(f"{out.stem}.residual.csv"),
                                    {"t": ds.series.times, "R": resid}))
    cfg = dict(cfg, input_sha256=_sha256(src))
    return _write_manifest(manifest, "analyze", cfg, [], written, out.parent)


def run_price(cfg, out):
    out, manifest = _file_outputs(out)
    params = _params(cfg["params"])
    option = OptionSpec.from_dict(cfg["option"])
    conf = dict(cfg["config"])
    mc_conf = dict(conf.pop("mc", {}))
    sigma0 = float(conf.pop("sigma0", params.theta))
    spot = float(cfg["option"].get("spot", option.strike))
    method = cfg["method"]
    pde_conf = PdeConfig.from_dict(conf)
    doc = {"schema_version": 1, "method": method, "params": params.to_dict(),
           "option": option.to_dict(), "config": pde_conf.to_dict(), "spot": spot,
           "sigma0": sigma0, "seed": cfg["seed"]}
    if option.payoff_kind == "call_logmoneyness":
        doc["note"] = "log-moneyness payoff max(log(S/K), 0)"
    artifacts = [out]
    if method in ("pde", "both"):
        surf = price_pde(params, option, pde_conf)
        grid_ok = bool(np.all(np.diff(surf.values, axis=1) >= -1e-9)) \
            if option.payoff_kind != "put_standard" else None
        doc["pde"] = {"price": surf.price(spot, sigma0), "scheme": pde_conf.scheme,
                      "provenance": surf.provenance,
                      "diagnostics": {"min_value": float(surf.values.min()),
                                      "monotone_in_s": grid_ok}}
        if cfg.get("surface"):
            p = out.with_name(f"{out.stem}.surface.csv")
            rows = np.array(list(surf.rows()))
            write_series_csv(p, {"x": rows[:, 0], "sigma": rows[:, 1], "value": rows[:, 2]})
            artifacts.append(p)
    if method in ("mc", "both"):
        res = price_monte_carlo(params, option, spot, pde_conf.r, int(mc_conf.get("n_paths", 100_000)),
                                mc_conf.get("dt"), cfg["seed"], nu=pde_conf.nu,
                                antithetic=bool(mc_conf.get("antithetic", True)),
                                threads=cfg.get("threads", 1))
        doc["mc"] = res.to_dict()
    if option.payoff_kind == "call_standard":
        doc["black_scholes"] = price_black_scholes(spot, option.strike, pde_conf.r, sigma0,
                                                   option.maturity)
    if method == "both":
        diff = abs(doc["pde"]["price"] - doc["mc"]["price"])
        doc["discrepancy"] = {"abs_diff": diff, "ci_halfwidth": doc["mc"]["ci_halfwidth"],
                              "flag": bool(diff > doc["mc"]["ci_halfwidth"])}
    if cfg.get("smile"):
        if option.payoff_kind != "call_standard":
            raise ConfigurationError("smile export needs payoff_kind call_standard")
        rows = price_smile(params, cfg["smile"], option.maturity, pde_conf, spot, sigma0)
        p = out.with_name(f"{out.stem}.smile.csv")
        arr = np.array(rows)
        write_series_csv(p, {"strike": arr[:, 0], "price": arr[:, 1], "implied_vol": arr[:, 2]})
        artifacts.append(p)
    write_json(out, doc)
    seeds = [cfg["seed"]] if method != "pde" else []
    return _write_manifest(manifest, "price", cfg | {"threads": None}, seeds, artifacts, out.parent)


def run_verify_modes(cfg, out):
    out, manifest = _file_outputs(out)
    params = _params(cfg["params"])
    rng = generator(cfg["seed"])
    grid = np.linspace(cfg["sigma_min"], cfg["sigma_max"], cfg["sigma_count"])
    names = ["rho", "phi", "chi", "xi_re", "xi_im", "zeta_re", "zeta_im", "max_residual"]
    rows = {n: [] for n in names}
    for _ in range(cfg["n_modes"]):
        rho = float(rng.uniform(-cfg["rho_max"], cfg["rho_max"]))
        phi = float(rng.uniform(-cfg["phi_max"], cfg["phi_max"]))
        mc = mode_constants(rho, phi, params, cfg["r"], cfg["nu"])
        res = verify_mode_ode(mc, params, cfg["r"], cfg["nu"], rho, phi, grid)
        for n, v in zip(names, (rho, phi, mc.chi, mc.xi.real, mc.xi.imag, mc.zeta.real,
                                mc.zeta.imag, res)):
            rows[n].append(v)
    write_series_csv(out, rows)
    doc = _write_manifest(manifest, "verify-modes", cfg, [cfg["seed"]], [out], out.parent)
    worst = max(rows["max_residual"])
    if not worst < cfg["threshold"]:
        raise CheckFailed(f"max mode residual {worst:.3e} is not below {cfg['threshold']:g}")
    return doc


RUNNERS = {"gen-fbm": run_gen_fbm, "simulate": run_simulate, "analyze": run_analyze,
           "price": run_price, "verify-modes": run_verify_modes}


def run_replay(manifest_path, out, threads=1):
    """Re-run a manifest into ``out`` and compare artifact hashes."""
    man = _load_json_arg(manifest_path, "manifest")
    command = man.get("command")
    if command not in RUNNERS:
        raise ConfigurationError(f"manifest has unknown command {command!r}")
    cfg = dict(man["config"])
    cfg.pop("input_sha256", None)
    if command == "price":
        cfg["threads"] = threads
    artifacts = man["artifacts"]
    if command == "simulate":
        target = Path(out)
        base = target
    else:
        target = Path(out) / artifacts[0]["path"]
        base = target.parent
    new = RUNNERS[command](cfg, target)
    old = {a["path"]: a["sha256"] for a in artifacts}
    fresh = {a["path"]: a["sha256"] for a in new["artifacts"]}
    bad = sorted(p for p in old if fresh.get(p) != old[p])
    if bad or set(old) != set(fresh):
        raise CheckFailed(f"replay artifacts differ: {bad or sorted(set(old) ^ set(fresh))}")
    return base


# --- argument parsing ------------------------------------------------------

def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--out", required=True, help="output path")
    p.add_argument("--json-errors", action="store_true",
                   help="print errors to stderr as single-line JSON")
    p.add_argument("--threads", type=int, default=1, help="worker threads for Monte Carlo")
    return p


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="fracvol", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"fracvol {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-fbm", parents=[common], help="sample a fractional Brownian motion path")
    g.add_argument("--hurst", type=float, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--step", type=float, default=1.0)
    g.add_argument("--method", choices=["circulant", "cholesky"], default="circulant")

    s = sub.add_parser("simulate", parents=[common], help="simulate volatility and price paths")
    s.add_argument("--params", required=True)
    s.add_argument("--n", type=int, required=True, help="number of price steps")
    s.add_argument("--dt", type=float, default=None, help="price step (default delta)")
    s.add_argument("--s0", type=float, default=100.0)

    a = sub.add_parser("analyze", parents=[common], help="scaling analysis of a volatility CSV")
    a.add_argument("--input", required=True)
    a.add_argument("--unit", choices=["per_day", "per_year"], default="per_day")
    a.add_argument("--delta", type=float, default=None)
    a.add_argument("--raw-fit", type=int, nargs=2, default=[1, 8], metavar=("LO", "HI"))
    a.add_argument("--integrated-fit", type=int, nargs=2, default=[1, 32], metavar=("LO", "HI"))

    pr = sub.add_parser("price", parents=[common], help="price a European option")
    pr.add_argument("--method", choices=["pde", "mc", "both"], default="pde")
    pr.add_argument("--params", required=True)
    pr.add_argument("--option", required=True)
    pr.add_argument("--config", required=True)
    pr.add_argument("--surface", action="store_true", help="also export the price surface CSV")
    pr.add_argument("--smile", type=float, nargs="+", default=None, metavar="K",
                    help="strikes for a smile CSV")

    v = sub.add_parser("verify-modes", parents=[common], help="check Bessel mode solutions")
    v.add_argument("--params", required=True)
    v.add_argument("--r", type=float, default=0.05)
    v.add_argument("--nu", type=float, default=0.0)
    v.add_argument("--n-modes", type=int, default=20)
    v.add_argument("--rho-max", type=float, default=2.0)
    v.add_argument("--phi-max", type=float, default=4.0)
    v.add_argument("--sigma-min", type=float, default=0.2)
    v.add_argument("--sigma-max", type=float, default=1.0)
    v.add_argument("--sigma-count", type=int, default=17)
    v.add_argument("--threshold", type=float, default=1e-4)

    r = sub.add_parser("replay", help="re-run a manifest and verify byte-identical artifacts")
    r.add_argument("manifest")
    r.add_argument("--out", required=True, help="directory for the re-run")
    r.add_argument("--threads", type=int, default=1)
    r.add_argument("--json-errors", action="store_true")
    return parser


def _resolve(args):
    """Config dict for a parsed command, with JSON inputs inlined."""
    c = args.command
    if c == "gen-fbm":
        return {"hurst": args.hurst, "n": args.n, "step": args.step, "method": args.method,
                "seed": args.seed}
    if c == "simulate":
        return {"params": _load_json_arg(args.params, "params"), "n": args.n, "dt": args.dt,
                "s0": args.s0, "seed": args.seed}
    if c == "analyze":
        return {"input": str(Path(args.input).resolve()), "unit": args.unit, "delta": args.delta,
                "raw_fit": list(args.raw_fit), "integrated_fit": list(args.integrated_fit)}
    if c == "price":
        return {"method": args.method, "params": _load_json_arg(args.params, "params"),
                "option": _load_json_arg(args.option, "option"),
                "config": _load_json_arg(args.config, "config"), "seed": args.seed,
                "surface": args.surface, "smile": args.smile, "threads": args.threads}
    return {"params": _load_json_arg(args.params, "params"), "r": args.r, "nu": args.nu,
            "n_modes": args.n_modes, "rho_max": args.rho_max, "phi_max": args.phi_max,
            "sigma_min": args.sigma_min, "sigma_max": args.sigma_max,
            "sigma_count": args.sigma_count, "threshold": args.threshold, "seed": args.seed}


def _exit_code(exc):
    if isinstance(exc, CheckFailed):
        return EXIT_CHECK
    if isinstance(exc, (ConfigurationError, DomainError, FileNotFoundError, IsADirectoryError)):
        return EXIT_CONFIG
    if isinstance(exc, (DataError, NumericalError, GenerationError, FracVolError)):
        return EXIT_NUMERIC
    if isinstance(exc, (KeyError, TypeError, ValueError)):
        return EXIT_CONFIG
    return EXIT_NUMERIC


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "replay":
            run_replay(args.manifest, args.out, args.threads)
        else:
            cfg = _resolve(args)
            RUNNERS[args.command](cfg, args.out)
    except (Exception, ArithmeticError) as exc:  # noqa: BLE001 - mapped to exit codes
        code = _exit_code(exc)
        if getattr(args, "json_errors", False):
            msg = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
            rows = getattr(exc, "rows", None)
            if rows:
                msg["rows"] = [int(r) for r in rows]
            print(json.dumps(msg), file=sys.stderr)
        else:
            print(f"fracvol {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return code
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

