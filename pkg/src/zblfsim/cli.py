"""Command-line front end: run a simulation, verify the build's invariants,
or sweep a grid of config overrides.

Exit codes (stable, scripted against):
  0  success
  2  configuration or usage error
  3  constraint violation during a run
  4  numerical divergence during a run
  5  one or more verify checks failed
  1  unexpected internal error
"""

import argparse
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import sim
from .config import default_config_path, load_config
from .errors import ConfigError

OUT_ROOT_ENV = "ZBLFSIM_OUT_ROOT"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VIOLATION = 3
EXIT_DIVERGENCE = 4
EXIT_VERIFY = 5
EXIT_INTERNAL = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zblfsim",
        description="Constrained neuroadaptive arm-tracking simulator",
    )
    parser.add_argument("--config", default=None,
                        help="config file (default: bundled baseline)")
    parser.add_argument("--out", default=None,
                        help=f"output directory (default: ${OUT_ROOT_ENV} or ./out)")
    parser.add_argument("--set", dest="overrides", action="append", default=[],
                        metavar="SECTION.KEY=VALUE",
                        help="override a config value (repeatable)")
    parser.add_argument("--suite", choices=("run", "verify", "sweep"),
                        default="run", help="what to execute")
    parser.add_argument("--sweep", dest="sweeps", action="append", default=[],
                        metavar="SECTION.KEY=V1,V2,...",
                        help="sweep values for one key (repeatable; suite=sweep)")
    parser.add_argument("--backend", choices=("auto", "compiled", "python"),
                        default="auto", help="simulation kernel to use")
    return parser


def _out_dir(args) -> str:
    if args.out is not None:
        return args.out
    return os.environ.get(OUT_ROOT_ENV, "out")


def _write_outputs(out_dir: str, result: sim.RunResult) -> dict:
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, "log.csv")
    result.log.to_csv(csv_path)

    tc = result.config.constraint.tc
    summary = sim.summarize_log(result.log, tc)
    summary["status"] = result.status
    summary["backend"] = result.backend
    summary["elapsed_s"] = result.elapsed

    diagnostics = dict(summary)
    diagnostics["iota"] = sim.iota_estimates(result.config, result)
    diagnostics["final_actor_weights"] = result.final_weights.wa.tolist()
    diagnostics["final_critic_weights"] = result.final_weights.wc.tolist()
    with open(os.path.join(out_dir, "diagnostics.json"), "w", encoding="utf-8") as fh:
        json.dump(diagnostics, fh, indent=2, sort_keys=True)

    lines = [
        f"status: {summary['status']}",
        f"rows: {summary['rows']}",
        f"violations: {summary['violations']}",
        f"max |Z2|: {summary['max_z2_norm']:.6g}",
        f"max actor weight norm: {summary['max_wa_norm']:.6g}",
        f"max critic weight norm: {summary['max_wc_norm']:.6g}",
        "steady-state mean |Z1|: "
        f"{summary['steady_state_mean_abs_z1'][0]:.6g}, "
        f"{summary['steady_state_mean_abs_z1'][1]:.6g}",
    ]
    if result.failure is not None:
        failure_path = os.path.join(out_dir, "failure.txt")
        with open(failure_path, "w", encoding="utf-8") as fh:
            fh.write(result.failure.describe() + "\n")
        lines.append(f"failure report: {failure_path}")
    with open(os.path.join(out_dir, "summary.txt"), "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    return summary


_STATUS_EXIT = {
    "ok": EXIT_OK,
    "constraint_violation": EXIT_VIOLATION,
    "divergence": EXIT_DIVERGENCE,
}


def run_command(config_path, overrides, out_dir, backend="auto") -> int:
    config = load_config(config_path, overrides)
    result = sim.run(config, backend=backend)
    summary = _write_outputs(out_dir, result)
    ceiling = config.signal_ceiling
    print(f"run: {result.status} ({summary['rows']} rows, "
          f"{result.elapsed:.2f} s, backend {result.backend})")
    print(f"violations: {summary['violations']}")
    print(f"max norms: |Z2| {summary['max_z2_norm']:.4g}, "
          f"Wa {summary['max_wa_norm']:.4g}, Wc {summary['max_wc_norm']:.4g} "
          f"(ceiling {ceiling:g})")
    if result.failure is not None:
        print(result.failure.describe(), file=sys.stderr)
    if result.ok and (summary["max_z2_norm"] > ceiling
                      or summary["max_wa_norm"] > ceiling
                      or summary["max_wc_norm"] > ceiling):
        print("signal ceiling exceeded; reporting as divergence", file=sys.stderr)
        return EXIT_DIVERGENCE
    return _STATUS_EXIT[result.status]


def verify_command(config_path, overrides) -> int:
    config = load_config(config_path, overrides)
    results = __import__("zblfsim.verify", fromlist=["run_all"]).run_all(config)
    failed = 0
    for check in results:
        tag = "PASS" if check.passed else "FAIL"
        print(f"{tag} {check.name}: {check.detail}")
        failed += 0 if check.passed else 1
    print(f"verify: {len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def _sweep_worker(task):
    config_path, overrides, out_dir, backend = task
    try:
        return run_command(config_path, overrides, out_dir, backend)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def sweep_command(config_path, overrides, sweeps, out_root, backend="auto") -> int:
    if not sweeps:
        raise ConfigError("sweep suite needs at least one --sweep KEY=V1,V2,...")
    axes = []
    for spec in sweeps:
        if "=" not in spec:
            raise ConfigError(f"bad sweep spec: {spec!r}")
        key, values = spec.split("=", 1)
        values = [v.strip() for v in values.split(",") if v.strip()]
        if not values:
            raise ConfigError(f"sweep spec has no values: {spec!r}")
        axes.append([(key.strip(), v) for v in values])

    tasks = []
    for combo in itertools.product(*axes):
        slug = "_".join(f"{k.split('.')[-1]}-{v}" for k, v in combo)
        combo_overrides = list(overrides) + [f"{k}={v}" for k, v in combo]
        tasks.append((config_path, combo_overrides,
                      os.path.join(out_root, "sweep", slug), backend))

    # validate the base config once up front so bad sweeps fail fast
    load_config(config_path, overrides)
    workers = min(len(tasks), os.cpu_count() or 1)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        codes = list(pool.map(_sweep_worker, tasks))
    bad = [c for c in codes if c != EXIT_OK]
    print(f"sweep: {len(codes) - len(bad)}/{len(codes)} runs ok")
    return EXIT_OK if not bad else max(bad)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config_path = args.config if args.config is not None else default_config_path()
    out_dir = _out_dir(args)
    try:
        if args.suite == "run":
            return run_command(config_path, args.overrides, out_dir, args.backend)
        if args.suite == "verify":
            return verify_command(config_path, args.overrides)
        return sweep_command(config_path, args.overrides, args.sweeps,
                             out_dir, args.backend)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def entry():  # console-script wrapper
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
