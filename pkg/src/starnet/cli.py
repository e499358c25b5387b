"""Command-line interface.

    starnet run --inequality vertesi --ntilde 3 --branches 2 --chain 2 \\
        --csv curves.csv --report report.json [--normalize]
    starnet verify --count 200 --seed 0

``run`` writes the S(G) curves as CSV and a JSON report with windows and
the settings used.  ``verify`` compares the analytic correlator against the
density-matrix oracle on random branches.
"""
import argparse
import json
import sys
from dataclasses import asdict, dataclass

import numpy as np

from .bell import chsh_matrix, gchsh_matrix, vertesi_matrix
from .correlator import BranchChain, WeakParams, branch_correlator
from .network import DEFAULT_STEPS, NetworkConfig, picking_label, sweep
from .oracle import oracle_table
from .settings import gchsh_settings, vertesi_settings

EXIT_IO = 1
EXIT_USAGE = 2
EXIT_DEVIATION = 3

VERIFY_TOL = 1e-10
VERTESI_SUPPORTED = (2, 3, 30)
GCHSH_MAX_K = 64


class UsageError(Exception):
    pass


@dataclass
class RunSpec:
    inequality: str
    k: int | None = None
    ntilde: int | None = None
    branches: int = 2
    chain: int = 2
    g_min: float = 0.0
    g_max: float = 1.0
    steps: int = DEFAULT_STEPS
    normalize: bool = False
    csv: str | None = None
    report: str | None = None


def build_problem(spec):
    """(StructureMatrix, MeasurementSettings) for a run spec."""
    if spec.inequality == "chsh":
        return chsh_matrix(), gchsh_settings(2)
    if spec.inequality == "gchsh":
        if spec.k is None or not 2 <= spec.k <= GCHSH_MAX_K:
            raise UsageError(f"gchsh needs --k in [2, {GCHSH_MAX_K}]")
        return gchsh_matrix(spec.k), gchsh_settings(spec.k)
    if spec.inequality == "vertesi":
        if spec.ntilde not in VERTESI_SUPPORTED:
            raise UsageError(f"vertesi needs --ntilde in {VERTESI_SUPPORTED}")
        return vertesi_matrix(spec.ntilde), vertesi_settings(spec.ntilde)
    raise UsageError(f"unknown inequality {spec.inequality!r}")


def _fmt(x):
    return format(float(x), ".15g")


def render_csv(report, normalize):
    labels = [picking_label(p) for p in report.values]
    scale = report.bound if normalize else 1.0
    lines = [",".join(["G"] + labels)]
    for n, G in enumerate(report.g_grid):
        row = [_fmt(G)] + [_fmt(report.values[p][n] / scale) for p in report.values]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def render_report(spec, report, settings):
    doc = {
        "config": asdict(spec),
        "k": settings.k,
        "classical_bound": report.bound,
        "pickings": [picking_label(p) for p in report.values],
        "windows": {picking_label(p): [list(w) for w in ws] for p, ws in report.windows.items()},
        "simultaneous_window": [list(w) for w in report.simultaneous],
        "settings": settings.to_dict(),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def run(spec):
    M, settings = build_problem(spec)
    if spec.branches < 1 or spec.chain < 1:
        raise UsageError("--branches and --chain must be positive")
    if not (0.0 <= spec.g_min < spec.g_max <= 1.0) or spec.steps < 2:
        raise UsageError("need 0 <= g-min < g-max <= 1 and steps >= 2")
    config = NetworkConfig(spec.branches, spec.chain, M, settings)
    report = sweep(config, spec.g_min, spec.g_max, spec.steps)
    csv_text = render_csv(report, spec.normalize)
    json_text = render_report(spec, report, settings)
    try:
        if spec.csv:
            with open(spec.csv, "w", newline="", encoding="ascii") as fh:
                fh.write(csv_text)
        else:
            sys.stdout.write(csv_text)
        if spec.report:
            with open(spec.report, "w", encoding="ascii") as fh:
                fh.write(json_text)
    except OSError as exc:
        print(f"starnet: {exc}", file=sys.stderr)
        return EXIT_IO
    windows = ", ".join(f"[{lo:.6f}, {hi:.6f}]" for lo, hi in report.simultaneous) or "none"
    print(f"C = {report.bound:g}; simultaneous violation: {windows}", file=sys.stderr)
    return 0


def random_instance(rng, m=None):
    """Random branch for the oracle comparison: k in {2,3,4}, m in {1,2,3}."""
    k = int(rng.integers(2, 5))
    m = int(rng.integers(1, 4)) if m is None else m

    def unit(count):
        v = rng.normal(size=(count, 3))
        return v / np.linalg.norm(v, axis=1, keepdims=True)

    params = tuple(WeakParams.from_quality(rng.uniform(0.0, 1.0)) for _ in range(m))
    chain = BranchChain(params, tuple(unit(k) for _ in range(m)))
    return chain, unit(k)


def instance_deviation(chain, bob):
    """Largest |analytic - oracle| over all positions and setting pairs."""
    worst = 0.0
    for j in range(1, chain.m + 1):
        diff = np.abs(branch_correlator(chain, j, bob) - oracle_table(chain, j, bob))
        worst = max(worst, float(diff.max()))
    return worst


def verify(count, seed, m=None, out=None):
    out = sys.stdout if out is None else out
    if count < 1:
        raise UsageError("--count must be >= 1")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for n in range(count):
        chain, bob = random_instance(rng, m)
        dev = instance_deviation(chain, bob)
        worst = max(worst, dev)
        if not dev < VERIFY_TOL:
            dump = {
                "instance": n,
                "seed": seed,
                "deviation": dev,
                "G": [p.G for p in chain.params],
                "F": [p.F for p in chain.params],
                "alice": [s.tolist() for s in chain.settings],
                "bob": bob.tolist(),
            }
            print(json.dumps(dump, indent=2), file=out)
            print(f"max deviation {worst:.3e} exceeds {VERIFY_TOL:g}", file=out)
            return EXIT_DEVIATION
    print(f"{count} instances, max deviation {worst:.3e}", file=out)
    return 0


def _parser():
    parser = argparse.ArgumentParser(prog="starnet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="sweep G and write S curves and a window report")
    p.add_argument("--inequality", required=True, choices=["chsh", "gchsh", "vertesi"])
    p.add_argument("--k", type=int, help="settings count for gchsh")
    p.add_argument("--ntilde", type=int, help="Vertesi parameter (2, 3 or 30)")
    p.add_argument("--branches", type=int, default=2)
    p.add_argument("--chain", type=int, default=2)
    p.add_argument("--g-min", type=float, default=0.0)
    p.add_argument("--g-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    p.add_argument("--normalize", action="store_true", help="divide S by the classical bound")
    p.add_argument("--csv", help="CSV output path (default: stdout)")
    p.add_argument("--report", help="JSON report path")

    v = sub.add_parser("verify", help="compare analytic correlators with the oracle")
    v.add_argument("--count", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--chain", type=int, choices=[1, 2, 3], help="fix the chain length")
    return parser


def main(argv=None):
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            spec = RunSpec(
                inequality=args.inequality,
                k=args.k,
                ntilde=args.ntilde,
                branches=args.branches,
                chain=args.chain,
                g_min=args.g_min,
                g_max=args.g_max,
                steps=args.steps,
                normalize=args.normalize,
                csv=args.csv,
                report=args.report,
            )
            return run(spec)
        return verify(args.count, args.seed, args.chain)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"starnet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
