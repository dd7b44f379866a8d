"""Command line entry point: ``python -m coopaloha <command>``."""

from __future__ import annotations

import argparse
import sys

from . import analysis
from .decoders import DECODERS, decode, format_trace
from .fixtures import FIXTURES
from .harness import ConfigError, ExperimentConfig, emit_csv, estimate_G_bullet, run_sweep
from .traffic import TemporalDegreeDistribution

EXIT_OK, EXIT_CONFIG, EXIT_IO = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _dist(text):
    try:
        return TemporalDegreeDistribution.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _parser():
    p = _Parser(prog="coopaloha", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sweep", help="Monte Carlo load sweep, written as CSV")
    s.add_argument("--config", required=True, help="JSON experiment config")
    s.add_argument("--output", help="CSV path (overrides output_path in the config)")
    s.add_argument("--workers", type=int, default=1)

    a = sub.add_parser("analyze", help="and-or-tree decoding probability estimate")
    a.add_argument("--delta", type=float, required=True)
    a.add_argument("--G", type=float, required=True)
    a.add_argument("--dist", type=_dist, required=True, help='e.g. "2:1.0" or "1:0.5,3:0.5"')
    a.add_argument("--S", type=int, default=analysis.DE_ITERATIONS)

    t = sub.add_parser("threshold", help="single-station threshold H* and cooperative bound")
    t.add_argument("--dist", type=_dist, required=True)
    t.add_argument("--tol", type=float, default=1e-3)
    t.add_argument("--delta", type=float, nargs="+", default=[3.0])

    sub.add_parser("fixtures", help="decode the hand-checked fixtures and print traces")
    return p


def _sweep(args):
    cfg = ExperimentConfig.from_json(args.config)
    out = args.output or cfg.output_path
    records = run_sweep(cfg, workers=args.workers)
    if out:
        emit_csv(records, out)
        print(f"wrote {len(records)} records to {out}")
    else:
        emit_csv(records, "/dev/stdout")
    for d in cfg.decoders:
        rows = [r for r in records if r.decoder == d]
        best = max(rows, key=lambda r: r.mean_T)
        print(f"{d}: peak T={best.mean_T:.4f} at G={best.G:.4f}, "
              f"G_bullet(eps={cfg.epsilon})={estimate_G_bullet(rows, cfg.epsilon):.4f}",
              file=sys.stderr)


def _analyze(args):
    params = analysis.AsymptoticParams(args.delta, args.G, args.dist)
    p, est = analysis.and_or_tree(params, S=args.S)
    print(f"p_S={p:.6f}")
    print(f"estimate={est:.6f}")


def _threshold(args):
    h = analysis.find_threshold_H(args.dist, args.tol)
    print(f"H*={h:.6f}")
    for delta in args.delta:
        print(f"delta={delta:g} bound={analysis.theorem1_bound(delta, h):.6f} "
              f"peak_T_bound={analysis.peak_throughput_bound(delta, h):.6f}")


def _fixtures(args):
    for name, build in FIXTURES.items():
        g = build()
        print(f"== {name}: n={g.n_users} m={g.m_stations} tau={g.tau}")
        print(g.dump(), end="")
        for d in sorted(DECODERS):
            res = decode(d, g)
            users = " ".join(f"U{u}" for u in sorted(res.collected_set())) or "-"
            print(f"{d}: {users}")
        res = decode("spatiotemporal", g, trace=True)
        print(format_trace(res.trace))


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    handler = {"sweep": _sweep, "analyze": _analyze,
               "threshold": _threshold, "fixtures": _fixtures}[args.command]
    try:
        handler(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK
