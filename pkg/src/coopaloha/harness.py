"""Monte Carlo load sweeps over the four decoders."""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from . import analysis
from .decoders import DECODER_NAMES, SPATIOTEMPORAL, decode
from .geometry import build_deployment, radius_for_delta
from .graph import build_graph, graph_from_lists
from .traffic import TemporalDegreeDistribution, sample_frame_plan

CSV_HEADER = ["G", "n", "decoder", "mean_T", "std_T", "mean_P_coll",
              "std_P_coll", "runs", "heuristic_P_coll"]


class ConfigError(ValueError):
    pass


def default_G_grid() -> list:
    return [round(0.05 * k, 2) for k in range(1, 21)]


@dataclass
class ExperimentConfig:
    m: int = 40
    tau: int = 40
    delta: float = 3.0
    dist: list = field(default_factory=lambda: [[2, 1.0]])
    G_values: list = field(default_factory=default_G_grid)
    runs_per_point: int = 30
    epsilon: float = 0.05
    master_seed: int = 0
    decoders: list = field(default_factory=lambda: list(DECODER_NAMES))
    output_path: Optional[str] = None

    def __post_init__(self):
        try:
            self.distribution = TemporalDegreeDistribution.from_pairs(self.dist)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad dist {self.dist!r}: {exc}") from None
        if self.m < 1 or self.tau < 1:
            raise ConfigError(f"m and tau must be >= 1, got m={self.m}, tau={self.tau}")
        if self.runs_per_point < 1:
            raise ConfigError(f"runs_per_point must be >= 1, got {self.runs_per_point}")
        if any(g < 0 for g in self.G_values):
            raise ConfigError(f"loads must be >= 0, got {self.G_values}")
        if not 0 < self.epsilon < 1:
            raise ConfigError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        unknown = set(self.decoders) - set(DECODER_NAMES)
        if unknown or not self.decoders:
            raise ConfigError(f"decoders must be a non-empty subset of {DECODER_NAMES}")
        if self.distribution.q_max > self.tau:
            raise ConfigError(f"q_max={self.distribution.q_max} exceeds tau={self.tau}")
        try:
            self.radius = radius_for_delta(self.delta, self.m)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def from_dict(cls, d) -> "ExperimentConfig":
        names = {f for f in cls.__dataclass_fields__}
        extra = set(d) - names
        if extra:
            raise ConfigError(f"unknown config fields: {sorted(extra)}")
        try:
            return cls(**d)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        """Load a config; a missing or unreadable file raises ``OSError``."""
        with open(path) as fh:
            try:
                d = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{path}: {exc}") from None
        if not isinstance(d, dict):
            raise ConfigError(f"{path}: top level must be an object")
        return cls.from_dict(d)

    def to_dict(self) -> dict:
        return asdict(self)

    def n_for(self, G) -> int:
        return int(round(G * self.tau * self.m))


@dataclass
class LoadSweepRecord:
    G: float
    n: int
    decoder: str
    mean_T: float
    std_T: float
    mean_P_coll: float
    std_P_coll: float
    runs: int
    heuristic_P_coll: Optional[float] = None
    # fraction of users with at least one station in range, averaged over runs
    mean_coverage: float = 0.0


def run_stream(master_seed, point_index, run_index) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([master_seed, point_index, run_index]))


def _one_run(args):
    cfg_dict, point_index, run_index, n = args
    cfg = ExperimentConfig.from_dict(cfg_dict)
    if n == 0:
        return point_index, run_index, 0, {d: 0 for d in cfg.decoders}
    rng = run_stream(cfg.master_seed, point_index, run_index)
    dep = build_deployment(n, cfg.m, cfg.radius, rng)
    plan = sample_frame_plan(cfg.distribution, n, cfg.tau, rng)
    g = build_graph(dep, plan)
    counts = {d: decode(d, g).n_collected for d in cfg.decoders}
    return point_index, run_index, int(dep.covered().sum()), counts


def _std(x) -> float:
    return float(np.std(x, ddof=1)) if len(x) > 1 else 0.0


def run_sweep(cfg: ExperimentConfig, workers: int = 1) -> list:
    """Simulate every (load, run) pair and aggregate per decoder.

    All enabled decoders see the same graph in a given run. Each run draws
    from its own stream keyed by ``(master_seed, point_index, run_index)``,
    so results do not depend on ``workers``.
    """
    cfg_dict = cfg.to_dict()
    tasks = []
    for pi, G in enumerate(cfg.G_values):
        n = cfg.n_for(G)
        tasks.extend((cfg_dict, pi, ri, n) for ri in range(cfg.runs_per_point))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_one_run, tasks, chunksize=4))
    else:
        results = [_one_run(t) for t in tasks]
    results.sort(key=lambda r: (r[0], r[1]))

    slots = cfg.tau * cfg.m
    records = []
    for pi, G in enumerate(cfg.G_values):
        n = cfg.n_for(G)
        runs = [r for r in results if r[0] == pi]
        cov = [r[2] / n if n else 0.0 for r in runs]
        heur = None
        if SPATIOTEMPORAL in cfg.decoders:
            params = analysis.AsymptoticParams(cfg.delta, n / slots, cfg.distribution)
            heur = analysis.and_or_tree(params, S=slots)[1]
        for d in cfg.decoders:
            k = np.array([r[3][d] for r in runs], dtype=float)
            T = k / slots
            P = k / n if n else np.zeros_like(k)
            records.append(LoadSweepRecord(
                G=n / slots, n=n, decoder=d,
                mean_T=float(T.mean()), std_T=_std(T),
                mean_P_coll=float(P.mean()), std_P_coll=_std(P),
                runs=len(runs),
                heuristic_P_coll=heur if d == SPATIOTEMPORAL else None,
                mean_coverage=float(np.mean(cov)),
            ))
    records.sort(key=lambda r: (r.G, r.decoder))
    return records


def estimate_G_bullet(records, epsilon) -> float:
    """Largest load with mean decoding probability >= 1 - epsilon.

    The crossing after the last passing grid point is located by linear
    interpolation. Returns 0.0 when no load passes.
    """
    if not records:
        raise ValueError("no records")
    target = 1 - epsilon
    recs = sorted((r for r in records if r.n > 0), key=lambda r: r.G)
    passing = [i for i, r in enumerate(recs) if r.mean_P_coll >= target]
    if not passing:
        return 0.0
    k = passing[-1]
    if k == len(recs) - 1:
        return recs[k].G
    a, b = recs[k], recs[k + 1]
    frac = (a.mean_P_coll - target) / (a.mean_P_coll - b.mean_P_coll)
    return a.G + frac * (b.G - a.G)


def peak(records, decoder) -> LoadSweepRecord:
    return max((r for r in records if r.decoder == decoder), key=lambda r: r.mean_T)


def decline_onset(records, decoder, epsilon=0.05) -> float:
    """First load where collection drops below ``1 - epsilon`` of the
    empirical coverage, interpolated between grid points.

    Normalizing by coverage keeps the measure meaningful at finite m, where
    boundary losses hold coverage below ``1 - exp(-delta)``. Returns the
    largest swept load if the curve never drops.
    """
    recs = sorted((r for r in records if r.decoder == decoder and r.n > 0),
                  key=lambda r: r.G)
    if not recs:
        raise ValueError(f"no records for decoder {decoder!r}")
    target = 1 - epsilon
    ratio = [r.mean_P_coll / r.mean_coverage if r.mean_coverage > 0 else 0.0 for r in recs]
    for k, x in enumerate(ratio):
        if x < target:
            if k == 0:
                return recs[0].G
            a, b = ratio[k - 1], x
            return recs[k - 1].G + (a - target) / (a - b) * (recs[k].G - recs[k - 1].G)
    return recs[-1].G


def _fmt(v) -> str:
    return "" if v is None else f"{v:.6f}"


def emit_csv(records, path) -> None:
    rows = sorted(records, key=lambda r: (r.G, r.decoder))
    try:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_HEADER)
            for r in rows:
                w.writerow([_fmt(r.G), r.n, r.decoder, _fmt(r.mean_T), _fmt(r.std_T),
                            _fmt(r.mean_P_coll), _fmt(r.std_P_coll), r.runs,
                            _fmt(r.heuristic_P_coll)])
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write {path}: {exc.strerror}") from exc


def single_station_graph(dist, n, tau, rng):
    """One receiver that hears all ``n`` users."""
    plan = sample_frame_plan(dist, n, tau, rng)
    return graph_from_lists(n, 1, tau, [np.zeros(1, dtype=int)] * n, plan.activation)


def simulate_single_station(dist, H_values, tau=40, runs=30, master_seed=0) -> list:
    """Return ``[(H, mean_T, mean_P_coll)]`` for the single-receiver system
    with SIC across slots; ``mean_T`` is collected users per slot."""
    out = []
    for pi, H in enumerate(H_values):
        n = int(round(H * tau))
        k = []
        for ri in range(runs):
            if n == 0:
                k.append(0)
                continue
            g = single_station_graph(dist, n, tau, run_stream(master_seed, pi, ri))
            k.append(decode("temporal", g).n_collected)
        k = np.asarray(k, dtype=float)
        out.append((n / tau, float(k.mean() / tau), float(k.mean() / n) if n else 0.0))
    return out


def empirical_coverage(delta, m, n, runs, master_seed=0) -> float:
    """Covered fraction over ``runs`` independent deployments."""
    r = radius_for_delta(delta, m)
    covered = 0
    for ri in range(runs):
        dep = build_deployment(n, m, r, run_stream(master_seed, 0, ri))
        covered += int(dep.covered().sum())
    return covered / (n * runs)


def heuristic_curve(delta, dist, G_values, S) -> list:
    return [analysis.and_or_tree(analysis.AsymptoticParams(delta, G, dist), S=S)[1]
            for G in G_values]

