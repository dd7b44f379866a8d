"""Throughput against load for all four decoders at delta=3, m=tau=40.

Runs the full 30-run sweep (about 15 s on one core) and writes the CSV
next to this script.
"""

from pathlib import Path

from coopaloha import ExperimentConfig, decline_onset, emit_csv, peak, run_sweep

cfg = ExperimentConfig(delta=3.0, m=40, tau=40, runs_per_point=30, master_seed=0)
records = run_sweep(cfg)
out = Path(__file__).with_name("delta3.csv")
emit_csv(records, out)
print("wrote", out)

# one row per load; columns are normalized throughput T = G * P(coll)
names = ["noncoop", "temporal", "spatial", "spatiotemporal"]
print("   G  " + "".join(f"{n:>16s}" for n in names))
by = {(r.G, r.decoder): r for r in records}
for G in sorted({r.G for r in records}):
    print(f"{G:5.2f} " + "".join(f"{by[(G, n)].mean_T:16.3f}" for n in names))

for n in names:
    p = peak(records, n)
    print(f"peak {n:15s} {p.mean_T:.3f} at G={p.G:.2f}")

# the curve keeps close to coverage up to the onset, then falls off
print("spatio-temporal decline onset: G = %.3f" % decline_onset(records, "spatiotemporal"))
