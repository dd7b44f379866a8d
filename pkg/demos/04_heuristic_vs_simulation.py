"""Compare the and-or-tree estimate with simulated collection probability.

The estimate treats the decoding graph as locally tree-like. The simulated
curve starts to bend well before the estimate's single jump, so the two
disagree in the region G = 0.6 .. 0.8.
"""

from coopaloha import ExperimentConfig, run_sweep

for m in (40, 100):
    cfg = ExperimentConfig(delta=3.0, m=m, tau=m, runs_per_point=10 if m > 40 else 30,
                           G_values=[0.3, 0.5, 0.6, 0.65, 0.7, 0.75, 0.8, 0.9],
                           decoders=["spatiotemporal"])
    print(f"m = tau = {m}")
    print("    G   simulated  estimate  coverage")
    for r in run_sweep(cfg):
        print(f"  {r.G:4.2f}   {r.mean_P_coll:8.3f}  {r.heuristic_P_coll:8.3f}  {r.mean_coverage:8.3f}")
    print()
