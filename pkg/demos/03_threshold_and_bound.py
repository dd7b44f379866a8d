"""Single-station threshold H* and the cooperative lower bound it implies."""

import numpy as np

from coopaloha import analysis as an
from coopaloha.traffic import TemporalDegreeDistribution

two = TemporalDegreeDistribution.parse("2:1.0")

# density evolution of one receiver: decoding probability stays near one
# up to H*, then drops in a waterfall
for H in np.arange(0.40, 0.61, 0.02):
    print(f"H={H:.2f}  P={an.single_station_de(two, H):.5f}")

h = an.find_threshold_H(two, tol=1e-4)
print(f"\nH* = {h:.5f}")

# cooperative threshold bound and the coverage-weighted peak it guarantees
for delta in (1.0, 2.0, 3.0, 7.0):
    G = an.theorem1_bound(delta, h)
    print(f"delta={delta:5.2f}  G >= {G:.5f}  coverage={an.coverage_probability(delta):.4f}"
          f"  T >= {an.peak_throughput_bound(delta, h):.5f}")

# a repetition-free user population has no threshold at all
print("\nH* with one replica:", an.find_threshold_H(TemporalDegreeDistribution.parse("1:1.0")))
