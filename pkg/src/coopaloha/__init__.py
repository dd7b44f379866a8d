"""Framed slotted Aloha with cooperating base stations.

Simulation of random deployments, four peeling decoders (non-cooperative,
spatial SIC, temporal SIC, spatio-temporal SIC) and the asymptotic
and-or-tree / threshold analysis.
"""

from .analysis import (AsymptoticParams, Gamma, and_or_tree, chi, coverage_probability,
                       find_threshold_H, gamma_edge, peak_throughput_bound,
                       single_station_de, theorem1_bound)
from .decoders import (DecodingResult, count_metrics, decode, decode_graph_cleaning,
                       decode_noncooperative, decode_spatial, decode_spatiotemporal,
                       decode_temporal)
from .geometry import (Deployment, Point2D, build_deployment, is_nominal, place_uniform,
                       radius_for_delta)
from .graph import SystemGraph, build_graph, empirical_check_degree_stats
from .harness import (ExperimentConfig, LoadSweepRecord, decline_onset, emit_csv, estimate_G_bullet,
                      peak, run_sweep)
from .traffic import FramePlan, TemporalDegreeDistribution, mean_degree, sample_frame_plan

__version__ = "0.1.0"
