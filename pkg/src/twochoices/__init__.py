"""2-Choices opinion dynamics on core-periphery networks."""
from .dynamics import (BLUE, RED, ColorConfig, DynamicsParams, Mode, Outcome, RoundStats, RunResult,
                       TrialOutcome, core_blue, exact_distribution, replay_batch, run, step, uniform)
from .extraction import (ExtractionError, PeelingTrace, constrained_densest_subgraph, densest_core,
                         extract, k_rich_club, peel, symmetry_point)
from .graph import (EmptyGraphError, Graph, GraphFormatError, largest_component, load_graph, normalize,
                    parse_edge_list, serialize, volume)
from .harness import ExperimentConfig, ExperimentReport, classify, run_experiment, scatter_data
from .kernels import BACKEND
from .partition import Partition, cut_size, density, dominance, metrics_record, robustness
from .synth import SpecError, SynthesisError, SynthSpec, generate, random_regular_graph, validate
from .theory import C_STAR, P_STAR, SIGMA_EMPIRICAL, THRESHOLDS, Regime, predict_regime

__version__ = "0.1.0"
