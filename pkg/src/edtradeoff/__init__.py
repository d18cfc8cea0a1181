"""Error-disturbance tradeoff of projective measurements.

When can a measurement of ``A`` be both exact and harmless to a later
measurement of ``B``? Exactly when the ``A`` statistics majorize the ``B``
statistics. This package decides that, builds the measurement bases that
achieve it, and otherwise evaluates the Jensen-Shannon lower bound on
error plus disturbance.
"""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .bound import (BoundReport, extreme_point, in_s1, realize_s1_point,
                    s1_min_numeric_qubit, tradeoff_bound)
from .divergence import err_dis_sum, js_divergence, relative_entropy, shannon_entropy
from .errors import (DegenerateInputError, DimensionError, NoZEZDError, ParseError,
                     PreconditionError, ResourceLimitError, TradeoffError,
                     UnsupportedInputError, ValidationError)
from .majorization import (Partition, SortedDist, coarse_grain, coarsest_valid_partitions,
                           majorizes, majorizes_by_sections, sort_desc, valid_partitions)
from .oracle import (OracleResult, SweepRow, s2_min_numeric, sample_sequential,
                     sweep_qubit, verdict)
from .problem import ProblemFile, dump_problem, load_problem, parse_problem
from .quantum import (Basis, ProbDist, QuantumState, Scenario, born_distribution,
                      depolarize, disturbed_distribution, post_measurement_state)
from .synthesis import (SynthesisSolution, all_solutions, horn_unitary, mixed_qubit_zezd,
                        synthesize, zezd_basis)

__all__ = [
    "BACKEND", "Basis", "BoundReport", "DegenerateInputError", "DimensionError",
    "NoZEZDError", "OracleResult", "ParseError", "Partition", "PreconditionError",
    "ProbDist", "ProblemFile", "QuantumState", "ResourceLimitError", "Scenario",
    "SortedDist", "SweepRow", "SynthesisSolution", "TradeoffError",
    "UnsupportedInputError", "ValidationError", "all_solutions", "born_distribution",
    "coarse_grain", "coarsest_valid_partitions", "depolarize", "disturbed_distribution",
    "dump_problem", "err_dis_sum", "extreme_point", "horn_unitary", "in_s1",
    "js_divergence", "load_problem", "majorizes", "majorizes_by_sections",
    "mixed_qubit_zezd", "parse_problem", "post_measurement_state", "realize_s1_point",
    "relative_entropy", "s1_min_numeric_qubit", "s2_min_numeric", "sample_sequential",
    "shannon_entropy", "sort_desc", "sweep_qubit", "synthesize", "tradeoff_bound",
    "valid_partitions", "verdict", "zezd_basis",
]
