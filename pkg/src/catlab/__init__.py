"""Numerical laboratory for a quantized chaotic map under repeated measurement.

Subpackage map:

    classical      the area-preserving torus map, strip words, cylinder measures
    quantum        finite-dimensional quantization, period unitaries, projectors
    histories      decoherence matrices of measurement histories, entropies
    multiparticle  collision coupling to light particles, entanglement entropy
    harness        batch experiment runner with CSV/JSON outputs
    cli            command-line front end (catlab run / validate / list-experiments)
"""

from ._version import __version__
from .classical import (CAT_MATRIX, MeasureTable, cat_step, classical_entropy,
                        ks_entropy_rate, sector_entropy, word_measures)
from .histories import (DecoherenceMatrix, EntropyRecord, OmegaMatrix,
                        decoherence_matrix, entropies, omega_recursion,
                        omega_sequence, partial_entropy_profile, word_operator)
from .multiparticle import (MultiParams, VonNeumannRun, build_period_propagator,
                            collision_counts, multiparticle_histories,
                            partial_trace, von_neumann_run)
from .quantum import (CatParams, ProjectorFamily, UnitaryOperator,
                      build_cat_unitary, build_kick, build_projectors, build_u0)
