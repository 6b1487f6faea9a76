"""Quantum hash generators built from classical epsilon-universal hash families.

States are simulated exactly as complex amplitude vectors, so every resistance
and qubit-count bound can be checked numerically on small instances.
"""

from .analysis import (
    BSearchResult,
    ResistanceReport,
    best_bset_exhaustive,
    check_qubit_lower_bound,
    hdq_set_size,
    measure_resistance,
    qubit_lower_bound,
    search_bset,
    theoretical_delta,
)
from .codes import BlockCode, reed_solomon_code, repetition_code, simplex_code
from .estimators import FingerprintTransformer, QuantumHashTransformer
from .gf import FieldElement, Word, fp_inv, fp_mul, fp_pow, primes_up_to
from .qgen import (
    BSet,
    GeneratorSpec,
    QuantumHashGenerator,
    binary_fingerprint_generator,
    composed_generator,
    composed_state,
    generator_qubits,
    hdq_generator,
    hdq_inner_product_analytic,
    hdq_state,
)
from .qstate import QuantumState, inner_product, swap_test_accept_prob, swap_test_sample, tensor
from .uhash import (
    HashFamily,
    HashFamilyDescriptor,
    code_to_family,
    freivalds_family,
    linear_family,
    measure_epsilon,
    rs_family,
)

__version__ = "0.1.0"
