"""Sequential qubit random-access-code simulation and certification toolkit."""

from .certify import (
    SharpnessInterval,
    WitnessPair,
    certify_sharpness,
    compute_witnesses,
    ideal_witness_pair,
    optimal_tradeoff,
    projective_bound,
)
from .incompat import (
    IncompatibilityResult,
    degree_of_incompatibility,
    sequential_qrac_bound,
    single_qrac_bound,
)
from .protocol import (
    CountTable,
    JointDistribution,
    ProtocolSpec,
    average_post_measurement_state,
    exact_distribution,
    sample_counts,
)
from .qubit import Observable, QubitState, bloch_to_state, fidelity, psd_sqrt
from .report import ReportRow, run_sweep
from .strategies import (
    Instrument,
    MeasurementSet,
    PreparationSet,
    bob_instrument,
    charlie_measurements,
    eta_from_waveplate,
    lueders_instrument,
    optimal_preparations,
)
from .tomography import (
    TetrahedronDesign,
    TomographyScenario,
    WorstCaseResult,
    invert,
    sharpness_error_curve,
    tetrahedron_design,
    worst_case_fidelity,
)

__version__ = "0.1.0"
