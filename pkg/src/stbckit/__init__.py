"""Space-time block codes from crossed-product data.

Construction of full-rate linear codes, numerical verification of the MMSE
optimality conditions and of full diversity, and Monte Carlo simulation of
a linear MMSE receiver over quasi-static Rayleigh channels.
"""

from .algebra import (
    AlgebraSpec,
    LinearSTBC,
    ValidationReport,
    algebra_from_json,
    algebra_to_json,
    assemble,
    build_stbc,
    diagonal_matrix,
    permutation_matrix,
    stbc_from_json,
    stbc_to_json,
    validate,
)
from .constructions import (
    KNOWN_CODE_IDS,
    BiquadraticParams,
    CyclicParams,
    biquadratic_spec,
    build_code,
    cyclic_spec,
    default_biquadratic,
    default_transcendentals,
    golden_code,
)
from .matrixops import (
    DEFAULT_TOL,
    CMatrix,
    as_cmatrix,
    frobenius,
    hermitian,
    is_scaled_unitary,
    matmul,
    solve_hermitian_positive,
    trace,
    vec,
)
from .optimality import (
    DiversityReport,
    OptimalityReport,
    check_definition1,
    check_phi,
    check_theorem1,
    min_det_diversity,
    verify_code,
)
from .simulate import (
    BerPoint,
    ChannelRealization,
    Constellation,
    SimConfig,
    SymbolFrame,
    decode,
    diversity_slope,
    make_constellation,
    map_bits,
    mmse_filter,
    run_ber,
    sample_channel,
    transmit,
    write_ber_csv,
    write_sweep_csv,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraSpec",
    "BerPoint",
    "BiquadraticParams",
    "CMatrix",
    "ChannelRealization",
    "Constellation",
    "CyclicParams",
    "DEFAULT_TOL",
    "DiversityReport",
    "KNOWN_CODE_IDS",
    "LinearSTBC",
    "OptimalityReport",
    "SimConfig",
    "SymbolFrame",
    "ValidationReport",
    "algebra_from_json",
    "algebra_to_json",
    "as_cmatrix",
    "assemble",
    "biquadratic_spec",
    "build_code",
    "build_stbc",
    "check_definition1",
    "check_phi",
    "check_theorem1",
    "cyclic_spec",
    "decode",
    "default_biquadratic",
    "default_transcendentals",
    "diagonal_matrix",
    "diversity_slope",
    "frobenius",
    "golden_code",
    "hermitian",
    "is_scaled_unitary",
    "make_constellation",
    "map_bits",
    "matmul",
    "min_det_diversity",
    "mmse_filter",
    "permutation_matrix",
    "run_ber",
    "sample_channel",
    "solve_hermitian_positive",
    "stbc_from_json",
    "stbc_to_json",
    "trace",
    "transmit",
    "validate",
    "vec",
    "verify_code",
    "write_ber_csv",
    "write_sweep_csv",
]
