"""qident: exact desk-scale simulations of identical quantum particles.

Exchange-symmetry projectors and Slater determinants in first
quantization, fermionic/bosonic/quon ladder operators in second
quantization, Fermi-Dirac and Bose-Einstein thermal occupancies, and
two-particle beam-splitter interference.
"""

from .beamsplitter import (
    InternalState,
    OutputDistribution,
    closed_form_distribution,
    coincidence_likelihood,
    output_distribution,
)
from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    ExclusionError,
    PhysicsDomainError,
    QidentError,
    SizeLimitError,
    UnsupportedStatisticsError,
    ZeroVectorError,
)
from .first_quantization import (
    NBodyVector,
    SingleParticleVector,
    SymmetryClass,
    antisymmetrize,
    basis_amplitude,
    classify,
    slater,
    subspace_dimensions,
    symmetrize,
    tensor_product,
)
from .fock import (
    BOSON,
    DISTINGUISHABLE,
    FERMION,
    FockContext,
    FockVector,
    Statistics,
    annihilate,
    create,
    from_first_quantization,
    number_expectation,
    number_state,
    para_admissible,
    quon,
    to_first_quantization,
    vacuum,
    verify_algebra,
)
from .permanent import permanent
from .permutations import Permutation, enumerate_permutations
from .thermal import (
    K_B_SI,
    ThermalSystem,
    classical_limit_gap,
    condensate_fraction,
    mean_occupancy,
    occupancy_curve,
    solve_mu,
)

__version__ = "0.1.0"

__all__ = [
    "InternalState",
    "OutputDistribution",
    "closed_form_distribution",
    "coincidence_likelihood",
    "output_distribution",
    "ConvergenceError",
    "DimensionMismatchError",
    "ExclusionError",
    "PhysicsDomainError",
    "QidentError",
    "SizeLimitError",
    "UnsupportedStatisticsError",
    "ZeroVectorError",
    "NBodyVector",
    "SingleParticleVector",
    "SymmetryClass",
    "antisymmetrize",
    "basis_amplitude",
    "classify",
    "slater",
    "subspace_dimensions",
    "symmetrize",
    "tensor_product",
    "BOSON",
    "DISTINGUISHABLE",
    "FERMION",
    "FockContext",
    "FockVector",
    "Statistics",
    "annihilate",
    "create",
    "from_first_quantization",
    "number_expectation",
    "number_state",
    "para_admissible",
    "quon",
    "to_first_quantization",
    "vacuum",
    "verify_algebra",
    "permanent",
    "Permutation",
    "enumerate_permutations",
    "K_B_SI",
    "ThermalSystem",
    "classical_limit_gap",
    "condensate_fraction",
    "mean_occupancy",
    "occupancy_curve",
    "solve_mu",
]
