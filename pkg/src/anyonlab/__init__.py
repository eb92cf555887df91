"""anyonlab: an exact laboratory for the planar toric code.

Exact stabilizer vacuum, cone-localized string sectors, fusion and
braiding of the four anyonic charges, the Z2 quantum double comparison,
and a finite-lattice numerical cross-check.
"""

from .braiding import (
    ConeFrame,
    TransporterStep,
    braid_equation_check,
    braiding_phase,
    braiding_table,
    cone_less,
    conjugate,
    default_frame,
    monodromy,
    transporter,
    twist,
)
from .double import CatReport, RepObject, rep_braiding, rep_tensor, rep_twist, verify_equivalence
from .lattice import Bond, Cone, FinitePath, SemiInfinitePath, SiteSpec, plaq, star, translate
from .pauli import (
    GaussianRational,
    PauliOperator,
    QuasiLocalOperator,
    commutes,
    multiply,
    plaquette_operator,
    star_operator,
)
from .sectors import (
    SectorLabel,
    SectorSpec,
    apply_automorphism,
    compose,
    dynamics_shift,
    excitation_expectation,
    ray_sector,
    sector_distinguisher,
    syndrome,
    translation_intertwine_check,
)
from .spectral import (
    DenseState,
    FiniteLattice,
    build_hamiltonian,
    derivation_check,
    oracle_expectation,
    projector_state,
    spectral_gap,
    string_energy,
)
from .strings import StringType, deform, string_operator, truncated_string
from .vacuum import StabilizerWitness, decompose_xz, is_stabilizer_product, vacuum_expectation

__version__ = "0.1.0"
