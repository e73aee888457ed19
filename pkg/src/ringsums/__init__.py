"""Generalized Ramanujan sums and Cayley-graph spectra over finite rings."""

from __future__ import annotations

from .cayley import (
    CayleyGraph,
    SpectrumReport,
    bracket_graph,
    build_cayley,
    compare_spectra,
    spectrum_babai,
    spectrum_numeric,
    spectrum_unitary,
)
from .characters import (
    Branch,
    RamanujanResult,
    character_sum,
    cyclic_subgroup,
    largest_ideal_in,
    perp,
    psi,
    ramanujan_bruteforce,
    ramanujan_closed_form,
    ramanujan_right,
    ramanujan_theorem,
    ramanujan_twosided,
)
from .config import DEFAULT_LIMITS, Limits
from .cyclo import CycloValue, cyclo_field, cyclotomic_poly
from .errors import (
    AxiomViolation,
    ConvergenceFailure,
    DivisibilityViolation,
    InvariantViolation,
    LatticeLimitExceeded,
    LoopsForbidden,
    MaximalFamilyTooLarge,
    MismatchReport,
    NotASubgroup,
    NotSymmetricSet,
    PremiseNotMet,
    RingMismatch,
    RingSumsError,
    SideMismatch,
    SizeLimitExceeded,
    SpecError,
    UniquenessViolation,
)
from .lattice import (
    IdealLattice,
    OutsidePremiseWarning,
    Side,
    SideIdeal,
    bracket_class,
    crt_index_check,
    enumerate_lattice,
    is_minimal_subset,
    maximal_family,
    mobius_inversion,
    mobius_R,
    phi_R,
    principal_ideal,
)
from .numtheory import classical_ramanujan, euler_phi
from .ring import Element, FiniteRing, make_matrix_ring, make_product, make_table_ring, make_zmod, units
from .specfile import build_ring, load_corpus

__version__ = "0.1.0"
