"""Exact verification of finite-dimensional Hopf-algebraic structures."""

from .exactlin import (
    DimensionMismatch,
    Field,
    LinearSolution,
    Matrix,
    PresentationError,
    QQ,
    Subspace,
    image,
    kernel,
    kron,
    preimage,
    rank,
    rref,
    solve_linear,
    subspace_ops,
    swap_matrix,
)
from .report import CheckError, ClosureViolation, Report
from .structures import (
    AlphaConditionError,
    ModulePresentation,
    PairingPresentation,
    RationalSubmodule,
    StructurePresentation,
    canonical_pairing,
    check_adjoint_pair,
    check_alpha_condition,
    compute_antipode,
    convolution,
    convolution_inverse,
    convolution_unit,
    dualize_structure,
    make_structure,
    pairing_action,
    rational_submodule,
    verify_measuring_pairing,
    verify_structure,
)
from .entwining import (
    CoringPresentation,
    EntwinedModulePresentation,
    EntwiningPresentation,
    NuIso,
    SmashRing,
    build_coring,
    build_smash,
    entwined_smash_roundtrip,
    flip_entwining,
    hom_entwined,
    hom_entwined_basis,
    nu_iso,
    verify_entwined_module,
    verify_entwining,
    verify_entwining_morphism,
)
from .duality import (
    DualDatum,
    DualModule,
    adjunction_check,
    double_dual_comparison,
    dual_entwining,
    dual_entwining_morphism,
    dual_module_r,
    dual_module_upper_r,
)
from .doikoppinen import (
    AltDKStructure,
    DKIngredient,
    DKStructure,
    HCoextension,
    HExtension,
    UnsupportedDualization,
    alt_dk_entwining,
    check_cointegral,
    check_integral,
    coextension_quotient,
    coinvariants,
    dk_dual_module,
    dk_entwining,
    dual_alt_dk,
    dual_dk,
    dual_dk_morphism,
    dualize_coextension,
    dualize_dk_ingredient,
    h_extension,
    koppinen_smash,
    long_dimodule_check,
    verify_dk,
    verify_dk_compat,
    verify_dk_morphism,
)
from .catalog import catalog_entry, catalog_get, catalog_names

__all__ = [name for name in dir() if not name.startswith("_")]
