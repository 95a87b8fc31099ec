"""Certificate-generating exact linear algebra for nilpotent endomorphisms,
acyclic binary multicomplexes, and Grothendieck-group relation ledgers over
computable PIDs (integers, prime fields, rationals)."""

from .rings import GF, QQ, ZZ, Ring, ring_from_descriptor
from .matrices import (
    Matrix,
    block_diag,
    determinant,
    hermite_column_basis,
    inverse,
    is_invertible,
    kernel_basis,
    smith_normal_form,
    solve,
    split_surjection,
)
from .presentations import PresentedModule, submodule_quotient
from .nilobjects import (
    NilObject,
    NilSesWitness,
    VanishingCertificate,
    check_nil_morphism,
    kernel_filtration,
    make_nil_object,
    nil_direct_sum,
    vanishing_certificate,
    verify_vanishing_certificate,
)

__all__ = [
    "GF",
    "QQ",
    "ZZ",
    "Ring",
    "ring_from_descriptor",
    "Matrix",
    "block_diag",
    "determinant",
    "hermite_column_basis",
    "inverse",
    "is_invertible",
    "kernel_basis",
    "smith_normal_form",
    "solve",
    "split_surjection",
    "PresentedModule",
    "submodule_quotient",
    "NilObject",
    "NilSesWitness",
    "VanishingCertificate",
    "check_nil_morphism",
    "kernel_filtration",
    "make_nil_object",
    "nil_direct_sum",
    "vanishing_certificate",
    "verify_vanishing_certificate",
]
