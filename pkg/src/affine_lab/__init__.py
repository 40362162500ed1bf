"""Affine structures, semi-braces and Yang-Baxter solutions on small finite groups."""

from .affine import (AffineStructure, Flags, classify, compose_affine, composition_conditions,
                     equivalence_classes, transport, verify_affine)
from .errors import AxiomError, Check, ConsistencyError, InputError
from .groups import (FiniteGroup, GroupHom, automorphisms, direct_product, find_isomorphism,
                     identify, make_abelian, make_cyclic, make_dihedral, make_quaternion,
                     make_symmetric, parse_group_spec, verify_group)
from .semibrace import SemiBrace, from_affine, lambda_rho, to_affine, verify_semibrace
from .ybe import SetSolution, solution_from, solution_report

__version__ = "0.1.0"

__all__ = [
    "AffineStructure", "Flags", "classify", "compose_affine", "composition_conditions",
    "equivalence_classes", "transport", "verify_affine",
    "AxiomError", "Check", "ConsistencyError", "InputError",
    "FiniteGroup", "GroupHom", "automorphisms", "direct_product", "find_isomorphism",
    "identify", "make_abelian", "make_cyclic", "make_dihedral", "make_quaternion",
    "make_symmetric", "parse_group_spec", "verify_group",
    "SemiBrace", "from_affine", "lambda_rho", "to_affine", "verify_semibrace",
    "SetSolution", "solution_from", "solution_report",
]
