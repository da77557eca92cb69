"""Exact computation of invariant filtrations, augmentation-graded
dimensions, and layer cohomology of group representations over Q and F_p,
with a machine verifier for the structure theorems that tie them together."""

from .checks import run_checks
from .fields import GF, QQ, FieldSpec
from .groupalg import (AModule, EnumerationCapExceeded, ExtComplex,
                       FiniteGroup, FreeResolution, aug_power,
                       aug_power_chain, enumerate_group, ext, ext_induced,
                       finite_hom_space, free_resolution,
                       graded_dims_from_group, long_exact_sequence)
from .instances import (InstanceError, InstanceSpec, build_instance,
                        load_instance, loads_instance, parse_instance)
from .invariants import (Filtration, Representation, h1_fox,
                         invariants_direct, invariants_filtration,
                         lambda_power, order_lowering, restriction_check)
from .linalg import (Matrix, Subspace, kernel, quotient_map, solve,
                     span_closure)
from .magnus import (GradedDims, MemoryCapExceeded, TruncatedTensor,
                     graded_dims, magnus_expand, quotient_algebra)
from .report import Report
from .words import (FoxDerivative, GroupPresentation, Word, WordSyntaxError,
                    exponent_matrix, fox_derivative, hom_space, parse_word)

__version__ = "0.1.0"

__all__ = [
    "AModule", "EnumerationCapExceeded", "ExtComplex", "FieldSpec",
    "Filtration", "FiniteGroup", "FoxDerivative", "FreeResolution", "GF",
    "GradedDims", "GroupPresentation", "InstanceError", "InstanceSpec",
    "Matrix", "MemoryCapExceeded", "QQ", "Report", "Representation",
    "Subspace", "TruncatedTensor", "Word", "WordSyntaxError", "aug_power",
    "aug_power_chain", "build_instance", "enumerate_group", "ext",
    "ext_induced", "exponent_matrix", "finite_hom_space", "fox_derivative",
    "free_resolution", "graded_dims", "graded_dims_from_group", "h1_fox",
    "hom_space", "invariants_direct", "invariants_filtration", "kernel",
    "lambda_power", "load_instance", "loads_instance", "long_exact_sequence",
    "magnus_expand", "order_lowering", "parse_instance", "parse_word",
    "quotient_algebra", "quotient_map", "restriction_check", "run_checks",
    "solve", "span_closure",
]
