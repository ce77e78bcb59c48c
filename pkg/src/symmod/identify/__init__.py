"""Identification machinery: operator calculus, recognition of standard
covers, extension of Alt(n)-modules to Sym(n), twist prescriptions, and the
assembled classification pipeline."""

from .classify import classify
from .extension import (LineDegenerate, LineSystem, RelationFailed,
                        alt_bracket_hypothesis_witness, build_line_system,
                        compute_line, extend_alt_to_sym)
from .geometrise import (DimensionTooSmall, NoBranchApplies,
                         TwistPrescription, apply_twists, first_geometrise)
from .operators import (CharacteristicClash, CharacteristicTwo,
                        LocalEquationsReport, OperatorPair,
                        check_bracket_centralised, check_local_equations,
                        coprimality_decompose, weight_decompose)
from .recognition import (EquivarianceFailed, HypothesisFailed,
                          KernelMismatch, bracket_hypothesis_witness,
                          recognise)
from .results import ClassificationResult, IdentifyError

__all__ = [
    "CharacteristicClash", "CharacteristicTwo", "ClassificationResult",
    "DimensionTooSmall", "EquivarianceFailed", "HypothesisFailed",
    "IdentifyError", "KernelMismatch", "LineDegenerate", "LineSystem",
    "LocalEquationsReport", "NoBranchApplies", "OperatorPair",
    "RelationFailed", "TwistPrescription", "alt_bracket_hypothesis_witness",
    "apply_twists", "bracket_hypothesis_witness", "build_line_system",
    "check_bracket_centralised", "check_local_equations", "classify",
    "compute_line", "coprimality_decompose", "extend_alt_to_sym",
    "first_geometrise", "recognise", "weight_decompose",
]
