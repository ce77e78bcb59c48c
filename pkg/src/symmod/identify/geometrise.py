"""Twist prescriptions for low-dimensional Sym(n)-modules.

A faithful Sym(n)-module has dimension at least n-2.  At or just above that
bound, the centralisation hypothesis needed by recognition holds after at
most a signature twist, except for the single exotic configuration at n = 6
in characteristic 2, where composing with an outer automorphism is required.
The prescription search simply tries the twists in that order and verifies
the hypothesis exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..gmodules import GModule, compose_with, sign_twist
from ..perms import outer_automorphism_sym6
from ..rings import characteristic_of
from .recognition import HypothesisFailed, bracket_hypothesis_witness
from .results import IdentifyError


class DimensionTooSmall(IdentifyError):
    pass


class NoBranchApplies(IdentifyError):
    pass


@dataclass(frozen=True)
class TwistPrescription:
    sign: bool = False
    outer: bool = False

    def describe(self) -> str:
        parts = []
        if self.outer:
            parts.append("outer")
        if self.sign:
            parts.append("sign")
        return "+".join(parts) if parts else "none"


def apply_twists(m: GModule, prescription: TwistPrescription) -> GModule:
    out = m
    if prescription.outer:
        out = compose_with(out, list(outer_automorphism_sym6()))
    if prescription.sign:
        out = sign_twist(out)
    return out


def first_geometrise(m: GModule, exhaustive: bool = False) -> TwistPrescription:
    """The twist making the bracket-centralisation hypothesis hold.

    Raises DimensionTooSmall below the faithful bound d >= n-2.  At d = n-2
    one of the branches must apply, so exhausting them raises the loud
    NoBranchApplies; above the bound a miss only means the module is not
    standard, reported as a hypothesis failure for the caller to translate.
    """
    if m.group != "sym":
        raise ValueError("twist prescriptions concern Sym-modules")
    n, d = m.n, m.dim
    q = characteristic_of(m.ring)
    if d < n - 2:
        raise DimensionTooSmall(
            f"dimension {d} is below the faithful bound {n - 2}; the input "
            f"is either unfaithful or a genuine counterexample")
    candidates = [TwistPrescription()]
    if q != 2:
        candidates.append(TwistPrescription(sign=True))
    if n == 6 and q == 2:
        candidates.append(TwistPrescription(outer=True))
    for prescription in candidates:
        twisted = apply_twists(m, prescription)
        if bracket_hypothesis_witness(twisted, exhaustive) is None:
            return prescription
    if d == n - 2:
        raise NoBranchApplies(
            "no twist makes the hypothesis hold at the minimal dimension; "
            "this contradicts the minimal-dimension analysis")
    raise HypothesisFailed(
        "no twist makes the bracket-centralisation hypothesis hold")
