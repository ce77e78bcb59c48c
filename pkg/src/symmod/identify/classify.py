"""The full identification pipeline: faithfulness and irreducibility gates,
thresholds, twist search, extension from Alt(n) to Sym(n), and recognition,
assembled into a single verdict with witnesses."""

from __future__ import annotations

from ..gmodules import GModule, is_faithful, is_irreducible
from ..rings import characteristic_of
from .extension import (HypothesisFailed as ExtensionHypothesisFailed,
                        LineDegenerate, alt_bracket_hypothesis_witness,
                        compute_line, extend_alt_to_sym, _aux_choices)
from .geometrise import apply_twists, first_geometrise
from .recognition import HypothesisFailed, recognise
from .results import ClassificationResult


def classify(m: GModule, seed: int = 0, exhaustive: bool = False) -> ClassificationResult:
    """Identify a faithful irreducible module of dimension below its degree.

    Alt-modules within the thresholds (n >= 7, and n >= 10 when the
    characteristic is 2) are extended to Sym(n) and recognised; Sym-modules
    are twisted per the prescription search and recognised.  Inputs outside
    the thresholds, or failing any gate, receive a structured NotRecognized
    with the specific reason; the pipeline never guesses.
    """
    d = m.dim
    n = m.n
    if not m.ring.is_field:
        return ClassificationResult(
            base="NotRecognized", q=characteristic_of(m.ring), d=d,
            reason=f"classification requires a field or Q ring, got "
                   f"{m.ring.token()}", stage="preconditions")
    q = characteristic_of(m.ring)

    def unrecognized(reason, stage, notes=()):
        return ClassificationResult(base="NotRecognized", q=q, d=d,
                                    reason=reason, stage=stage,
                                    notes=list(notes))

    if d >= n:
        return unrecognized(
            f"dimension {d} is not below the degree {n}", "preconditions")
    if m.group == "alt":
        if n < 7:
            notes = _small_alt_line_notes(m)
            return unrecognized(
                f"degree {n} is below the Alt threshold n >= 7",
                "preconditions", notes)
        if q == 2 and n < 10:
            return unrecognized(
                f"degree {n} is below the Alt threshold n >= 10 in "
                f"characteristic 2", "preconditions")

    faithful = is_faithful(m)
    if not faithful:
        return unrecognized(
            f"not faithful: {faithful.witness.cycle_string()} acts trivially",
            "faithfulness")
    verdict = is_irreducible(m, seed=seed)
    if verdict.verdict == "reducible":
        return unrecognized(
            f"reducible: invariant subspace of dimension {verdict.witness.dim}",
            "irreducibility")
    if verdict.verdict == "unknown":
        return unrecognized("irreducibility could not be decided",
                            "irreducibility")

    if m.group == "alt":
        witness = alt_bracket_hypothesis_witness(m, exhaustive)
        if witness is not None:
            alpha, h = witness
            raise ExtensionHypothesisFailed(
                f"bracket of {alpha.cycle_string()} not centralised by "
                f"{h.cycle_string()}; this contradicts the low-dimension "
                f"analysis within thresholds")
        try:
            ext, convention = extend_alt_to_sym(m, exhaustive)
        except LineDegenerate as exc:
            return unrecognized(f"line system degenerate: {exc}", "extension")
        result = recognise(ext, seed=seed, exhaustive=exhaustive,
                           assume_checked=True)
        result.extension = ext
        result.extension_unique = (q == 2)
        result.notes.append(f"extension convention: {convention}")
        if result.base == "NotRecognized":
            result.stage = "recognise-after-extension"
        return result

    # Sym path: twist prescription then recognition
    try:
        prescription = first_geometrise(m, exhaustive)
    except HypothesisFailed as exc:
        return unrecognized(str(exc), "geometrise")
    twisted = apply_twists(m, prescription)
    result = recognise(twisted, seed=seed, exhaustive=exhaustive,
                       assume_checked=True)
    result.sign_twisted = prescription.sign
    result.outer_twisted = prescription.outer
    if prescription.sign or prescription.outer:
        result.notes.append(f"twists applied: {prescription.describe()}")
    return result


def _small_alt_line_notes(m: GModule):
    """For below-threshold Alt inputs, demonstrate (when it happens) that the
    recovered lines are not well-defined."""
    if m.n < 5 or not m.ring.is_field:
        return []
    try:
        aux1, aux2 = _aux_choices(m.n, 1, 2)
        l1 = compute_line(m, 1, 2, aux1)
        l2 = compute_line(m, 1, 2, aux2)
        if l1 != l2:
            return ["lines are not well-defined: the (1,2)-line depends on "
                    "the auxiliary symbols"]
        return []
    except Exception:
        return []
