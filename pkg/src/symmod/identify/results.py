"""Shared result types for the identification pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..linalg import Matrix, Subspace


class IdentifyError(Exception):
    pass


@dataclass
class ClassificationResult:
    """The pipeline's verdict with explicit witnesses.

    ``base`` is one of StandardRstd, UstdCovered, NotRecognized; the rendered
    ``verdict`` string folds in the recorded twists.
    """

    base: str
    q: int | None
    d: int
    dim_l: int | None = None
    kernel_dim: int | None = None
    kernel: Subspace | None = None
    intertwiner: Matrix | None = None
    target: str | None = None
    sign_twisted: bool = False
    outer_twisted: bool = False
    reason: str | None = None
    stage: str | None = None
    extension: object | None = None
    extension_unique: bool | None = None
    notes: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.base == "NotRecognized":
            return "NotRecognized"
        if self.sign_twisted:
            name = ("SignTwistedRstd" if self.base == "StandardRstd"
                    else "SignTwisted" + self.base)
        else:
            name = self.base
        if self.outer_twisted:
            return f"OuterTwisted({name})"
        return name

    @property
    def recognized(self) -> bool:
        return self.base != "NotRecognized"
