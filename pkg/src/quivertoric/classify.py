"""Structural classification of toric quiver varieties, cross-checked by the Delzant oracle.

Pipeline: split into blocks, contract each block to a simple core, read off
the structural verdict (a proper cycle in some core means singular; a tree of
bundles means a product of projective spaces, up to the recorded blowdowns),
then compare against :func:`quivertoric.polytope.is_smooth` on the whole quiver.
The oracle is authoritative; ``consistent`` records whether the two agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .polytope import SmoothnessReport, VertexCheck, is_smooth
from .quiver import Quiver, from_dict as quiver_from_dict, require_valid, to_dict as quiver_to_dict
from .structure import ContractionStep, decompose, has_proper_cycle, simplify

__all__ = ["ClassificationReport", "FactorReport", "classify", "singularity_witness"]


@dataclass(frozen=True)
class FactorReport:
    factor: Quiver
    core: Quiver
    core_has_proper_cycle: bool
    projective_dimensions: tuple[int, ...]
    blowdown_count: int
    contraction_log: tuple[ContractionStep, ...]

    def describe(self) -> str:
        if self.core_has_proper_cycle:
            return "simple core with a proper cycle"
        spaces = " x ".join(f"P^{d}" for d in self.projective_dimensions) or "point"
        if self.blowdown_count:
            return f"{spaces}, then {self.blowdown_count} inverse blowdown(s)"
        return spaces

    def to_dict(self) -> dict:
        return {
            "factor": quiver_to_dict(self.factor),
            "core": quiver_to_dict(self.core),
            "core_has_proper_cycle": self.core_has_proper_cycle,
            "projective_dimensions": list(self.projective_dimensions),
            "blowdown_count": self.blowdown_count,
            "contraction_log": [s.to_dict() for s in self.contraction_log],
        }

    @classmethod
    def from_dict(cls, d: dict) -> FactorReport:
        return cls(
            quiver_from_dict(d["factor"]),
            quiver_from_dict(d["core"]),
            d["core_has_proper_cycle"],
            tuple(d["projective_dimensions"]),
            d["blowdown_count"],
            tuple(ContractionStep.from_dict(s) for s in d["contraction_log"]),
        )


@dataclass(frozen=True)
class ClassificationReport:
    verdict: str
    factors: tuple[FactorReport, ...]
    oracle_verdict: str
    consistent: bool
    witness: VertexCheck | None = None

    @property
    def blowdown_count(self) -> int:
        return sum(f.blowdown_count for f in self.factors)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "factors": [f.to_dict() for f in self.factors],
            "oracle_verdict": self.oracle_verdict,
            "consistent": self.consistent,
            "witness": self.witness.to_dict() if self.witness else None,
        }

    @classmethod
    def from_dict(cls, d: dict) -> ClassificationReport:
        return cls(
            d["verdict"],
            tuple(FactorReport.from_dict(f) for f in d["factors"]),
            d["oracle_verdict"],
            d["consistent"],
            VertexCheck.from_dict(d["witness"]) if d["witness"] else None,
        )


def _classify_factor(factor: Quiver, reverse: bool) -> FactorReport:
    core, log = simplify(factor, reverse=reverse)
    cyclic = has_proper_cycle(core)
    dims = () if cyclic else tuple(b.mult - 1 for b in core.bundles)
    blowdowns = sum(1 for s in log if s.kind == "blowdown")
    return FactorReport(factor, core, cyclic, dims, blowdowns, log)


def classify(q: Quiver, reverse: bool = False, oracle: SmoothnessReport | None = None) -> ClassificationReport:
    """Structural verdict per factor plus the Delzant oracle verdict on ``q``.

    ``reverse`` contracts the latest contractible arrow first, for order checks.
    A precomputed ``oracle`` report may be passed to avoid recomputation.
    """
    require_valid(q)
    factors = tuple(_classify_factor(sub, reverse) for sub, _ in decompose(q))
    verdict = "singular" if any(f.core_has_proper_cycle for f in factors) else "smooth"
    if oracle is None:
        oracle = is_smooth(q)
    return ClassificationReport(
        verdict=verdict,
        factors=factors,
        oracle_verdict=oracle.verdict,
        consistent=verdict == oracle.verdict,
        witness=oracle.witness,
    )


def singularity_witness(q: Quiver) -> VertexCheck:
    """The first polytope vertex failing simplicity or unimodularity."""
    report = is_smooth(q)
    if report.smooth:
        raise PreconditionError("quiver variety is smooth; there is no singularity witness")
    return report.witness
