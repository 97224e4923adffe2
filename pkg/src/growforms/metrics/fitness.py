"""Overall fitness: the mean of printability, relative coverage, complexity."""

from __future__ import annotations

from dataclasses import dataclass

from ..config import MetricsConfig
from ..stack import LayerStack
from .complexity import ComplexityReport, complexity
from .coverage import CoverageReport, relative_coverage
from .printability import PrintabilityReport, printability

__all__ = ["FitnessVector", "evaluate"]

FITNESS_VERSION = 1


@dataclass
class FitnessVector:
    P: float
    Rc: float
    C: float
    overall: float
    reports: dict | None = None

    def objective(self, name: str) -> float:
        return {
            "overall": self.overall,
            "printability": self.P,
            "coverage": self.Rc,
            "complexity": self.C,
        }[name]

    def to_dict(self, include_reports: bool = True) -> dict:
        d = {
            "version": FITNESS_VERSION,
            "P": self.P,
            "Rc": self.Rc,
            "C": self.C,
            "overall": self.overall,
        }
        if include_reports and self.reports is not None:
            d["reports"] = self.reports
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "FitnessVector":
        return cls(P=d["P"], Rc=d["Rc"], C=d["C"], overall=d["overall"],
                   reports=d.get("reports"))


def evaluate(stack: LayerStack, cfg: MetricsConfig) -> FitnessVector:
    p_report: PrintabilityReport = printability(stack, cfg)
    cov_report: CoverageReport = relative_coverage(stack, cfg)
    cx_report: ComplexityReport = complexity(stack, cfg)
    p, rc, c = p_report.P, cov_report.Rc, cx_report.C
    return FitnessVector(
        P=p,
        Rc=rc,
        C=c,
        overall=(p + rc + c) / 3.0,
        reports={
            "printability": p_report.to_dict(),
            "coverage": {k: v for k, v in cov_report.to_dict().items()
                         if k != "tile_scores"},
            "complexity": cx_report.to_dict(),
        },
    )
