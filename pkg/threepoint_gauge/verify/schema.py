from __future__ import annotations
from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field, model_validator
from threepoint_gauge import config
from threepoint_gauge.realization import RealizationParams
from threepoint_gauge.ring import Rational
"""Pydantic models for suite configuration, reports and YAML plans.

Models:
- SuiteConfig: ranges, test-vector policy and realization parameters of one run.
- CheckRecord: one checked identity (fixed JSON keys).
- CheckReport: records of one suite plus cross-checks and notes.
- RunSummary: every report of a run.
- RunSpec / PlanSpec: YAML plan root.
"""

SuiteName = Literal["mu", "d3", "kahler", "jacobi", "heisenberg", "current", "virasoro", "gauge"]

ALL_SUITES: Tuple[str, ...] = ("mu", "d3", "kahler", "jacobi", "heisenberg", "current", "virasoro", "gauge")


class SuiteConfig(BaseModel):
    """Configuration of a verification run.

    Attributes:
        suites: Suites to run, in order.
        modes: Mode range M; modes run over [−M, M] for the field suites.
        heisenberg_modes: Mode range of the oscillator / Heisenberg suite.
        degree: Degree bound D of random test vectors.
        vectors: Number of seeded random test vectors (the two vacua are always added).
        index_range: Variable indices of random vectors lie in [−index_range, index_range].
        seed: Random seed.
        mu_range: Grid bound of the `mu` suite.
        jacobi_range: Exponent bound of the `jacobi` suite.
        d3_range: Exponent bound of the `d3` and `kahler` suites.
        params: Realization parameters (r, Heisenberg data, gauge coefficients, form).
        form_scale: Invariant form scale; None calibrates it on {1, 4}.
        orderings: Orderings r run by the `current` suite.
        pairs: Optional restriction of the generator pairs of the field suites.
        exhaustive: Heisenberg suite sweeps every monomial instead of random vectors.
        exhaustive_degree: Degree bound of the exhaustive sweep.
        exhaustive_range: Index bound of the exhaustive sweep.
        center_action: Witt algebra acts on Ω_R/dR through der_action.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    suites: List[SuiteName] = Field(default_factory=lambda: list(ALL_SUITES))
    modes: int = 2
    heisenberg_modes: int = 4
    degree: int = 2
    vectors: int = 8
    index_range: int = 4
    seed: int = config.THREEPOINT_SEED
    mu_range: int = 8
    jacobi_range: int = 3
    d3_range: int = 6
    params: RealizationParams = Field(default_factory=RealizationParams)
    form_scale: Optional[Rational] = None
    orderings: List[Literal[0, 1]] = Field(default_factory=lambda: [0, 1])
    pairs: Optional[List[Tuple[str, str]]] = None
    exhaustive: bool = False
    exhaustive_degree: int = 3
    exhaustive_range: int = 4
    center_action: bool = False

    @model_validator(mode="after")
    def _check_ranges(self) -> "SuiteConfig":
        if self.modes < 1 or self.heisenberg_modes < 1:
            raise ValueError("mode ranges must be at least 1")
        if self.degree < 0 or self.exhaustive_degree < 0:
            raise ValueError("degree must be non-negative")
        if self.vectors < 0 or self.index_range < 1 or self.exhaustive_range < 1:
            raise ValueError("vectors must be non-negative and index_range at least 1")
        if min(self.mu_range, self.jacobi_range, self.d3_range) < 0:
            raise ValueError("suite ranges must be non-negative")
        if self.form_scale is not None and self.form_scale == 0:
            raise ValueError("form scale must be non-zero")
        return self

    def mode_range(self) -> range:
        return range(-self.modes, self.modes + 1)


class CheckRecord(BaseModel):
    """One checked identity; `vector` is "*" when the record covers every test vector."""
    suite: str
    relation: str
    m: Optional[int] = None
    n: Optional[int] = None
    vector: str = "-"
    status: Literal["pass", "fail"]
    expected: str
    actual: str
    discrepancy: str = "0"

    def sort_key(self) -> Tuple:
        def opt(x: Optional[int]) -> Tuple[bool, int]:
            return (x is None, x or 0)
        return (self.suite, self.relation, opt(self.m), opt(self.n), self.vector)


class CheckReport(BaseModel):
    """Stage-1 records, stage-2 cross-checks (never affect pass/fail) and notes."""
    suite: str
    records: List[CheckRecord] = Field(default_factory=list)
    cross_checks: List[CheckRecord] = Field(default_factory=list)
    notes: Dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.records)

    @property
    def failures(self) -> List[CheckRecord]:
        return [r for r in self.records if r.status == "fail"]

    def sorted(self) -> "CheckReport":
        return CheckReport(
            suite=self.suite,
            records=sorted(self.records, key=CheckRecord.sort_key),
            cross_checks=sorted(self.cross_checks, key=CheckRecord.sort_key),
            notes=self.notes,
        )


class RunSummary(BaseModel):
    reports: List[CheckReport] = Field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def to_json(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "reports": [r.sorted().model_dump(mode="json") for r in sorted(self.reports, key=lambda r: r.suite)],
        }

    def render_text(self) -> str:
        """One line per suite and per failing record, stable-sorted."""
        lines = []
        for report in sorted(self.reports, key=lambda r: r.suite):
            report = report.sorted()
            status = "PASS" if report.passed else "FAIL"
            mismatches = sum(1 for c in report.cross_checks if c.status == "fail")
            lines.append(f"{report.suite:<11} {status}  records={len(report.records)} "
                         f"failed={len(report.failures)} cross_checks={len(report.cross_checks)} "
                         f"cross_mismatch={mismatches}")
            for rec in report.failures:
                lines.append(f"  {rec.relation} m={rec.m} n={rec.n} v={rec.vector}: "
                             f"expected {rec.expected}, got {rec.actual}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


class RunSpec(BaseModel):
    """A named run of a plan: suites plus overrides of SuiteConfig / realization fields.

    Attributes:
        name: Run name.
        suites: Suites to run (default: all).
        overrides: SuiteConfig overrides (`modes`, `vectors`, ...).
        r: Ordering r of the realization.
        kappa0: κ₀; the gauge constraint set is rebuilt around it.
        b0: B₀.
        b1: (B¹₀₀ = B¹₁₁, B¹₀₁, B¹₁₀).
    """
    name: str
    suites: List[SuiteName] = Field(default_factory=lambda: list(ALL_SUITES))
    overrides: Dict[str, Any] = Field(default_factory=dict)
    r: Literal[0, 1] = 1
    kappa0: Rational = Fraction(1)
    b0: Rational = Fraction(0)
    b1: Tuple[Rational, Rational, Rational] = (Fraction(0), Fraction(0), Fraction(0))


class PlanSpec(BaseModel):
    """Plan root: a list of runs (must not be empty)."""
    version: Optional[str] = None
    runs: List[RunSpec]

    @model_validator(mode="after")
    def _non_empty_runs(self) -> "PlanSpec":
        if not self.runs:
            raise ValueError("El plan debe contener al menos una ejecución.")
        names = [r.name for r in self.runs]
        if len(set(names)) != len(names):
            raise ValueError("run names must be unique")
        return self
