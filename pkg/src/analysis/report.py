""" Report models and value(1±rel) formatting """
import json
import logging
import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field

from src.witness.result import WitnessResult

logger = logging.getLogger(__name__)

REPORT_FORMAT = "wpd-report-v1"


def _significant(x: float) -> str:
    return np.format_float_positional(x, precision=2, fractional=False, trim="-")


def format_relative(value: float, err: float) -> str:
    """value(1 ± err/|value|) with the value as a mantissa in [0.1, 1),
    e.g. 0.00395 ± 2.37e-5 -> '0.395e-2(1±0.006)'."""
    if value == 0:
        return f"0(±{_significant(err)})"
    exponent = math.floor(math.log10(abs(value))) + 1
    mantissa = round(value / 10.0**exponent, 3)
    if abs(mantissa) >= 1.0:
        exponent += 1
        mantissa = round(value / 10.0**exponent, 3)
    rel = abs(err / value)
    rel_text = _significant(rel) if rel < 1 else str(int(round(rel)))
    return f"{mantissa:.3f}e{exponent}(1±{rel_text})"


class Estimate(BaseModel):
    """A value with its random and systematic uncertainty."""

    value: float = Field(description="Point estimate")
    random_err: float = Field(description="One standard deviation of statistical error", default=0.0)
    sys_err: float = Field(description="Bound on the systematic detector bias", default=0.0)
    display: str = Field(description="value(1±relative total error) for display", default="")

    @staticmethod
    def of(value: float, random_err: float = 0.0, sys_err: float = 0.0) -> "Estimate":
        return Estimate(
            value=value,
            random_err=random_err,
            sys_err=sys_err,
            display=format_relative(value, random_err + sys_err),
        )


class WitnessReport(BaseModel):
    e_wave: Estimate = Field(description="Minimal eigenvalue of C - B_wave")
    e_part: Estimate = Field(description="Minimal eigenvalue of C - B_part")
    significance_wave: float = Field(description="|e_wave| / (random + systematic) when e_wave < 0")
    significance_part: float = Field(description="|e_part| / (random + systematic) when e_part < 0")
    significance_wave_random: float = Field(description="|e_wave| / random error when e_wave < 0")
    significance_part_random: float = Field(description="|e_part| / random error when e_part < 0")


class AnalysisReport(BaseModel):
    """Analysis of one histogram: a row of the results table, a point on the efficiency line."""

    format: str = Field(description="Artifact format version", default=REPORT_FORMAT)
    input: str = Field(description="Input description", default="")
    d_bins: Optional[int] = Field(description="Detector bins, absent for count data", default=None)
    shots: Optional[int] = Field(description="Number of shots", default=None)
    seed: Optional[int] = Field(description="Seed of the simulated run", default=None)
    mean_total: Estimate = Field(description="E(M+N)")
    witness: WitnessReport
    warnings: list[str] = Field(description="Conditions that weaken the result", default_factory=list)

    def to_json(self) -> str:
        return json.dumps(self.dict(), indent=2) + "\n"


def significance_report(
    r: WitnessResult,
    mean_total: float,
    mean_total_err: float = 0.0,
    mean_total_sys: float = 0.0,
    description: str = "",
    d_bins: Optional[int] = None,
    shots: Optional[int] = None,
    seed: Optional[int] = None,
    warnings: Optional[list[str]] = None,
) -> AnalysisReport:
    return AnalysisReport(
        input=description,
        d_bins=d_bins,
        shots=shots,
        seed=seed,
        mean_total=Estimate.of(mean_total, mean_total_err, mean_total_sys),
        witness=WitnessReport(
            e_wave=Estimate.of(r.e_wave, r.err_wave_random, r.err_wave_sys),
            e_part=Estimate.of(r.e_part, r.err_part_random, r.err_part_sys),
            significance_wave=r.significance_wave,
            significance_part=r.significance_part,
            significance_wave_random=r.significance_wave_random,
            significance_part_random=r.significance_part_random,
        ),
        warnings=list(warnings or []),
    )
