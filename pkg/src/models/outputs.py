from enum import Enum

from pydantic import BaseModel, Field

THEORY_FORMAT = "wpd-theory-v1"
SWEEP_FORMAT = "wpd-sweep-v1"
FIT_FORMAT = "wpd-fit-v1"


class StateFamily(str, Enum):
    tmsv = "tmsv"
    coherent = "coherent"
    fock = "fock"
    vacuum = "vacuum"


class ViaEnum(str, Enum):
    closed_form = "closed_form"
    pipeline = "pipeline"


class TheoryPoint(BaseModel):
    """Witnesses of one input state."""

    format: str = Field(description="Artifact format version", default=THEORY_FORMAT)
    state: str = Field(description="Input state description")
    via: ViaEnum = Field(description="Closed form or exact Fock-space pipeline")
    parameter: float = Field(description="Swept parameter value", default=0.0)
    e_wave: float = Field(description="Minimal eigenvalue of C - B_wave")
    e_part: float = Field(description="Minimal eigenvalue of C - B_part")
    mean_total: float = Field(description="E(M+N) at the detectors")


class EfficiencyFitReport(BaseModel):
    """Single-parameter fit of e = -(eta/2) E(M+N) over several reports."""

    format: str = Field(description="Artifact format version", default=FIT_FORMAT)
    eta: float = Field(description="Fitted efficiency")
    eta_err: float = Field(description="Standard error of the fitted efficiency")
    points: int = Field(description="Number of (E(M+N), e) points used")
    inputs: list[str] = Field(description="Histogram files that entered the fit")
