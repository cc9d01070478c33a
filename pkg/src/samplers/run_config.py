from typing import Optional

from pydantic import BaseModel, Field, validator

from src import settings


class RunConfig(BaseModel):
    """Parameters of one simulated run. The seed fully determines the output."""

    shots: int = Field(description="Number of shots (pulses) to simulate", ge=1)
    seed: int = Field(description="Root seed of the per-chunk random streams", ge=0)
    eta: float = Field(description="Overall detection efficiency", default=settings.ETA, ge=0.0, le=1.0)
    eta_a: Optional[float] = Field(description="Efficiency of mode A, defaults to eta", default=None, ge=0.0, le=1.0)
    eta_b: Optional[float] = Field(description="Efficiency of mode B, defaults to eta", default=None, ge=0.0, le=1.0)
    theta: float = Field(description="Beam splitter phase in radians", default=settings.THETA)
    d_bins: int = Field(description="Number of detector time bins", default=settings.D_BINS, ge=settings.MIN_D_BINS)
    description: str = Field(description="Human readable input specification", default="")
    workers: int = Field(description="Worker processes for shot generation", default=1, ge=1)
    chunk_shots: int = Field(description="Shots per independently seeded chunk", default=settings.CHUNK_SHOTS, ge=1)

    class Config:
        allow_mutation = False
        extra = "forbid"

    @validator("theta")
    def theta_must_be_finite(cls, value):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError("theta must be finite")
        return value

    @property
    def efficiency_a(self) -> float:
        return self.eta if self.eta_a is None else self.eta_a

    @property
    def efficiency_b(self) -> float:
        return self.eta if self.eta_b is None else self.eta_b
