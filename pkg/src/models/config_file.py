""" Run config files: INI sections read with configparser, validated with pydantic """
import configparser
import logging
from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, ValidationError, root_validator, validator

from src import settings
from src.errors import ConfigError, InvalidParameter
from src.fock_core.states import ModeKind, ModePreparation
from src.samplers.run_config import RunConfig
from utils.mode_grammar import parse_angle, parse_mode

logger = logging.getLogger(__name__)


class ModelEnum(str, Enum):
    quantum = "quantum"
    particle = "particle"
    wave = "wave"


ALLOWED_KINDS = {
    ModelEnum.quantum: (ModeKind.vacuum, ModeKind.coherent, ModeKind.fock, ModeKind.squeezed),
    ModelEnum.particle: (ModeKind.vacuum, ModeKind.fock, ModeKind.thermal),
    ModelEnum.wave: (ModeKind.vacuum, ModeKind.coherent, ModeKind.thermal),
}


class _Section(BaseModel):
    class Config:
        extra = "forbid"
        allow_mutation = False


class InputSection(_Section):
    model: ModelEnum = Field(description="quantum, particle or wave", default=ModelEnum.quantum)
    mode_a: str = Field(description="Preparation of input mode A", default="vacuum")
    mode_b: str = Field(description="Preparation of input mode B", default="vacuum")
    n_max: Optional[int] = Field(description="Fock cutoff, chosen from tau when absent", default=None, ge=0)

    @validator("mode_a", "mode_b")
    def mode_must_parse(cls, value):
        try:
            parse_mode(value)
        except (ConfigError, InvalidParameter) as e:
            raise ValueError(str(e))
        return value.strip()

    @root_validator(skip_on_failure=True)
    def modes_must_fit_model(cls, values):
        model = values["model"]
        for key in ("mode_a", "mode_b"):
            kind = parse_mode(values[key]).kind
            if kind not in ALLOWED_KINDS[model]:
                raise ValueError(f"{key}: {kind.value} input is not available in the {model.value} model")
        return values

    @property
    def prep_a(self) -> ModePreparation:
        return parse_mode(self.mode_a)

    @property
    def prep_b(self) -> ModePreparation:
        return parse_mode(self.mode_b)


class InterferometerSection(_Section):
    theta: float = Field(description="Beam splitter phase in radians", default=settings.THETA)

    @validator("theta", pre=True)
    def theta_may_use_pi(cls, value):
        try:
            return parse_angle(value)
        except ConfigError as e:
            raise ValueError(str(e))


class LossSection(_Section):
    eta: float = Field(description="Detection efficiency of both modes", default=settings.ETA, ge=0.0, le=1.0)
    eta_a: Optional[float] = Field(description="Efficiency of mode A", default=None, ge=0.0, le=1.0)
    eta_b: Optional[float] = Field(description="Efficiency of mode B", default=None, ge=0.0, le=1.0)


class DetectorSection(_Section):
    d_bins: int = Field(description="Time bins of each click detector", default=settings.D_BINS, ge=settings.MIN_D_BINS)


class RunSection(_Section):
    shots: int = Field(description="Number of simulated shots", ge=1)
    seed: int = Field(description="Root seed", ge=0)
    workers: int = Field(description="Worker processes", default=1, ge=1)
    chunk_shots: int = Field(description="Shots per seeded chunk", default=settings.CHUNK_SHOTS, ge=1)


class AnalysisSection(_Section):
    tau: float = Field(description="Truncation tolerance", default=settings.TAU, gt=0.0)
    intensity_warning: float = Field(
        description="E(M+N) above which the click estimator is flagged", default=settings.INTENSITY_WARNING, gt=0.0
    )


class ConfigFile(_Section):
    """A whole run config file."""

    input: InputSection
    interferometer: InterferometerSection = InterferometerSection()
    loss: LossSection = LossSection()
    detector: DetectorSection = DetectorSection()
    run: RunSection
    analysis: AnalysisSection = AnalysisSection()

    @property
    def description(self) -> str:
        return (
            f"{self.input.model.value}: {self.input.mode_a} x {self.input.mode_b}, "
            f"theta={self.interferometer.theta!r}"
        )

    def run_config(self) -> RunConfig:
        return RunConfig(
            shots=self.run.shots,
            seed=self.run.seed,
            eta=self.loss.eta,
            eta_a=self.loss.eta_a,
            eta_b=self.loss.eta_b,
            theta=self.interferometer.theta,
            d_bins=self.detector.d_bins,
            description=self.description,
            workers=self.run.workers,
            chunk_shots=self.run.chunk_shots,
        )


def read_sections(path: str) -> dict:
    """Raw {section: {key: value}} text of an INI file, in file order."""
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path) as f:
            parser.read_file(f)
    except configparser.Error as e:
        raise ConfigError(f"{path}: {e}") from None
    return {section: dict(parser[section]) for section in parser.sections()}


def load_config(path: str) -> tuple[ConfigFile, dict]:
    """(validated config, raw sections for echoing).

    Raises:
        ConfigError: for unknown sections or keys, bad values or unreadable syntax.
        OSError: when the file cannot be opened.
    """
    logger.info(f"path={path}")
    raw = read_sections(path)
    try:
        config = ConfigFile.parse_obj(raw)
    except ValidationError as e:
        logger.error(f"invalid config {path}: {e}")
        raise ConfigError(f"{path}: {e}") from None
    logger.info("- Return")
    return config, raw
