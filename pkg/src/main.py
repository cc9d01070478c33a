"""A command line interface for the wpd package"""

import argparse
import json
import logging.config
import os
import os.path as osp
import sys

from pydantic import ValidationError

from logger.logger_config import get_logging_config
from src import settings
from src.analysis.estimate import analyze_histogram, fit_efficiency
from src.analysis.theory import detected_distribution, sweep, sweep_values, theory_point
from src.errors import ConfigError, WpdError
from src.models.config_file import ModelEnum, load_config
from src.models.outputs import SWEEP_FORMAT, EfficiencyFitReport, StateFamily, ViaEnum
from src.samplers.classical import (
    ClassicalEnsemble,
    EnsembleKind,
    sample_classical_particles,
    sample_classical_waves,
)
from src.samplers.quantum import sample_quantum_shots
from utils import paths
from utils.histogram_io import config_echo, read_histogram, write_histogram
from utils.mode_grammar import parse_angle

# Setup Logger
logging.config.dictConfig(get_logging_config())
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_IO = 3


def angle(value: str) -> float:
    """argparse type for angles such as 0.3, pi or -0.5*pi"""
    try:
        return parse_angle(value)
    except ConfigError as e:
        raise argparse.ArgumentTypeError(str(e))


def get_parser() -> argparse.ArgumentParser:
    cmd_parser = argparse.ArgumentParser(
        prog="wpd",
        usage="Typical case: %(prog)s simulate -config path_to_config",
        description="Wave/particle nonclassicality witnesses: closed-form theory, "
        "exact Fock-space pipelines, simulated click-detector experiments "
        "and their analysis.",
        fromfile_prefix_chars="@",
    )
    commands = cmd_parser.add_subparsers(dest="command", metavar="command")

    theory = commands.add_parser("theory", help="Witnesses of a benchmark input state")
    theory.add_argument("-state", "--state", choices=[s.value for s in StateFamily], required=True)
    theory.add_argument("-q", "--q", type=float, help="TMSV squeezing parameter tanh^2 r")
    theory.add_argument("-alpha", "--alpha", type=complex, default=0j, help="Coherent amplitude of mode A")
    theory.add_argument("-beta", "--beta", type=complex, default=0j, help="Coherent amplitude of mode B")
    theory.add_argument("-theta", "--theta", type=angle, default=settings.THETA, help="Beam splitter phase")
    theory.add_argument("-m", "--m", type=int, default=0, help="Photons in mode A")
    theory.add_argument("-n", "--n", type=int, default=0, help="Photons in mode B")
    theory.add_argument("-eta", "--eta", type=float, default=1.0, help="Efficiency. Default is 1 (lossless)")
    theory.add_argument("-via", "--via", choices=[v.value for v in ViaEnum], default=ViaEnum.closed_form.value)
    theory.add_argument(
        "-tau", "--tau", type=float, default=settings.PIPELINE_TAU, help="Truncation tolerance of -via pipeline"
    )
    theory.add_argument("-output", "--output", default="", help="JSON output path, stdout when empty")

    simulate = commands.add_parser("simulate", help="Simulate a run and write its histogram")
    simulate.add_argument("-config", "--config", required=True, help="Path to the run config file")
    simulate.add_argument("-output", "--output", default="", help="Histogram output path")

    analyze = commands.add_parser("analyze", help="Analyze histogram files into reports")
    analyze.add_argument("-histograms", "--histograms", nargs="+", required=True, help="Histogram files")
    analyze.add_argument("-output", "--output", default="", help="Report path (single histogram only)")
    analyze.add_argument("-intensity_warning", "--intensity_warning", type=float, default=None)

    sweep_cmd = commands.add_parser("sweep", help="Theory curves as CSV")
    sweep_cmd.add_argument("-family", "--family", choices=["coherent", "fock", "tmsv"], required=True)
    sweep_cmd.add_argument("-start", "--start", type=float, required=True)
    sweep_cmd.add_argument("-stop", "--stop", type=float, required=True)
    sweep_cmd.add_argument("-num", "--num", type=int, default=21)
    sweep_cmd.add_argument("-by", "--by", choices=["q", "mean_total"], default="q", help="TMSV parameter")
    sweep_cmd.add_argument("-eta", "--eta", type=float, default=1.0)
    sweep_cmd.add_argument("-via", "--via", choices=[v.value for v in ViaEnum], default=ViaEnum.closed_form.value)
    sweep_cmd.add_argument("-tau", "--tau", type=float, default=settings.PIPELINE_TAU)
    sweep_cmd.add_argument("-output", "--output", default="", help="CSV output path, stdout when empty")

    return cmd_parser


def get_cfg(argv=None) -> dict:
    """Parsed command line as a plain dict"""
    logger.info("()")
    cmd_parser = get_parser()
    args = cmd_parser.parse_args(argv if argv is not None else (sys.argv[1:] or ["-h"]))
    if args.command is None:
        cmd_parser.error("a command is required")
    if args.command == "theory" and args.state == "tmsv" and args.q is None:
        cmd_parser.error("-state tmsv needs -q")
    if args.command == "analyze" and args.output and len(args.histograms) > 1:
        cmd_parser.error("-output takes a single histogram; reports of several go to the output directory")

    config = vars(args)
    logger.info(f"config={config}")
    logger.info("- Return")
    return config


def _emit(text: str, output: str) -> None:
    if output:
        os.makedirs(osp.dirname(osp.abspath(output)), exist_ok=True)
        with open(output, "w", newline="") as f:
            f.write(text)
        logger.info(f"Successfully wrote to {output}")
    else:
        sys.stdout.write(text)


def cmd_theory(cfg: dict) -> None:
    logger.info(f"cfg={cfg}")
    point = theory_point(
        cfg["state"],
        eta=cfg["eta"],
        via=cfg["via"],
        q=cfg["q"],
        alpha=cfg["alpha"],
        beta=cfg["beta"],
        theta=cfg["theta"],
        m=cfg["m"],
        n=cfg["n"],
        tau=cfg["tau"],
    )
    _emit(json.dumps(point.dict(), indent=2) + "\n", cfg["output"])
    logger.info("- Return")


def _default_output(source: str, suffix: str) -> str:
    stem = osp.splitext(osp.basename(source))[0]
    return osp.join(paths.get_output_dir(settings.OUTPUT_DIR), stem + suffix)


def cmd_simulate(cfg: dict) -> str:
    logger.info(f"cfg={cfg}")
    config, raw = load_config(cfg["config"])
    run = config.run_config()
    model = config.input.model

    if model == ModelEnum.quantum:
        dist = detected_distribution(
            config.input.prep_a,
            config.input.prep_b,
            run.theta,
            run.efficiency_a,
            run.efficiency_b,
            config.analysis.tau,
            config.input.n_max,
        )
        histogram = sample_quantum_shots(dist, run)
    else:
        kind = EnsembleKind(model.value)
        ensemble = ClassicalEnsemble.from_modes(kind, config.input.prep_a, config.input.prep_b)
        sampler = sample_classical_particles if kind == EnsembleKind.particle else sample_classical_waves
        histogram = sampler(ensemble, run)

    output = cfg["output"] or _default_output(cfg["config"], ".hist.csv")
    write_histogram(histogram, output, raw)
    sys.stdout.write(output + "\n")
    logger.info("- Return")
    return output


def cmd_analyze(cfg: dict) -> list:
    logger.info(f"cfg={cfg}")
    reports = []
    for path in cfg["histograms"]:
        histogram, header = read_histogram(path)
        echo = config_echo(header)
        threshold = cfg["intensity_warning"]
        if threshold is None:
            threshold = float(echo.get("analysis", {}).get("intensity_warning", settings.INTENSITY_WARNING))
        description = osp.basename(path)
        if "input" in echo:
            description = ", ".join(f"{k}={v}" for k, v in echo["input"].items())
        report = analyze_histogram(histogram, description, threshold)
        output = cfg["output"] or _default_output(path, ".report.json")
        _emit(report.to_json(), output)
        sys.stdout.write(output + "\n")
        reports.append(report)

    if len(reports) > 1:
        mean_total, e, sigma = [], [], []
        for report in reports:
            for estimate in (report.witness.e_wave, report.witness.e_part):
                mean_total.append(report.mean_total.value)
                e.append(estimate.value)
                sigma.append(estimate.random_err + estimate.sys_err)
        fit = fit_efficiency(mean_total, e, sigma)
        fit_report = EfficiencyFitReport(eta=fit.eta, eta_err=fit.eta_err, points=fit.points, inputs=cfg["histograms"])
        fit_output = osp.join(paths.get_output_dir(settings.OUTPUT_DIR), "efficiency_fit.json")
        _emit(json.dumps(fit_report.dict(), indent=2) + "\n", fit_output)
        sys.stdout.write(fit_output + "\n")
    logger.info("- Return")
    return reports


def cmd_sweep(cfg: dict) -> list:
    logger.info(f"cfg={cfg}")
    values = sweep_values(cfg["family"], cfg["start"], cfg["stop"], cfg["num"])
    points = sweep(cfg["family"], values, eta=cfg["eta"], via=cfg["via"], by=cfg["by"], tau=cfg["tau"])
    lines = [f"# format={SWEEP_FORMAT}", f"# family={cfg['family']}"]
    if cfg["family"] == "tmsv":
        lines.append(f"# by={cfg['by']}")
    lines += [f"# eta={cfg['eta']!r}", f"# via={cfg['via']}", "parameter,e_wave,e_part,mean_total"]
    lines += [f"{p.parameter!r},{p.e_wave!r},{p.e_part!r},{p.mean_total!r}" for p in points]
    _emit("\n".join(lines) + "\n", cfg["output"])
    logger.info("- Return")
    return points


COMMANDS = {
    "theory": cmd_theory,
    "simulate": cmd_simulate,
    "analyze": cmd_analyze,
    "sweep": cmd_sweep,
}


def main(cfg: dict) -> int:
    """Run one command; returns the process exit code.

    0 on success (a nonclassical result included), 2 on bad input, 3 on IO failure.
    """
    logger.info(f"cfg={cfg}")
    try:
        COMMANDS[cfg["command"]](cfg)
    except (WpdError, ValidationError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        sys.stderr.write(f"error: {e}\n")
        return EXIT_BAD_INPUT
    except OSError as e:
        logger.error(f"{type(e).__name__}: {e}")
        sys.stderr.write(f"error: {e}\n")
        return EXIT_IO
    logger.info("- Return")
    return EXIT_OK


def run() -> None:
    sys.exit(main(get_cfg()))


if __name__ == "__main__":
    run()
