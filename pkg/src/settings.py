"""Package defaults read from config/wpd.conf."""

import configparser
import logging

from utils import paths

logger = logging.getLogger(__name__)

config = configparser.ConfigParser()
with open(paths.get_abs_path_to_config_file()) as conf:
    config.read_file(conf)

_defaults = config["Defaults"]

TAU: float = _defaults.getfloat("tau")
# Truncation of the theory pipeline. A tail tau shifts variances by about n_max^2 tau,
# and 1 - sum(p) is only resolved to about 1e-14.
PIPELINE_TAU: float = _defaults.getfloat("pipeline_tau")
D_BINS: int = _defaults.getint("d_bins")
THETA: float = _defaults.getfloat("theta")
ETA: float = _defaults.getfloat("eta")
INTENSITY_WARNING: float = _defaults.getfloat("intensity_warning")
CHUNK_SHOTS: int = _defaults.getint("chunk_shots")
OUTPUT_DIR: str = _defaults.get("output_dir")

# Largest cutoff the automatic truncation search will try
N_MAX_LIMIT = 400
# Second factorial moments with their systematic bounds need orders up to 3
MIN_D_BINS = 3
