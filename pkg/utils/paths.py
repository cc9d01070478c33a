""" Utils module for resolving paths within this package """

import os
import os.path as osp
import re


def rel_path_to_abs_path(rel_path: str) -> str:
    full_file_path = osp.realpath(__file__)
    last_known_bit_of_path = "utils/paths.py"
    new_path, n_subs = re.subn(
        rf"/{last_known_bit_of_path}.*",
        rf"/{rel_path}",
        full_file_path,
        flags=re.MULTILINE | re.DOTALL,
    )
    assert n_subs == 1
    return new_path


def resolve(path: str) -> str:
    """Absolute paths pass through, relative ones are taken from the repo root."""
    if osp.isabs(path):
        return path
    return rel_path_to_abs_path(path)


def get_abs_path_to_input_file(filename: str) -> str:
    return rel_path_to_abs_path(f"data/input/{filename}")


def get_abs_path_to_config_file(filename: str = "wpd.conf") -> str:
    return rel_path_to_abs_path(f"config/{filename}")


def get_output_dir(default: str) -> str:
    """Output directory, overridable through WPD_OUTPUT_DIR."""
    return resolve(os.getenv("WPD_OUTPUT_DIR") or default)
