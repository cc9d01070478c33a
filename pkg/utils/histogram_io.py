""" Reading and writing histogram files.

A commented header block is followed by CSV rows for the nonzero cells:

    # format=wpd-hist-v1
    # kind=clicks
    # d_bins=8
    # shots=1000000
    # seed=7
    # config.input.model=quantum
    k_a,k_b,count
    0,0,999123
    ...

Count histograms (kind=counts) carry `# shape=rows,cols` instead of d_bins
and use the column names m,n.
"""
import csv
import logging
import os
import os.path as osp
from typing import Optional, Union

import numpy as np

from src.detector.clicks import ClickHistogram, CountHistogram
from src.errors import MalformedHistogram

logger = logging.getLogger(__name__)

HIST_FORMAT = "wpd-hist-v1"

_COLUMNS = {"clicks": ["k_a", "k_b", "count"], "counts": ["m", "n", "count"]}

Histogram = Union[ClickHistogram, CountHistogram]


def header_lines(h: Histogram, echo: Optional[dict] = None) -> list[str]:
    kind = "clicks" if isinstance(h, ClickHistogram) else "counts"
    lines = [f"format={HIST_FORMAT}", f"kind={kind}"]
    if kind == "clicks":
        lines.append(f"d_bins={h.d_bins}")
    else:
        lines.append(f"shape={h.counts.shape[0]},{h.counts.shape[1]}")
    lines.append(f"shots={h.shots}")
    if h.seed is not None:
        lines.append(f"seed={h.seed}")
    for section, values in (echo or {}).items():
        for key, value in values.items():
            lines.append(f"config.{section}.{key}={value}")
    return ["# " + line for line in lines]


def write_histogram(h: Histogram, path: str, echo: Optional[dict] = None) -> str:
    """Write `h` to `path`; `echo` maps config sections to their raw key/value text."""
    logger.info(f"path={path}")
    directory = osp.dirname(osp.abspath(path))
    os.makedirs(directory, exist_ok=True)
    kind = "clicks" if isinstance(h, ClickHistogram) else "counts"
    with open(path, "w", newline="") as f:
        for line in header_lines(h, echo):
            f.write(line + "\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(_COLUMNS[kind])
        writer.writerows(h.cells())
    logger.info("- Return")
    return path


def _parse_header(lines: list[str]) -> dict:
    header = {}
    for line in lines:
        body = line[1:].strip()
        if "=" not in body:
            raise MalformedHistogram(f"header line without '=': {line!r}")
        key, value = body.split("=", 1)
        header[key.strip()] = value.strip()
    return header


def _int(header: dict, key: str) -> int:
    try:
        return int(header[key])
    except KeyError:
        raise MalformedHistogram(f"missing header field {key!r}") from None
    except ValueError:
        raise MalformedHistogram(f"header field {key!r} is not an integer: {header[key]!r}") from None


def read_histogram(path: str) -> tuple[Histogram, dict]:
    """(histogram, header fields) from a file written by write_histogram.

    Raises:
        MalformedHistogram: for any format violation.
    """
    logger.info(f"path={path}")
    with open(path, newline="") as f:
        lines = f.read().splitlines()

    comments = [line for line in lines if line.startswith("#")]
    body = [line for line in lines if line.strip() and not line.startswith("#")]
    header = _parse_header(comments)

    if header.get("format") != HIST_FORMAT:
        raise MalformedHistogram(f"unsupported format {header.get('format')!r}")
    kind = header.get("kind")
    if kind not in _COLUMNS:
        raise MalformedHistogram(f"unknown histogram kind {kind!r}")

    rows = list(csv.reader(body))
    if not rows or [c.strip() for c in rows[0]] != _COLUMNS[kind]:
        raise MalformedHistogram(f"expected column header {','.join(_COLUMNS[kind])}")

    shots = _int(header, "shots")
    seed = _int(header, "seed") if "seed" in header else None
    if kind == "clicks":
        d_bins = _int(header, "d_bins")
        if d_bins < 1:
            raise MalformedHistogram(f"d_bins must be >= 1, got {d_bins}")
        shape = (d_bins + 1, d_bins + 1)
    else:
        try:
            shape = tuple(int(x) for x in header["shape"].split(","))
        except (KeyError, ValueError):
            raise MalformedHistogram("missing or malformed shape header") from None
        if len(shape) != 2 or min(shape) < 1:
            raise MalformedHistogram(f"bad shape {shape}")

    counts = np.zeros(shape, dtype=np.int64)
    for row in rows[1:]:
        try:
            a, b, count = (int(x) for x in row)
        except ValueError:
            raise MalformedHistogram(f"bad row {row!r}") from None
        if not (0 <= a < shape[0] and 0 <= b < shape[1]) or count < 0:
            raise MalformedHistogram(f"row {row!r} outside the histogram")
        if counts[a, b]:
            raise MalformedHistogram(f"duplicate cell ({a}, {b})")
        counts[a, b] = count

    if kind == "clicks":
        histogram = ClickHistogram(counts, shots, seed, d_bins)
    else:
        histogram = CountHistogram(counts, shots, seed)
    logger.info("- Return")
    return histogram, header


def config_echo(header: dict) -> dict:
    """Nested {section: {key: value}} view of the config.* header fields."""
    echo: dict = {}
    for key, value in header.items():
        if key.startswith("config."):
            _, section, name = key.split(".", 2)
            echo.setdefault(section, {})[name] = value
    return echo
