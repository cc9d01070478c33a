""" Counter-based random streams and chunked (optionally parallel) execution.

Shots are split into fixed-size chunks. Chunk i draws from a Philox
generator keyed by SeedSequence(seed, spawn_key=(i,)), so the result only
depends on (seed, shots, chunk_shots) and never on the number of workers.
"""
import functools
import logging
import operator
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable

import numpy as np

logger = logging.getLogger(__name__)


def chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def chunk_plan(shots: int, chunk_shots: int) -> list[tuple[int, int]]:
    """(chunk index, chunk size) pairs covering `shots`."""
    return [(i, min(chunk_shots, shots - start)) for i, start in enumerate(range(0, shots, chunk_shots))]


def run_chunked(
    worker: Callable[[Any, int, int, int], Any],
    payload: Any,
    shots: int,
    seed: int,
    chunk_shots: int,
    workers: int = 1,
) -> Any:
    """Run worker(payload, seed, chunk, size) on every chunk and merge with `+`.

    `worker` must be a module-level function so it can be sent to processes.
    """
    plan = chunk_plan(shots, chunk_shots)
    logger.debug(f"shots={shots}, chunks={len(plan)}, workers={workers}")
    if workers > 1 and len(plan) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(worker, payload, seed, chunk, size) for chunk, size in plan]
            results = [future.result() for future in futures]
    else:
        results = [worker(payload, seed, chunk, size) for chunk, size in plan]
    return functools.reduce(operator.add, results)
