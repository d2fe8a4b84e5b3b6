"""
PARALLEL LEVEL DRIVER

Spreads the parents of a generation level (and the maps of a census) over
worker processes. Results are merged by canonical code keeping the smallest
witness, so any worker count yields the same level.
"""

import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from datetime import datetime
from typing import Dict, List, Sequence, Tuple, TypeVar

from src.core.map_core import EmbeddedMap
from src.equilibrium.census import LevelTally, merge_tallies, tally_maps
from src.generation.genesis import ChildTable, ParentRecord, expand_parents, merge_children

logger = logging.getLogger(__name__)

T = TypeVar("T")

CHUNKS_PER_WORKER = 4


def partition(items: Sequence[T], parts: int) -> List[List[T]]:
    """Round-robin split into at most `parts` non-empty chunks."""
    parts = max(1, min(parts, len(items)))
    return [list(items[k::parts]) for k in range(parts)]


class ParallelLevelExpander:
    """
    Drop-in `expand` and `tally` hooks for genesis and census.

    Attributes:
        workers: Number of worker processes; 1 runs in-process.
    """

    def __init__(self, workers: int = 1):
        if workers < 1:
            raise ValueError(f"worker count must be >= 1, got {workers}")
        self.workers = workers

    def __call__(self, parents: Sequence[ParentRecord], i: int, j: int) -> ChildTable:
        if self.workers == 1 or len(parents) < 2:
            return expand_parents(parents, i, j)
        chunks = partition(parents, self.workers * CHUNKS_PER_WORKER)
        start_time = datetime.now()
        merged: ChildTable = {}
        with ProcessPoolExecutor(max_workers=self.workers) as executor:
            future_map = {executor.submit(expand_parents, chunk, i, j): k
                          for k, chunk in enumerate(chunks)}
            for future in as_completed(future_map):
                try:
                    merge_children(merged, future.result())
                except Exception:
                    logger.exception("chunk %d of %d failed", future_map[future], len(chunks))
                    raise
        logger.info("expanded %d parents on %d workers in %s",
                    len(parents), self.workers, datetime.now() - start_time)
        return merged

    def tally(self, records: Sequence[Tuple[int, EmbeddedMap]]) -> Dict[int, LevelTally]:
        if self.workers == 1 or len(records) < 2:
            return tally_maps(records)
        chunks = partition(records, self.workers * CHUNKS_PER_WORKER)
        parts = []
        with ProcessPoolExecutor(max_workers=self.workers) as executor:
            futures = [executor.submit(tally_maps, chunk) for chunk in chunks]
            for future in as_completed(futures):
                parts.append(future.result())
        return merge_tallies(parts)
