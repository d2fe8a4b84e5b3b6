"""
EXHAUSTIVE GENERATION AND IRREDUCIBLE ANCESTORS

Level-by-level breadth-first generation of isomorphism classes under
restricted splittings, transitive closures from arbitrary (optionally
coloured) seeds, and the contraction-to-ancestor procedure.

Every class is stored as its canonical representative, so parent links
(parent code, split walk) refer to canonical darts and replay exactly.
"""

import logging
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from config.settings import MAX_GENERATION_N, MIN_GENERATION_N
from src.core.canon import CanonicalCode, canonical_code, canonical_form
from src.core.constructions import build_p2
from src.core.map_core import Colouring, EmbeddedMap, QuasiDualP1, bipartition
from src.core.surgery import (
    ContractionSite,
    SplitWalk,
    contract,
    contract_coloured,
    contraction_degree,
    enumerate_sites,
    enumerate_splits,
    is_irreducible,
    split,
)
from src.core.errors import InvalidContractionError

logger = logging.getLogger(__name__)

# (code, canonical map, colouring or None)
ParentRecord = Tuple[CanonicalCode, EmbeddedMap, Optional[Colouring]]
# code -> (canonical map, colouring or None, parent code, walk in the parent's darts)
ChildTable = Dict[CanonicalCode, Tuple[EmbeddedMap, Optional[Colouring], CanonicalCode, SplitWalk]]
Expander = Callable[[Sequence[ParentRecord], int, int], ChildTable]


@dataclass
class GenerationLevel:
    """
    All classes with n vertices reached by a generation run.

    Attributes:
        n: Vertex count.
        classes: Canonical code -> canonical representative.
        colourings: Canonical code -> colouring, for coloured runs.
        parent_links: Child code -> (parent code, walk) witness.
    """

    n: int
    classes: Dict[CanonicalCode, EmbeddedMap] = field(default_factory=dict)
    colourings: Dict[CanonicalCode, Colouring] = field(default_factory=dict)
    parent_links: Dict[CanonicalCode, Tuple[CanonicalCode, SplitWalk]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.classes)

    def __contains__(self, code: CanonicalCode) -> bool:
        return code in self.classes

    @property
    def coloured(self) -> bool:
        return bool(self.colourings)

    def codes(self) -> List[CanonicalCode]:
        return sorted(self.classes)

    def records(self) -> List[ParentRecord]:
        """(code, map, colouring) sorted by code."""
        return [(code, self.classes[code], self.colourings.get(code)) for code in self.codes()]

    def add(self, qmap: EmbeddedMap, colouring: Optional[Colouring] = None) -> CanonicalCode:
        """Insert a map (not necessarily canonical) and return its code."""
        code, form, form_colouring = canonical_form(qmap, colouring)
        if code not in self.classes:
            self.classes[code] = form
            if form_colouring is not None:
                self.colourings[code] = form_colouring
        return code


# =============================================================================
# Split kernel
# =============================================================================

def extend_colouring(parent: EmbeddedMap, colouring: Colouring,
                     child: EmbeddedMap, walk: SplitWalk) -> Colouring:
    """
    Forced colouring of a split result: every old vertex keeps its colour,
    so the new vertex gets the colour of the split vertex.
    """
    anchor = walk.d_first ^ 1
    extended = bipartition(child)
    if extended[child.vertex_of[anchor]] is not colouring[parent.vertex_of[anchor]]:
        extended = extended.swapped()
    return extended


def split_coloured(parent: EmbeddedMap, colouring: Colouring,
                   walk: SplitWalk) -> Tuple[EmbeddedMap, Colouring]:
    child = split(parent, walk)
    return child, extend_colouring(parent, colouring, child, walk)


def merge_children(target: ChildTable, incoming: ChildTable) -> ChildTable:
    """Union by code, keeping the smallest (parent code, walk) witness."""
    for code, record in incoming.items():
        current = target.get(code)
        if current is None or (record[2], record[3]) < (current[2], current[3]):
            target[code] = record
    return target


def expand_parents(parents: Sequence[ParentRecord], i: int, j: int) -> ChildTable:
    """
    Apply every S(i,j) split to every parent and deduplicate the results.

    Only one walk of each reflected pair is applied; its partner gives an
    isomorphic (and colour-isomorphic) result.

    Args:
        parents: (code, canonical map, colouring) triples.
        i: Lower bound on the split degree.
        j: Upper bound on the split degree.

    Returns:
        Child table keyed by canonical code.
    """
    children: ChildTable = {}
    for parent_code, parent, colouring in parents:
        for walk in enumerate_splits(parent, i, j, reflections=False):
            if colouring is None:
                child, child_colouring = split(parent, walk), None
            else:
                child, child_colouring = split_coloured(parent, colouring, walk)
            code, form, form_colouring = canonical_form(child, child_colouring)
            current = children.get(code)
            if current is None or (parent_code, walk) < (current[2], current[3]):
                children[code] = (form, form_colouring, parent_code, walk)
    return children


def _next_level(level: GenerationLevel, i: int, j: int, expand: Expander) -> GenerationLevel:
    started = time.perf_counter()
    children = expand(level.records(), i, j)
    nxt = GenerationLevel(level.n + 1)
    for code in sorted(children):
        form, colouring, parent_code, walk = children[code]
        nxt.classes[code] = form
        if colouring is not None:
            nxt.colourings[code] = colouring
        nxt.parent_links[code] = (parent_code, walk)
    logger.info("level n=%d: %d parents -> %d classes in %.2fs",
                nxt.n, len(level), len(nxt), time.perf_counter() - started)
    return nxt


# =============================================================================
# Exhaustive generation
# =============================================================================

def _check_n(n: int) -> None:
    if not MIN_GENERATION_N <= n <= MAX_GENERATION_N:
        raise ValueError(f"n must lie in [{MIN_GENERATION_N}, {MAX_GENERATION_N}], got {n}")


def generate_levels(n: int, expand: Optional[Expander] = None) -> Dict[int, GenerationLevel]:
    """
    Levels 3..n of the S(1,3) generation from P2.

    Args:
        n: Largest vertex count.
        expand: Level expander; defaults to the serial `expand_parents`.
            The parallel driver passes its own.

    Returns:
        Dict n -> GenerationLevel.
    """
    _check_n(n)
    if expand is None:
        return {k: _cached_level(k) for k in range(MIN_GENERATION_N, n + 1)}
    levels = {MIN_GENERATION_N: _seed_level()}
    for k in range(MIN_GENERATION_N, n):
        levels[k + 1] = _next_level(levels[k], 1, 3, expand)
    return levels


def _seed_level() -> GenerationLevel:
    level = GenerationLevel(MIN_GENERATION_N)
    level.add(build_p2())
    return level


@lru_cache(maxsize=None)
def _cached_level(n: int) -> GenerationLevel:
    # shared between callers; treat as read-only
    if n == MIN_GENERATION_N:
        return _seed_level()
    return _next_level(_cached_level(n - 1), 1, 3, expand_parents)


def generate_all(n: int, expand: Optional[Expander] = None) -> GenerationLevel:
    """All multiquadrangulations with n vertices, one canonical map per class."""
    return generate_levels(n, expand)[n]


Seed = Union[EmbeddedMap, Tuple[EmbeddedMap, Optional[Colouring]]]


def closure(seeds: Iterable[Seed], i: int, j: int, max_n: int,
            expand: Optional[Expander] = None) -> Dict[int, GenerationLevel]:
    """
    Transitive closure of a seed set under S(i,j) splittings, up to max_n vertices.

    Seeds may be bare maps or (map, colouring) pairs; coloured seeds are
    extended with the forced colouring at every split. Do not mix the two.

    Returns:
        Dict n -> GenerationLevel for every n from the smallest seed to max_n.
    """
    if i < 1 or i > j:
        raise ValueError(f"restriction S({i},{j}) needs 1 <= i <= j")
    expand = expand or expand_parents
    seeded: Dict[int, GenerationLevel] = {}
    for seed in seeds:
        qmap, colouring = seed if isinstance(seed, tuple) else (seed, None)
        n = qmap.vertex_count
        if n > max_n:
            continue
        seeded.setdefault(n, GenerationLevel(n)).add(qmap, colouring)
    if not seeded:
        return {}
    levels: Dict[int, GenerationLevel] = {}
    start = min(seeded)
    for n in range(start, max_n + 1):
        level = GenerationLevel(n)
        if n - 1 in levels:
            level = _next_level(levels[n - 1], i, j, expand)
        for code, qmap in seeded.get(n, GenerationLevel(n)).classes.items():
            if code not in level.classes:
                level.classes[code] = qmap
                colouring = seeded[n].colourings.get(code)
                if colouring is not None:
                    level.colourings[code] = colouring
        levels[n] = level
    return levels


def irreducibles(n: int) -> Dict[CanonicalCode, EmbeddedMap]:
    """Classes with n vertices that are neither 1- nor 2-contractible."""
    level = generate_all(n)
    return {code: level.classes[code] for code in level.codes()
            if is_irreducible(level.classes[code])}


# =============================================================================
# Ancestors
# =============================================================================

@dataclass
class AncestorResult:
    """
    Outcome of iterated monotone contraction.

    Attributes:
        ancestor: The irreducible fixed point (or the P1 sentinel).
        colouring: Its colouring, for coloured inputs.
        witnesses: Contraction sites applied, each in the darts of the map it
            was applied to.
        code: Canonical code of the ancestor.
    """

    ancestor: Union[EmbeddedMap, QuasiDualP1]
    colouring: Optional[Colouring]
    witnesses: List[ContractionSite]
    code: CanonicalCode


def _monotone_options(qmap: EmbeddedMap) -> List[ContractionSite]:
    options = []
    for site in enumerate_sites(qmap):
        if contraction_degree(qmap, site) > 2:
            continue
        try:
            contract(qmap, site)
        except InvalidContractionError:
            continue
        options.append(site)
    return options


def _first_monotone(qmap: EmbeddedMap) -> Optional[ContractionSite]:
    for site in enumerate_sites(qmap):
        if contraction_degree(qmap, site) > 2:
            continue
        try:
            contract(qmap, site)
        except InvalidContractionError:
            continue
        return site
    return None


def ancestor(qmap: Union[EmbeddedMap, QuasiDualP1], colouring: Optional[Colouring] = None,
             rng: Optional[np.random.Generator] = None) -> AncestorResult:
    """
    Contract monotonically (degree 1 or 2) until no valid contraction remains.

    Args:
        qmap: A valid quadrangulation, or the P1 sentinel (returned as-is).
        colouring: Optional colouring carried through the contractions.
        rng: When given, each step picks a uniformly random valid contraction;
            otherwise the first one in site order.

    Returns:
        AncestorResult; the ancestor's class does not depend on the choices.
    """
    if isinstance(qmap, QuasiDualP1):
        return AncestorResult(qmap, None, [], CanonicalCode((0,), colouring is not None))
    witnesses: List[ContractionSite] = []
    current, current_colouring = qmap, colouring
    while True:
        if rng is None:
            site = _first_monotone(current)
        else:
            options = _monotone_options(current)
            site = options[int(rng.integers(len(options)))] if options else None
        if site is None:
            break
        witnesses.append(site)
        if current_colouring is None:
            current = contract(current, site)
        else:
            current, current_colouring = contract_coloured(current, current_colouring, site)
    logger.debug("ancestor reached after %d contractions: %r", len(witnesses), current)
    return AncestorResult(current, current_colouring, witnesses,
                          canonical_code(current, current_colouring))


def ancestor_partition(level: GenerationLevel) -> Dict[CanonicalCode, int]:
    """Fibre sizes of ancestor() over a level, keyed by ancestor code."""
    fibres: Dict[CanonicalCode, int] = {}
    for code in level.codes():
        result = ancestor(level.classes[code], level.colourings.get(code))
        fibres[result.code] = fibres.get(result.code, 0) + 1
    return fibres


def random_split_chain(seed_map: EmbeddedMap, steps: int, i: int, j: int,
                       rng: np.random.Generator) -> EmbeddedMap:
    """
    Random descendant of `seed_map` after `steps` S(i,j) splittings.

    Stops early if no admissible walk exists.
    """
    current = seed_map
    for _ in range(steps):
        walks = enumerate_splits(current, i, j)
        if not walks:
            break
        current = split(current, walks[int(rng.integers(len(walks)))])
    return current
