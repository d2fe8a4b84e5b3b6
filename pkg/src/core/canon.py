"""
CANONICAL CODES

Isomorphism invariants for unsensed, unrooted embedded maps, optionally
colour-aware. A code is the lexicographic minimum, over admissible root darts
and both orientations, of a breadth-first description of the map:

    for each vertex in discovery order:
        degree, [colour bit], then for each dart clockwise from the entry dart:
            discovery index of the neighbour,
            position of the twin dart in the neighbour's rotation
            (counted from the neighbour's entry dart)

The twin positions make the description reconstructible on multigraphs, so
equal codes imply isomorphic maps. Only roots with the minimal local key
(degree, colour, rotation of neighbour degrees) are tried; the key does not
depend on dart labels, so the minimum is still canonical.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from src.core.map_core import (
    Colouring,
    EmbeddedMap,
    mirror,
    relabel,
    transport_colouring,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """
    Totally ordered isomorphism invariant of a (coloured) map.

    Attributes:
        code: Integer sequence; compared lexicographically.
        colour_aware: Whether vertex colours take part in the code.
    """

    code: Tuple[int, ...]
    colour_aware: bool = False

    def __str__(self) -> str:
        return " ".join(map(str, self.code))

    def __len__(self) -> int:
        return len(self.code)

    @classmethod
    def parse(cls, text: str, colour_aware: bool = False) -> "CanonicalCode":
        return cls(tuple(int(tok) for tok in text.split()), colour_aware)


class _Orientation:
    """Rotation data of one orientation of a map (sigma or its inverse)."""

    __slots__ = ("rot", "position", "degree")

    def __init__(self, qmap: EmbeddedMap, reverse: bool):
        self.rot = qmap.sigma_inv if reverse else qmap.sigma
        self.position = [0] * qmap.dart_count
        self.degree = [0] * qmap.dart_count
        for orbit in qmap.vertex_orbits:
            deg = len(orbit)
            d = orbit[0]
            for i in range(deg):
                self.position[d] = i
                self.degree[d] = deg
                d = self.rot[d]


def _local_key(qmap: EmbeddedMap, orient: _Orientation, dart: int,
               colours: Optional[Sequence[int]]) -> Tuple[int, ...]:
    vertex_of = qmap.vertex_of
    degree = orient.degree
    key = [degree[dart], colours[vertex_of[dart]] if colours is not None else 0]
    d = dart
    for _ in range(degree[dart]):
        key.append(degree[d ^ 1])
        d = orient.rot[d]
    return tuple(key)


def _bfs_code(qmap: EmbeddedMap, orient: _Orientation, root: int,
              colours: Optional[Sequence[int]]) -> Tuple[List[int], List[int]]:
    """BFS description from `root`; also returns the darts in visiting order."""
    vertex_of = qmap.vertex_of
    rot, position, degree = orient.rot, orient.position, orient.degree
    index = {vertex_of[root]: 0}
    entries = [root]
    code: List[int] = []
    visit: List[int] = []
    head = 0
    while head < len(entries):
        entry = entries[head]
        head += 1
        deg = degree[entry]
        code.append(deg)
        if colours is not None:
            code.append(colours[vertex_of[entry]])
        d = entry
        for _ in range(deg):
            twin = d ^ 1
            w = vertex_of[twin]
            idx = index.get(w)
            if idx is None:
                idx = len(entries)
                index[w] = idx
                entries.append(twin)
            w_entry = entries[idx]
            code.append(idx)
            code.append((position[twin] - position[w_entry]) % degree[twin])
            visit.append(d)
            d = rot[d]
    return code, visit


def _search(qmap: EmbeddedMap, colouring: Optional[Colouring]
            ) -> Tuple[List[int], bool, List[int]]:
    """Minimal code, whether the reversed orientation produced it, and its visit order."""
    colours = [int(c) for c in colouring.colours] if colouring is not None else None
    orientations = (_Orientation(qmap, reverse=False), _Orientation(qmap, reverse=True))
    candidates = []
    for reverse, orient in enumerate(orientations):
        for dart in range(qmap.dart_count):
            candidates.append((_local_key(qmap, orient, dart, colours), reverse, dart))
    best_key = min(c[0] for c in candidates)
    roots = [(reverse, dart) for key, reverse, dart in candidates if key == best_key]
    logger.debug("canonical search on %r: %d of %d roots after prefilter",
                  qmap, len(roots), len(candidates))
    best: Optional[List[int]] = None
    best_reverse, best_visit = False, []
    for reverse, dart in roots:
        code, visit = _bfs_code(qmap, orientations[reverse], dart, colours)
        if best is None or code < best:
            best, best_reverse, best_visit = code, bool(reverse), visit
    return best, best_reverse, best_visit


def canonical_code(qmap: EmbeddedMap, colouring: Optional[Colouring] = None) -> CanonicalCode:
    """
    Canonical code of a map, colour-aware when a colouring is given.

    Args:
        qmap: A valid connected map.
        colouring: Optional vertex colouring; isomorphisms must then preserve it.

    Returns:
        CanonicalCode equal for two inputs iff they are isomorphic as
        unsensed, unrooted (coloured) maps.
    """
    code, _, _ = _search(qmap, colouring)
    return CanonicalCode(tuple(code), colouring is not None)


def canonical_form(qmap: EmbeddedMap, colouring: Optional[Colouring] = None
                   ) -> Tuple[CanonicalCode, EmbeddedMap, Optional[Colouring]]:
    """
    Canonical code together with the representative relabelled in the winning
    BFS order. Isomorphic inputs give identical representatives; when the
    reversed orientation wins, the representative is the mirror image.
    """
    code, reverse, visit = _search(qmap, colouring)
    perm = [-1] * qmap.dart_count
    edges = 0
    for d in visit:
        if perm[d] < 0:
            perm[d] = 2 * edges
            perm[d ^ 1] = 2 * edges + 1
            edges += 1
    source = mirror(qmap) if reverse else qmap
    form = relabel(source, perm)
    form_colouring = None
    if colouring is not None:
        form_colouring = transport_colouring(source, colouring, form, perm)
    return CanonicalCode(tuple(code), colouring is not None), form, form_colouring


def are_isomorphic(a: EmbeddedMap, b: EmbeddedMap,
                   colouring_a: Optional[Colouring] = None,
                   colouring_b: Optional[Colouring] = None) -> bool:
    """
    Unsensed, unrooted isomorphism test; colour-aware when both colourings are given.
    """
    if (colouring_a is None) != (colouring_b is None):
        raise ValueError("give a colouring for both maps or for neither")
    if a.dart_count != b.dart_count or sorted(a.vertex_degrees) != sorted(b.vertex_degrees):
        return False
    if colouring_a is not None and (colouring_a.s, colouring_a.u) != (colouring_b.s, colouring_b.u):
        return False
    return canonical_code(a, colouring_a) == canonical_code(b, colouring_b)


def is_self_dual_class(qmap: EmbeddedMap, colouring: Colouring) -> bool:
    """True when swapping the colours gives a colour-isomorphic quasi-dual."""
    if colouring.s != colouring.u:
        return False
    return canonical_code(qmap, colouring) == canonical_code(qmap, colouring.swapped())
