"""
QUASI-DUALS AND EQUILIBRIUM CLASSES

A quasi-dual is a 2-coloured multiquadrangulation whose colour classes are
the stable and unstable points of a convex body; faces stand for saddles.
Primary classes are the pairs (s, u); secondary classes are quasi-duals up
to colour-preserving isomorphism. The single-edge path P1 is the quasi-dual
of the class (1, 1) and is kept outside EmbeddedMap as a sentinel.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set, Tuple, Union

from src.core.canon import CanonicalCode, canonical_code, canonical_form
from src.core.constructions import build_p2
from src.core.errors import InvalidMapError, QuadforgeError
from src.core.map_core import (
    QUASI_DUAL_P1,
    Colour,
    Colouring,
    EmbeddedMap,
    QuasiDualP1,
    bipartition,
    is_3_connected,
    is_simple,
    radial,
    require_colouring,
)
from src.core.surgery import is_irreducible
from src.generation.genesis import (
    GenerationLevel,
    ancestor,
    closure,
    expand_parents,
    generate_all,
)

logger = logging.getLogger(__name__)

P1_CODE = CanonicalCode((0,), colour_aware=True)
SINGLETON_PRIMARY_CLASSES = ((1, 1), (2, 1), (3, 1), (1, 2), (1, 3))


@dataclass(frozen=True, order=True)
class PrimaryClass:
    """The pair (s, u); h = s + u - 2 saddles follow from the Poincare-Hopf formula."""

    s: int
    u: int

    def __post_init__(self):
        if self.s < 1 or self.u < 1:
            raise ValueError(f"primary class needs s, u >= 1, got ({self.s}, {self.u})")

    @property
    def h(self) -> int:
        return self.s + self.u - 2

    @property
    def n(self) -> int:
        return self.s + self.u

    def swapped(self) -> "PrimaryClass":
        return PrimaryClass(self.u, self.s)

    def __str__(self) -> str:
        return f"{{{self.s},{self.u}}}"


@dataclass(frozen=True, order=True)
class SecondaryClass:
    """
    A quasi-dual up to colour-preserving isomorphism.

    Attributes:
        code: Colour-aware canonical code.
        primary: (s, u) of the representative.
        representative: Canonical map, or the P1 sentinel.
        colouring: Colouring of the representative (None for P1).
    """

    code: CanonicalCode
    primary: PrimaryClass = field(compare=False)
    representative: Union[EmbeddedMap, QuasiDualP1] = field(compare=False)
    colouring: Optional[Colouring] = field(compare=False, default=None)

    @classmethod
    def of(cls, qmap: EmbeddedMap, colouring: Colouring) -> "SecondaryClass":
        """Canonical secondary class of a coloured quadrangulation."""
        require_colouring(qmap, colouring)
        code, form, form_colouring = canonical_form(qmap, colouring)
        return cls(code, PrimaryClass(form_colouring.s, form_colouring.u), form, form_colouring)

    @property
    def is_p1(self) -> bool:
        return isinstance(self.representative, QuasiDualP1)

    @property
    def n(self) -> int:
        return self.representative.vertex_count

    def underlying_code(self) -> CanonicalCode:
        """Colour-blind code of the representative."""
        if self.is_p1:
            return CanonicalCode((0,), colour_aware=False)
        return canonical_code(self.representative)

    def swapped(self) -> "SecondaryClass":
        """The dual version: stable and unstable points exchanged."""
        if self.is_p1:
            return self
        return SecondaryClass.of(self.representative, self.colouring.swapped())

    def is_self_dual(self) -> bool:
        return self.is_p1 or self.swapped().code == self.code


P1_CLASS = SecondaryClass(P1_CODE, PrimaryClass(1, 1), QUASI_DUAL_P1, None)


def classes_of_map(qmap: EmbeddedMap) -> List[SecondaryClass]:
    """The one or two secondary classes carried by a quadrangulation."""
    first = SecondaryClass.of(qmap, bipartition(qmap))
    second = first.swapped()
    if second.code == first.code:
        return [first]
    return sorted([first, second])


def secondary_classes(n: int, level: Optional[GenerationLevel] = None) -> List[SecondaryClass]:
    """
    All secondary classes with n = s + u points, sorted by code.

    Args:
        n: Total number of stable and unstable points (n = 2 gives P1).
        level: Precomputed uncoloured level with n vertices.
    """
    if n == 2:
        return [P1_CLASS]
    level = level or generate_all(n)
    classes: Dict[CanonicalCode, SecondaryClass] = {}
    for code in level.codes():
        for cls in classes_of_map(level.classes[code]):
            classes.setdefault(cls.code, cls)
    return [classes[c] for c in sorted(classes)]


# =============================================================================
# Coloured splittings
# =============================================================================

def c0_results() -> List[SecondaryClass]:
    """
    The auxiliary splitting out of P1: P2 with its centre stable ({1,2})
    or unstable ({2,1}).
    """
    p2 = build_p2()
    centre = p2.vertex_of[0]
    results = []
    for centre_colour in (Colour.STABLE, Colour.UNSTABLE):
        colours = tuple(centre_colour if v == centre else centre_colour.other
                        for v in range(p2.vertex_count))
        results.append(SecondaryClass.of(p2, Colouring(colours)))
    return sorted(results)


def coloured_splits(cls: SecondaryClass, i: int, j: int) -> List[SecondaryClass]:
    """
    All secondary classes reached from `cls` by one coloured S(i,j) splitting.

    P1 only admits the auxiliary splitting C0, which counts as a 1-splitting.
    """
    if i > j:
        raise ValueError(f"restriction S({i},{j}) needs i <= j")
    if cls.is_p1:
        return c0_results() if i <= 1 else []
    children = expand_parents([(cls.code, cls.representative, cls.colouring)], i, j)
    return [SecondaryClass(code, PrimaryClass(rec[1].s, rec[1].u), rec[0], rec[1])
            for code, rec in sorted(children.items())]


def singleton_seeds(pairs: Iterable[Tuple[int, int]] = SINGLETON_PRIMARY_CLASSES
                    ) -> List[SecondaryClass]:
    """Representatives of primary classes that hold a single secondary class."""
    seeds = []
    for s, u in pairs:
        matches = [c for c in secondary_classes(s + u) if (c.primary.s, c.primary.u) == (s, u)]
        if len(matches) != 1:
            raise QuadforgeError(f"primary class {{{s},{u}}} has {len(matches)} secondary classes")
        seeds.append(matches[0])
    return seeds


def primary_coverage(restriction: str, max_total: int,
                     seeds: Optional[List[SecondaryClass]] = None) -> Set[Tuple[int, int]]:
    """
    Primary classes reached by coloured closure under S(1,1) or S(2,2).

    Args:
        restriction: "S11" (closure from P1 through C0) or "S22" (closure from
            the singleton primary classes).
        max_total: Largest s + u to explore.
        seeds: Override the S22 seed classes.

    Returns:
        Set of (s, u) pairs reached, seeds included.
    """
    if max_total < 2:
        raise ValueError("max_total must be at least 2")
    key = restriction.upper().replace(",", "").replace("(", "").replace(")", "")
    if key == "S11":
        start = [P1_CLASS] + (c0_results() if max_total >= 3 else [])
        degree = 1
    elif key == "S22":
        start = singleton_seeds() if seeds is None else list(seeds)
        degree = 2
    else:
        raise ValueError(f"unknown restriction '{restriction}' (use S11 or S22)")
    reached = {(c.primary.s, c.primary.u) for c in start if c.n <= max_total}
    coloured = [(c.representative, c.colouring) for c in start if not c.is_p1]
    if coloured:
        for level in closure(coloured, degree, degree, max_total).values():
            reached.update((c.s, c.u) for c in level.colourings.values())
    logger.info("%s coverage up to s+u=%d: %d primary classes", key, max_total, len(reached))
    return reached


# =============================================================================
# Irreducibility and minimal polyhedra
# =============================================================================

def is_irreducible_class(cls: SecondaryClass) -> bool:
    """P1 is irreducible; the coloured P2 classes are not; otherwise the map decides."""
    if cls.is_p1:
        return True
    if cls.n == 3:
        return False
    return is_irreducible(cls.representative)


def coloured_ancestor(cls: SecondaryClass) -> SecondaryClass:
    """
    Irreducible secondary class reached by monotone coloured contractions;
    coloured P2 classes continue to P1 through the inverse of C0.
    """
    if cls.is_p1:
        return cls
    result = ancestor(cls.representative, cls.colouring)
    if result.ancestor.vertex_count == 3:
        return P1_CLASS
    return SecondaryClass.of(result.ancestor, result.colouring)


def minimal_polyhedron_quasidual(skeleton: EmbeddedMap) -> SecondaryClass:
    """
    Quasi-dual of a minimal polyhedron: the coloured radial graph of its
    skeleton, faces stable and vertices unstable.

    Raises:
        InvalidMapError: If the skeleton is not simple and 3-connected, or its
            radial graph turns out reducible.
    """
    if not is_simple(skeleton) or not is_3_connected(skeleton):
        raise InvalidMapError(["skeleton is not a simple 3-connected planar graph"])
    qmap, colouring = radial(skeleton)
    if not is_irreducible(qmap):
        raise InvalidMapError(["radial graph of the skeleton is reducible"])
    return SecondaryClass.of(qmap, colouring)
