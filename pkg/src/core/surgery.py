"""
VERTEX SPLITTING AND FACE CONTRACTION

A vertex splitting replaces a vertex v by two vertices w and v' along a walk
n1 e1 v em nm, adding one vertex, two edges and one quadrilateral face.
Face contraction is its inverse: it identifies two opposite corners of a
quadrilateral face and merges the two pairs of boundary edges.

Splits keep every input dart under its old id; the four new darts get the
ids 2m..2m+3. Contraction of the new face therefore gives back the input
dart for dart.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from src.core.errors import InvalidContractionError, InvalidWalkError
from src.core.map_core import Colouring, EmbeddedMap, validate

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class SplitWalk:
    """
    The walk n1 e1 v em nm that specifies a vertex splitting.

    Attributes:
        v: Vertex being split.
        d_first: Dart of e1 at v.
        d_last: Dart of em at v.
        m: 1 + clockwise distance from d_first to d_last around v; the new
            vertex w receives m edges.
    """

    v: int
    d_first: int
    d_last: int
    m: int

    @classmethod
    def at(cls, qmap: EmbeddedMap, d_first: int, d_last: int) -> "SplitWalk":
        """Build the walk between two darts of the same vertex, deriving v and m."""
        if not (0 <= d_first < qmap.dart_count and 0 <= d_last < qmap.dart_count):
            raise InvalidWalkError(f"darts {d_first}, {d_last} out of range")
        v = qmap.vertex_of[d_first]
        if qmap.vertex_of[d_last] != v:
            raise InvalidWalkError(f"darts {d_first} and {d_last} are not at the same vertex")
        m = qmap.rotation_from(d_first).index(d_last) + 1
        return cls(v, d_first, d_last, m)

    def reversed(self, qmap: EmbeddedMap) -> "SplitWalk":
        """The walk nm em v e1 n1, which yields an isomorphic result."""
        return SplitWalk.at(qmap, self.d_last, self.d_first)

    def __str__(self) -> str:
        return f"{self.v}:{self.d_first}:{self.d_last}"


@dataclass(frozen=True, order=True)
class ContractionSite:
    """
    A quadrilateral face and the pair of opposite corners to identify.

    Attributes:
        face: The four darts of the face in phi-order; corner i is the vertex
            of face[i].
        axis: 0 identifies the corners of face[0] and face[2]; 1 those of
            face[1] and face[3].
    """

    face: Tuple[int, int, int, int]
    axis: int

    def corners(self, qmap: EmbeddedMap) -> Tuple[int, int, int, int]:
        return tuple(qmap.vertex_of[d] for d in self.face)

    def axis_vertices(self, qmap: EmbeddedMap) -> Tuple[int, int]:
        x = self.corners(qmap)
        return x[self.axis], x[self.axis + 2]

    def __str__(self) -> str:
        return f"{','.join(map(str, self.face))}/{self.axis}"


# =============================================================================
# Splitting
# =============================================================================

def _check_walk(qmap: EmbeddedMap, walk: SplitWalk) -> Tuple[int, ...]:
    if not (0 <= walk.d_first < qmap.dart_count and 0 <= walk.d_last < qmap.dart_count):
        raise InvalidWalkError(f"walk {walk} refers to missing darts")
    if qmap.vertex_of[walk.d_first] != walk.v or qmap.vertex_of[walk.d_last] != walk.v:
        raise InvalidWalkError(f"walk {walk}: darts are not at vertex {walk.v}")
    orbit = qmap.rotation_from(walk.d_first)
    if not 1 <= walk.m <= len(orbit) or orbit[walk.m - 1] != walk.d_last:
        raise InvalidWalkError(f"walk {walk}: m does not match the rotation at {walk.v}")
    return orbit


def _predecessor(sigma: List[int], dart: int) -> int:
    d = dart
    while sigma[d] != dart:
        d = sigma[d]
    return d


def split(qmap: EmbeddedMap, walk: SplitWalk) -> EmbeddedMap:
    """
    Apply the vertex splitting specified by `walk`.

    The new vertex w gets rotation (e'1, e2, ..., e(m-1), e'm); the old vertex
    becomes v' with rotation (e1, e''m, e(m+1), ..., e(d)). For m = 1 the
    new edge e''1 at v' is parallel to e1.

    Args:
        qmap: A valid quadrangulation.
        walk: Split walk at one of its vertices.

    Returns:
        The split map with n+1 vertices, m+2 edges and f+1 faces.

    Raises:
        InvalidWalkError: If the walk does not belong to the map.
    """
    orbit = _check_walk(qmap, walk)
    m = walk.m
    k = qmap.dart_count
    sigma = list(qmap.sigma) + [0, 0, 0, 0]
    a, a_twin, b, b_twin = k, k + 1, k + 2, k + 3
    d1 = orbit[0]
    d1_twin = d1 ^ 1
    if m == 1:
        # w = (a); v' = (d1, b, d2, ...); at n1 the new darts go b_twin, a_twin before d1_twin
        sigma[a] = a
        sigma[b] = sigma[d1]
        sigma[d1] = b
        prev = _predecessor(sigma, d1_twin)
        sigma[prev] = b_twin
        sigma[b_twin] = a_twin
        sigma[a_twin] = d1_twin
    else:
        dm = orbit[m - 1]
        w_cycle = (a,) + orbit[1:m - 1] + (b,)
        for x, y in zip(w_cycle, w_cycle[1:] + w_cycle[:1]):
            sigma[x] = y
        sigma[d1] = dm
        dm_twin = dm ^ 1
        sigma[b_twin] = sigma[dm_twin]
        sigma[dm_twin] = b_twin
        prev = _predecessor(sigma, d1_twin)
        sigma[prev] = a_twin
        sigma[a_twin] = d1_twin
    return EmbeddedMap(tuple(sigma))


def degree_of_split(qmap: EmbeddedMap, walk: SplitWalk) -> int:
    """D = min(m, d(v) - m + 2), the smaller degree of the two split vertices."""
    return min(walk.m, qmap.degree(walk.v) - walk.m + 2)


def new_face_site(qmap: EmbeddedMap, walk: SplitWalk) -> ContractionSite:
    """Site of the face that split(qmap, walk) creates, in the split map's darts."""
    k = qmap.dart_count
    a, a_twin, b, b_twin = k, k + 1, k + 2, k + 3
    d1_twin = walk.d_first ^ 1
    if walk.m == 1:
        face = (b, a_twin, a, d1_twin)
    else:
        face = (walk.d_last, b_twin, a, d1_twin)
    return ContractionSite(face, 0)


def enumerate_splits(qmap: EmbeddedMap, i: int, j: int,
                     reflections: bool = True) -> List[SplitWalk]:
    """
    All split walks whose degree D satisfies i <= D <= j.

    Args:
        qmap: A valid quadrangulation.
        i: Lower bound on D (>= 1).
        j: Upper bound on D.
        reflections: Emit both orientations of each walk. With False only one
            walk of every reflected pair is kept (the one with the smaller m,
            ties broken by the smaller first dart).

    Returns:
        Walks ordered by (v, d_first, m).
    """
    if i < 1 or i > j:
        raise ValueError(f"restriction S({i},{j}) needs 1 <= i <= j")
    walks = []
    for v, vorbit in enumerate(qmap.vertex_orbits):
        deg = len(vorbit)
        for start in range(deg):
            d_first = vorbit[start]
            for m in range(1, deg + 1):
                D = min(m, deg - m + 2)
                if not i <= D <= j:
                    continue
                d_last = vorbit[(start + m - 1) % deg]
                if not reflections and m >= 2:
                    mirrored = deg - m + 2
                    if m > mirrored or (m == mirrored and d_first > d_last):
                        continue
                walks.append(SplitWalk(v, d_first, d_last, m))
    return walks


# =============================================================================
# Contraction
# =============================================================================

def enumerate_sites(qmap: EmbeddedMap) -> List[ContractionSite]:
    """Both axes of every face of length 4."""
    sites = []
    for face in qmap.face_orbits:
        if len(face) == 4:
            sites.append(ContractionSite(face, 0))
            sites.append(ContractionSite(face, 1))
    return sites


def contraction_degree(qmap: EmbeddedMap, site: ContractionSite) -> int:
    """min(d(x_a), d(x_c)): the degree of the split that the contraction undoes."""
    x, w = site.axis_vertices(qmap)
    return min(qmap.degree(x), qmap.degree(w))


def _contract_orbits(qmap: EmbeddedMap, site: ContractionSite) -> List[List[int]]:
    a = site.axis
    p, q, r, s = (site.face[(a + t) % 4] for t in range(4))
    vertex_of = qmap.vertex_of
    X, W = vertex_of[p], vertex_of[r]
    if X == W:
        raise InvalidContractionError("axis corners are the same vertex")
    deg_x, deg_w = qmap.degree(X), qmap.degree(W)
    if deg_x == 1 and deg_w == 1:
        raise InvalidContractionError("both axis corners have degree 1")
    if deg_x == 1:
        p, q, r, s = r, s, p, q
        X, W = W, X
        deg_x, deg_w = deg_w, deg_x

    x_orbit = list(qmap.rotation_from(p))       # p, ..., s^1
    if deg_w == 1:
        # w hangs on a single edge: drop it and the parallel edge at X
        merged = x_orbit[1:]
        removed = {p, p ^ 1, r, r ^ 1}
    else:
        w_orbit = list(qmap.rotation_from(r))   # r, ..., q^1
        merged = x_orbit + w_orbit[1:-1]
        removed = {q, q ^ 1, r, r ^ 1}

    orbits = []
    for v, orbit in enumerate(qmap.vertex_orbits):
        if v == W:
            continue
        kept = merged if v == X else [d for d in orbit if d not in removed]
        kept = [d for d in kept if d not in removed]
        if not kept:
            raise InvalidContractionError(f"vertex {v} loses all its edges")
        orbits.append(kept)
    return orbits


def _contract(qmap: EmbeddedMap, site: ContractionSite) -> Tuple[EmbeddedMap, List[int]]:
    """Contracted map and, for each of its darts, the dart of `qmap` it came from."""
    if len(site.face) != 4 or any(qmap.phi[site.face[t]] != site.face[(t + 1) % 4]
                                  for t in range(4)):
        raise InvalidContractionError(f"site {site} is not a face of the map")
    orbits = _contract_orbits(qmap, site)
    surviving_edges = sorted({d >> 1 for orbit in orbits for d in orbit})
    new_edge = {e: idx for idx, e in enumerate(surviving_edges)}
    sigma = [0] * (2 * len(surviving_edges))
    for orbit in orbits:
        for x, y in zip(orbit, orbit[1:] + orbit[:1]):
            sigma[2 * new_edge[x >> 1] + (x & 1)] = 2 * new_edge[y >> 1] + (y & 1)
    result = EmbeddedMap(tuple(sigma))
    problems = validate(result)
    if problems:
        raise InvalidContractionError(f"invalid contraction at {site}: {'; '.join(problems)}")
    origin = [2 * e + bit for e in surviving_edges for bit in (0, 1)]
    return result, origin


def contract(qmap: EmbeddedMap, site: ContractionSite) -> EmbeddedMap:
    """
    Identify the axis corners of a face and merge its two boundary edge pairs.

    Surviving darts keep their relative order; they are renumbered densely
    (edge by edge), so contracting the face created by a split restores the
    original darts exactly.

    Args:
        qmap: A valid quadrangulation.
        site: Face and axis to contract.

    Returns:
        A valid quadrangulation with n-1 vertices, m-2 edges and f-1 faces.

    Raises:
        InvalidContractionError: If the result is not a valid loopless
            quadrangulation (for example the 2-contraction attempts on Q3).
    """
    return _contract(qmap, site)[0]


def contract_coloured(qmap: EmbeddedMap, colouring: Colouring,
                      site: ContractionSite) -> Tuple[EmbeddedMap, Colouring]:
    """Contraction of a quasi-dual; the merged corners share a colour, every vertex keeps its own."""
    result, origin = _contract(qmap, site)
    colours = tuple(colouring[qmap.vertex_of[origin[orbit[0]]]] for orbit in result.vertex_orbits)
    return result, Colouring(colours)


def valid_contractions(qmap: EmbeddedMap, max_degree: Optional[int] = None
                       ) -> Iterator[Tuple[ContractionSite, int, EmbeddedMap]]:
    """
    Yield (site, degree, result) for every valid contraction, optionally only
    those of degree <= max_degree.
    """
    for site in enumerate_sites(qmap):
        D = contraction_degree(qmap, site)
        if max_degree is not None and D > max_degree:
            continue
        try:
            result = contract(qmap, site)
        except InvalidContractionError:
            continue
        yield site, D, result


def is_k_contractible(qmap: EmbeddedMap, k: int) -> bool:
    """True when some valid contraction has degree exactly k."""
    for site in enumerate_sites(qmap):
        if contraction_degree(qmap, site) != k:
            continue
        try:
            contract(qmap, site)
        except InvalidContractionError:
            continue
        return True
    return False


def contractibility(qmap: EmbeddedMap) -> Tuple[bool, bool]:
    """(1-contractible, 2-contractible) in a single pass over the sites."""
    found = {1: False, 2: False}
    for site in enumerate_sites(qmap):
        D = contraction_degree(qmap, site)
        if D not in found or found[D]:
            continue
        try:
            contract(qmap, site)
        except InvalidContractionError:
            continue
        found[D] = True
        if found[1] and found[2]:
            break
    return found[1], found[2]


def is_irreducible(qmap: EmbeddedMap) -> bool:
    """Neither 1- nor 2-contractible."""
    return contractibility(qmap) == (False, False)


# =============================================================================
# Monotone one-vertex extensions inside a face
# =============================================================================

def _insert_before(sigma: List[int], anchor: int, dart: int) -> None:
    prev = _predecessor(sigma, anchor)
    sigma[prev] = dart
    sigma[dart] = anchor


def face_extensions(qmap: EmbeddedMap, face: Tuple[int, ...]) -> List[EmbeddedMap]:
    """
    Brute-force every valid quadrangulation obtained by placing one new vertex
    and two new edges inside `face`, leaving the rest of the map untouched.

    The new vertex w is first attached to one corner of the face, which turns
    the face into a walk of length 6; the second edge is then tried as a chord
    between every pair of corner positions of that walk (w included).

    Args:
        qmap: A valid quadrangulation.
        face: The darts of one face.

    Returns:
        All valid results (duplicates up to isomorphism included).
    """
    results = []
    k = qmap.dart_count
    for corner in face:
        base = list(qmap.sigma) + [0, 0]
        w_dart, corner_dart = k, k + 1
        base[w_dart] = w_dart
        # corner of `corner` is the wedge just before it
        _insert_before(base, corner, corner_dart)
        walk = [w_dart]
        d = base[w_dart ^ 1]
        while d != w_dart:
            walk.append(d)
            d = base[d ^ 1]
        for x in range(len(walk)):
            for y in range(x + 1, len(walk)):
                sigma = base + [0, 0]
                c_x, c_y = k + 2, k + 3
                _insert_before(sigma, walk[x], c_x)
                _insert_before(sigma, walk[y], c_y)
                candidate = EmbeddedMap(tuple(sigma))
                if not validate(candidate):
                    results.append(candidate)
    return results
