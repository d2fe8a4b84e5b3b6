"""
EMBEDDED MAP CORE

Dart-based representation of connected, loopless multigraphs embedded on the
sphere (rotation systems), together with validation, structural predicates
and the radial / dual constructions.

Conventions:
    - Darts are 0..2m-1; the two darts of an edge are d and d ^ 1.
    - sigma[d] is the next dart clockwise around the vertex of d.
    - Faces are the orbits of phi = sigma . alpha, i.e. phi(d) = sigma[d ^ 1].
    - Vertex ids are assigned to sigma-orbits in increasing order of their
      smallest dart; the same rule numbers faces among phi-orbits.
"""

import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from src.core.errors import ColouringError, InvalidMapError

logger = logging.getLogger(__name__)


class Colour(IntEnum):
    """Equilibrium type carried by a vertex of a quasi-dual."""

    STABLE = 0
    UNSTABLE = 1

    @property
    def other(self) -> "Colour":
        return Colour.UNSTABLE if self is Colour.STABLE else Colour.STABLE

    @property
    def letter(self) -> str:
        return "S" if self is Colour.STABLE else "U"


def _orbits(perm: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    """Cycles of a permutation, each starting at its smallest element, sorted by it."""
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = []
        d = start
        while not seen[d]:
            seen[d] = True
            cycle.append(d)
            d = perm[d]
        cycles.append(tuple(cycle))
    return tuple(cycles)


@dataclass(frozen=True)
class EmbeddedMap:
    """
    A connected multigraph embedded on the sphere, stored as a rotation system.

    The object is immutable; derived structure (vertices, faces, degrees) is
    computed on first access and cached.

    Attributes:
        sigma: sigma[d] = next dart clockwise around the vertex of dart d.
    """

    sigma: Tuple[int, ...]

    def __post_init__(self):
        k = len(self.sigma)
        if k % 2 or len(set(self.sigma)) != k or any(not 0 <= d < k for d in self.sigma):
            raise InvalidMapError(["sigma is not a permutation of an even number of darts"])

    @property
    def dart_count(self) -> int:
        return len(self.sigma)

    @property
    def edge_count(self) -> int:
        return len(self.sigma) // 2

    @cached_property
    def sigma_inv(self) -> Tuple[int, ...]:
        inv = [0] * len(self.sigma)
        for d, nxt in enumerate(self.sigma):
            inv[nxt] = d
        return tuple(inv)

    @cached_property
    def phi(self) -> Tuple[int, ...]:
        sigma = self.sigma
        return tuple(sigma[d ^ 1] for d in range(len(sigma)))

    @cached_property
    def vertex_orbits(self) -> Tuple[Tuple[int, ...], ...]:
        return _orbits(self.sigma)

    @cached_property
    def vertex_of(self) -> Tuple[int, ...]:
        owner = [0] * len(self.sigma)
        for v, orbit in enumerate(self.vertex_orbits):
            for d in orbit:
                owner[d] = v
        return tuple(owner)

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_orbits)

    @cached_property
    def vertex_degrees(self) -> Tuple[int, ...]:
        return tuple(len(orbit) for orbit in self.vertex_orbits)

    @cached_property
    def face_orbits(self) -> Tuple[Tuple[int, ...], ...]:
        return _orbits(self.phi)

    @cached_property
    def face_of(self) -> Tuple[int, ...]:
        owner = [0] * len(self.sigma)
        for f, orbit in enumerate(self.face_orbits):
            for d in orbit:
                owner[d] = f
        return tuple(owner)

    @property
    def face_count(self) -> int:
        return len(self.face_orbits)

    def degree(self, v: int) -> int:
        return self.vertex_degrees[v]

    def rotation_from(self, dart: int) -> Tuple[int, ...]:
        """Clockwise darts around the vertex of `dart`, starting at `dart`."""
        out = [dart]
        d = self.sigma[dart]
        while d != dart:
            out.append(d)
            d = self.sigma[d]
        return tuple(out)

    def neighbours(self, v: int) -> Tuple[int, ...]:
        """Clockwise neighbour list of v (repeats for parallel edges)."""
        vertex_of = self.vertex_of
        return tuple(vertex_of[d ^ 1] for d in self.vertex_orbits[v])

    def edges(self) -> List[Tuple[int, int]]:
        """Endpoint pairs (vertex of dart 2k, vertex of dart 2k+1) for every edge k."""
        vertex_of = self.vertex_of
        return [(vertex_of[2 * k], vertex_of[2 * k + 1]) for k in range(self.edge_count)]

    def __repr__(self) -> str:
        return (f"EmbeddedMap(n={self.vertex_count}, m={self.edge_count}, "
                f"f={self.face_count})")


@dataclass(frozen=True)
class Colouring:
    """
    Assignment of Stable / Unstable to the vertices of a map, indexed by vertex id.
    """

    colours: Tuple[Colour, ...]
    s: int = field(init=False)
    u: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "colours", tuple(Colour(c) for c in self.colours))
        object.__setattr__(self, "s", sum(1 for c in self.colours if c is Colour.STABLE))
        object.__setattr__(self, "u", len(self.colours) - self.s)

    def __getitem__(self, v: int) -> Colour:
        return self.colours[v]

    def __len__(self) -> int:
        return len(self.colours)

    def swapped(self) -> "Colouring":
        return Colouring(tuple(c.other for c in self.colours))


class QuasiDualP1:
    """
    The single-edge path joining one stable and one unstable point.

    It is not a quadrangulation, so it lives outside EmbeddedMap; only
    coloured splitting, ancestors and classification handle it.
    """

    _instance: Optional["QuasiDualP1"] = None
    s = 1
    u = 1
    vertex_count = 2

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __reduce__(self):
        return (QuasiDualP1, ())

    def __repr__(self) -> str:
        return "P1"


QUASI_DUAL_P1 = QuasiDualP1()


# =============================================================================
# Validation
# =============================================================================

def is_connected(qmap: EmbeddedMap) -> bool:
    """True when <sigma, alpha> acts transitively on the darts."""
    k = qmap.dart_count
    if k == 0:
        return False
    seen = [False] * k
    seen[0] = True
    stack = [0]
    count = 1
    sigma = qmap.sigma
    while stack:
        d = stack.pop()
        for nxt in (sigma[d], d ^ 1):
            if not seen[nxt]:
                seen[nxt] = True
                count += 1
                stack.append(nxt)
    return count == k


def validate(qmap: EmbeddedMap, quadrangulation: bool = True) -> List[str]:
    """
    Check every invariant of an embedded (quadrangulated) map.

    Args:
        qmap: The map to check.
        quadrangulation: Also require every face to be bounded by a walk of length 4.

    Returns:
        List of violated invariants; empty iff the map is valid.
    """
    problems = []
    if qmap.dart_count == 0:
        return ["map has no edges"]
    if not is_connected(qmap):
        problems.append("not connected")
    vertex_of = qmap.vertex_of
    loops = [k for k in range(qmap.edge_count) if vertex_of[2 * k] == vertex_of[2 * k + 1]]
    if loops:
        problems.append(f"loop edges {loops}")
    euler = qmap.vertex_count - qmap.edge_count + qmap.face_count
    if euler != 2:
        problems.append(f"not spherical: n - m + f = {euler}")
    if quadrangulation:
        bad = sorted({len(face) for face in qmap.face_orbits if len(face) != 4})
        if bad:
            problems.append(f"face walks of length {bad} (expected 4)")
    return problems


def is_valid(qmap: EmbeddedMap, quadrangulation: bool = True) -> bool:
    return not validate(qmap, quadrangulation)


def require_valid(qmap: EmbeddedMap, quadrangulation: bool = True) -> EmbeddedMap:
    """Return `qmap` unchanged or raise InvalidMapError listing the violations."""
    problems = validate(qmap, quadrangulation)
    if problems:
        raise InvalidMapError(problems)
    return qmap


# =============================================================================
# Degrees and structural predicates
# =============================================================================

def degrees(qmap: EmbeddedMap) -> Counter:
    """Multiset of vertex degrees."""
    return Counter(qmap.vertex_degrees)


def min_degree(qmap: EmbeddedMap) -> int:
    return min(qmap.vertex_degrees)


def is_simple(qmap: EmbeddedMap) -> bool:
    pairs = set()
    for a, b in qmap.edges():
        key = (a, b) if a < b else (b, a)
        if a == b or key in pairs:
            return False
        pairs.add(key)
    return True


def to_networkx(qmap: EmbeddedMap) -> nx.MultiGraph:
    """Underlying abstract multigraph (embedding dropped), keyed by edge index."""
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(qmap.vertex_count))
    for k, (a, b) in enumerate(qmap.edges()):
        graph.add_edge(a, b, key=k)
    return graph


def is_3_connected(qmap: EmbeddedMap) -> bool:
    """
    Brute-force 3-connectivity: at least 4 vertices and no pair of vertices
    whose removal disconnects the graph.
    """
    n = qmap.vertex_count
    if n < 4:
        return False
    graph = nx.Graph(to_networkx(qmap))
    # a vertex with at most two distinct neighbours is cut off by removing them
    if any(graph.degree(v) < 3 for v in graph.nodes):
        return False
    for a in range(n):
        for b in range(a + 1, n):
            rest = [v for v in range(n) if v != a and v != b]
            if not nx.is_connected(graph.subgraph(rest)):
                return False
    return True


def _side_vertices(qmap: EmbeddedMap, cycle: Sequence[int], on_cycle: set, right: bool) -> set:
    """Vertices off the cycle reachable from one side of it."""
    sigma = qmap.sigma
    vertex_of = qmap.vertex_of
    seeds = []
    length = len(cycle)
    for i in range(length):
        incoming = cycle[i] ^ 1
        outgoing = cycle[(i + 1) % length]
        start, stop = (incoming, outgoing) if right else (outgoing, incoming)
        d = sigma[start]
        while d != stop:
            w = vertex_of[d ^ 1]
            if w not in on_cycle:
                seeds.append(w)
            d = sigma[d]
    reached = set(seeds)
    queue = deque(seeds)
    orbits = qmap.vertex_orbits
    while queue:
        v = queue.popleft()
        for d in orbits[v]:
            w = vertex_of[d ^ 1]
            if w not in on_cycle and w not in reached:
                reached.add(w)
                queue.append(w)
    return reached


def has_separating_4cycle(qmap: EmbeddedMap) -> bool:
    """
    True when some 4-cycle has at least one vertex strictly inside each of the
    two regions it bounds.
    """
    vertex_of = qmap.vertex_of
    orbits = qmap.vertex_orbits
    for d0 in range(qmap.dart_count):
        v0 = vertex_of[d0]
        v1 = vertex_of[d0 ^ 1]
        if v1 == v0:
            continue
        for d1 in orbits[v1]:
            v2 = vertex_of[d1 ^ 1]
            if v2 in (v0, v1):
                continue
            for d2 in orbits[v2]:
                v3 = vertex_of[d2 ^ 1]
                if v3 in (v0, v1, v2):
                    continue
                for d3 in orbits[v3]:
                    if vertex_of[d3 ^ 1] != v0:
                        continue
                    cycle = (d0, d1, d2, d3)
                    on_cycle = {v0, v1, v2, v3}
                    if (_side_vertices(qmap, cycle, on_cycle, right=True)
                            and _side_vertices(qmap, cycle, on_cycle, right=False)):
                        return True
    return False


# =============================================================================
# Colourings
# =============================================================================

def bipartition(qmap: EmbeddedMap, first: Colour = Colour.STABLE) -> Colouring:
    """
    Proper 2-colouring of a connected bipartite map; vertex 0 receives `first`.

    Raises:
        ColouringError: If the map is not bipartite.
    """
    n = qmap.vertex_count
    colour: List[Optional[Colour]] = [None] * n
    colour[0] = first
    queue = deque([0])
    orbits = qmap.vertex_orbits
    vertex_of = qmap.vertex_of
    while queue:
        v = queue.popleft()
        for d in orbits[v]:
            w = vertex_of[d ^ 1]
            if colour[w] is None:
                colour[w] = colour[v].other
                queue.append(w)
            elif colour[w] is colour[v]:
                raise ColouringError("map is not bipartite")
    if any(c is None for c in colour):
        raise ColouringError("map is not connected")
    return Colouring(tuple(colour))


def validate_colouring(qmap: EmbeddedMap, colouring: Colouring) -> List[str]:
    problems = []
    if len(colouring) != qmap.vertex_count:
        return [f"colouring covers {len(colouring)} of {qmap.vertex_count} vertices"]
    for a, b in qmap.edges():
        if colouring[a] is colouring[b]:
            problems.append(f"edge {a}-{b} joins equal colours")
            break
    if colouring.s < 1 or colouring.u < 1:
        problems.append("a colour class is empty")
    return problems


def require_colouring(qmap: EmbeddedMap, colouring: Colouring) -> Colouring:
    problems = validate_colouring(qmap, colouring)
    if problems:
        raise ColouringError("; ".join(problems))
    return colouring


# =============================================================================
# Relabelling, mirror image and duality
# =============================================================================

def relabel(qmap: EmbeddedMap, perm: Sequence[int]) -> EmbeddedMap:
    """
    Rename darts: dart d becomes perm[d]. The permutation must respect the
    pairing, i.e. perm[d ^ 1] == perm[d] ^ 1.
    """
    if any(perm[d ^ 1] != perm[d] ^ 1 for d in range(len(perm))):
        raise InvalidMapError(["relabelling does not preserve dart pairs"])
    sigma = [0] * qmap.dart_count
    for d, nxt in enumerate(qmap.sigma):
        sigma[perm[d]] = perm[nxt]
    return EmbeddedMap(tuple(sigma))


def transport_colouring(source: EmbeddedMap, colouring: Colouring,
                        target: EmbeddedMap, perm: Sequence[int]) -> Colouring:
    """Carry a colouring of `source` to `target` = relabel(source, perm)."""
    colours = [Colour.STABLE] * target.vertex_count
    for v, orbit in enumerate(source.vertex_orbits):
        colours[target.vertex_of[perm[orbit[0]]]] = colouring[v]
    return Colouring(tuple(colours))


def mirror(qmap: EmbeddedMap) -> EmbeddedMap:
    """Orientation-reversed copy (sigma replaced by its inverse)."""
    return EmbeddedMap(qmap.sigma_inv)


def dual(qmap: EmbeddedMap) -> EmbeddedMap:
    """Dual map: faces become vertices; the darts are shared."""
    return EmbeddedMap(qmap.phi)


def from_rotation(adjacency: Sequence[Sequence[int]]) -> EmbeddedMap:
    """
    Build a simple embedded graph from clockwise neighbour lists.

    Args:
        adjacency: adjacency[v] lists the neighbours of v in clockwise order,
            vertices numbered 0..n-1.

    Returns:
        The embedded map. Vertex ids of the result follow the smallest-dart
        rule, so they may differ from the input numbering.

    Raises:
        InvalidMapError: If the lists are asymmetric or contain repeats.
    """
    edge_index: Dict[Tuple[int, int], int] = {}
    for v, nbrs in enumerate(adjacency):
        if len(set(nbrs)) != len(nbrs) or v in nbrs:
            raise InvalidMapError([f"vertex {v} has a loop or repeated neighbour"])
        for w in nbrs:
            if v not in adjacency[w]:
                raise InvalidMapError([f"edge {v}-{w} missing at {w}"])
            key = (min(v, w), max(v, w))
            if key not in edge_index:
                edge_index[key] = len(edge_index)

    def dart(v: int, w: int) -> int:
        k = edge_index[(min(v, w), max(v, w))]
        return 2 * k if v < w else 2 * k + 1

    sigma = [0] * (2 * len(edge_index))
    for v, nbrs in enumerate(adjacency):
        for i, w in enumerate(nbrs):
            sigma[dart(v, w)] = dart(v, nbrs[(i + 1) % len(nbrs)])
    return EmbeddedMap(tuple(sigma))


def radial(g: EmbeddedMap) -> Tuple[EmbeddedMap, Colouring]:
    """
    Radial graph of an embedded graph, coloured as a quasi-dual.

    Every corner of g (a dart d together with the wedge from d to sigma(d))
    becomes an edge between the image of the vertex of d and the image of the
    face entered through that wedge. Vertex images are Unstable, face images
    Stable.

    Args:
        g: Connected, loopless, spherical embedded map (any face lengths).

    Returns:
        (quadrangulation, colouring) with |V(g)| + |F(g)| vertices and 2|E(g)| edges.

    Raises:
        InvalidMapError: If g is disconnected, has loops or is not spherical.
    """
    require_valid(g, quadrangulation=False)
    sigma = g.sigma
    sigma_inv = g.sigma_inv
    radial_sigma = [0] * (2 * g.dart_count)
    for d in range(g.dart_count):
        # dart 2d sits at the image of vertex(d), dart 2d + 1 at the image of face(sigma(d))
        radial_sigma[2 * d] = 2 * sigma[d]
        radial_sigma[2 * d + 1] = 2 * sigma_inv[d ^ 1] + 1
    result = EmbeddedMap(tuple(radial_sigma))
    colours = tuple(Colour.UNSTABLE if orbit[0] % 2 == 0 else Colour.STABLE
                    for orbit in result.vertex_orbits)
    colouring = Colouring(colours)
    logger.debug("radial of %r -> %r (s=%d, u=%d)", g, result, colouring.s, colouring.u)
    return require_valid(result), colouring
