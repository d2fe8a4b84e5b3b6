"""
NAMED CONSTRUCTIONS

The four smallest quadrangulations (P2, C4, Q3, Q4), pseudo-double wheels and
a handful of polyhedral skeletons used as seeds and test subjects.

Q3 is the 1-splitting of P2 at its centre and Q4 the 1-splitting at a leaf.
Drawings elsewhere may swap the two labels; nothing downstream depends on it.
"""

from typing import Callable, Dict, List

from src.core.errors import InvalidMapError
from src.core.map_core import EmbeddedMap, dual, from_rotation, require_valid
from src.core.surgery import SplitWalk, split


def build_p2() -> EmbeddedMap:
    """Path with three vertices: centre {0, 2}, leaves {1} and {3}."""
    return require_valid(EmbeddedMap((2, 1, 0, 3)))


def build_c4() -> EmbeddedMap:
    """4-cycle, the 2-splitting of P2 at its centre."""
    p2 = build_p2()
    return split(p2, SplitWalk.at(p2, 0, 2))


def build_q3() -> EmbeddedMap:
    """Degree sequence 3, 3, 1, 1: 1-splitting of P2 at the centre."""
    p2 = build_p2()
    return split(p2, SplitWalk.at(p2, 0, 0))


def build_q4() -> EmbeddedMap:
    """Degree sequence 4, 2, 1, 1: 1-splitting of P2 at a leaf."""
    p2 = build_p2()
    return split(p2, SplitWalk.at(p2, 1, 1))


def pseudo_double_wheel(k: int) -> EmbeddedMap:
    """
    2k-cycle with one hub on the even cycle vertices and one on the odd ones.

    Args:
        k: Half the cycle length, at least 3.

    Returns:
        Simple quadrangulation with 2k + 2 vertices and minimum degree 3.

    Raises:
        InvalidMapError: If k < 3.
    """
    if k < 3:
        raise InvalidMapError([f"pseudo-double wheel needs k >= 3, got {k}"])
    length = 2 * k
    hub_even, hub_odd = length, length + 1
    adjacency: List[List[int]] = []
    for i in range(length):
        nxt, prev = (i + 1) % length, (i - 1) % length
        if i % 2 == 0:
            adjacency.append([hub_even, nxt, prev])
        else:
            adjacency.append([prev, nxt, hub_odd])
    adjacency.append(list(range(length - 2, -1, -2)))
    adjacency.append(list(range(1, length, 2)))
    return require_valid(from_rotation(adjacency))


# =============================================================================
# Polyhedral skeletons (not quadrangulations)
# =============================================================================

def pyramid(k: int) -> EmbeddedMap:
    """Skeleton of the pyramid over a k-gon; apex is vertex k."""
    if k < 3:
        raise InvalidMapError([f"pyramid needs a base with k >= 3, got {k}"])
    adjacency = [[k, (i + 1) % k, (i - 1) % k] for i in range(k)]
    adjacency.append(list(range(k - 1, -1, -1)))
    return require_valid(from_rotation(adjacency), quadrangulation=False)


def tetrahedron() -> EmbeddedMap:
    return pyramid(3)


def prism(k: int) -> EmbeddedMap:
    """Skeleton of the prism over a k-gon; vertex i + k sits above vertex i."""
    if k < 3:
        raise InvalidMapError([f"prism needs k >= 3, got {k}"])
    bottom = [[i + k, (i + 1) % k, (i - 1) % k] for i in range(k)]
    top = [[i, k + (i - 1) % k, k + (i + 1) % k] for i in range(k)]
    return require_valid(from_rotation(bottom + top), quadrangulation=False)


def cube() -> EmbeddedMap:
    return prism(4)


def octahedron() -> EmbeddedMap:
    return dual(cube())


QUADRANGULATIONS: Dict[str, Callable[..., EmbeddedMap]] = {
    "p2": build_p2,
    "c4": build_c4,
    "q3": build_q3,
    "q4": build_q4,
    "pdw": pseudo_double_wheel,
}

SKELETONS: Dict[str, Callable[..., EmbeddedMap]] = {
    "tetra": tetrahedron,
    "pyramid": pyramid,
    "prism": prism,
    "cube": cube,
    "octa": octahedron,
}


PARAMETERISED = frozenset({"pdw", "pyramid", "prism"})


def named(spec: str) -> EmbeddedMap:
    """
    Resolve a seed name such as ``p2``, ``pdw:4`` or ``prism:5``.

    Quadrangulation names return the map itself; skeleton names return the
    skeleton (callers take its radial graph when they need a quadrangulation).

    Raises:
        KeyError: For unknown names.
        ValueError: For a missing, unexpected or malformed parameter.
    """
    name, _, arg = spec.strip().lower().partition(":")
    builder = QUADRANGULATIONS.get(name) or SKELETONS.get(name)
    if builder is None:
        raise KeyError(f"unknown construction '{spec}'")
    if name in PARAMETERISED:
        if not arg:
            raise ValueError(f"{name} needs a parameter, e.g. {name}:4")
        return builder(int(arg))
    if arg:
        raise ValueError(f"{name} takes no parameter")
    return builder()


def is_skeleton_name(spec: str) -> bool:
    return spec.strip().lower().partition(":")[0] in SKELETONS
