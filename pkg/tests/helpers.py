"""
Test helpers: a brute-force isomorphism oracle and random map factories.
"""

from typing import List, Optional

import numpy as np

from config.settings import SEED
from src.core.constructions import build_p2
from src.core.map_core import Colouring, EmbeddedMap, relabel
from src.generation.genesis import random_split_chain


def brute_force_isomorphic(a: EmbeddedMap, b: EmbeddedMap,
                           colouring_a: Optional[Colouring] = None,
                           colouring_b: Optional[Colouring] = None) -> bool:
    """
    Search all dart bijections determined by the image of dart 0, in both
    orientations, for one commuting with the dart pairing and with sigma (or
    its inverse), preserving colours when given.
    """
    if a.dart_count != b.dart_count:
        return False
    k = a.dart_count
    for rot_b in (b.sigma, b.sigma_inv):
        for target in range(k):
            image = [-1] * k
            image[0] = target
            stack = [0]
            ok = True
            while stack and ok:
                d = stack.pop()
                for nxt, img in ((a.sigma[d], rot_b[image[d]]), (d ^ 1, image[d] ^ 1)):
                    if image[nxt] == -1:
                        image[nxt] = img
                        stack.append(nxt)
                    elif image[nxt] != img:
                        ok = False
                        break
            if not ok or -1 in image or len(set(image)) != k:
                continue
            if colouring_a is not None:
                if any(colouring_a[a.vertex_of[d]] is not colouring_b[b.vertex_of[image[d]]]
                       for d in range(k)):
                    continue
            return True
    return False


def make_rng(offset: int = 0) -> np.random.Generator:
    return np.random.default_rng(SEED + offset)


def random_relabel(qmap: EmbeddedMap, rng: np.random.Generator) -> EmbeddedMap:
    """Random pairing-preserving dart renaming: permute edges and flip their darts."""
    m = qmap.edge_count
    edges = rng.permutation(m)
    flips = rng.integers(0, 2, size=m)
    perm = [0] * qmap.dart_count
    for e in range(m):
        for bit in (0, 1):
            perm[2 * e + bit] = 2 * int(edges[e]) + (bit ^ int(flips[e]))
    return relabel(qmap, perm)


def random_maps(count: int, max_n: int, rng: np.random.Generator,
                min_n: int = 4) -> List[EmbeddedMap]:
    """Random quadrangulations with min_n..max_n vertices grown from P2 by S(1,3) splits."""
    maps = []
    for _ in range(count):
        n = int(rng.integers(min_n, max_n + 1))
        maps.append(random_split_chain(build_p2(), n - 3, 1, 3, rng))
    return maps
