"""Strong amalgamation of echeloned spaces over a shared subspace.

The construction amalgamates the two rank chains first (keeping both
bottoms identified and appending a fresh top), then lays the two point
sets side by side, overlapping exactly on the shared image.  Pairs that
straddle the two sides get the fresh top rank, so the overlap is never
forced to grow: amalgamation here is always strong.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MorphismError, ValidationError
from .space import EchelonedSpace, PointMap, RankMap, embedding_rank_map, from_weights


@dataclass(frozen=True)
class ChainAmalgam:
    """Finite chain 0..size-1 with embeddings of two source chains.

    ``g1`` and ``g2`` place the two chains; their restrictions to the
    shared chain agree, position 0 is the common minimum, and ``top`` is
    the appended fresh maximum (present even when one side already had a
    maximum above the other).
    """

    size: int
    g1: RankMap
    g2: RankMap
    top: int


@dataclass(frozen=True)
class AmalgamResult:
    space: EchelonedSpace
    g1: PointMap  # embedding of the first space
    g2: PointMap  # embedding of the second space
    chain: ChainAmalgam


def _check_chain_map(size_src: int, size_dst: int, h: RankMap, name: str) -> None:
    if len(h) != size_src:
        raise ValidationError("chain/map", f"{name} must place all {size_src} chain elements")
    if h[0] != 0:
        raise ValidationError("chain/map", f"{name} must fix the bottom")
    for a in range(1, size_src):
        if h[a] <= h[a - 1]:
            raise ValidationError("chain/map", f"{name} must be strictly increasing")
    if h[-1] >= size_dst:
        raise ValidationError("chain/map", f"{name} runs past the target chain")


def chain_amalgam(
    size_a: int, size_b1: int, size_b2: int, h1: RankMap, h2: RankMap
) -> ChainAmalgam:
    """Amalgamate two chain embeddings of a common chain.

    Between consecutive images of the shared chain, elements of the first
    chain precede elements of the second, each side in its native order;
    a fresh top is appended at the end.
    """
    if size_a < 1:
        raise ValidationError("chain/map", "the shared chain cannot be empty")
    _check_chain_map(size_a, size_b1, tuple(h1), "first chain map")
    _check_chain_map(size_a, size_b2, tuple(h2), "second chain map")
    g1: list[int] = [0] * size_b1
    g2: list[int] = [0] * size_b2
    pos = 0
    for a in range(size_a):
        g1[h1[a]] = pos
        g2[h2[a]] = pos
        pos += 1
        hi1 = h1[a + 1] if a + 1 < size_a else size_b1
        hi2 = h2[a + 1] if a + 1 < size_a else size_b2
        for r in range(h1[a] + 1, hi1):
            g1[r] = pos
            pos += 1
        for r in range(h2[a] + 1, hi2):
            g2[r] = pos
            pos += 1
    return ChainAmalgam(pos + 1, tuple(g1), tuple(g2), pos)


def amalgamate(
    shared: EchelonedSpace,
    left: EchelonedSpace,
    right: EchelonedSpace,
    f1: PointMap,
    f2: PointMap,
) -> AmalgamResult:
    """Amalgamate two embeddings of ``shared`` into one space.

    Returns the amalgam with embeddings g1, g2 satisfying g1 o f1 = g2 o f2
    whose images overlap exactly on the shared part (strong amalgamation),
    plus the amalgamated rank chain.  Raises if either map fails to be an
    embedding.
    """
    w1 = embedding_rank_map(shared, left, f1)
    if w1 is None:
        raise MorphismError("amalgam/not-embedding", "first map is not an embedding")
    w2 = embedding_rank_map(shared, right, f2)
    if w2 is None:
        raise MorphismError("amalgam/not-embedding", "second map is not an embedding")
    chain = chain_amalgam(shared.n + 1, left.n + 1, right.n + 1, w1, w2)

    f1 = tuple(f1)
    f2 = tuple(f2)
    shared_image = {f2[x]: f1[x] for x in range(shared.m)}
    g2_list: list[int] = []
    next_id = left.m
    into_right: dict[int, int] = {}  # carrier id -> point of the right space
    for y in range(right.m):
        if y in shared_image:
            g2_list.append(shared_image[y])
        else:
            g2_list.append(next_id)
            next_id += 1
        into_right[g2_list[-1]] = y
    g1 = tuple(range(left.m))
    g2 = tuple(g2_list)
    total = next_id

    weights: dict[tuple[int, int], int] = {}
    for u in range(total):
        for v in range(u + 1, total):
            if u < left.m and v < left.m:
                weights[(u, v)] = chain.g1[left.rank(u, v)]
            elif u in into_right and v in into_right:
                weights[(u, v)] = chain.g2[right.rank(into_right[u], into_right[v])]
            else:
                weights[(u, v)] = chain.top
    space = from_weights(total, weights)
    return AmalgamResult(space, g1, g2, chain)


def jep(left: EchelonedSpace, right: EchelonedSpace) -> AmalgamResult:
    """Joint embedding: amalgamate over a single shared point (point 0 of
    each space)."""
    point = EchelonedSpace(1, 0, ((0,),))
    return amalgamate(point, left, right, (0,), (0,))
