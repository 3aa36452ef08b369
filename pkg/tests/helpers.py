"""Seeded generators shared by the unit and acceptance suites.

Everything draws from SplitMix64Stream so a seed pins the whole case."""

import itertools

from echelon import EchelonedSpace, from_rank_table, from_weights
from echelon.prng import SplitMix64Stream


def permute_table(table, perm):
    m = len(table)
    out = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            out[perm[i]][perm[j]] = table[i][j]
    return tuple(tuple(row) for row in out)


def random_space(stream: SplitMix64Stream, m: int) -> EchelonedSpace:
    if m == 1:
        return EchelonedSpace(1, 0, ((0,),))
    pairs = list(itertools.combinations(range(m), 2))
    levels = stream.randrange(len(pairs)) + 1
    weights = {p: stream.randrange(levels) + 1 for p in pairs}
    return from_weights(m, weights)


def random_superspace(stream: SplitMix64Stream, base: EchelonedSpace, m_total: int):
    """A space on m_total points containing base on a random point set,
    together with the witnessing embedding."""
    # doubling base ranks keeps their relative order; odd weights let new
    # pairs land strictly between, below, or above them
    weights = {}
    for i in range(base.m):
        for j in range(i + 1, base.m):
            weights[(i, j)] = 2 * base.rank(i, j)
    ceiling = 2 * base.n + 2
    for i in range(m_total):
        for j in range(max(i + 1, base.m), m_total):
            weights[(i, j)] = stream.randrange(ceiling) + 1
    big = from_weights(m_total, weights)
    perm = list(range(m_total))
    for i in range(m_total - 1, 0, -1):
        k = stream.randrange(i + 1)
        perm[i], perm[k] = perm[k], perm[i]
    shuffled = from_rank_table(permute_table(big.table, perm))
    embedding = tuple(perm[i] for i in range(base.m))
    return shuffled, embedding


def random_amalgam_triple(stream: SplitMix64Stream, max_b: int = 5):
    """(A, B1, B2, f1, f2) with A embedded in both sides."""
    a_size = stream.randrange(3) + 1
    shared = random_space(stream, a_size)
    b1, f1 = random_superspace(stream, shared, a_size + stream.randrange(max_b - a_size + 1))
    b2, f2 = random_superspace(stream, shared, a_size + stream.randrange(max_b - a_size + 1))
    return shared, b1, b2, f1, f2


def random_embedding_chain(stream: SplitMix64Stream, sizes):
    """Spaces of the given sizes with embeddings between consecutive ones."""
    spaces = [random_space(stream, sizes[0])]
    maps = []
    for size in sizes[1:]:
        bigger, emb = random_superspace(stream, spaces[-1], size)
        spaces.append(bigger)
        maps.append(emb)
    return spaces, maps
