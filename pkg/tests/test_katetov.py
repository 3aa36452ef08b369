"""The one-point-extension space K(X) and its functor action.

Size identities are checked two ways: the closed formulas and a direct
count of the chain built label by label.  Extension realization is pinned
on a worked example, then swept exhaustively for small bases."""

import itertools

import pytest

from echelon import (
    EchelonedSpace,
    chain_label_map,
    embedding_rank_map,
    enumerate_spaces,
    from_weights,
    is_embedding,
    katetov_chain,
    katetov_map,
    katetov_space,
    one_point_extensions,
    realize_extension,
)
from echelon.errors import CapExceeded, MorphismError
from echelon.katetov import APART, BOT, KatetovChain, rank_label, slot
from echelon.prng import SplitMix64Stream

from helpers import random_embedding_chain

SMALL = [next(iter(enumerate_spaces(1)))] + list(enumerate_spaces(2)) + list(
    enumerate_spaces(3)
)


def chain_size_formula(m: int, n: int) -> int:
    return n + 2 + (n + 1) * m


def katetov_size_formula(m: int, n: int) -> int:
    return m + (chain_size_formula(m, n) - 1) ** m


def test_chain_structure_two_points():
    chain = KatetovChain.of(2, 1)
    assert chain.labels == (
        BOT,
        APART,
        slot(1, 0),
        slot(2, 0),
        rank_label(1),
        slot(1, 1),
        slot(2, 1),
    )
    assert len(chain) == chain_size_formula(2, 1)
    assert chain.position(rank_label(1)) == 4
    assert chain.label_at(1) == APART


def test_size_identities_small_bases():
    for sp in SMALL:
        chain = katetov_chain(sp)
        assert len(chain) == chain_size_formula(sp.m, sp.n)
        kx = katetov_space(sp)
        assert kx.m == katetov_size_formula(sp.m, sp.n)
        assert kx.width == len(chain) - 1
        assert kx.n == len(chain) - 1


def test_katetov_materializes_to_a_valid_space():
    sp = from_weights(2, {(0, 1): 1})
    kx = katetov_space(sp)
    table = kx.materialize()
    assert isinstance(table, EchelonedSpace)  # constructor enforces density
    assert table.m == 38
    assert table.n == 6
    for u in range(kx.m):
        for v in range(kx.m):
            assert table.rank(u, v) == kx.rank(u, v)


def test_materialize_cap():
    sp = next(sp for sp in enumerate_spaces(3) if sp.n == 3)
    with pytest.raises(CapExceeded):
        katetov_space(sp).materialize()


def test_base_size_cap():
    four = next(iter(enumerate_spaces(4)))
    with pytest.raises(CapExceeded):
        katetov_space(four)


def test_identity_embedding_for_all_small_bases():
    for sp in SMALL:
        kx = katetov_space(sp)
        lam = kx.identity_embedding()
        assert lam == tuple(range(sp.m))
        assert embedding_rank_map(sp, kx, lam) is not None


def test_function_point_roundtrip():
    kx = katetov_space(from_weights(2, {(0, 1): 1}))
    for point in range(kx.base.m, kx.m):
        values = kx.function_values(point)
        assert len(values) == kx.base.m
        assert all(1 <= v <= kx.width for v in values)
        assert kx.function_point(values) == point


def test_rank_rules():
    base = from_weights(2, {(0, 1): 1})
    kx = katetov_space(base)
    chain = kx.chain
    assert kx.rank(0, 1) == chain.position(rank_label(1))
    f = kx.function_point((1, 1))
    g = kx.function_point((2, 3))
    assert kx.rank(f, g) == chain.position(APART)
    assert kx.rank(0, g) == 2
    assert kx.rank(1, g) == 3
    assert kx.rank(f, f) == 0


def test_realize_extension_worked_example():
    base = from_weights(2, {(0, 1): 1})
    ext = from_weights(3, {(0, 1): 2, (0, 2): 1, (1, 2): 2})
    kx, g = realize_extension(base, ext)
    assert g[0] == 0 and g[1] == 1
    assert is_embedding(ext, kx, g)
    chain = kx.chain
    # the new point sits strictly below the realized pair class at 0 and
    # exactly on it at 1
    assert kx.rank(g[2], 0) == chain.position(slot(1, 0))
    assert kx.rank(g[2], 1) == chain.position(rank_label(1))


def test_every_extension_realizes_over_identity():
    for sp in [SMALL[0]] + list(enumerate_spaces(2)):
        for ext in one_point_extensions(sp):
            kx, g = realize_extension(sp, ext)
            assert tuple(g[: sp.m]) == tuple(range(sp.m))
            assert is_embedding(ext, kx, g)


def test_realize_extension_rejects_wrong_restriction():
    base = from_weights(3, {(0, 1): 1, (0, 2): 2, (1, 2): 2})
    flat = from_weights(4, {p: 1 for p in itertools.combinations(range(4), 2)})
    with pytest.raises(MorphismError):
        realize_extension(base, flat)  # restriction collapses the classes
    with pytest.raises(MorphismError):
        realize_extension(base, base)  # wrong point count


def test_one_point_extensions_restrict_back():
    from echelon import induced_subspace

    base = from_weights(2, {(0, 1): 1})
    exts = list(one_point_extensions(base))
    assert len(exts) == 13  # every 3-point space restricts to the 2-point one
    for ext in exts:
        assert induced_subspace(ext, (0, 1)).space == base


def test_chain_label_map_transport():
    x = from_weights(2, {(0, 1): 1})
    y = from_weights(3, {(0, 1): 1, (0, 2): 2, (1, 2): 2})
    phi = (0, 2)  # X's pair lands on Y's rank-2 class
    mapping = chain_label_map(x, y, phi)
    assert mapping[BOT] == BOT
    assert mapping[APART] == APART
    assert mapping[slot(1, 0)] == slot(1, 0)
    assert mapping[slot(2, 0)] == slot(2, 0)
    assert mapping[rank_label(1)] == rank_label(2)
    assert mapping[slot(1, 1)] == slot(1, 2)
    assert chain_label_map(y, x, (0, 1, 1)) is None  # not an embedding


def test_functor_preserves_identity():
    for sp in [SMALL[0]] + list(enumerate_spaces(2)):
        kx = katetov_space(sp)
        assert katetov_map(kx, kx, tuple(range(sp.m))) == tuple(range(kx.m))


def test_functor_preserves_composition_seeded():
    stream = SplitMix64Stream(77)
    for trial in range(10):
        sizes = (1 + stream.randrange(2),)
        sizes += (min(3, sizes[0] + stream.randrange(3)),)
        sizes += (min(3, sizes[1] + stream.randrange(3)),)
        (x, y, z), (phi1, phi2) = random_embedding_chain(stream, sizes)
        kx, ky, kz = katetov_space(x), katetov_space(y), katetov_space(z)
        k1 = katetov_map(kx, ky, phi1)
        k2 = katetov_map(ky, kz, phi2)
        composed = tuple(phi2[p] for p in phi1)
        direct = katetov_map(kx, kz, composed)
        assert direct == tuple(k2[p] for p in k1), trial


def test_functor_action_is_an_embedding():
    stream = SplitMix64Stream(13)
    for _ in range(6):
        (x, y), (phi,) = random_embedding_chain(stream, (2, 3))
        kx, ky = katetov_space(x), katetov_space(y)
        kmap = katetov_map(kx, ky, phi)
        assert embedding_rank_map(kx, ky, kmap) is not None


def test_katetov_map_rejects_non_embeddings():
    x = from_weights(2, {(0, 1): 1})
    y = from_weights(3, {(0, 1): 1, (0, 2): 1, (1, 2): 1})
    with pytest.raises(MorphismError):
        katetov_map(katetov_space(x), katetov_space(y), (0, 0))
