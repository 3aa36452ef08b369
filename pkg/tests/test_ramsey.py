"""Ordered spaces, arrow checks, and the graph translation.

The arrow oracle below enumerates every colouring with no pruning, so it
only runs on tiny instances; arrow_check must agree with it exactly."""

import itertools

import pytest

from echelon import (
    EchelonedSpace,
    OrderedEchelonedSpace,
    OrderedEdgeColouredGraph,
    arrow_check,
    copy_set,
    enumerate_spaces,
    from_weights,
    graph_embeddings,
    ordered_embeddings,
    ordered_space_graph,
    phi_inverse,
    phi_translate,
    witness_search,
)
from echelon.errors import BudgetExceeded, ValidationError
from echelon.prng import SplitMix64Stream

from helpers import random_space

POINT = OrderedEchelonedSpace(EchelonedSpace(1, 0, ((0,),)), (0,))
EDGE = OrderedEchelonedSpace(from_weights(2, {(0, 1): 1}), (0, 1))


def ident(space):
    return OrderedEchelonedSpace(space, tuple(range(space.m)))


def flat(m):
    """All pairs at the same rank."""
    return from_weights(m, {p: 1 for p in itertools.combinations(range(m), 2)})


def shuffled(stream, n):
    out = list(range(n))
    for i in range(n - 1, 0, -1):
        j = stream.randrange(i + 1)
        out[i], out[j] = out[j], out[i]
    return tuple(out)


def emb_oracle(a, c):
    """Order-preserving injections that carry every pair comparison."""
    found = []
    for img in itertools.permutations(range(c.m), a.m):
        pos = [c.order.index(img[x]) for x in a.order]
        if pos != sorted(pos):
            continue
        ok = True
        for p in itertools.combinations(range(a.m), 2):
            for q in itertools.combinations(range(a.m), 2):
                lhs = a.space.rank(*p) <= a.space.rank(*q)
                rhs = c.space.rank(img[p[0]], img[p[1]]) <= c.space.rank(
                    img[q[0]], img[q[1]]
                )
                if lhs != rhs:
                    ok = False
        if ok:
            found.append(img)
    return sorted(found)


def graph_emb_oracle(a, c):
    """Order-preserving injections with identical labels, non-edge included."""
    found = []
    for img in itertools.permutations(range(c.v), a.v):
        pos = [c.order.index(img[x]) for x in a.order]
        if pos != sorted(pos):
            continue
        if all(
            a.colour(p, q) == c.colour(img[p], img[q])
            for p, q in itertools.combinations(range(a.v), 2)
        ):
            found.append(img)
    return sorted(found)


def arrow_oracle(c, a, b, k):
    """Try literally every colouring of the A-copies."""
    copies_a = copy_set(a, c)
    copies_b = [
        frozenset(img) for img in ordered_embeddings(b, c)
    ]
    if not copies_b:
        return False
    for colouring in itertools.product(range(k), repeat=len(copies_a)):
        good = False
        for bset in copies_b:
            cols = {
                colouring[i]
                for i, cset in enumerate(copies_a)
                if cset <= bset
            }
            if len(cols) == 1:
                good = True
                break
        if not good:
            return False
    return True


def test_ordered_space_validation():
    with pytest.raises(ValidationError):
        OrderedEchelonedSpace(EchelonedSpace(1, 0, ((0,),)), (0, 1))
    with pytest.raises(ValidationError):
        OrderedEchelonedSpace(from_weights(2, {(0, 1): 1}), (0, 0))


def test_ordered_embeddings_match_oracle():
    stream = SplitMix64Stream(11)
    for _ in range(25):
        a_sp = random_space(stream, stream.randrange(3) + 1)
        c_sp = random_space(stream, stream.randrange(3) + 2)
        a = OrderedEchelonedSpace(a_sp, shuffled(stream, a_sp.m))
        c = OrderedEchelonedSpace(c_sp, shuffled(stream, c_sp.m))
        assert sorted(ordered_embeddings(a, c)) == emb_oracle(a, c)


def test_copy_sets_are_point_sets():
    c = ident(from_weights(3, {(0, 1): 1, (0, 2): 1, (1, 2): 1}))
    copies = copy_set(EDGE, c)
    assert len(copies) == 3
    assert len(set(copies)) == 3
    assert all(len(s) == 2 for s in copies)


def test_arrow_check_matches_oracle_on_pigeonhole():
    # flat C with m points arrows (edge, 2 colours) exactly when m >= 3
    for size in range(2, 5):
        c = ident(flat(size))
        want = arrow_oracle(c, POINT, EDGE, 2)
        assert want == (size >= 3)
        assert arrow_check(c, POINT, EDGE, 2) == want


def test_arrow_check_matches_oracle_on_random_instances():
    stream = SplitMix64Stream(23)
    for _ in range(20):
        c = ident(random_space(stream, stream.randrange(2) + 3))
        b_sp = random_space(stream, 2)
        b = ident(b_sp)
        k = stream.randrange(2) + 2
        want = arrow_oracle(c, POINT, b, k)
        assert arrow_check(c, POINT, b, k) == want


def test_arrow_check_rejects_bad_colour_count():
    with pytest.raises(ValidationError):
        arrow_check(POINT, POINT, POINT, 0)


def test_arrow_budget():
    c = ident(flat(4))
    with pytest.raises(BudgetExceeded):
        arrow_check(c, POINT, EDGE, 2, budget=2)


def test_arrow_fails_when_c_is_b_itself():
    # colour the two points differently
    assert not arrow_check(EDGE, POINT, EDGE, 2)


def test_arrow_single_copy_is_monochromatic():
    stream = SplitMix64Stream(5)
    for _ in range(10):
        sp = random_space(stream, stream.randrange(3) + 1)
        s = ident(sp)
        assert arrow_check(s, s, s, 3)


def test_pigeonhole_witness_is_three_points():
    c = witness_search(POINT, EDGE, 2)
    assert c is not None
    assert c.space.m == 3
    assert arrow_check(c, POINT, EDGE, 2)


def test_point_witness_is_a_point():
    c = witness_search(POINT, POINT, 5)
    assert c is not None and c.space.m == 1


def test_self_witness_is_the_edge():
    c = witness_search(EDGE, EDGE, 2)
    assert c is not None
    assert c.space.m == 2
    assert arrow_check(c, EDGE, EDGE, 2)


def test_witness_search_can_fail_within_cap():
    # colouring each point by itself defeats any C with as many points as copies
    a = POINT
    b = EDGE
    c = witness_search(a, b, 4, size_cap=3)
    assert c is None or arrow_check(c, a, b, 4)


def test_graph_roundtrip_through_phi():
    stream = SplitMix64Stream(7)
    for _ in range(15):
        sp = random_space(stream, stream.randrange(3) + 2)
        s = OrderedEchelonedSpace(sp, shuffled(stream, sp.m))
        g = ordered_space_graph(s)
        assert g.is_complete()
        colour = object()
        h = phi_translate(g, colour)
        assert not any(lab == colour for _, lab in h.edges)
        back = phi_inverse(h, colour)
        assert back == g


def test_phi_requires_complete_graph():
    g = OrderedEdgeColouredGraph(3, (0, 1, 2), (((0, 1), 1),))
    with pytest.raises(ValidationError):
        phi_translate(g, 1)


def test_translation_preserves_embedding_sets():
    stream = SplitMix64Stream(41)
    for _ in range(20):
        a_sp = random_space(stream, 2)
        c_sp = random_space(stream, stream.randrange(2) + 3)
        a = ident(a_sp)
        c = OrderedEchelonedSpace(c_sp, shuffled(stream, c_sp.m))
        ga, gc = ordered_space_graph(a), ordered_space_graph(c)
        before = sorted(graph_embeddings(ga, gc))
        assert before == graph_emb_oracle(ga, gc)
        for colour in range(1, c_sp.n + 1):
            ha, hc = phi_translate(ga, colour), phi_translate(gc, colour)
            assert sorted(graph_embeddings(ha, hc)) == before


def test_graph_embeddings_agree_on_shared_scale():
    # C restricted to a point subset keeps literal ranks, so both notions
    # of embedding see the identity inclusion
    c_sp = flat(4)
    c = ident(c_sp)
    a = ident(flat(2))
    ga, gc = ordered_space_graph(a), ordered_space_graph(c)
    assert sorted(ordered_embeddings(a, c)) == sorted(graph_embeddings(ga, gc))


def test_graph_validation():
    with pytest.raises(ValidationError):
        OrderedEdgeColouredGraph(2, (0, 1), (((1, 0), 1),))
    with pytest.raises(ValidationError):
        OrderedEdgeColouredGraph(2, (0,), ())
    with pytest.raises(ValidationError):
        OrderedEdgeColouredGraph(2, (0, 1), (((0, 1), 1), ((0, 1), 2)))


def test_enumerated_spaces_all_support_identity_order():
    for sp in enumerate_spaces(3):
        s = ident(sp)
        assert copy_set(POINT, s) == tuple(frozenset({i}) for i in range(3))
