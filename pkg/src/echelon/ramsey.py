"""Desk-scale partition search on ordered echeloned spaces.

Points carry a total order, so a copy of A inside C is just a point subset
(the increasing bijection is the only order-compatible candidate, and
either it embeds or nothing does).  ``arrow_check`` decides, by exhaustion
over colourings with early pruning, whether every k-colouring of the
A-copies of C leaves a monochromatic B-copy; ``witness_search`` hunts for
such a C by exhaustive enumeration up to size 4 and seeded random sampling
beyond.

The translation to ordered edge-coloured simple graphs erases one chosen
colour class to "non-edge" and keeps the rest; it is inverse to filling
the non-edges back in, and it changes nothing about embeddings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import BudgetExceeded, ValidationError
from .prng import SplitMix64Stream
from .space import (
    EchelonedSpace,
    PointMap,
    embedding_rank_map,
    enumerate_spaces,
    from_weights,
)

ARROW_BUDGET = 1 << 20


@dataclass(frozen=True)
class OrderedEchelonedSpace:
    space: EchelonedSpace
    order: tuple[int, ...]  # every point once, in increasing precedence

    def __post_init__(self):
        if sorted(self.order) != list(range(self.space.m)):
            raise ValidationError("ordered/shape", "order must list every point exactly once")

    @property
    def m(self) -> int:
        return self.space.m

    def position(self, point: int) -> int:
        return self.order.index(point)


def ordered_embeddings(
    a: OrderedEchelonedSpace, c: OrderedEchelonedSpace
) -> list[PointMap]:
    """All order-preserving embeddings of a into c.

    Order-preserving injections correspond to point subsets of c taken in
    order, so each subset is tested once against the echelon structure.
    """
    out = []
    for combo in itertools.combinations(range(c.m), a.m):
        h = [0] * a.m
        for i in range(a.m):
            h[a.order[i]] = c.order[combo[i]]
        if embedding_rank_map(a.space, c.space, h) is not None:
            out.append(tuple(h))
    return out


def copy_set(a: OrderedEchelonedSpace, c: OrderedEchelonedSpace) -> tuple[frozenset[int], ...]:
    """The copies of a inside c, each identified by its point set."""
    return tuple(frozenset(h) for h in ordered_embeddings(a, c))


def arrow_check(
    c: OrderedEchelonedSpace,
    a: OrderedEchelonedSpace,
    b: OrderedEchelonedSpace,
    k: int,
    budget: int = ARROW_BUDGET,
) -> bool:
    """Whether every k-colouring of the A-copies of C has a B-copy all of
    whose A-copies share a colour.  Exhaustive with pruning; instances
    with more than ``budget`` colourings are refused."""
    if k < 1:
        raise ValidationError("arrow/colours", "at least one colour required")
    copies_a = copy_set(a, c)
    n = len(copies_a)
    if k**n > budget:
        raise BudgetExceeded("arrow/budget", f"{k}^{n} colourings exceed the budget {budget}")
    members = [
        [i for i, ca in enumerate(copies_a) if ca <= cb] for cb in copy_set(b, c)
    ]
    if not members:
        return False
    colour: list[Optional[int]] = [None] * n

    def bad_colouring_exists(i: int) -> bool:
        alive = False
        for group in members:
            seen = {colour[j] for j in group if colour[j] is not None}
            if len(seen) > 1:
                continue
            if all(colour[j] is not None for j in group):
                return False  # monochromatic B-copy already forced
            alive = True
        if not alive:
            return True  # every B-copy ruined; any completion is a counterexample
        for col in range(k):
            colour[i] = col
            if bad_colouring_exists(i + 1):
                colour[i] = None
                return True
        colour[i] = None
        return False

    return not bad_colouring_exists(0)


def _random_ordered_space(m: int, stream: SplitMix64Stream) -> OrderedEchelonedSpace:
    pairs = list(itertools.combinations(range(m), 2))
    levels = stream.randrange(len(pairs)) + 1
    weights = {p: stream.randrange(levels) for p in pairs}
    return OrderedEchelonedSpace(from_weights(m, weights), tuple(range(m)))


def witness_search(
    a: OrderedEchelonedSpace,
    b: OrderedEchelonedSpace,
    k: int,
    size_cap: int = 4,
    seed: int = 0,
    samples: int = 200,
    budget: int = ARROW_BUDGET,
) -> Optional[OrderedEchelonedSpace]:
    """Smallest-first hunt for C with C -> (B) in k colours over A-copies.

    Sizes up to 4 are searched exhaustively (identity order loses nothing:
    relabelling by the order turns any ordered space into one on the
    natural order, and distinct tables are distinct types).  Larger sizes,
    if allowed, are probed by seeded random sampling.  Instances whose
    arrow check would blow the colouring budget are skipped, not decided.
    """
    for m in range(b.space.m, size_cap + 1):
        if m <= 4:
            candidates = (
                OrderedEchelonedSpace(sp, tuple(range(m))) for sp in enumerate_spaces(m)
            )
        else:
            stream = SplitMix64Stream((seed << 8) ^ m)
            candidates = (_random_ordered_space(m, stream) for _ in range(samples))
        for cand in candidates:
            try:
                if arrow_check(cand, a, b, k, budget=budget):
                    return cand
            except BudgetExceeded:
                continue
    return None


# --- translation to ordered edge-coloured simple graphs ---


@dataclass(frozen=True)
class OrderedEdgeColouredGraph:
    """Simple graph with ordered vertices and coloured edges.

    ``edges`` maps pairs (i, j), i < j, to colours; absent pairs are
    non-edges.  Complete instances double as ordered coloured graphs.
    """

    v: int
    order: tuple[int, ...]
    edges: tuple[tuple[tuple[int, int], object], ...]

    def __post_init__(self):
        if sorted(self.order) != list(range(self.v)):
            raise ValidationError("ordered/shape", "order must list every vertex exactly once")
        seen = set()
        for (i, j), _ in self.edges:
            if not (0 <= i < j < self.v):
                raise ValidationError("graph/shape", f"bad edge ({i},{j})")
            if (i, j) in seen:
                raise ValidationError("graph/shape", f"edge ({i},{j}) listed twice")
            seen.add((i, j))

    def colour(self, i: int, j: int):
        key = (i, j) if i < j else (j, i)
        for pair, c in self.edges:
            if pair == key:
                return c
        return None

    def is_complete(self) -> bool:
        return len(self.edges) == self.v * (self.v - 1) // 2


def ordered_space_graph(s: OrderedEchelonedSpace) -> OrderedEdgeColouredGraph:
    """The complete graph of a space, edges coloured by rank."""
    edges = tuple(
        (((i, j)), s.space.rank(i, j)) for i, j in itertools.combinations(range(s.m), 2)
    )
    return OrderedEdgeColouredGraph(s.m, s.order, edges)


def phi_translate(g: OrderedEdgeColouredGraph, colour: object) -> OrderedEdgeColouredGraph:
    """Erase one colour class to non-edges; requires a complete graph."""
    if not g.is_complete():
        raise ValidationError("graph/complete", "translation starts from a complete graph")
    kept = tuple((pair, c) for pair, c in g.edges if c != colour)
    return OrderedEdgeColouredGraph(g.v, g.order, kept)


def phi_inverse(h: OrderedEdgeColouredGraph, colour: object) -> OrderedEdgeColouredGraph:
    """Fill every non-edge with the erased colour."""
    present = {pair for pair, _ in h.edges}
    filled = list(h.edges)
    for pair in itertools.combinations(range(h.v), 2):
        if pair not in present:
            filled.append((pair, colour))
    filled.sort(key=lambda e: e[0])
    return OrderedEdgeColouredGraph(h.v, h.order, tuple(filled))


def graph_embeddings(
    a: OrderedEdgeColouredGraph, c: OrderedEdgeColouredGraph
) -> list[PointMap]:
    """Order-preserving injections matching edge colours and non-edges."""
    out = []
    labels_a = {
        pair: a.colour(*pair) for pair in itertools.combinations(range(a.v), 2)
    }
    for combo in itertools.combinations(range(c.v), a.v):
        h = [0] * a.v
        for i in range(a.v):
            h[a.order[i]] = c.order[combo[i]]
        if all(
            c.colour(h[i], h[j]) == lab for (i, j), lab in labels_a.items()
        ):
            out.append(tuple(h))
    return out
