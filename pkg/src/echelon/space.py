"""Finite echeloned spaces and their structure-preserving maps.

An echeloned space is a finite point set together with a total preorder on
pairs in which the diagonal pairs form the strict minimum and pairs are
unordered.  We store the preorder as a rank table: rank 0 is reserved for
the diagonal, the off-diagonal pair classes get the dense ranks 1..n in
increasing order, and every rank in that range is attained.  Two pairs are
equivalent iff they share a rank; pair (a, b) lies below (c, d) iff its
rank is smaller.

A point map h : X -> Y is a homomorphism when it induces a well-defined
monotone map on ranks (constant maps qualify: every pair collapses to the
diagonal).  It is an embedding when additionally h is injective and the
induced rank map is strictly increasing, so rank comparisons are both
preserved and reflected.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence

from .errors import CapExceeded, MorphismError, ValidationError

Pair = tuple[int, int]
PointMap = tuple[int, ...]
RankMap = tuple[int, ...]


@dataclass(frozen=True)
class EchelonedSpace:
    """Immutable echeloned space on points 0..m-1.

    ``table`` is the full m x m rank table: symmetric, zero exactly on the
    diagonal, off-diagonal values exactly the range 1..n.  Instances
    validate on construction, so any held reference is structurally sound.
    """

    m: int
    n: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not isinstance(self.m, int) or self.m < 1:
            raise ValidationError("space/shape", "point count must be a positive integer")
        t = self.table
        if len(t) != self.m or any(len(row) != self.m for row in t):
            raise ValidationError("space/shape", f"rank table must be {self.m}x{self.m}")
        seen: set[int] = set()
        for i in range(self.m):
            for j in range(self.m):
                r = t[i][j]
                if not isinstance(r, int) or isinstance(r, bool):
                    raise ValidationError("space/shape", f"rank at ({i},{j}) is not an integer")
                if i == j:
                    if r != 0:
                        raise ValidationError(
                            "space/diagonal", f"diagonal entry at point {i} must be 0"
                        )
                    continue
                if t[j][i] != r:
                    raise ValidationError(
                        "space/symmetry", f"table not symmetric at ({i},{j})"
                    )
                if r < 1:
                    raise ValidationError(
                        "space/offdiag",
                        f"pair ({i},{j}) has rank {r}; only diagonal pairs may sit at the bottom",
                    )
                seen.add(r)
        expected = set(range(1, self.n + 1))
        if self.m == 1:
            expected = set()
        if seen != expected or (self.m > 1 and self.n < 1):
            raise ValidationError(
                "space/surjective",
                f"off-diagonal ranks must be exactly 1..{self.n}, got {sorted(seen)}",
            )

    def rank(self, x: int, y: int) -> int:
        return self.table[x][y]

    def pairs(self) -> Iterator[Pair]:
        """Unordered point pairs (i, j), i < j, in lexicographic order."""
        return itertools.combinations(range(self.m), 2)

    def rank_classes(self) -> dict[int, tuple[Pair, ...]]:
        """Pairs grouped by rank, ranks 1..n each mapped to its class."""
        out: dict[int, list[Pair]] = {r: [] for r in range(1, self.n + 1)}
        for i, j in self.pairs():
            out[self.table[i][j]].append((i, j))
        return {r: tuple(ps) for r, ps in out.items()}


class Subspace(NamedTuple):
    space: EchelonedSpace
    points: tuple[int, ...]  # original ids, ascending; new id k is points[k]
    rank_map: RankMap  # rank_map[r] = rank in the ambient space


@dataclass(frozen=True)
class CanonicalForm:
    space: EchelonedSpace
    order: tuple[int, ...]  # order[k] = original point placed at position k


def from_rank_table(table: Sequence[Sequence[int]]) -> EchelonedSpace:
    """Build a space from a full square rank table, inferring n."""
    rows = tuple(tuple(row) for row in table)
    m = len(rows)
    n = 0
    for i, row in enumerate(rows):
        for j, r in enumerate(row):
            if i != j and isinstance(r, int) and not isinstance(r, bool):
                n = max(n, r)
    return EchelonedSpace(m, n, rows)


def from_weights(m: int, weights: Mapping[Pair, object]) -> EchelonedSpace:
    """Echelon a table of mutually comparable pair weights.

    Pairs with equal weights land in the same class; classes are ranked by
    increasing weight.  Only the relative order of the weights matters, so
    any strictly monotone reweighting produces the same space.
    """
    if m < 1:
        raise ValidationError("space/shape", "point count must be a positive integer")
    norm: dict[Pair, object] = {}
    for key, value in weights.items():
        try:
            i, j = key
        except (TypeError, ValueError):
            raise ValidationError("weights/key", f"bad pair key {key!r}") from None
        if i == j or not (0 <= i < m and 0 <= j < m):
            raise ValidationError("weights/key", f"bad pair key {key!r}")
        pair = (i, j) if i < j else (j, i)
        if pair in norm and norm[pair] != value:
            raise ValidationError(
                "weights/conflict", f"pair {pair} given two different weights"
            )
        norm[pair] = value
        if value != value:  # NaN defeats total ordering
            raise ValidationError("weights/incomparable", f"weight for {pair} is not orderable")
    missing = [p for p in itertools.combinations(range(m), 2) if p not in norm]
    if missing:
        raise ValidationError("weights/missing", f"no weight for pair {missing[0]}")
    try:
        levels = sorted(set(norm.values()))  # type: ignore[type-var]
    except TypeError:
        raise ValidationError(
            "weights/incomparable", "pair weights are not mutually comparable"
        ) from None
    rank_of = {w: r + 1 for r, w in enumerate(levels)}
    table = [[0] * m for _ in range(m)]
    for (i, j), w in norm.items():
        table[i][j] = table[j][i] = rank_of[w]
    return EchelonedSpace(m, len(levels), tuple(tuple(row) for row in table))


def induced_subspace(space: EchelonedSpace, points: Iterable[int]) -> Subspace:
    """Restrict to a point subset and re-compress ranks.

    Returns the subspace (points relabelled 0..k-1 in ascending original
    order), the original ids, and the rank map of the inclusion, which is
    an embedding witness: rank r of the subspace comes from rank
    ``rank_map[r]`` of the ambient space.
    """
    ids = tuple(sorted(set(points)))
    if not ids:
        raise ValidationError("space/shape", "a subspace needs at least one point")
    for p in ids:
        if not (0 <= p < space.m):
            raise ValidationError("space/shape", f"point {p} is not in the space")
    k = len(ids)
    weights = {
        (a, b): space.rank(ids[a], ids[b]) for a, b in itertools.combinations(range(k), 2)
    }
    sub = from_weights(k, weights)
    rank_map = [0] * (sub.n + 1)
    for a, b in itertools.combinations(range(k), 2):
        rank_map[sub.rank(a, b)] = space.rank(ids[a], ids[b])
    return Subspace(sub, ids, tuple(rank_map))


def _check_point_map(source_m: int, target_m: int, h: Sequence[int]) -> PointMap:
    h = tuple(h)
    if len(h) != source_m:
        raise MorphismError("morphism/map", f"point map must list {source_m} images")
    for x, y in enumerate(h):
        if not isinstance(y, int) or isinstance(y, bool) or not (0 <= y < target_m):
            raise MorphismError("morphism/map", f"image of point {x} is not a target point")
    return h


def homomorphism_rank_map(source, target, h: Sequence[int]) -> Optional[RankMap]:
    """Rank-map witness that h is a homomorphism, or None.

    The witness w satisfies w[0] = 0 and rank(h x, h y) = w[rank(x, y)] for
    all pairs, and is monotone (non-decreasing).  Constant maps yield the
    all-zero witness.  ``target`` may be any object exposing ``m`` and
    ``rank``; ``source`` additionally needs ``n``.
    """
    h = _check_point_map(source.m, target.m, h)
    witness: list[Optional[int]] = [None] * (source.n + 1)
    witness[0] = 0
    for x, y in itertools.combinations(range(source.m), 2):
        r = source.rank(x, y)
        s = target.rank(h[x], h[y]) if h[x] != h[y] else 0
        if witness[r] is None:
            witness[r] = s
        elif witness[r] != s:
            return None
    for r in range(1, source.n + 1):
        if witness[r] < witness[r - 1]:  # type: ignore[operator]
            return None
    return tuple(witness)  # type: ignore[arg-type]


def is_homomorphism(source, target, h: Sequence[int]) -> bool:
    return homomorphism_rank_map(source, target, h) is not None


def embedding_rank_map(source, target, h: Sequence[int]) -> Optional[RankMap]:
    """Rank-map witness that h is an embedding, or None.

    Requires h injective and the homomorphism witness strictly increasing,
    so distinct source ranks stay distinct and comparisons are reflected.
    """
    h = _check_point_map(source.m, target.m, h)
    if len(set(h)) != len(h):
        return None
    witness = homomorphism_rank_map(source, target, h)
    if witness is None:
        return None
    for r in range(1, source.n + 1):
        if witness[r] <= witness[r - 1]:
            return None
    return witness


def is_embedding(source, target, h: Sequence[int]) -> bool:
    return embedding_rank_map(source, target, h) is not None


def enumerate_embeddings(
    source: EchelonedSpace, target
) -> list[tuple[PointMap, RankMap]]:
    """All embeddings source -> target with their rank maps, in lexicographic
    order of the point maps.  Exhaustive over injective maps; meant for desk
    scale."""
    out = []
    for h in itertools.permutations(range(target.m), source.m):
        w = embedding_rank_map(source, target, h)
        if w is not None:
            out.append((h, w))
    return out


def _refine(space: EchelonedSpace, colours: Sequence[int]) -> tuple[int, ...]:
    """Stable point partition under iterated rank-profile refinement."""
    cols = list(colours)
    m = space.m
    while True:
        sigs = []
        for v in range(m):
            profile = sorted((space.rank(v, u), cols[u]) for u in range(m) if u != v)
            sigs.append((cols[v], tuple(profile)))
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if new == cols:
            return tuple(cols)
        cols = new


def _flat(space: EchelonedSpace, order: Sequence[int]) -> tuple[int, ...]:
    return tuple(
        space.rank(order[a], order[b])
        for a, b in itertools.combinations(range(space.m), 2)
    )


def _canon_search(
    space: EchelonedSpace, colours: tuple[int, ...]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    colours = _refine(space, colours)
    m = space.m
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colours):
        cells.setdefault(c, []).append(v)
    split = [c for c in sorted(cells) if len(cells[c]) > 1]
    if not split:
        order = tuple(sorted(range(m), key=lambda v: colours[v]))
        return _flat(space, order), order
    best: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None
    for v in cells[split[0]]:
        child = list(colours)
        child[v] = m  # fresh colour above all, individualizes v
        cand = _canon_search(space, tuple(child))
        if best is None or cand[0] < best[0]:
            best = cand
    return best  # type: ignore[return-value]


def canonical_form(space: EchelonedSpace) -> CanonicalForm:
    """Canonical relabelling: equal canonical tables iff isomorphic.

    Colour refinement on the rank-labelled complete graph, with
    individualization backtracking when refinement leaves ties; among the
    discrete branches the lexicographically least flattened table wins.
    """
    flat, order = _canon_search(space, tuple([0] * space.m))
    table = [[0] * space.m for _ in range(space.m)]
    it = iter(flat)
    for a, b in itertools.combinations(range(space.m), 2):
        r = next(it)
        table[a][b] = table[b][a] = r
    canon = EchelonedSpace(space.m, space.n, tuple(tuple(row) for row in table))
    return CanonicalForm(canon, order)


def are_isomorphic(x: EchelonedSpace, y: EchelonedSpace) -> Optional[PointMap]:
    """An isomorphism x -> y as a point map, or None."""
    if x.m != y.m or x.n != y.n:
        return None
    cx = canonical_form(x)
    cy = canonical_form(y)
    if cx.space != cy.space:
        return None
    iso = [0] * x.m
    for k in range(x.m):
        iso[cx.order[k]] = cy.order[k]
    assert embedding_rank_map(x, y, iso) is not None
    return tuple(iso)


def enumerate_spaces(
    m: int, up_to_iso: bool = False, cap: int = 4
) -> Iterator[EchelonedSpace]:
    """All labelled echeloned spaces on m points; optionally one per
    isomorphism class.

    A labelled space is exactly an ordered set partition of the pair set
    (blocks = rank classes, block order = rank order), so spaces are
    emitted as dense rank strings over the lexicographically ordered pair
    list, in lexicographic string order.  Exhaustive; refuses m beyond the
    cap (the count is the Fubini number of C(m,2), which explodes).
    """
    if m > cap:
        raise CapExceeded("enumerate/cap", f"m={m} exceeds the exhaustive cap {cap}")
    if m < 1:
        raise ValidationError("space/shape", "point count must be a positive integer")
    pair_list = list(itertools.combinations(range(m), 2))
    k = len(pair_list)
    if k == 0:
        yield EchelonedSpace(1, 0, ((0,),))
        return
    seen: set[tuple[int, ...]] = set()
    for ranks in itertools.product(range(1, k + 1), repeat=k):
        top = max(ranks)
        if set(ranks) != set(range(1, top + 1)):
            continue
        table = [[0] * m for _ in range(m)]
        for (i, j), r in zip(pair_list, ranks):
            table[i][j] = table[j][i] = r
        space = EchelonedSpace(m, top, tuple(tuple(row) for row in table))
        if up_to_iso:
            key = _flat(canonical_form(space).space, range(m))
            if key in seen:
                continue
            seen.add(key)
        yield space
