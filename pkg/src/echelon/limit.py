"""Seeded generative models of the universal homogeneous echeloned space.

A model is an unbounded point supply with a positive-rational rank label on
every pair (0 on the diagonal); any finite prefix compresses to an
echeloned space.  Two interchangeable modes:

* random: the label of {u, v} is the i-th positive rational in Calkin-Wilf
  order, i drawn geometrically (parameter p) from the pair's own SplitMix64
  key.  Labels are a pure function of (p, seed, pair): growth never touches
  old pairs and witnesses are found by scanning, growing the prefix in
  blocks when needed, up to a hard cap.

* deterministic: labels are constructed.  Auto-growth alternates a fresh
  point (labels above everything, so the first two points share label 1)
  with a density step that splits the smallest yet-unsplit gap between
  adjacent labels, driven through a pending-demand queue; witnesses are
  built directly, choosing fresh in-gap labels by Stern-Brocot selection.

A witness demand fixes, per base point, either an exact label or an open
interval.  Interval entries carry a tier: equal bounds and equal tier mean
equal labels, equal bounds and increasing tier mean strictly increasing
labels.  That is exactly the expressiveness back-and-forth needs when one
new point brings several fresh label classes into the same gap.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import prng
from .colgraph import as_probability
from .errors import CapExceeded, DemandError, EchelonError, ValidationError
from .rationals import nth_rational, rational_between
from .space import EchelonedSpace, from_weights, is_embedding

WITNESS_CAP = 1 << 20
GROW_BLOCK = 64


@dataclass(frozen=True)
class ExactLabel:
    value: Fraction


@dataclass(frozen=True)
class OpenInterval:
    lo: Fraction
    hi: Optional[Fraction]  # None: unbounded above
    tier: int = 0


Entry = Union[ExactLabel, OpenInterval]


@dataclass(frozen=True)
class Demand:
    """Ordered (point, requirement) entries over existing points."""

    entries: tuple[tuple[int, Entry], ...]


def _as_label(value: object, code: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise DemandError(code, f"labels are exact rationals, got {value!r}")
    try:
        return Fraction(value)  # type: ignore[arg-type]
    except (TypeError, ValueError):
        raise DemandError(code, f"labels are exact rationals, got {value!r}") from None


def _validate_demand(demand: Demand, size: int) -> list[tuple[int, Entry]]:
    if not isinstance(demand, Demand):
        raise DemandError("demand/shape", "a Demand instance is required")
    seen: set[int] = set()
    out = []
    for point, entry in demand.entries:
        if not isinstance(point, int) or isinstance(point, bool) or not (0 <= point < size):
            raise DemandError("demand/point", f"point {point!r} is not materialized")
        if point in seen:
            raise DemandError("demand/duplicate", f"point {point} demanded twice")
        seen.add(point)
        if isinstance(entry, ExactLabel):
            value = _as_label(entry.value, "demand/label")
            if value <= 0:
                raise DemandError("demand/label", "exact labels must be positive")
            entry = ExactLabel(value)
        elif isinstance(entry, OpenInterval):
            lo = _as_label(entry.lo, "demand/interval")
            hi = None if entry.hi is None else _as_label(entry.hi, "demand/interval")
            if lo < 0 or (hi is not None and hi <= lo):
                raise DemandError("demand/interval", "need 0 <= lo < hi")
            if not isinstance(entry.tier, int) or entry.tier < 0:
                raise DemandError("demand/interval", "tier must be a non-negative integer")
            entry = OpenInterval(lo, hi, entry.tier)
        else:
            raise DemandError("demand/shape", f"unknown demand entry {entry!r}")
        out.append((point, entry))
    return out


class LimitModel:
    """Common prefix bookkeeping; concrete labelling left to the modes."""

    mode: str
    seed: int

    def __init__(self):
        self.size = 0

    def limit_points(self, n: int) -> tuple[int, ...]:
        """Materialize (at least) the first n points; returns their ids."""
        if n < 0:
            raise ValidationError("limit/count", "point count must be non-negative")
        while self.size < n:
            self._extend()
        return tuple(range(n))

    def rank_label(self, u: int, v: int) -> Fraction:
        if not (0 <= u < self.size and 0 <= v < self.size):
            raise ValidationError("limit/unmaterialized", "both points must be materialized")
        if u == v:
            return Fraction(0)
        return self._label(u, v)

    def sample_prefix(self, n: int) -> EchelonedSpace:
        """The echeloned space on the first n points (rank-compressed)."""
        if n < 1:
            raise ValidationError("limit/count", "a prefix needs at least one point")
        self.limit_points(n)
        weights = {
            (u, v): self._label(u, v) for u in range(n) for v in range(u + 1, n)
        }
        return from_weights(n, weights)

    def existing_labels(self) -> list[Fraction]:
        """Sorted distinct labels among materialized pairs."""
        out = {
            self._label(u, v) for u in range(self.size) for v in range(u + 1, self.size)
        }
        return sorted(out)

    def ensure_witness(self, demand: Demand) -> int:
        raise NotImplementedError

    def _label(self, u: int, v: int) -> Fraction:
        raise NotImplementedError

    def _extend(self) -> None:
        raise NotImplementedError


def _entry_satisfied(entry: Entry, label: Fraction) -> bool:
    if isinstance(entry, ExactLabel):
        return label == entry.value
    if label <= entry.lo:
        return False
    return entry.hi is None or label < entry.hi


def _tier_pattern_ok(entries: Sequence[tuple[int, Entry]], label_of) -> bool:
    """Equal (bounds, tier) must agree; within bounds, labels rise with tier."""
    groups: dict[tuple, dict[int, Fraction]] = {}
    for point, entry in entries:
        if not isinstance(entry, OpenInterval):
            continue
        key = (entry.lo, entry.hi)
        tiers = groups.setdefault(key, {})
        lab = label_of(point)
        if entry.tier in tiers:
            if tiers[entry.tier] != lab:
                return False
        else:
            tiers[entry.tier] = lab
    for tiers in groups.values():
        ordered = [tiers[t] for t in sorted(tiers)]
        if any(a >= b for a, b in zip(ordered, ordered[1:])):
            return False
    return True


class RandomLimitModel(LimitModel):
    """Labels read off the seeded geometric colouring, Calkin-Wilf indexed."""

    mode = "random"

    def __init__(self, seed: int, p: object = Fraction(1, 2), cap: int = WITNESS_CAP):
        super().__init__()
        self.seed = seed
        self.p = as_probability(p)
        self.cap = cap

    def _label(self, u: int, v: int) -> Fraction:
        return nth_rational(prng.edge_colour(self.p, self.seed, u, v))

    def _extend(self) -> None:
        self.size += 1

    def colour_index(self, u: int, v: int) -> int:
        """The geometric colour behind a pair's label."""
        if not (0 <= u < self.size and 0 <= v < self.size) or u == v:
            raise ValidationError("limit/unmaterialized", "need two distinct materialized points")
        return prng.edge_colour(self.p, self.seed, u, v)

    def ensure_witness(self, demand: Demand) -> int:
        """Scan for a point meeting the demand, growing in blocks up to the
        hard cap; existing points qualify."""
        entries = _validate_demand(demand, self.size)
        base = {point for point, _ in entries}
        scanned = 0
        while True:
            while scanned < self.size:
                z = scanned
                scanned += 1
                if z in base:
                    continue
                if all(
                    _entry_satisfied(entry, self._label(z, point))
                    for point, entry in entries
                ) and _tier_pattern_ok(entries, lambda point: self._label(z, point)):
                    return z
            if self.size >= self.cap:
                raise CapExceeded(
                    "limit/witness-cap",
                    f"no witness among the first {self.size} points (cap {self.cap})",
                )
            self.size = min(self.size + GROW_BLOCK, self.cap)


class DeterministicLimitModel(LimitModel):
    """Constructed labels: every demand is realized by appending a point."""

    mode = "deterministic"

    def __init__(self, seed: int = 0):
        super().__init__()
        self.seed = seed  # recorded; the construction is canonical
        self._labels: dict[tuple[int, int], Fraction] = {}
        self.pending: deque[Demand] = deque()
        self._schedule_step = 0
        self._split_done: set[tuple[Fraction, Fraction]] = set()

    def _label(self, u: int, v: int) -> Fraction:
        return self._labels[(u, v) if u < v else (v, u)]

    def _extend(self) -> None:
        if not self.pending:
            self.pending.append(self._next_scheduled())
        self._construct(self.pending.popleft())

    def _next_scheduled(self) -> Demand:
        """Dovetail: odd steps add a fresh point, even steps split the
        smallest unsplit gap between adjacent labels."""
        self._schedule_step += 1
        if self._schedule_step % 2 == 0:
            labels = self.existing_labels()
            for lo, hi in zip(labels, labels[1:]):
                if (lo, hi) not in self._split_done:
                    self._split_done.add((lo, hi))
                    return Demand(((0, OpenInterval(lo, hi)),))
        return Demand(())

    def ensure_witness(self, demand: Demand) -> int:
        return self._construct(demand)

    def _construct(self, demand: Demand) -> int:
        entries = _validate_demand(demand, self.size)
        existing = set()
        for lab in self._labels.values():
            existing.add(lab)
        chosen: dict[int, Fraction] = {}
        # One fresh label per (bounds, tier), tiers ascending within bounds.
        interval_keys: dict[tuple, list[int]] = {}
        for point, entry in entries:
            if isinstance(entry, OpenInterval):
                interval_keys.setdefault((entry.lo, entry.hi), []).append(entry.tier)
        interval_labels: dict[tuple, Fraction] = {}
        for (lo, hi), tiers in interval_keys.items():
            cur_lo = lo
            for tier in sorted(set(tiers)):
                lab = rational_between(cur_lo, hi, existing | set(interval_labels.values()))
                interval_labels[(lo, hi, tier)] = lab
                cur_lo = lab
        for point, entry in entries:
            if isinstance(entry, ExactLabel):
                chosen[point] = entry.value
            else:
                chosen[point] = interval_labels[(entry.lo, entry.hi, entry.tier)]
        z = self.size
        self.size += 1
        ceiling = max(existing | set(chosen.values()), default=Fraction(0))
        next_fresh = ceiling + 1
        for v in range(z):
            if v in chosen:
                self._labels[(v, z)] = chosen[v]
            else:
                self._labels[(v, z)] = next_fresh
                next_fresh += 1
        return z


def limit_new(mode: str, seed: int, p: object = Fraction(1, 2)) -> LimitModel:
    """A fresh model with an empty prefix."""
    if mode == "random":
        return RandomLimitModel(seed, p)
    if mode == "deterministic":
        return DeterministicLimitModel(seed)
    raise ValidationError("limit/mode", f"unknown mode {mode!r}")


def limit_points(model: LimitModel, n: int) -> tuple[int, ...]:
    return model.limit_points(n)


def limit_rank(model: LimitModel, u: int, v: int) -> Fraction:
    return model.rank_label(u, v)


def sample_prefix(model: LimitModel, n: int) -> EchelonedSpace:
    return model.sample_prefix(n)


def ensure_witness(model: LimitModel, demand: Demand) -> int:
    return model.ensure_witness(demand)


@dataclass(frozen=True)
class BackAndForthCertificate:
    """A verified finite partial isomorphism between two models."""

    left: tuple[int, ...]
    right: tuple[int, ...]
    left_space: EchelonedSpace
    right_space: EchelonedSpace
    left_labels: tuple[Fraction, ...] = field(default=(), compare=False)
    right_labels: tuple[Fraction, ...] = field(default=(), compare=False)


def _first_unmatched(limit: int, matched: set[int]) -> Optional[int]:
    for i in range(limit):
        if i not in matched:
            return i
    return None


def _build_demand(
    source: LimitModel,
    target: LimitModel,
    src_matched: Sequence[int],
    tgt_matched: Sequence[int],
    u: int,
) -> Demand:
    """Transport u's label classes along the current correspondence."""
    k = len(src_matched)
    src_to_tgt: dict[Fraction, Fraction] = {}
    for i in range(k):
        for j in range(i + 1, k):
            a = source.rank_label(src_matched[i], src_matched[j])
            b = target.rank_label(tgt_matched[i], tgt_matched[j])
            if a in src_to_tgt and src_to_tgt[a] != b:
                raise EchelonError("limit/certificate", "correspondence lost label classes")
            src_to_tgt[a] = b
    known = sorted(src_to_tgt)
    new_labels = sorted(
        {
            source.rank_label(u, v)
            for v in src_matched
            if source.rank_label(u, v) not in src_to_tgt
        }
    )
    gap_tiers: dict[Fraction, tuple[Fraction, Optional[Fraction], int]] = {}
    gap_counts: dict[tuple, int] = {}
    for lab in new_labels:
        lo = Fraction(0)
        hi: Optional[Fraction] = None
        for known_lab in known:
            if known_lab < lab:
                lo = max(lo, src_to_tgt[known_lab])
            elif hi is None or src_to_tgt[known_lab] < hi:
                hi = src_to_tgt[known_lab]
        tier = gap_counts.get((lo, hi), 0)
        gap_counts[(lo, hi)] = tier + 1
        gap_tiers[lab] = (lo, hi, tier)
    entries: list[tuple[int, Entry]] = []
    for pos, v in enumerate(src_matched):
        lab = source.rank_label(u, v)
        if lab in src_to_tgt:
            entries.append((tgt_matched[pos], ExactLabel(src_to_tgt[lab])))
        else:
            lo, hi, tier = gap_tiers[lab]
            entries.append((tgt_matched[pos], OpenInterval(lo, hi, tier)))
    return Demand(tuple(entries))


def back_and_forth(
    first: LimitModel, second: LimitModel, depth: int
) -> BackAndForthCertificate:
    """Grow a partial isomorphism covering the first ``depth`` points of
    both models, alternating witness demands between the two sides.

    A side whose next uncovered point is already materialized goes first on
    its turn; a side whose uncovered points only exist by demand waits for
    the other side's witnesses to cover them and is force-grown only when
    both sides would otherwise stall.  The finished correspondence is
    re-verified as an embedding in both directions before returning.
    """
    if depth < 1:
        raise ValidationError("limit/depth", "depth must be at least 1")
    left: list[int] = []
    right: list[int] = []
    matched1: set[int] = set()
    matched2: set[int] = set()
    turn = 0
    while True:
        any1 = _first_unmatched(depth, matched1)
        any2 = _first_unmatched(depth, matched2)
        if any1 is None and any2 is None:
            break
        ready1 = _first_unmatched(min(depth, first.size), matched1)
        ready2 = _first_unmatched(min(depth, second.size), matched2)
        if turn % 2 == 0:
            order = ((1, ready1, any1), (2, ready2, any2))
        else:
            order = ((2, ready2, any2), (1, ready1, any1))
        pick: Optional[tuple[int, int]] = None
        for side, ready, _ in order:
            if ready is not None:
                pick = (side, ready)
                break
        if pick is None:
            for side, _, pending in order:
                if pending is not None:
                    model = first if side == 1 else second
                    model.limit_points(pending + 1)
                    pick = (side, pending)
                    break
        assert pick is not None
        side, u = pick
        if side == 1:
            first.limit_points(u + 1)
            demand = _build_demand(first, second, left, right, u)
            z = second.ensure_witness(demand)
            left.append(u)
            right.append(z)
            matched1.add(u)
            if z < depth:
                matched2.add(z)
        else:
            second.limit_points(u + 1)
            demand = _build_demand(second, first, right, left, u)
            z = first.ensure_witness(demand)
            right.append(u)
            left.append(z)
            matched2.add(u)
            if z < depth:
                matched1.add(z)
        turn += 1

    k = len(left)
    weights1 = {
        (i, j): first.rank_label(left[i], left[j])
        for i in range(k)
        for j in range(i + 1, k)
    }
    weights2 = {
        (i, j): second.rank_label(right[i], right[j])
        for i in range(k)
        for j in range(i + 1, k)
    }
    space1 = from_weights(k, weights1)
    space2 = from_weights(k, weights2)
    ident = tuple(range(k))
    if not (is_embedding(space1, space2, ident) and is_embedding(space2, space1, ident)):
        raise EchelonError("limit/certificate", "back-and-forth produced a non-isomorphism")
    return BackAndForthCertificate(
        tuple(left),
        tuple(right),
        space1,
        space2,
        tuple(weights1[(i, j)] for i in range(k) for j in range(i + 1, k)),
        tuple(weights2[(i, j)] for i in range(k) for j in range(i + 1, k)),
    )
