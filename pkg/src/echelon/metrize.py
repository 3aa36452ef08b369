"""Rational metrics, dullness, and the metric realization of a space.

All arithmetic is exact: distances are ``fractions.Fraction``.  Floats are
rejected so no binary rounding can sneak into a comparison.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .errors import MetricError, MorphismError
from .space import EchelonedSpace, from_weights

Metric = tuple[tuple[Fraction, ...], ...]


def _as_fraction(value: object, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise MetricError("metric/shape", f"{where}: exact rational required, got {value!r}")
    if isinstance(value, (int, str, Fraction)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise MetricError("metric/shape", f"{where}: unparsable rational {value!r}") from None
    raise MetricError("metric/shape", f"{where}: exact rational required, got {type(value).__name__}")


def validate_metric(d: Sequence[Sequence[object]]) -> Metric:
    """Normalize to a Fraction table, raising MetricError naming the first
    axiom that fails: shape, diagonal, symmetry, positivity, or triangle."""
    m = len(d)
    if m < 1 or any(len(row) != m for row in d):
        raise MetricError("metric/shape", "distance table must be square and non-empty")
    t = tuple(
        tuple(_as_fraction(v, f"entry ({i},{j})") for j, v in enumerate(row))
        for i, row in enumerate(d)
    )
    for i in range(m):
        if t[i][i] != 0:
            raise MetricError("metric/diagonal", f"d({i},{i}) must be 0")
        for j in range(i + 1, m):
            if t[i][j] != t[j][i]:
                raise MetricError("metric/symmetry", f"d({i},{j}) != d({j},{i})")
            if t[i][j] <= 0:
                raise MetricError("metric/positivity", f"d({i},{j}) must be positive")
    for i in range(m):
        for j in range(m):
            for k in range(m):
                if t[i][k] > t[i][j] + t[j][k]:
                    raise MetricError(
                        "metric/triangle",
                        f"d({i},{k}) > d({i},{j}) + d({j},{k})",
                    )
    return t


def from_metric(d: Sequence[Sequence[object]]) -> EchelonedSpace:
    """Echelon a metric: pairs ordered by distance, ties merged."""
    t = validate_metric(d)
    m = len(t)
    weights = {(i, j): t[i][j] for i in range(m) for j in range(i + 1, m)}
    return from_weights(m, weights)


def metrize_dull(space: EchelonedSpace) -> Metric:
    """The canonical dull metric realizing a space.

    Rank r becomes the distance 1 + r/(n+1): nonzero values sit strictly
    inside (1, 2), which makes every triangle inequality automatic and the
    result dull, and distinct ranks get distinct distances so the echelon
    round-trips exactly.
    """
    m, n = space.m, space.n
    out = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i != j:
                out[i][j] = 1 + Fraction(space.rank(i, j), n + 1)
    return tuple(tuple(row) for row in out)


def is_dull(d: Sequence[Sequence[object]]) -> bool:
    """Whether every distance is bounded by every sum of two nonzero ones.

    Validates the metric first.  Equivalent form used here: with t the
    smallest nonzero value, all values lie in [t, 2t]."""
    t = validate_metric(d)
    m = len(t)
    values = [t[i][j] for i in range(m) for j in range(i + 1, m)]
    if not values:
        return True
    return max(values) <= 2 * min(values)


def is_one_lipschitz(
    d_source: Sequence[Sequence[object]],
    d_target: Sequence[Sequence[object]],
    h: Sequence[int],
) -> bool:
    """Whether the point map never increases distances."""
    s = validate_metric(d_source)
    t = validate_metric(d_target)
    h = tuple(h)
    if len(h) != len(s) or any(not (0 <= y < len(t)) for y in h):
        raise MorphismError("morphism/map", "point map does not fit the two metrics")
    m = len(s)
    return all(
        t[h[i]][h[j]] <= s[i][j] for i in range(m) for j in range(i + 1, m)
    )


def one_lipschitz_not_homomorphism_example() -> tuple[Metric, Metric, tuple[int, ...]]:
    """Three-point witness that 1-Lipschitz maps need not preserve echelons.

    Source distances (2, 4, 4), target distances (2, 1, 1), identity on
    indices: distances never grow, but the closest source pair is sent to
    the farthest target pair, so no monotone rank map exists.
    """
    two, four, one = Fraction(2), Fraction(4), Fraction(1)
    zero = Fraction(0)
    d_m: Metric = (
        (zero, two, four),
        (two, zero, four),
        (four, four, zero),
    )
    d_n: Metric = (
        (zero, two, one),
        (two, zero, one),
        (one, one, zero),
    )
    return d_m, d_n, (0, 1, 2)
