"""Positive-rational enumeration and in-gap selection.

Two pieces of machinery, both exact:

* ``nth_rational`` / ``rational_index``: the Calkin-Wilf breadth-first
  walk of the Stern-Brocot tree, a bijection between positive integers and
  positive rationals.  Index 1 is 1/1; the left child of index i is 2i, the
  right child 2i+1.
* ``rational_between``: the simplest rational strictly inside an open
  interval, skipping a finite forbidden set.  Used wherever a fresh label
  has to be invented deterministically.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional


def nth_rational(i: int) -> Fraction:
    """Return the i-th positive rational (1-based) in Calkin-Wilf order."""
    if i < 1:
        raise ValueError("index must be >= 1")
    num, den = 1, 1
    # Binary digits of i below the leading bit: 0 = left child, 1 = right.
    for bit in bin(i)[3:]:
        if bit == "0":
            den += num
        else:
            num += den
    return Fraction(num, den)


def rational_index(q: Fraction) -> int:
    """Inverse of :func:`nth_rational`."""
    if q <= 0:
        raise ValueError("only positive rationals are enumerated")
    num, den = q.numerator, q.denominator
    bits = []
    while (num, den) != (1, 1):
        if num > den:
            bits.append("1")
            num -= den
        else:
            bits.append("0")
            den -= num
    i = 1
    for bit in reversed(bits):
        i = 2 * i + (1 if bit == "1" else 0)
    return i


def simplest_between(lo: Fraction, hi: Optional[Fraction]) -> Fraction:
    """Simplest rational q with lo < q < hi (hi=None meaning no upper bound)."""
    if hi is not None and lo >= hi:
        raise ValueError("empty interval")
    # Walk the Stern-Brocot tree from 0/1 .. 1/0 until we land inside.
    ln, ld = 0, 1
    rn, rd = 1, 0
    while True:
        mn, md = ln + rn, ld + rd
        mid = Fraction(mn, md)
        if mid <= lo:
            ln, ld = mn, md
        elif hi is not None and mid >= hi:
            rn, rd = mn, md
        else:
            return mid


def rational_between(
    lo: Fraction, hi: Optional[Fraction], forbidden: Iterable[Fraction] = ()
) -> Fraction:
    """A rational strictly inside (lo, hi) avoiding ``forbidden``.

    Deterministic: repeatedly takes the simplest rational in the remaining
    sub-interval above the last collision.  Terminates because the forbidden
    set is finite and every retry strictly raises the lower bound.
    """
    avoid = set(forbidden)
    cur_lo = lo
    while True:
        q = simplest_between(cur_lo, hi)
        if q not in avoid:
            return q
        cur_lo = q
