"""Exact min-plus (tropical) arithmetic.

Everything is computed over (Q ∪ {inf}, min, +): tropical addition is
minimum, with ``INF`` as its identity; tropical multiplication is ordinary
addition, with ``INF`` absorbing.  Finite values are `fractions.Fraction`
objects, never floats, so ties are decided exactly -- the combinatorics
downstream (which minima are achieved twice) depends on that.

Vectors and matrices are plain tuples / tuples of tuples of scalars.
External serialization of a scalar is the string "a/b", "a", or "inf".
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

_SCALAR_RE = re.compile(r"-?\d+(/[1-9]\d*)?")


class _TropicalInfinity:
    """The absorbing element.  A unique singleton, larger than every rational."""

    __slots__ = ()
    _the = None

    def __new__(cls):
        if cls._the is None:
            cls._the = super().__new__(cls)
        return cls._the

    def __repr__(self):
        return "inf"

    def __add__(self, other):
        if other is self or isinstance(other, (int, Fraction)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __lt__(self, other):
        if other is self or isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __le__(self, other):
        if other is self:
            return True
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __gt__(self, other):
        if other is self:
            return False
        if isinstance(other, (int, Fraction)):
            return True
        return NotImplemented

    def __ge__(self, other):
        if other is self or isinstance(other, (int, Fraction)):
            return True
        return NotImplemented

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __hash__(self):
        return 0x7F800000  # arbitrary fixed value

    def __reduce__(self):
        return (_TropicalInfinity, ())


INF = _TropicalInfinity()

Scalar = Union[Fraction, int, _TropicalInfinity]
Vector = Sequence[Scalar]


def is_finite(x: Scalar) -> bool:
    return x is not INF


def as_scalar(value) -> Scalar:
    """Coerce ints, Fractions and serialized strings to a scalar.

    Floats are rejected: the whole point of the library is exact ties.
    """
    if value is INF:
        return INF
    if isinstance(value, bool):
        raise TypeError("booleans are not tropical scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, float):
        raise TypeError("floats are not allowed; use Fraction or 'a/b' strings")
    raise TypeError(f"cannot interpret {value!r} as a tropical scalar")


def parse_scalar(text: str) -> Scalar:
    text = text.strip()
    if text == "inf":
        return INF
    # the serialized grammar is exactly "a", "a/b" or "inf"; in particular no
    # decimal notation, so exactness can never silently depend on a parser
    if not _SCALAR_RE.fullmatch(text):
        raise ValueError(f"bad rational literal {text!r}")
    return Fraction(text)


def format_scalar(x: Scalar) -> str:
    if x is INF:
        return "inf"
    return str(Fraction(x))


def t_min(a: Scalar, b: Scalar) -> Scalar:
    """Tropical addition."""
    return a if a <= b else b


def t_plus(a: Scalar, b: Scalar) -> Scalar:
    """Tropical multiplication (ordinary +, INF absorbs)."""
    return a + b


def min_achieved_twice(terms: Sequence[Scalar]) -> bool:
    """True iff the minimum of ``terms`` is INF or attained at least twice.

    This is the recurring "tropical vanishing" condition: a tropical linear
    form vanishes at a point when its minimum is achieved twice (or never).
    """
    if not terms:
        raise ValueError("empty term list")
    best = terms[0]
    for t in terms[1:]:
        if t < best:
            best = t
    if best is INF:
        return True
    hits = 0
    for t in terms:
        if t == best:
            hits += 1
            if hits >= 2:
                return True
    return False


def support(vec: Vector) -> tuple[int, ...]:
    """1-based positions of the finite coordinates."""
    return tuple(i + 1 for i, x in enumerate(vec) if x is not INF)


def is_orthogonal(x: Vector, y: Vector) -> bool:
    """Tropical orthogonality: min_i (x_i + y_i) is INF or achieved twice."""
    if len(x) != len(y):
        raise ValueError("orthogonality needs vectors of equal length")
    return min_achieved_twice([a + b for a, b in zip(x, y)])


def check_square(rows) -> int:
    k = len(rows)
    for row in rows:
        if len(row) != k:
            raise ValueError("matrix is not square")
    return k


def tdet(rows) -> Scalar:
    """Tropical determinant: min over permutations s of sum_i rows[i][s(i)].

    Brute-force enumeration over permutations, pruning any branch as soon as
    it hits an INF entry.  Fine for the sizes this library targets (k <= 8).
    """
    k = check_square(rows)
    if k == 0:
        raise ValueError("empty matrix")
    best = INF

    def descend(r: int, used: int, acc):
        nonlocal best
        if r == k:
            if acc < best:
                best = acc
            return
        row = rows[r]
        for c in range(k):
            bit = 1 << c
            if used & bit:
                continue
            v = row[c]
            if v is INF:
                continue
            descend(r + 1, used | bit, acc + v)

    descend(0, 0, Fraction(0))
    return best


def parse_point(text: str, n: int | None = None) -> tuple:
    """Parse a comma-separated list of rationals (no INF allowed)."""
    parts = [p for p in text.split(",") if p.strip()]
    pt = []
    for p in parts:
        v = parse_scalar(p)
        if v is INF:
            raise ValueError("points must have finite coordinates")
        pt.append(v)
    if n is not None and len(pt) != n:
        raise ValueError(f"expected {n} coordinates, got {len(pt)}")
    return tuple(pt)


def format_point(vec: Iterable[Scalar]) -> str:
    return ",".join(format_scalar(v) for v in vec)
