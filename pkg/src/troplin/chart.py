"""Local charts of a tropical linear space around one basis.

Fix a validated Pluecker vector p and a basis B = {b_1 < ... < b_m} of its
support.  The chart sends x in R^m to the point v with v_{b_j} = x_j and,
for i outside B,

    v_i = min over b in C(i,B) - i of ( x_{pos(b)} + p_{B - b + i} - p_B )

where C(i,B) is the fundamental circuit support of i over B.  The image is
exactly the part of the space where B has maximum weight, and the same
formula applied to an ambient point y (using y's B-coordinates) is the
projection onto that part.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .matroid import mask_from_subset
from .plucker import PlueckerVector
from .semiring import as_scalar, INF


class LoopyMatroidError(ValueError):
    """The underlying matroid has loops, so the finite part of the space is empty."""


class LocalContext:
    """Cached data for chart / projection work at one basis."""

    __slots__ = ("p", "basis", "positions", "_options", "_supp_weights")

    def __init__(self, p: PlueckerVector, basis: Iterable[int]):
        p._need_validated()
        self.p = p
        bset = tuple(sorted(set(basis)))
        if len(bset) != p.m:
            raise ValueError(f"basis must have {p.m} elements")
        bmask = mask_from_subset(bset, p.n)
        if p.entry_mask(bmask) is INF:
            raise ValueError(f"{bset} is not in the support")
        matroid = p.underlying_matroid()
        if matroid.loops():
            raise LoopyMatroidError(
                f"underlying matroid has loops {matroid.loops()}; "
                "the space has no finite points and no charts"
            )
        self.basis = bset
        self.positions = {b: j for j, b in enumerate(bset, start=1)}  # element -> 1-based slot
        p_b = p.entry_mask(bmask)
        options: list[tuple[int, tuple[tuple[int, Fraction], ...]]] = []
        for i in range(1, p.n + 1):
            if i in self.positions:
                continue
            circ = matroid.fundamental_circuit_support(i, bset)
            opts = []
            for b in circ:
                if b == i:
                    continue
                exch = (bmask ^ (1 << (b - 1))) | (1 << (i - 1))
                delta = p.entry_mask(exch) - p_b
                opts.append((self.positions[b], delta))
            options.append((i, tuple(opts)))
        self._options = tuple(options)
        self._supp_weights = tuple((mk, p.entry_mask(mk)) for mk in p.support_masks())

    @property
    def options(self):
        """Per non-basis element i: ((slot j, p_{B-b_j+i} - p_B), ...)."""
        return self._options

    def _as_x(self, x) -> tuple[Fraction, ...]:
        xt = tuple(x)
        if len(xt) != self.p.m:
            raise ValueError(f"chart input must have {self.p.m} coordinates")
        out = []
        for v in xt:
            s = as_scalar(v)
            if s is INF:
                raise ValueError("chart inputs are finite vectors")
            out.append(Fraction(s))
        return tuple(out)

    # -- membership of the chart region --------------------------------------

    def in_sigma(self, point) -> bool:
        """Does B attain the maximum weight at the point?"""
        pt = self.p._as_point(point)
        target = None
        best = None
        bmask = mask_from_subset(self.basis, self.p.n)
        for mask, val in self._supp_weights:
            w = PlueckerVector._weight_mask(pt, mask, val)
            if best is None or w > best:
                best = w
            if mask == bmask:
                target = w
        return target == best

    def in_local_space(self, point) -> bool:
        """Membership in the space, assuming the point lies in this chart region.

        Tests orthogonality against the m fundamental circuits over B only;
        under the region precondition that is equivalent to full membership
        (asserted against the general test when __debug__ is on).
        """
        pt = self.p._as_point(point)
        if not self.in_sigma(pt):
            raise ValueError("point is outside the chart region of this basis")
        answer = True
        for i, opts in self._options:
            # orthogonality with the fundamental circuit of i, shifted by -p_B
            terms = [pt[self.basis[j - 1] - 1] + delta for j, delta in opts]
            terms.append(pt[i - 1])
            best = min(terms)
            if terms.count(best) < 2:
                answer = False
                break
        if __debug__:
            full = self.p.contains(pt, cross_check=False)
            assert full == answer, "fundamental-circuit membership must match the general test"
        return answer

    # -- the chart and its relatives ------------------------------------------

    def chart(self, x) -> tuple[Fraction, ...]:
        """Map x in R^m to the corresponding point of the space."""
        xs = self._as_x(x)
        v: list[Fraction] = [Fraction(0)] * self.p.n
        for b, j in self.positions.items():
            v[b - 1] = xs[j - 1]
        for i, opts in self._options:
            v[i - 1] = min(xs[j - 1] + delta for j, delta in opts)
        out = tuple(v)
        if __debug__:
            assert self.in_sigma(out), "chart image must lie in the chart region"
        return out

    def chart_inverse(self, point) -> tuple[Fraction, ...]:
        """Restriction to the B-coordinates; inverse of `chart` on the region."""
        pt = self.p._as_point(point)
        if not self.in_local_space(pt):
            raise ValueError("point is not in the local space at this basis")
        return tuple(pt[b - 1] for b in self.basis)

    def project(self, point) -> tuple[Fraction, ...]:
        """Retract a chart-region point onto the space.

        Same min formula as the chart, evaluated on the point's own
        B-coordinates.  Requires in_sigma; idempotent; fixes the local space.
        """
        pt = self.p._as_point(point)
        if not self.in_sigma(pt):
            raise ValueError("projection is defined on the chart region only")
        v = list(pt)
        for i, opts in self._options:
            v[i - 1] = min(pt[self.basis[j - 1] - 1] + delta for j, delta in opts)
        return tuple(v)


def project_any(p: PlueckerVector, point):
    """Project onto the space via the lexicographically least maximal basis.

    Convenience wrapper: picks the lex-least basis of the matroid at the
    point (so the point is in that chart region by construction) and applies
    its projection.  No claim is made that the result is independent of the
    choice -- it is simply a deterministic one.  Returns (basis, projection).
    """
    matroid = p.matroid_at(point)
    basis = matroid.bases[0]
    ctx = LocalContext(p, basis)
    return basis, ctx.project(point)
