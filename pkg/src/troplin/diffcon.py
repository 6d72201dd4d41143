"""Difference-constraint systems with mixed strict / non-strict inequalities.

A system over variables x_1..x_k consists of constraints x_l - x_r <= c or
x_l - x_r < c and equalities x_l - x_r = c, with rational c.  Feasibility is
decided exactly by Bellman-Ford on lexicographic edge weights (c, #strict):
a path cost (c, s) means "c minus s infinitesimals", so

    (c1, s1) < (c2, s2)  iff  c1 < c2, or c1 = c2 and s1 > s2.

The system is infeasible exactly when some cycle has total weight below
(0, 0), i.e. rational part negative, or zero with at least one strict edge.
On feasible systems a rational witness is produced by substituting a real
epsilon = 1, 1/2, 1/4, ... for the infinitesimal until every constraint
checks out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .semiring import as_scalar, INF


@dataclass(frozen=True)
class Constraint:
    """x_left - x_right <= bound (or < bound when strict).  1-based vars."""

    left: int
    right: int
    bound: Fraction
    strict: bool = False

    def pretty(self) -> str:
        op = "<" if self.strict else "<="
        return f"x{self.left} - x{self.right} {op} {self.bound}"


@dataclass(frozen=True)
class DifferenceSystem:
    num_vars: int
    constraints: tuple[Constraint, ...] = ()
    equalities: tuple[tuple[int, int, Fraction], ...] = ()  # x_l - x_r = c

    def all_edges(self):
        """Normalize to a list of (right, left, bound, strict, origin) edges."""
        edges = []
        for con in self.constraints:
            self._check_var(con.left)
            self._check_var(con.right)
            edges.append((con.right, con.left, con.bound, con.strict, con))
        for l, r, c in self.equalities:
            self._check_var(l)
            self._check_var(r)
            edges.append((r, l, c, False, Constraint(l, r, c, False)))
            edges.append((l, r, -c, False, Constraint(r, l, -c, False)))
        return edges

    def _check_var(self, j):
        if not 1 <= j <= self.num_vars:
            raise ValueError(f"variable x{j} out of range [1..{self.num_vars}]")


@dataclass
class SolveResult:
    feasible: bool
    witness: tuple[Fraction, ...] | None = None
    cycle: tuple[Constraint, ...] | None = None
    cycle_weight: tuple[Fraction, int] | None = None  # (rational part, strict count)


def make_constraint(left: int, right: int, bound, strict: bool = False) -> Constraint:
    b = as_scalar(bound)
    if b is INF:
        raise ValueError("constraint bounds must be finite")
    return Constraint(left, right, Fraction(b), strict)


def check_witness(system: DifferenceSystem, witness) -> bool:
    pt = tuple(witness)
    for con in system.constraints:
        d = pt[con.left - 1] - pt[con.right - 1]
        if con.strict:
            if not d < con.bound:
                return False
        elif not d <= con.bound:
            return False
    for l, r, c in system.equalities:
        if pt[l - 1] - pt[r - 1] != c:
            return False
    return True


def solve(system: DifferenceSystem, want_witness: bool = True) -> SolveResult:
    """Decide feasibility; return an exact witness or a violating cycle."""
    k = system.num_vars
    edges = []
    for right, left, bound, strict, origin in system.all_edges():
        if left == right:
            # self-loop: 0 <= bound must hold (strictly if strict)
            if bound < 0 or (bound == 0 and strict):
                return SolveResult(
                    False, cycle=(origin,), cycle_weight=(bound, 1 if strict else 0)
                )
            continue
        edges.append((right, left, bound, 1 if strict else 0, origin))

    if not edges:
        return SolveResult(True, witness=tuple(Fraction(0) for _ in range(k)))

    scale = math.lcm(*(b.denominator for _, _, b, _, _ in edges))
    iedges = [(r, l, int(b * scale), s, o) for r, l, b, s, o in edges]

    # implicit super-source: every node starts at distance (0, 0)
    dist_c = [0] * (k + 1)
    dist_s = [0] * (k + 1)
    pred: list[tuple | None] = [None] * (k + 1)

    def relax_once() -> int | None:
        changed = None
        for r, l, c, s, o in iedges:
            nc = dist_c[r] + c
            ns = dist_s[r] + s
            if nc < dist_c[l] or (nc == dist_c[l] and ns > dist_s[l]):
                dist_c[l] = nc
                dist_s[l] = ns
                pred[l] = (r, o)
                changed = l
        return changed

    for _ in range(k):
        if relax_once() is None:
            break
    else:
        hot = relax_once()
        if hot is not None:
            # walk back far enough to be inside the negative cycle, then collect it
            node = hot
            for _ in range(k + 1):
                node = pred[node][0]
            cycle_nodes = []
            cur = node
            while cur not in cycle_nodes:
                cycle_nodes.append(cur)
                cur = pred[cur][0]
            start = cycle_nodes.index(cur)
            loop = cycle_nodes[start:] if start else cycle_nodes
            # pred[v] = (u, origin) is the edge u -> v; read the cycle off preds
            origins = []
            total_c = Fraction(0)
            total_s = 0
            cur = loop[0]
            while True:
                u, origin = pred[cur]
                origins.append(origin)
                total_c += origin.bound
                total_s += 1 if origin.strict else 0
                cur = u
                if cur == loop[0]:
                    break
            origins.reverse()
            assert total_c < 0 or (total_c == 0 and total_s > 0)
            return SolveResult(False, cycle=tuple(origins), cycle_weight=(total_c, total_s))

    if not want_witness:
        return SolveResult(True)

    base = [Fraction(dist_c[j], scale) for j in range(1, k + 1)]
    slack = [dist_s[j] for j in range(1, k + 1)]
    eps = Fraction(1)
    for _ in range(200):
        witness = tuple(b - eps * s for b, s in zip(base, slack))
        if check_witness(system, witness):
            return SolveResult(True, witness=witness)
        eps /= 2
    raise AssertionError("epsilon refinement failed; this should be unreachable")
