"""Cell complexes of tropical linear spaces, enumerated through local charts.

Pulling the space back through the chart at a basis B turns each cell into a
"tie pattern": for every non-basis element i, the set S_i of basis slots
achieving the minimum in the chart formula.  A pattern determines a system of
difference constraints on the chart coordinates (equalities inside each S_i,
strict inequalities against the rest); the pattern is realized iff that
system is feasible.  Feasible patterns are mapped back through the chart,
identified by the matroid of maximum-weight bases at a witness point, and
deduplicated across the bases of the support.

Dimensions are ambient: a cell always contains the all-ones lineality
direction, so the minimum is 1, not 0.  "Bounded" always means bounded
modulo that lineality line.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .chart import LocalContext
from .diffcon import Constraint, DifferenceSystem, solve
from .matroid import Matroid
from .plucker import PlueckerVector

log = logging.getLogger("troplin.cells")

MAX_GROUND_DEFAULT = 10
MAX_SOLVER_NODES_DEFAULT = 2_000_000


class EnumerationLimit(RuntimeError):
    pass


@dataclass(frozen=True)
class TiePattern:
    """For each non-basis element i (ascending): the tied subset of C(i,B)-i.

    ``selections`` holds (i, chosen) pairs where ``chosen`` is a nonempty
    sorted tuple of basis elements.
    """

    selections: tuple[tuple[int, tuple[int, ...]], ...]


@dataclass
class RegionResult:
    feasible: bool
    dim: int | None
    witness: tuple[Fraction, ...] | None
    system: DifferenceSystem


@dataclass
class Cell:
    """One cell, identified by the matroid attached to its relative interior."""

    face_matroid: Matroid
    dim: int
    bounded: bool
    witness: tuple[Fraction, ...]
    owners: tuple[tuple[int, ...], ...]

    @property
    def key(self):
        return self.face_matroid.bases


# ---------------------------------------------------------------------------
# tie pattern -> difference system


def _selection_system(opts: Sequence[tuple[int, Fraction]], chosen_idx: Sequence[int]):
    """Equalities/constraints forcing argmin(slots) == chosen among the options.

    ``opts`` lists (slot, delta) terms x_slot + delta; ``chosen_idx`` indexes
    into opts.  The first chosen term is the representative: every other
    chosen term equals it, every unchosen term exceeds it strictly.
    """
    rep_slot, rep_delta = opts[chosen_idx[0]]
    chosen_set = set(chosen_idx)
    eqs = []
    cons = []
    for t in chosen_idx[1:]:
        slot, delta = opts[t]
        eqs.append((slot, rep_slot, rep_delta - delta))
    for t, (slot, delta) in enumerate(opts):
        if t in chosen_set:
            continue
        cons.append(Constraint(rep_slot, slot, delta - rep_delta, strict=True))
    return eqs, cons


def pattern_system(ctx: LocalContext, pattern: TiePattern) -> DifferenceSystem:
    m = ctx.p.m
    expected = tuple(i for i, _ in ctx.options)
    got = tuple(i for i, _ in pattern.selections)
    if got != expected:
        raise ValueError(f"pattern must select for elements {expected}, got {got}")
    eqs: list = []
    cons: list = []
    for (i, opts), (_, chosen) in zip(ctx.options, pattern.selections):
        elems = [ctx.basis[slot - 1] for slot, _ in opts]
        try:
            idx = tuple(sorted(elems.index(b) for b in chosen))
        except ValueError:
            raise ValueError(
                f"selection {chosen} for element {i} is not inside C({i},B)-{i} = {tuple(elems)}"
            ) from None
        if not idx:
            raise ValueError(f"empty selection for element {i}")
        e, c = _selection_system(opts, idx)
        eqs.extend(e)
        cons.extend(c)
    return DifferenceSystem(m, tuple(cons), tuple(eqs))


def _equality_components(m: int, eqs) -> int:
    parent = list(range(m + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    comps = m
    for l, r, _ in eqs:
        ra, rb = find(l), find(r)
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    return comps


def is_bounded(system: DifferenceSystem) -> bool:
    """Bounded modulo the all-ones line <=> the constraint digraph is strongly
    connected (arc right -> left per constraint, both ways per equality)."""
    m = system.num_vars
    if m == 1:
        return True
    fwd = [0] * (m + 1)
    back = [0] * (m + 1)

    def arc(r, l):
        fwd[r] |= 1 << l
        back[l] |= 1 << r

    for con in system.constraints:
        arc(con.right, con.left)
    for l, r, _ in system.equalities:
        arc(r, l)
        arc(l, r)

    full = ((1 << m) - 1) << 1

    def reach(adj):
        seen = 1 << 1
        frontier = [1]
        while frontier:
            u = frontier.pop()
            rest = adj[u] & ~seen
            while rest:
                bit = rest & -rest
                rest ^= bit
                seen |= bit
                frontier.append(bit.bit_length() - 1)
        return seen

    return reach(fwd) == full and reach(back) == full


def region_of(ctx: LocalContext, pattern: TiePattern) -> RegionResult:
    """Solve the difference system of a tie pattern.

    Feasible regions report their dimension (number of equality-graph
    components: each component is one free coordinate of the affine span)
    and an exact interior witness x realizing exactly this pattern.
    """
    system = pattern_system(ctx, pattern)
    res = solve(system)
    if not res.feasible:
        return RegionResult(False, None, None, system)
    dim = _equality_components(system.num_vars, system.equalities)
    if __debug__:
        assert _realized_pattern(ctx, res.witness) == pattern, (
            "witness must realize its own tie pattern"
        )
    return RegionResult(True, dim, res.witness, system)


def _realized_pattern(ctx: LocalContext, x) -> TiePattern:
    sel = []
    for i, opts in ctx.options:
        vals = [x[slot - 1] + delta for slot, delta in opts]
        best = min(vals)
        chosen = tuple(
            sorted(ctx.basis[opts[t][0] - 1] for t, v in enumerate(vals) if v == best)
        )
        sel.append((i, chosen))
    return TiePattern(tuple(sel))


# ---------------------------------------------------------------------------
# enumeration


def enumerate_local_cells(
    ctx: LocalContext, max_nodes: int = MAX_SOLVER_NODES_DEFAULT
) -> list[Cell]:
    """All cells of the local space at ctx.basis, one per feasible tie pattern.

    Runs a depth-first product over the per-element selections, pruning any
    prefix whose partial system is already infeasible.  ``max_nodes`` caps
    the number of solver calls (the tie-pattern product can explode).
    """
    p = ctx.p
    option_rows = ctx.options
    m = p.m
    cells: dict = {}
    nodes = 0

    def leaf(eqs, cons):
        system = DifferenceSystem(m, tuple(cons), tuple(eqs))
        res = solve(system)
        if not res.feasible:
            return
        dim = _equality_components(m, eqs)
        bounded = is_bounded(system)
        point = ctx.chart(res.witness)
        face = p.matroid_at(point)
        assert not face.loops(), "points of the space have loopless local matroids"
        assert face.has_basis_mask(
            sum(1 << (b - 1) for b in ctx.basis)
        ), "the chart basis must be maximal at chart images"
        cell = Cell(face, dim, bounded, point, (ctx.basis,))
        prev = cells.get(face.bases)
        if prev is None:
            cells[face.bases] = cell
        else:
            # Tie patterns are expected to biject with cells; a collision is
            # a refinement of the same cell and must agree on the geometry.
            log.warning(
                "two tie patterns produced the same face matroid at basis %s", ctx.basis
            )
            assert (prev.dim, prev.bounded) == (dim, bounded), (
                "refined regions of one cell disagree on (dim, bounded)"
            )

    def descend(depth, eqs, cons):
        nonlocal nodes
        if depth == len(option_rows):
            leaf(eqs, cons)
            return
        _, opts = option_rows[depth]
        k = len(opts)
        for size in range(1, k + 1):
            for chosen_idx in combinations(range(k), size):
                nodes += 1
                if nodes > max_nodes:
                    raise EnumerationLimit(
                        f"tie-pattern search exceeded {max_nodes} solver nodes"
                    )
                new_eqs, new_cons = _selection_system(opts, chosen_idx)
                eqs2 = eqs + new_eqs
                cons2 = cons + new_cons
                if depth + 1 == len(option_rows):
                    leaf(eqs2, cons2)
                    continue
                probe = solve(
                    DifferenceSystem(m, tuple(cons2), tuple(eqs2)), want_witness=False
                )
                if probe.feasible:
                    descend(depth + 1, eqs2, cons2)

    descend(0, [], [])
    return [cells[k] for k in sorted(cells)]


def enumerate_cells(
    p: PlueckerVector,
    max_nodes: int = MAX_SOLVER_NODES_DEFAULT,
    max_ground: int = MAX_GROUND_DEFAULT,
    bases: Iterable[tuple[int, ...]] | None = None,
) -> list[Cell]:
    """The full cell complex of the finite part of the space.

    Unions the local enumerations over every basis of the support (or the
    given subset, for testing order-independence), merging cells by their
    face matroid and recording every basis that found each cell.
    """
    p._need_validated()
    if p.n > max_ground:
        raise ValueError(
            f"ground set {p.n} exceeds the enumeration cap {max_ground}; "
            "raise max_ground explicitly if you really want this"
        )
    matroid = p.underlying_matroid()
    if matroid.loops():
        raise ValueError(
            f"underlying matroid has loops {matroid.loops()}; the finite part is empty"
        )
    basis_list = list(bases) if bases is not None else [tuple(b) for b in matroid.bases]
    merged: dict = {}
    for basis in basis_list:
        ctx = LocalContext(p, basis)
        for cell in enumerate_local_cells(ctx, max_nodes=max_nodes):
            prev = merged.get(cell.key)
            if prev is None:
                merged[cell.key] = cell
            else:
                assert (prev.dim, prev.bounded) == (cell.dim, cell.bounded), (
                    "the same cell was found with inconsistent geometry"
                )
                if basis not in prev.owners:
                    prev.owners = tuple(sorted(prev.owners + (basis,)))
    return [merged[k] for k in sorted(merged)]


# ---------------------------------------------------------------------------
# f-vectors and bounds


@dataclass(frozen=True)
class FVector:
    m: int
    total: tuple[int, ...]  # index i-1 counts cells of ambient dimension i
    bounded: tuple[int, ...]

    @classmethod
    def from_cells(cls, cells: Iterable[Cell], m: int) -> "FVector":
        tot = [0] * m
        bnd = [0] * m
        for c in cells:
            tot[c.dim - 1] += 1
            if c.bounded:
                bnd[c.dim - 1] += 1
        return cls(m, tuple(tot), tuple(bnd))

    def to_json(self) -> dict:
        return {
            "fvector": {
                str(i + 1): {"total": self.total[i], "bounded": self.bounded[i]}
                for i in range(self.m)
            }
        }


def f_vector(cells: Iterable[Cell], m: int | None = None) -> FVector:
    """Counts by dimension; the rank is read off the cells when not given."""
    cells = list(cells)
    if m is None:
        if not cells:
            raise ValueError("cannot infer the rank from an empty cell list")
        m = len(cells[0].face_matroid.bases[0])
    return FVector.from_cells(cells, m)


def _comb0(a: int, b: int) -> int:
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def bound_bounded(n: int, m: int, i: int) -> int:
    """Cap on the number of bounded i-dimensional cells, any local space on
    (n, m); attained exactly in the generic (fine) case."""
    _check_nmi(n, m, i)
    return _comb0(n - i - 1, i - 1) * _comb0(n - 2 * i, m - i)


def bound_total(n: int, m: int, i: int) -> int:
    """Cap on the total number of i-dimensional cells of a local space."""
    _check_nmi(n, m, i)
    return _comb0(n - i - 1, m - i) * _comb0(n - 1, i - 1)


def _check_nmi(n, m, i):
    if not 1 <= i <= m <= n:
        raise ValueError("need 1 <= i <= m <= n")


def _multinomial(total: int, parts: Sequence[int]) -> int:
    if any(p < 0 for p in parts):
        return 0
    assert sum(parts) == total
    out = 1
    rest = total
    for p in parts:
        out *= math.comb(rest, p)
        rest -= p
    return out


def mixed_interior_count(s: int, r: int, k: int) -> int:
    """Interior k-faces of a fine mixed subdivision of the dilate s * (r-1)-simplex.

    Translating local cell counts: s = n-m, r = m, k = m-i.  The multinomial
    is 0 when a part goes negative (then no such faces exist).
    """
    _check_srk(s, r, k)
    return _multinomial(s - 1 + k, (s - r + k, r - 1 - k, k))


def mixed_total_count(s: int, r: int, k: int) -> int:
    """All k-faces (interior or not) of such a fine mixed subdivision."""
    _check_srk(s, r, k)
    value = Fraction(s, s + k) * _multinomial(r + s - 1, (s, r - 1 - k, k))
    assert value.denominator == 1
    return int(value)


def _check_srk(s, r, k):
    if s < 1 or r < 1 or not 0 <= k <= r - 1:
        raise ValueError("need s >= 1, r >= 1, 0 <= k <= r-1")


@dataclass(frozen=True)
class FacetBoundReport:
    n: int
    m: int
    facet_cells: int  # cells of ambient dimension 1 = facets of the dual picture
    bound: int

    @property
    def ok(self) -> bool:
        return self.facet_cells <= self.bound


def check_facet_bound(p: PlueckerVector, cells: list[Cell] | None = None) -> FacetBoundReport:
    """Count minimal cells against the binom(n-2, m-1) facet bound.

    Only meaningful for uniform support (a tropical realization of U_{m,n}),
    where the minimal cells correspond exactly to the full-dimensional pieces
    of the dual subdivision.
    """
    p._need_validated()
    if len(p.support_masks()) != math.comb(p.n, p.m):
        raise ValueError("the facet bound check needs uniform support")
    if cells is None:
        cells = enumerate_cells(p)
    count = sum(1 for c in cells if c.dim == 1)
    return FacetBoundReport(p.n, p.m, count, math.comb(p.n - 2, p.m - 1))


# ---------------------------------------------------------------------------
# adjacency export (m = 2)


def adjacency_graph(cells: list[Cell]):
    """Nodes = minimal (dim-1) cells, edges = bounded dim-2 cells (m=2 only).

    Returns (node_cells, edge_pairs, ray_attachments): edge_pairs/rays refer
    to node indices; rays are the unbounded dim-2 cells with their unique
    incident node.
    """
    if any(c.face_matroid.m != 2 for c in cells):
        raise ValueError("the cell adjacency graph is for rank-2 complexes only")
    nodes = [c for c in cells if c.dim == 1]
    nodes.sort(key=lambda c: c.key)
    node_sets = [frozenset(c.face_matroid.bases) for c in nodes]
    edges = []
    rays = []
    for c in cells:
        if c.dim != 2:
            continue
        incident = [
            idx for idx, s in enumerate(node_sets) if frozenset(c.face_matroid.bases) <= s
        ]
        if c.bounded:
            if len(incident) != 2:
                raise ValueError(
                    f"bounded dim-2 cell {c.face_matroid.bases} touches "
                    f"{len(incident)} minimal cells; expected exactly 2"
                )
            edges.append((incident[0], incident[1], c))
        else:
            if len(incident) != 1:
                raise ValueError(
                    f"ray {c.face_matroid.bases} touches {len(incident)} minimal cells; "
                    "expected exactly 1"
                )
            rays.append((incident[0], c))
    return nodes, edges, rays


def adjacency_dot(cells: list[Cell]) -> str:
    nodes, edges, _ = adjacency_graph(cells)
    lines = ["graph cells {"]
    for idx, c in enumerate(nodes):
        label = " ".join("".join(map(str, b)) for b in c.face_matroid.bases)
        lines.append(f'  v{idx} [label="{label}"];')
    for a, b, _ in sorted(edges, key=lambda e: (e[0], e[1])):
        lines.append(f"  v{a} -- v{b};")
    lines.append("}")
    return "\n".join(lines)
