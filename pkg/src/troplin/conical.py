"""Height matrices, the induced Pluecker vectors, and conical complexes.

A height matrix V assigns a scalar V[i][j] to every pair of a basis element
i in B and a non-basis element j.  Augmenting V with a tropical identity
block on the B-columns (0 on the diagonal, INF off it) gives an m x n
matrix whose maximal tropical minors form a Pluecker vector.  Its underlying
matroid is the principal transversal matroid of B with families
I_j = { i in B : V[i][j] finite }, and every bounded cell of the resulting
space lies in the chart region of B -- the complex is "conical" over B.

For rank 2 with full uniform support the complex is a metric tree; this
module also builds that tree and recognizes caterpillars (conical <=>
caterpillar in rank 2).
"""

from __future__ import annotations

import logging
import math
import random
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from . import cells as cellmod
from .matroid import Matroid, mask_from_subset, transversal
from .plucker import PlueckerVector
from .semiring import INF, Scalar, as_scalar, format_scalar, tdet

log = logging.getLogger("troplin.conical")


class HeightMatrix:
    """Rows indexed by B ascending, columns by [n] - B ascending."""

    __slots__ = ("n", "basis", "others", "rows")

    def __init__(self, n: int, basis: Iterable[int], rows: Iterable[Iterable]):
        bset = tuple(sorted(set(basis)))
        mask_from_subset(bset, n)  # range/duplication check
        m = len(bset)
        if not 1 <= m <= n:
            raise ValueError("basis size out of range")
        others = tuple(e for e in range(1, n + 1) if e not in bset)
        grid = []
        rows = list(rows)
        if len(rows) != m:
            raise ValueError(f"expected {m} rows, got {len(rows)}")
        for row in rows:
            vals = tuple(as_scalar(v) for v in row)
            if len(vals) != len(others):
                raise ValueError(f"expected {len(others)} columns, got {len(vals)}")
            grid.append(vals)
        self.n = n
        self.basis = bset
        self.others = others
        self.rows = tuple(grid)
        for j in others:
            if not self.family(j):
                log.warning("column %d has no finite entries; %d will be a loop", j, j)

    @property
    def m(self) -> int:
        return len(self.basis)

    def value(self, i: int, j: int) -> Scalar:
        return self.rows[self.basis.index(i)][self.others.index(j)]

    def family(self, j: int) -> tuple[int, ...]:
        """I_j: the basis elements whose row is finite in column j."""
        col = self.others.index(j)
        return tuple(b for r, b in enumerate(self.basis) if self.rows[r][col] is not INF)

    def families(self) -> dict[int, tuple[int, ...]]:
        return {j: self.family(j) for j in self.others}

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "B": list(self.basis),
            "V": [[format_scalar(v) for v in row] for row in self.rows],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "HeightMatrix":
        try:
            return cls(int(obj["n"]), obj["B"], obj["V"])
        except KeyError as exc:
            raise ValueError(f"height-matrix JSON is missing field {exc}") from exc

    def __repr__(self):
        return f"HeightMatrix(n={self.n}, B={self.basis})"


def augment(v: HeightMatrix) -> tuple[tuple[Scalar, ...], ...]:
    """The m x n matrix: tropical identity on the B-columns, V elsewhere."""
    out = []
    for r, b in enumerate(v.basis):
        row: list[Scalar] = []
        col = 0
        for e in range(1, v.n + 1):
            if e in v.basis:
                row.append(Fraction(0) if e == b else INF)
            else:
                row.append(v.rows[r][col])
                col += 1
        out.append(tuple(row))
    return tuple(out)


def tau(v: HeightMatrix) -> PlueckerVector:
    """Pluecker vector of maximal tropical minors of the augmented matrix.

    Always validates; also asserts that the support matches the principal
    transversal matroid of the families I_j (the two descriptions of the
    same object must agree).
    """
    full = augment(v)
    n, m = v.n, v.m
    entries: dict[tuple, Scalar] = {}
    for combo in combinations(range(1, n + 1), m):
        sub = tuple(tuple(row[e - 1] for e in combo) for row in full)
        val = tdet(sub)
        if val is not INF:
            entries[combo] = val
    p = PlueckerVector(n, m, entries)
    report = p.validate()
    if not report.ok:  # pragma: no cover - would be a construction bug
        raise AssertionError(f"minor vector failed validation: {report.summary()}")
    expected = transversal(n, v.basis, v.families())
    if p.underlying_matroid() != expected:
        raise AssertionError(
            "support of the minor vector differs from the transversal matroid"
        )
    return p


# ---------------------------------------------------------------------------
# conical detection


def is_conical(p: PlueckerVector, cell_list=None) -> tuple[bool, tuple[int, ...] | None]:
    """Is there one basis lying in every bounded cell's matroid?

    Returns (flag, lexicographically least witness basis or None).
    """
    if cell_list is None:
        cell_list = cellmod.enumerate_cells(p)
    common: frozenset | None = None
    for cell in cell_list:
        if not cell.bounded:
            continue
        bs = frozenset(cell.face_matroid.bases)
        common = bs if common is None else common & bs
        if not common:
            return (False, None)
    assert common, "a loopless space always has at least one bounded cell"
    return (True, min(common))


# ---------------------------------------------------------------------------
# rank-2 trees


class Tree:
    """The metric-tree picture of a rank-2 complex with uniform support."""

    def __init__(self, node_bases, edges, leaves):
        self.node_bases = tuple(node_bases)  # per internal node: its cell's bases
        self.edges = tuple(edges)  # (node_idx, node_idx)
        self.leaves = tuple(leaves)  # (leaf label in [n], node_idx)

    @property
    def node_names(self):
        return tuple(f"v{i}" for i in range(len(self.node_bases)))

    def degree(self, idx: int) -> int:
        d = sum(1 for a, b in self.edges if idx in (a, b))
        d += sum(1 for _, at in self.leaves if at == idx)
        return d

    def internal_degree(self, idx: int) -> int:
        return sum(1 for a, b in self.edges if idx in (a, b))

    def to_dot(self) -> str:
        lines = ["graph tree {"]
        for i in range(len(self.node_bases)):
            lines.append(f"  v{i} [shape=point];")
        for label, at in sorted(self.leaves):
            lines.append(f'  L{label} [shape=none, label="{label}"];')
        for a, b in sorted(self.edges):
            lines.append(f"  v{a} -- v{b};")
        for label, at in sorted(self.leaves):
            lines.append(f"  v{at} -- L{label};")
        lines.append("}")
        return "\n".join(lines)

    def to_text(self) -> str:
        lines = []
        for i, bases in enumerate(self.node_bases):
            nbrs = sorted(
                [f"v{b if a == i else a}" for a, b in self.edges if i in (a, b)]
            )
            labels = sorted(label for label, at in self.leaves if at == i)
            lines.append(
                f"v{i}: leaves {labels} neighbours {nbrs} "
                f"bases {[''.join(map(str, bb)) for bb in bases]}"
            )
        return "\n".join(lines)


def build_tree(p: PlueckerVector, cell_list=None) -> Tree:
    """Tree of a rank-2 space: minimal cells are nodes, bounded 2-cells are
    internal edges, rays are leaf edges labelled by their direction."""
    p._need_validated()
    if p.m != 2:
        raise ValueError("trees exist for rank-2 spaces only")
    if len(p.support_masks()) != math.comb(p.n, 2):
        raise ValueError("tree construction expects uniform support")
    if cell_list is None:
        cell_list = cellmod.enumerate_cells(p)
    nodes, edge_triples, ray_pairs = cellmod.adjacency_graph(cell_list)
    edges = [(a, b) for a, b, _ in edge_triples]

    leaves = []
    for at, cell in ray_pairs:
        universal = _universal_elements(cell.face_matroid)
        node_universal = _universal_elements(nodes[at].face_matroid)
        label_set = [e for e in universal if e not in node_universal]
        if len(label_set) != 1:
            raise ValueError(
                f"ray {cell.face_matroid.bases} has ambiguous leaf label {label_set}"
            )
        leaves.append((label_set[0], at))

    if sorted(label for label, _ in leaves) != list(range(1, p.n + 1)):
        raise ValueError("expected exactly one leaf per ground-set element")
    if len(edges) != len(nodes) - 1 or not _connected(len(nodes), edges):
        raise ValueError("the minimal-cell adjacency graph is not a tree")
    return Tree([n.face_matroid.bases for n in nodes], edges, leaves)


def _universal_elements(matroid: Matroid) -> tuple[int, ...]:
    mask = (1 << matroid.n) - 1
    for mk in matroid.basis_masks:
        mask &= mk
    out = []
    bit = 1
    e = 1
    while bit <= mask:
        if mask & bit:
            out.append(e)
        bit <<= 1
        e += 1
    return tuple(out)


def _connected(count: int, edges) -> bool:
    if count == 0:
        return False
    seen = {0}
    frontier = [0]
    adj: dict[int, list[int]] = {i: [] for i in range(count)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    while frontier:
        u = frontier.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return len(seen) == count


def is_caterpillar(tree: Tree) -> bool:
    """True iff the internal nodes induce a path (single node counts)."""
    count = len(tree.node_bases)
    if count == 1:
        return True
    return all(tree.internal_degree(i) <= 2 for i in range(count))


# ---------------------------------------------------------------------------
# seeded generic instances


def random_height_matrix(
    n: int,
    m: int,
    basis: Iterable[int] | None = None,
    rng: random.Random | None = None,
    seed: int | None = None,
    generic: bool = True,
    inf_probability: float = 0.0,
) -> HeightMatrix:
    """Deterministic random instance.

    Base entries are integers from a range wide enough (100 * n^2) to keep
    tie patterns honest; with ``generic`` each entry additionally gets its
    own power 1/q^k (q a large prime, k distinct per slot), which destroys
    every accidental affine relation and forces the dual subdivision to be
    fine.  ``inf_probability`` knocks entries out to INF (for transversal
    tests; it defeats genericity of course).
    """
    if rng is None:
        rng = random.Random(seed if seed is not None else 0)
    if basis is None:
        basis = range(1, m + 1)
    bset = tuple(sorted(basis))
    others = n - m
    q = 10007
    rows = []
    k = 0
    for _ in range(m):
        row = []
        for _ in range(others):
            k += 1
            if inf_probability and rng.random() < inf_probability:
                row.append(INF)
                continue
            base = Fraction(rng.randrange(0, 100 * n * n))
            if generic:
                base += Fraction(1, q**k)
            row.append(base)
        rows.append(row)
    return HeightMatrix(n, bset, rows)


def local_complex_is_fine(p: PlueckerVector, basis: Iterable[int]) -> bool:
    """Genericity detector: does the local f-vector attain the fine counts?"""
    from .chart import LocalContext

    ctx = LocalContext(p, basis)
    local = cellmod.enumerate_local_cells(ctx)
    fv = cellmod.f_vector(local, p.m)
    s, r = p.n - p.m, p.m
    for i in range(1, p.m + 1):
        k = p.m - i
        if fv.total[i - 1] != cellmod.mixed_total_count(s, r, k):
            return False
        if fv.bounded[i - 1] != cellmod.mixed_interior_count(s, r, k):
            return False
    return True
