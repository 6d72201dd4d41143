import math
import random
from fractions import Fraction
from itertools import combinations

import pytest

from oracles import lattice_simplex_counts, recession_01_bounded
from troplin.cells import (
    EnumerationLimit,
    TiePattern,
    adjacency_dot,
    adjacency_graph,
    bound_bounded,
    bound_total,
    check_facet_bound,
    enumerate_cells,
    enumerate_local_cells,
    f_vector,
    is_bounded,
    mixed_interior_count,
    mixed_total_count,
    pattern_system,
    region_of,
)
from troplin.chart import LocalContext
from troplin.examples import snowflake, two_pyramids, uniform_zero
from troplin.plucker import PlueckerVector


def bases_of(cell):
    return {"".join(map(str, b)) for b in cell.face_matroid.bases}


# ---------------------------------------------------------------------------
# frozen complexes


def test_example1_global_complex():
    p = two_pyramids()
    cells = enumerate_cells(p)
    assert len(cells) == 7
    table = {frozenset(bases_of(c)): (c.dim, c.bounded) for c in cells}
    assert table == {
        frozenset({"12", "13", "14"}): (2, False),
        frozenset({"12", "23", "24"}): (2, False),
        frozenset({"13", "23", "34"}): (2, False),
        frozenset({"14", "24", "34"}): (2, False),
        frozenset({"13", "14", "23", "24"}): (2, True),
        frozenset({"12", "13", "14", "23", "24"}): (1, True),
        frozenset({"13", "14", "23", "24", "34"}): (1, True),
    }
    fv = f_vector(cells)
    assert fv.total == (2, 5)
    assert fv.bounded == (2, 1)
    # every cell lies in the chart region of each of its bases
    for c in cells:
        assert c.owners == c.face_matroid.bases
        assert p.contains(c.witness)


def test_example1_local_complexes():
    p = two_pyramids()
    local = enumerate_local_cells(LocalContext(p, (1, 4)))
    assert len(local) == 5
    fv = f_vector(local)
    assert fv.total == (2, 3)
    assert fv.bounded == (2, 1)
    # chart basis belongs to every local face matroid
    for c in local:
        assert (1, 4) in c.face_matroid.bases


def test_snowflake_f_vector():
    cells = enumerate_cells(snowflake())
    fv = f_vector(cells)
    assert fv.total == (4, 9)
    assert fv.bounded == (4, 3)


def test_star_complex_single_vertex():
    cells = enumerate_cells(uniform_zero(5, 2))
    fv = f_vector(cells)
    assert fv.total == (1, 5)
    assert fv.bounded == (1, 0)


def test_f_vector_rank_inference():
    cells = enumerate_cells(two_pyramids())
    assert f_vector(cells) == f_vector(cells, 2)
    with pytest.raises(ValueError):
        f_vector([])


def test_enumeration_limit():
    ctx = LocalContext(snowflake(), (1, 3))
    with pytest.raises(EnumerationLimit):
        enumerate_local_cells(ctx, max_nodes=2)


def test_ground_size_cap():
    p = uniform_zero(11, 2)
    with pytest.raises(ValueError):
        enumerate_cells(p)
    assert enumerate_cells(p, max_ground=11)  # override works


# ---------------------------------------------------------------------------
# tie patterns and regions


def all_patterns(ctx):
    per_element = []
    for i, opts in ctx.options:
        elems = tuple(sorted(ctx.basis[slot - 1] for slot, _ in opts))
        choices = [
            (i, sub)
            for size in range(1, len(elems) + 1)
            for sub in combinations(elems, size)
        ]
        per_element.append(choices)

    def walk(k, acc):
        if k == len(per_element):
            yield TiePattern(tuple(acc))
            return
        for choice in per_element[k]:
            yield from walk(k + 1, acc + [choice])

    yield from walk(0, [])


def test_pattern_regions_against_oracles():
    # every tie pattern of two charts, feasibility + boundedness both routes
    for p, basis in ((two_pyramids(), (1, 3)), (snowflake(), (1, 3))):
        ctx = LocalContext(p, basis)
        feasible = 0
        for pat in all_patterns(ctx):
            sys_ = pattern_system(ctx, pat)
            region = region_of(ctx, pat)
            if region.feasible:
                feasible += 1
                assert region.witness is not None
                assert is_bounded(sys_) == recession_01_bounded(sys_)
                assert 1 <= region.dim <= p.m
        assert feasible >= 5


def test_pattern_system_validates_selection():
    ctx = LocalContext(two_pyramids(), (1, 3))
    with pytest.raises(ValueError):
        pattern_system(ctx, TiePattern(((2, (2,)), (4, (1,)))))  # 2 not in C(2,B)-2
    with pytest.raises(ValueError):
        pattern_system(ctx, TiePattern(((4, (1,)),)))  # missing element 2


# ---------------------------------------------------------------------------
# counting formulas


def test_bound_spot_values():
    assert bound_bounded(4, 2, 1) == 2
    assert bound_bounded(4, 2, 2) == 1
    assert bound_total(4, 2, 2) == 3
    assert bound_bounded(6, 3, 1) == 6
    assert bound_bounded(6, 3, 2) == 6
    assert bound_bounded(6, 3, 3) == 1


def test_bound_tables_match_direct_binomials():
    for n, m in ((4, 2), (6, 3), (8, 4)):
        for i in range(1, m + 1):
            assert bound_bounded(n, m, i) == math.comb(n - i - 1, i - 1) * math.comb(
                n - 2 * i, m - i
            )
            assert bound_total(n, m, i) == math.comb(n - i - 1, m - i) * math.comb(
                n - 1, i - 1
            )


def test_mixed_counts_at_k0_match_lattice_points():
    # k = 0 counts are the lattice points of the dilated simplex s * D_{r-1}
    for s, r in ((3, 3), (2, 2), (4, 2), (2, 4), (5, 3)):
        total, interior = lattice_simplex_counts(s, r)
        assert mixed_total_count(s, r, 0) == total
        assert mixed_interior_count(s, r, 0) == interior
    assert mixed_total_count(3, 3, 0) == 10
    assert mixed_interior_count(3, 3, 0) == 1


def test_caps_equal_fine_counts_under_substitution():
    # two formula families, one via binomial caps and one via multinomials;
    # they must agree wherever both are defined (the caps are tight)
    for n in range(3, 11):
        for m in range(2, n):
            s, r = n - m, m
            for i in range(1, m + 1):
                k = m - i
                assert bound_bounded(n, m, i) == mixed_interior_count(s, r, k)
                assert bound_total(n, m, i) == mixed_total_count(s, r, k)


def test_local_counts_respect_caps():
    for p in (two_pyramids(), snowflake(), uniform_zero(5, 2)):
        for basis in p.underlying_matroid().bases:
            fv = f_vector(enumerate_local_cells(LocalContext(p, basis)), p.m)
            for i in range(1, p.m + 1):
                assert fv.total[i - 1] <= bound_total(p.n, p.m, i)
                assert fv.bounded[i - 1] <= bound_bounded(p.n, p.m, i)


# ---------------------------------------------------------------------------
# facet bound and adjacency export


def test_facet_bound_on_uniform_fixtures():
    rep = check_facet_bound(two_pyramids())
    assert rep.facet_cells == 2
    assert rep.bound == 2
    assert rep.ok
    rep = check_facet_bound(snowflake())
    assert rep.facet_cells == 4
    assert rep.bound == math.comb(4, 1)
    assert rep.ok


def test_facet_bound_refuses_partial_support():
    p = PlueckerVector(4, 3, {(1, 2, 3): 0, (1, 2, 4): 0})
    assert p.validate().ok
    with pytest.raises(ValueError):
        check_facet_bound(p)


def test_adjacency_graph_example1():
    cells = enumerate_cells(two_pyramids())
    nodes, edges, rays = adjacency_graph(cells)
    assert len(nodes) == 2
    assert len(edges) == 1
    assert len(rays) == 4
    dot = adjacency_dot(cells)
    assert dot.startswith("graph cells {")
    assert dot.count("--") == 1


def test_adjacency_graph_rejects_rank3():
    with pytest.raises(ValueError):
        v = uniform_zero(4, 3)
        adjacency_graph(enumerate_cells(v))
