import random
from fractions import Fraction

import pytest

from troplin.cells import enumerate_cells, f_vector
from troplin.conical import (
    HeightMatrix,
    augment,
    build_tree,
    is_caterpillar,
    is_conical,
    local_complex_is_fine,
    random_height_matrix,
    tau,
)
from troplin.examples import snowflake, tree_metric_plucker, two_pyramids, uniform_zero
from troplin.matroid import transversal
from troplin.semiring import INF


def small_heights():
    return HeightMatrix(4, (1, 2), [[1, 2], [3, 4]])


def test_height_matrix_shape_checks():
    with pytest.raises(ValueError):
        HeightMatrix(4, (1, 2), [[1, 2]])  # one row per basis element
    with pytest.raises(ValueError):
        HeightMatrix(4, (1, 2), [[1], [2]])  # one column per non-basis element
    with pytest.raises(TypeError):
        HeightMatrix(4, (1, 2), [[0.5, 1], [2, 3]])


def test_height_matrix_accessors():
    v = small_heights()
    assert v.m == 2
    assert v.others == (3, 4)
    assert v.value(2, 3) == 3
    assert v.family(3) == (1, 2)
    v2 = HeightMatrix(4, (1, 2), [[1, INF], [INF, INF]])
    assert v2.families() == {3: (1,), 4: ()}


def test_height_matrix_json_round_trip_and_errors():
    v = small_heights()
    w = HeightMatrix.from_json(v.to_json())
    assert w.n == v.n and w.basis == v.basis and w.rows == v.rows
    with pytest.raises(ValueError, match="V"):
        HeightMatrix.from_json({"n": 4, "B": [1, 2]})
    with pytest.raises(ValueError, match="B"):
        HeightMatrix.from_json({"n": 4, "V": [[1]]})


def test_augment_layout():
    rows = augment(small_heights())
    assert rows[0] == (Fraction(0), INF, Fraction(1), Fraction(2))
    assert rows[1] == (INF, Fraction(0), Fraction(3), Fraction(4))


def test_tau_frozen_small_case():
    p = tau(small_heights())
    assert p.validated
    want = {
        (1, 2): 0, (1, 3): 3, (1, 4): 4,
        (2, 3): 1, (2, 4): 2, (3, 4): 5,
    }
    assert {s: p.entry(s) for s in p.support()} == want


def test_tau_underlying_is_transversal_with_inf_entries():
    v = HeightMatrix(4, (1, 2), [[1, INF], [INF, INF]])
    p = tau(v)
    M = p.underlying_matroid()
    assert M == transversal(4, (1, 2), v.families())
    assert M.loops() == (4,)  # empty family
    assert p.support() == [(1, 2), (2, 3)]


def test_tau_root_basis_always_zero():
    rng = random.Random(99)
    for _ in range(10):
        v = random_height_matrix(5, 2, rng=rng)
        p = tau(v)
        assert p.entry(v.basis) == 0


# ---------------------------------------------------------------------------
# conical detection


def test_is_conical_fixtures():
    assert is_conical(two_pyramids()) == (True, (1, 3))
    assert is_conical(snowflake()) == (False, None)
    flag, witness = is_conical(uniform_zero(5, 2))
    assert flag and witness == (1, 2)


def test_tau_is_conical_at_root():
    v = random_height_matrix(6, 3, rng=random.Random(1729))
    p = tau(v)
    flag, witness = is_conical(p)
    assert flag
    assert witness == (1, 2, 3)


# ---------------------------------------------------------------------------
# rank-2 trees


def caterpillar_6():
    # internal path a-b-c-d; leaves 1,2 at a; 3 at b; 4 at c; 5,6 at d;
    # every edge has length 1, so d(i,j) = 2 + (internal path length)
    pos = {1: 0, 2: 0, 3: 1, 4: 2, 5: 3, 6: 3}
    d = {(i, j): 2 + abs(pos[i] - pos[j])
         for i in range(1, 7) for j in range(i + 1, 7)}
    return tree_metric_plucker(6, d)


def test_tree_example1():
    t = build_tree(two_pyramids())
    assert len(t.node_bases) == 2
    assert t.edges == ((0, 1),)
    assert sorted(t.leaves) == [(1, 0), (2, 0), (3, 1), (4, 1)]
    assert is_caterpillar(t)


def test_tree_star():
    t = build_tree(uniform_zero(5, 2))
    assert len(t.node_bases) == 1
    assert t.edges == ()
    assert sorted(label for label, _ in t.leaves) == [1, 2, 3, 4, 5]
    assert is_caterpillar(t)


def test_tree_snowflake():
    t = build_tree(snowflake())
    assert len(t.node_bases) == 4
    assert len(t.edges) == 3
    degrees = sorted(t.internal_degree(i) for i in range(4))
    assert degrees == [1, 1, 1, 3]
    assert not is_caterpillar(t)


def test_tree_caterpillar_metric():
    p = caterpillar_6()
    assert p.validate().ok
    t = build_tree(p)
    assert len(t.node_bases) == 4
    assert is_caterpillar(t)
    flag, _ = is_conical(p)
    assert flag


def test_caterpillar_iff_conical_on_rank2_fixtures():
    for p in (two_pyramids(), uniform_zero(4, 2), uniform_zero(5, 2),
              snowflake(), caterpillar_6()):
        flag, _ = is_conical(p)
        assert flag == is_caterpillar(build_tree(p))


def test_tree_rejects_higher_rank():
    with pytest.raises(ValueError):
        build_tree(uniform_zero(4, 3))


def test_tree_dot_output():
    dot = build_tree(two_pyramids()).to_dot()
    assert "L1" in dot and "L4" in dot
    assert dot.count("--") == 5  # 1 internal edge + 4 leaf edges


# ---------------------------------------------------------------------------
# generic matrices


def test_random_height_matrix_is_deterministic():
    a = random_height_matrix(5, 2, seed=7)
    b = random_height_matrix(5, 2, seed=7)
    assert a.rows == b.rows
    c = random_height_matrix(5, 2, seed=8)
    assert c.rows != a.rows


def test_random_height_matrix_inf_knockout():
    rng = random.Random(13)
    v = random_height_matrix(5, 2, rng=rng, inf_probability=1.0)
    assert all(x is INF for row in v.rows for x in row)
    p = tau(v)
    assert p.support() == [(1, 2)]


def test_generic_matrices_give_fine_local_complexes():
    rng = random.Random(1729)
    v = random_height_matrix(6, 3, rng=rng)
    p = tau(v)
    assert local_complex_is_fine(p, v.basis)


def test_degenerate_matrix_is_not_fine():
    v = HeightMatrix(6, (1, 2, 3), [[0, 0, 0], [0, 0, 0], [0, 0, 0]])
    p = tau(v)
    assert {s: p.entry(s) for s in p.support()} == {
        s: Fraction(0) for s in p.support()
    }
    assert not local_complex_is_fine(p, (1, 2, 3))


def test_conical_f_vector_attains_bounded_caps():
    from troplin.cells import bound_bounded

    v = random_height_matrix(6, 3, rng=random.Random(1729))
    p = tau(v)
    fv = f_vector(enumerate_cells(p))
    assert fv.bounded == tuple(bound_bounded(6, 3, i) for i in (1, 2, 3))
