import json
import random
from itertools import combinations

import pytest

from oracles import brute_circuit_supports, hull_edges
from troplin.matroid import (
    ExchangeError,
    Matroid,
    is_adjacent,
    mask_from_subset,
    subset_from_mask,
    transversal,
)


def test_mask_round_trip():
    assert mask_from_subset((1, 3, 4), 4) == 0b1101
    assert subset_from_mask(0b1101) == (1, 3, 4)
    with pytest.raises(ValueError):
        mask_from_subset((0, 1), 4)
    with pytest.raises(ValueError):
        mask_from_subset((1, 1), 4)
    with pytest.raises(ValueError):
        mask_from_subset((5,), 4)


def test_uniform_matroid_passes_exchange():
    M = Matroid.from_bases(4, list(combinations(range(1, 5), 2)))
    assert M.bases == ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
    assert M.loops() == ()


def test_exchange_failure_reports_witness():
    with pytest.raises(ExchangeError) as info:
        Matroid.from_bases(4, [(1, 2), (3, 4)])
    err = info.value
    assert set(err.a_subset) in ({1, 2}, {3, 4})
    assert err.element in err.a_subset


def test_mixed_sizes_rejected():
    with pytest.raises(ValueError):
        Matroid.from_bases(4, [(1, 2), (1, 2, 3)])
    with pytest.raises(ValueError):
        Matroid.from_bases(4, [])


def test_loops():
    M = Matroid.from_bases(4, [(1, 2), (1, 3), (2, 3)])
    assert M.loops() == (4,)


def test_fundamental_circuit_support_values():
    M = Matroid.from_bases(4, list(combinations(range(1, 5), 2)))
    assert M.fundamental_circuit_support(3, (1, 2)) == (1, 2, 3)
    M2 = Matroid.from_bases(4, [(1, 2, 3), (1, 2, 4)])
    assert M2.fundamental_circuit_support(4, (1, 2, 3)) == (3, 4)
    with pytest.raises(ValueError):
        M2.fundamental_circuit_support(3, (1, 2, 3))  # e inside B
    with pytest.raises(ValueError):
        M2.fundamental_circuit_support(4, (1, 3, 4))  # not a basis


def test_fundamental_circuit_is_minimal_dependent():
    # against brute enumeration of minimal dependent sets
    cases = [
        Matroid.from_bases(4, list(combinations(range(1, 5), 2))),
        Matroid.from_bases(4, [(1, 2, 3), (1, 2, 4)]),
        Matroid.from_bases(5, [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]),
    ]
    for M in cases:
        circuits = brute_circuit_supports(M)
        for B in M.bases:
            for e in range(1, M.n + 1):
                if e in B:
                    continue
                got = M.fundamental_circuit_support(e, B)
                inside = [c for c in circuits if set(c) <= set(B) | {e} and e in c]
                assert len(inside) == 1 and tuple(sorted(inside[0])) == got


def test_equality_and_hashing():
    A = Matroid.from_bases(4, [(1, 2), (1, 3), (2, 3)])
    B = Matroid.from_bases(4, [(2, 3), (1, 3), (1, 2)])
    assert A == B
    assert hash(A) == hash(B)
    assert A != Matroid.from_bases(5, [(1, 2), (1, 3), (2, 3)])


def test_json_round_trip():
    M = Matroid.from_bases(4, [(1, 2), (1, 3), (2, 3)])
    blob = json.dumps(M.to_json())
    assert Matroid.from_json(json.loads(blob)) == M


def test_is_adjacent():
    assert is_adjacent((1, 2), (1, 3))
    assert not is_adjacent((1, 2), (3, 4))
    assert not is_adjacent((1, 2), (1, 2))
    with pytest.raises(ValueError):
        is_adjacent((1, 2), (1, 2, 3))


def test_polytope_edges_are_exactly_adjacent_basis_pairs():
    # hull-edge oracle cross-check on every matroid here with <= 6 elements
    cases = [
        Matroid.from_bases(4, list(combinations(range(1, 5), 2))),
        Matroid.from_bases(5, list(combinations(range(1, 6), 2))),
        Matroid.from_bases(5, list(combinations(range(1, 6), 3))),
        Matroid.from_bases(4, [(1, 2, 3), (1, 2, 4)]),
        Matroid.from_bases(4, [(1, 2), (2, 3), (2, 4)]),
        Matroid.from_bases(6, list(combinations(range(1, 7), 2))),
    ]
    for M in cases:
        pts = [tuple(1 if i in b else 0 for i in range(1, M.n + 1)) for b in M.bases]
        want = {
            frozenset((i, j))
            for i, j in combinations(range(len(M.bases)), 2)
            if is_adjacent(M.bases[i], M.bases[j])
        }
        assert hull_edges(pts) == want


# ---------------------------------------------------------------------------
# transversal construction


def test_transversal_full_families_gives_uniform():
    M = transversal(4, (1, 2), {3: (1, 2), 4: (1, 2)})
    assert M.bases == tuple(combinations(range(1, 5), 2))


def test_transversal_single_representative():
    # 3 and 4 both depend on representative 1 alone: a subset containing
    # either one must keep 1 free for it, so {1,3}, {1,4} and {3,4} all fail
    M = transversal(4, (1, 2), {3: (1,), 4: (1,)})
    assert M.bases == ((1, 2), (2, 3), (2, 4))


def test_transversal_empty_family_makes_loop():
    M = transversal(3, (1, 2), {3: ()})
    assert M.bases == ((1, 2),)
    assert M.loops() == (3,)


def test_transversal_rejects_bad_families():
    with pytest.raises(ValueError):
        transversal(4, (1, 2), {3: (3,)})  # representative outside B
    with pytest.raises(ValueError):
        transversal(4, (1, 2), {2: (1,)})  # keyed by a basis element


def test_transversal_matches_brute_sdr():
    # oracle: try all injections A\B -> B\A directly
    from itertools import permutations

    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(2, 6)
        m = rng.randint(1, n)
        B = tuple(sorted(rng.sample(range(1, n + 1), m)))
        fams = {}
        for j in range(1, n + 1):
            if j in B:
                continue
            fams[j] = tuple(sorted(rng.sample(B, rng.randint(0, m))))
        M = transversal(n, B, fams)
        expect = []
        for A in combinations(range(1, n + 1), m):
            outside = [j for j in A if j not in B]
            free = [b for b in B if b not in A]
            ok = False
            for assign in permutations(free, len(outside)):
                if all(b in fams[j] for j, b in zip(outside, assign)):
                    ok = True
                    break
            if not outside:
                ok = True
            if ok:
                expect.append(A)
        assert M.bases == tuple(expect)
        assert B in M.bases
