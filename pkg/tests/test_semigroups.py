import numpy as np
import pytest

from germlab.errors import NonUniqueInverse, StructureError, ZeroRequired
from germlab.semigroups import (
    centralizer,
    h_classes,
    idempotents,
    is_clifford,
    is_e_unitary,
    is_normal_subsemigroup,
    is_zero_e_unitary,
    lower_intersection_generators,
    natural_leq,
    validate_inverse_semigroup,
)


def compose_partial(f: dict, g: dict) -> dict:
    """f after g, on the largest domain where the chain is defined."""
    return {x: f[g[x]] for x in g if g[x] in f}


def partial_bijections(points):
    """All injective partial maps on `points`, as dicts."""
    from itertools import combinations, permutations

    out = []
    pts = list(points)
    for k in range(len(pts) + 1):
        for dom in combinations(pts, k):
            for img in permutations(pts, k):
                out.append(dict(zip(dom, img)))
    return out


def table_from_maps(maps):
    index = {tuple(sorted(m.items())): i for i, m in enumerate(maps)}
    n = len(maps)
    table = np.zeros((n, n), dtype=int)
    for i, f in enumerate(maps):
        for j, g in enumerate(maps):
            table[i, j] = index[tuple(sorted(compose_partial(f, g).items()))]
    return table


# Oracle: the five-element Brandt semigroup as partial bijections of {0,1}.
B2_MAPS = [{}, {0: 0}, {1: 1}, {0: 1}, {1: 0}]
B2_TABLE = table_from_maps(B2_MAPS)

Z2_TABLE = [[0, 1], [1, 0]]


def test_cyclic_group_is_valid_with_identity_inverse_map():
    S = validate_inverse_semigroup(Z2_TABLE)
    assert S.inv == (0, 1)
    assert S.zero is None


def test_symmetric_inverse_monoid_on_two_points_from_oracle():
    maps = partial_bijections([0, 1])
    assert len(maps) == 7
    S = validate_inverse_semigroup(table_from_maps(maps))
    assert S.size == 7
    # the empty map is the zero
    assert S.zero is not None


def test_left_zero_table_has_non_unique_inverses():
    with pytest.raises(NonUniqueInverse):
        validate_inverse_semigroup([[0, 0], [1, 1]])


def test_ragged_or_out_of_range_tables_rejected():
    with pytest.raises(StructureError):
        validate_inverse_semigroup([[0, 1], [2, 0]])
    with pytest.raises(StructureError):
        validate_inverse_semigroup(np.zeros((2, 3), dtype=int))


def test_b2_idempotents():
    S = validate_inverse_semigroup(B2_TABLE)
    assert idempotents(S) == {0, 1, 2}


def test_group_has_single_idempotent():
    S = validate_inverse_semigroup(Z2_TABLE)
    assert idempotents(S) == {0}


def test_natural_leq_reflexive_and_zero_below_everything():
    S = validate_inverse_semigroup(B2_TABLE)
    for s in S.elements():
        assert natural_leq(S, s, s)
        assert natural_leq(S, 0, s)  # 0 = s * 0


def test_natural_leq_is_partial_order_exhaustively():
    S = validate_inverse_semigroup(B2_TABLE)
    n = S.size
    for a in range(n):
        for b in range(n):
            if natural_leq(S, a, b) and natural_leq(S, b, a):
                assert a == b
            for c in range(n):
                if natural_leq(S, a, b) and natural_leq(S, b, c):
                    assert natural_leq(S, a, c)


def test_lower_intersection_of_idempotents_is_their_meet():
    S = validate_inverse_semigroup(B2_TABLE)
    for e in idempotents(S):
        for f in idempotents(S):
            assert lower_intersection_generators(S, e, f) == {S.mul(e, f)}


def test_lower_intersection_of_element_with_itself():
    S = validate_inverse_semigroup(B2_TABLE)
    for s in S.elements():
        assert lower_intersection_generators(S, s, s) == {s}


def test_b2_h_classes_are_singletons():
    S = validate_inverse_semigroup(B2_TABLE)
    assert h_classes(S) == ((0,), (1,), (2,), (3,), (4,))


def test_group_is_one_h_class():
    S = validate_inverse_semigroup(Z2_TABLE)
    assert h_classes(S) == ((0, 1),)


def test_h_class_of_idempotent_is_a_group():
    S = validate_inverse_semigroup(B2_TABLE)
    for e in idempotents(S):
        block = next(b for b in h_classes(S) if e in b)
        for a in block:
            assert S.mul(e, a) == a == S.mul(a, e)
            assert S.mul(a, S.inv[a]) == e
            for b in block:
                assert S.mul(a, b) in block


def test_clifford_predicates():
    assert is_clifford(validate_inverse_semigroup(Z2_TABLE))
    assert not is_clifford(validate_inverse_semigroup(B2_TABLE))


def test_e_unitary_group_true_b2_false_but_zero_variant_true():
    G = validate_inverse_semigroup(Z2_TABLE)
    B = validate_inverse_semigroup(B2_TABLE)
    assert is_e_unitary(G)
    assert not is_e_unitary(B)  # 0 sits below the non-idempotents
    assert is_zero_e_unitary(B)
    with pytest.raises(ZeroRequired):
        is_zero_e_unitary(G)


def test_centralizer_of_group_is_whole_group():
    G = validate_inverse_semigroup(Z2_TABLE)
    assert centralizer(G) == frozenset(G.elements())


def test_centralizer_contains_idempotents_and_is_normal():
    S = validate_inverse_semigroup(B2_TABLE)
    Z = centralizer(S)
    assert idempotents(S) <= Z
    assert is_normal_subsemigroup(S, Z)


def test_clifford_iff_centralizer_is_everything():
    for table in (Z2_TABLE, B2_TABLE):
        S = validate_inverse_semigroup(table)
        assert is_clifford(S) == (centralizer(S) == frozenset(S.elements()))
