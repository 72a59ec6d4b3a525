"""Finite abelian groups: arithmetic, decomposition, embedding."""

import pytest

from pirick.errors import EmptyFactorList, PirickError, ZeroFactor
from pirick.groups import (FinAbGroup, decompose_abelian, elementary_divisors,
                           group_embedding)


def test_cyclic_group_arithmetic():
    g = FinAbGroup((6,))
    assert g.order == 6
    table = g.add_table()
    assert table[2, 5] == 1          # 2 + 5 = 1 mod 6
    assert table[0, 4] == 4
    neg = g.neg_vector()
    assert all(table[i, neg[i]] == 0 for i in range(6))


def test_product_group_lex_indexing():
    g = FinAbGroup((2, 3))
    assert g.order == 6
    # index = 3*c1 + c2 under lexicographic coordinates
    assert g.index_of((1, 2)) == 5
    assert g.tuple_of(4) == (1, 1)
    table = g.add_table()
    # (1,1) + (1,2) = (0,0)
    assert table[4, 5] == 0


def test_element_orders():
    g = FinAbGroup((4, 2))
    orders = [g.element_order(i) for i in range(8)]
    assert orders[0] == 1
    assert sorted(orders) == [1, 2, 2, 2, 4, 4, 4, 4]


def test_group_rejects_bad_factors():
    with pytest.raises(EmptyFactorList):
        FinAbGroup(())
    with pytest.raises(ZeroFactor):
        FinAbGroup((3, 0))


def test_elementary_divisors_canonicalization():
    # Z_6 = Z_2 x Z_3, so both present the same elementary divisors
    assert elementary_divisors((6,)) == elementary_divisors((2, 3))
    # Z_4 x Z_6 = Z_2 x Z_12 (both are Z_2 x Z_4 x Z_3)
    assert elementary_divisors((4, 6)) == elementary_divisors((2, 12)) == (2, 12)
    assert elementary_divisors((4,)) != elementary_divisors((2, 2))
    assert elementary_divisors((1, 5)) == elementary_divisors((5,))


def _factors_of(gens):
    return tuple(order for _, order in gens)


def test_decompose_abelian_recovers_invariant_factors():
    # labels form Z_2 x Z_6 presented as pairs with componentwise addition
    labels = [(a, b) for a in range(2) for b in range(6)]
    add = lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 6)
    gens = decompose_abelian(labels, add, (0, 0))
    assert elementary_divisors(_factors_of(gens)) == elementary_divisors((2, 6))


def test_decompose_abelian_klein_vs_cyclic():
    cyclic = decompose_abelian(list(range(4)), lambda x, y: (x + y) % 4, 0)
    assert elementary_divisors(_factors_of(cyclic)) == elementary_divisors((4,))
    klein = [(a, b) for a in range(2) for b in range(2)]
    add = lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2)
    kf = decompose_abelian(klein, add, (0, 0))
    assert elementary_divisors(_factors_of(kf)) == elementary_divisors((2, 2))


def test_group_embedding_round_trip():
    labels = ["zero", "a", "b", "ab"]
    table = {
        ("zero", "zero"): "zero", ("zero", "a"): "a", ("zero", "b"): "b",
        ("zero", "ab"): "ab", ("a", "a"): "zero", ("a", "b"): "ab",
        ("a", "ab"): "b", ("b", "b"): "zero", ("b", "ab"): "a",
        ("ab", "ab"): "zero",
    }
    add = lambda x, y: table.get((x, y)) or table[(y, x)]
    group, to_index, from_label = group_embedding(labels, add, "zero")
    assert group.order == 4
    assert to_index["zero"] == 0
    # embedding is a homomorphism
    tbl = group.add_table()
    for x in labels:
        for y in labels:
            assert tbl[to_index[x], to_index[y]] == to_index[add(x, y)]
    assert [from_label[to_index[x]] for x in labels] == labels


def test_decompose_rejects_non_group():
    with pytest.raises(PirickError):
        decompose_abelian([0, 1, 2], lambda x, y: min(x + y, 2), 0)
