"""Finite rings: construction, validation, regularity family, builders."""

import numpy as np
import pytest

from pirick.caps import caps_from_env
from pirick.errors import (BadIdentity, NonAssociative, NotDistributive,
                           NotIdempotent, SizeCapExceeded)
from pirick.families import zmod
from pirick.groups import FinAbGroup
from pirick.rings import (corner_ring, find_ring_isomorphism,
                          is_generalized_left_pp, is_pi_regular, is_regular,
                          is_strongly_pi_regular, jacobson_radical,
                          matrix_ring, nil_radical_check, opposite_ring,
                          power_trail, product_ring, ring_idempotents,
                          ring_make, ring_predicates, ring_units,
                          triangular_ring)

CAPS = caps_from_env()


def test_zmod_multiplication():
    z6 = zmod(6)
    assert z6.order == 6
    assert z6.mul_np[4, 5] == 2          # 20 mod 6
    assert z6.mul_np[3, 3] == 3
    assert z6.one == 1


def test_ring_make_rejects_bad_identity():
    group = FinAbGroup((4,))
    with pytest.raises(BadIdentity):
        ring_make(group, {(0, 0): 1}, 2, CAPS, "bad")


def test_ring_make_rejects_non_associative():
    # force (e*e)*e != e*(e*e) on a rank-2 group by an asymmetric table
    group = FinAbGroup((2, 2))
    constants = {(0, 0): 1, (0, 1): 1, (1, 0): 2, (1, 1): 3}
    with pytest.raises((NonAssociative, NotDistributive, BadIdentity)):
        ring_make(group, constants, 1, CAPS, "broken")


def test_power_trail_reaches_zero_for_nilpotents():
    z8 = zmod(8)
    trail = power_trail(z8, 2)
    assert trail[0] == 2 and trail[-1] == 0
    assert len(trail) == 3               # 2, 4, 0
    assert power_trail(z8, 3)[0] == 3    # unit: trail never hits 0
    assert 0 not in power_trail(z8, 3)


def test_regularity_family_on_z4():
    z4 = zmod(4)
    assert not is_regular(z4).holds      # a=2 has no x with 2x2=2
    v = is_pi_regular(z4)
    assert v.holds
    assert v.witnesses[2] == (2, 0)      # 2^2 = 0 = 0*x*0 with x=0
    s = is_strongly_pi_regular(z4)
    assert s.holds


def test_regularity_family_on_z6():
    z6 = zmod(6)
    v = is_regular(z6)
    assert v.holds
    p = is_pi_regular(z6)
    assert all(n == 1 for n, _ in p.witnesses.values())


def test_generalized_left_pp_witnesses():
    z4 = zmod(4)
    v = is_generalized_left_pp(z4)
    assert v.holds
    n, e = v.witnesses[2]
    # l(2^n) must equal Z4*e exactly
    ln = set(np.nonzero(z4.mul_np[:, int(z4.mul_np[2, 2]) if n == 2 else 2]
                        == 0)[0].tolist())
    gen = set(np.unique(z4.mul_np[:, e]).tolist())
    assert ln == gen


def test_jacobson_radical():
    assert jacobson_radical(zmod(4)).tolist() == [0, 2]
    assert jacobson_radical(zmod(6)).tolist() == [0]
    assert jacobson_radical(zmod(12)).tolist() == [0, 6]
    t2z2 = triangular_ring(zmod(2), 2, CAPS)
    assert jacobson_radical(t2z2).size == 2   # zero and the strict corner


def test_nil_radical_check():
    v = nil_radical_check(zmod(4))
    assert v.holds
    assert set(v.witnesses) == {0, 2}


def test_ring_predicates():
    z4 = zmod(4)
    p4 = ring_predicates(z4)
    assert p4.commutative and p4.local and p4.abelian
    assert not p4.reduced and not p4.domain and not p4.division
    p5 = ring_predicates(zmod(5))
    assert p5.division and p5.domain and p5.reduced
    t2 = ring_predicates(triangular_ring(zmod(2), 2, CAPS))
    assert not t2.commutative and not t2.abelian


def test_idempotents_and_units():
    assert ring_idempotents(zmod(6)).tolist() == [0, 1, 3, 4]
    assert ring_idempotents(zmod(4)).tolist() == [0, 1]
    is_unit, inverse = ring_units(zmod(6))
    assert is_unit.tolist() == [False, True, False, False, False, True]
    assert inverse[5] == 5


def test_matrix_ring_arithmetic():
    m2 = matrix_ring(zmod(2), 2, CAPS)
    assert m2.order == 16
    assert not ring_predicates(m2).commutative
    assert is_regular(m2).holds
    assert ring_idempotents(m2).size == 8


def test_triangular_ring_arithmetic():
    t2 = triangular_ring(zmod(2), 2, CAPS)
    assert t2.order == 8
    assert ring_idempotents(t2).size == 6
    assert not is_regular(t2).holds
    assert is_pi_regular(t2).holds


def test_product_and_opposite():
    z2xz3 = product_ring(zmod(2), zmod(3), CAPS)
    assert z2xz3.order == 6
    assert find_ring_isomorphism(z2xz3, zmod(6)) is not None
    t2 = triangular_ring(zmod(2), 2, CAPS)
    op = opposite_ring(t2, CAPS)
    assert np.array_equal(op.mul_np, t2.mul_np.T)


def test_corner_ring():
    z6 = zmod(6)
    corner, to_parent = corner_ring(z6, 3, CAPS)
    assert corner.order == 2
    assert to_parent == (0, 3)
    assert corner.one == 1
    with pytest.raises(NotIdempotent):
        corner_ring(z6, 2, CAPS)


def test_ring_isomorphism_search():
    # Z_4 and Z_2 x Z_2 have the same order but different additive groups
    klein = product_ring(zmod(2), zmod(2), CAPS)
    assert find_ring_isomorphism(zmod(4), klein) is None
    # an isomorphism is a genuine multiplicative bijection
    z6 = zmod(6)
    phi = find_ring_isomorphism(product_ring(zmod(2), zmod(3), CAPS), z6)
    src = product_ring(zmod(2), zmod(3), CAPS)
    for a in range(6):
        for b in range(6):
            assert phi[src.mul_np[a, b]] == z6.mul_np[phi[a], phi[b]]


def test_construction_cap():
    big = FinAbGroup((5,) * 6)           # order 15625 > construct cap
    with pytest.raises(SizeCapExceeded):
        ring_make(big, {}, 0, CAPS, "too-big")
