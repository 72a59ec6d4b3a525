"""Finite associative rings with identity, as explicit tables.

A FiniteRing is a FinAbGroup plus multiplication.  Multiplication is given
by structure constants on the additive basis and extended bilinearly to a
full (order x order) table, which is then validated (identity laws,
associativity, distributivity).  Elements are the group's integer indices,
so every ring-theoretic scan below is a vectorized numpy pass over tables.

Also here: the regularity family of ring properties (regular, pi-regular,
strongly pi-regular, generalized left principally-projective), classical
predicates (local, division, domain, reduced, abelian, commutative), the
Jacobson radical, and ring constructions (corner, matrix, triangular,
product, opposite) plus isomorphism search.
"""

from __future__ import annotations

import dataclasses
import itertools

import numpy as np

from .caps import Caps, DEFAULT_CAPS
from .errors import (BadIdentity, NonAssociative, NotDistributive,
                     NotIdempotent, PirickError, SizeCapExceeded)
from .groups import FinAbGroup, elementary_divisors, group_embedding

_RNG_SEED = 20260814
_RANDOM_TRIPLES = 10_000


@dataclasses.dataclass
class Verdict:
    """Outcome of a property decision.

    holds:          whether the property holds.
    witnesses:      per-element (or per-map) certificates when it holds.
    counterexample: a concrete failing element/tuple when it does not.
    """

    holds: bool
    witnesses: dict = dataclasses.field(default_factory=dict)
    counterexample: object = None


class FiniteRing:
    """An associative unital ring on a FinAbGroup, with full tables."""

    __slots__ = ("add_group", "one", "constants", "name", "mul_np", "_memo")

    def __init__(self, add_group, one, constants, mul_np, name):
        self.add_group = add_group
        self.one = int(one)
        self.constants = dict(constants)
        self.mul_np = mul_np
        self.name = name
        self._memo = {}

    @property
    def order(self) -> int:
        return self.add_group.order

    def add(self, i: int, j: int) -> int:
        return int(self.add_group.add_table()[i, j])

    def mul(self, i: int, j: int) -> int:
        return int(self.mul_np[i, j])

    def neg(self, i: int) -> int:
        return int(ring_neg(self)[i])

    def __repr__(self) -> str:
        return f"FiniteRing({self.name!r}, order={self.order})"


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def _bilinear_table(add_group: FinAbGroup, constants: dict) -> np.ndarray:
    """Extend basis structure constants to the full multiplication table."""
    n = add_group.order
    k = len(add_group.factors)
    facs = np.array(add_group.factors, dtype=np.int64)
    strides = np.array(add_group.strides, dtype=np.int64)
    cmat = np.zeros((k, k, k), dtype=np.int64)
    for (i, j), c in constants.items():
        cmat[i, j, :] = add_group.tuple_of(c)
    coords = add_group.coords_matrix()
    left = np.einsum("pi,ijl->pjl", coords, cmat)  # (n, k, k)
    out = np.empty((n, n), dtype=np.int32)
    chunk = max(1, (1 << 22) // max(1, n * k))
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        prod = np.einsum("qj,pjl->pql", coords, left[lo:hi])
        out[lo:hi] = ((prod % facs) * strides).sum(axis=2).astype(np.int32)
    return out


def _validate_constants(add_group: FinAbGroup, constants: dict):
    k = len(add_group.factors)
    n = add_group.order
    for (i, j), c in constants.items():
        if not (0 <= i < k and 0 <= j < k):
            raise PirickError(f"structure constant key ({i},{j}) out of "
                              f"range for {k} basis elements")
        if not (0 <= c < n):
            raise PirickError(f"structure constant value {c} out of range "
                              f"for order {n}")
        # For the bilinear extension to be additive, the additive order of
        # b_i * b_j must divide the orders of b_i and of b_j.
        for side in (i, j):
            m = add_group.factors[side]
            if add_group.scale(c, m) != 0:
                b_other = add_group.basis_index(j if side == i else i)
                b_side = add_group.basis_index(side)
                triple = (add_group.scale(b_side, m - 1), b_side, b_other)
                raise NotDistributive(triple)


def _validate_ring(ring: FiniteRing, caps: Caps):
    mul = ring.mul_np
    n = ring.order
    idx = np.arange(n, dtype=np.int32)

    bad = np.nonzero(mul[ring.one, :] != idx)[0]
    if bad.size:
        raise BadIdentity(int(bad[0]))
    bad = np.nonzero(mul[:, ring.one] != idx)[0]
    if bad.size:
        raise BadIdentity(int(bad[0]))

    add = ring.add_group.add_table()
    if n <= caps.scan:
        left = mul[mul, :]           # (a,b,c) -> (a*b)*c
        right = mul[:, mul]          # (a,b,c) -> a*(b*c)
        if not np.array_equal(left, right):
            a, b, c = np.argwhere(left != right)[0]
            raise NonAssociative((int(a), int(b), int(c)))
        dl = mul[:, add]             # a*(b+c)
        dr = add[mul[:, :, None], mul[:, None, :]]  # a*b + a*c
        if not np.array_equal(dl, dr):
            a, b, c = np.argwhere(dl != dr)[0]
            raise NotDistributive((int(a), int(b), int(c)))
        rl = mul[add, :]             # (a+b)*c
        rr = add[mul[:, None, :], mul[None, :, :]]  # a*c + b*c
        if not np.array_equal(rl, rr):
            a, b, c = np.argwhere(rl != rr)[0]
            raise NotDistributive((int(a), int(b), int(c)))
    else:
        # Multiplication is bilinear by construction, so associativity of
        # all basis triples implies associativity everywhere; random triples
        # guard against table-construction bugs.
        basis = [ring.add_group.basis_index(j)
                 for j in range(len(ring.add_group.factors))]
        for a, b, c in itertools.product(basis, repeat=3):
            if mul[mul[a, b], c] != mul[a, mul[b, c]]:
                raise NonAssociative((int(a), int(b), int(c)))
        rng = np.random.default_rng(_RNG_SEED)
        trip = rng.integers(0, n, size=(_RANDOM_TRIPLES, 3))
        a, b, c = trip[:, 0], trip[:, 1], trip[:, 2]
        bad = np.nonzero(mul[mul[a, b], c] != mul[a, mul[b, c]])[0]
        if bad.size:
            t = trip[bad[0]]
            raise NonAssociative((int(t[0]), int(t[1]), int(t[2])))
        bad = np.nonzero(mul[a, add[b, c]] != add[mul[a, b], mul[a, c]])[0]
        if bad.size:
            t = trip[bad[0]]
            raise NotDistributive((int(t[0]), int(t[1]), int(t[2])))
        bad = np.nonzero(mul[add[a, b], c] != add[mul[a, c], mul[b, c]])[0]
        if bad.size:
            t = trip[bad[0]]
            raise NotDistributive((int(t[0]), int(t[1]), int(t[2])))


def ring_make(add_group: FinAbGroup, constants: dict, one: int,
              caps: Caps = DEFAULT_CAPS, name: str = "R") -> FiniteRing:
    """Build and fully validate a finite ring from structure constants.

    `constants` maps (i, j) -> element index of (basis_i * basis_j); missing
    pairs default to zero.  `one` is the element index of the identity.
    """
    if add_group.order > caps.construct:
        raise SizeCapExceeded("ring construction", add_group.order,
                              caps.construct)
    _validate_constants(add_group, constants)
    mul = _bilinear_table(add_group, constants)
    ring = FiniteRing(add_group, one, constants, mul, name)
    _validate_ring(ring, caps)
    return ring


# ---------------------------------------------------------------------------
# cached per-ring data
# ---------------------------------------------------------------------------


def ring_neg(ring: FiniteRing) -> np.ndarray:
    if "neg" not in ring._memo:
        ring._memo["neg"] = ring.add_group.neg_vector()
    return ring._memo["neg"]


def ring_idempotents(ring: FiniteRing) -> np.ndarray:
    """Sorted indices of all elements with e*e == e."""
    if "idempotents" not in ring._memo:
        n = ring.order
        idx = np.arange(n, dtype=np.int32)
        diag = ring.mul_np[idx, idx]
        ring._memo["idempotents"] = np.nonzero(diag == idx)[0].astype(np.int32)
    return ring._memo["idempotents"]


def ring_units(ring: FiniteRing):
    """(unit_mask, inverse) arrays: two-sided units and their inverses."""
    if "units" not in ring._memo:
        mul = ring.mul_np
        both = (mul == ring.one) & (mul.T == ring.one)
        mask = both.any(axis=1)
        inv = np.where(mask, both.argmax(axis=1), -1).astype(np.int64)
        ring._memo["units"] = (mask, inv)
    return ring._memo["units"]


def jacobson_radical(ring: FiniteRing) -> np.ndarray:
    """Sorted indices of J(R) = {a : 1 - r*a is a unit for every r}."""
    if "jacobson" not in ring._memo:
        mul = ring.mul_np
        add = ring.add_group.add_table()
        neg = ring_neg(ring)
        unit_mask, _ = ring_units(ring)
        candidates = add[ring.one, neg[mul]]     # [r, a] -> 1 - r*a
        in_j = unit_mask[candidates].all(axis=0)
        ring._memo["jacobson"] = np.nonzero(in_j)[0].astype(np.int32)
    return ring._memo["jacobson"]


def power_trail(ring: FiniteRing, a: int) -> list:
    """Distinct powers [a, a^2, ..., a^m] up to the first repeated value.

    Every positive power of `a` equals one of these, so any exponent search
    over a^n only needs the trail; the exponent of trail[i] is i + 1.
    """
    mul = ring.mul_np
    trail = [int(a)]
    seen = {int(a)}
    cur = int(a)
    while True:
        cur = int(mul[cur, a])
        if cur in seen:
            return trail
        seen.add(cur)
        trail.append(cur)


# ---------------------------------------------------------------------------
# regularity family
# ---------------------------------------------------------------------------


def is_regular(ring: FiniteRing) -> Verdict:
    """Every a has x with a*x*a == a.  Witness: a -> x."""
    mul = ring.mul_np
    witnesses = {}
    for a in range(ring.order):
        hits = np.nonzero(mul[mul[a, :], a] == a)[0]
        if hits.size == 0:
            return Verdict(False, witnesses, counterexample=a)
        witnesses[a] = int(hits[0])
    return Verdict(True, witnesses)


def is_pi_regular(ring: FiniteRing) -> Verdict:
    """Every a has n >= 1 and x with a^n * x * a^n == a^n.  Witness: a -> (n, x)."""
    mul = ring.mul_np
    witnesses = {}
    for a in range(ring.order):
        found = None
        for pos, an in enumerate(power_trail(ring, a)):
            hits = np.nonzero(mul[mul[an, :], an] == an)[0]
            if hits.size:
                found = (pos + 1, int(hits[0]))
                break
        if found is None:
            return Verdict(False, witnesses, counterexample=a)
        witnesses[a] = found
    return Verdict(True, witnesses)


def is_strongly_pi_regular(ring: FiniteRing) -> Verdict:
    """Every a has n with a^n in a^(n+1)R and also some m with a^m in R*a^(m+1).

    Both one-sided conditions are checked independently for every element.
    The stored witness is the right-side certificate a -> (n, x) with
    a^(n+1) * x == a^n; a failure on either side is a counterexample
    (a, 'right'|'left').
    """
    mul = ring.mul_np
    witnesses = {}
    for a in range(ring.order):
        right = None
        left_ok = False
        for pos, an in enumerate(power_trail(ring, a)):
            an1 = int(mul[a, an])
            if right is None:
                hits = np.nonzero(mul[an1, :] == an)[0]
                if hits.size:
                    right = (pos + 1, int(hits[0]))
            if not left_ok and (mul[:, an1] == an).any():
                left_ok = True
            if right is not None and left_ok:
                break
        if right is None:
            return Verdict(False, witnesses, counterexample=(a, "right"))
        if not left_ok:
            return Verdict(False, witnesses, counterexample=(a, "left"))
        witnesses[a] = right
    return Verdict(True, witnesses)


def left_annihilator_key(ring: FiniteRing, a: int) -> bytes:
    """Canonical key for the set {r : r*a == 0}."""
    return np.packbits(ring.mul_np[:, a] == 0).tobytes()


def principal_left_ideal_keys(ring: FiniteRing) -> dict:
    """Map from canonical set-key of R*e to the smallest such idempotent e."""
    if "Re_keys" not in ring._memo:
        out = {}
        n = ring.order
        for e in ring_idempotents(ring):
            member = np.zeros(n, dtype=bool)
            member[ring.mul_np[:, e]] = True
            key = np.packbits(member).tobytes()
            if key not in out:
                out[key] = int(e)
        ring._memo["Re_keys"] = out
    return ring._memo["Re_keys"]


def is_generalized_left_pp(ring: FiniteRing) -> Verdict:
    """Every a has n >= 1 with l(a^n) == R*e for an idempotent e.

    l(a^n) is the left annihilator {r : r * a^n == 0}.  Witness: a -> (n, e)
    with the smallest exponent first, then the smallest idempotent.
    """
    keys = principal_left_ideal_keys(ring)
    witnesses = {}
    for a in range(ring.order):
        found = None
        for pos, an in enumerate(power_trail(ring, a)):
            key = left_annihilator_key(ring, an)
            if key in keys:
                found = (pos + 1, keys[key])
                break
        if found is None:
            return Verdict(False, witnesses, counterexample=a)
        witnesses[a] = found
    return Verdict(True, witnesses)


# ---------------------------------------------------------------------------
# classical predicates
# ---------------------------------------------------------------------------


@dataclasses.dataclass
class RingPredicates:
    commutative: bool
    reduced: bool
    abelian: bool          # all idempotents central
    domain: bool           # no nonzero zero-divisors
    local: bool            # every non-unit lies in J(R)
    division: bool         # every nonzero element is a unit
    witnesses: dict


def ring_predicates(ring: FiniteRing) -> RingPredicates:
    if "predicates" in ring._memo:
        return ring._memo["predicates"]
    mul = ring.mul_np
    n = ring.order
    wit = {}

    commutative = bool(np.array_equal(mul, mul.T))
    if not commutative:
        a, b = np.argwhere(mul != mul.T)[0]
        wit["not_commutative"] = (int(a), int(b))

    idx = np.arange(n, dtype=np.int32)
    diag = mul[idx, idx]
    nilsq = np.nonzero((diag == 0) & (idx != 0))[0]
    reduced = nilsq.size == 0
    if not reduced:
        wit["square_zero"] = int(nilsq[0])

    abelian = True
    for e in ring_idempotents(ring):
        bad = np.nonzero(mul[e, :] != mul[:, e])[0]
        if bad.size:
            abelian = False
            wit["noncentral_idempotent"] = (int(e), int(bad[0]))
            break

    zero_prod = mul == 0
    zero_prod[0, :] = False
    zero_prod[:, 0] = False
    domain = not zero_prod.any()
    if not domain:
        a, b = np.argwhere(zero_prod)[0]
        wit["zero_divisors"] = (int(a), int(b))

    unit_mask, _ = ring_units(ring)
    jac = set(jacobson_radical(ring).tolist())
    nonunits = np.nonzero(~unit_mask)[0]
    outside = [int(a) for a in nonunits if int(a) not in jac]
    local = not outside
    if not local:
        wit["nonunit_outside_radical"] = outside[0]

    nonzero_nonunit = np.nonzero(~unit_mask & (idx != 0))[0]
    division = nonzero_nonunit.size == 0
    if not division:
        wit["nonzero_nonunit"] = int(nonzero_nonunit[0])

    preds = RingPredicates(commutative, reduced, abelian, domain, local,
                           division, wit)
    ring._memo["predicates"] = preds
    return preds


def nil_radical_check(ring: FiniteRing) -> Verdict:
    """Check every element of J(R) is nilpotent.  Witness: a -> nilpotency index."""
    witnesses = {}
    for a in jacobson_radical(ring).tolist():
        trail = power_trail(ring, a)
        if 0 not in trail:
            return Verdict(False, witnesses, counterexample=int(a))
        witnesses[int(a)] = trail.index(0) + 1
    return Verdict(True, witnesses)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def corner_ring(ring: FiniteRing, e: int, caps: Caps = DEFAULT_CAPS,
                name: str = None):
    """The corner ring e*R*e with identity e.

    Returns (corner, to_parent) where to_parent[i] is the parent-ring index
    of corner element i.
    """
    mul = ring.mul_np
    if mul[e, e] != e:
        raise NotIdempotent(e)
    labels = np.unique(mul[mul[e, :], e]).tolist()
    add = ring.add_group.add_table()
    group, to_index, from_label = group_embedding(
        labels, lambda x, y: int(add[x, y]), 0)
    constants = {}
    k = len(group.factors)
    for i in range(k):
        pi = from_label[group.basis_index(i)]
        for j in range(k):
            pj = from_label[group.basis_index(j)]
            constants[(i, j)] = to_index[int(mul[pi, pj])]
    if name is None:
        name = f"{ring.name}_c{e}"
    corner = ring_make(group, constants, to_index[int(e)], caps, name)
    return corner, tuple(from_label)


def _matrix_like_ring(ring: FiniteRing, positions: list, k: int,
                      caps: Caps, name: str) -> FiniteRing:
    """Ring of k x k matrices over `ring` supported on `positions`.

    positions is a list of (row, col) pairs closed under the matrix product
    pattern (row1, col2) whenever col1 == row2.
    """
    base = ring.add_group
    kb = len(base.factors)
    total_order = ring.order ** len(positions)
    if total_order > caps.construct:
        raise SizeCapExceeded(f"matrix ring over {ring.name}", total_order,
                              caps.construct)
    factors = []
    for _ in positions:
        factors.extend(base.factors)
    group = FinAbGroup(factors)
    pos_index = {pq: s for s, pq in enumerate(positions)}

    def embed(slot: int, parent_elt: int) -> int:
        coords = [0] * len(factors)
        for t, c in enumerate(base.tuple_of(parent_elt)):
            coords[slot * kb + t] = c
        return group.index_of(coords)

    constants = {}
    for s1, (p1, q1) in enumerate(positions):
        for s2, (p2, q2) in enumerate(positions):
            if q1 != p2:
                continue
            target = pos_index.get((p1, q2))
            if target is None:
                raise PirickError(f"matrix positions not closed: "
                                  f"({p1},{q1})*({p2},{q2})")
            for m1 in range(kb):
                for m2 in range(kb):
                    c = ring.constants.get((m1, m2), 0)
                    if c:
                        constants[(s1 * kb + m1, s2 * kb + m2)] = \
                            embed(target, c)
    one_coords = [0] * len(factors)
    one_tuple = base.tuple_of(ring.one)
    for s, (p, q) in enumerate(positions):
        if p == q:
            for t, c in enumerate(one_tuple):
                one_coords[s * kb + t] = c
    return ring_make(group, constants, group.index_of(one_coords), caps, name)


def matrix_ring(ring: FiniteRing, k: int, caps: Caps = DEFAULT_CAPS,
                name: str = None) -> FiniteRing:
    """Full k x k matrix ring over `ring`."""
    positions = [(p, q) for p in range(k) for q in range(k)]
    if name is None:
        name = f"m{k}{ring.name}"
    return _matrix_like_ring(ring, positions, k, caps, name)


def triangular_ring(ring: FiniteRing, k: int, caps: Caps = DEFAULT_CAPS,
                    name: str = None) -> FiniteRing:
    """Upper-triangular k x k matrix ring over `ring`."""
    positions = [(p, q) for p in range(k) for q in range(k) if p <= q]
    if name is None:
        name = f"t{k}{ring.name}"
    return _matrix_like_ring(ring, positions, k, caps, name)


def product_ring(r1: FiniteRing, r2: FiniteRing, caps: Caps = DEFAULT_CAPS,
                 name: str = None) -> FiniteRing:
    """Direct product r1 x r2 with componentwise operations."""
    k1 = len(r1.add_group.factors)
    k2 = len(r2.add_group.factors)
    group = FinAbGroup(r1.add_group.factors + r2.add_group.factors)

    def embed1(e):
        return group.index_of(r1.add_group.tuple_of(e) + (0,) * k2)

    def embed2(e):
        return group.index_of((0,) * k1 + r2.add_group.tuple_of(e))

    constants = {}
    for (i, j), c in r1.constants.items():
        if c:
            constants[(i, j)] = embed1(c)
    for (i, j), c in r2.constants.items():
        if c:
            constants[(k1 + i, k1 + j)] = embed2(c)
    one = group.index_of(r1.add_group.tuple_of(r1.one)
                         + r2.add_group.tuple_of(r2.one))
    if name is None:
        name = f"{r1.name}x{r2.name}"
    return ring_make(group, constants, one, caps, name)


def opposite_ring(ring: FiniteRing, caps: Caps = DEFAULT_CAPS,
                  name: str = None) -> FiniteRing:
    """Same additive group, multiplication reversed."""
    constants = {(j, i): c for (i, j), c in ring.constants.items()}
    if name is None:
        name = f"{ring.name}_op"
    return ring_make(ring.add_group, constants, ring.one, caps, name)


def find_ring_isomorphism(r1: FiniteRing, r2: FiniteRing):
    """Search for a unital ring isomorphism r1 -> r2.

    Returns the full index map as a tuple (phi[i] = image of i), or None.
    Deterministic: basis images are tried in increasing element order.

    The search assigns images to additive basis elements one at a time,
    extending the partial additive map and pruning on injectivity and on
    every product that already lands inside the partial domain.
    """
    if r1.order != r2.order:
        return None
    g1, g2 = r1.add_group, r2.add_group
    if elementary_divisors(g1.factors) != elementary_divisors(g2.factors):
        return None
    if ring_idempotents(r1).size != ring_idempotents(r2).size:
        return None
    if int(ring_units(r1)[0].sum()) != int(ring_units(r2)[0].sum()):
        return None
    k = len(g1.factors)
    n = r1.order
    mul1, mul2 = r1.mul_np, r2.mul_np
    add1, add2 = g1.add_table(), g2.add_table()

    by_order = {}
    for x in range(n):
        by_order.setdefault(g2.element_order(x), []).append(x)

    def check_products(fwd, new_elts):
        """Products touching a new element that land in the domain must agree."""
        for x in new_elts:
            fx = fwd[x]
            for y, fy in fwd.items():
                p = int(mul1[x, y])
                if p in fwd and fwd[p] != int(mul2[fx, fy]):
                    return False
                p = int(mul1[y, x])
                if p in fwd and fwd[p] != int(mul2[fy, fx]):
                    return False
        return True

    def extend(j, fwd):
        if len(fwd) == n:
            if fwd[r1.one] != r2.one:
                return None
            return tuple(fwd[i] for i in range(n))
        if j == k:
            return None
        bj = g1.basis_index(j)
        oj = g1.factors[j]
        if oj == 1:
            return extend(j + 1, fwd)
        for img in by_order.get(g1.element_order(bj), []):
            new_fwd = dict(fwd)
            new_elts = []
            ok = True
            for src, dst in fwd.items():
                acc_s, acc_d = src, dst
                for _ in range(1, oj):
                    acc_s = int(add1[acc_s, bj])
                    acc_d = int(add2[acc_d, img])
                    if acc_s in new_fwd:
                        ok = False
                        break
                    new_fwd[acc_s] = acc_d
                    new_elts.append(acc_s)
                if not ok:
                    break
            if not ok:
                continue
            if len(set(new_fwd.values())) != len(new_fwd):
                continue
            if r1.one in new_fwd and new_fwd[r1.one] != r2.one:
                continue
            if not check_products(new_fwd, new_elts):
                continue
            result = extend(j + 1, new_fwd)
            if result is not None:
                return result
        return None

    return extend(0, {0: 0})
