"""Finite abelian groups with fixed coordinates.

A FinAbGroup is a product of cyclic groups Z_{n1} x ... x Z_{nk}.  Elements
are integer indices 0 .. order-1 in lexicographic order of their coordinate
tuples (index 0 is always the zero element), which keeps every downstream
table (addition, multiplication, module action) a plain numpy array indexed
by small ints.

The module also provides `decompose_abelian` / `group_embedding`: given an
abstract finite abelian group presented only by labels and an addition
callback, find a cyclic decomposition and re-present the group as a
FinAbGroup.  This is how endomorphism rings, corner rings, quotient modules
and submodule modules acquire coordinates.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from .errors import EmptyFactorList, PirickError, ZeroFactor


class FinAbGroup:
    """Z_{n1} x ... x Z_{nk} with elements indexed lexicographically."""

    __slots__ = ("factors", "order", "strides", "_add_table", "_coords")

    def __init__(self, factors: Sequence[int]):
        factors = tuple(int(n) for n in factors)
        if not factors:
            raise EmptyFactorList("a group needs at least one cyclic factor")
        for n in factors:
            if n < 1:
                raise ZeroFactor(f"cyclic factor {n} is not a positive integer")
        self.factors = factors
        order = 1
        for n in factors:
            order *= n
        self.order = order
        strides = [0] * len(factors)
        acc = 1
        for i in range(len(factors) - 1, -1, -1):
            strides[i] = acc
            acc *= factors[i]
        self.strides = tuple(strides)
        self._add_table = None
        self._coords = None

    # -- element <-> index ------------------------------------------------

    def tuple_of(self, index: int) -> tuple:
        """Coordinate tuple of the element with the given index."""
        coords = []
        for n, s in zip(self.factors, self.strides):
            coords.append((index // s) % n)
        return tuple(coords)

    def index_of(self, coords: Sequence[int]) -> int:
        """Index of the element with the given coordinates (reduced mod n_i)."""
        idx = 0
        for c, n, s in zip(coords, self.factors, self.strides):
            idx += (int(c) % n) * s
        return idx

    def basis_index(self, j: int) -> int:
        """Index of the j-th standard generator (1 in slot j, 0 elsewhere)."""
        if self.factors[j] == 1:
            return 0
        return self.strides[j]

    # -- arithmetic --------------------------------------------------------

    def add(self, i: int, j: int) -> int:
        a, b = self.tuple_of(i), self.tuple_of(j)
        return self.index_of(x + y for x, y in zip(a, b))

    def neg(self, i: int) -> int:
        return self.index_of(-x for x in self.tuple_of(i))

    def scale(self, i: int, k: int) -> int:
        return self.index_of(k * x for x in self.tuple_of(i))

    def element_order(self, i: int) -> int:
        """Additive order of element i (1 for the zero element)."""
        out = 1
        for c, n in zip(self.tuple_of(i), self.factors):
            if c:
                out = math.lcm(out, n // math.gcd(n, c))
        return out

    # -- bulk tables -------------------------------------------------------

    def coords_matrix(self) -> np.ndarray:
        """(order, k) int64 matrix whose row i is tuple_of(i)."""
        if self._coords is None:
            n = self.order
            k = len(self.factors)
            mat = np.empty((n, k), dtype=np.int64)
            idx = np.arange(n, dtype=np.int64)
            for j, (f, s) in enumerate(zip(self.factors, self.strides)):
                mat[:, j] = (idx // s) % f
            self._coords = mat
        return self._coords

    def add_table(self) -> np.ndarray:
        """(order, order) int32 table T with T[i, j] = index of element i + j."""
        if self._add_table is None:
            coords = self.coords_matrix()
            facs = np.array(self.factors, dtype=np.int64)
            strides = np.array(self.strides, dtype=np.int64)
            n = self.order
            out = np.empty((n, n), dtype=np.int32)
            # Chunk rows so the (chunk, n, k) intermediate stays small.
            chunk = max(1, (1 << 21) // max(1, n))
            for lo in range(0, n, chunk):
                hi = min(n, lo + chunk)
                sums = (coords[lo:hi, None, :] + coords[None, :, :]) % facs
                out[lo:hi] = (sums * strides).sum(axis=2).astype(np.int32)
            self._add_table = out
        return self._add_table

    def neg_vector(self) -> np.ndarray:
        """(order,) int32 vector mapping each index to the index of its negative."""
        coords = self.coords_matrix()
        facs = np.array(self.factors, dtype=np.int64)
        strides = np.array(self.strides, dtype=np.int64)
        return (((-coords) % facs) * strides).sum(axis=1).astype(np.int32)

    # -- misc ----------------------------------------------------------------

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self) -> str:
        return f"FinAbGroup{self.factors}"

    def __eq__(self, other) -> bool:
        return isinstance(other, FinAbGroup) and self.factors == other.factors

    def __hash__(self) -> int:
        return hash(("FinAbGroup", self.factors))


def elementary_divisors(factors: Sequence[int]) -> tuple:
    """Invariant factors d1 | d2 | ... | dm (each > 1) of prod Z_{n_i}.

    Two finite abelian groups are isomorphic iff these tuples agree, so this
    is the canonical isomorphism-class key.  The trivial group gives ().
    """
    prime_powers: dict[int, list[int]] = {}
    for n in factors:
        n = int(n)
        d = 2
        while d * d <= n:
            if n % d == 0:
                e = 0
                while n % d == 0:
                    n //= d
                    e += 1
                prime_powers.setdefault(d, []).append(d ** e)
            d += 1
        if n > 1:
            prime_powers.setdefault(n, []).append(n)
    for p in prime_powers:
        prime_powers[p].sort(reverse=True)
    depth = max((len(v) for v in prime_powers.values()), default=0)
    out = []
    for i in range(depth):
        d = 1
        for p in prime_powers:
            if i < len(prime_powers[p]):
                d *= prime_powers[p][i]
        out.append(d)
    return tuple(sorted(out))


def decompose_abelian(labels: Sequence, add: Callable, zero):
    """Cyclic decomposition of an abstract finite abelian group.

    The group is presented by a list of hashable labels, an addition callback
    and the zero label.  Returns a list of (generator_label, order) such that
    the group is the internal direct sum of the cyclic subgroups generated by
    the generators.  The trivial group returns [].

    Strategy: greedy choice of a maximal-order element whose cyclic subgroup
    meets the current span trivially, with full backtracking (candidates are
    ranked by decreasing order, then by position in `labels`, which makes the
    result deterministic).
    """
    n = len(labels)
    if n == 1:
        return []

    position = {lab: i for i, lab in enumerate(labels)}
    orders = {}
    multiples = {}
    for lab in labels:
        chain = [lab]
        cur = lab
        while cur != zero:
            if len(chain) > n:
                raise PirickError(f"element {lab!r} has no finite order "
                                  "reaching zero; input is not a group")
            cur = add(cur, lab)
            chain.append(cur)
        orders[lab] = len(chain)
        multiples[lab] = chain  # lab, 2*lab, ..., ord*lab == zero
    candidates = sorted((lab for lab in labels if lab != zero),
                        key=lambda lab: (-orders[lab], position[lab]))

    def extend(span: dict, chosen: list):
        """span maps label -> coordinate tuple relative to `chosen` generators."""
        if len(span) == n:
            return chosen
        for g in candidates:
            if g in span:
                continue
            # require <g> to meet the current span trivially: no nonzero
            # multiple of g may already lie in it
            if any(m in span for m in multiples[g][:-1]):
                continue
            new_span = dict(span)
            ok = True
            for h, coord in span.items():
                acc = h
                for a in range(1, orders[g]):
                    acc = add(acc, g)
                    if acc in new_span:
                        ok = False
                        break
                    new_span[acc] = coord + (a,)
                if not ok:
                    break
            if not ok:
                continue
            for h in span:
                new_span[h] = span[h] + (0,)
            result = extend(new_span, chosen + [(g, orders[g])])
            if result is not None:
                return result
        return None

    result = extend({zero: ()}, [])
    if result is None:  # cannot happen for a genuine finite abelian group
        raise RuntimeError("cyclic decomposition failed; input is not an "
                           "abelian group")
    return result


def group_embedding(labels: Sequence, add: Callable, zero):
    """Re-present an abstract finite abelian group as a FinAbGroup.

    Returns (group, to_index, from_label) where `to_index[label]` is the
    FinAbGroup index of `label` and `from_label[i]` is the label of index i.
    """
    labels = list(labels)
    gens = decompose_abelian(labels, add, zero)
    if not gens:
        return FinAbGroup((1,)), {zero: 0}, [zero]
    group = FinAbGroup([o for (_, o) in gens])
    from_label = [None] * group.order
    to_index = {}
    # walk all coordinate tuples by repeated addition of generators
    cur = {(): zero}
    for g, o in gens:
        nxt = {}
        for prefix, lab in cur.items():
            acc = lab
            nxt[prefix + (0,)] = acc
            for a in range(1, o):
                acc = add(acc, g)
                nxt[prefix + (a,)] = acc
        cur = nxt
    for coords, lab in cur.items():
        idx = group.index_of(coords)
        from_label[idx] = lab
        to_index[lab] = idx
    return group, to_index, from_label
