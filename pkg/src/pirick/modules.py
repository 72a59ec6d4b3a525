"""Finite right modules over finite rings, with explicit action tables.

A FiniteModule is a FinAbGroup together with a right action of a FiniteRing,
given by structure constants on the two additive bases and extended
biadditively to a full (|M| x |R|) table, then validated against the module
axioms (identity, associativity of the action, both distributive laws).

Submodules are represented as bitmasks over element indices plus a sorted
element tuple; the full submodule lattice (when the module is small enough)
is the closure of the cyclic submodules under pairwise sum.  On top of this
sit the lattice predicates (direct summand, small, essential), quotient and
submodule modules with their canonical maps, direct sums, and isomorphism
search.
"""

from __future__ import annotations

import dataclasses
import itertools

import numpy as np

from .caps import Caps, DEFAULT_CAPS
from .errors import AxiomViolation, PirickError, SizeCapExceeded
from .groups import FinAbGroup, elementary_divisors, group_embedding
from .rings import FiniteRing

_RNG_SEED = 20260814
_RANDOM_TRIPLES = 10_000


class FiniteModule:
    """A finite right module, with the action as a full (|M|, |R|) table."""

    __slots__ = ("ring", "add_group", "constants", "act_np", "name", "_memo")

    def __init__(self, ring, add_group, constants, act_np, name):
        self.ring = ring
        self.add_group = add_group
        self.constants = dict(constants)
        self.act_np = act_np
        self.name = name
        self._memo = {}

    @property
    def order(self) -> int:
        return self.add_group.order

    def add(self, m1: int, m2: int) -> int:
        return int(self.add_group.add_table()[m1, m2])

    def act(self, m: int, r: int) -> int:
        return int(self.act_np[m, r])

    def __repr__(self) -> str:
        return (f"FiniteModule({self.name!r}, order={self.order}, "
                f"over={self.ring.name!r})")


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def _biadditive_table(ring: FiniteRing, add_group: FinAbGroup,
                      constants: dict) -> np.ndarray:
    """Extend basis action constants to the full (|M|, |R|) action table.

    constants maps (ring_basis_i, module_basis_j) -> module element index of
    (module_basis_j acted on by ring_basis_i); missing pairs default to zero.
    """
    n_m = add_group.order
    k_m = len(add_group.factors)
    k_r = len(ring.add_group.factors)
    facs = np.array(add_group.factors, dtype=np.int64)
    strides = np.array(add_group.strides, dtype=np.int64)
    cmat = np.zeros((k_r, k_m, k_m), dtype=np.int64)
    for (i, j), c in constants.items():
        cmat[i, j, :] = add_group.tuple_of(c)
    mcoords = add_group.coords_matrix()
    rcoords = ring.add_group.coords_matrix()
    partial = np.einsum("pj,ijl->pil", mcoords, cmat)  # (n_m, k_r, k_m)
    n_r = ring.order
    out = np.empty((n_m, n_r), dtype=np.int32)
    chunk = max(1, (1 << 22) // max(1, n_r * k_m))
    for lo in range(0, n_m, chunk):
        hi = min(n_m, lo + chunk)
        prod = np.einsum("qi,pil->pql", rcoords, partial[lo:hi])
        out[lo:hi] = ((prod % facs) * strides).sum(axis=2).astype(np.int32)
    return out


def _validate_module(mod: FiniteModule, caps: Caps):
    act = mod.act_np
    ring = mod.ring
    n_m, n_r = act.shape
    mul = ring.mul_np
    add_m = mod.add_group.add_table()
    add_r = ring.add_group.add_table()
    idx = np.arange(n_m, dtype=np.int32)

    bad = np.nonzero(act[:, ring.one] != idx)[0]
    if bad.size:
        raise AxiomViolation("identity", (int(bad[0]), ring.one))

    budget = caps.scan ** 3
    if n_m * n_r * n_r <= budget:
        left = act[act, :]                      # (m*r)*s
        right = act[:, mul]                     # m*(r*s)
        if not np.array_equal(left, right):
            m, r, s = np.argwhere(left != right)[0]
            raise AxiomViolation("associativity", (int(m), int(r), int(s)))
    else:
        basis_m = [mod.add_group.basis_index(j)
                   for j in range(len(mod.add_group.factors))]
        basis_r = [ring.add_group.basis_index(i)
                   for i in range(len(ring.add_group.factors))]
        for m, r, s in itertools.product(basis_m, basis_r, basis_r):
            if act[act[m, r], s] != act[m, mul[r, s]]:
                raise AxiomViolation("associativity", (int(m), int(r), int(s)))
        rng = np.random.default_rng(_RNG_SEED)
        ms = rng.integers(0, n_m, size=_RANDOM_TRIPLES)
        rs = rng.integers(0, n_r, size=_RANDOM_TRIPLES)
        ss = rng.integers(0, n_r, size=_RANDOM_TRIPLES)
        bad = np.nonzero(act[act[ms, rs], ss] != act[ms, mul[rs, ss]])[0]
        if bad.size:
            b = bad[0]
            raise AxiomViolation("associativity",
                                 (int(ms[b]), int(rs[b]), int(ss[b])))

    if n_m * n_m * n_r <= budget:
        dl = act[add_m, :]                      # (m1+m2)*r
        dr = add_m[act[:, None, :], act[None, :, :]]  # m1*r + m2*r
        if not np.array_equal(dl, dr):
            m1, m2, r = np.argwhere(dl != dr)[0]
            raise AxiomViolation("distributivity_module",
                                 (int(m1), int(m2), int(r)))
    else:
        rng = np.random.default_rng(_RNG_SEED + 1)
        m1 = rng.integers(0, n_m, size=_RANDOM_TRIPLES)
        m2 = rng.integers(0, n_m, size=_RANDOM_TRIPLES)
        rs = rng.integers(0, n_r, size=_RANDOM_TRIPLES)
        bad = np.nonzero(act[add_m[m1, m2], rs]
                         != add_m[act[m1, rs], act[m2, rs]])[0]
        if bad.size:
            b = bad[0]
            raise AxiomViolation("distributivity_module",
                                 (int(m1[b]), int(m2[b]), int(rs[b])))

    if n_m * n_r * n_r <= budget:
        dl = act[:, add_r]                      # m*(r+s)
        dr = add_m[act[:, :, None], act[:, None, :]]  # m*r + m*s
        if not np.array_equal(dl, dr):
            m, r, s = np.argwhere(dl != dr)[0]
            raise AxiomViolation("distributivity_ring",
                                 (int(m), int(r), int(s)))
    else:
        rng = np.random.default_rng(_RNG_SEED + 2)
        ms = rng.integers(0, n_m, size=_RANDOM_TRIPLES)
        rs = rng.integers(0, n_r, size=_RANDOM_TRIPLES)
        ss = rng.integers(0, n_r, size=_RANDOM_TRIPLES)
        bad = np.nonzero(act[ms, add_r[rs, ss]]
                         != add_m[act[ms, rs], act[ms, ss]])[0]
        if bad.size:
            b = bad[0]
            raise AxiomViolation("distributivity_ring",
                                 (int(ms[b]), int(rs[b]), int(ss[b])))


def module_make(ring: FiniteRing, add_group: FinAbGroup, constants: dict,
                caps: Caps = DEFAULT_CAPS, name: str = "M") -> FiniteModule:
    """Build and validate a finite right module from action constants."""
    if add_group.order > caps.construct:
        raise SizeCapExceeded("module construction", add_group.order,
                              caps.construct)
    k_r = len(ring.add_group.factors)
    k_m = len(add_group.factors)
    for (i, j), c in constants.items():
        if not (0 <= i < k_r and 0 <= j < k_m):
            raise PirickError(f"action constant key ({i},{j}) out of range")
        if not (0 <= c < add_group.order):
            raise PirickError(f"action constant value {c} out of range")
        # biadditivity requires ord(c) to divide both basis orders
        if add_group.scale(c, ring.add_group.factors[i]) != 0 \
                or add_group.scale(c, add_group.factors[j]) != 0:
            raise AxiomViolation("biadditivity", (i, j, c))
    act = _biadditive_table(ring, add_group, constants)
    mod = FiniteModule(ring, add_group, constants, act, name)
    _validate_module(mod, caps)
    return mod


def ring_as_module(ring: FiniteRing, caps: Caps = DEFAULT_CAPS,
                   name: str = None) -> FiniteModule:
    """The right regular module R_R."""
    constants = {}
    for i in range(len(ring.add_group.factors)):
        for j in range(len(ring.add_group.factors)):
            c = ring.constants.get((j, i), 0)
            if c:
                constants[(i, j)] = c
    if name is None:
        name = f"{ring.name}_reg"
    return module_make(ring, ring.add_group, constants, caps, name)


# ---------------------------------------------------------------------------
# submodules
# ---------------------------------------------------------------------------


class Submodule:
    """A submodule as a bitmask + sorted element tuple over a fixed module."""

    __slots__ = ("module", "mask", "elems")

    def __init__(self, module: FiniteModule, elems):
        self.module = module
        self.elems = tuple(sorted(int(e) for e in set(elems)))
        mask = 0
        for e in self.elems:
            mask |= 1 << e
        self.mask = mask

    @property
    def size(self) -> int:
        return len(self.elems)

    def __contains__(self, e: int) -> bool:
        return bool((self.mask >> e) & 1)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Submodule) and self.module is other.module
                and self.mask == other.mask)

    def __hash__(self) -> int:
        return hash((id(self.module), self.mask))

    def __repr__(self) -> str:
        return f"Submodule(of={self.module.name!r}, size={self.size})"

    def is_zero(self) -> bool:
        return self.mask == 1

    def is_full(self) -> bool:
        return self.size == self.module.order


def submodule_check(module: FiniteModule, elems) -> Submodule:
    """Build a Submodule, verifying closure under addition and the action."""
    sub = Submodule(module, elems)
    if 0 not in sub:
        raise PirickError("submodule candidate misses the zero element")
    arr = np.array(sub.elems, dtype=np.int64)
    add = module.add_group.add_table()
    sums = np.unique(add[np.ix_(arr, arr)])
    if not set(sums.tolist()) <= set(sub.elems):
        raise PirickError("candidate set is not closed under addition")
    acted = np.unique(module.act_np[arr, :])
    if not set(acted.tolist()) <= set(sub.elems):
        raise PirickError("candidate set is not closed under the action")
    return sub


def cyclic_submodule(module: FiniteModule, m: int) -> Submodule:
    """The submodule m*R (already closed: m*r + m*s = m*(r+s))."""
    return Submodule(module, np.unique(module.act_np[m, :]).tolist())


def submodule_generated(module: FiniteModule, gens) -> Submodule:
    """Smallest submodule containing the given elements."""
    current = {0}
    for g in gens:
        current.update(int(x) for x in module.act_np[g, :])
    add = module.add_group.add_table()
    frontier = list(current)
    while frontier:
        arr = np.array(sorted(current), dtype=np.int64)
        new = set(np.unique(add[np.ix_(arr, arr)]).tolist()) - current
        if not new:
            break
        current |= new
        frontier = list(new)
    return Submodule(module, current)


def zero_submodule(module: FiniteModule) -> Submodule:
    return Submodule(module, [0])


def full_submodule(module: FiniteModule) -> Submodule:
    return Submodule(module, range(module.order))


def submodule_sum(n1: Submodule, n2: Submodule) -> Submodule:
    """N1 + N2 (the join; as sets {x + y}, already a submodule)."""
    if n1.module is not n2.module:
        raise PirickError("submodules of different modules")
    add = n1.module.add_group.add_table()
    a1 = np.array(n1.elems, dtype=np.int64)
    a2 = np.array(n2.elems, dtype=np.int64)
    return Submodule(n1.module, np.unique(add[np.ix_(a1, a2)]).tolist())


def submodule_meet(n1: Submodule, n2: Submodule) -> Submodule:
    if n1.module is not n2.module:
        raise PirickError("submodules of different modules")
    mask = n1.mask & n2.mask
    return Submodule(n1.module, [e for e in n1.elems if (mask >> e) & 1])


def all_submodules(module: FiniteModule, caps: Caps = DEFAULT_CAPS) -> list:
    """Every submodule, sorted by ascending bitmask (deterministic order)."""
    if module.order > caps.lattice:
        raise SizeCapExceeded("submodule lattice", module.order, caps.lattice)
    if "lattice" in module._memo:
        return module._memo["lattice"]
    seen = {}
    for m in range(module.order):
        sub = cyclic_submodule(module, m)
        seen.setdefault(sub.mask, sub)
    frontier = list(seen.values())
    while frontier:
        new = []
        for a in frontier:
            for b in list(seen.values()):
                s = submodule_sum(a, b)
                if s.mask not in seen:
                    seen[s.mask] = s
                    new.append(s)
        frontier = new
    lattice = [seen[k] for k in sorted(seen)]
    module._memo["lattice"] = lattice
    return lattice


def is_direct_summand(sub: Submodule, caps: Caps = DEFAULT_CAPS):
    """Decide by complement search: N is a summand iff some submodule K has
    N meet K = 0 and |N| * |K| = |M|.  Returns (bool, complement or None),
    with the complement of smallest bitmask."""
    module = sub.module
    total = module.order
    for cand in all_submodules(module, caps):
        if (sub.mask & cand.mask) == 1 and sub.size * cand.size == total:
            return True, cand
    return False, None


def is_small(sub: Submodule, caps: Caps = DEFAULT_CAPS) -> bool:
    """N is superfluous: N + K = M forces K = M."""
    module = sub.module
    total = module.order
    for cand in all_submodules(module, caps):
        if cand.size == total:
            continue
        inter = (sub.mask & cand.mask).bit_count()
        if sub.size * cand.size == total * inter:
            return False
    return True


def is_essential(sub: Submodule, caps: Caps = DEFAULT_CAPS) -> bool:
    """N is essential: N meet K = 0 forces K = 0."""
    for cand in all_submodules(sub.module, caps):
        if cand.mask != 1 and (sub.mask & cand.mask) == 1:
            return False
    return True


def is_fully_invariant(sub: Submodule, endo_maps) -> bool:
    """N is stable under every endomorphism in `endo_maps`."""
    arr = np.array(sub.elems, dtype=np.int64)
    for f in endo_maps:
        images = f.table_np[arr]
        for x in images.tolist():
            if x not in sub:
                return False
    return True


def radical(module: FiniteModule, caps: Caps = DEFAULT_CAPS) -> Submodule:
    """Intersection of the maximal submodules (all of M when none exist)."""
    lattice = all_submodules(module, caps)
    full = module.order
    maximal = []
    for cand in lattice:
        if cand.size == full:
            continue
        covered = any(other.size < full and other.mask != cand.mask
                      and (cand.mask & other.mask) == cand.mask
                      for other in lattice)
        if not covered:
            maximal.append(cand)
    if not maximal:
        return full_submodule(module)
    mask = maximal[0].mask
    for cand in maximal[1:]:
        mask &= cand.mask
    return Submodule(module, [e for e in range(full) if (mask >> e) & 1])


def socle(module: FiniteModule, caps: Caps = DEFAULT_CAPS) -> Submodule:
    """Sum of the simple (minimal nonzero) submodules."""
    lattice = all_submodules(module, caps)
    out = zero_submodule(module)
    for cand in lattice:
        if cand.mask == 1:
            continue
        has_proper = any(other.mask != 1 and other.mask != cand.mask
                         and (other.mask & cand.mask) == other.mask
                         for other in lattice)
        if not has_proper:
            out = submodule_sum(out, cand)
    return out


# ---------------------------------------------------------------------------
# derived modules
# ---------------------------------------------------------------------------


def quotient_module(module: FiniteModule, sub: Submodule,
                    caps: Caps = DEFAULT_CAPS):
    """M/N with its projection.  Returns (quotient, projection ModuleMap)."""
    from .homs import ModuleMap
    add = module.add_group.add_table()
    n = module.order
    arr = np.array(sub.elems, dtype=np.int64)
    # coset label = least element index in m + N
    labels = add[:, arr].min(axis=1)
    unique = sorted(set(labels.tolist()))

    def coset_add(x, y):
        return int(labels[add[x, y]])

    group, to_index, from_label = group_embedding(unique, coset_add, 0)
    constants = {}
    k_r = len(module.ring.add_group.factors)
    for j in range(len(group.factors)):
        rep = from_label[group.basis_index(j)]
        for i in range(k_r):
            b = module.ring.add_group.basis_index(i)
            c = to_index[int(labels[module.act_np[rep, b]])]
            if c:
                constants[(i, j)] = c
    quotient = module_make(module.ring, group, constants, caps,
                           f"{module.name}/{sub.size}")
    table = tuple(to_index[int(labels[m])] for m in range(n))
    proj = ModuleMap(module, quotient, table)
    return quotient, proj


def submodule_module(sub: Submodule, caps: Caps = DEFAULT_CAPS):
    """N as a module in its own right.  Returns (module, inclusion ModuleMap)."""
    from .homs import ModuleMap
    parent = sub.module
    add = parent.add_group.add_table()
    labels = list(sub.elems)
    group, to_index, from_label = group_embedding(
        labels, lambda x, y: int(add[x, y]), 0)
    constants = {}
    k_r = len(parent.ring.add_group.factors)
    for j in range(len(group.factors)):
        rep = from_label[group.basis_index(j)]
        for i in range(k_r):
            b = parent.ring.add_group.basis_index(i)
            c = to_index[int(parent.act_np[rep, b])]
            if c:
                constants[(i, j)] = c
    inner = module_make(parent.ring, group, constants, caps,
                        f"{parent.name}|{sub.size}")
    incl = ModuleMap(inner, parent, tuple(from_label))
    return inner, incl


def free_module(ring: FiniteRing, rank: int, caps: Caps = DEFAULT_CAPS,
                name: str | None = None) -> FiniteModule:
    """Direct sum of `rank` copies of the right regular module."""
    if rank < 1:
        raise PirickError("free rank must be >= 1")
    k = len(ring.add_group.factors)
    group = FinAbGroup(ring.add_group.factors * rank)
    constants = {}
    for c in range(rank):
        for j in range(k):
            for i in range(k):
                prod = ring.constants.get((j, i), 0)
                if prod:
                    coords = [0] * (k * rank)
                    coords[c * k:(c + 1) * k] = ring.add_group.tuple_of(prod)
                    constants[(i, c * k + j)] = group.index_of(tuple(coords))
    return module_make(ring, group, constants, caps,
                       name or f"{ring.name}_free{rank}")


@dataclasses.dataclass
class DirectSum:
    module: FiniteModule
    inj1: object
    inj2: object
    proj1: object
    proj2: object


def direct_sum(m1: FiniteModule, m2: FiniteModule,
               caps: Caps = DEFAULT_CAPS) -> DirectSum:
    """External direct sum of two modules over the same ring."""
    from .homs import ModuleMap
    if not same_ring(m1.ring, m2.ring):
        raise PirickError("direct sum requires a common base ring")
    k1 = len(m1.add_group.factors)
    k2 = len(m2.add_group.factors)
    group = FinAbGroup(m1.add_group.factors + m2.add_group.factors)

    def embed1(e):
        return group.index_of(m1.add_group.tuple_of(e) + (0,) * k2)

    def embed2(e):
        return group.index_of((0,) * k1 + m2.add_group.tuple_of(e))

    constants = {}
    for (i, j), c in m1.constants.items():
        if c:
            constants[(i, j)] = embed1(c)
    for (i, j), c in m2.constants.items():
        if c:
            constants[(i, k1 + j)] = embed2(c)
    total = module_make(m1.ring, group, constants, caps,
                        f"{m1.name}(+){m2.name}")
    inj1 = ModuleMap(m1, total, tuple(embed1(e) for e in range(m1.order)))
    inj2 = ModuleMap(m2, total, tuple(embed2(e) for e in range(m2.order)))
    strides = group.strides
    proj1_table = []
    proj2_table = []
    for x in range(total.order):
        coords = group.tuple_of(x)
        proj1_table.append(m1.add_group.index_of(coords[:k1]))
        proj2_table.append(m2.add_group.index_of(coords[k1:]))
    proj1 = ModuleMap(total, m1, tuple(proj1_table))
    proj2 = ModuleMap(total, m2, tuple(proj2_table))
    return DirectSum(total, inj1, inj2, proj1, proj2)


# ---------------------------------------------------------------------------
# isomorphism
# ---------------------------------------------------------------------------


def module_generators(module: FiniteModule) -> tuple:
    """A small generating set: greedy cover by cyclic submodules.

    Deterministically picks the element whose cyclic submodule adds the most
    new elements (ties: smallest index) until everything is covered.
    """
    if "generators" in module._memo:
        return module._memo["generators"]
    n = module.order
    covered = {0}
    gens = []
    cyclics = [set(np.unique(module.act_np[m, :]).tolist()) for m in range(n)]
    while len(covered) < n:
        best, best_gain = None, -1
        for m in range(n):
            gain = len(cyclics[m] - covered)
            if gain > best_gain:
                best, best_gain = m, gain
        gens.append(best)
        covered |= cyclics[best]
        # additive closure of what is covered so far
        add = module.add_group.add_table()
        changed = True
        while changed:
            arr = np.array(sorted(covered), dtype=np.int64)
            new = set(np.unique(add[np.ix_(arr, arr)]).tolist()) - covered
            changed = bool(new)
            covered |= new
    result = tuple(gens)
    module._memo["generators"] = result
    return result


def same_ring(r1: FiniteRing, r2: FiniteRing) -> bool:
    """True when two ring objects are interchangeable: identical structure
    constants over the same additive presentation, so element indices mean
    the same thing in both."""
    return r1 is r2 or (r1.add_group.factors == r2.add_group.factors
                        and r1.one == r2.one
                        and r1.constants == r2.constants)


def find_isomorphism(m1: FiniteModule, m2: FiniteModule):
    """Search for a module isomorphism m1 -> m2 over the same ring.

    Returns the full index map as a tuple, or None.  Deterministic: images
    are tried in increasing element order; the first isomorphism found wins.
    """
    if not same_ring(m1.ring, m2.ring):
        return None
    if m1.order != m2.order:
        return None
    if elementary_divisors(m1.add_group.factors) != \
            elementary_divisors(m2.add_group.factors):
        return None
    n = m1.order
    n_r = m1.ring.order
    add1 = m1.add_group.add_table()
    add2 = m2.add_group.add_table()
    act1, act2 = m1.act_np, m2.act_np
    gens = module_generators(m1)

    orders2 = {}
    for x in range(n):
        orders2.setdefault(m2.add_group.element_order(x), []).append(x)

    def propagate(fwd, bwd, queue):
        """Close the partial map under addition and the ring action."""
        while queue:
            x = queue.pop()
            u = fwd[x]
            for r in range(n_r):
                xr, ur = int(act1[x, r]), int(act2[u, r])
                if xr in fwd:
                    if fwd[xr] != ur:
                        return False
                elif ur in bwd:
                    return False
                else:
                    fwd[xr] = ur
                    bwd[ur] = xr
                    queue.append(xr)
            for y in list(fwd):
                v = fwd[y]
                xy, uv = int(add1[x, y]), int(add2[u, v])
                if xy in fwd:
                    if fwd[xy] != uv:
                        return False
                elif uv in bwd:
                    return False
                else:
                    fwd[xy] = uv
                    bwd[uv] = xy
                    queue.append(xy)
        return True

    def extend(i, fwd, bwd):
        if len(fwd) == n:
            return tuple(fwd[x] for x in range(n))
        if i == len(gens):
            return None
        g = gens[i]
        if g in fwd:
            return extend(i + 1, fwd, bwd)
        for img in orders2.get(m1.add_group.element_order(g), []):
            if img in bwd:
                continue
            new_fwd = dict(fwd)
            new_bwd = dict(bwd)
            new_fwd[g] = img
            new_bwd[img] = g
            if propagate(new_fwd, new_bwd, [g]):
                result = extend(i + 1, new_fwd, new_bwd)
                if result is not None:
                    return result
        return None

    return extend(0, {0: 0}, {0: 0})


def are_isomorphic(m1: FiniteModule, m2: FiniteModule) -> bool:
    return find_isomorphism(m1, m2) is not None
