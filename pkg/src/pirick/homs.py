"""Module homomorphisms, hom-sets, and endomorphism rings.

A ModuleMap is a full table (tuple over the domain's element indices) and is
validated on construction: additivity against both addition tables and
linearity against both action tables, fully vectorized.  Maps produced by
provably-safe recipes (composition of validated maps, pointwise sums,
identity, zero) skip re-validation.

hom_set enumerates Hom(M, N) exactly: a generating set of M is chosen, every
assignment of generator images is expanded to a full table along a fixed
derivation plan, and the table is kept iff it validates.  end_ring re-equips
Hom(M, M) with composition as a FiniteRing (via a cyclic decomposition of
its additive group), giving every ring-theoretic tool access to End(M).
"""

from __future__ import annotations

import dataclasses
import itertools

import numpy as np

from .caps import Caps, DEFAULT_CAPS
from .errors import NotAHomomorphism, PirickError, SizeCapExceeded
from .groups import group_embedding
from .modules import FiniteModule, Submodule, module_generators, same_ring
from .rings import FiniteRing, ring_idempotents, ring_make


class ModuleMap:
    """A homomorphism of right modules over a common ring, as a full table."""

    __slots__ = ("domain", "codomain", "table", "table_np")

    def __init__(self, domain: FiniteModule, codomain: FiniteModule,
                 table, _validated: bool = False):
        if not same_ring(domain.ring, codomain.ring):
            raise PirickError("domain and codomain have different base rings")
        self.domain = domain
        self.codomain = codomain
        self.table = tuple(int(x) for x in table)
        if len(self.table) != domain.order:
            raise PirickError("map table length does not match domain order")
        self.table_np = np.array(self.table, dtype=np.int64)
        if not _validated:
            self._validate()

    def _validate(self):
        t = self.table_np
        add_d = self.domain.add_group.add_table()
        add_c = self.codomain.add_group.add_table()
        lhs_add = t[add_d]
        rhs_add = add_c[t[:, None], t[None, :]]
        if not np.array_equal(lhs_add, rhs_add):
            a, b = np.argwhere(lhs_add != rhs_add)[0]
            raise NotAHomomorphism("additivity", (int(a), int(b)))
        act_d = self.domain.act_np
        act_c = self.codomain.act_np
        lhs = t[act_d]
        rhs = act_c[t, :]
        if not np.array_equal(lhs, rhs):
            m, r = np.argwhere(lhs != rhs)[0]
            raise NotAHomomorphism("linearity", (int(m), int(r)))

    def __call__(self, m: int) -> int:
        return self.table[m]

    def __eq__(self, other) -> bool:
        return (isinstance(other, ModuleMap) and self.domain is other.domain
                and self.codomain is other.codomain
                and self.table == other.table)

    def __hash__(self) -> int:
        return hash((id(self.domain), id(self.codomain), self.table))

    def __repr__(self) -> str:
        return (f"ModuleMap({self.domain.name!r} -> {self.codomain.name!r}, "
                f"{self.table})")

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.table)


def identity_map(module: FiniteModule) -> ModuleMap:
    return ModuleMap(module, module, range(module.order), _validated=True)


def zero_map(domain: FiniteModule, codomain: FiniteModule) -> ModuleMap:
    return ModuleMap(domain, codomain, (0,) * domain.order, _validated=True)


def compose(f: ModuleMap, g: ModuleMap) -> ModuleMap:
    """f after g (domain of f must be the codomain of g)."""
    if f.domain is not g.codomain:
        raise PirickError("composition mismatch")
    return ModuleMap(g.domain, f.codomain, f.table_np[g.table_np],
                     _validated=True)


def map_add(f: ModuleMap, g: ModuleMap) -> ModuleMap:
    if f.domain is not g.domain or f.codomain is not g.codomain:
        raise PirickError("sum of maps with different domains/codomains")
    add_c = f.codomain.add_group.add_table()
    return ModuleMap(f.domain, f.codomain, add_c[f.table_np, g.table_np],
                     _validated=True)


def map_power(f: ModuleMap, n: int) -> ModuleMap:
    """n-th compositional power of an endomorphism (power 0 is the identity)."""
    if f.domain is not f.codomain:
        raise PirickError("powers need an endomorphism")
    if n < 0:
        raise PirickError("power must be >= 0")
    if n == 0:
        return identity_map(f.domain)
    out = f
    for _ in range(n - 1):
        out = compose(f, out)
    return out


# ---------------------------------------------------------------------------
# hom sets
# ---------------------------------------------------------------------------


def _derivation_plan(module: FiniteModule, gens: tuple) -> list:
    """Steps (target, source, gen_pos, r) deriving every element of the module.

    Interpretation: target = source + gens[gen_pos] * r.  Sources are always
    derived (or zero / a generator) before they are used, and each element is
    derived exactly once; together with images for the generators this
    determines a candidate map table completely.
    """
    add = module.add_group.add_table()
    act = module.act_np
    derived = {0}
    for g in gens:
        derived.add(g)
    plan = []
    frontier = sorted(derived)
    while len(derived) < module.order:
        new = []
        for src in frontier:
            for pos, g in enumerate(gens):
                for r in range(module.ring.order):
                    tgt = int(add[src, act[g, r]])
                    if tgt not in derived:
                        derived.add(tgt)
                        plan.append((tgt, src, pos, r))
                        new.append(tgt)
        if not new and len(derived) < module.order:
            raise PirickError("generators do not generate the module")
        frontier = new
    return plan


def hom_set(domain: FiniteModule, codomain: FiniteModule,
            caps: Caps = DEFAULT_CAPS) -> list:
    """All module homomorphisms domain -> codomain, deterministically ordered.

    Enumerates candidate images for a generating set of the domain in
    lexicographic order and keeps exactly the assignments that extend to a
    valid homomorphism.
    """
    if not same_ring(domain.ring, codomain.ring):
        raise PirickError("hom set requires a common base ring")
    gens = module_generators(domain)
    count = codomain.order ** len(gens)
    if count > caps.hom:
        raise SizeCapExceeded("hom-set enumeration", count, caps.hom)
    plan = _derivation_plan(domain, gens)
    add_c = codomain.add_group.add_table()
    act_c = codomain.act_np
    add_d = domain.add_group.add_table()
    act_d = domain.act_np
    n_d = domain.order
    maps = []
    table = [0] * n_d
    for images in itertools.product(range(codomain.order), repeat=len(gens)):
        for pos, g in enumerate(gens):
            table[g] = images[pos]
        if table[0] != 0:
            continue
        for tgt, src, pos, r in plan:
            table[tgt] = int(add_c[table[src], act_c[images[pos], r]])
        t = np.array(table, dtype=np.int64)
        if not np.array_equal(t[add_d], add_c[t[:, None], t[None, :]]):
            continue
        if not np.array_equal(t[act_d], act_c[t, :]):
            continue
        maps.append(ModuleMap(domain, codomain, table, _validated=True))
    return maps


# ---------------------------------------------------------------------------
# endomorphism rings
# ---------------------------------------------------------------------------


@dataclasses.dataclass
class EndRing:
    """End(M) as a FiniteRing whose element i is the ModuleMap maps[i].

    Multiplication is composition: (f * g)(m) = f(g(m)).  index_of maps a
    table tuple to its ring index.
    """

    module: FiniteModule
    ring: FiniteRing
    maps: tuple
    index_of: dict

    def map_index(self, f: ModuleMap) -> int:
        return self.index_of[f.table]


def end_ring(module: FiniteModule, caps: Caps = DEFAULT_CAPS) -> EndRing:
    """Compute End(M) with composition, as a validated FiniteRing."""
    if "end_ring" in module._memo:
        return module._memo["end_ring"]
    raw = hom_set(module, module, caps)
    tables = np.stack([f.table_np for f in raw])       # (s, n)
    add_m = module.add_group.add_table()
    key_to_raw = {f.table: i for i, f in enumerate(raw)}

    def add_maps(i, j):
        return key_to_raw[tuple(int(x) for x in add_m[tables[i], tables[j]])]

    zero_raw = key_to_raw[(0,) * module.order]
    group, to_index, from_label = group_embedding(
        list(range(len(raw))), add_maps, zero_raw)

    maps = tuple(raw[from_label[i]] for i in range(group.order))
    constants = {}
    for i in range(len(group.factors)):
        fi = maps[group.basis_index(i)]
        for j in range(len(group.factors)):
            fj = maps[group.basis_index(j)]
            comp = tuple(int(x) for x in fi.table_np[fj.table_np])
            c = to_index[key_to_raw[comp]]
            if c:
                constants[(i, j)] = c
    one = to_index[key_to_raw[tuple(range(module.order))]]
    ring = ring_make(group, constants, one, caps, f"end_{module.name}")

    # Independent check: the ring's multiplication table must agree with
    # composition of the underlying maps on every pair.
    index_of = {maps[i].table: i for i in range(group.order)}
    stacked = np.stack([f.table_np for f in maps])
    for i in range(group.order):
        comp_tables = stacked[i][stacked]             # (s, n): map i after map j
        for j in range(group.order):
            expected = index_of[tuple(int(x) for x in comp_tables[j])]
            if ring.mul_np[i, j] != expected:
                raise PirickError("endomorphism ring table disagrees with "
                                  f"composition at ({i}, {j})")

    out = EndRing(module, ring, maps, index_of)
    module._memo["end_ring"] = out
    return out


# ---------------------------------------------------------------------------
# images, kernels, annihilators
# ---------------------------------------------------------------------------


def image(f: ModuleMap) -> Submodule:
    return Submodule(f.codomain, np.unique(f.table_np).tolist())


def kernel(f: ModuleMap) -> Submodule:
    return Submodule(f.domain, np.nonzero(f.table_np == 0)[0].tolist())


def image_chain(f: ModuleMap):
    """([Im f, Im f^2, ..., Im f^s], s) where s is the first n with
    Im f^n == Im f^(n+1) (equivalently the last entry is the stable image)."""
    if f.domain is not f.codomain:
        raise PirickError("image chain needs an endomorphism")
    imgs = [image(f)]
    cur = f
    while True:
        cur = compose(f, cur)
        im = image(cur)
        if im == imgs[-1]:
            return imgs, len(imgs)
        imgs.append(im)


def kernel_chain(f: ModuleMap):
    """([Ker f, Ker f^2, ..., Ker f^s], s) with s the first stable exponent."""
    if f.domain is not f.codomain:
        raise PirickError("kernel chain needs an endomorphism")
    kers = [kernel(f)]
    cur = f
    while True:
        cur = compose(f, cur)
        ker = kernel(cur)
        if ker == kers[-1]:
            return kers, len(kers)
        kers.append(ker)


def is_nilpotent_map(f: ModuleMap):
    """(bool, index): whether some power of f is the zero map."""
    imgs, _ = image_chain(f)
    if imgs[-1].is_zero():
        return True, len(imgs)
    return False, None


def left_annihilator(end: EndRing, elems) -> np.ndarray:
    """Indices of {g in End(M) : g(x) == 0 for every x in elems}."""
    stacked = np.stack([f.table_np for f in end.maps])
    arr = np.array(sorted(set(int(e) for e in elems)), dtype=np.int64)
    if arr.size == 0:
        return np.arange(len(end.maps), dtype=np.int64)
    mask = (stacked[:, arr] == 0).all(axis=1)
    return np.nonzero(mask)[0].astype(np.int64)


def right_annihilator(end: EndRing, endo_indices) -> Submodule:
    """r_M(X) = {m : g(m) == 0 for every g in X}, as a Submodule of M."""
    module = end.module
    keep = np.ones(module.order, dtype=bool)
    for i in endo_indices:
        keep &= end.maps[int(i)].table_np == 0
    return Submodule(module, np.nonzero(keep)[0].tolist())


def principal_left_ideal(end: EndRing, e: int) -> np.ndarray:
    """Indices of S*e = {g * e : g in S} (composition g after e)."""
    return np.unique(end.ring.mul_np[:, e]).astype(np.int64)


def idempotent_image_masks(end: EndRing) -> dict:
    """Map from image bitmask of an idempotent endomorphism to the smallest
    such idempotent's ring index."""
    memo_key = "idempotent_image_masks"
    if memo_key in end.module._memo:
        return end.module._memo[memo_key]
    out = {}
    for e in ring_idempotents(end.ring).tolist():
        mask = image(end.maps[e]).mask
        if mask not in out:
            out[mask] = int(e)
    end.module._memo[memo_key] = out
    return out


def summand_by_idempotent(sub: Submodule, end: EndRing):
    """Decide 'is a direct summand' via idempotent endomorphisms.

    N is a summand iff N == e(M) for some idempotent e in End(M); this is an
    independent route from the complement search over the lattice.
    Returns (bool, idempotent ring index or None).
    """
    if sub.module is not end.module:
        raise PirickError("submodule does not belong to the endomorphism "
                          "ring's module")
    masks = idempotent_image_masks(end)
    if sub.mask in masks:
        return True, masks[sub.mask]
    return False, None


def is_indecomposable(end: EndRing) -> bool:
    """No idempotent endomorphisms besides 0 and the identity."""
    idem = set(ring_idempotents(end.ring).tolist())
    one = end.ring.one
    return idem <= {0, one}
