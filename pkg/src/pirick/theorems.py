"""Registry of verifiable implications between module and ring properties.

Each entry is a directed implication (or a definitional cross-check between
two independent code paths) evaluated exactly on one instance.  Hypotheses
are decided first; the conclusion is only checked when they hold, so every
outcome is one of:

  holds               hypotheses met and conclusion verified
  hypothesis_not_met  hypotheses false on this instance (entry is vacuous)
  violation           hypotheses met but conclusion false (witness attached)
  skipped             a size cap prevented an exact decision
  reading_flag        conclusion false for an entry marked as a tentative
                      converse; reported for attention, not as a violation

Biconditional statements are split into directed sub-entries (id suffixes
.1/.2) so a failure pinpoints the direction.  Entry ids such as "P2.2" are
stable registry tokens used by the command-line interface.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .caps import Caps, DEFAULT_CAPS
from .errors import PirickError, SizeCapExceeded, UnknownTheorem
from .homs import hom_set, image, left_annihilator, right_annihilator
from .modules import (FiniteModule, Submodule, free_module,
                      is_fully_invariant, radical, ring_as_module, socle,
                      submodule_module)
from .properties import (DECIDERS, Facts, singular_nil_jacobson,
                         small_image_endos)
from .rings import (FiniteRing, Verdict, corner_ring, is_generalized_left_pp,
                    is_pi_regular, is_strongly_pi_regular, matrix_ring,
                    nil_radical_check, ring_idempotents, ring_neg,
                    ring_predicates)

HOLDS = "holds"
NOT_MET = "hypothesis_not_met"
VIOLATION = "violation"
SKIPPED = "skipped"
READING_FLAG = "reading_flag"


@dataclasses.dataclass
class TheoremVerdict:
    theorem_id: str
    instance: str
    status: str
    witness: str


class InstanceContext:
    """One corpus instance (a ring or a module) plus its evaluation caps."""

    def __init__(self, name: str, kind: str, ring: FiniteRing,
                 module: FiniteModule | None, caps: Caps = DEFAULT_CAPS):
        if kind not in ("ring", "module"):
            raise PirickError(f"unknown instance kind {kind!r}")
        self.name = name
        self.kind = kind
        self.ring = ring
        self.module = module
        self.caps = caps

    def facts(self) -> Facts:
        if self.module is None:
            raise PirickError("ring instance has no module")
        return Facts(self.module, self.caps)

    def reg_module(self) -> FiniteModule:
        memo = self.ring._memo
        if "reg_module" not in memo:
            memo["reg_module"] = ring_as_module(self.ring, self.caps)
        return memo["reg_module"]

    def reg_facts(self) -> Facts:
        return Facts(self.reg_module(), self.caps)

    def free2(self) -> FiniteModule:
        memo = self.ring._memo
        if "free2" not in memo:
            memo["free2"] = free_module(self.ring, 2, self.caps)
        return memo["free2"]


# ---------------------------------------------------------------------------
# shared computations
# ---------------------------------------------------------------------------


def _prop(facts: Facts, name: str) -> Verdict:
    return facts.verdict(name, DECIDERS[name])


def _ring_check(ring: FiniteRing, kind: str) -> Verdict:
    memo = ring._memo.setdefault("checks", {})
    if kind not in memo:
        fn = {"pi_regular": is_pi_regular,
              "strongly_pi_regular": is_strongly_pi_regular,
              "gen_left_pp": is_generalized_left_pp}[kind]
        memo[kind] = fn(ring)
    return memo[kind]


def _pow_index(end, f: int, n: int) -> int:
    """Ring index of the n-th compositional power of endomorphism f."""
    out = f
    for _ in range(n - 1):
        out = int(end.ring.mul_np[f, out])
    return out


def _l_ann_elem(ring: FiniteRing, x: int) -> frozenset:
    """{g : g * x == 0} as a set of ring indices."""
    return frozenset(np.nonzero(ring.mul_np[:, x] == 0)[0].tolist())


def _idem_principal_left(ring: FiniteRing) -> dict:
    """Idempotent e -> the set S*e, for every idempotent of the ring."""
    memo = ring._memo
    if "idem_pli" not in memo:
        memo["idem_pli"] = {
            int(e): frozenset(np.unique(ring.mul_np[:, e]).tolist())
            for e in ring_idempotents(ring).tolist()}
    return memo["idem_pli"]


def _one_minus(ring: FiniteRing, e: int) -> int:
    add = ring.add_group.add_table()
    return int(add[ring.one, ring_neg(ring)[e]])


def _is_epi(end, f: int) -> bool:
    return np.unique(end.maps[f].table_np).size == end.module.order


def _dual_pi_of(module: FiniteModule, caps: Caps) -> Verdict:
    return Facts(module, caps).verdict("dual_pi_rickart",
                                       DECIDERS["dual_pi_rickart"])


def _right_ideal(reg: FiniteModule, ring: FiniteRing, e: int) -> Submodule:
    """e*R inside the right regular module (element indices coincide)."""
    return Submodule(reg, np.unique(ring.mul_np[e, :]).tolist())


def _summand_masks_by_complement(facts: Facts) -> set:
    """Masks of submodules with a lattice complement (independent of the
    idempotent route)."""
    store = facts._store
    if "complement_masks" not in store:
        lattice = facts.lattice()
        full = facts.module.order
        out = set()
        for sub in lattice:
            for other in lattice:
                if (sub.mask & other.mask) == 1 and sub.size * other.size == full:
                    out.add(sub.mask)
                    break
        store["complement_masks"] = out
    return store["complement_masks"]


# ---------------------------------------------------------------------------
# entry checks: each returns (status, witness string)
# ---------------------------------------------------------------------------


def _chk_p2_2_1(ctx):
    facts = ctx.reg_facts()
    if not _prop(facts, "dual_pi_rickart").holds:
        return NOT_MET, "-"
    v = _ring_check(ctx.ring, "pi_regular")
    if not v.holds:
        return VIOLATION, f"a={v.counterexample}"
    a, (n, x) = max(v.witnesses.items(), key=lambda kv: (kv[1][0], kv[0]))
    return HOLDS, f"a={a},n={n},x={x}"


def _chk_p2_2_2(ctx):
    if not _ring_check(ctx.ring, "pi_regular").holds:
        return NOT_MET, "-"
    facts = ctx.reg_facts()
    v = _prop(facts, "dual_pi_rickart")
    if not v.holds:
        return VIOLATION, f"f={v.counterexample}"
    f, (n, e) = max(v.witnesses.items(), key=lambda kv: (kv[1][0], kv[0]))
    return HOLDS, f"f={f},n={n},e={e}"


def _chk_p2_4_1(ctx):
    facts = ctx.facts()
    if not _prop(facts, "dual_rickart").holds:
        return NOT_MET, "-"
    v = _prop(facts, "dual_pi_rickart")
    if not v.holds:
        return VIOLATION, f"f={v.counterexample}"
    bad = [f for f, (n, _) in v.witnesses.items() if n != 1]
    if bad:
        return VIOLATION, f"f={bad[0]},n>1"
    return HOLDS, "n=1 throughout"


def _chk_p2_4_2(ctx):
    facts = ctx.facts()
    end = facts.end()
    if not ring_predicates(end.ring).reduced:
        return NOT_MET, "-"
    if not _prop(facts, "dual_pi_rickart").holds:
        return NOT_MET, "-"
    v = _prop(facts, "dual_rickart")
    if not v.holds:
        return VIOLATION, f"f={v.counterexample}"
    return HOLDS, "-"


def _chk_l2_5_1(ctx):
    facts = ctx.facts()
    end = facts.end()
    if not _prop(facts, "dual_pi_rickart").holds:
        return NOT_MET, "-"
    if not ring_predicates(end.ring).domain:
        return NOT_MET, "-"
    for f in range(1, end.ring.order):
        if not _is_epi(end, f):
            return VIOLATION, f"f={f}"
    return HOLDS, f"nonzero_maps={end.ring.order - 1}"


def _chk_l2_5_2(ctx):
    facts = ctx.facts()
    end = facts.end()
    for f in range(1, end.ring.order):
        if not _is_epi(end, f):
            return NOT_MET, f"f={f} not epi"
    problems = []
    if not _prop(facts, "dual_pi_rickart").holds:
        problems.append("dual_pi_rickart")
    if not ring_predicates(end.ring).domain:
        problems.append("domain")
    if problems:
        return VIOLATION, ",".join(problems)
    return HOLDS, "-"


def _chk_t2_7_1(ctx):
    facts = ctx.facts()
    if not (_prop(facts, "d2").holds and _prop(facts, "dual_pi_rickart").holds):
        return NOT_MET, "-"
    v = _prop(facts, "pi_rickart")
    if not v.holds:
        return VIOLATION, f"f={v.counterexample}"
    return HOLDS, "-"


def _chk_t2_7_2(ctx):
    facts = ctx.facts()
    if not (_prop(facts, "c2").holds and _prop(facts, "pi_rickart").holds):
        return NOT_MET, "-"
    v = _prop(facts, "dual_pi_rickart")
    if not v.holds:
        return VIOLATION, f"f={v.counterexample}"
    return HOLDS, "-"


def _chk_t2_7_3(ctx):
    facts = ctx.facts()
    if not (_prop(facts, "quasi_projective").holds
            and _prop(facts, "morphic").holds):
        return NOT_MET, "-"
    a = _prop(facts, "pi_rickart").holds
    b = _prop(facts, "dual_pi_rickart").holds
    if a != b:
        return VIOLATION, f"pi_rickart={a},dual_pi_rickart={b}"
    return HOLDS, f"both={a}"


def _chk_c2_8(ctx):
    facts = ctx.facts()
    if not (_prop(facts, "c2").holds and _prop(facts, "d2").holds):
        return NOT_MET, "-"
    a = _prop(facts, "dual_pi_rickart").holds
    b = _prop(facts, "pi_rickart").holds
    if a != b:
        return VIOLATION, f"dual_pi_rickart={a},pi_rickart={b}"
    return HOLDS, f"both={a}"


def _chk_l2_9(ctx):
    facts = ctx.facts()
    idem_route = set(facts.idem_masks())
    complement_route = _summand_masks_by_complement(facts)
    if idem_route != complement_route:
        only_a = sorted(idem_route - complement_route)
        only_b = sorted(complement_route - idem_route)
        return VIOLATION, f"idem_only={len(only_a)},complement_only={len(only_b)}"
    end = facts.end()
    checked = 0
    for f in range(end.ring.order):
        imgs, _ = facts.chains(f)
        for im in imgs:
            if (im.mask in idem_route) != (im.mask in complement_route):
                return VIOLATION, f"f={f}"
            checked += 1
    return HOLDS, f"masks={len(idem_route)},chain_points={checked}"


def _chk_p2_11(ctx):
    facts = ctx.facts()
    if not _prop(facts, "dual_pi_rickart").holds:
        return NOT_MET, "-"
    end = facts.end()
    checked = 0
    for e in ring_idempotents(end.ring).tolist():
        if e in (0, end.ring.one):
            continue
        sub = image(end.maps[e])
        inner, _ = facts.inner(sub.mask)
        v = _dual_pi_of(inner, ctx.caps)
        if not v.holds:
            return VIOLATION, f"e={e},f={v.counterexample}"
        checked += 1
    return HOLDS, f"summands={checked}"


def _chk_c2_12(ctx):
    if not _ring_check(ctx.ring, "pi_regular").holds:
        return NOT_MET, "-"
    reg = ctx.reg_module()
    checked = 0
    for e in ring_idempotents(ctx.ring).tolist():
        sub = _right_ideal(reg, ctx.ring, int(e))
        inner, _ = submodule_module(sub, ctx.caps)
        v = _dual_pi_of(inner, ctx.caps)
        if not v.holds:
            return VIOLATION, f"e={e},f={v.counterexample}"
        checked += 1
    return HOLDS, f"ideals={checked}"


def _chk_c2_13(ctx):
    ring = ctx.ring
    if not _ring_check(ring, "pi_regular").holds:
        return NOT_MET, "-"
    mul = ring.mul_np
    centrals = [int(e) for e in ring_idempotents(ring).tolist()
                if e not in (0, ring.one)
                and np.array_equal(mul[e, :], mul[:, e])]
    if not centrals:
        return NOT_MET, "no nontrivial central idempotent"
    for c in centrals:
        for piece in (c, _one_minus(ring, c)):
            corner, _ = corner_ring(ring, piece, ctx.caps)
            if not is_pi_regular(corner).holds:
                return VIOLATION, f"c={c},corner_at={piece}"
    return HOLDS, f"decompositions={len(centrals)}"


def _chk_t2_14_1(ctx):
    return _chk_c2_12(ctx)


def _chk_t2_14_2(ctx):
    reg = ctx.reg_module()
    for e in ring_idempotents(ctx.ring).tolist():
        sub = _right_ideal(reg, ctx.ring, int(e))
        inner, _ = submodule_module(sub, ctx.caps)
        if not _dual_pi_of(inner, ctx.caps).holds:
            return NOT_MET, f"e={e}"
    v = _ring_check(ctx.ring, "pi_regular")
    if not v.holds:
        return VIOLATION, f"a={v.counterexample}"
    return HOLDS, "-"


def _chk_t2_15(ctx):
    ring = ctx.ring
    if ring.order ** 4 > ctx.caps.matrix_check:
        raise SizeCapExceeded("rank-2 endomorphism ring", ring.order ** 4,
                              ctx.caps.matrix_check)
    checked = 0
    for rank in (1, 2):
        mod = ctx.reg_module() if rank == 1 else ctx.free2()
        v = _dual_pi_of(mod, ctx.caps)
        if not v.holds:
            return VIOLATION, f"rank={rank},f={v.counterexample}"
        checked += 1
    mod = ctx.free2()
    facts = Facts(mod, ctx.caps)
    end = facts.end()
    for e in ring_idempotents(end.ring).tolist():
        if e in (0, end.ring.one):
            continue
        sub = image(end.maps[e])
        inner, _ = facts.inner(sub.mask)
        if not _dual_pi_of(inner, ctx.caps).holds:
            return VIOLATION, f"rank=2,e={e}"
        checked += 1
    return HOLDS, f"modules={checked}"


def _chk_l2_16(ctx):
    facts = ctx.facts()
    end = facts.end()
    mul = end.ring.mul_np
    central = [int(e) for e in ring_idempotents(end.ring).tolist()
               if np.array_equal(mul[e, :], mul[:, e])]
    central_masks = {image(end.maps[e]).mask for e in central}
    checked = 0
    for f in range(end.ring.order):
        imgs, stab = facts.chains(f)
        for n, im in enumerate(imgs, start=1):
            if im.mask not in central_masks:
                continue
            nxt = imgs[min(n + 1, stab) - 1]
            if nxt.mask != im.mask:
                return VIOLATION, f"f={f},n={n}"
            checked += 1
    if checked == 0:
        return NOT_MET, "no central idempotent image"
    return HOLDS, f"pairs={checked}"


def _chk_p2_17(ctx):
    facts = ctx.facts()
    end = facts.end()
    fired = None
    for e in ring_idempotents(end.ring).tolist():
        if e in (0, end.ring.one):
            continue
        comp = _one_minus(end.ring, int(e))
        m1, _ = facts.inner(image(end.maps[e]).mask)
        m2, _ = facts.inner(image(end.maps[comp]).mask)
        f1, f2 = Facts(m1, ctx.caps), Facts(m2, ctx.caps)
        if not (_prop(f1, "abelian").holds and _prop(f2, "abelian").holds):
            continue
        if not (_prop(f1, "dual_pi_rickart").holds
                and _prop(f2, "dual_pi_rickart").holds):
            continue
        if len(hom_set(m1, m2, ctx.caps)) != 1:
            continue
        if len(hom_set(m2, m1, ctx.caps)) != 1:
            continue
        fired = int(e)
        break
    if fired is None:
        return NOT_MET, "no qualifying decomposition"
    v = _prop(facts, "dual_pi_rickart")
    if not v.holds:
        return VIOLATION, f"e={fired},f={v.counterexample}"
    return HOLDS, f"e={fired}"


def _chk_c2_19(ctx):
    facts = ctx.facts()
    if not (_prop(facts, "dual_pi_rickart").holds
            and _prop(facts, "abelian").holds):
        return NOT_MET, "-"
    v = _prop(facts, "strongly_co_hopfian")
    if not v.holds:
        return VIOLATION, f"f={v.counterexample}"
    n = max(v.witnesses.values(), default=1)
    return HOLDS, f"max_stab={n}"


def _chk_c2_21(ctx):
    facts = ctx.facts()
    v = _prop(facts, "fitting")
    if not v.holds:
        return NOT_MET, f"f={v.counterexample}"
    w = _prop(facts, "dual_pi_rickart")
    if not w.holds:
        return VIOLATION, f"f={w.counterexample}"
    return HOLDS, "-"


def _chk_p2_22(ctx):
    # The base ring is finite, hence Artinian, and every finite module is
    # finitely generated: the hypotheses hold for every instance.
    facts = ctx.facts()
    v = _prop(facts, "dual_pi_rickart")
    if not v.holds:
        return VIOLATION, f"f={v.counterexample}"
    return HOLDS, f"|R|={ctx.ring.order}"


def _chk_p2_23(ctx):
    ring = ctx.ring
    if ring.order ** 4 > ctx.caps.matrix_check:
        raise SizeCapExceeded("matrix ring", ring.order ** 4,
                              ctx.caps.matrix_check)
    for n in (1, 2):
        mat = ring if n == 1 else matrix_ring(ring, 2, ctx.caps)
        if not _ring_check(mat, "strongly_pi_regular").holds:
            return NOT_MET, f"n={n}"
        mod = ctx.reg_module() if n == 1 else ctx.free2()
        v = _dual_pi_of(mod, ctx.caps)
        if not v.holds:
            return VIOLATION, f"n={n},f={v.counterexample}"
    return HOLDS, "n=1,2"


def _chk_l3_1(ctx):
    facts = ctx.facts()
    v = _prop(facts, "dual_pi_rickart")
    if not v.holds:
        return NOT_MET, "-"
    end = facts.end()
    g = _ring_check(end.ring, "gen_left_pp")
    if not g.holds:
        return VIOLATION, f"a={g.counterexample}"
    pli = _idem_principal_left(end.ring)
    for f, (n, e) in v.witnesses.items():
        im = facts.chains(f)[0][n - 1]
        ann_module = frozenset(left_annihilator(end, im.elems).tolist())
        ann_elem = _l_ann_elem(end.ring, _pow_index(end, f, n))
        comp = _one_minus(end.ring, e)
        principal = pli[comp] if comp in pli else frozenset(
            np.unique(end.ring.mul_np[:, comp]).tolist())
        if not (ann_module == ann_elem == principal):
            return VIOLATION, f"f={f},n={n}"
    return HOLDS, f"maps={end.ring.order}"


def _chk_c3_2(ctx):
    if not _ring_check(ctx.ring, "pi_regular").holds:
        return NOT_MET, "-"
    checked = 0
    for e in ring_idempotents(ctx.ring).tolist():
        if e == 0:
            continue
        corner, _ = corner_ring(ctx.ring, int(e), ctx.caps)
        g = is_generalized_left_pp(corner)
        if not g.holds:
            return VIOLATION, f"e={e},a={g.counterexample}"
        checked += 1
    return HOLDS, f"corners={checked}"


def _chk_c3_3(ctx):
    facts = ctx.facts()
    v = _prop(facts, "dual_pi_rickart")
    if not v.holds:
        return NOT_MET, "-"
    end = facts.end()
    pli = _idem_principal_left(end.ring)
    for f, (n, _) in v.witnesses.items():
        ann = _l_ann_elem(end.ring, _pow_index(end, f, n))
        if not any(s == ann for s in pli.values()):
            return VIOLATION, f"f={f},n={n}"
    return HOLDS, f"maps={end.ring.order}"


def _chk_t3_4_1(ctx):
    facts = ctx.facts()
    end = facts.end()
    pli = _idem_principal_left(end.ring)
    checked = 0
    for f in range(end.ring.order):
        imgs, stab = facts.chains(f)
        for n in range(1, stab + 1):
            ann = _l_ann_elem(end.ring, _pow_index(end, f, n))
            hits = [e for e, s in pli.items() if s == ann]
            if not hits:
                continue
            inter = right_annihilator(end, sorted(ann))
            for e in hits:
                comp_image = image(end.maps[_one_minus(end.ring, e)])
                if inter.mask != comp_image.mask:
                    return VIOLATION, f"f={f},n={n},e={e}"
                checked += 1
    if checked == 0:
        return NOT_MET, "no principal annihilator"
    return HOLDS, f"triples={checked}"


def _chk_t3_4_2(ctx):
    facts = ctx.facts()
    end = facts.end()
    if not _prop(facts, "self_cogenerator").holds:
        return NOT_MET, "-"
    if not _ring_check(end.ring, "gen_left_pp").holds:
        return NOT_MET, "-"
    v = _prop(facts, "dual_pi_rickart")
    if not v.holds:
        return VIOLATION, f"f={v.counterexample}"
    return HOLDS, "-"


def _chk_l3_6(ctx):
    facts = ctx.facts()
    end = facts.end()
    if not _ring_check(end.ring, "pi_regular").holds:
        return NOT_MET, "-"
    v = _prop(facts, "dual_pi_rickart")
    if not v.holds:
        return VIOLATION, f"f={v.counterexample}"
    return HOLDS, f"|S|={end.ring.order}"


def _chk_c3_7(ctx):
    facts = ctx.facts()
    end = facts.end()
    if not _ring_check(end.ring, "strongly_pi_regular").holds:
        return NOT_MET, "-"
    v = _prop(facts, "dual_pi_rickart")
    if not v.holds:
        return VIOLATION, f"f={v.counterexample}"
    return HOLDS, "-"


def _both_summand_exponent(facts: Facts, f: int):
    """Smallest n with Ker f^n and Im f^n both idempotent images."""
    masks = facts.idem_masks()
    imgs, si = facts.chains(f)
    kers, sk = facts.ker_chains(f)
    for n in range(1, max(si, sk) + 1):
        im = imgs[min(n, si) - 1]
        ker = kers[min(n, sk) - 1]
        if im.mask in masks and ker.mask in masks:
            return n
    return None


def _chk_l3_9_1(ctx):
    facts = ctx.facts()
    end = facts.end()
    if not _ring_check(end.ring, "pi_regular").holds:
        return NOT_MET, "-"
    worst = 0
    for f in range(end.ring.order):
        n = _both_summand_exponent(facts, f)
        if n is None:
            return VIOLATION, f"f={f}"
        worst = max(worst, n)
    return HOLDS, f"max_n={worst}"


def _chk_l3_9_2(ctx):
    facts = ctx.facts()
    end = facts.end()
    for f in range(end.ring.order):
        if _both_summand_exponent(facts, f) is None:
            return NOT_MET, f"f={f}"
    v = _ring_check(end.ring, "pi_regular")
    if not v.holds:
        return READING_FLAG, f"a={v.counterexample}"
    return HOLDS, "-"


def _chk_l3_10_1(ctx):
    if not _ring_check(ctx.ring, "pi_regular").holds:
        return NOT_MET, "-"
    checked = 0
    for e in ring_idempotents(ctx.ring).tolist():
        if e == 0:
            continue
        corner, _ = corner_ring(ctx.ring, int(e), ctx.caps)
        if not is_pi_regular(corner).holds:
            return VIOLATION, f"e={e}"
        checked += 1
    return HOLDS, f"corners={checked}"


def _mat2(ctx):
    ring = ctx.ring
    if ring.order ** 4 > ctx.caps.matrix_check:
        raise SizeCapExceeded("matrix ring", ring.order ** 4,
                              ctx.caps.matrix_check)
    memo = ring._memo
    if "mat2" not in memo:
        memo["mat2"] = matrix_ring(ring, 2, ctx.caps)
    return memo["mat2"]


def _chk_l3_10_2(ctx):
    mat = _mat2(ctx)
    if not _ring_check(mat, "pi_regular").holds:
        return NOT_MET, "-"
    v = _ring_check(ctx.ring, "pi_regular")
    if not v.holds:
        return VIOLATION, f"a={v.counterexample}"
    return HOLDS, f"|M2|={mat.order}"


def _chk_l3_10_3(ctx):
    if not ring_predicates(ctx.ring).commutative:
        return NOT_MET, "-"
    mat = _mat2(ctx)
    a = _ring_check(ctx.ring, "pi_regular").holds
    b = _ring_check(mat, "pi_regular").holds
    if a != b:
        return VIOLATION, f"base={a},matrix={b}"
    return HOLDS, f"both={a}"


def _chk_p3_11(ctx):
    preds = ring_predicates(ctx.ring)
    if not (preds.commutative and _ring_check(ctx.ring, "pi_regular").holds):
        return NOT_MET, "-"
    if ctx.ring.order ** 4 > ctx.caps.matrix_check:
        raise SizeCapExceeded("rank-2 endomorphism ring",
                              ctx.ring.order ** 4, ctx.caps.matrix_check)
    mod = ctx.free2()
    facts = Facts(mod, ctx.caps)
    end = facts.end()
    checked = 0
    for e in ring_idempotents(end.ring).tolist():
        if e == 0:
            continue
        if e == end.ring.one:
            v = _prop(facts, "dual_pi_rickart")
        else:
            inner, _ = facts.inner(image(end.maps[e]).mask)
            v = _dual_pi_of(inner, ctx.caps)
        if not v.holds:
            return VIOLATION, f"e={e},f={v.counterexample}"
        checked += 1
    return HOLDS, f"projectives={checked}"


def _chk_t3_12_1(ctx):
    facts = ctx.facts()
    if not (_prop(facts, "d2").holds and _prop(facts, "dual_pi_rickart").holds):
        return NOT_MET, "-"
    v = _ring_check(facts.end().ring, "pi_regular")
    if not v.holds:
        return VIOLATION, f"a={v.counterexample}"
    return HOLDS, "-"


def _chk_t3_12_2(ctx):
    facts = ctx.facts()
    if not _prop(facts, "d2").holds:
        return NOT_MET, "-"
    if not _ring_check(facts.end().ring, "pi_regular").holds:
        return NOT_MET, "-"
    v = _prop(facts, "dual_pi_rickart")
    if not v.holds:
        return VIOLATION, f"f={v.counterexample}"
    return HOLDS, "-"


def _chk_c3_14(ctx):
    facts = ctx.facts()
    if not (_prop(facts, "quasi_projective").holds
            and _prop(facts, "dual_pi_rickart").holds):
        return NOT_MET, "-"
    v = _ring_check(facts.end().ring, "pi_regular")
    if not v.holds:
        return VIOLATION, f"a={v.counterexample}"
    return HOLDS, "-"


def _chk_c3_15(ctx):
    facts = ctx.facts()
    if not (_prop(facts, "quasi_projective").holds
            and _prop(facts, "dual_pi_rickart").holds):
        return NOT_MET, "-"
    end = facts.end()
    checked = 0
    for sub in facts.lattice():
        if not is_fully_invariant(sub, end.maps):
            continue
        quot, _ = facts.quotient(sub.mask)
        v = _dual_pi_of(quot, ctx.caps)
        if not v.holds:
            return VIOLATION, f"N={sub.size},f={v.counterexample}"
        checked += 1
    return HOLDS, f"quotients={checked}"


def _chk_c3_16(ctx):
    facts = ctx.facts()
    if not (_prop(facts, "quasi_projective").holds
            and _prop(facts, "duo").holds
            and _prop(facts, "dual_pi_rickart").holds):
        return NOT_MET, "-"
    checked = 0
    for sub in facts.lattice():
        quot, _ = facts.quotient(sub.mask)
        v = _dual_pi_of(quot, ctx.caps)
        if not v.holds:
            return VIOLATION, f"N={sub.size},f={v.counterexample}"
        checked += 1
    return HOLDS, f"quotients={checked}"


def _chk_c3_17(ctx):
    facts = ctx.facts()
    if not (_prop(facts, "quasi_projective").holds
            and _prop(facts, "dual_pi_rickart").holds):
        return NOT_MET, "-"
    rad = radical(facts.module, ctx.caps)
    soc = socle(facts.module, ctx.caps)
    for label, sub in (("rad", rad), ("soc", soc)):
        quot, _ = facts.quotient(sub.mask)
        v = _dual_pi_of(quot, ctx.caps)
        if not v.holds:
            return VIOLATION, f"{label},f={v.counterexample}"
    return HOLDS, f"|rad|={rad.size},|soc|={soc.size}"


def _chk_p3_18(ctx):
    facts = ctx.facts()
    if not _prop(facts, "dual_pi_rickart").holds:
        return NOT_MET, "-"
    rows = small_image_endos(facts)
    for f, nilpotent, _ in rows:
        if not nilpotent:
            return VIOLATION, f"f={f}"
    return HOLDS, f"small_image={len(rows)}"


def _annihilator_equality(facts: Facts, f: int, n: int) -> bool:
    end = facts.end()
    imgs, stab = facts.chains(f)
    im = imgs[min(n, stab) - 1]
    ann = left_annihilator(end, im.elems)
    rm = right_annihilator(end, ann.tolist())
    return rm.mask == im.mask


def _chk_t3_19_1(ctx):
    facts = ctx.facts()
    v = _prop(facts, "dual_pi_rickart")
    if not v.holds:
        return NOT_MET, "-"
    end = facts.end()
    if not _ring_check(end.ring, "gen_left_pp").holds:
        return VIOLATION, "gen_left_pp"
    for f, (n, _) in v.witnesses.items():
        if not _annihilator_equality(facts, f, n):
            return VIOLATION, f"f={f},n={n}"
    return HOLDS, f"maps={end.ring.order}"


def _chk_t3_19_2(ctx):
    facts = ctx.facts()
    end = facts.end()
    if not _ring_check(end.ring, "gen_left_pp").holds:
        return NOT_MET, "gen_left_pp false"
    pli = _idem_principal_left(end.ring)
    for f in range(end.ring.order):
        _, stab = facts.chains(f)
        good = None
        for n in range(1, stab + 1):
            ann = _l_ann_elem(end.ring, _pow_index(end, f, n))
            if any(s == ann for s in pli.values()) \
                    and _annihilator_equality(facts, f, n):
                good = n
                break
        if good is None:
            return NOT_MET, f"f={f}"
    v = _prop(facts, "dual_pi_rickart")
    if not v.holds:
        return VIOLATION, f"f={v.counterexample}"
    return HOLDS, "-"


def _chk_t3_19c_1(ctx):
    facts = ctx.facts()
    v = _prop(facts, "dual_pi_rickart")
    if not v.holds:
        return NOT_MET, "-"
    masks = facts.idem_masks()
    for f, (n, _) in v.witnesses.items():
        imgs, stab = facts.chains(f)
        im = imgs[min(n, stab) - 1]
        if not _annihilator_equality(facts, f, n) or im.mask not in masks:
            return VIOLATION, f"f={f},n={n}"
    return HOLDS, "-"


def _chk_t3_19c_2(ctx):
    facts = ctx.facts()
    end = facts.end()
    masks = facts.idem_masks()
    for f in range(end.ring.order):
        imgs, stab = facts.chains(f)
        good = None
        for n in range(1, stab + 1):
            im = imgs[n - 1]
            if im.mask in masks and _annihilator_equality(facts, f, n):
                good = n
                break
        if good is None:
            return NOT_MET, f"f={f}"
    v = _prop(facts, "dual_pi_rickart")
    if not v.holds:
        return VIOLATION, f"f={v.counterexample}"
    return HOLDS, "-"


def _chk_t3_20(ctx):
    facts = ctx.facts()
    if not _prop(facts, "dual_pi_rickart").holds:
        return NOT_MET, "-"
    end = facts.end()
    verdict, sing = singular_nil_jacobson(end.ring, ctx.caps)
    if not verdict.holds:
        a, reason = verdict.counterexample
        return VIOLATION, f"a={a}({reason})"
    return HOLDS, f"|Z_l|={sing.size}"


def _chk_p3_21_1(ctx):
    facts = ctx.facts()
    if not (_prop(facts, "indecomposable").holds
            and _prop(facts, "dual_pi_rickart").holds):
        return NOT_MET, "-"
    end = facts.end()
    epis = nilps = 0
    for f in range(end.ring.order):
        epi = _is_epi(end, f)
        imgs, _ = facts.chains(f)
        nilp = imgs[-1].is_zero()
        if not (epi or nilp):
            return VIOLATION, f"f={f} neither"
        if epi and nilp and facts.module.order > 1:
            return VIOLATION, f"f={f} both"
        epis += int(epi)
        nilps += int(nilp)
    return HOLDS, f"epi={epis},nilpotent={nilps}"


def _chk_p3_21_2(ctx):
    facts = ctx.facts()
    end = facts.end()
    for f in range(end.ring.order):
        imgs, _ = facts.chains(f)
        if not (_is_epi(end, f) or imgs[-1].is_zero()):
            return NOT_MET, f"f={f}"
    problems = []
    if not _prop(facts, "indecomposable").holds:
        problems.append("indecomposable")
    if not _prop(facts, "dual_pi_rickart").holds:
        problems.append("dual_pi_rickart")
    if problems:
        return VIOLATION, ",".join(problems)
    return HOLDS, "-"


def _chk_t3_22_1(ctx):
    facts = ctx.facts()
    end = facts.end()
    if not ring_predicates(end.ring).local:
        return NOT_MET, "-"
    nil = nil_radical_check(end.ring)
    if not nil.holds:
        return NOT_MET, f"a={nil.counterexample}"
    problems = []
    if not _prop(facts, "indecomposable").holds:
        problems.append("indecomposable")
    if not _prop(facts, "dual_pi_rickart").holds:
        problems.append("dual_pi_rickart")
    if problems:
        return VIOLATION, ",".join(problems)
    return HOLDS, "-"


def _chk_t3_22_2(ctx):
    facts = ctx.facts()
    if not (_prop(facts, "morphic").holds
            and _prop(facts, "indecomposable").holds
            and _prop(facts, "dual_pi_rickart").holds):
        return NOT_MET, "-"
    end = facts.end()
    problems = []
    if not ring_predicates(end.ring).local:
        problems.append("local")
    if not nil_radical_check(end.ring).holds:
        problems.append("nil_radical")
    if problems:
        return VIOLATION, ",".join(problems)
    return HOLDS, "-"


# ---------------------------------------------------------------------------
# the registry
# ---------------------------------------------------------------------------


@dataclasses.dataclass
class Entry:
    id: str
    scope: str
    statement: str
    check: object
    note: str = ""


REGISTRY = {e.id: e for e in [
    Entry("P2.2.1", "ring",
          "regular module dual pi-Rickart => ring pi-regular", _chk_p2_2_1),
    Entry("P2.2.2", "ring",
          "ring pi-regular => regular module dual pi-Rickart", _chk_p2_2_2),
    Entry("P2.4.1", "module",
          "dual Rickart => dual pi-Rickart with exponent 1", _chk_p2_4_1),
    Entry("P2.4.2", "module",
          "End reduced and dual pi-Rickart => dual Rickart", _chk_p2_4_2),
    Entry("L2.5.1", "module",
          "dual pi-Rickart and End a domain => nonzero maps epi", _chk_l2_5_1),
    Entry("L2.5.2", "module",
          "nonzero maps epi => dual pi-Rickart and End a domain", _chk_l2_5_2),
    Entry("T2.7.1", "module",
          "D2 and dual pi-Rickart => pi-Rickart", _chk_t2_7_1),
    Entry("T2.7.2", "module",
          "C2 and pi-Rickart => dual pi-Rickart", _chk_t2_7_2),
    Entry("T2.7.3", "module",
          "quasi-projective and morphic => pi-Rickart equiv dual pi-Rickart",
          _chk_t2_7_3,
          note="projectivity hypothesis represented by quasi-projective"
               " plus morphic"),
    Entry("C2.8", "module",
          "C2 and D2 => dual pi-Rickart equiv pi-Rickart", _chk_c2_8),
    Entry("L2.9", "module",
          "summand via idempotent image equals summand via complement",
          _chk_l2_9),
    Entry("P2.11", "module",
          "dual pi-Rickart passes to images of idempotents", _chk_p2_11),
    Entry("C2.12", "ring",
          "pi-regular ring => cyclic ideals e*R dual pi-Rickart", _chk_c2_12),
    Entry("C2.13", "ring",
          "pi-regular product => pi-regular factors", _chk_c2_13),
    Entry("T2.14.1", "ring",
          "pi-regular => every summand ideal e*R dual pi-Rickart",
          _chk_t2_14_1),
    Entry("T2.14.2", "ring",
          "every summand ideal e*R dual pi-Rickart => pi-regular",
          _chk_t2_14_2),
    Entry("T2.15", "ring",
          "free modules and their summands are dual pi-Rickart", _chk_t2_15,
          note="partial: exercised on free ranks 1 and 2 only"),
    Entry("L2.16", "module",
          "central idempotent images are stable along the power chain",
          _chk_l2_16),
    Entry("P2.17", "module",
          "sum of two abelian dual pi-Rickart pieces with no cross maps",
          _chk_p2_17),
    Entry("C2.19", "module",
          "dual pi-Rickart and abelian End => strongly co-Hopfian",
          _chk_c2_19),
    Entry("C2.21", "module",
          "Fitting => dual pi-Rickart", _chk_c2_21),
    Entry("P2.22", "module",
          "finite base ring => dual pi-Rickart", _chk_p2_22),
    Entry("P2.23", "ring",
          "strongly pi-regular matrix ring => free module dual pi-Rickart",
          _chk_p2_23, note="matrix sizes 1 and 2"),
    Entry("L3.1", "module",
          "dual pi-Rickart => End generalized left pp with matching"
          " annihilators", _chk_l3_1),
    Entry("C3.2", "ring",
          "pi-regular => corners generalized left pp", _chk_c3_2),
    Entry("C3.3", "module",
          "dual pi-Rickart => left annihilator of f^n is a principal"
          " idempotent ideal", _chk_c3_3),
    Entry("T3.4.1", "module",
          "principal annihilator S*e => kernel intersection is (1-e)M",
          _chk_t3_4_1),
    Entry("T3.4.2", "module",
          "self-cogenerator with gen left pp End => dual pi-Rickart",
          _chk_t3_4_2),
    Entry("L3.6", "module",
          "pi-regular End => dual pi-Rickart", _chk_l3_6),
    Entry("C3.7", "module",
          "strongly pi-regular End => dual pi-Rickart", _chk_c3_7),
    Entry("L3.9.1", "module",
          "pi-regular End => some power has kernel and image summands",
          _chk_l3_9_1),
    Entry("L3.9.2", "module",
          "kernel and image summands at some power => pi-regular End",
          _chk_l3_9_2,
          note="tentative converse: failures are flagged, not violations"),
    Entry("L3.10.1", "ring",
          "pi-regular => corners pi-regular", _chk_l3_10_1),
    Entry("L3.10.2", "ring",
          "pi-regular 2x2 matrix ring => pi-regular base", _chk_l3_10_2),
    Entry("L3.10.3", "ring",
          "commutative: pi-regular equiv pi-regular 2x2 matrices",
          _chk_l3_10_3),
    Entry("P3.11", "ring",
          "commutative pi-regular => rank-2 projectives dual pi-Rickart",
          _chk_p3_11, note="projectives realized as idempotent images of"
                           " the rank-2 free module"),
    Entry("T3.12.1", "module",
          "D2 and dual pi-Rickart => End pi-regular", _chk_t3_12_1),
    Entry("T3.12.2", "module",
          "D2 and End pi-regular => dual pi-Rickart", _chk_t3_12_2),
    Entry("C3.14", "module",
          "quasi-projective dual pi-Rickart => End pi-regular", _chk_c3_14),
    Entry("C3.15", "module",
          "quasi-projective dual pi-Rickart => fully invariant quotients"
          " dual pi-Rickart", _chk_c3_15),
    Entry("C3.16", "module",
          "quasi-projective duo dual pi-Rickart => all quotients dual"
          " pi-Rickart", _chk_c3_16),
    Entry("C3.17", "module",
          "quasi-projective dual pi-Rickart => M/rad and M/soc dual"
          " pi-Rickart", _chk_c3_17),
    Entry("P3.18", "module",
          "dual pi-Rickart => small-image endomorphisms nilpotent",
          _chk_p3_18),
    Entry("T3.19.1", "module",
          "dual pi-Rickart => gen left pp End and double-annihilator"
          " closure of f^n M", _chk_t3_19_1),
    Entry("T3.19.2", "module",
          "gen left pp End and double-annihilator closure => dual"
          " pi-Rickart", _chk_t3_19_2),
    Entry("T3.19c.1", "module",
          "dual pi-Rickart => f^n M double-annihilator closed and a"
          " summand", _chk_t3_19c_1),
    Entry("T3.19c.2", "module",
          "f^n M double-annihilator closed and a summand => dual"
          " pi-Rickart", _chk_t3_19c_2),
    Entry("T3.20", "module",
          "dual pi-Rickart => left singular ideal of End nil and inside"
          " the radical", _chk_t3_20),
    Entry("P3.21.1", "module",
          "indecomposable dual pi-Rickart => maps are epi or nilpotent",
          _chk_p3_21_1),
    Entry("P3.21.2", "module",
          "maps all epi or nilpotent => indecomposable dual pi-Rickart",
          _chk_p3_21_2),
    Entry("T3.22.1", "module",
          "End local with nil radical => indecomposable dual pi-Rickart",
          _chk_t3_22_1),
    Entry("T3.22.2", "module",
          "morphic indecomposable dual pi-Rickart => End local with nil"
          " radical", _chk_t3_22_2),
]}


def expand_ids(requested=None) -> list:
    """Resolve registry ids; a bare prefix covers its directed sub-entries."""
    if not requested:
        return list(REGISTRY)
    out = []
    for token in requested:
        token = token.strip()
        hits = [tid for tid in REGISTRY
                if tid == token or tid.startswith(token + ".")]
        if not hits:
            raise UnknownTheorem(token)
        out.extend(hits)
    seen = set()
    unique = []
    for tid in out:
        if tid not in seen:
            seen.add(tid)
            unique.append(tid)
    return unique


def verify(theorem_id: str, ctx: InstanceContext) -> list:
    """Evaluate one registry id (or prefix) on an instance."""
    out = []
    for tid in expand_ids([theorem_id]):
        entry = REGISTRY[tid]
        if entry.scope != ctx.kind:
            out.append(TheoremVerdict(tid, ctx.name, SKIPPED,
                                      f"needs a {entry.scope} instance"))
            continue
        try:
            status, witness = entry.check(ctx)
        except SizeCapExceeded as exc:
            status, witness = SKIPPED, f"cap:{exc.what}"
        out.append(TheoremVerdict(tid, ctx.name, status, witness))
    return out


def verify_all(ctx: InstanceContext, requested=None) -> list:
    """Evaluate every applicable registry entry on an instance."""
    out = []
    for tid in expand_ids(requested):
        entry = REGISTRY[tid]
        if entry.scope != ctx.kind:
            continue
        try:
            status, witness = entry.check(ctx)
        except SizeCapExceeded as exc:
            status, witness = SKIPPED, f"cap:{exc.what}"
        out.append(TheoremVerdict(tid, ctx.name, status, witness))
    return out


def summarize(verdicts: list) -> dict:
    """Counts by status plus the ids whose hypotheses never fired."""
    counts = {HOLDS: 0, NOT_MET: 0, VIOLATION: 0, SKIPPED: 0, READING_FLAG: 0}
    fired = {}
    for v in verdicts:
        counts[v.status] += 1
        fired.setdefault(v.theorem_id, False)
        if v.status in (HOLDS, VIOLATION, READING_FLAG):
            fired[v.theorem_id] = True
    never = sorted(tid for tid, did in fired.items() if not did)
    return {"counts": counts, "never_fired": never,
            "total": len(verdicts)}
