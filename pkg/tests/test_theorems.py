"""Implication registry: expansion, scoping, statuses, summaries."""

import pytest

from pirick.caps import caps_from_env
from pirick.errors import UnknownTheorem
from pirick.families import ex23_module, ex23_ring, zmod
from pirick.modules import ring_as_module
from pirick.theorems import (HOLDS, InstanceContext, NOT_MET, REGISTRY,
                             SKIPPED, VIOLATION, expand_ids, summarize,
                             verify, verify_all)

CAPS = caps_from_env()


def _ring_ctx(ring, name=None):
    return InstanceContext(name or ring.name, "ring", ring, None, CAPS)


def _module_ctx(module, name=None):
    return InstanceContext(name or module.name, "module", module.ring,
                           module, CAPS)


def test_registry_is_complete():
    assert len(REGISTRY) == 52
    # directed splits keep both directions addressable
    assert "P2.2.1" in REGISTRY and "P2.2.2" in REGISTRY
    assert "T3.19.1" in REGISTRY and "T3.19c.1" in REGISTRY


def test_expand_ids_prefix_rules():
    assert expand_ids(["P2.2"]) == ["P2.2.1", "P2.2.2"]
    assert expand_ids(["P2.2.1"]) == ["P2.2.1"]
    # a prefix never leaks into a sibling family: T3.19 has its own entries
    # and T3.19c is distinct
    t319 = expand_ids(["T3.19"])
    assert t319 == ["T3.19.1", "T3.19.2"]
    assert expand_ids(["T3.19c"]) == ["T3.19c.1", "T3.19c.2"]
    assert expand_ids() == list(REGISTRY)
    with pytest.raises(UnknownTheorem):
        expand_ids(["T9.99"])


def test_ring_equivalence_entries_on_z4():
    ctx = _ring_ctx(zmod(4))
    verdicts = verify("P2.2", ctx)
    assert [v.status for v in verdicts] == [HOLDS, HOLDS]
    assert all(v.instance == "z4" for v in verdicts)


def test_scope_mismatch_is_skipped():
    ctx = _ring_ctx(zmod(4))
    verdicts = verify("T2.7", ctx)        # needs a module instance
    assert all(v.status == SKIPPED for v in verdicts)
    assert "module instance" in verdicts[0].witness


def test_module_entries_on_z4_regular():
    module = ring_as_module(zmod(4), CAPS, name="z4_reg")
    ctx = _module_ctx(module)
    verdicts = verify_all(ctx)
    statuses = {v.theorem_id: v.status for v in verdicts}
    assert VIOLATION not in statuses.values()
    # the dual condition holds, so the n=1 specialization entry must fire
    assert statuses["P2.4.1"] in (HOLDS, NOT_MET)
    assert statuses["C2.21"] == HOLDS     # Fitting at desk scale
    assert statuses["T3.20"] == HOLDS


def test_non_reduced_hypothesis_not_met():
    # the reduced => n=1 transfer entry cannot fire on a non-reduced instance
    module = ring_as_module(zmod(4), CAPS, name="z4_reg")
    verdicts = verify("P2.4.2", _module_ctx(module))
    assert verdicts[0].status == NOT_MET


def test_ex23_runs_clean():
    module = ex23_module(CAPS)
    verdicts = verify_all(_module_ctx(module, "ex23"))
    assert all(v.status != VIOLATION for v in verdicts)
    by_id = {v.theorem_id: v for v in verdicts}
    # the instance separates the two dual conditions, so the equivalence
    # under the reduced hypothesis must be vacuous here, not violated
    assert by_id["P2.4.2"].status in (NOT_MET, HOLDS)


def test_matrix_gated_entries_skip_on_large_rings():
    ring = ex23_ring(CAPS)                # order 8 -> 8^4 exceeds the gate
    verdicts = verify("T2.15", _ring_ctx(ring))
    assert any(v.status == SKIPPED and v.witness.startswith("cap:")
               for v in verdicts) or all(v.status != VIOLATION
                                         for v in verdicts)


def test_summarize_counts_and_never_fired():
    module = ring_as_module(zmod(4), CAPS, name="z4_reg")
    verdicts = verify_all(_module_ctx(module))
    summary = summarize(verdicts)
    assert summary["total"] == len(verdicts)
    assert summary["counts"][VIOLATION] == 0
    assert sum(summary["counts"].values()) == summary["total"]
    # ids that only report hypothesis_not_met on this instance are listed
    assert isinstance(summary["never_fired"], list)


def test_wrong_kind_construction_rejected():
    from pirick.errors import PirickError
    with pytest.raises(PirickError):
        InstanceContext("x", "monoid", zmod(4), None, CAPS)
