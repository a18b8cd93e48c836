import json
import os
import re

import pytest

import matlis.duality as duality
import matlis.flm as flm
import matlis.invariants as invariants
import matlis.suite as suite
from matlis.suite import (EXAMPLE_CHECKS, MONOMIAL, REGISTRY, SMALL, InstanceSpec,
                          gen_instance, registered_tags, run_checks, run_suite)

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")
EXPECTED_TAGS = {
    "lem100206c1", "lem100213c", "defn100616a", "lem100423f", "thm100308a", "lem100312b",
    "thm100312b", "cor100319d", "thm100320b", "lemma1", "cor28", "cor100416b", "defn100602b",
    "prop100317a", "prop100601b", "prop100601a", "cor100319a", "prop100416d", "prop100419a",
    "prop100320a", "prop100308a", "prop100419b", "prop100616a", "prop100616b",
    "ex100419a", "ex14", "ex100420a", "ex100420b",
    # umbrella tags listed with the suite itself
    "intthm100928a", "lem100215a",
}


def golden(name):
    with open(os.path.join(GOLDEN, name), encoding="utf-8") as fh:
        return fh.read()


# -- registry ------------------------------------------------------------------

def test_registry_covers_every_tag_and_has_no_orphans():
    assert registered_tags() == EXPECTED_TAGS


def test_registry_ids_unique():
    ids = [c.id for c in REGISTRY] + [name for name, _ in EXAMPLE_CHECKS]
    assert len(ids) == len(set(ids))


def test_records_carry_tags():
    rep = run_suite(3, 1)
    for r in rep.records:
        assert r["tag"] in EXPECTED_TAGS
        assert r["verdict"] in ("pass", "fail", "scope")


# -- generation --------------------------------------------------------------

def test_line_profile():
    R, _ = gen_instance(InstanceSpec(seed=11, n_fixed=1, ideal_kind="zero"))
    assert R.n == 1 and not R.ideal.generators


def test_generation_deterministic():
    a = suite.Instance(InstanceSpec(seed=123, **SMALL)).to_json()
    b = suite.Instance(InstanceSpec(seed=123, **SMALL)).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_generated_rings_proper_and_homogeneous():
    for s in range(20):
        R, mods = gen_instance(InstanceSpec(seed=s))
        assert not R.ideal.is_unit()
        assert all(len({sum(e) for e in g}) == 1 for g in R.gb)
        assert mods[2].is_finite_length() and mods[3].is_finite_length()


def test_golden_instance_seed0_monomial():
    inst = suite.Instance(InstanceSpec(seed=0, **MONOMIAL))
    got = json.dumps(inst.to_json(), sort_keys=True, indent=1) + "\n"
    assert got == golden("instance_seed0_monomial.json")


def test_golden_report_cases1():
    got = run_suite(2024, 1).dumps() + "\n"
    assert got == golden("report_seed2024_cases1.json")


def test_suite_determinism_and_parallel():
    a = run_suite(5, 3).dumps()
    assert a == run_suite(5, 3).dumps()
    assert a == run_suite(5, 3, workers=2).dumps()


def test_seed42_all_pass():
    rep = run_suite(42, 25)
    assert rep.summary()["fail"] == 0
    assert rep.ok


def test_failing_record_embeds_instance():
    bad = suite.Check("always-fails", "lemma1", lambda I: ("fail", {"why": "test"}), "")
    rec = suite.run_check(bad, suite.Instance(InstanceSpec(seed=1, **SMALL)))
    assert rec["verdict"] == "fail"
    assert rec["instance"]["seed"] == 1 and "ring" in rec["instance"]


def test_errors_become_fail_and_scope_verdicts():
    def boom(I):
        raise RuntimeError("kaboom")

    def out_of_scope(I):
        raise suite.ScopeError("nope")
    inst = suite.Instance(InstanceSpec(seed=1, **SMALL))
    assert suite.run_check(suite.Check("b", "lemma1", boom, ""), inst)["verdict"] == "fail"
    assert suite.run_check(suite.Check("s", "lemma1", out_of_scope, ""), inst)["verdict"] == "scope"
    with pytest.raises(ValueError):
        run_checks(["betti-bass-duality"], 0, 0)


def test_table_rendering():
    rep = run_checks(["betti-bass-duality"], 0, 2, **SMALL)
    t = rep.table()
    assert t.splitlines()[0].split() == ["check", "tag", "seed", "verdict"]
    assert re.search(r"pass 2\s+fail 0\s+scope 0", t)


# -- mutation tests ------------------------------------------------------------------
# Each mutation breaks one piece of the library; the matching check must notice.

def _fails(check_id, seed=0, cases=8, **profile):
    prof = dict(SMALL)
    prof.update(profile)
    rep = run_checks([check_id], seed, cases, **prof)
    return rep.summary()["fail"]


def test_mutation_dual_without_transpose(monkeypatch):
    """Skipping the transpose in the finite-length dual breaks Bass/Betti duality."""
    assert _fails("betti-bass-duality") == 0

    def bad_dual(self):
        return flm.FiniteLengthModule(self.ring, [-d for d in self.degrees],
                                      [X.copy() for X in self.ops])
    monkeypatch.setattr(flm.FiniteLengthModule, "dual", bad_dual)
    assert _fails("betti-bass-duality") > 0


def test_mutation_stabilization_exponent(monkeypatch):
    """Truncating the artinian side at m^0 makes every tensor vanish."""
    assert _fails("vanishing-tensor") == 0
    monkeypatch.setattr(duality, "stabilization_exponent", lambda A: 0)
    assert _fails("vanishing-tensor") + _fails("tensor-truncation") > 0


def test_mutation_depth_off_by_one(monkeypatch):
    """Reporting depth one too high breaks the depth/Ext formulas."""
    assert _fails("depth-formulas-ext", **MONOMIAL) == 0
    real = invariants.depth_width

    def shifted(a, L, bound=None, kind="depth"):
        v = real(a, L, bound, kind)
        return v + 1 if isinstance(v, int) else v
    monkeypatch.setattr(invariants, "depth_width", shifted)
    assert _fails("depth-formulas-ext", **MONOMIAL) > 0


def test_mutation_ass_box_too_small(monkeypatch):
    """Searching colon witnesses in too small a box loses embedded primes."""
    assert _fails("att-equals-ass", **MONOMIAL) == 0

    def small_box(gens, n):
        import itertools
        top = [max((g[i] for g in gens), default=0) for i in range(n)]
        return itertools.product(*(range(max(t - 1, 1)) for t in top))
    monkeypatch.setattr(invariants, "_box", small_box)
    assert _fails("att-equals-ass", cases=12, **MONOMIAL) > 0
