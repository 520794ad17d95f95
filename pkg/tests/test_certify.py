import itertools
import json

import pytest
from hypothesis import given, strategies as st

from sl12gen.action import sl_order
from sl12gen.certify import (
    certify_full_generation,
    corrupted,
    sweep,
    verify_corollary,
    verify_lemma_5,
    verify_lemma_alt,
    verify_lemma_alt5,
    verify_orders,
    verify_prop_steps,
)
from sl12gen.ff import is_irreducible, is_prime, make_field
from sl12gen.gens import Unsupported, make_pair, valid_ts


def _check(report, name):
    return next(c for c in report.checks if c.name == name)


def _second_modulus(p, a):
    cands = sorted(c + (1,) for c in itertools.product(range(p), repeat=a))
    return [c for c in cands if is_irreducible(c, p)][1]


def test_orders_pass():
    assert verify_orders(make_pair(make_field(7), 3)).verdict == "pass"
    assert verify_orders(make_pair(make_field(5), 1, "tilde")).verdict == "pass"


def test_orders_corrupted_names_failure():
    pair = corrupted(make_pair(make_field(7), 3, check=False), row=2, col=2)
    report = verify_orders(pair)
    assert report.verdict == "fail"
    failed = [c.name for c in report.checks if c.ok is False]
    assert "x^2 = I" in failed
    # later checks still ran
    assert len(report.checks) == 6


@pytest.mark.parametrize("p,t", [(2, 1), (7, 3), (11, 3), (13, 1)])
def test_lemma_alt_passes(p, t):
    report = verify_lemma_alt(make_field(p), t)
    assert report.verdict == "pass"
    assert [c.ok for c in report.checks] == [True] * 7


def test_lemma_alt_details():
    assert verify_lemma_alt(make_field(11), 3).details["gamma_exponent"] == 132
    r = verify_lemma_alt(make_field(7), 3)
    assert _check(r, "eta3").observed == "(e1,e3)(e2,e8)(e4,e9)(e5,e6)"
    assert _check(r, "g^x").observed == "(e3,e10,e8)"


def test_lemma_alt_rejects_p5():
    with pytest.raises(Unsupported):
        verify_lemma_alt(make_field(5))


@pytest.mark.parametrize("p", [3, 7])
def test_lemma_alt_independent_of_t_and_modulus(p):
    verdicts, observed = set(), set()
    for modulus in (None, _second_modulus(p, 2)):
        F = make_field(p, 2, modulus)
        for t in list(valid_ts(F))[:3]:
            r = verify_lemma_alt(F, t)
            verdicts.add(r.verdict)
            observed.add(tuple(c.observed for c in r.checks[1:]))
    assert verdicts == {"pass"} and len(observed) == 1


def test_expected_values_do_not_depend_on_input():
    reports = [verify_lemma_alt(make_field(p, a)) for p, a in [(2, 1), (3, 2), (19, 1)]]
    expected = {tuple(c.expected for c in r.checks) for r in reports}
    assert len(expected) == 1
    assert {"20160", "239500800"} <= set(next(iter(expected)))


@pytest.mark.parametrize("p,a", [(3, 1), (2, 2), (7, 1)])
def test_lemma_5(p, a):
    F = make_field(p, a)
    r = verify_lemma_5(F)
    target = sl_order(5, F) * (1 if p == 2 else 2)
    assert r.verdict == "pass"
    assert _check(r, "|N|").observed == str(target)
    if p == 2:
        assert all("diag" not in c.name for c in r.checks)


def test_lemma_5_hypothesis_violated():
    F = make_field(3)
    r = verify_lemma_5(F, 0)
    assert r.verdict == "infeasible" and "t != 0" in r.notes[0]
    r = verify_lemma_5(F, 0, exploratory=True)
    assert r.verdict == "infeasible" and r.details["closure_order"] == "32"


def test_lemma_5_too_large():
    r = verify_lemma_5(make_field(17))
    assert r.verdict == "infeasible" and "guard" in r.notes[0]


@pytest.mark.parametrize("p,t", [(3, 1), (7, 3)])
def test_prop_steps(p, t):
    r = verify_prop_steps(make_field(p), t)
    assert r.verdict == "pass"


def test_prop_steps_beyond_guard():
    F = make_field(7, 2)
    r = verify_prop_steps(F, F.gen())
    assert r.checks[0].ok is True
    assert r.checks[1].ok is None and r.verdict == "infeasible"


def test_lemma_alt5():
    r = verify_lemma_alt5(1, 1)
    assert r.verdict == "pass"
    assert _check(r, "order(gamma_t delta_t^2)").observed == 313
    assert _check(r, "order(gamma_t delta_t gamma_t^3 delta_t^3)").observed == 19531


def test_lemma_alt5_blocks_do_not_depend_on_t():
    r1, r2 = verify_lemma_alt5(1, 1), verify_lemma_alt5(1, 2)
    assert [c.observed for c in r1.checks] == [c.observed for c in r2.checks]


def test_corollary():
    assert verify_corollary(1).verdict == "pass"


def test_full_generation_q2_and_stepwise_route_agree():
    F = make_field(2)
    full = certify_full_generation(F)
    assert full.verdict == "pass"
    assert full.details["certificate"] == "schreier-generators"
    assert full.checks[-1].observed == str(sl_order(12, 2))
    steps = [verify_lemma_alt(F), verify_prop_steps(F), verify_lemma_5(F)]
    assert [r.verdict for r in steps] == ["pass"] * 3


def test_full_generation_randomized_bound():
    r = certify_full_generation(make_field(2), randomized=True)
    assert r.verdict == "pass" and r.details["certificate"] == "order-bound"


def test_full_generation_q4_infeasible():
    r = certify_full_generation(make_field(2, 2))
    assert r.verdict == "infeasible" and "16777215" in r.notes[0]


def test_sweep_single_prime():
    reports = sweep(2)
    assert len(reports) == 1 and reports[0].params["p"] == 2 and reports[0].verdict == "pass"


def test_sweep_to_100():
    reports = sweep(100)
    assert len(reports) == 25
    assert [r.params["p"] for r in reports] == sorted(r.params["p"] for r in reports)
    assert all(r.verdict == "pass" for r in reports)
    assert reports[2].claim == "lemma-alt5"


def test_report_schema():
    d = json.loads(verify_lemma_alt(make_field(3)).to_json())
    assert {"claim", "params", "verdict", "checks", "elapsed_ms", "engine"} <= set(d)
    assert set(d["params"]) == {"p", "a", "modulus", "t"}
    assert set(d["engine"]) == {"guard", "randomized"}
    for c in d["checks"]:
        assert {"name", "expected", "observed", "ok"} <= set(c)


PRIMES = [p for p in range(2, 98) if is_prime(p) and p != 5]


@given(st.sampled_from(PRIMES), st.sampled_from([1, 2]), st.integers(0, 10**6))
def test_lemma_alt_and_orders_over_grid(p, a, k):
    F = make_field(p, a)
    ts = list(itertools.islice(valid_ts(F), 6))
    t = ts[k % len(ts)]
    assert verify_orders(make_pair(F, t)).verdict == "pass"
    r = verify_lemma_alt(F, t)
    assert r.verdict == "pass" and r.details["gamma_exponent"] % p == 0
