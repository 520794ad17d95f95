"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import importlib
import itertools
import re
import subprocess
import sys
import time
from collections import deque
from pathlib import Path

import pytest

from sl12gen.action import PointSpace, VectorSpace, schreier_sims, sl_order
from sl12gen.certify import (
    certify_full_generation,
    verify_lemma_5,
    verify_lemma_alt,
    verify_lemma_alt5,
    verify_orders,
)
from sl12gen.ff import is_prime, make_field
from sl12gen.gens import make_pair, valid_ts
from sl12gen.matq import Matrix
from sl12gen.perm import Permutation

GRID_PRIMES = [p for p in range(2, 98) if is_prime(p) and p != 5]
LEMMA5_FIELDS = [(3, 1), (2, 2), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)]
TESTS = Path(__file__).parent


@pytest.fixture
def report(capsys):
    def emit(n, ok, text):
        with capsys.disabled():
            print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'}  {text}")
        assert ok, text

    return emit


def _grid():
    for p in GRID_PRIMES:
        for a in (1, 2):
            F = make_field(p, a)
            # F_2, F_3 and F_4 have fewer than three valid t
            yield F, list(itertools.islice(valid_ts(F), 3))


def _timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


def _check(r, name):
    return next(c for c in r.checks if c.name == name)


def test_criterion_1_generator_sanity(report):
    bad, worst, cells = [], 0.0, 0
    for F, ts in _grid():
        for t in ts:
            r, dt = _timed(lambda: verify_orders(make_pair(F, t, check=False)))
            cells += 1
            worst = max(worst, dt)
            if r.verdict != "pass" or dt >= 1.0:
                bad.append((F.p, F.a, repr(t), r.verdict, dt))
    report(1, not bad, f"x^2 = I, y^3 = I, det = 1 on {cells} (p, a, t) cells; slowest {worst:.3f} s; failures {bad}")


def test_criterion_2_lemma_alt(report):
    names = ["gamma action table", "eta1", "eta2", "eta3", "|<eta1,eta2,eta3>| on Delta",
             "g^x", "|<Alt(Delta), g^x, y>|"]
    bad, worst, cells = [], 0.0, 0
    for F, ts in _grid():
        for t in ts:
            r, dt = _timed(verify_lemma_alt, F, t)
            cells += 1
            worst = max(worst, dt)
            ok = r.verdict == "pass" and [c.name for c in r.checks] == names and dt < 5.0
            ok &= _check(r, names[4]).observed == "20160" and _check(r, names[6]).observed == "239500800"
            if not ok:
                bad.append((F.p, F.a, repr(t), r.verdict, dt))
    report(2, not bad, f"gamma table, eta cycles, 20160, 239500800 on {cells} cells; slowest {worst:.3f} s; failures {bad}")


def test_criterion_3_lemma_5(report):
    lines, ok = [], True
    for p, a in LEMMA5_FIELDS:
        F = make_field(p, a)
        r, dt = _timed(verify_lemma_5, F)
        target = sl_order(5, F) * (2 if p % 2 else 1)
        good = r.verdict == "pass" and _check(r, "|N|").observed == str(target) and dt < 120
        ok &= good
        lines.append(f"q={F.q}:{'ok' if good else 'BAD'}({dt:.1f}s)")
    neg = verify_lemma_5(make_field(3), 0, exploratory=True)
    good = neg.details.get("closure_order") == "32"
    ok &= good
    lines.append(f"control q=3,t=0 -> {neg.details.get('closure_order')}")
    report(3, ok, "normal closure = <SL_5(q), diag(-1,1,1,1,1)>: " + " ".join(lines))


def test_criterion_4_lemma_alt5(report):
    lines, ok = [], True
    sl8 = str(sl_order(8, 5))
    for a in (1, 2):
        r, dt = _timed(verify_lemma_alt5, a)
        obs = {c.name: c.observed for c in r.checks}
        good = (
            r.verdict == "pass"
            and obs["order(gamma_t delta_t^2)"] == 313
            and obs["order(gamma_t delta_t gamma_t^3 delta_t^3)"] == 19531
            and obs["|<gamma_t, delta_t>| on F_5^8"] == sl8
            and all(obs[f"g{i} in K"] is True for i in (1, 2, 3))
            and obs["g3^(y~ g1 x~)"] == "(e4,e8,e10)"
            and obs["|<g2, g3^(y~ g1 x~), y~>|"] == "239500800"
            and dt < 600
        )
        ok &= good
        lines.append(f"a={a}:{'ok' if good else 'BAD'}({dt:.1f}s)")
    report(4, ok, "orders 313/19531, SL_8(5) on 390624 points, g1..g3 in K, (4,8,10), Alt(12): " + " ".join(lines))


def test_criterion_5_full_generation(report):
    r2, dt2 = _timed(certify_full_generation, make_field(2))
    ok2 = r2.verdict == "pass" and r2.checks[-1].observed == str(sl_order(12, 2)) and dt2 < 60
    r3, dt3 = _timed(certify_full_generation, make_field(3), randomized=True)
    ok3 = r3.verdict == "pass" and r3.checks[-1].observed == str(sl_order(12, 3)) and dt3 < 3600
    report(5, ok2 and ok3,
           f"q=2 {r2.verdict} by {r2.details.get('certificate')} in {dt2:.1f}s; "
           f"q=3 {r3.verdict} by {r3.details.get('certificate')} in {dt3:.1f}s")


def _closure_size(gens, space):
    els = [space.element(g) for g in gens]
    seen = {space.key(space.identity())}
    queue = deque([space.identity()])
    while queue:
        g = queue.popleft()
        for s in els:
            h = space.mul(g, s)
            k = space.key(h)
            if k not in seen:
                seen.add(k)
                queue.append(h)
    return len(seen)


def test_criterion_6_engine_oracle(report):
    cases = []
    for p, expected in ((2, 6), (3, 24), (5, 120)):
        F = make_field(p)
        gens = [Matrix.from_rows(F, [[1, 1], [0, 1]]), Matrix.from_rows(F, [[0, 1], [-1, 0]])]
        cases.append((f"SL_2({p})", gens, VectorSpace(F, 2), expected))
    cases.append(("Alt(5)", [Permutation.from_cycles(5, [(1, 2, 3)]), Permutation.from_cycles(5, [(1, 2, 3, 4, 5)])],
                  PointSpace(5), 60))
    cases.append(("Alt(8)", [Permutation.from_cycles(8, [(1, 2, 3)]), Permutation.from_cycles(8, [(2, 3, 4, 5, 6, 7, 8)])],
                  PointSpace(8), 20160))
    t0 = time.perf_counter()
    lines, ok = [], True
    for name, gens, space, expected in cases:
        order = schreier_sims(gens, space).order()
        oracle = _closure_size(gens, space)
        good = order == oracle == expected
        ok &= good
        lines.append(f"{name}={order}/{oracle}")
    dt = time.perf_counter() - t0
    report(6, ok and dt < 10, " ".join(lines) + f" in {dt:.2f}s")


def _property_tests():
    ids = []
    for mod in ("test_ff", "test_matq", "test_gens", "test_action", "test_certify", "test_cli"):
        m = importlib.import_module(mod)
        for name in dir(m):
            fn = getattr(m, name)
            if name.startswith("test_") and hasattr(fn, "hypothesis"):
                ids.append(f"{TESTS / (mod + '.py')}::{name}")
    return ids


def test_criterion_7_property_suites(report):
    sys.path.insert(0, str(TESTS))
    ids = _property_tests()
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", "--hypothesis-show-statistics", *ids],
        capture_output=True, text=True, cwd=TESTS.parent,
    )
    counts = [int(n) for n in re.findall(r"- (\d+) passing examples", proc.stdout)]
    modules = sorted({i.split("::")[0].rsplit("/", 1)[-1] for i in ids})
    ok = proc.returncode == 0 and len(counts) == len(ids) and min(counts, default=0) >= 200
    report(7, ok, f"{len(ids)} property tests over {len(modules)} modules; fewest examples {min(counts, default=0)}; "
                  f"pytest exit {proc.returncode}")
