"""Exit criteria 1-8, each at exact (zero-tolerance) equality.

Every test prints one ``PASS``/``FAIL`` line with its runtime, visible even
under pytest's output capture.
"""
import random
import time

import pytest

from cfree.fock import fock_identity, haagerup_operator, vacuum_moments
from cfree.series import TRANSFORM_KINDS, TwoStateLaw, moments_from_transform, transform_from_moments
from cfree.twolevel import Pi, construct_model, required_ranks, state_pair_moments
from cfree.verify import SUITES, random_fock_element, random_law, random_poly, run_suite

pytestmark = pytest.mark.acceptance

SEED = 2024


@pytest.fixture
def report(capsys):
    """Yields a callable ``report(n, ok, detail)`` that prints the verdict line."""
    start = time.perf_counter()

    def emit(n, title, ok, limit, detail=""):
        took = time.perf_counter() - start
        verdict = "PASS" if ok and took < limit else "FAIL"
        line = f"{verdict} criterion {n}: {title} ({took:.1f} s, limit {limit} s)"
        if detail:
            line += f" {detail}"
        with capsys.disabled():
            print("\n" + line)
        return verdict == "PASS"

    return emit


def _suite_detail(rep):
    return f"[{rep.checks} checks, {rep.failed_checks} failed: {rep.failures}]" if rep.failures else f"[{rep.checks} checks]"


def test_criterion_1_round_trips(report):
    rng = random.Random(SEED)
    bad = []
    for i in range(100):
        law = random_law(rng, 12, psi_first=1, nonzero_first=True)
        law = TwoStateLaw((1, *law.psi[1:]), law.phi)
        for kind in TRANSFORM_KINDS:
            t = transform_from_moments(kind, law)
            if kind in ("R", "T", "S"):
                ok = moments_from_transform(kind, t) == law.psi
            else:
                ok = moments_from_transform(kind, t, law.psi) == law.phi
            if not ok:
                bad.append((i, kind))
    assert report(1, "transform round trips, 100 laws x 6 kinds at N=12", not bad, 10, str(bad[:5]) if bad else "")


def test_criterion_2_haagerup_transforms(report):
    rng = random.Random(SEED)
    bad = []
    for i in range(20):
        f1, f2 = random_poly(rng, 3), random_poly(rng, 3)
        g1, g2 = random_poly(rng, 3, nonzero_constant=True), random_poly(rng, 3, nonzero_constant=True)
        a1, a2 = haagerup_operator("additive", f1, 0), haagerup_operator("additive", f2, 1)
        b1, b2 = haagerup_operator("multiplicative", g1, 0), haagerup_operator("multiplicative", g2, 1)

        def R(op):
            return transform_from_moments("R", TwoStateLaw.single_state(vacuum_moments(op, 6)))

        def T(op):
            return transform_from_moments("T", TwoStateLaw.single_state(vacuum_moments(op, 7)))

        checks = {
            "R1": R(a1) == f1.to_series(5).times_z(),
            "R2": R(a2) == f2.to_series(5).times_z(),
            "R12": R(a1 + a2) == (f1 + f2).to_series(5).times_z(),
            "T1": T(b1) == g1.to_series(6),
            "T2": T(b2) == g2.to_series(6),
            "T12": T(b1 * b2) == (g1 * g2).to_series(6),
        }
        bad += [(i, k) for k, ok in checks.items() if not ok]
    assert report(2, "Haagerup operators on orthogonal letters, 20 pairs", not bad, 30, str(bad[:5]) if bad else "")


def test_criterion_3_operator_identities(report):
    reps = [run_suite(name, trials=20, seed=SEED) for name in ("remark1", "lemma1", "eqiii")]
    ok = all(r.passed for r in reps)
    detail = "; ".join(f"{r.suite} {_suite_detail(r)}" for r in reps)
    assert report(3, "A_n and A* relations, sandwich rule, range and phi(B A^n) identities", ok, 10, detail)


def test_criterion_4_conditional_transforms_of_models(report):
    reps = [run_suite(name, trials=20, seed=SEED, order=6) for name in ("crthm", "ct")]
    ok = all(r.passed for r in reps)
    detail = "; ".join(f"{r.suite} {_suite_detail(r)}" for r in reps)
    assert report(4, "cR = zF and cT = F for models, with both recurrences", ok, 60, detail)


def test_criterion_5_cfreeness(report):
    rep = run_suite("algcfree", trials=20, seed=SEED)
    assert report(5, "centred alternating words of length <= 5, 20 trials", rep.passed, 60, _suite_detail(rep))


def test_criterion_6_three_paths(report):
    rep = run_suite("crosscheck", trials=20, seed=SEED, order=6)
    assert report(6, "transform, axiom and operator convolutions agree, 20 pairs each", rep.passed, 120, _suite_detail(rep))


def test_criterion_7_collapse(report):
    rep = run_suite("collapse", trials=20, seed=SEED, order=8)
    assert report(7, "phi = psi collapses cR to R, cT to T and c-free to free convolution", rep.passed, 10, _suite_detail(rep))


def _stability_ops(rng):
    f = random_poly(rng, 3)
    F = random_poly(rng, 3)
    g = random_poly(rng, 3, nonzero_constant=True)
    G = random_poly(rng, 3, nonzero_constant=True)
    alpha = [construct_model("additive", Pi(haagerup_operator("additive", f, i)), i, F) for i in range(2)]
    beta = [construct_model("multiplicative", Pi(haagerup_operator("multiplicative", g, i)), i, G) for i in range(2)]
    x = Pi(random_fock_element(rng, 0) + fock_identity())
    return [alpha[0], alpha[0] + alpha[1], beta[0], beta[0] * beta[1], x]


def test_criterion_8_truncation_stability(report):
    rng = random.Random(SEED)
    bad = []
    n_max = 6
    for trial in range(20):
        for j, op in enumerate(_stability_ops(rng)):
            for n in range(1, n_max + 1):
                # rank n per unit of rise per power: n itself for single models, 2n for products
                base = required_ranks(op, n)
                low = state_pair_moments(op, n, base.lh, base.lk)
                high = state_pair_moments(op, n, base.lh + 3, base.lk + 3)
                if (low.psi[-1], low.phi[-1]) != (high.psi[-1], high.phi[-1]):
                    bad.append((trial, j, n))
    assert report(8, "moments of order n unchanged when ranks grow by 3", not bad, 30, str(bad[:5]) if bad else "")


def test_all_suites_are_exercised():
    assert {"remark1", "lemma1", "eqiii", "crthm", "ct", "algcfree", "crosscheck", "collapse"} <= set(SUITES)
