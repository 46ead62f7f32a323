"""Seeded verification suites for the operator model and the transforms.

Each suite returns a :class:`SuiteReport`; a suite passes only if every one
of its exact checks holds.  The suites are what ``cfree verify`` runs.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from ._expr import Operator, Product, Ranks
from .convolution import cfree_convolve, cross_check
from .fock import Annihilate, Create, fock_identity, haagerup_operator
from .series import Poly, TruncatedSeries, TwoStateLaw, transform_from_moments
from .twolevel import (
    OMEGA,
    Af,
    An,
    AStar,
    Pi,
    basis_vectors,
    construct_model,
    e_zero,
    omega_projection,
    phi_of,
    psi_of,
    state_pair_moments,
    verify_cfree_structure,
)

__all__ = [
    "SuiteReport",
    "SUITES",
    "run_suite",
    "random_scalar",
    "random_poly",
    "random_law",
    "random_fock_element",
    "operators_equal",
    "additive_recurrence_holds",
    "multiplicative_recurrence_holds",
]


@dataclass
class SuiteReport:
    suite: str
    trials: int
    seed: int
    checks: int = 0
    failures: list = field(default_factory=list)  # distinct messages, at most 10
    failed_checks: int = 0

    @property
    def passed(self) -> bool:
        return not self.failed_checks

    def check(self, ok: bool, what: str) -> None:
        self.checks += 1
        if ok:
            return
        self.failed_checks += 1
        if what not in self.failures and len(self.failures) < 10:
            self.failures.append(what)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "trials": self.trials,
            "seed": self.seed,
            "checks": self.checks,
            "failed_checks": self.failed_checks,
            "failures": self.failures,
        }


# -- random data -------------------------------------------------------------


def random_scalar(rng: random.Random, nonzero: bool = False, span: int = 5, den: int = 4) -> Fraction:
    while True:
        q = Fraction(rng.randint(-span, span), rng.randint(1, den))
        if q or not nonzero:
            return q


def random_poly(rng: random.Random, degree: int = 3, nonzero_constant: bool = False) -> Poly:
    coeffs = [random_scalar(rng) for _ in range(rng.randint(0, degree) + 1)]
    if nonzero_constant:
        coeffs[0] = random_scalar(rng, nonzero=True)
    return Poly(coeffs)


def random_law(rng: random.Random, order: int, psi_first=None, phi_first=None, nonzero_first: bool = False) -> TwoStateLaw:
    psi = [random_scalar(rng) for _ in range(order)]
    phi = [random_scalar(rng) for _ in range(order)]
    if nonzero_first:
        psi[0] = random_scalar(rng, nonzero=True)
        phi[0] = random_scalar(rng, nonzero=True)
    if psi_first is not None:
        psi[0] = Fraction(psi_first)
    if phi_first is not None:
        phi[0] = Fraction(phi_first)
    return TwoStateLaw(psi, phi)


def random_fock_element(rng: random.Random, letter: int, max_terms: int = 3) -> Operator:
    """Random element of the algebra generated by ``a*_letter`` and ``a_letter``."""
    gens = [Create(letter), Annihilate(letter)]
    out = random_scalar(rng) * fock_identity()
    for _ in range(rng.randint(1, max_terms)):
        word = tuple(rng.choice(gens) for _ in range(rng.randint(1, 3)))
        mono = word[0] if len(word) == 1 else Product(word)
        out = out + random_scalar(rng, nonzero=True) * mono
    return out


# -- helpers -----------------------------------------------------------------

_BASIS = basis_vectors((0, 1), (0, 1), 3, 3)
_RANKS = Ranks(8, 8)


def operators_equal(a: Operator, b: Operator, basis=_BASIS, ranks: Ranks = _RANKS) -> bool:
    """Exact equality of two E-operators on every listed basis vector."""
    return all(a.act({v: Fraction(1)}, ranks) == b.act({v: Fraction(1)}, ranks) for v in basis)


def _compositions(total: int, parts: int, positive: bool) -> Iterator[tuple]:
    """Tuples of ``parts`` integers (>= 1 if ``positive`` else >= 0) summing to at most ``total``."""
    lo = 1 if positive else 0
    if parts == 0:
        yield ()
        return
    for first in range(lo, total + 1):
        for rest in _compositions(total - first, parts - 1, positive):
            yield (first, *rest)


def _moment(seq: Sequence[Fraction], k: int) -> Fraction:
    return Fraction(1) if k == 0 else seq[k - 1]


def additive_recurrence_holds(law: TwoStateLaw, F: Poly) -> bool:
    """The phi-moment recurrence of the additive model with ``cR = z F(z)``.

    phi(a^n) = sum_p sum_{q_i >= 0} phi(a^(n-1-p-sum q)) F_p psi(a^q_1)...psi(a^q_p)
    """
    for n in range(1, law.order + 1):
        rhs = Fraction(0)
        for p in range(0, n):
            if not F[p]:
                continue
            for qs in _compositions(n - 1 - p, p, positive=False):
                term = F[p] * _moment(law.phi, n - 1 - p - sum(qs))
                for q in qs:
                    term *= _moment(law.psi, q)
                rhs += term
        if rhs != law.phi[n - 1]:
            return False
    return True


def multiplicative_recurrence_holds(law: TwoStateLaw, g: Poly) -> bool:
    """The phi-moment recurrence of a variable with ``cT = g``.

    phi(b^n) = sum_p sum_{q_i > 0} phi(b^(n-1-sum q)) g_p psi(b^q_1)...psi(b^q_p)
    """
    for n in range(1, law.order + 1):
        rhs = Fraction(0)
        for p in range(0, n):
            if not g[p]:
                continue
            for qs in _compositions(n - 1, p, positive=True):
                term = g[p] * _moment(law.phi, n - 1 - sum(qs))
                for q in qs:
                    term *= _moment(law.psi, q)
                rhs += term
        if rhs != law.phi[n - 1]:
            return False
    return True


def _series(p: Poly, order: int) -> TruncatedSeries:
    return p.to_series(order)


# -- suites ------------------------------------------------------------------


def suite_remark1(trials: int, seed: int, order: int) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("remark1", trials, seed)
    zero = e_zero()
    for _ in range(trials):
        k, k2 = rng.randrange(2), rng.randrange(2)
        n, m = rng.randint(0, 3), rng.randint(1, 3)
        p = rng.randint(0, 3)
        lhs = An(k, n) * AStar(k) ** p if p else An(k, n)
        rhs = An(k, n - p) if n >= p else zero
        rep.check(operators_equal(lhs, rhs), f"A_{{{k},{n}}} (A*_{k})^{p}")
        x = Pi(random_fock_element(rng, rng.randrange(2)))
        rep.check(operators_equal(x * An(k, n), zero), f"pi(x) A_{{{k},{n}}} != 0")
        if n > 0:
            rep.check(operators_equal(An(k, n) * An(k2, m), zero), f"A_{{{k},{n}}} A_{{{k2},{m}}} != 0")
            rep.check(operators_equal(omega_projection() * An(k, n), An(k, n)), "Id_COmega A_n != A_n")
            rep.check(operators_equal(An(k, n) * omega_projection(), zero), "A_n Id_COmega != 0")
        unit = Pi(fock_identity())
        rep.check(operators_equal(unit * AStar(k), AStar(k)), "Id_E0 A* != A*")
        rep.check(operators_equal(AStar(k) * unit, AStar(k)), "A* Id_E0 != A*")
        # orthogonal K-letters
        lhs = An(k, m) * AStar(k) ** p * AStar(1 - k) if p else An(k, m) * AStar(1 - k)
        rep.check(operators_equal(lhs, zero), f"A_{{{k},{m}}} (A*_{k})^{p} A*_{1 - k} != 0")
    return rep


def suite_lemma1(trials: int, seed: int, order: int) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("lemma1", trials, seed)
    for _ in range(trials):
        x = Pi(random_fock_element(rng, rng.randrange(2)))
        s = psi_of(x)
        k1, k2, n = rng.randrange(2), rng.randrange(2), rng.randint(0, 3)
        rep.check(
            operators_equal(AStar(k1) * x * AStar(k2), s * (AStar(k1) * AStar(k2))),
            "A*_1 x A*_2 != psi(x) A*_1 A*_2",
        )
        rep.check(
            operators_equal(An(k1, n) * x * AStar(k2), s * (An(k1, n) * AStar(k2))),
            "A_{1,n} x A*_2 != psi(x) A_{1,n} A*_2",
        )
    return rep


def suite_eqiii(trials: int, seed: int, order: int) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("eqiii", trials, seed)
    for _ in range(trials):
        k = rng.randrange(2)
        F = random_poly(rng, 3)
        B = Af(k, F)
        for n in range(0, F.degree + 3):
            op = B * AStar(k) ** n if n else B
            rep.check(phi_of(op) == F[n], f"phi(B A^{n}) != F_{n}")
        x = Pi(random_fock_element(rng, rng.randrange(2)))
        rep.check(not x.act({OMEGA: Fraction(1)}, _RANKS), "pi(x) Omega != 0")
        rep.check(
            all(set(B.act({v: Fraction(1)}, _RANKS)) <= {OMEGA} for v in _BASIS),
            "range(B) not inside C Omega",
        )
    return rep


def _random_b(rng: random.Random, letter: int = 0) -> Operator:
    if rng.random() < 0.5:
        return Pi(haagerup_operator("additive", random_poly(rng, 3), letter))
    return Pi(random_fock_element(rng, letter))


def suite_crthm(trials: int, seed: int, order: int) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("crthm", trials, seed)
    for _ in range(trials):
        b = _random_b(rng)
        F = random_poly(rng, 3)
        alpha = construct_model("additive", b, 0, F)
        law = state_pair_moments(alpha, order)
        rep.check(transform_from_moments("cR", law) == _series(F, order - 1).times_z(), f"cR != z F for F={F}")
        rep.check(additive_recurrence_holds(law, F), "additive phi-recurrence fails")
        rep.check(law.psi == state_pair_moments(b, order).psi, "psi(alpha^q) != psi(b^q)")
    return rep


def _random_d(rng: random.Random, letter: int = 0) -> Operator:
    if rng.random() < 0.5:
        return Pi(haagerup_operator("multiplicative", random_poly(rng, 3, nonzero_constant=True), letter))
    while True:
        d = Pi(random_fock_element(rng, letter))
        if psi_of(d):
            return d


def suite_ct(trials: int, seed: int, order: int) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("ct", trials, seed)
    for _ in range(trials):
        d = _random_d(rng)
        F = random_poly(rng, 3, nonzero_constant=True)
        beta = construct_model("multiplicative", d, 0, F)
        law = state_pair_moments(beta, order + 1)
        rep.check(transform_from_moments("cT", law) == _series(F, order), f"cT != F for F={F}")
        rep.check(multiplicative_recurrence_holds(law, F), "cT recurrence fails")
        rep.check(law.psi == state_pair_moments(d, order + 1).psi, "psi(beta^q) != psi(d^q)")
    return rep


def suite_algcfree(trials: int, seed: int, order: int) -> SuiteReport:
    rep = SuiteReport("algcfree", trials, seed)
    res = verify_cfree_structure((0, 1), max_len=5, trials=trials, seed=seed)
    rep.checks = res.words_checked
    if not res.passed:
        rep.failed_checks = 1
        rep.failures.append(res.counterexample)
    return rep


def suite_mainthm_add(trials: int, seed: int, order: int) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("mainthm-add", trials, seed)
    for _ in range(trials):
        f = [random_poly(rng, 3) for _ in range(2)]
        F = [random_poly(rng, 3) for _ in range(2)]
        a = [construct_model("additive", Pi(haagerup_operator("additive", f[i], i)), i, F[i]) for i in range(2)]
        law = state_pair_moments(a[0] + a[1], order)
        zf = _series(f[0] + f[1], order - 1).times_z()
        zF = _series(F[0] + F[1], order - 1).times_z()
        rep.check(transform_from_moments("R", law) == zf, "R(a1+a2) != z(f1+f2)")
        rep.check(transform_from_moments("cR", law) == zF, "cR(a1+a2) != z(F1+F2)")
    return rep


def suite_mainthm_mul(trials: int, seed: int, order: int) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("mainthm-mul", trials, seed)
    for _ in range(trials):
        f = [random_poly(rng, 3, nonzero_constant=True) for _ in range(2)]
        F = [random_poly(rng, 3, nonzero_constant=True) for _ in range(2)]
        d = [Pi(haagerup_operator("multiplicative", f[i], i)) for i in range(2)]
        b = [construct_model("multiplicative", d[i], i, F[i]) for i in range(2)]
        law = state_pair_moments(b[0] * b[1], order + 1)
        rep.check(transform_from_moments("T", law) == _series(f[0] * f[1], order), "T(b1 b2) != f1 f2")
        rep.check(transform_from_moments("cT", law) == _series(F[0] * F[1], order), "cT(b1 b2) != F1 F2")
        rep.check(multiplicative_recurrence_holds(law, F[0] * F[1]), "product recurrence fails")
    return rep


def suite_crosscheck(trials: int, seed: int, order: int) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("crosscheck", trials, seed)
    for t in range(trials):
        for kind in ("add", "mul"):
            mul = kind == "mul"
            x = random_law(rng, order, nonzero_first=mul)
            y = random_law(rng, order, nonzero_first=mul)
            res = cross_check(kind, x, y, order)
            rep.check(res.agree, f"{kind} trial {t}: {res.first_mismatch or res.error}")
    return rep


def suite_collapse(trials: int, seed: int, order: int) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("collapse", trials, seed)
    for _ in range(trials):
        mom = random_law(rng, order, nonzero_first=True).psi
        law = TwoStateLaw.single_state(mom)
        rep.check(transform_from_moments("cR", law) == transform_from_moments("R", law), "cR != R")
        rep.check(transform_from_moments("cT", law) == transform_from_moments("T", law), "cT != T")
        other = TwoStateLaw.single_state(random_law(rng, order, nonzero_first=True).psi)
        for kind in ("add", "mul"):
            conv = cfree_convolve(kind, law, other, order)
            rep.check(conv.phi == conv.psi, f"{kind}: c-free convolution differs from free convolution")
    return rep


SUITES: dict[str, Callable[[int, int, int], SuiteReport]] = {
    "remark1": suite_remark1,
    "lemma1": suite_lemma1,
    "eqiii": suite_eqiii,
    "crthm": suite_crthm,
    "ct": suite_ct,
    "algcfree": suite_algcfree,
    "mainthm-add": suite_mainthm_add,
    "mainthm-mul": suite_mainthm_mul,
    "crosscheck": suite_crosscheck,
    "collapse": suite_collapse,
}


def run_suite(name: str, trials: int = 20, seed: int = 0, order: int = 6) -> SuiteReport:
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}") from None
    if trials < 1:
        raise ValueError("trials must be >= 1")
    return suite(trials, seed, order)
