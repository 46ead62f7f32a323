"""The two-level space ``E = T(H) (+) (T(H) (x) T(K))`` and its operators.

Basis vectors are :class:`EBasis` pairs ``(h, u)``: ``u is None`` marks the
first summand ``T(H)``, otherwise ``u`` is a K-word and the vector lives in
the tensor summand.  Two states are read off:

* ``psi`` at ``EBasis((), None)``, the vacuum of the first summand;
* ``phi`` at ``OMEGA = EBasis((), ())``.

``pi(a)`` acts as ``a`` on the first summand and as ``a (x) Id`` on the tensor
summand after projecting out ``OMEGA``, so ``pi(a) OMEGA = 0`` and ``pi(Id)``
is the identity on the orthogonal complement of ``OMEGA``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, NamedTuple, Optional, Sequence, Tuple

from ._expr import (
    BasisOperator,
    Identity,
    Operator,
    Product,
    Ranks,
    TruncationOverflow,
    Zero,
    moment_sequence,
    operator_from_json,
    register,
)
from .fock import Annihilate, Create, fock_identity
from .series import DomainError, Poly, TwoStateLaw

__all__ = [
    "EBasis",
    "EVector",
    "OMEGA",
    "PSI_VACUUM",
    "Pi",
    "AStar",
    "An",
    "Af",
    "e_identity",
    "e_zero",
    "omega_projection",
    "apply_e",
    "required_ranks",
    "state_pair_moments",
    "phi_of",
    "psi_of",
    "construct_model",
    "basis_vectors",
    "CFreeReport",
    "random_algebra_element",
    "centered",
    "check_alternating_word",
    "verify_cfree_structure",
]


class EBasis(NamedTuple):
    h: Tuple[int, ...]
    u: Optional[Tuple[int, ...]]

    @property
    def is_left(self) -> bool:
        return self.u is None


EVector = Dict[EBasis, Fraction]

OMEGA = EBasis((), ())
PSI_VACUUM = EBasis((), None)

_ONE = Fraction(1)


def _lengths(b: EBasis):
    return (len(b.h), len(b.u) if b.u else 0)


@register("pi")
@dataclass(frozen=True)
class Pi(Operator):
    """Embedding of a Fock-space operator ``a`` into ``E``."""

    a: Operator
    space = "E"

    def __post_init__(self):
        if self.a.space != "fock":
            raise TypeError("pi() takes a Fock-space operator")

    def act(self, vec, ranks):
        groups: dict = {}
        for b, x in vec.items():
            if b == OMEGA:
                continue
            groups.setdefault(b.u, {})[b.h] = x
        out: EVector = {}
        for u, hv in groups.items():
            for h, c in self.a.act(hv, ranks).items():
                out[EBasis(h, u)] = c
        return out

    def rise(self):
        return (self.a.rise()[0], 0)

    def drop(self):
        return (self.a.drop()[0], 0)

    def to_json(self):
        return {"gen": "pi", "arg": self.a.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(operator_from_json(data["arg"]))


@register("a_star")
@dataclass(frozen=True)
class AStar(BasisOperator):
    """Creation of K-letter ``k``; only acts on ``omega (x) T(K)``."""

    k: int
    space = "E"

    def act_basis(self, b, ranks):
        if b.u is None or b.h:
            return ()
        if len(b.u) >= ranks.lk:
            raise TruncationOverflow(f"creating K-letter {self.k} on a word of length {len(b.u)} exceeds rank {ranks.lk}")
        return ((EBasis((), (self.k, *b.u)), _ONE),)

    def rise(self):
        return (0, 1)

    def to_json(self):
        return {"gen": "a_star", "k": self.k}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["k"]))


@register("a_n")
@dataclass(frozen=True)
class An(BasisOperator):
    """Rank-one map ``omega (x) k^n -> OMEGA``; ``n = 0`` is the projection on OMEGA."""

    k: int
    n: int
    space = "E"

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("a_n needs n >= 0")

    def act_basis(self, b, ranks):
        if not b.h and b.u is not None and len(b.u) == self.n and all(c == self.k for c in b.u):
            return ((OMEGA, _ONE),)
        return ()

    def drop(self):
        return (0, self.n)

    def to_json(self):
        return {"gen": "a_n", "k": self.k, "n": self.n}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["k"]), int(data["n"]))


@register("a_f")
@dataclass(frozen=True)
class Af(BasisOperator):
    """``sum_p F_p a_n(k, p)``."""

    k: int
    F: Poly
    space = "E"

    def act_basis(self, b, ranks):
        if b.h or b.u is None:
            return ()
        n = len(b.u)
        c = self.F[n]
        if c and all(x == self.k for x in b.u):
            return ((OMEGA, c),)
        return ()

    def drop(self):
        return (0, max(self.F.degree, 0))

    def to_json(self):
        return {"gen": "a_f", "k": self.k, "coeffs": [str(c) for c in self.F.coeffs]}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["k"]), Poly(data["coeffs"]))


def e_identity() -> Identity:
    return Identity("E")


def e_zero() -> Zero:
    return Zero("E")


def omega_projection() -> An:
    return An(0, 0)


def required_ranks(op: Operator, n_max: int) -> Ranks:
    rh, rk = op.rise()
    return Ranks(max(1, n_max * rh), max(1, n_max * rk))


def apply_e(op: Operator, v: EVector, ranks: Ranks) -> EVector:
    """Apply an E-operator to a vector; overflow raises, never truncates."""
    if op.space != "E":
        raise TypeError(f"expected an E-operator, got space {op.space!r}")
    return op.act(dict(v), ranks)


def state_pair_moments(
    op: Operator,
    n_max: int,
    lh: int | None = None,
    lk: int | None = None,
) -> TwoStateLaw:
    """Moments ``psi(op**n)`` and ``phi(op**n)`` for ``n = 1..n_max``.

    Ranks default to the smallest values guaranteed not to overflow.
    """
    if op.space != "E":
        raise TypeError(f"expected an E-operator, got space {op.space!r}")
    need = required_ranks(op, n_max)
    ranks = Ranks(need.lh if lh is None else lh, need.lk if lk is None else lk)
    psi = moment_sequence(op, PSI_VACUUM, n_max, ranks, _lengths)
    phi = moment_sequence(op, OMEGA, n_max, ranks, _lengths)
    return TwoStateLaw(psi, phi)


def _state(op: Operator, start: EBasis) -> Fraction:
    ranks = required_ranks(op, 1)
    return op.act({start: _ONE}, ranks).get(start, Fraction(0))


def phi_of(op: Operator) -> Fraction:
    return _state(op, OMEGA)


def psi_of(op: Operator) -> Fraction:
    return _state(op, PSI_VACUUM)


def _is_pi_image(op: Operator) -> bool:
    return isinstance(op, Pi) or (isinstance(op, Zero) and op.space == "E")


def construct_model(kind: str, base: Operator, k: int, F: Poly) -> Operator:
    """``b + A*_k + A_{k,F}`` (additive) or ``d + d A*_k + A_{k,F}`` (multiplicative).

    The additive model has cR-transform ``z F(z)``, the multiplicative one
    cT-transform ``F(z)``.
    """
    F = F if isinstance(F, Poly) else Poly(F)
    if not _is_pi_image(base):
        raise DomainError("model base must be pi(a) for a Fock-space operator a")
    if kind == "additive":
        return base + AStar(k) + Af(k, F)
    if kind == "multiplicative":
        if not psi_of(base):
            raise DomainError("multiplicative model needs psi(d) != 0")
        if not F[0]:
            raise DomainError("multiplicative model needs F(0) != 0")
        return base + base * AStar(k) + Af(k, F)
    raise ValueError(f"unknown kind {kind!r}; expected 'additive' or 'multiplicative'")


def _words(letters: Sequence[int], max_len: int):
    for n in range(max_len + 1):
        yield from itertools.product(letters, repeat=n)


def basis_vectors(h_letters: Sequence[int], k_letters: Sequence[int], lh: int, lk: int) -> list[EBasis]:
    """All basis vectors with words over the given letters up to the given lengths."""
    hs = list(_words(h_letters, lh))
    us = [None, *_words(k_letters, lk)]
    return [EBasis(h, u) for u in us for h in hs]


# -- c-freeness of pi(A(e_1)) v D(eta_1) and pi(A(e_2)) v D(eta_2) -----------


def _rand_scalar(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-4, 4), rng.randint(1, 3))


def random_algebra_element(rng: random.Random, letter: int, max_terms: int = 3, max_factors: int = 3) -> Operator:
    """Random element of ``pi(A(e_letter)) v D(eta_letter)``.

    A rational combination of monomials in ``pi(a*)``, ``pi(a)``,
    ``pi(Id)``, ``A*`` and ``A_n`` (``n = 0, 1, 2``).
    """
    gens = [
        Pi(Create(letter)),
        Pi(Annihilate(letter)),
        Pi(Create(letter) + Annihilate(letter).poly(Poly([_rand_scalar(rng), 1]))),
        Pi(fock_identity()),
        AStar(letter),
        An(letter, 0),
        An(letter, 1),
        An(letter, 2),
        # words returning to OMEGA, so that phi is often nonzero
        Product((An(letter, 1), AStar(letter))),
        Product((An(letter, 2), AStar(letter), Pi(Create(letter) + Annihilate(letter)), AStar(letter))),
        Af(letter, Poly([_rand_scalar(rng), _rand_scalar(rng), 1])),
    ]
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        factors = tuple(rng.choice(gens) for _ in range(rng.randint(1, max_factors)))
        mono = factors[0] if len(factors) == 1 else Product(factors)
        terms.append(_rand_scalar(rng) * mono)
    # a pi-part and an OMEGA-returning part keep psi and phi of the
    # element away from zero most of the time
    terms.append(_rand_scalar(rng) * Pi(fock_identity() + Create(letter) * Annihilate(letter)))
    terms.append(_rand_scalar(rng) * rng.choice(gens[5:]))
    out = terms[0]
    for t in terms[1:]:
        out = out + t
    return out


def centered(x: Operator) -> Operator:
    """``x - psi(x) Id_E``."""
    s = psi_of(x)
    return x - s * e_identity() if s else x


@dataclass
class CFreeReport:
    passed: bool
    trials: int
    words_checked: int
    counterexample: Optional[dict] = None
    nontrivial: int = 0  # words whose phi-product is nonzero

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "trials": self.trials,
            "words_checked": self.words_checked,
            "nontrivial": self.nontrivial,
            "counterexample": self.counterexample,
        }


def check_alternating_word(xs: Sequence[Operator]) -> tuple[Fraction, Fraction, Fraction]:
    """``psi(x_m ... x_1)``, ``phi(x_m ... x_1)`` and ``prod phi(x_j)``."""
    word = xs[0] if len(xs) == 1 else Product(tuple(reversed(xs)))
    prod = Fraction(1)
    for x in xs:
        prod *= phi_of(x)
    return psi_of(word), phi_of(word), prod


def verify_cfree_structure(
    letters: tuple[int, int] = (0, 1),
    max_len: int = 5,
    trials: int = 20,
    seed: int = 0,
) -> CFreeReport:
    """Check both c-freeness identities on random centered alternating words.

    Algebra ``j`` is generated by ``pi(A(e_{letters[j]}))`` and
    ``D(eta_{letters[j]})``; the same index is used for the H- and K-letter.
    """
    rng = random.Random(seed)
    checked = nontrivial = 0
    for trial in range(trials):
        for m in range(1, max_len + 1):
            start = rng.randrange(2)
            tags = [(start + j) % 2 for j in range(m)]
            xs = [centered(random_algebra_element(rng, letters[t])) for t in tags]
            psi_w, phi_w, prod = check_alternating_word(xs)
            checked += 1
            nontrivial += prod != 0
            if psi_w or phi_w != prod:
                return CFreeReport(
                    False,
                    trial + 1,
                    checked,
                    {
                        "tags": tags,
                        "letters": [x.to_json() for x in xs],
                        "psi": str(psi_w),
                        "phi": str(phi_w),
                        "phi_product": str(prod),
                    },
                    nontrivial,
                )
    return CFreeReport(True, trials, checked, None, nontrivial)
