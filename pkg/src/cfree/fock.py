"""Truncated full Fock space over an orthonormal basis ``e_0, e_1, ...``.

Basis words are tuples of letter indices, the empty tuple being the vacuum.
``create(i)`` prepends ``i``; ``annihilate(i)`` strips a leading ``i`` and
kills words starting with any other letter, and the vacuum.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from ._expr import (
    BasisOperator,
    Identity,
    Operator,
    Ranks,
    TruncationOverflow,
    Zero,
    moment_sequence,
    register,
)
from .series import DomainError, Poly

__all__ = [
    "HWord",
    "FockVector",
    "VACUUM",
    "Create",
    "Annihilate",
    "create",
    "annihilate",
    "fock_identity",
    "fock_zero",
    "apply_fock",
    "vacuum_moments",
    "required_rank",
    "haagerup_operator",
]

HWord = Tuple[int, ...]
FockVector = Dict[HWord, Fraction]

VACUUM: HWord = ()

_ONE = Fraction(1)


def vacuum_vector() -> FockVector:
    return {VACUUM: Fraction(1)}


@register("create")
@dataclass(frozen=True)
class Create(BasisOperator):
    i: int
    space = "fock"

    def act_basis(self, w, ranks):
        if len(w) >= ranks.lh:
            raise TruncationOverflow(f"creating letter {self.i} on a word of length {len(w)} exceeds rank {ranks.lh}")
        return (((self.i, *w), _ONE),)

    def rise(self):
        return (1, 0)

    def to_json(self):
        return {"gen": "create", "i": self.i}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["i"]))


@register("annihilate")
@dataclass(frozen=True)
class Annihilate(BasisOperator):
    i: int
    space = "fock"

    def act_basis(self, w, ranks):
        if w and w[0] == self.i:
            return ((w[1:], _ONE),)
        return ()

    def drop(self):
        return (1, 0)

    def to_json(self):
        return {"gen": "annihilate", "i": self.i}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["i"]))


def create(i: int) -> Create:
    return Create(i)


def annihilate(i: int) -> Annihilate:
    return Annihilate(i)


def fock_identity() -> Identity:
    return Identity("fock")


def fock_zero() -> Zero:
    return Zero("fock")


def _fock_lengths(w: HWord):
    return (len(w), 0)


def apply_fock(op: Operator, v: FockVector, rank: int) -> FockVector:
    """Apply ``op`` to ``v`` with words capped at length ``rank``.

    Raises :class:`TruncationOverflow` rather than dropping a component.
    """
    if op.space != "fock":
        raise TypeError(f"expected a Fock-space operator, got space {op.space!r}")
    return op.act(dict(v), Ranks(rank))


def required_rank(op: Operator, n_max: int) -> int:
    """Smallest rank that can never overflow while computing ``n_max`` moments."""
    return max(1, n_max * op.rise()[0])


def vacuum_moments(op: Operator, n_max: int, rank: int | None = None) -> list[Fraction]:
    """``<op**n omega, omega>`` for ``n = 1..n_max``."""
    if op.space != "fock":
        raise TypeError(f"expected a Fock-space operator, got space {op.space!r}")
    if rank is None:
        rank = required_rank(op, n_max)
    return moment_sequence(op, VACUUM, n_max, Ranks(rank), _fock_lengths)


def haagerup_operator(kind: str, f: Poly, i: int) -> Operator:
    """``a*_i + f(a_i)`` (additive) or ``(1 + a*_i) f(a_i)`` (multiplicative).

    The additive operator has R-transform ``z f(z)``; the multiplicative one
    has T-transform ``f(z)`` and needs ``f(0) != 0``.
    """
    f = f if isinstance(f, Poly) else Poly(f)
    a = Annihilate(i).poly(f)
    if kind == "additive":
        return Create(i) + a
    if kind == "multiplicative":
        if not f[0]:
            raise DomainError("multiplicative Haagerup operator needs f(0) != 0")
        return (fock_identity() + Create(i)) * a
    raise ValueError(f"unknown kind {kind!r}; expected 'additive' or 'multiplicative'")
