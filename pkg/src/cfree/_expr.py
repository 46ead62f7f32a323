"""Operator expression trees shared by the Fock and two-level spaces.

Vectors are plain dicts mapping basis labels to Fractions, with no stored
zeros.  Operators are immutable trees; they are never materialised as
matrices, only applied to the vectors actually reached.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable

from .series import Poly, to_scalar

Vector = Dict[Hashable, Fraction]
Shift = tuple  # (h, k) word-length bound


class TruncationOverflow(RuntimeError):
    """A creation operator would exceed the configured truncation rank."""


@dataclass(frozen=True)
class Ranks:
    """Truncation ranks: maximal H-word and K-word lengths."""

    lh: int
    lk: int = 0


def add_into(acc: Vector, vec: Vector, c: Fraction = Fraction(1)) -> Vector:
    unit = c == 1
    for b, x in vec.items():
        y = acc.get(b, 0) + (x if unit else c * x)
        if y:
            acc[b] = y
        else:
            acc.pop(b, None)
    return acc


def scaled(vec: Vector, c: Fraction) -> Vector:
    if not c:
        return {}
    return {b: c * x for b, x in vec.items()}


def _max_shift(shifts: Iterable[Shift]) -> Shift:
    out = (0, 0)
    for s in shifts:
        out = (max(out[0], s[0]), max(out[1], s[1]))
    return out


_REGISTRY: dict[str, type] = {}


def register(tag: str):
    def deco(cls):
        cls.tag = tag
        _REGISTRY[tag] = cls
        return cls

    return deco


class Operator:
    """Base class of operator expressions over one space."""

    space: str = ""
    tag: str = ""

    def act(self, vec: Vector, ranks: Ranks) -> Vector:
        raise NotImplementedError

    def rise(self) -> Shift:
        """Upper bound on the growth of (H, K) word lengths per application."""
        return (0, 0)

    def drop(self) -> Shift:
        """Upper bound on the shrinkage of (H, K) word lengths per application."""
        return (0, 0)

    def to_json(self) -> dict:
        raise NotImplementedError

    # algebra
    def __add__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        return Sum((self, other))

    def __sub__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        return Sum((self, Scaled(Fraction(-1), other)))

    def __neg__(self):
        return Scaled(Fraction(-1), self)

    def __mul__(self, other):
        if isinstance(other, Operator):
            return Product((self, other))
        if isinstance(other, (int, Fraction)):
            return Scaled(Fraction(other), self)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scaled(Fraction(other), self)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative operator power")
        if n == 0:
            return Identity(self.space)
        return Product((self,) * n)

    def poly(self, p: Poly) -> PolyOf:
        """``p(self) = sum p_k self**k``."""
        return PolyOf(self, p)

    def __call__(self, vec: Vector, ranks: Ranks) -> Vector:
        return self.act(vec, ranks)


def _common_space(ops: Iterable[Operator]) -> str:
    spaces = {op.space for op in ops}
    if len(spaces) != 1:
        raise TypeError(f"cannot combine operators on different spaces: {sorted(spaces)}")
    return spaces.pop()


class BasisOperator(Operator):
    """Generator defined by its action on single basis labels."""

    def act_basis(self, b, ranks: Ranks) -> Iterable[tuple[Hashable, Fraction]]:
        raise NotImplementedError

    def act(self, vec: Vector, ranks: Ranks) -> Vector:
        out: Vector = {}
        for b, x in vec.items():
            for b2, c in self.act_basis(b, ranks):
                y = out.get(b2, 0) + (x if c == 1 else c * x)
                if y:
                    out[b2] = y
                else:
                    out.pop(b2, None)
        return out


@register("identity")
@dataclass(frozen=True)
class Identity(Operator):
    space: str

    def act(self, vec, ranks):
        return dict(vec)

    def to_json(self):
        return {"gen": "identity", "space": self.space}

    @classmethod
    def from_json(cls, data):
        return cls(data.get("space", "fock"))


@register("zero")
@dataclass(frozen=True)
class Zero(Operator):
    space: str

    def act(self, vec, ranks):
        return {}

    def to_json(self):
        return {"gen": "zero", "space": self.space}

    @classmethod
    def from_json(cls, data):
        return cls(data.get("space", "fock"))


@register("sum")
@dataclass(frozen=True)
class Sum(Operator):
    terms: tuple

    def __post_init__(self):
        if not self.terms:
            raise ValueError("empty sum; use Zero")
        object.__setattr__(self, "space", _common_space(self.terms))

    def act(self, vec, ranks):
        acc: Vector = {}
        for t in self.terms:
            add_into(acc, t.act(vec, ranks))
        return acc

    def rise(self):
        return _max_shift(t.rise() for t in self.terms)

    def drop(self):
        return _max_shift(t.drop() for t in self.terms)

    def to_json(self):
        return {"gen": "sum", "terms": [t.to_json() for t in self.terms]}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(operator_from_json(t) for t in data["terms"]))


@register("product")
@dataclass(frozen=True)
class Product(Operator):
    """Composition ``factors[0] @ factors[1] @ ...``; the last factor acts first."""

    factors: tuple

    def __post_init__(self):
        if not self.factors:
            raise ValueError("empty product; use Identity")
        object.__setattr__(self, "space", _common_space(self.factors))

    def act(self, vec, ranks):
        for f in reversed(self.factors):
            if not vec:
                return {}
            vec = f.act(vec, ranks)
        return vec

    def rise(self):
        shifts = [f.rise() for f in self.factors]
        return (sum(s[0] for s in shifts), sum(s[1] for s in shifts))

    def drop(self):
        shifts = [f.drop() for f in self.factors]
        return (sum(s[0] for s in shifts), sum(s[1] for s in shifts))

    def to_json(self):
        return {"gen": "product", "factors": [f.to_json() for f in self.factors]}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(operator_from_json(f) for f in data["factors"]))


@register("scale")
@dataclass(frozen=True)
class Scaled(Operator):
    c: Fraction
    arg: Operator

    def __post_init__(self):
        object.__setattr__(self, "c", to_scalar(self.c))
        object.__setattr__(self, "space", self.arg.space)

    def act(self, vec, ranks):
        if not self.c:
            return {}
        return scaled(self.arg.act(vec, ranks), self.c)

    def rise(self):
        return self.arg.rise()

    def drop(self):
        return self.arg.drop()

    def to_json(self):
        return {"gen": "scale", "c": str(self.c), "arg": self.arg.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(to_scalar(data["c"]), operator_from_json(data["arg"]))


@register("poly")
@dataclass(frozen=True)
class PolyOf(Operator):
    """``p(arg)``, with the constant term acting as a multiple of the identity."""

    arg: Operator
    p: Poly

    def __post_init__(self):
        object.__setattr__(self, "space", self.arg.space)

    def act(self, vec, ranks):
        coeffs = self.p.coeffs
        if not coeffs:
            return {}
        acc = scaled(vec, coeffs[-1])
        for c in reversed(coeffs[:-1]):
            acc = add_into(self.arg.act(acc, ranks) if acc else {}, vec, c)
        return acc

    def _powers(self) -> list[int]:
        return [k for k, c in enumerate(self.p.coeffs) if c]

    def rise(self):
        r = self.arg.rise()
        k = max(self._powers(), default=0)
        return (k * r[0], k * r[1])

    def drop(self):
        d = self.arg.drop()
        k = max(self._powers(), default=0)
        return (k * d[0], k * d[1])

    def to_json(self):
        return {"gen": "poly", "coeffs": [str(c) for c in self.p.coeffs], "arg": self.arg.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(operator_from_json(data["arg"]), Poly(data["coeffs"]))


def operator_from_json(data: dict) -> Operator:
    try:
        cls = _REGISTRY[data["gen"]]
    except KeyError:
        raise ValueError(f"unknown operator generator {data.get('gen')!r}") from None
    return cls.from_json(data)


def moment_sequence(
    op: Operator,
    start,
    n_max: int,
    ranks: Ranks,
    lengths: Callable[[Hashable], Shift],
    target=None,
) -> list[Fraction]:
    """``<op**n start, target>`` for ``n = 1..n_max`` by repeated application.

    Components that cannot shrink back to the target's length within the
    remaining applications are discarded; this is exact, since ``drop`` bounds
    how far one application can shorten a word.
    """
    target = start if target is None else target
    t_len = lengths(target)
    dh, dk = op.drop()
    vec: Vector = {start: Fraction(1)}
    out = []
    for n in range(1, n_max + 1):
        vec = op.act(vec, ranks) if vec else {}
        out.append(vec.get(target, Fraction(0)))
        left = n_max - n
        kept: Vector = {}
        for b, x in vec.items():
            h, k = lengths(b)
            if h - t_len[0] <= left * dh and k - t_len[1] <= left * dk:
                kept[b] = x
        vec = kept
    return out
