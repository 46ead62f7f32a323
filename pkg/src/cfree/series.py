"""Exact truncated power series and the moment/transform calculus.

Every coefficient is a :class:`fractions.Fraction`; nothing is ever rounded.
A :class:`TruncatedSeries` of order ``N`` stores the coefficients of
``z**0 .. z**N``; coefficients above ``N`` are unknown, not zero, so every
operation returns a series whose order is the largest one it can certify.

Transforms
----------
For a variable ``X`` with moment series ``m(z) = sum psi(X**k) z**k`` and
``M(z) = sum phi(X**k) z**k`` the transforms are the unique series solving

    m(z)              = R(z (1 + m(z)))
    m(z) / z          = T(m(z)) (1 + m(z))
    cR(z (1 + m(z))) (1 + M(z)) = M(z) (1 + m(z))
    cT(m(z)) (1 + M(z))         = M(z) / z

and ``S = 1/T``, ``cS = 1/cT``.  ``R`` and ``cR`` computed from ``N`` moments
have order ``N``; ``T``, ``S``, ``cT`` and ``cS`` have order ``N - 1`` because
their coefficient of ``z**k`` involves the moment of order ``k + 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "Scalar",
    "to_scalar",
    "format_scalar",
    "SeriesError",
    "CompositionUndefined",
    "NotInvertible",
    "DomainError",
    "TruncatedSeries",
    "Poly",
    "TwoStateLaw",
    "TRANSFORM_KINDS",
    "series_compose",
    "series_reversion",
    "series_reciprocal",
    "transform_from_moments",
    "moments_from_transform",
]

Scalar = Fraction

TRANSFORM_KINDS = ("R", "T", "S", "cR", "cT", "cS")


def to_scalar(x) -> Fraction:
    """Convert an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: they would silently smuggle rounding into an exact
    pipeline.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def format_scalar(q: Fraction) -> str:
    return str(q)


class SeriesError(ValueError):
    pass


class CompositionUndefined(SeriesError):
    pass


class NotInvertible(SeriesError):
    pass


class DomainError(ValueError):
    """A transform or model precondition fails (e.g. a vanishing moment)."""


def _scalars(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(to_scalar(v) for v in values)


def _over_common_denominator(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = math.lcm(*(c.denominator for c in coeffs))
    return [c.numerator * (den // c.denominator) for c in coeffs], den


@dataclass(frozen=True)
class TruncatedSeries:
    """Formal power series known exactly through ``z**order``."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable):
        coeffs = _scalars(coeffs)
        if not coeffs:
            raise ValueError("a truncated series needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> TruncatedSeries:
        return cls([0] * (order + 1))

    @classmethod
    def constant(cls, c, order: int) -> TruncatedSeries:
        return cls([c] + [0] * order)

    @classmethod
    def identity(cls, order: int) -> TruncatedSeries:
        """The series ``z``."""
        if order == 0:
            return cls([0])
        return cls([0, 1] + [0] * (order - 1))

    @classmethod
    def from_moments(cls, moments: Sequence) -> TruncatedSeries:
        """``sum_k moments[k-1] z**k`` with zero constant term."""
        return cls([0, *moments])

    # -- basic protocol ------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        if not 0 <= k <= self.order:
            raise IndexError(f"coefficient {k} is outside order {self.order}")
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __repr__(self) -> str:
        return f"TruncatedSeries([{', '.join(map(str, self.coeffs))}])"

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def _coerce(self, other) -> TruncatedSeries | None:
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries.constant(other, self.order)
        return None

    # -- ring operations (result order = min of operand orders) --------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = min(self.order, other.order)
        return TruncatedSeries(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs))

    __radd__ = __add__

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(-a for a in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return TruncatedSeries(c * a for a in self.coeffs)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order)
        # integer convolution over common denominators: one gcd per coefficient
        a, da = _over_common_denominator(self.coeffs[: n + 1])
        b, db = _over_common_denominator(other.coeffs[: n + 1])
        out = [0] * (n + 1)
        for i, ai in enumerate(a):
            if ai:
                for j in range(n + 1 - i):
                    out[i + j] += ai * b[j]
        den = da * db
        return TruncatedSeries(Fraction(x, den) for x in out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def times_z(self) -> TruncatedSeries:
        """``z * f``; the order grows by one."""
        return TruncatedSeries((0, *self.coeffs))

    def over_z(self) -> TruncatedSeries:
        """``f / z`` for ``f(0) = 0``; the order drops by one."""
        if self.coeffs[0]:
            raise SeriesError("f/z needs a vanishing constant term")
        if self.order == 0:
            raise SeriesError("f/z of an order-0 series carries no information")
        return TruncatedSeries(self.coeffs[1:])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    # -- composition calculus ------------------------------------------------

    def compose(self, g: TruncatedSeries) -> TruncatedSeries:
        """``self(g(z))`` through the common order; requires ``g(0) = 0``."""
        if g.coeffs[0]:
            raise CompositionUndefined("inner series must have zero constant term")
        n = min(self.order, g.order)
        g = g.truncate(n)
        # Horner; each multiplication by g raises the valuation, so the
        # coefficients beyond n never feed back.
        acc = TruncatedSeries.constant(self.coeffs[n], n)
        for k in range(n - 1, -1, -1):
            acc = acc * g + self.coeffs[k]
        return acc

    def reciprocal(self) -> TruncatedSeries:
        c0 = self.coeffs[0]
        if not c0:
            raise NotInvertible("reciprocal of a series with zero constant term")
        a = self.coeffs
        inv0 = 1 / c0
        out = [inv0]
        for n in range(1, self.order + 1):
            s = sum((a[k] * out[n - k] for k in range(1, n + 1) if a[k]), Fraction(0))
            out.append(-s * inv0)
        return TruncatedSeries(out)

    def reversion(self) -> TruncatedSeries:
        """Compositional inverse by Lagrange inversion.

        ``[z^n] h = (1/n) [w^(n-1)] (w / g(w))^n``.
        """
        if self.coeffs[0]:
            raise NotInvertible("reversion needs a zero constant term")
        n = self.order
        if n == 0:
            return TruncatedSeries([0])
        if not self.coeffs[1]:
            raise NotInvertible("reversion needs a nonzero linear coefficient")
        phi = self.over_z().reciprocal()  # w / g(w), order n - 1
        out = [Fraction(0)]
        power = TruncatedSeries.constant(1, n - 1)
        for k in range(1, n + 1):
            power = power * phi
            out.append(power.coeffs[k - 1] / k)
        return TruncatedSeries(out)


def series_compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f.compose(g)


def series_reversion(g: TruncatedSeries) -> TruncatedSeries:
    return g.reversion()


def series_reciprocal(f: TruncatedSeries) -> TruncatedSeries:
    return f.reciprocal()


@dataclass(frozen=True)
class Poly:
    """Polynomial with exact coefficients, ``coeffs[k]`` of ``x**k``.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``.
    """

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable = ()):
        c = list(_scalars(coeffs))
        while c and not c[-1]:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_series(cls, s: TruncatedSeries) -> Poly:
        return cls(s.coeffs)

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly([{', '.join(map(str, self.coeffs))}])"

    def __add__(self, other: Poly) -> Poly:
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[k] + other[k] for k in range(n))

    def __sub__(self, other: Poly) -> Poly:
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[k] - other[k] for k in range(n))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(other * a for a in self.coeffs)
        if not self or not other:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def to_series(self, order: int) -> TruncatedSeries:
        return TruncatedSeries(self[k] for k in range(order + 1))


@dataclass(frozen=True)
class TwoStateLaw:
    """Moments ``psi(X**1..X**N)`` and ``phi(X**1..X**N)`` of one variable."""

    psi: tuple[Fraction, ...]
    phi: tuple[Fraction, ...]

    def __init__(self, psi: Iterable, phi: Iterable):
        psi, phi = _scalars(psi), _scalars(phi)
        if len(psi) != len(phi):
            raise ValueError(f"psi has {len(psi)} moments but phi has {len(phi)}")
        object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "phi", phi)

    @property
    def order(self) -> int:
        return len(self.psi)

    @classmethod
    def single_state(cls, moments: Iterable) -> TwoStateLaw:
        moments = _scalars(moments)
        return cls(moments, moments)

    @classmethod
    def point(cls, c, order: int) -> TwoStateLaw:
        """Law of the scalar ``c`` in both states."""
        c = to_scalar(c)
        mom = [c**k for k in range(1, order + 1)]
        return cls(mom, mom)

    def truncate(self, order: int) -> TwoStateLaw:
        if order > self.order:
            raise ValueError(f"law has only {self.order} moments")
        return TwoStateLaw(self.psi[:order], self.phi[:order])

    @property
    def m(self) -> TruncatedSeries:
        return TruncatedSeries.from_moments(self.psi)

    @property
    def M(self) -> TruncatedSeries:
        return TruncatedSeries.from_moments(self.phi)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "psi": [format_scalar(q) for q in self.psi],
            "phi": [format_scalar(q) for q in self.phi],
        }

    @classmethod
    def from_json(cls, data: dict) -> TwoStateLaw:
        law = cls(data["psi"], data["phi"])
        if "order" in data and int(data["order"]) != law.order:
            raise ValueError(f"declared order {data['order']} but {law.order} moments given")
        return law


def series_to_json(s: TruncatedSeries) -> dict:
    return {"order": s.order, "coeffs": [format_scalar(q) for q in s.coeffs]}


def series_from_json(data: dict) -> TruncatedSeries:
    s = TruncatedSeries(data["coeffs"])
    if "order" in data and int(data["order"]) != s.order:
        raise ValueError(f"declared order {data['order']} but {len(s)} coefficients given")
    return s


# -- moments <-> transforms --------------------------------------------------


def _check_kind(kind: str, allowed=TRANSFORM_KINDS) -> None:
    if kind not in allowed:
        raise ValueError(f"unknown transform kind {kind!r}; expected one of {allowed}")


def _shifted_argument(m: TruncatedSeries) -> TruncatedSeries:
    """``z (1 + m(z))`` at the order of ``m``; its linear coefficient is 1."""
    return (m + 1).times_z().truncate(m.order)


def _require_psi1(psi: Sequence[Fraction], kind: str) -> None:
    if not psi or not psi[0]:
        raise DomainError(f"{kind}-transform requires psi(X) != 0 (first psi-moment vanishes)")


def transform_from_moments(kind: str, law: TwoStateLaw) -> TruncatedSeries:
    """Compute one of ``R, T, S, cR, cT, cS`` from a two-state law.

    ``R``/``cR`` come back with order ``law.order`` and zero constant term;
    the multiplicative kinds with order ``law.order - 1``.
    """
    _check_kind(kind)
    if law.order < 1:
        raise ValueError("a law needs at least one moment")
    m, M = law.m, law.M
    if kind in ("R", "cR"):
        winv = _shifted_argument(m).reversion()
        if kind == "R":
            return m.compose(winv)
        g = M * (m + 1) * (M + 1).reciprocal()
        return g.compose(winv)

    _require_psi1(law.psi, kind)
    n = law.order - 1
    minv = m.truncate(n).reversion()
    if kind in ("T", "S"):
        t = (m.over_z() * (m.truncate(n) + 1).reciprocal()).compose(minv)
        return t if kind == "T" else t.reciprocal()
    ct = (M.over_z() * (M.truncate(n) + 1).reciprocal()).compose(minv)
    if kind == "cS":
        if not law.phi[0]:
            raise DomainError("cS-transform requires phi(X) != 0 (first phi-moment vanishes)")
        return ct.reciprocal()
    return ct


def moments_from_transform(
    kind: str,
    transform: TruncatedSeries,
    psi_moments: Sequence | None = None,
) -> tuple[Fraction, ...]:
    """Invert :func:`transform_from_moments`.

    Returns psi-moments for ``R, T, S`` and phi-moments for ``cR, cT, cS``;
    the conditional kinds need the psi-moments of the same variable.  The
    number of moments recovered is ``transform.order`` for ``R``/``cR`` and
    ``transform.order + 1`` otherwise.
    """
    _check_kind(kind)
    if kind in ("R", "cR"):
        if transform.coeffs[0]:
            raise DomainError(f"{kind}-transform must have zero constant term")
        n = transform.order
    else:
        if kind in ("S", "cS"):
            if not transform.coeffs[0]:
                raise DomainError(f"{kind}-transform with zero constant term is not invertible")
            transform = transform.reciprocal()
            kind = kind.replace("S", "T")
        n = transform.order + 1

    if kind == "R":
        h = (transform + 1).reciprocal().times_z()  # w / (1 + R(w))
        return transform.compose(h.reversion()).coeffs[1:]
    if kind == "T":
        if not transform.coeffs[0]:
            raise DomainError("T-transform with zero constant term: psi(X) would vanish")
        u = TruncatedSeries.identity(n - 1)
        h = (transform * (u + 1)).reciprocal().times_z()  # u / (T(u) (1 + u))
        return h.reversion().coeffs[1:]

    if psi_moments is None:
        raise DomainError(f"{kind}-transform inversion needs the psi-moments")
    psi = _scalars(psi_moments)
    if len(psi) < n:
        raise DomainError(f"{kind}-transform of order {transform.order} needs {n} psi-moments, got {len(psi)}")
    m = TruncatedSeries.from_moments(psi[:n])
    if kind == "cR":
        g = transform.compose(_shifted_argument(m))
        # g (1 + M) = M (1 + m)  =>  M = g / (1 + m - g)
        return (g * (m + 1 - g).reciprocal()).coeffs[1:]
    _require_psi1(psi, kind)
    zc = transform.compose(m.truncate(n - 1)).times_z()
    # c (1 + M) = M / z  =>  M = z c / (1 - z c)
    return (zc * (1 - zc).reciprocal()).coeffs[1:]
