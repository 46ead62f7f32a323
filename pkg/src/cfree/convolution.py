"""c-free additive and multiplicative convolution, three ways.

* transform path: add ``R`` and ``cR`` (or multiply ``T`` and ``cT``) and
  invert back to moments;
* axiomatic path: :func:`cfree.axioms.convolve_axiomatic`;
* operator path: realise each law by a model operator on the two-level
  space over its own pair of letters, add or multiply the operators, and
  read off their moments.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .axioms import convolve_axiomatic
from .fock import haagerup_operator
from .series import (
    DomainError,
    Poly,
    TwoStateLaw,
    moments_from_transform,
    transform_from_moments,
)
from .twolevel import Pi, construct_model, state_pair_moments

__all__ = ["cfree_convolve", "realize_law", "operator_convolve", "CrossCheckReport", "cross_check", "PATHS"]

PATHS = ("transform", "axiomatic", "operator")


def _check_kind(kind: str) -> None:
    if kind not in ("add", "mul"):
        raise ValueError(f"unknown kind {kind!r}; expected 'add' or 'mul'")


def _check_orders(lawX: TwoStateLaw, lawY: TwoStateLaw, n_max: int) -> None:
    if n_max < 1 or n_max > min(lawX.order, lawY.order):
        raise DomainError(f"n_max={n_max} must lie in 1..{min(lawX.order, lawY.order)}")


def _check_mul(lawX: TwoStateLaw, lawY: TwoStateLaw, need_phi: bool) -> None:
    for name, law in (("X", lawX), ("Y", lawY)):
        if not law.psi[0]:
            raise DomainError(f"multiplicative convolution needs psi({name}) != 0")
        if need_phi and not law.phi[0]:
            raise DomainError(f"operator realisation needs phi({name}) != 0")


def cfree_convolve(kind: str, lawX: TwoStateLaw, lawY: TwoStateLaw, n_max: int) -> TwoStateLaw:
    """Moments of ``X + Y`` or ``XY`` through order ``n_max`` via the transforms."""
    _check_kind(kind)
    _check_orders(lawX, lawY, n_max)
    lawX, lawY = lawX.truncate(n_max), lawY.truncate(n_max)
    if kind == "add":
        R = transform_from_moments("R", lawX) + transform_from_moments("R", lawY)
        cR = transform_from_moments("cR", lawX) + transform_from_moments("cR", lawY)
        psi = moments_from_transform("R", R)
        return TwoStateLaw(psi, moments_from_transform("cR", cR, psi))
    _check_mul(lawX, lawY, need_phi=False)
    T = transform_from_moments("T", lawX) * transform_from_moments("T", lawY)
    cT = transform_from_moments("cT", lawX) * transform_from_moments("cT", lawY)
    psi = moments_from_transform("T", T)
    return TwoStateLaw(psi, moments_from_transform("cT", cT, psi))


def realize_law(kind: str, law: TwoStateLaw, h_letter: int = 0, k_letter: int = 0, n_max: int | None = None):
    """Model operator on the two-level space whose first ``n_max`` moments are ``law``'s.

    Additive: ``pi(a* + f(a)) + A* + A_F`` with ``f = R/z`` and ``F = cR/z``.
    Multiplicative: ``d + d A* + A_F`` with ``d = pi((1 + a*) f(a))``,
    ``f = T`` and ``F = cT``.
    """
    _check_kind(kind)
    n_max = law.order if n_max is None else n_max
    if not 1 <= n_max <= law.order:
        raise DomainError(f"n_max={n_max} must lie in 1..{law.order}")
    law = law.truncate(n_max)
    if kind == "add":
        f = Poly(transform_from_moments("R", law).over_z().coeffs)
        F = Poly(transform_from_moments("cR", law).over_z().coeffs)
        base = Pi(haagerup_operator("additive", f, h_letter))
        return construct_model("additive", base, k_letter, F)
    _check_mul(law, law, need_phi=True)
    f = Poly(transform_from_moments("T", law).coeffs)
    F = Poly(transform_from_moments("cT", law).coeffs)
    base = Pi(haagerup_operator("multiplicative", f, h_letter))
    return construct_model("multiplicative", base, k_letter, F)


def operator_convolve(kind: str, lawX: TwoStateLaw, lawY: TwoStateLaw, n_max: int) -> TwoStateLaw:
    """Convolution read off from realisations on letters 0 (X) and 1 (Y)."""
    _check_kind(kind)
    _check_orders(lawX, lawY, n_max)
    if kind == "mul":
        _check_mul(lawX, lawY, need_phi=True)
    x = realize_law(kind, lawX, 0, 0, n_max)
    y = realize_law(kind, lawY, 1, 1, n_max)
    return state_pair_moments(x + y if kind == "add" else x * y, n_max)


def _law_json(law: Optional[TwoStateLaw]):
    return None if law is None else law.to_json()


@dataclass
class CrossCheckReport:
    kind: str
    n_max: int
    agree: bool
    paths: dict
    first_mismatch: Optional[dict] = None
    error: Optional[str] = None

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "agree": self.agree,
            "paths": {k: _law_json(v) for k, v in self.paths.items()},
            "first_mismatch": self.first_mismatch,
        }
        if self.error is not None:
            out["error"] = self.error
        return out


def _first_mismatch(paths: dict) -> Optional[dict]:
    ref_name, ref = next(iter(paths.items()))
    for name, law in paths.items():
        if law == ref:
            continue
        for state in ("psi", "phi"):
            a, b = getattr(ref, state), getattr(law, state)
            for n, (u, v) in enumerate(zip(a, b), start=1):
                if u != v:
                    return {"state": state, "order": n, ref_name: str(u), name: str(v)}
    return None


def cross_check(kind: str, lawX: TwoStateLaw, lawY: TwoStateLaw, n_max: int) -> CrossCheckReport:
    """Compute the convolution by all three paths and compare them exactly."""
    _check_kind(kind)
    try:
        _check_orders(lawX, lawY, n_max)
        if kind == "mul":
            _check_mul(lawX, lawY, need_phi=True)
        paths = {
            "transform": cfree_convolve(kind, lawX, lawY, n_max),
            "axiomatic": convolve_axiomatic(kind, lawX.truncate(n_max), lawY.truncate(n_max), n_max),
            "operator": operator_convolve(kind, lawX, lawY, n_max),
        }
    except DomainError as exc:
        return CrossCheckReport(kind, n_max, False, {p: None for p in PATHS}, None, f"precondition: {exc}")
    mismatch = _first_mismatch(paths)
    return CrossCheckReport(kind, n_max, mismatch is None, paths, mismatch)
