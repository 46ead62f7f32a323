"""Moments, transforms and back again.

A two-state law is just two moment sequences: psi(X^n) and phi(X^n).
Each of the six transforms packs one of them into a power series.
"""
from fractions import Fraction

from cfree.series import TRANSFORM_KINDS, TwoStateLaw, moments_from_transform, transform_from_moments

# The semicircle law under psi (Catalan numbers at even orders) paired with
# a geometric law under phi.
law = TwoStateLaw(
    psi=[0, 1, 0, 2, 0, 5, 0, 14],
    phi=[Fraction(1, 2) ** n for n in range(1, 9)],
)

# R of the semicircle is z^2.  cR mixes in phi and is no longer a monomial.
print("R  =", transform_from_moments("R", law))
print("cR =", transform_from_moments("cR", law))

# The multiplicative transforms need psi(X) != 0, so shift X by one.
shifted = TwoStateLaw([1, 2, 4, 9, 21, 51], [1, 1, 2, 3, 5, 8])
for kind in ("T", "S", "cT", "cS"):
    print(f"{kind:<2} =", transform_from_moments(kind, shifted))

# Every transform inverts exactly.  The conditional ones need the psi-moments.
for kind in TRANSFORM_KINDS:
    src = law if kind in ("R", "cR") else shifted
    t = transform_from_moments(kind, src)
    back = moments_from_transform(kind, t, src.psi)
    want = src.psi if kind in ("R", "T", "S") else src.phi
    print(f"round trip {kind:<2}: {'exact' if back == want else 'MISMATCH'}")
