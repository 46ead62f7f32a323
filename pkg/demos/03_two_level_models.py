"""Two states on one space: the two-level Fock space E(H, K).

psi is the vacuum state of the H-part.  phi is the vector state at Omega,
which also sees the K-part.  The model b + A*_k + A_{k,F} has psi-law equal
to that of b and cR-transform z F(z), whatever b is.
"""
from fractions import Fraction

from cfree.fock import annihilate, create, haagerup_operator
from cfree.series import Poly, transform_from_moments
from cfree.twolevel import OMEGA, AStar, Pi, apply_e, construct_model, required_ranks, state_pair_moments

ONE = Fraction(1)
ranks = required_ranks(AStar(0), 3)
print("A*_0 Omega        =", apply_e(AStar(0), {OMEGA: ONE}, ranks))

b = Pi(create(0) + annihilate(0))
F = Poly([1, Fraction(-1, 2), 0, 2])
alpha = construct_model("additive", b, 0, F)
law = state_pair_moments(alpha, 6)
print("psi-moments       =", [str(q) for q in law.psi])
print("phi-moments       =", [str(q) for q in law.phi])
print("cR(alpha)         =", transform_from_moments("cR", law))
print("z F(z)            =", F.to_series(5).times_z())

# The multiplicative model d + d A*_k + A_{k,F} has cT-transform F.
d = Pi(haagerup_operator("multiplicative", Poly([2, 1]), 0))
G = Poly([3, -1])
beta = construct_model("multiplicative", d, 0, G)
print("cT(beta)          =", transform_from_moments("cT", state_pair_moments(beta, 6)))
