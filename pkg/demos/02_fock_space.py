"""Free variables as operators on a truncated full Fock space.

a*_i prepends letter i to a word and a_i strips it.  The vacuum moments of
a*_0 + a_0 are the Catalan numbers.  Orthogonal letters give free variables.
"""
from cfree.fock import annihilate, create, haagerup_operator, vacuum_moments
from cfree.series import Poly, TwoStateLaw, transform_from_moments

semicircle = create(0) + annihilate(0)
print("semicircle moments:", [int(q) for q in vacuum_moments(semicircle, 10)])

# a* + f(a) has R-transform z f(z).  Pick f, read off R from the moments.
f1, f2 = Poly([1, 2]), Poly([0, 0, -1])
x1 = haagerup_operator("additive", f1, 0)
x2 = haagerup_operator("additive", f2, 1)


def R(op, n=6):
    return transform_from_moments("R", TwoStateLaw.single_state(vacuum_moments(op, n)))


print("R(x1)      =", R(x1))
print("R(x2)      =", R(x2))
# Different letters make x1 and x2 free, so the R-transforms add.
print("R(x1 + x2) =", R(x1 + x2))

# (1 + a*) g(a) has T-transform g, and T multiplies across free products.
g1, g2 = Poly([1, 1]), Poly([2, 0, 3])
y1 = haagerup_operator("multiplicative", g1, 0)
y2 = haagerup_operator("multiplicative", g2, 1)
law = TwoStateLaw.single_state(vacuum_moments(y1 * y2, 6))
print("T(y1 y2)   =", transform_from_moments("T", law), " g1*g2 =", g1 * g2)
