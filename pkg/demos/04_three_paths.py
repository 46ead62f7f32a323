"""c-free convolution, computed three independent ways.

1. transforms: add cR (or multiply cT) and invert;
2. axioms: expand every mixed moment by centring until c-freeness applies;
3. operators: realise each law on its own letters and simulate the sum.
"""
from cfree.convolution import cross_check
from cfree.series import TwoStateLaw

x = TwoStateLaw([1, 2, 3, 5, 8], [2, -1, 0, 1, 4])
y = TwoStateLaw([-1, 3, 0, 2, 1], [1, 1, 1, 1, 1])

for kind in ("add", "mul"):
    rep = cross_check(kind, x, y, 5)
    print(f"{kind}: paths agree = {rep.agree}")
    law = rep.paths["transform"]
    print("  psi =", [str(q) for q in law.psi])
    print("  phi =", [str(q) for q in law.phi])

# A law with psi(X) = 0 has no T-transform, so mul reports a precondition failure.
z = TwoStateLaw([0, 1, 0, 2, 0], [1, 1, 1, 1, 1])
print("mul with psi(X)=0 ->", cross_check("mul", z, y, 5).error)
