"""c-freeness checked directly on operators.

Algebra j is generated by pi(a*_j), pi(a_j) and the K-side operators on
letter j.  For psi-centred elements taken alternately from the two algebras,
psi of the product vanishes and phi of the product factorises.
"""
import random

from cfree.twolevel import centered, check_alternating_word, random_algebra_element, verify_cfree_structure

rng = random.Random(1)
xs = [centered(random_algebra_element(rng, j % 2)) for j in range(4)]
psi_w, phi_w, prod = check_alternating_word(xs)
print(f"psi(x4 x3 x2 x1) = {psi_w}")
print(f"phi(x4 x3 x2 x1) = {phi_w}   product of phi(x_j) = {prod}")

report = verify_cfree_structure(max_len=5, trials=20, seed=0)
print(report.to_json())

# Reusing the same letters breaks independence, and the check notices.
print("same letters pass?", verify_cfree_structure(letters=(0, 0), max_len=4, trials=5).passed)
