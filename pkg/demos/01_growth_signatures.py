"""Exact growth data of integer matrices.

The growth of M^n is rho^n * n^s: rho is the spectral radius and s + 1 is
the largest Jordan block size among eigenvalues of maximal modulus.  Both
are computed exactly from the minimal polynomial's squarefree structure,
with no floating point on the decision path.
"""

from catentropy import (
    ExactMatrix,
    char_poly,
    growth_signature,
    min_poly,
    quasi_unipotent_order,
)

M = ExactMatrix.from_rows

print("A parabolic shear: M = [[1, 1], [0, 1]]")
shear = M([[1, 1], [0, 1]])
print("  characteristic polynomial:", char_poly(shear))
print("  minimal polynomial:       ", min_poly(shear))
sig = growth_signature(shear)
print("  rho =", sig.rho_exact, " s =", sig.s)
print("  M^n grows linearly: one Jordan block of size 2 at eigenvalue 1")
print()

print("A hyperbolic matrix: M = [[2, 1], [1, 1]]")
fib = M([[2, 1], [1, 1]])
sig = growth_signature(fib)
print("  minimal polynomial:", min_poly(fib))
print("  rho = %.15f (certified interval width %.2g)" % (
    sig.rho_float, float(sig.rho_interval[1] - sig.rho_interval[0])))
print("  exact tag:", sig.rho_exact)
print("  s =", sig.s, " (simple dominant eigenvalue, no polynomial factor)")
print()

print("A rotation: M = [[0, -1], [1, 0]]")
rot = M([[0, -1], [1, 0]])
print("  quasi-unipotence order:", quasi_unipotent_order(rot), "(M^4 = I)")
sig = growth_signature(rot)
print("  rho =", sig.rho_exact, " s =", sig.s, " -- bounded orbits")
print()

print("Order counts multiply across blocks:")
from catentropy import cyclotomic_poly

block = ExactMatrix.block_diag(
    ExactMatrix.companion(cyclotomic_poly(3)),
    ExactMatrix.companion(cyclotomic_poly(4)),
)
print("  companion(Phi_3) + companion(Phi_4): order =",
      quasi_unipotent_order(block), "= lcm(3, 4)")
