"""Recover a rational generating function from its first terms, and the
closed-surface series of a rank-two Frobenius extension.

Run: python demos/generating_functions.py
"""

from tqft2d.theory import RationalByRoots, alpha_coeffs, detect_rational, frobenius_rank2_series

spec = RationalByRoots([2, -1], [3])
prefix = [a.constant_value() if a else 0 for a in alpha_coeffs(spec, 9)]
fit = detect_rational(prefix)
print(f"prefix {prefix}")
print(f"  numerator coeffs   {[str(c) for c in fit.reconstructed_P]}")
print(f"  denominator coeffs {[str(c) for c in fit.reconstructed_Q]}")

catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862]
print(f"\nCatalan prefix rational? {detect_rational(catalan) is not None}")

s = frobenius_rank2_series(5, rho0=0, rho1=1)
print("\nrank-two extension with eps(1)=0, eps(X)=1:")
for g in range(6):
    print(f"  genus {g}: {s.coefficient(g)}")
