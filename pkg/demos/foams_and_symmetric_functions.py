"""Foam evaluations next to the symmetric functions they compute.

Run: python demos/foams_and_symmetric_functions.py
"""

from tqft2d.foam import (
    OverlapThetaFoam, ThetaFoam, overlap_theta_eval, resultant_of_roots, sphere_overlap_eval,
    theta_eval,
)
from tqft2d.symfun import Partition, schur_jt, super_schur_jt

mu = Partition.of(2, 1)
foam = ThetaFoam(3, mu)
print(f"theta foam, M=3, mu={mu}, dots {foam.dots}")
print(f"  foam  : {theta_eval(foam)}")
print(f"  schur : {schur_jt(mu, ['x1', 'x2', 'x3'])}")

lam = Partition.of(3, 2, 1)
over = OverlapThetaFoam(2, 1, lam)
print(f"\noverlapping theta foam, M=2, N=1, lambda={lam}")
print(f"  foam  : {overlap_theta_eval(over)}")
print(f"  super : {super_schur_jt(lam, ['x1', 'x2'], ['y1'])}")

print("\nspheres overlapping in a circle, minus signs, against the Sylvester resultant:")
for M, N in ((1, 1), (2, 1), (2, 2)):
    xs = [f"x{i}" for i in range(1, M + 1)]
    ys = [f"y{j}" for j in range(1, N + 1)]
    same = sphere_overlap_eval(M, N, "minus") == resultant_of_roots(xs, ys)
    print(f"  M={M}, N={N}: equal = {same}")
