"""Toeplitz determinants of a rational symbol computed two ways.

Run: python demos/day_formula.py
"""

import random
from fractions import Fraction

from tqft2d.day import day_verify, random_instance
from tqft2d.foam import DayFoamInstance

inst = DayFoamInstance([1, 2, -3], [Fraction(1, 2)], [4], 4)
v = day_verify(inst)
fmt = lambda vs: ", ".join(map(str, vs))
print(f"r=({fmt(inst.r)}), delta=({fmt(inst.delta)}), rho=({fmt(inst.rho)}), n={inst.n}")
print(f"  coloring formula : {v.formula_value}")
print(f"  Toeplitz det     : {v.brute_force_value}")

rng = random.Random(1)
agree = sum(day_verify(random_instance(rng)).equal for _ in range(25))
print(f"\n{agree}/25 random instances agree")
