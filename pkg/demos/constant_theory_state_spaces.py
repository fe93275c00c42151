"""Walk through the state spaces of the theory whose closed surfaces all evaluate to beta.

Run: python demos/constant_theory_state_spaces.py
"""

from tqft2d.cobord import gram_matrix, render_relation, state_space_report
from tqft2d.exact import det_fraction_free
from tqft2d.theory import parse_theory

theory = parse_theory("const beta")

print("Gram determinants on the genus-free spanning sets:")
for k in (2, 3):
    print(f"  k={k}: det = {det_fraction_free(gram_matrix(k, theory))}")

print("\nRanks and graded ranks (pivots chosen from the top degree down):")
for k in range(7):
    rep = state_space_report(k, theory, kernel=(k == 4))
    print(f"  k={k}: rank {rep.rank:3d}   {rep.graded_text}")
    if k == 4:
        for rel in rep.kernel_relations:
            print(f"        relation: {render_relation(rel, labels=True)} = 0")
