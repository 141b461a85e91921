"""
The Whitehead link
==================

Both components of the Whitehead link are unknotted and their linking
number is zero.  Each single-component meridian class gives a double
cover whose first Betti number jumps from 2 to 3, so the exterior group
maps onto Z/2 * Z/2.
"""

# %%
from infdihedral import analyze, load_fixture, wirtinger
from infdihedral.links import linking_matrix

D = load_fixture("whitehead")
print("PD:", D.pd.render())
print("signs:", D.signs)
print("linking matrix:", linking_matrix(D).to_rows())

# %%
# The Wirtinger presentation has one generator per over-arc.

W = wirtinger(D)
print(W.presentation.render())

# %%
A = analyze(D)
for c in A.per_class:
    comps = {i + 1 for i in c.components}
    print(comps, "b1(cover) =", c.b1_cover, "realizable" if c.realizable else "-")

# %%
# The decision procedure picks the first realizable character in
# lexicographic order, which is the meridian class of the second component.

s = A.group_verdict.surjection
print("character:", s.chi.bits())
for name, image in zip(W.presentation.generator_names, s.images):
    print(f"  {name} -> {image}")

# %%
# The all-ones class is not realizable.  The branched double cover is a
# rational homology sphere.

bc = A.branched_cover
print("H_1 of the branched double cover:", bc.invariant_factors, "order", bc.order)
print("|Delta(-1,-1)| =", bc.alexander_at_minus_one)
