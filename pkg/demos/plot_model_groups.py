"""
Surjections onto the infinite dihedral group
============================================

A group maps onto Z/2 * Z/2 exactly when some index-2 subgroup has a
larger first Betti number than the group itself.  Here we run the
decision procedure on a handful of small presentations and look at the
witnesses it builds.
"""

# %%
from infdihedral import decide, parse_presentation, verify_surjection

groups = {
    "Z": "<x|>",
    "Z x Z": "<x,y | x y x' y'>",
    "free group F2": "<x,y|>",
    "Z/2 * Z/2": "<a,b | a^2, b^2>",
    "Klein bottle": "<a,b | a b a' = b'>",
}

for name, text in groups.items():
    P = parse_presentation(text)
    v = decide(P)
    print(f"{name:14s} {v.label}   b1(G) = {v.b1_group}")

# %%
# Every index-2 subgroup of Z x Z is again Z x Z, so the Betti number never
# grows.  The evidence table records that for each of the three characters.

P = parse_presentation(groups["Z x Z"])
for e in decide(P).table:
    print(e.chi.bits(), e.b1_subgroup, e.b1_group)

# %%
# For Z/2 * Z/2 the construction recovers an automorphism.  Elements are
# printed as a^flip (ab)^shift.

P = parse_presentation(groups["Z/2 * Z/2"])
s = decide(P).surjection
for name, image in zip(P.generator_names, s.images):
    print(name, "->", image)
print("psi =", s.psi, " verified:", verify_surjection(P, s.images))

# %%
# The conjugation action on the free part of H_1 of the subgroup is an
# integral involution.  psi spans (part of) its -1 eigenspace.

print(s.tau.A.to_rows())
