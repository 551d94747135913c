"""The A2 quiver: a Serre quotient can have smaller hd than either side allows.

Representations of 1 -> 2 over a finite field have hd 1.  The span of the
simple S2 is semisimple (hd 0), and the quotient by it is equivalent to
vector spaces at vertex 1 (hd 0).  So hd(A) > max(hd(B), hd(A/B)).

Run with ``python3 demos/a2_quiver.py``.
"""

from serrecat import direct_sum, ext_group, finite_field, projective_rep_p1, simple_rep
from serrecat.hdlab import verify_quiver_example
from serrecat.serre import check_lifting_property, epimorphisms_onto_b, span, torsion_pair

# %% The three indecomposables
F = finite_field(3)
S1, S2, P1 = simple_rep(1, F), simple_rep(2, F), projective_rep_p1(F)
print("dims:", S1.quiver_dims(), S2.quiver_dims(), P1.quiver_dims())

# %% Ext between simples: the arrow shows up in degree 1 only
for name, X, Y in [("S1,S2", S1, S2), ("S2,S1", S2, S1), ("S1,S1", S1, S1)]:
    print(f"Ext^*({name}):", [ext_group(i, X, Y).order for i in range(3)])

# %% Torsion pair of P1 with respect to B = span(S2)
B = span([S2])
T = torsion_pair(P1, B)
print("P1 splits as sub", T.sub.quiver_dims(), "and quotient", T.quotient.quiver_dims())

# %% P1 has no quotient in B, but P1 + S2 does; check lifting there
X = direct_sum(P1, S2)[0]
TX = torsion_pair(X, B)
print("P1+S2 splits as sub", TX.sub.quiver_dims(), "and quotient", TX.quotient.quiver_dims())
for f in epimorphisms_onto_b(X, B):
    w = check_lifting_property(f, B)
    print("epi onto", f.target.quiver_dims(), "witness", w.sub.quiver_dims())

# %% The whole comparison in one call
report = verify_quiver_example(F)
for fact, ok in sorted(report.facts.items()):
    print(f"{fact:22s} {ok}")
