"""Finite abelian groups modulo S-torsion.

Quotienting by the S-primary groups keeps only the S'-primary part:
Hom and Ext in the quotient are the S'-parts of the ordinary ones, and hd
stays at 1 on both sides.

Run with ``python3 demos/abelian_localization.py``.
"""

from serrecat import ext_group, hom_group, make_finab
from serrecat.hdlab import verify_thm_hd
from serrecat.serre import localized_ext, localized_hom, q_hom, s_torsion, torsion_pair

# %% A group and its primary splitting
X = make_finab([2, 12])
B = s_torsion([2])
T = torsion_pair(X, B)
print("X =", X.invariants, "-> 2'-part", T.sub.invariants, "and 2-part", T.quotient.invariants)

# %% Hom and Ext before and after inverting 2
Y = make_finab([6, 36])
print("|Hom(X,Y)| =", hom_group(X, Y).order, " in A/A_2:", q_hom(X, Y, B).order,
      " localized:", localized_hom(X, Y, [2]).order)
print("|Ext^1(X,Y)| =", ext_group(1, X, Y).order, " localized:", localized_ext(1, X, Y, [2]).order)

# %% hd on both sides over all groups of order <= 24
for S in ([2], [3], [2, 3]):
    c = verify_thm_hd("finab:24", S)
    print(f"S={S}: hd(A)={c.whole.max_degree} hd(A_S)={c.sub.max_degree} "
          f"hd(A/A_S)={c.quotient.max_degree} holds={c.holds}")
