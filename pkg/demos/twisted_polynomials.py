"""Endomorphisms of the additive group as twisted polynomials.

Over k = F_q the ring k[F] has F a = a^p F.  The cokernels of F - id and of
F on truncations are one-dimensional over k, and a Dieudonne module with
nilpotent V has no Ext against G_a beyond degree 1.

Run with ``python3 demos/twisted_polynomials.py``.
"""

import random

from serrecat.dieudonne import TwistedPoly, coker_F, coker_F_minus_id, ext_D_against_Ga, random_vmodule
from serrecat.fields import finite_field

# %% Arithmetic in k[F] for k = F_4
k = finite_field(2, 2)
a = TwistedPoly(k, (0, 2))  # a F with a a generator of F_4
b = TwistedPoly(k, (1, 1))  # 1 + F
print("a*b =", a * b, " b*a =", b * a)

# %% Cokernels stay one-dimensional as the truncation grows
for N in (2, 8, 32):
    print(f"N={N}: dim coker(F - id) = {coker_F_minus_id(k, N).dim_k}, dim coker(F) = {coker_F(k, N).dim_k}")

# %% Ext against G_a for a few random V-modules
rng = random.Random(0)
for _ in range(3):
    M = random_vmodule(k, rng.randint(1, 6), rng)
    print(f"dim {M.dim}: Ext^i for i=0..3 ->", [ext_D_against_Ga(i, M) for i in range(4)])
