"""Cohomology of small finite groups and the hd of l-primary Gamma-modules.

When l does not divide |Gamma| the category behaves like abelian l-groups
(hd 1).  When it does, Ext keeps appearing in every degree probed.

Run with ``python3 demos/group_cohomology.py``.
"""

from serrecat.gammacoh import cd_ell_probe, group_cohomology, hd_gamma_mod_probe
from serrecat.groups import group_from_name
from serrecat.modules import trivial_gamma_module

# %% H^i(C2, Z/2) is Z/2 in every degree
C2 = group_from_name("C2")
M = trivial_gamma_module(C2, [2])
print("H^i(C2, Z/2):", [group_cohomology(i, C2, M).invariants for i in range(5)])

# %% cd_l probes
for name in ["1", "C2", "C3", "S3"]:
    for ell in (2, 3):
        P = cd_ell_probe(group_from_name(name), ell, 3)
        print(f"cd_{ell}({name}) probe: value={P.value} evidence={P.evidence_degree}")

# %% hd of Gamma-mod_l up to degree 3
for name in ["C2", "C3", "C2xC2", "S3"]:
    for ell in (2, 3):
        P = hd_gamma_mod_probe(group_from_name(name), ell, 3)
        print(f"{name:6s} l={ell}: nonzero Ext degrees {P.nonzero_degrees}")
