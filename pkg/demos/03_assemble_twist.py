# Assembling the spaces E(sigma) over the TWIST complex of groups.
from cogkit import fixtures
from cogkit.assembly import CompatibleSystem, assemble_E, cubical_chain_complex, default_fibres
from cogkit.homology import homology

C = fixtures.twist_cog()
centre = max(C.base.objects, key=lambda s: C.group(s).order)
print("centre group order", C.group(centre).order)

# with one-point fibres E(sigma) is the realization of the block, a cone
E = assemble_E(C, centre, default_fibres(C, "point"))
print("cells", E.counts(), "homology", homology(cubical_chain_complex(E)))

# simplex fibres: the twisting elements now matter
E = assemble_E(C, centre, default_fibres(C, "simplex"), kind="simplex")
print("gluings checked", len(E.gluings), "violations", len(E.violations))

# the maps phi_b between blocks compose up to the twisting elements
report = CompatibleSystem(C, "simplex").check()
print("compatible" if report.ok else "NOT compatible", report.nontrivial_twist_chains, "twisted chains")
