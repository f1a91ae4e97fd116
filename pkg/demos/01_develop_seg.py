# Developing a complex of groups on a single edge: C2 and C3 glued along 1.
from cogkit import fixtures
from cogkit.development import develop, stabilizer
from cogkit.homology import chain_from_delta, homology

C = fixtures.seg_cog()
F = fixtures.seg_c6_witness(C)  # C2 -> <g^3>, C3 -> <g^2> inside C6

D = develop(C, F)
print("objects", len(D.scwol.objects), "arrows", len(D.scwol.arrows))

# every object of the development is a coset [g] over a simplex of the base
for tau in D.base.objects:
    print(tau, "stabilizer order", stabilizer(D, D.identity_object(tau)).order)

# the realization is a graph: 3 vertices over u, 2 over w, 6 edges, subdivided
H = homology(chain_from_delta(D.realization()))
print("homology", H)  # two independent loops
