# From a group action to a complex of groups and back again.
from cogkit import fixtures
from cogkit.complexes import induce_from_action, validate_cog
from cogkit.development import roundtrip

A = fixtures.s3_triangle_action()  # S3 on the subdivided triangle
print("f-vector", A.complex.f_vector())

cog, F, info = induce_from_action(A, "canonical")
print("quotient has", len(cog.base.objects), "simplices")
print("violations", validate_cog(cog))

# the adversarial policy picks awkward lifts, which shows up as twisting
adv, _, _ = induce_from_action(A, "adversarial")
print("nontrivial twists", sum(not g.is_identity() for g in adv.twists.values()))

# developing the induced complex recovers the action up to equivariant iso
for policy in fixtures.POLICIES:
    r = roundtrip(A, policy)
    print(policy, "roundtrip ok" if r.success else "roundtrip FAILED")
