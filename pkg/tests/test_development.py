import pytest

from cogkit import fixtures
from cogkit.complexes import MorphismToGroup, induce_from_action, trivial_cog, trivial_witness, validate_morphism_to_group
from cogkit.development import (
    GScwol,
    block,
    develop,
    equivariant_iso,
    fixed_subscwol,
    gscwol_of_action,
    local_development,
    local_development_is_cone,
    quotient_action,
    roundtrip,
    stabilizer,
)
from cogkit.groups import trivial_group
from cogkit.homology import chain_from_delta, homology, is_simplicial_cone
from cogkit.scwol import scwol_of_complex
from cogkit.simplicial import SimplicialComplex, build_complex


def cycle_rank(D):
    """Oracle for H_1 of a graph: E - V + #components, by union-find."""
    parent = {v: v for v in D.cells[0]}

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    for e in D.cells.get(1, []):
        x, y = (find(v) for v in D.faces[e])
        parent[x] = y
    comps = len({find(v) for v in parent})
    return len(D.cells.get(1, [])) - len(D.cells[0]) + comps, comps


def all_cogs():
    cogs = dict(fixtures.fixture_cogs())
    cogs["S3-ADV"] = induce_from_action(fixtures.s3_triangle_action(), "adversarial")[0]
    return cogs


def test_block_seg(seg):
    B, sub, F = block(seg, ("u",))
    assert set(B.scwol.objects) == {("u",), ("u", "w")}
    assert len(B.scwol.arrows) == 1
    assert F.element(B.scwol.arrows[0]).is_identity()


def test_block_tri3(tri3):
    B, _, F = block(tri3, ("v0",))
    assert len(B.scwol.objects) == 4 and len(B.scwol.arrows) == 5
    assert validate_morphism_to_group(F).is_developability_witness


def test_twist_blocks_carry_twists(twist):
    seen = 0
    for s in twist.base.objects:
        B, sub, F = block(twist, s)
        assert validate_morphism_to_group(F).is_developability_witness
        seen += sum(not F.element(a).is_identity() for a in B.scwol.arrows)
    assert seen >= 1


def test_local_development_seg(seg):
    D = local_development(seg, ("u",))
    over = lambda tau: [o for o in D.scwol.objects if o[1] == tau]
    assert len(over(("u",))) == 1 and len(over(("u", "w"))) == 2
    assert len(D.scwol.arrows) == 2
    R = D.realization()
    assert R.counts() == [3, 2] and R.euler_characteristic() == 1


def test_local_development_tri3(tri3):
    D = local_development(tri3, ("v0",))
    by_tau = {}
    for o in D.scwol.objects:
        by_tau[o[1]] = by_tau.get(o[1], 0) + 1
    assert sorted(by_tau.values()) == [1, 2, 2, 2]
    assert len(D.scwol.arrows) == 10 and len(D.scwol.composable_pairs()) == 4
    assert D.realization().euler_characteristic() == 1
    assert homology(chain_from_delta(D.realization())).is_point()


def test_top_simplex_block_is_point(seg):
    D = local_development(seg, ("u", "w"))
    assert D.realization().counts() == [1]


def test_trivial_groups_give_block_itself():
    C = trivial_cog(fixtures.triangle_complex())
    for s in C.base.objects:
        B, _, _ = block(C, s)
        D = local_development(C, s)
        assert len(D.scwol.objects) == len(B.scwol.objects)
        assert len(D.scwol.arrows) == len(B.scwol.arrows)


def test_develop_seg_counts(seg, seg_witness):
    D = develop(seg, seg_witness)
    G = seg_witness.target
    expected = {("u",): G.order // 2, ("w",): G.order // 3, ("u", "w"): G.order}
    for tau, n in expected.items():
        assert sum(o[1] == tau for o in D.scwol.objects) == n
    assert len(D.scwol.objects) == 11 and len(D.scwol.arrows) == 12


def test_develop_seg_first_homology(seg, seg_witness):
    R = develop(seg, seg_witness).realization()
    rank, comps = cycle_rank(R)
    H = homology(chain_from_delta(R))
    assert comps == 1 and H.betti == [1, rank] == [1, 2]
    assert H.torsion == [[], []]


@pytest.mark.parametrize("name", sorted(fixtures.fixture_complexes()))
def test_develop_trivial_is_base(name):
    Y = fixtures.fixture_complexes()[name]
    C = trivial_cog(Y)
    D = develop(C, trivial_witness(C))
    one = trivial_group(1)
    target = GScwol(scwol_of_complex(Y), one, lambda g, o: o, lambda g, a: a)
    iso = equivariant_iso(D, target)
    assert iso is not None
    assert all(iso[o] == o[1] for o in D.scwol.objects)


@pytest.mark.parametrize("name", sorted(all_cogs()))
def test_blocks_are_cones(name):
    C = all_cogs()[name]
    for s in C.base.objects:
        D = local_development(C, s)
        R = D.realization()
        assert local_development_is_cone(D)
        assert is_simplicial_cone(R) is not None
        assert R.euler_characteristic() == 1
        assert homology(chain_from_delta(R)).is_point()


@pytest.mark.parametrize("name", sorted(all_cogs()))
def test_coset_counts_and_stabilizers(name):
    C = all_cogs()[name]
    for s in C.base.objects:
        D = local_development(C, s)
        G = D.group
        for tau in D.base.objects:
            image = D.morphism.F_obj[tau].image()
            fibre = [o for o in D.scwol.objects if o[1] == tau]
            assert len(fibre) * len(image) == G.order
            o = D.identity_object(tau)
            assert stabilizer(D, o).element_set() == image
            assert {D.act_object(g, o) for g in G} == set(fibre)


def test_stabilizer_and_fixed_points_tri3(tri3):
    D = local_development(tri3, ("v0",))
    G = D.group
    assert stabilizer(D, D.identity_object(("v0",))).order == 2
    whole = fixed_subscwol(D, G.subgroup([]))
    assert whole.objects == D.scwol.objects and whole.arrows == D.scwol.arrows
    F = fixed_subscwol(D, G)
    from cogkit.scwol import realization

    R = realization(F)
    assert F.objects and is_simplicial_cone(R) is not None and R.euler_characteristic() == 1


@pytest.mark.parametrize("name", sorted(all_cogs()))
def test_fixed_points_are_cones(name):
    from cogkit.scwol import realization

    C = all_cogs()[name]
    for s in C.base.objects:
        D = local_development(C, s)
        for H in D.group.subgroups():
            R = realization(fixed_subscwol(D, H))
            assert R.cells and is_simplicial_cone(R) is not None


def test_quotients(seg, seg_witness):
    Q, rep = quotient_action(develop(seg, seg_witness))
    assert rep.ok and Q.objects == seg.base.objects
    for s in seg.base.objects:
        D = local_development(seg, s)
        Q, rep = quotient_action(D)
        assert rep.ok and Q.objects == D.base.objects
    C = trivial_cog(fixtures.path_complex())
    D = develop(C, trivial_witness(C))
    Q, rep = quotient_action(D)
    assert rep.ok and len(Q.objects) == len(D.scwol.objects)


def test_equivariant_iso_examples():
    A = fixtures.hex_action()
    # relabel every vertex
    rename = {v: "r" + v for v in A.complex.vertices}
    K2 = build_complex([tuple(rename[v] for v in f) for f in A.complex.facets()])
    from cogkit.complexes import SimplicialAction

    table = {g: {rename[v]: rename[w] for v, w in m.items()} for g, m in A.vertex_action.items()}
    A2 = SimplicialAction(A.group, K2, table)
    assert equivariant_iso(A, A2) is not None
    assert equivariant_iso(A, fixtures.hex_action(step=4)) is None
    same = equivariant_iso(A, A)
    assert same is not None and all(same[o] == o for o in same)


@pytest.mark.parametrize("policy", fixtures.POLICIES)
@pytest.mark.parametrize("name", sorted(fixtures.fixture_actions()))
def test_roundtrip(name, policy):
    r = roundtrip(fixtures.fixture_actions()[name], policy)
    assert r.success
    assert r.development_counts == r.complex_counts


def test_roundtrip_path_counts():
    r = roundtrip(fixtures.path_action())
    assert r.development_counts == [5, 4]


def test_roundtrip_twist():
    r = roundtrip(fixtures.hexagon_disk_action(), "adversarial")
    assert r.success and r.subdivisions == 2


@pytest.mark.parametrize("policy", ["canonical", "adversarial"])
def test_block_matches_block_of_lift(policy):
    A = fixtures.s3_triangle_action()
    cog, F, data = induce_from_action(A, policy)
    X = scwol_of_complex(data.action.complex)
    for s in cog.base.objects:
        lift = data.lifts[s]
        star = [lift] + [X.i(a) for a in X.arrows_into(lift)]
        G = cog.group(s)
        sub = X.sub_scwol(star)
        target = GScwol(sub, G, lambda g, o: data.action.act(g, o), lambda g, a: (data.action.act(g, a[0]), data.action.act(g, a[1])))
        assert equivariant_iso(local_development(cog, s), target) is not None


def test_restriction_embeds(seg, seg_witness):
    full = develop(seg, seg_witness)
    objs = [("u",), ("u", "w")]
    sub = seg.restrict(objs)
    M = MorphismToGroup(sub, seg_witness.target, {o: seg_witness.F_obj[o] for o in objs}, {})
    part = develop(sub, M)
    assert set(part.scwol.objects) <= set(full.scwol.objects)
    for x in part.scwol.arrows:
        assert full.scwol.i(x) == part.scwol.i(x) and full.scwol.t(x) == part.scwol.t(x)
