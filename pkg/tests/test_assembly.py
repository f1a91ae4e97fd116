from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cogkit import fixtures
from cogkit.assembly import (
    AssemblyError,
    CompatibleSystem,
    ECellComplex,
    FibreModel,
    UnsupportedFibre,
    assemble_E,
    build_compatible_system,
    cube_samples,
    cube_to_simplex,
    cubical_chain_complex,
    default_fibres,
    extend_equivariant,
    straightline_homotopy,
)
from cogkit.complexes import Violation, trivial_cog
from cogkit.development import local_development
from cogkit.groups import symmetric_group
from cogkit.homology import chain_from_delta, homology

H = Fraction(1, 2)


def nontrivial_pair(C):
    return next(iter(sorted(C.twists)))


def test_fibre_model_basics():
    G = symmetric_group(3)
    E = FibreModel(G, "simplex")
    assert E.dimension == 5 and E.contains(E.barycenter())
    g = G.generators[1]
    assert E.act(g, E.vertex(G.identity)) == E.vertex(g)
    for K in G.subgroups():
        pts = E.fixed_points(K)
        assert len(pts) * K.order == G.order
        assert all(E.is_fixed(K, p) and E.contains(p) for p in pts)
    with pytest.raises(UnsupportedFibre):
        FibreModel(G, "sphere")


def test_seg_fibres(seg):
    pt = default_fibres(seg, "point")
    assert all(E.kind == "point" and E.dimension == 0 for E in pt.fibres.values())
    assert all(f(()) == () for f in pt.phi.values())
    sx = default_fibres(seg, "simplex")
    assert sx.fibres[("u",)].dimension == 1
    a = (("u",), ("u", "w"))
    f = sx.phi[a]
    assert f(sx.fibres[("u", "w")].basepoint()) == sx.fibres[("u",)].basepoint()
    assert f.is_based() and not f.equivariance_violations()


@pytest.mark.parametrize("kind", ["point", "simplex"])
def test_twist_fibre_maps_equivariant(twist, kind):
    sys = default_fibres(twist, kind)
    for a, f in sys.phi.items():
        assert f.equivariance_violations() == [], a


def test_straightline_examples(twist):
    sys = default_fibres(twist, "simplex")
    a = next(iter(sys.phi))
    f = sys.phi[a]
    const = straightline_homotopy(f, f)
    for x in f.source.samples():
        assert const(x, H) == f(x)
    b, a = nontrivial_pair(twist)
    Hba = sys.homotopy(b, a)
    assert Hba.violations() == []
    E = Hba.source
    for g in E.group.elements:
        x = E.vertex(g)
        mid = tuple((p + q) / 2 for p, q in zip(Hba.f0(x), Hba.f1(x)))
        assert Hba(x, H) == mid
    assert Hba.f0.is_based() and not Hba.f1.is_based()
    pt = default_fibres(twist, "point")
    assert pt.homotopy(b, a)((), H) == ()


def test_extend_trivial_cases(twist):
    E = FibreModel(twist.group(twist.base.objects[0]), "point")
    F = extend_equivariant(lambda x, w: (), 1, lambda x: (), E)
    assert {F((), (t,)) for t in (0, Fraction(1, 3), 1)} == {()}
    G = symmetric_group(3)
    S = FibreModel(G, "simplex")
    c = S.barycenter()
    F = extend_equivariant(lambda x, w: c, 2, lambda x: c, S)
    assert all(F(S.basepoint(), u) == c for u in cube_samples(2, (0, Fraction(1, 3), H, 1)))
    with pytest.raises(AssemblyError):
        F(S.basepoint(), (H,))


def _interior_samples(k):
    vals = (Fraction(0), Fraction(1, 5), Fraction(1, 3), H, Fraction(3, 4), Fraction(1))
    return cube_samples(k, vals)


@pytest.mark.parametrize("k", [1, 2])
def test_extend_twist_step2_data(twist, k):
    sys = default_fibres(twist, "simplex")
    b, a = nontrivial_pair(twist)
    Hba = sys.homotopy(b, a)
    beta = Hba.f0
    boundary = lambda x, w: Hba(x, w[0])
    F = extend_equivariant(boundary, k, beta, Hba.target)
    E = Hba.source
    base = E.basepoint()
    assert F(base, (H,) * k) == beta(base)
    for i in range(k):
        for eps in (0, 1):
            u = tuple(Fraction(eps) if j == i else H for j in range(k))
            for x in E.samples():
                assert F(x, u) == boundary(x, u)
    for g in E.group.elements:
        for x in E.samples():
            for u in _interior_samples(k):
                assert F(E.act(g, x), u) == Hba.target.act(Hba.hom(g), F(x, u))


def test_cube_to_simplex_vertices():
    assert cube_to_simplex(()) == (1,)
    assert cube_to_simplex((0,)) == (1, 0) and cube_to_simplex((1,)) == (0, 1)
    assert cube_to_simplex((1, 1)) == (0, 0, 1)
    assert cube_to_simplex((1, 0)) == (0, 1, 0)
    assert cube_to_simplex((0, 0)) == (1, 0, 0)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.fractions(0, 1), min_size=1, max_size=4))
def test_cube_to_simplex_property(t):
    lam = cube_to_simplex(t)
    assert sum(lam) == 1 and all(x >= 0 for x in lam)
    if all(0 < x < 1 for x in t):
        assert all(x > 0 for x in lam)


def test_tri3_point_assembly(tri3):
    E = assemble_E(tri3, ("v0",), kind="point")
    assert E.counts() == [7, 10, 4]
    assert homology(cubical_chain_complex(E)).is_point()
    assert all(not s.violations for s in E.stages)


def test_seg_point_assembly(seg):
    E = assemble_E(seg, ("u",), kind="point")
    assert E.counts() == [3, 2]
    assert str(homology(cubical_chain_complex(E))) == "(Z, 0)"
    top = assemble_E(seg, ("u", "w"), kind="point")
    assert top.counts() == [1] and homology(cubical_chain_complex(top)).is_point()


def test_trivial_cog_assembly_is_block():
    C = trivial_cog(fixtures.triangle_complex())
    for s in C.base.objects:
        E = assemble_E(C, s, kind="point")
        B = E.block
        assert E.counts() == [len(B.composable_tuples(k)) for k in range(len(E.counts()))]


def test_collapsed_facets(tri3):
    E = assemble_E(tri3, ("v0",), kind="point")
    collapsed = [g for g in E.gluing_table() if g.collapsed]
    # each 2-cell has its t_2 = 1 facet collapsed onto a vertex
    assert len(collapsed) == len(E.cells[2])
    assert all(g.facet == (2, 1) and g.target_dim == 0 for g in collapsed)


def all_cogs():
    cogs = {"SEG": fixtures.seg_cog(), "TRI3": fixtures.tri3_cog(), "TWIST": fixtures.twist_cog()}
    from cogkit.complexes import induce_from_action

    cogs["S3-ADV"] = induce_from_action(fixtures.s3_triangle_action(), "adversarial")[0]
    cogs["CONE-ADV"] = induce_from_action(fixtures.cone_s3_action(), "adversarial")[0]
    return cogs


@pytest.mark.parametrize("name", sorted(all_cogs()))
def test_point_assembly_matches_development(name):
    C = all_cogs()[name]
    sys = default_fibres(C, "point")
    for s in C.base.objects:
        E = assemble_E(C, s, sys)
        R = local_development(C, s).realization()
        assert E.counts() == R.counts()
        assert homology(cubical_chain_complex(E)) == homology(chain_from_delta(R))


@pytest.mark.parametrize("name", ["S3-ADV", "CONE-ADV"])
def test_simplex_assembly_well_defined(name):
    C = all_cogs()[name]
    sys = default_fibres(C, "simplex")
    for s in C.base.objects:
        assert assemble_E(C, s, sys).violations == []


def test_cellwise_action_stabilizers(s3_adversarial):
    C = s3_adversarial
    for s in C.base.objects:
        E = assemble_E(C, s, kind="point")
        G = E.group
        for r, A in E.cells.get(1, []) + E.cells[0]:
            if not r.is_identity():
                continue
            p = (r, (), A, (H,) * A.k)
            stab = {h for h in G if E.cell_of(E.act(h, p)) == (r, A)}
            tau = E.block.tuple_initial(A)
            assert stab == E.F.F_obj[tau].image()


def test_fixed_cells_nonempty(s3_adversarial):
    E = assemble_E(s3_adversarial, s3_adversarial.base.objects[0], kind="point")
    for K in E.group.subgroups():
        assert E.fixed_cells(K)


def test_tampered_arrow_element_detected(tri3):
    E = ECellComplex(tri3, ("v0",), kind="simplex")
    a = next(a for a in E.block.arrows if E.block.t(a) != ("v0",))
    E.F.F_arrow[a] = E.group.generators[0]
    vs = E.verify()
    assert any(v.kind == "corner" for v in vs)
    assert any(v.kind == "gluing-not-well-defined" for v in vs)


def test_strict_assembly_raises(tri3, monkeypatch):
    monkeypatch.setattr(ECellComplex, "check_corner", lambda self, A: [Violation("corner", (A,))])
    with pytest.raises(AssemblyError):
        assemble_E(tri3, ("v0",), kind="point")


def test_unsupported_chains_for_simplex_fibres(seg):
    with pytest.raises(UnsupportedFibre):
        cubical_chain_complex(assemble_E(seg, ("u",), kind="simplex"))


def test_compatible_trivial_triangle():
    C = trivial_cog(fixtures.triangle_complex())
    CS = build_compatible_system(C, "point")
    R = CS.check()
    assert R.ok and R.nontrivial_twist_chains == 0
    S = C.base
    for b in S.arrows:
        E = CS.spaces[S.i(b)]
        for k, cells in E.cells.items():
            for r, A in cells:
                img = CS.embed(b, (r, (), A, (H,) * k))
                assert (img[0], img[2]) == (r, A)


def test_compatible_tri3(tri3):
    R = build_compatible_system(tri3, "simplex").check()
    assert R.ok and R.chains > 0 and R.nontrivial_twist_chains == 0


def test_compatible_twist(twist):
    R = build_compatible_system(twist, "simplex").check()
    assert R.ok and R.nontrivial_twist_chains >= 1


def test_compatible_nonabelian(s3_adversarial):
    R = build_compatible_system(s3_adversarial, "simplex").check()
    assert R.ok and R.nontrivial_twist_chains >= 1


def test_dropping_twist_breaks_compatibility(s3_adversarial):
    CS = CompatibleSystem(s3_adversarial, "simplex", strict=False)
    CS.cog = type(s3_adversarial)(
        s3_adversarial.base, s3_adversarial.local_groups, s3_adversarial.psi, {}, s3_adversarial.complex
    )
    assert not CS.check().ok
