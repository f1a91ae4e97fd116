from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cogkit.groups import (
    CosetSpace,
    GroupError,
    GroupTooLarge,
    Permutation,
    compose,
    conjugation,
    cyclic_group,
    group_generate,
    identity_hom,
    inclusion_hom,
    left_cosets,
    make_hom,
    symmetric_group,
    trivial_group,
    trivial_hom,
)


def P(n, s):
    return Permutation.from_cycles(n, s)


def test_cycle_round_trip():
    g = P(6, "(1 4)(2 5)(3 6)")
    assert str(g) == "(1 4)(2 5)(3 6)"
    assert Permutation.from_images(g.one_based()) == g
    assert str(Permutation.identity(4)) == "()"


def test_products_compose_as_functions():
    a, b = P(3, "(1 2)"), P(3, "(2 3)")
    for x in range(3):
        assert (a * b)(x) == a(b(x))


@pytest.mark.parametrize(
    "degree, gens, order",
    [(2, ["(1 2)"], 2), (3, ["(1 2)", "(1 2 3)"], 6), (6, ["(1 2 3 4 5 6)"], 6)],
)
def test_group_generate_orders(degree, gens, order):
    assert group_generate(degree, [P(degree, g) for g in gens]).order == order


def test_s3_against_all_permutations():
    G = symmetric_group(3)
    brute = {Permutation(p) for p in permutations(range(3))}
    assert set(G.elements) == brute


def test_cap():
    with pytest.raises(GroupTooLarge):
        group_generate(5, [P(5, "(1 2)"), P(5, "(1 2 3 4 5)")], cap=60)


def test_cap_env_override(monkeypatch):
    monkeypatch.setenv("COGKIT_MAX_GROUP_ORDER", "10")
    with pytest.raises(GroupTooLarge):
        symmetric_group(4)


def test_make_hom_examples():
    C2, S3, C3 = cyclic_group(2), symmetric_group(3), cyclic_group(3)
    emb = make_hom(C2, S3, [P(3, "(1 2)")])
    assert emb.is_injective()
    with pytest.raises(GroupError):
        make_hom(C2, C3, [P(3, "(1 2 3)")])
    G = symmetric_group(3)
    assert make_hom(G, G, list(G.generators)) == identity_hom(G)


def test_injectivity_examples():
    C2, S3 = cyclic_group(2), symmetric_group(3)
    assert inclusion_hom(C2.subgroup([]), C2).is_injective()
    assert make_hom(C2, S3, [P(3, "(1 2)")]).is_injective()
    assert not trivial_hom(C2, C2).is_injective()


def test_conjugation_is_automorphism():
    for G in (symmetric_group(3), cyclic_group(6)):
        for g in G:
            c = conjugation(G, g)
            assert c.is_bijective()
            if G.is_abelian() or g.is_identity():
                assert c == identity_hom(G)


def test_conjugation_nontrivial_in_s3():
    G = symmetric_group(3)
    c = conjugation(G, P(3, "(1 2)"))
    assert c(P(3, "(1 2 3)")) == P(3, "(1 3 2)")


@pytest.mark.parametrize("sub_order, expected", [(2, 3), (6, 1), (1, 6)])
def test_coset_counts_c6(sub_order, expected):
    G = cyclic_group(6)
    H = next(S for S in G.subgroups() if S.order == sub_order)
    cs = left_cosets(G, H)
    assert len(cs) == expected
    assert all(len(c) == sub_order for _, c in cs)
    assert frozenset().union(*(c for _, c in cs)) == G.element_set()
    assert all(r == min(c) for r, c in cs)


def test_subgroups_of_s3():
    assert [H.order for H in symmetric_group(3).subgroups()] == [1, 2, 2, 2, 3, 6]


def test_compose_and_preimage():
    C2, S3 = cyclic_group(2), symmetric_group(3)
    h = make_hom(C2, S3, [P(3, "(2 3)")])
    k = conjugation(S3, P(3, "(1 2 3)"))
    kh = compose(k, h)
    g = C2.generators[0]
    assert kh(g) == k(h(g))
    assert h.preimage(P(3, "(2 3)")) == g


_S4 = symmetric_group(4)
_elements = st.sampled_from(_S4.elements)


@settings(max_examples=60, deadline=None)
@given(st.lists(_elements, min_size=1, max_size=2))
def test_cosets_partition(gens):
    H = _S4.subgroup(gens)
    cs = CosetSpace(_S4, H)
    assert len(cs) * H.order == _S4.order
    seen = set()
    for r, c in cs.cosets:
        assert len(c) == H.order and not (c & seen)
        seen |= c
        assert all(cs.rep(g) == r for g in c)
    assert seen == _S4.element_set()


@settings(max_examples=40, deadline=None)
@given(_elements)
def test_conjugation_multiplicative(g):
    c = conjugation(_S4, g)
    for x, y in product(_S4.generators, _S4.elements[:6]):
        assert c(x * y) == c(x) * c(y)
