"""Complexes of groups over simplicial scwols, morphisms, and the complex of
groups induced by a simplicial group action."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .groups import GroupError, GroupHom, conjugation, identity_hom, inclusion_hom, trivial_group, trivial_hom
from .scwol import Scwol, scwol_of_complex
from .simplicial import SimplicialComplex, barycentric_subdivision


class ActionError(ValueError):
    pass


@dataclass
class Violation:
    """One failed identity, with the arrows/pair/triple that witness it."""

    kind: str
    witness: tuple
    detail: str = ""

    def to_json(self):
        return {"kind": self.kind, "witness": [str(w) for w in self.witness], "detail": self.detail}


class ComplexOfGroups:
    """Local groups, injections ``psi_a`` and twisting elements over a scwol.

    ``twists`` is sparse: a missing composable pair means the identity.
    ``complex`` is the underlying simplicial complex when the base is a
    simplicial scwol (or a full sub-scwol of one).
    """

    def __init__(self, base, local_groups, psi, twists=None, complex=None):
        self.base = base
        self.local_groups = dict(local_groups)
        self.psi = dict(psi)
        self.twists = {p: g for p, g in (twists or {}).items() if not g.is_identity()}
        self.complex = complex

    def __repr__(self):
        return f"ComplexOfGroups({self.base!r}, orders={[self.local_groups[o].order for o in self.base.objects]})"

    def group(self, obj):
        return self.local_groups[obj]

    def twist(self, b, a):
        return self.twists.get((b, a), self.local_groups[self.base.t(b)].identity)

    def psi_between(self, small, big):
        """``psi_{small,big}``, the identity when ``small == big``."""
        if small == big:
            return identity_hom(self.local_groups[small])
        return self.psi[(small, big)]

    def arrow(self, small, big):
        return (small, big)

    def has_nontrivial_twist(self):
        return bool(self.twists)

    def restrict(self, objects):
        """Pull back along the inclusion of the full sub-scwol on ``objects``."""
        sub = self.base.sub_scwol(objects)
        arrows = set(sub.arrows)
        return ComplexOfGroups(
            sub,
            {o: self.local_groups[o] for o in sub.objects},
            {a: self.psi[a] for a in sub.arrows},
            {p: g for p, g in self.twists.items() if p[0] in arrows and p[1] in arrows},
            complex=self.complex,
        )


def validate_cog(C):
    """Every violated identity as a :class:`Violation`; empty means valid."""
    S = C.base
    out = []
    for a in S.arrows:
        psi = C.psi.get(a)
        if psi is None:
            out.append(Violation("psi missing", (a,)))
            continue
        if psi.source != C.group(S.i(a)) or psi.target != C.group(S.t(a)):
            out.append(Violation("psi has wrong source or target", (a,)))
            continue
        if not psi.is_injective():
            out.append(Violation("psi not injective", (a,)))
    if out:
        return out
    pairs = S.composable_pairs()
    for b, a in pairs:
        g = C.twist(b, a)
        G = C.group(S.t(b))
        if g not in G:
            out.append(Violation("twist outside local group", (b, a)))
            continue
        ba = S.compose[(b, a)]
        gi = g.inverse()
        for x in C.group(S.i(a)).elements:
            if g * C.psi[ba](x) * gi != C.psi[b](C.psi[a](x)):
                out.append(Violation("conjugation identity", (b, a), f"fails at {x}"))
                break
    if out:
        return out
    for b, a in pairs:
        for c in S.arrows_from(S.t(b)):
            cb, ba = S.compose[(c, b)], S.compose[(b, a)]
            lhs = C.psi[c](C.twist(b, a)) * C.twist(c, ba)
            rhs = C.twist(c, b) * C.twist(cb, a)
            if lhs != rhs:
                out.append(Violation("cocycle condition", (c, b, a)))
    return out


class MorphismToGroup:
    """``F_obj[o]: G_o -> target`` and ``F_arrow[a] in target``."""

    def __init__(self, cog, target, F_obj, F_arrow):
        self.cog = cog
        self.target = target
        self.F_obj = dict(F_obj)
        self.F_arrow = dict(F_arrow)

    def __repr__(self):
        return f"MorphismToGroup(target order {self.target.order})"

    def element(self, a):
        return self.F_arrow.get(a, self.target.identity)

    def is_injective_on_local_groups(self):
        return all(self.F_obj[o].is_injective() for o in self.cog.base.objects)


@dataclass
class MorphismReport:
    violations: list = field(default_factory=list)
    injective_on_local_groups: bool = False

    @property
    def valid(self):
        return not self.violations

    @property
    def is_developability_witness(self):
        return self.valid and self.injective_on_local_groups


def validate_morphism_to_group(M):
    C, S, G = M.cog, M.cog.base, M.target
    out = []
    for o in S.objects:
        F = M.F_obj.get(o)
        if F is None or F.source != C.group(o) or F.target != G:
            out.append(Violation("F_sigma missing or mistyped", (o,)))
    if out:
        return MorphismReport(out, False)
    for a in S.arrows:
        fa = M.element(a)
        if fa not in G:
            out.append(Violation("F(a) outside target", (a,)))
            continue
        fai = fa.inverse()
        for x in C.group(S.i(a)).elements:
            if M.F_obj[S.t(a)](C.psi[a](x)) != fa * M.F_obj[S.i(a)](x) * fai:
                out.append(Violation("F_t(a) psi_a = Ad(F(a)) F_i(a)", (a,), f"fails at {x}"))
                break
    for b, a in S.composable_pairs():
        ba = S.compose[(b, a)]
        if M.F_obj[S.t(b)](C.twist(b, a)) * M.element(ba) != M.element(b) * M.element(a):
            out.append(Violation("F(g_ba) F(ba) = F(b) F(a)", (b, a)))
    return MorphismReport(out, M.is_injective_on_local_groups())


def trivial_cog(Y):
    S = scwol_of_complex(Y)
    one = trivial_group(1)
    groups = {o: one for o in S.objects}
    psi = {a: identity_hom(one) for a in S.arrows}
    return ComplexOfGroups(S, groups, psi, complex=Y)


def trivial_witness(C, target=None):
    target = target or trivial_group(1)
    F = {o: trivial_hom(C.group(o), target) for o in C.base.objects}
    return MorphismToGroup(C, target, F, {})


# ---------------------------------------------------------------- morphisms of complexes


class CogMorphism:
    """Morphism ``source -> target`` over a non-degenerate simplicial map.

    ``vertex_map`` sends vertices of the source complex to vertices of the
    target complex; ``F_obj[sigma]: G_sigma -> G_f(sigma)``; ``F_arrow[a]`` lies
    in ``G_{t(f(a))}``.
    """

    def __init__(self, source, target, vertex_map, F_obj, F_arrow):
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        self.F_obj = dict(F_obj)
        self.F_arrow = dict(F_arrow)

    def f(self, simplex):
        return tuple(sorted(self.vertex_map[v] for v in simplex))

    def f_arrow(self, a):
        return (self.f(a[0]), self.f(a[1]))

    def element(self, a):
        return self.F_arrow.get(a, self.target.group(self.target.base.t(self.f_arrow(a))).identity)


@dataclass
class CogMorphismReport:
    violations: list
    local_isomorphism: bool
    isomorphism: bool

    @property
    def valid(self):
        return not self.violations


def validate_cog_morphism(M):
    src, dst = M.source, M.target
    S, T = src.base, dst.base
    out = []
    for o in S.objects:
        image = M.f(o)
        if len(set(image)) != len(o) or image not in set(T.objects):
            out.append(Violation("base map degenerate or not simplicial", (o,)))
    if out:
        return CogMorphismReport(out, False, False)
    for a in S.arrows:
        fa = M.f_arrow(a)
        g = M.element(a)
        gi = g.inverse()
        psi_f = dst.psi[fa]
        for x in src.group(S.i(a)).elements:
            lhs = g * psi_f(M.F_obj[S.i(a)](x)) * gi
            if lhs != M.F_obj[S.t(a)](src.psi[a](x)):
                out.append(Violation("Ad(F(a)) psi_f(a) F_i(a) = F_t(a) psi_a", (a,), f"fails at {x}"))
                break
    for b, a in S.composable_pairs():
        ba = S.compose[(b, a)]
        fb, fa = M.f_arrow(b), M.f_arrow(a)
        lhs = M.F_obj[S.t(b)](src.twist(b, a)) * M.element(ba)
        rhs = M.element(b) * dst.psi[fb](M.element(a)) * dst.twist(fb, fa)
        if lhs != rhs:
            out.append(Violation("twist compatibility", (b, a)))
    local_iso = all(M.F_obj[o].is_bijective() for o in S.objects)
    vm = M.vertex_map
    iso = (
        local_iso
        and len(set(vm.values())) == len(vm)
        and {M.f(o) for o in S.objects} == set(T.objects)
    )
    return CogMorphismReport(out, local_iso and not out, iso and not out)


def identity_cog_morphism(C):
    vm = {v: v for v in C.complex.vertices}
    return CogMorphism(C, C, vm, {o: identity_hom(C.group(o)) for o in C.base.objects}, {})


# ---------------------------------------------------------------- group actions


class SimplicialAction:
    """A finite permutation group acting on the vertices of a complex.

    ``vertex_action[g][v]`` is the image of vertex ``v`` under ``g``.
    """

    def __init__(self, group, complex, vertex_action, validate=True):
        self.group = group
        self.complex = complex
        self.vertex_action = {g: dict(m) for g, m in vertex_action.items()}
        if validate:
            problems = self.violations()
            if problems:
                raise ActionError("; ".join(problems[:5]))

    @classmethod
    def from_generators(cls, group, complex, generator_maps):
        """Extend vertex permutations given per generator to the whole group."""
        if len(generator_maps) != len(group.generators):
            raise ActionError("need one vertex map per group generator")
        ident = {v: v for v in complex.vertices}
        table = {group.identity: ident}
        frontier = [group.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s, m in zip(group.generators, generator_maps):
                    y = s * x
                    image = {v: m[table[x][v]] for v in complex.vertices}
                    if y in table:
                        if table[y] != image:
                            raise ActionError("generator maps do not define a group action")
                    else:
                        table[y] = image
                        nxt.append(y)
            frontier = nxt
        return cls(group, complex, table)

    def violations(self):
        out = []
        verts = set(self.complex.vertices)
        if set(self.vertex_action) != set(self.group.elements):
            return ["vertex action must be given for every group element"]
        for g, m in self.vertex_action.items():
            if set(m) != verts or set(m.values()) != verts:
                out.append(f"{g} does not permute the vertices")
        if out:
            return out
        for g in self.group.elements:
            for s in self.complex.simplices:
                if self.act(g, s) not in self.complex:
                    out.append(f"{g} does not map simplex {s} to a simplex")
                    break
        for g, h in product(self.group.elements, repeat=2):
            gh = self.vertex_action[g * h]
            if any(gh[v] != self.vertex_action[g][self.vertex_action[h][v]] for v in verts):
                out.append(f"action is not a homomorphism at ({g}, {h})")
                break
        return out

    def act(self, g, simplex):
        m = self.vertex_action[g]
        return tuple(sorted(m[v] for v in simplex))

    def stabilizer(self, simplex):
        simplex = tuple(sorted(simplex))
        return self.group.subgroup_from_elements(g for g in self.group.elements if self.act(g, simplex) == simplex)

    def orbit(self, simplex):
        return sorted({self.act(g, simplex) for g in self.group.elements})

    def inversions(self):
        """Pairs (g, simplex) where g preserves the simplex but moves a vertex."""
        out = []
        for s in self.complex.simplices:
            if len(s) < 2:
                continue
            for g in self.group.elements:
                if self.act(g, s) == s and any(self.vertex_action[g][v] != v for v in s):
                    out.append((g, s))
        return out

    def subdivide(self):
        K2 = barycentric_subdivision(self.complex)
        table = {g: {s: self.act(g, s) for s in self.complex.simplices} for g in self.group.elements}
        return SimplicialAction(self.group, K2, table, validate=False)

    def quotient_defects(self):
        """Reasons the orbit projection fails to give a simplicial quotient."""
        label = {v: min(self.orbit((v,)))[0] for v in self.complex.vertices}
        out = []
        seen = {}
        for s in self.complex.simplices:
            image = tuple(sorted({label[v] for v in s}))
            if len(image) != len(s):
                out.append(f"projection is not injective on {s}")
                continue
            orb = self.orbit(s)[0]
            if seen.setdefault(image, orb) != orb:
                out.append(f"two simplex orbits project onto {image}")
        return out


# ---------------------------------------------------------------- choice policies


class ChoicePolicy:
    """How lifts and elements ``h_a`` are picked when inducing a complex of groups."""

    name = "canonical"

    def choose_lift(self, sigma, candidates):
        return candidates[0]

    def choose_element(self, arrow, candidates):
        return candidates[0]


class AdversarialPolicy(ChoicePolicy):
    """Largest lift and largest valid element: forces non-trivial twists."""

    name = "adversarial"

    def choose_lift(self, sigma, candidates):
        return candidates[-1]

    def choose_element(self, arrow, candidates):
        return candidates[-1]


class RandomPolicy(ChoicePolicy):
    def __init__(self, seed):
        self.seed = seed
        self.name = f"random:{seed}"
        self._rng = random.Random(seed)

    def choose_lift(self, sigma, candidates):
        return self._rng.choice(candidates)

    def choose_element(self, arrow, candidates):
        return self._rng.choice(candidates)


def make_policy(name):
    if isinstance(name, ChoicePolicy):
        return name
    if name in (None, "canonical"):
        return ChoicePolicy()
    if name == "adversarial":
        return AdversarialPolicy()
    if isinstance(name, str) and name.startswith("random:"):
        return RandomPolicy(int(name.split(":", 1)[1]))
    raise ValueError(f"unknown choice policy {name!r}")


@dataclass
class InducedData:
    """What ``induce_from_action`` chose along the way."""

    action: SimplicialAction  # the action actually used (after subdivisions)
    subdivisions: int
    quotient: SimplicialComplex
    projection: dict  # simplex of action.complex -> simplex of quotient
    lifts: dict
    h: dict
    policy: str


def induce_from_action(A, choice_policy="canonical", repair=True, max_subdivisions=2):
    """The complex of groups of an action without inversion, its canonical
    morphism to the acting group, and the recorded choices."""
    policy = make_policy(choice_policy)
    subdivisions = 0
    while True:
        problems = [f"{g} inverts {s}" for g, s in A.inversions()] or A.quotient_defects()
        if not problems:
            break
        if not repair or subdivisions >= max_subdivisions:
            raise ActionError("; ".join(problems[:3]))
        A = A.subdivide()
        subdivisions += 1

    G, X = A.group, A.complex
    label = {v: min(A.orbit((v,)))[0] for v in X.vertices}
    projection = {s: tuple(sorted(label[v] for v in s)) for s in X.simplices}
    Y = SimplicialComplex(set(label.values()), set(projection.values()))
    S = scwol_of_complex(Y)

    fibres = {}
    for s in X.simplices:
        fibres.setdefault(projection[s], []).append(s)
    lifts = {sigma: policy.choose_lift(sigma, sorted(fibres[sigma])) for sigma in Y.simplices}

    h = {}
    for a in S.arrows:
        small, big = a
        big_lift = lifts[big]
        tau = tuple(sorted(v for v in big_lift if label[v] in small))
        target = lifts[small]
        candidates = [g for g in G.elements if A.act(g, tau) == target]
        h[a] = policy.choose_element(a, candidates)

    local = {sigma: A.stabilizer(lifts[sigma]) for sigma in Y.simplices}
    psi = {}
    for a in S.arrows:
        ha, hai = h[a], h[a].inverse()
        psi[a] = GroupHom(local[S.i(a)], local[S.t(a)], {g: ha * g * hai for g in local[S.i(a)].elements})
    twists = {}
    for b, a in S.composable_pairs():
        ba = S.compose[(b, a)]
        twists[(b, a)] = h[b] * h[a] * h[ba].inverse()
    cog = ComplexOfGroups(S, local, psi, twists, complex=Y)
    F = {sigma: inclusion_hom(local[sigma], G) for sigma in Y.simplices}
    morphism = MorphismToGroup(cog, G, F, dict(h))
    data = InducedData(A, subdivisions, Y, projection, lifts, h, policy.name)
    return cog, morphism, data
