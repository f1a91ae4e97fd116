"""Blocks, developments of complexes of groups, and the round-trip oracle.

Coset convention: objects of a development over ``tau`` are left cosets
``g F_tau(G_tau)`` in the target group, stored by their least element; the
group acts on the left and the terminal map is
``t([g], a) = ([g F(a)^-1], t(a))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import (
    ComplexOfGroups,
    MorphismToGroup,
    SimplicialAction,
    induce_from_action,
    validate_morphism_to_group,
)
from .groups import CosetSpace, FinGroup, GroupError
from .homology import is_simplicial_cone
from .scwol import ComposableTuple, Scwol, realization, scwol_of_complex


class DevelopmentError(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass
class Block:
    base_simplex: tuple
    scwol: Scwol


def block(C, sigma):
    """The block of ``sigma``, the restricted complex of groups, and the
    canonical morphism ``F_sigma`` to ``G_sigma``."""
    S = C.base
    if sigma not in set(S.objects):
        raise DevelopmentError(f"{sigma!r} is not an object of the base")
    objects = [sigma] + [S.i(a) for a in S.arrows_into(sigma)]
    sub = C.restrict(objects)
    B = sub.base
    G_sigma = C.group(sigma)
    F_obj = {tau: C.psi_between(sigma, tau) for tau in B.objects}
    F_arrow = {}
    for a in B.arrows:
        t = B.t(a)
        if t == sigma:
            F_arrow[a] = G_sigma.identity
        else:
            F_arrow[a] = C.twist((sigma, t), a)
    return Block(sigma, B), sub, MorphismToGroup(sub, G_sigma, F_obj, F_arrow)


class Development:
    """The development of a complex of groups along a morphism to a finite
    group injective on local groups."""

    def __init__(self, cog, morphism):
        report = validate_morphism_to_group(morphism)
        if not report.valid:
            raise DevelopmentError("morphism fails validation: " + report.violations[0].kind)
        if not report.injective_on_local_groups:
            raise DevelopmentError("morphism is not injective on the local groups")
        self.cog = cog
        self.morphism = morphism
        self.group = morphism.target
        base = cog.base
        self.base = base
        G = self.group
        self.cosets = {tau: CosetSpace(G, morphism.F_obj[tau].image()) for tau in base.objects}

        objects = [(r, tau) for tau in base.objects for r in self.cosets[tau].reps()]
        arrows, initial, terminal = [], {}, {}
        problems = []
        for a in base.arrows:
            fa_inv = morphism.element(a).inverse()
            src, dst = self.cosets[base.i(a)], self.cosets[base.t(a)]
            for r, coset in src.cosets:
                x = (r, a)
                arrows.append(x)
                initial[x] = (r, base.i(a))
                terminal[x] = (dst.rep(r * fa_inv), base.t(a))
                # every representative of the coset must give the same terminal object
                if any(dst.rep(g * fa_inv) != terminal[x][0] for g in coset):
                    problems.append(x)
        if problems:
            raise DevelopmentError(f"terminal map not well defined on cosets, e.g. {problems[0]}")
        compose = {}
        for x in arrows:
            r, a = x
            mid = terminal[x]
            for b in base.arrows_from(base.t(a)):
                compose[((mid[0], b), x)] = (r, base.compose[(b, a)])
        self.scwol = Scwol(objects, arrows, initial, terminal, compose)

    def __repr__(self):
        return f"Development({len(self.scwol.objects)} objects, {len(self.scwol.arrows)} arrows, |G|={self.group.order})"

    # action -----------------------------------------------------------
    def act_object(self, g, obj):
        r, tau = obj
        return (self.cosets[tau].rep(g * r), tau)

    def act_arrow(self, g, arrow):
        r, a = arrow
        return (self.cosets[self.base.i(a)].rep(g * r), a)

    def base_object(self, obj):
        return obj[1]

    def identity_object(self, tau):
        return (self.group.identity, tau)

    def as_gscwol(self):
        return GScwol(self.scwol, self.group, self.act_object, self.act_arrow)

    # cells -------------------------------------------------------------
    def coset_cell_count(self, k):
        """``sum_A [G : F_{i(A)}(G_{i(A)})]`` over base k-tuples."""
        return sum(len(self.cosets[self.base.tuple_initial(A)]) for A in self.base.composable_tuples(k))

    def lift_tuple(self, rep, A):
        """The development tuple over ``A`` whose first arrow starts at the
        object with coset representative ``rep``."""
        if A.k == 0:
            return ComposableTuple((), (self.cosets[A.vertex].rep(rep), A.vertex))
        arrows = []
        g = rep
        for a in reversed(A.arrows):
            r = self.cosets[self.base.i(a)].rep(g)
            arrows.append((r, a))
            g = self.scwol.t((r, a))[0]
        return ComposableTuple(tuple(reversed(arrows)))

    def realization(self):
        return realization(self.scwol)

    def apex(self):
        """The unique object over the terminal base object, if there is one."""
        sinks = [o for o in self.base.objects if not self.base.arrows_from(o)]
        if len(sinks) != 1 or len(self.cosets[sinks[0]]) != 1:
            return None
        return (self.group.identity, sinks[0])


def develop(C, M):
    return Development(C, M)


def local_development(C, sigma):
    _, sub, F = block(C, sigma)
    D = Development(sub, F)
    D.sigma = sigma
    return D


def local_development_is_cone(D):
    """Cone check with apex the identity object over the block's simplex."""
    apex = is_simplicial_cone(D.realization())
    return apex is not None and D.scwol.is_poset_like()


def stabilizer(D, obj):
    G = D.group
    return G.subgroup_from_elements(g for g in G.elements if D.act_object(g, obj) == obj)


def fixed_subscwol(D, H):
    """Sub-scwol of objects and arrows fixed by every element of ``H``."""
    elements = H.elements if isinstance(H, FinGroup) else tuple(H)
    if not set(elements) <= set(D.group.elements) or D.group.identity not in elements:
        raise GroupError("H is not a subgroup of the acting group")
    D.group.subgroup_from_elements(elements)
    objs = [o for o in D.scwol.objects if all(D.act_object(h, o) == o for h in elements)]
    arrows = [x for x in D.scwol.arrows if all(D.act_arrow(h, x) == x for h in elements)]
    aset, oset = set(arrows), set(objs)
    if any(D.scwol.i(x) not in oset or D.scwol.t(x) not in oset for x in arrows):
        raise DevelopmentError("fixed arrow with a non-fixed endpoint")
    comp = {p: c for p, c in D.scwol.compose.items() if p[0] in aset and p[1] in aset}
    return Scwol(objs, arrows, {x: D.scwol.i(x) for x in arrows}, {x: D.scwol.t(x) for x in arrows}, comp)


@dataclass
class QuotientReport:
    violations: list = field(default_factory=list)
    forgetting_map: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.violations


def quotient_action(D):
    """Quotient of a development by its group, compared with the base scwol.

    Returns the quotient scwol (objects labelled by the base object each
    orbit lies over) and a report; the report is clean when the
    label-forgetting map identifies the quotient with the base.
    """
    S, G, base = D.scwol, D.group, D.base
    problems = []
    obj_orbits, arrow_orbits = {}, {}
    for o in S.objects:
        orb = frozenset(D.act_object(g, o) for g in G.elements)
        obj_orbits.setdefault(o[1], set()).add(orb)
    for x in S.arrows:
        orb = frozenset(D.act_arrow(g, x) for g in G.elements)
        arrow_orbits.setdefault(x[1], set()).add(orb)
    for tau in base.objects:
        if len(obj_orbits.get(tau, ())) != 1:
            problems.append(f"fibre over {tau} is not a single orbit")
    for a in base.arrows:
        if len(arrow_orbits.get(a, ())) != 1:
            problems.append(f"fibre over arrow {a} is not a single orbit")
    for x in S.arrows:
        if S.i(x)[1] != base.i(x[1]) or S.t(x)[1] != base.t(x[1]):
            problems.append(f"forgetting labels does not commute with i/t at {x}")
    for (y, x), z in S.compose.items():
        if base.compose.get((y[1], x[1])) != z[1]:
            problems.append(f"forgetting labels does not commute with composition at {(y, x)}")
    objs = sorted(obj_orbits)
    arrows = sorted(arrow_orbits)
    Q = Scwol(
        objs,
        arrows,
        {a: base.i(a) for a in arrows},
        {a: base.t(a) for a in arrows},
        {p: c for p, c in base.compose.items() if p[0] in arrow_orbits and p[1] in arrow_orbits},
    )
    if Q.objects != base.objects or Q.arrows != base.arrows:
        problems.append("quotient differs from the base scwol")
    fmap = {o: o[1] for o in S.objects}
    return Q, QuotientReport(problems, fmap)


# ---------------------------------------------------------------- equivariant isomorphism


@dataclass
class GScwol:
    """A scwol with a group acting on objects (and arrows)."""

    scwol: Scwol
    group: FinGroup
    act_object: object
    act_arrow: object = None


def gscwol_of_action(A):
    """The simplicial scwol of ``A.complex`` with the induced action."""
    S = scwol_of_complex(A.complex)
    return GScwol(S, A.group, lambda g, s: A.act(g, s), lambda g, a: (A.act(g, a[0]), A.act(g, a[1])))


def _as_gscwol(X):
    if isinstance(X, GScwol):
        return X
    if isinstance(X, SimplicialAction):
        return gscwol_of_action(X)
    if isinstance(X, Development):
        return X.as_gscwol()
    raise TypeError(f"cannot view {type(X).__name__} as a G-scwol")


def equivariant_iso(X1, X2, budget=200000):
    """An object bijection ``f`` with ``f(g.x) = g.f(x)`` carrying arrows to
    arrows (with multiplicity), found by backtracking over orbit
    representatives; ``None`` if none exists.

    Both scwols must be poset-like, which is the case for every scwol built
    from a simplicial complex or a development of one.
    """
    X1, X2 = _as_gscwol(X1), _as_gscwol(X2)
    if X1.group != X2.group:
        raise ValueError("equivariant isomorphism needs the same acting group")
    G = X1.group
    S1, S2 = X1.scwol, X2.scwol
    if len(S1.objects) != len(S2.objects) or len(S1.arrows) != len(S2.arrows):
        return None

    def arrow_counts(S):
        counts = {}
        for a in S.arrows:
            key = (S.i(a), S.t(a))
            counts[key] = counts.get(key, 0) + 1
        return counts

    c1, c2 = arrow_counts(S1), arrow_counts(S2)

    def signature(X, o):
        stab = tuple(g for g in G.elements if X.act_object(g, o) == o)
        S = X.scwol
        return (stab, len(S.arrows_from(o)), len(S.arrows_into(o)))

    sig1 = {o: signature(X1, o) for o in S1.objects}
    sig2 = {o: signature(X2, o) for o in S2.objects}
    if sorted(sig1.values()) != sorted(sig2.values()):
        return None

    by_sig = {}
    for o in S2.objects:
        by_sig.setdefault(sig2[o], []).append(o)

    # orbit representatives of X1 in breadth-first order for early pruning
    reps, covered = [], set()
    neighbours = {o: set() for o in S1.objects}
    for a in S1.arrows:
        neighbours[S1.i(a)].add(S1.t(a))
        neighbours[S1.t(a)].add(S1.i(a))
    for start in S1.objects:
        if start in covered:
            continue
        queue = [start]
        while queue:
            o = queue.pop(0)
            if o in covered:
                continue
            reps.append(o)
            covered |= {X1.act_object(g, o) for g in G.elements}
            queue.extend(sorted(n for n in neighbours[o] if n not in covered))

    f, used = {}, set()
    steps = [0]

    def consistent(new):
        for x in new:
            fx = f[x]
            for y in neighbours[x]:
                if y in f:
                    if c1.get((x, y), 0) != c2.get((fx, f[y]), 0):
                        return False
                    if c1.get((y, x), 0) != c2.get((f[y], fx), 0):
                        return False
        return True

    def search(n):
        if n == len(reps):
            return True
        steps[0] += 1
        if steps[0] > budget:
            raise SearchBudgetExceeded("equivariant isomorphism search exceeded its budget")
        x = reps[n]
        for y in by_sig[sig1[x]]:
            if y in used:
                continue
            new = {}
            ok = True
            for g in G.elements:
                gx, gy = X1.act_object(g, x), X2.act_object(g, y)
                if gx in new:
                    if new[gx] != gy:
                        ok = False
                        break
                    continue
                if gx in f or gy in used:
                    ok = False
                    break
                new[gx] = gy
            if not ok:
                continue
            f.update(new)
            used.update(new.values())
            if consistent(new) and search(n + 1):
                return True
            for k in new:
                del f[k]
            used.difference_update(new.values())
        return False

    if search(0):
        return dict(f)
    return None


def check_equivariant_iso(X1, X2, f):
    """Independent verification of a candidate isomorphism."""
    X1, X2 = _as_gscwol(X1), _as_gscwol(X2)
    S1, S2 = X1.scwol, X2.scwol
    if set(f) != set(S1.objects) or set(f.values()) != set(S2.objects):
        return False
    for g in X1.group.elements:
        if any(f[X1.act_object(g, o)] != X2.act_object(g, f[o]) for o in S1.objects):
            return False
    ends1 = sorted((f[S1.i(a)], f[S1.t(a)]) for a in S1.arrows)
    ends2 = sorted((S2.i(a), S2.t(a)) for a in S2.arrows)
    return ends1 == ends2


@dataclass
class RoundTripReport:
    success: bool
    policy: str
    subdivisions: int
    development_counts: list
    complex_counts: list
    isomorphism: dict = None
    induced: object = None
    development: object = None


def roundtrip(A, choice_policy="canonical", budget=200000):
    """Develop the complex of groups induced by ``A`` and compare with ``A``
    acting on the simplicial scwol of its (subdivided) complex."""
    cog, F, data = induce_from_action(A, choice_policy)
    D = develop(cog, F)
    target = gscwol_of_action(data.action)
    iso = equivariant_iso(D, target, budget=budget)
    ok = iso is not None and check_equivariant_iso(D, target, iso)
    return RoundTripReport(
        ok,
        data.policy,
        data.subdivisions,
        D.realization().counts(),
        realization(target.scwol).counts(),
        iso,
        (cog, F, data),
        D,
    )
