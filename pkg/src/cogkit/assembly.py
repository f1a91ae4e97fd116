"""Equivariant assembly of the spaces E(sigma) from fibre data.

Every fibre ``E_tau`` is either a point or the full simplex on the elements
of ``G_tau`` (coordinates are exact Fractions indexed like
``G_tau.elements``; ``g`` acts by left multiplication on the vertices).  Both
models are convex, which is what lets straight-line homotopies and radial
extensions fill every cube.

A point of ``E(sigma)`` is a tuple ``(g, x, A, t)``: ``g`` in ``G_sigma``,
``x`` in the fibre over ``i(A)``, ``A`` a composable tuple of the block of
``sigma`` and ``t`` a point of the cube ``I^k``.  ``normalize`` pushes a
boundary point down the gluing maps until ``t`` is interior and then picks
the least coset representative, so two points are equal in ``E(sigma)``
exactly when their normal forms agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .complexes import Violation
from .development import Development, block
from .groups import CosetSpace, compose
from .homology import ChainComplex
from .scwol import ComposableTuple, vertex_tuple

ZERO, HALF, ONE = Fraction(0), Fraction(1, 2), Fraction(1)
FIBRE_KINDS = ("point", "simplex")


class AssemblyError(ValueError):
    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class UnsupportedFibre(AssemblyError):
    pass


def mix(terms):
    """Convex combination ``sum w * p`` of equal-length coordinate tuples."""
    terms = [(w, p) for w, p in terms if w]
    if not terms:
        raise AssemblyError("empty convex combination")
    n = len(terms[0][1])
    return tuple(sum((w * p[i] for w, p in terms), ZERO) for i in range(n))


# ----------------------------------------------------------------------------
# fibres and maps


class FibreModel:
    """A point, or the simplex spanned by the elements of ``group``."""

    def __init__(self, group, kind="simplex"):
        if kind not in FIBRE_KINDS:
            raise UnsupportedFibre(f"unknown fibre kind {kind!r}")
        self.group = group
        self.kind = kind

    def __repr__(self):
        return f"FibreModel({self.kind}, |G|={self.group.order})"

    @property
    def dimension(self):
        return 0 if self.kind == "point" else self.group.order - 1

    def vertex(self, g):
        if self.kind == "point":
            return ()
        coords = [ZERO] * self.group.order
        coords[self.group.index(g)] = ONE
        return tuple(coords)

    def basepoint(self):
        return self.vertex(self.group.identity)

    def barycenter(self):
        if self.kind == "point":
            return ()
        n = self.group.order
        return (Fraction(1, n),) * n

    def act(self, g, x):
        if self.kind == "point":
            return ()
        G = self.group
        out = [ZERO] * G.order
        for h, c in zip(G.elements, x):
            out[G.index(g * h)] = c
        return tuple(out)

    def contains(self, x):
        if self.kind == "point":
            return x == ()
        return len(x) == self.group.order and all(c >= 0 for c in x) and sum(x) == 1

    def samples(self):
        """Vertices and barycenter."""
        if self.kind == "point":
            return [()]
        return [self.vertex(g) for g in self.group.elements] + [self.barycenter()]

    def orbit_barycenter(self, H, g):
        """Barycenter of the vertices ``H g`` (fixed by ``H``)."""
        pts = sorted({h * g for h in H})
        w = Fraction(1, len(pts))
        return mix([(w, self.vertex(p)) for p in pts])

    def fixed_points(self, H):
        """For a subgroup ``H`` (element iterable): the barycenters of the
        ``H``-orbits of vertices, which span the fixed simplex ``E^H``."""
        if self.kind == "point":
            return [()]
        H = list(H)
        seen, out = set(), []
        for g in self.group.elements:
            if g in seen:
                continue
            orbit = {h * g for h in H}
            seen |= orbit
            out.append(self.orbit_barycenter(H, g))
        return out

    def is_fixed(self, H, x):
        return all(self.act(h, x) == x for h in H)


class FibreMap:
    """An affine map of fibres, equivariant along ``hom``.

    For a simplex source ``images[j]`` is the image of the ``j``-th vertex;
    for a point source ``images`` has one entry.
    """

    def __init__(self, source, target, hom, images):
        self.source = source
        self.target = target
        self.hom = hom
        self.images = tuple(images)

    @classmethod
    def induced(cls, source, target, hom):
        """The map sending the vertex ``g`` to the vertex ``hom(g)``."""
        if source.kind == "point":
            return cls(source, target, hom, [target.basepoint()])
        return cls(source, target, hom, [target.vertex(hom(g)) for g in source.group.elements])

    def __call__(self, x):
        if self.source.kind == "point":
            return self.images[0]
        if self.target.kind == "point":
            return ()
        return mix(zip(x, self.images))

    def then(self, other, hom=None):
        """``other o self``."""
        h = hom or compose(other.hom, self.hom)
        return FibreMap(self.source, other.target, h, [other(p) for p in self.images])

    def translate(self, g):
        """``g . self`` (equivariant along ``conj_g o hom``; callers pass the hom)."""
        return FibreMap(self.source, self.target, self.hom, [self.target.act(g, p) for p in self.images])

    def is_based(self):
        return self(self.source.basepoint()) == self.target.basepoint()

    def equivariance_violations(self, hom=None):
        hom = hom or self.hom
        out = []
        for g in self.source.group.elements:
            for x in self.source.samples():
                if self(self.source.act(g, x)) != self.target.act(hom(g), self(x)):
                    out.append((g, x))
        return out


class FibreHomotopy:
    """``H(x, t) = (1 - t) f0(x) + t f1(x)``; equivariant along the common hom."""

    def __init__(self, f0, f1):
        self.f0, self.f1 = f0, f1
        self.source, self.target, self.hom = f0.source, f0.target, f0.hom

    def __call__(self, x, t):
        t = Fraction(t)
        if self.target.kind == "point":
            return ()
        if t == 0:
            return self.f0(x)
        if t == 1:
            return self.f1(x)
        return mix([(1 - t, self.f0(x)), (t, self.f1(x))])

    def violations(self, times=(ZERO, Fraction(1, 3), HALF, ONE)):
        out = []
        for g in self.source.group.elements:
            for x in self.source.samples():
                for t in times:
                    if self(self.source.act(g, x), t) != self.target.act(self.hom(g), self(x, t)):
                        out.append((g, x, t))
        return out


def straightline_homotopy(f0, f1):
    """Straight-line homotopy between two maps equivariant along the same hom."""
    if f0.source is not f1.source or f0.target is not f1.target:
        raise AssemblyError("homotopy endpoints have different source or target")
    if f0.hom != f1.hom:
        raise AssemblyError("homotopy endpoints are equivariant along different homomorphisms")
    if f0.target.kind not in FIBRE_KINDS:
        raise UnsupportedFibre(f"no straight line in a {f0.target.kind} fibre")
    return FibreHomotopy(f0, f1)


def on_boundary(u):
    return any(c == 0 or c == 1 for c in u)


def extend_equivariant(boundary, k, beta, target):
    """Radial extension of ``boundary(x, w)`` (``w`` on the boundary of
    ``I^k``) over the whole cube, coning to ``beta(x)`` at the centre.

    Affine combinations of equivariant maps along one hom stay equivariant,
    so the extension is equivariant whenever ``boundary`` and ``beta`` are.
    """
    if target.kind not in FIBRE_KINDS:
        raise UnsupportedFibre(f"cannot extend into a {target.kind} fibre")

    def F(x, u):
        u = tuple(Fraction(c) for c in u)
        if len(u) != k:
            raise AssemblyError(f"expected a point of I^{k}")
        if target.kind == "point":
            return ()
        if on_boundary(u):
            return boundary(x, u)
        r = 2 * max(abs(c - HALF) for c in u)
        if r == 0:
            return beta(x)
        w = tuple(HALF + (c - HALF) / r for c in u)
        return mix([(1 - r, beta(x)), (r, boundary(x, w))])

    return F


def cube_to_simplex(t):
    """Barycentric coordinates ``(l_0, ..., l_k)`` of the image of ``t``.

    ``l_i = t_i prod_{j>i} (1 - t_j)`` and ``l_0 = prod_j (1 - t_j)``; the
    interior of the cube goes homeomorphically onto the open simplex.
    """
    k = len(t)
    lam = []
    for i in range(k + 1):
        w = ONE if i == 0 else Fraction(t[i - 1])
        for j in range(i + 1 if i else 1, k + 1):
            w *= 1 - Fraction(t[j - 1])
        lam.append(w)
    return tuple(lam)


# ----------------------------------------------------------------------------
# fibre data on a whole complex of groups


class FibreSystem:
    """Fibres ``E_tau``, the maps ``phi_a`` and the top-facet maps ``Theta_A``
    for every composable tuple of the base."""

    def __init__(self, cog, kind="simplex"):
        self.cog = cog
        self.kind = kind
        S = cog.base
        self.fibres = {o: FibreModel(cog.group(o), kind) for o in S.objects}
        self.phi = {a: FibreMap.induced(self.fibres[S.i(a)], self.fibres[S.t(a)], cog.psi[a]) for a in S.arrows}
        self._homotopies = {}
        self._theta = {}

    def homotopy(self, b, a):
        """``H_{b,a}`` from ``phi_{ba}`` to ``g_{b,a}^-1 phi_b phi_a``."""
        key = (b, a)
        if key not in self._homotopies:
            S = self.cog.base
            ba = S.compose[(b, a)]
            g = self.cog.twist(b, a)
            f1 = self.phi[a].then(self.phi[b], hom=self.phi[ba].hom).translate(g.inverse())
            self._homotopies[key] = straightline_homotopy(self.phi[ba], f1)
        return self._homotopies[key]

    def theta_boundary(self, A, x, s):
        """All values of ``Theta_A(x, s)`` forced by the faces of ``I^{k-1}``
        that contain ``s``; each entry is ``((i, eps), value)``."""
        S = self.cog.base
        k = A.k
        out = []
        for i in range(1, k):
            si = s[i - 1]
            rest = s[: i - 1] + s[i:]
            if si == 0:
                out.append(((i, 0), self.theta(S.tuple_boundary(A, i), x, rest)))
            elif si == 1:
                inner = ComposableTuple(A.arrows[k - i :])
                outer = ComposableTuple(A.arrows[: k - i])
                y = self.theta(inner, x, s[: i - 1])
                z = self.theta(outer, y, s[i:])
                g = self.cog.twist(S.tuple_composite(outer), S.tuple_composite(inner))
                out.append(((i, 1), self.fibres[S.tuple_terminal(A)].act(g.inverse(), z)))
        return out

    def theta(self, A, x, s=()):
        """``Theta_A(x, s)``: the fibre part of the top-facet map of ``A``.

        ``Theta_A`` is equivariant along ``psi_a`` for ``a`` the composite.
        """
        s = tuple(Fraction(c) for c in s)
        key = (A, x, s)
        hit = self._theta.get(key)
        if hit is not None:
            return hit
        S = self.cog.base
        k = A.k
        if k == 1:
            val = self.phi[A.arrows[0]](x)
        elif k == 2:
            val = self.homotopy(A.arrows[0], A.arrows[1])(x, s[0])
        else:
            a = S.tuple_composite(A)
            F = extend_equivariant(
                lambda y, w: self.theta_boundary(A, y, w)[0][1],
                k - 1,
                self.phi[a],
                self.fibres[S.tuple_terminal(A)],
            )
            val = F(x, s)
        self._theta[key] = val
        return val


def default_fibres(C, kind="simplex"):
    """Fibre data with every ``E_tau`` a point or the full simplex on ``G_tau``."""
    return FibreSystem(C, kind)


def cube_samples(k, values=(ZERO, HALF, ONE)):
    return [tuple(t) for t in product(values, repeat=k)]


# ----------------------------------------------------------------------------
# the assembled space


@dataclass
class Gluing:
    cell: tuple
    facet: tuple
    target: tuple
    target_dim: int

    @property
    def collapsed(self):
        return self.target_dim < len(self.cell[1].arrows) - 1


@dataclass
class StageReport:
    k: int
    cells: int
    violations: list = field(default_factory=list)


class ECellComplex:
    """``E(sigma)`` as a union of product cells ``G_sigma x_{G_tau} (E_tau x I^k)``.

    The cells of dimension ``k`` (ignoring fibre directions) are pairs
    ``(r, A)`` with ``A`` a composable ``k``-tuple of the block and ``r`` a
    least coset representative of ``G_sigma / F_sigma(G_{i(A)})``.
    """

    def __init__(self, cog, sigma, system=None, kind="simplex"):
        self.cog = cog
        self.sigma = sigma
        self.system = system or FibreSystem(cog, kind)
        self.kind = self.system.kind
        blk, sub, F = block(cog, sigma)
        self.block, self.sub, self.F = blk.scwol, sub, F
        self.group = cog.group(sigma)
        G = self.group
        B = self.block
        self.cosets = {tau: CosetSpace(G, F.F_obj[tau].image()) for tau in B.objects}
        self.cells = {}
        k = 0
        while True:
            tuples = B.composable_tuples(k)
            if not tuples:
                break
            self.cells[k] = [(r, A) for A in tuples for r in self.cosets[B.tuple_initial(A)].reps()]
            k += 1
        self.development = Development(sub, F)
        self.stages = []
        self.gluings = []

    def __repr__(self):
        return f"ECellComplex(sigma={self.sigma}, counts={self.counts()}, kind={self.kind})"

    @property
    def dimension(self):
        return max(self.cells, default=-1)

    def counts(self):
        return [len(self.cells[k]) for k in range(self.dimension + 1)]

    def fibre(self, tau):
        return self.system.fibres[tau]

    # points ---------------------------------------------------------------
    def canonical(self, g, x, A):
        """Least representative of ``[g, x]`` in ``G_sigma x_{G_tau} E_tau``."""
        tau = self.block.tuple_initial(A)
        r = self.cosets[tau].rep(g)
        h = self.F.F_obj[tau].preimage(r.inverse() * g)
        return r, self.fibre(tau).act(h, x)

    def top_facet(self, g, x, A, s):
        """Image of the facet ``t_k = 1`` of the cell over ``A`` at ``(g, x, s)``."""
        B = self.block
        a = B.tuple_composite(A)
        y = self.system.theta(A, x, s)
        return (g * self.F.element(a).inverse(), y, vertex_tuple(B.tuple_terminal(A)), ())

    def face_images(self, point):
        """Every gluing image of a boundary point, as ``((i, eps), point)``."""
        g, x, A, t = point
        k = A.k
        B = self.block
        out = []
        for i in range(1, k + 1):
            ti = t[i - 1]
            if ti == 0:
                out.append(((i, 0), (g, x, B.tuple_boundary(A, i), t[: i - 1] + t[i:])))
            elif ti == 1:
                if i == k:
                    out.append(((i, 1), self.top_facet(g, x, A, t[:-1])))
                else:
                    inner = ComposableTuple(A.arrows[k - i :])
                    outer = ComposableTuple(A.arrows[: k - i])
                    g2, y, _, _ = self.top_facet(g, x, inner, t[: i - 1])
                    out.append(((i, 1), (g2, y, outer, t[i:])))
        return out

    def normalize(self, point):
        g, x, A, t = point
        t = tuple(Fraction(c) for c in t)
        while True:
            faces = self.face_images((g, x, A, t))
            if not faces:
                break
            g, x, A, t = faces[0][1]
        r, y = self.canonical(g, x, A)
        return (r, y, A, t)

    def act(self, h, point):
        g, x, A, t = point
        return self.normalize((h * g, x, A, t))

    def cell_of(self, point):
        r, _, A, _ = self.normalize(point)
        return (r, A)

    # projection to the local development ---------------------------------
    def project(self, point):
        """``p`` to the realization of the local development: a cell there and
        barycentric coordinates along its vertex chain."""
        r, _, A, t = self.normalize(point)
        return self.development.lift_tuple(r, A), cube_to_simplex(t)

    def project_raw(self, point):
        """``p`` computed without normalizing in ``E(sigma)``: map the cube
        point to the simplex first and then pass to the face carrying it."""
        g, _, A, t = point
        cell = self.development.lift_tuple(self.cosets[self.block.tuple_initial(A)].rep(g), A)
        lam = list(cube_to_simplex(t))
        S = self.development.scwol
        while cell.k > 0 and 0 in lam:
            j = lam.index(0)
            cell = S.tuple_boundary(cell, j)
            del lam[j]
        return cell, tuple(lam)

    # verification --------------------------------------------------------
    def boundary_samples(self, k):
        return [t for t in cube_samples(k) if on_boundary(t)]

    def check_cell(self, cell):
        """Gluing well-definedness, the top-facet condition and independence
        of the coset representative for one cell."""
        r, A = cell
        k = A.k
        B = self.block
        tau = B.tuple_initial(A)
        E = self.fibre(tau)
        out = []
        for t in self.boundary_samples(k):
            for x in E.samples():
                p = (r, x, A, t)
                images = self.face_images(p)
                normals = {self.normalize(q) for _, q in images}
                if len(normals) > 1:
                    out.append(Violation("gluing-not-well-defined", (r, A, t, x), f"{len(normals)} distinct images"))
                if t[-1] == 1:
                    q = self.normalize(p)
                    if q[2] != vertex_tuple(B.tuple_terminal(A)):
                        out.append(Violation("top-facet", (r, A, t, x), "facet t_k = 1 is not glued into E over t(A)"))
                base = self.normalize(p)
                for h in self.F.F_obj[tau].source.elements:
                    other = self.normalize((r * self.F.F_obj[tau](h), x, A, t))
                    moved = self.normalize((r, E.act(h, x), A, t))
                    if other != moved:
                        out.append(Violation("coset-representative", (r, A, t, x, h), "gluing depends on the representative"))
                        break
                if self.project(p) != self.project_raw(p):
                    out.append(Violation("projection", (r, A, t, x), "p is not compatible with the gluing"))
                del base
        return out

    def check_corner(self, A):
        """``F(a2) F(a1) = psi(g_{a2,a1}) F(a2 a1)`` for a 2-tuple."""
        B = self.block
        a2, a1 = A.arrows
        F = self.F
        lhs = F.element(a2) * F.element(a1)
        g = self.cog.twist(a2, a1)
        rhs = self.cog.psi_between(self.sigma, B.t(a2))(g) * F.element(B.compose[(a2, a1)])
        if lhs != rhs:
            return [Violation("corner", (A,), "F(a2)F(a1) != psi(g_{a2,a1}) F(a2 a1)")]
        return []

    def verify(self):
        self.stages = []
        self.gluings = []
        for k in range(self.dimension + 1):
            violations = []
            for cell in self.cells[k]:
                if k >= 1:
                    violations += self.check_cell(cell)
                    self.gluings += self._gluings(cell)
                if k == 2 and cell[0] == self.group.identity:
                    violations += self.check_corner(cell[1])
            self.stages.append(StageReport(k, len(self.cells[k]), violations))
        return [v for s in self.stages for v in s.violations]

    def _gluings(self, cell):
        r, A = cell
        k = A.k
        x = self.fibre(self.block.tuple_initial(A)).basepoint()
        out = []
        for i in range(1, k + 1):
            for eps in (ZERO, ONE):
                t = tuple(eps if j == i else HALF for j in range(1, k + 1))
                q = self.normalize((r, x, A, t))
                out.append(Gluing(cell, (i, int(eps)), (q[0], q[2]), q[2].k))
        return out

    def gluing_table(self):
        if not self.gluings:
            for k in range(1, self.dimension + 1):
                for cell in self.cells[k]:
                    self.gluings += self._gluings(cell)
        return self.gluings

    def fixed_cells(self, H):
        """Cells meeting ``E(sigma)^H``: those ``(r, A)`` whose stabilizer
        ``r F(G_{i(A)}) r^-1`` contains ``H``."""
        out = []
        for k, cells in self.cells.items():
            for r, A in cells:
                stab = {r * h * r.inverse() for h in self.cosets[self.block.tuple_initial(A)].subgroup}
                if all(h in stab for h in H):
                    out.append((r, A))
        return out


def assemble_E(C, sigma, fibres=None, kind="simplex", strict=True):
    """Build ``E(sigma)`` and check every gluing; raises AssemblyError with
    the violations when ``strict``."""
    system = fibres if isinstance(fibres, FibreSystem) else FibreSystem(C, kind)
    E = ECellComplex(C, sigma, system)
    violations = E.verify()
    E.violations = violations
    if violations and strict:
        raise AssemblyError(f"E({sigma}) is not well defined: {violations[0].kind}", violations)
    return E


def cubical_chain_complex(E):
    """Cellular chains of ``E(sigma)`` for point fibres.

    A facet contributes ``(-1)^(i + eps)`` times the cell it is glued onto
    when that cell has one dimension less; collapsed facets contribute zero.
    """
    if E.kind != "point":
        raise UnsupportedFibre("cellular chains are only built for point fibres")
    basis = {k: list(cs) for k, cs in E.cells.items()}
    index = {k: {c: n for n, c in enumerate(cs)} for k, cs in basis.items()}
    boundaries = {}
    for k in range(1, E.dimension + 1):
        M = [[0] * len(basis[k]) for _ in basis[k - 1]]
        boundaries[k] = M
    for gl in E.gluing_table():
        k = gl.cell[1].k
        if gl.target_dim == k - 1:
            i, eps = gl.facet
            M = boundaries[k]
            M[index[k - 1][gl.target]][index[k][gl.cell]] += (-1) ** (i + eps)
    return ChainComplex(basis, boundaries)


# ----------------------------------------------------------------------------
# the compatible system of embeddings


@dataclass
class CompatReport:
    violations: list
    spaces: dict
    embeddings: int
    chains: int
    nontrivial_twist_chains: int

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return {
            "ok": self.ok,
            "spaces": {str(k): v for k, v in sorted(self.spaces.items(), key=lambda kv: str(kv[0]))},
            "embeddings": self.embeddings,
            "chains": self.chains,
            "nontrivial_twist_chains": self.nontrivial_twist_chains,
            "violations": [v.to_json() for v in self.violations[:20]],
        }


class CompatibleSystem:
    """The spaces ``E(sigma)`` and the embeddings ``phi_b: E(i(b)) -> E(t(b))``."""

    def __init__(self, cog, kind="simplex", strict=True):
        self.cog = cog
        self.system = FibreSystem(cog, kind)
        self.spaces = {s: assemble_E(cog, s, self.system, strict=strict) for s in cog.base.objects}

    def embed(self, b, point):
        """``phi_b [g, x, A, t] = [psi_b(g) g_{b,a}, x, A, t]`` with ``a`` the
        arrow from ``i(A)`` to ``i(b)`` (trivial when they coincide)."""
        C = self.cog
        S = C.base
        src = S.i(b)
        g, x, A, t = point
        tau = S.tuple_initial(A)
        twist = C.group(S.t(b)).identity if tau == src else C.twist(b, (src, tau))
        return self.spaces[S.t(b)].normalize((C.psi[b](g) * twist, x, A, t))

    def sample_points(self, E, cell):
        r, A = cell
        ts = [tuple([HALF] * A.k), tuple(Fraction(j + 1, A.k + 2) for j in range(A.k))]
        return [(r, x, A, t) for x in E.fibre(E.block.tuple_initial(A)).samples() for t in ts]

    def check(self):
        C = self.cog
        S = C.base
        out = []
        embeddings = chains = twisted = 0
        for b in S.arrows:
            src, dst = S.i(b), S.t(b)
            E, E2 = self.spaces[src], self.spaces[dst]
            embeddings += 1
            images = {}
            for k, cells in E.cells.items():
                for cell in cells:
                    img = self.embed(b, (cell[0], E.fibre(E.block.tuple_initial(cell[1])).basepoint(), cell[1], (HALF,) * k))
                    key = (img[0], img[2])
                    if key in images:
                        out.append(Violation("embedding-not-injective", (b, cell, images[key]), "two cells share an image"))
                    images[key] = cell
                    for p in self.sample_points(E, cell):
                        q = self.embed(b, p)
                        for h in E.group.elements:
                            if self.embed(b, E.act(h, p)) != E2.act(C.psi[b](h), q):
                                out.append(Violation("embedding-not-equivariant", (b, cell, h), "phi_b(h p) != psi_b(h) phi_b(p)"))
                                break
                    if k >= 1:
                        for t in E.boundary_samples(k):
                            p = (cell[0], E.fibre(E.block.tuple_initial(cell[1])).basepoint(), cell[1], t)
                            if self.embed(b, E.normalize(p)) != self.embed(b, p):
                                out.append(Violation("embedding-vs-gluing", (b, cell, t), "phi_b does not respect the gluing"))
            for c in S.arrows_from(dst):
                chains += 1
                cb = S.compose[(c, b)]
                g = C.twist(c, b)
                if not g.is_identity():
                    twisted += 1
                E3 = self.spaces[S.t(c)]
                for cells in E.cells.values():
                    for cell in cells:
                        for p in self.sample_points(E, cell):
                            lhs = self.embed(c, self.embed(b, p))
                            rhs = E3.act(g, self.embed(cb, p))
                            if lhs != rhs:
                                out.append(Violation("compatibility", (c, b, cell), "phi_c phi_b != g_{c,b} phi_{cb}"))
        spaces = {s: E.counts() for s, E in self.spaces.items()}
        return CompatReport(out, spaces, embeddings, chains, twisted)


def build_compatible_system(C, kind="simplex", strict=True):
    return CompatibleSystem(C, kind, strict)
