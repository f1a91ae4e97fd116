"""Small categories without loops, composable tuples and their Δ-complex
realizations.

Arrow direction follows the simplicial convention: for simplices
``tau < sigma`` the arrow ``(tau, sigma)`` has initial object ``sigma`` (the
bigger simplex) and terminal object ``tau``.

Face maps on a composable tuple ``(a_k, ..., a_1)`` drop the vertex ``v_i``
of the chain ``v_0 = i(a_1), v_1 = t(a_1), ..., v_k = t(a_k)``:
``d_0`` drops ``a_1``, ``d_k`` drops ``a_k`` and ``d_i`` (``0 < i < k``)
composes ``a_{i+1} a_i``.  For ``k = 1`` this gives ``d_0 a = t(a)`` and
``d_1 a = i(a)``, which is what makes the semi-simplicial identities hold.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product


class ScwolError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ComposableTuple:
    """``arrows = (a_k, ..., a_1)``; a 0-tuple stores its object in ``vertex``."""

    arrows: tuple = ()
    vertex: object = None

    @property
    def k(self):
        return len(self.arrows)

    def __str__(self):
        if not self.arrows:
            return f"<{self.vertex}>"
        return "(" + ", ".join(str(a) for a in self.arrows) + ")"


def vertex_tuple(obj):
    return ComposableTuple((), obj)


class Scwol:
    """Objects, arrows with initial/terminal maps, and composition.

    ``compose`` maps a composable pair ``(b, a)`` (``i(b) == t(a)``) to ``ba``.
    """

    def __init__(self, objects, arrows, initial, terminal, compose, validate=True):
        self.objects = tuple(sorted(objects))
        self.arrows = tuple(sorted(arrows))
        self.initial = dict(initial)
        self.terminal = dict(terminal)
        self.compose = dict(compose)
        self._out = {o: [] for o in self.objects}
        self._in = {o: [] for o in self.objects}
        for a in self.arrows:
            self._out[self.initial[a]].append(a)
            self._in[self.terminal[a]].append(a)
        self._tuple_cache = {}
        if validate:
            violations = self.violations()
            if violations:
                raise ScwolError("; ".join(violations[:5]))

    def __repr__(self):
        return f"Scwol({len(self.objects)} objects, {len(self.arrows)} arrows)"

    def i(self, a):
        return self.initial[a]

    def t(self, a):
        return self.terminal[a]

    def arrows_from(self, obj):
        return self._out[obj]

    def arrows_into(self, obj):
        return self._in[obj]

    def composable_pairs(self):
        return [(b, a) for a in self.arrows for b in self._out[self.terminal[a]]]

    def violations(self):
        out = []
        objs = set(self.objects)
        for a in self.arrows:
            if self.initial.get(a) not in objs or self.terminal.get(a) not in objs:
                out.append(f"arrow {a} has endpoints outside the object set")
            elif self.initial[a] == self.terminal[a]:
                out.append(f"arrow {a} is a loop")
        if out:
            return out
        pairs = self.composable_pairs()
        for b, a in pairs:
            ba = self.compose.get((b, a))
            if ba is None:
                out.append(f"missing composition for ({b}, {a})")
            elif self.initial[ba] != self.initial[a] or self.terminal[ba] != self.terminal[b]:
                out.append(f"composition ({b}, {a}) has wrong endpoints")
        if len(self.compose) != len(pairs):
            out.append("composition defined on non-composable pairs")
        if out:
            return out
        for b, a in pairs:
            for c in self._out[self.terminal[b]]:
                if self.compose[(self.compose[(c, b)], a)] != self.compose[(c, self.compose[(b, a)])]:
                    out.append(f"associativity fails on ({c}, {b}, {a})")
        return out

    def is_poset_like(self):
        ends = [(self.initial[a], self.terminal[a]) for a in self.arrows]
        return len(set(ends)) == len(ends)

    def sub_scwol(self, objects):
        """Full sub-scwol on ``objects`` (all arrows between them)."""
        objects = set(objects)
        arrows = [a for a in self.arrows if self.initial[a] in objects and self.terminal[a] in objects]
        aset = set(arrows)
        comp = {p: c for p, c in self.compose.items() if p[0] in aset and p[1] in aset}
        return Scwol(
            objects,
            arrows,
            {a: self.initial[a] for a in arrows},
            {a: self.terminal[a] for a in arrows},
            comp,
        )

    def composable_tuples(self, k):
        if k in self._tuple_cache:
            return self._tuple_cache[k]
        if k == 0:
            out = [vertex_tuple(o) for o in self.objects]
        else:
            chains = [(a,) for a in self.arrows]
            for _ in range(k - 1):
                chains = [(b,) + ch for ch in chains for b in self._out[self.terminal[ch[0]]]]
            out = sorted(ComposableTuple(ch) for ch in chains)
        self._tuple_cache[k] = out
        return out

    def tuple_initial(self, A):
        return A.vertex if A.k == 0 else self.initial[A.arrows[-1]]

    def tuple_terminal(self, A):
        return A.vertex if A.k == 0 else self.terminal[A.arrows[0]]

    def tuple_composite(self, A):
        """The composite arrow ``a_k ... a_1`` (``None`` for a 0-tuple)."""
        if A.k == 0:
            return None
        a = A.arrows[-1]
        for b in reversed(A.arrows[:-1]):
            a = self.compose[(b, a)]
        return a

    def tuple_objects(self, A):
        """The chain ``v_0, ..., v_k`` of objects visited by ``A``."""
        if A.k == 0:
            return (A.vertex,)
        objs = [self.initial[A.arrows[-1]]]
        for a in reversed(A.arrows):
            objs.append(self.terminal[a])
        return tuple(objs)

    def tuple_boundary(self, A, i):
        return tuple_boundary(self, A, i)

    def dimension(self):
        k = 0
        while self.composable_tuples(k + 1):
            k += 1
        return k

    def to_dot(self, label=str):
        lines = ["digraph scwol {"]
        ids = {o: n for n, o in enumerate(self.objects)}
        for o in self.objects:
            lines.append(f'  {ids[o]} [label="{label(o)}"];')
        for a in self.arrows:
            lines.append(f"  {ids[self.initial[a]]} -> {ids[self.terminal[a]]};")
        lines.append("}")
        return "\n".join(lines)

    def to_json(self, label=str):
        ids = {o: n for n, o in enumerate(self.objects)}
        return {
            "objects": [{"id": ids[o], "label": label(o)} for o in self.objects],
            "arrows": [
                {"id": n, "initial": ids[self.initial[a]], "terminal": ids[self.terminal[a]]}
                for n, a in enumerate(self.arrows)
            ],
        }


def scwol_of_complex(K):
    """The simplicial scwol: objects are simplices, arrows strict inclusions."""
    arrows, initial, terminal = [], {}, {}
    for big in K.simplices:
        for small in K.faces_of(big):
            if small != big:
                a = (small, big)
                arrows.append(a)
                initial[a] = big
                terminal[a] = small
    compose = {}
    for a in arrows:
        mid = terminal[a]
        for b in arrows:
            if initial[b] == mid:
                compose[(b, a)] = (terminal[b], initial[a])
    return Scwol(K.simplices, arrows, initial, terminal, compose)


def composable_tuples(S, k):
    if k < 0:
        raise ScwolError("k must be non-negative")
    return S.composable_tuples(k)


def tuple_boundary(S, A, i):
    k = A.k
    if k < 1 or not 0 <= i <= k:
        raise ScwolError(f"face index {i} out of range for a {k}-tuple")
    arrows = A.arrows  # (a_k, ..., a_1): a_j sits at position k - j
    if k == 1:
        a = arrows[0]
        return vertex_tuple(S.terminal[a] if i == 0 else S.initial[a])
    if i == 0:
        return ComposableTuple(arrows[:-1])
    if i == k:
        return ComposableTuple(arrows[1:])
    pos = k - (i + 1)  # position of a_{i+1}; a_i follows it
    merged = S.compose[(arrows[pos], arrows[pos + 1])]
    return ComposableTuple(arrows[:pos] + (merged,) + arrows[pos + 2 :])


class DeltaComplex:
    """Cells per dimension and, for each k-cell (k >= 1), its k+1 faces."""

    def __init__(self, cells, faces, validate=True):
        self.cells = {k: list(v) for k, v in cells.items() if v}
        self.faces = dict(faces)
        if validate:
            violations = self.violations()
            if violations:
                raise ScwolError("; ".join(violations[:5]))

    def __repr__(self):
        return f"DeltaComplex(counts={self.counts()})"

    @property
    def dimension(self):
        return max(self.cells, default=-1)

    def counts(self):
        return [len(self.cells.get(k, [])) for k in range(self.dimension + 1)]

    def dim_of(self):
        return {c: k for k, cs in self.cells.items() for c in cs}

    def violations(self):
        out = []
        dims = self.dim_of()
        for k, cs in self.cells.items():
            if k == 0:
                continue
            for c in cs:
                fs = self.faces.get(c)
                if fs is None or len(fs) != k + 1:
                    out.append(f"cell {c} lacks {k + 1} faces")
                    continue
                if any(dims.get(f) != k - 1 for f in fs):
                    out.append(f"cell {c} has a face of the wrong dimension")
        if out:
            return out
        for k, cs in self.cells.items():
            if k < 2:
                continue
            for c in cs:
                for i, j in product(range(k + 1), repeat=2):
                    if i < j and self.faces[self.faces[c][j]][i] != self.faces[self.faces[c][i]][j - 1]:
                        out.append(f"face identity d{i}d{j} = d{j - 1}d{i} fails on {c}")
        return out

    def vertices_of(self, cell):
        """Ordered 0-cells ``v_0, ..., v_k`` of a cell (``d_i`` omits ``v_i``)."""
        dims = self._dims()
        k = dims[cell]
        if k == 0:
            return (cell,)
        fs = self.faces[cell]
        return self.vertices_of(fs[k]) + (self.vertices_of(fs[0])[-1],)

    def _dims(self):
        d = getattr(self, "_dim_cache", None)
        if d is None:
            d = self._dim_cache = self.dim_of()
        return d

    def euler_characteristic(self):
        return sum((-1) ** k * n for k, n in enumerate(self.counts()))

    def is_simplicial(self):
        """True when every cell is determined by its (distinct) vertices."""
        seen = set()
        for k, cs in self.cells.items():
            for c in cs:
                vs = frozenset(self.vertices_of(c))
                if len(vs) != k + 1 or vs in seen:
                    return False
                seen.add(vs)
        return True

    def vertex_sets(self):
        return {c: frozenset(self.vertices_of(c)) for cs in self.cells.values() for c in cs}


def realization(S):
    """Δ-complex with k-cells the composable k-tuples of ``S``."""
    cells, faces = {}, {}
    k = 0
    while True:
        tuples = S.composable_tuples(k)
        if not tuples:
            break
        cells[k] = tuples
        if k >= 1:
            for A in tuples:
                faces[A] = tuple(tuple_boundary(S, A, i) for i in range(k + 1))
        k += 1
    return DeltaComplex(cells, faces)


def delta_isomorphic_to_complex(D, K, vertex_map):
    """Check that ``D`` is simplicial and that ``vertex_map`` (0-cells of ``D``
    to vertices of ``K``) carries its cells bijectively onto the simplices of
    ``K``."""
    if not D.is_simplicial():
        return False
    if set(vertex_map) != set(D.cells.get(0, [])):
        return False
    images = set()
    for c, vs in D.vertex_sets().items():
        images.add(tuple(sorted(vertex_map[v] for v in vs)))
    total = sum(D.counts())
    return len(images) == total and images == set(K.simplices)
