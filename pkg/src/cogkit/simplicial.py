"""Finite abstract simplicial complexes."""

from __future__ import annotations

from itertools import combinations


class ComplexError(ValueError):
    pass


def _sort_key(simplex):
    return (len(simplex), simplex)


class SimplicialComplex:
    """A downward-closed family of sorted vertex tuples.

    ``vertices`` is the sorted vertex tuple and ``simplices`` every simplex
    ordered by dimension, then lexicographically.
    """

    def __init__(self, vertices, simplices):
        self.vertices = tuple(sorted(set(vertices)))
        simplices = {tuple(sorted(s)) for s in simplices}
        self.simplices = tuple(sorted(simplices, key=_sort_key))
        self._set = frozenset(self.simplices)
        self._check()

    def _check(self):
        vset = set(self.vertices)
        for s in self.simplices:
            if not s:
                raise ComplexError("empty simplex")
            if len(set(s)) != len(s):
                raise ComplexError(f"repeated vertex in {s!r}")
            if not set(s) <= vset:
                raise ComplexError(f"simplex {s!r} uses undeclared vertices")
            for face in combinations(s, len(s) - 1):
                if face and face not in self._set:
                    raise ComplexError(f"face {face!r} of {s!r} missing")
        for v in self.vertices:
            if (v,) not in self._set:
                raise ComplexError(f"vertex {v!r} is not a simplex")

    def __repr__(self):
        return f"SimplicialComplex(f-vector={self.f_vector()})"

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.simplices == other.simplices

    def __hash__(self):
        return hash(self.simplices)

    def __contains__(self, simplex):
        return tuple(sorted(simplex)) in self._set

    def __len__(self):
        return len(self.simplices)

    @property
    def dimension(self):
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def simplices_of_dim(self, k):
        return [s for s in self.simplices if len(s) == k + 1]

    def f_vector(self):
        return [len(self.simplices_of_dim(k)) for k in range(self.dimension + 1)]

    def facets(self):
        out = []
        for s in self.simplices:
            ss = set(s)
            if not any(len(t) > len(s) and ss <= set(t) for t in self.simplices):
                out.append(s)
        return out

    def faces_of(self, simplex):
        """All nonempty faces of ``simplex`` (itself included)."""
        simplex = tuple(sorted(simplex))
        return [f for k in range(1, len(simplex) + 1) for f in combinations(simplex, k)]

    def cofaces(self, simplex):
        """Simplices containing ``simplex`` (itself included)."""
        ss = set(simplex)
        return [t for t in self.simplices if ss <= set(t)]

    def relabel(self, fn):
        mapping = {v: fn(v) for v in self.vertices}
        if len(set(mapping.values())) != len(mapping):
            raise ComplexError("relabelling is not injective")
        return SimplicialComplex(mapping.values(), [[mapping[v] for v in s] for s in self.simplices])

    def to_json(self):
        return {"vertices": list(self.vertices), "facets": [list(f) for f in self.facets()]}


def build_complex(facets, vertices=None):
    """Downward closure of ``facets``.

    If ``vertices`` is given every facet vertex must belong to it, and
    isolated declared vertices are kept.
    """
    facets = [tuple(f) for f in facets]
    if not facets and not vertices:
        raise ComplexError("need at least one facet")
    for f in facets:
        if not f:
            raise ComplexError("empty facet")
        if len(set(f)) != len(f):
            raise ComplexError(f"duplicate vertex in facet {f!r}")
    used = {v for f in facets for v in f}
    if vertices is not None:
        unknown = used - set(vertices)
        if unknown:
            raise ComplexError(f"unknown vertex identifiers: {sorted(map(str, unknown))}")
        used |= set(vertices)
    simplices = {(v,) for v in used}
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            simplices.update(combinations(f, k))
    return SimplicialComplex(used, simplices)


def barycentric_subdivision(K):
    """First barycentric subdivision: vertices are the simplices of ``K``,
    simplices are strict inclusion chains (listed as sorted tuples of simplices).
    """
    chains = []
    by_dim = {}
    for s in K.simplices:
        by_dim.setdefault(len(s), []).append(s)

    def extend(chain):
        chains.append(tuple(chain))
        top = set(chain[-1])
        for s in K.simplices:
            if len(s) > len(chain[-1]) and top < set(s):
                extend(chain + [s])

    for s in K.simplices:
        extend([s])
    return SimplicialComplex(K.simplices, chains)


def link(K, simplex):
    """All simplices disjoint from ``simplex`` whose union with it lies in ``K``.

    The result may be empty (``vertices == ()``).
    """
    simplex = tuple(sorted(simplex))
    if simplex not in K:
        raise ComplexError(f"{simplex!r} is not a simplex of the complex")
    ss = set(simplex)
    faces = [t for t in K.simplices if not ss & set(t) and tuple(sorted(ss | set(t))) in K]
    return SimplicialComplex({v for t in faces for v in t}, faces)


def star(K, simplex):
    """Closed star: all faces of simplices containing ``simplex``."""
    faces = set()
    for t in K.cofaces(simplex):
        faces.update(K.faces_of(t))
    return SimplicialComplex({v for t in faces for v in t}, faces)
