"""Finite permutation groups, homomorphisms, subgroups and cosets.

Every group is fully enumerated. Elements are :class:`Permutation` objects
acting on ``0..n-1`` internally; the JSON and cycle-notation front ends use
points ``1..n``. Products compose like functions: ``(p * q)(x) == p(q(x))``.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from itertools import product

DEFAULT_CAP = 5040
CAP_ENV_VAR = "COGKIT_MAX_GROUP_ORDER"


class GroupError(ValueError):
    """Raised for invalid group-theoretic input."""


class GroupTooLarge(GroupError):
    pass


def default_cap():
    value = os.environ.get(CAP_ENV_VAR)
    return int(value) if value else DEFAULT_CAP


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of ``{0, ..., n-1}`` stored as its image tuple."""

    images: tuple

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise GroupError(f"not a permutation: {self.images!r}")

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @classmethod
    def from_images(cls, images, one_based=True):
        images = tuple(int(i) for i in images)
        if one_based:
            images = tuple(i - 1 for i in images)
        return cls(images)

    @classmethod
    def from_cycles(cls, n, cycles):
        """Build from 1-based cycle notation, e.g. ``from_cycles(3, "(1 2 3)")``."""
        if isinstance(cycles, str):
            cycles = [
                [int(p) for p in re.split(r"[\s,]+", body.strip()) if p]
                for body in re.findall(r"\(([^)]*)\)", cycles)
            ]
        images = list(range(n))
        for cycle in cycles:
            for k, point in enumerate(cycle):
                if not 1 <= point <= n:
                    raise GroupError(f"point {point} outside 1..{n}")
                images[point - 1] = cycle[(k + 1) % len(cycle)] - 1
        return cls(tuple(images))

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, point):
        return self.images[point]

    def __mul__(self, other):
        if other.degree != self.degree:
            raise GroupError("degree mismatch in product")
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self):
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def one_based(self):
        return [i + 1 for i in self.images]

    def cycles(self):
        seen, out = set(), []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cycle, j = [start + 1], self.images[start]
            seen.add(start)
            while j != start:
                seen.add(j)
                cycle.append(j + 1)
                j = self.images[j]
            out.append(cycle)
        return out

    def __str__(self):
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"

    def __repr__(self):
        return f"Permutation({self})"


class FinGroup:
    """A finite permutation group with its elements enumerated and sorted."""

    def __init__(self, degree, generators, elements):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(sorted(elements))
        self.identity = Permutation.identity(degree)
        self._index = {g: i for i, g in enumerate(self.elements)}

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"FinGroup(degree={self.degree}, order={self.order}, gens=[{gens}])"

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self._index

    def __eq__(self, other):
        return isinstance(other, FinGroup) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def index(self, g):
        return self._index[g]

    def element_set(self):
        return frozenset(self.elements)

    def is_abelian(self):
        return all(a * b == b * a for a in self.generators for b in self.generators)

    def is_subgroup_of(self, other):
        return self.degree == other.degree and all(g in other for g in self.elements)

    def subgroup(self, gens):
        for g in gens:
            if g not in self:
                raise GroupError(f"{g} is not an element of {self!r}")
        return group_generate(self.degree, gens, cap=self.order)

    def subgroup_from_elements(self, elements):
        """Wrap a subset closed under products as a FinGroup (checked)."""
        elements = frozenset(elements)
        if not is_subgroup(self, elements):
            raise GroupError("element set is not a subgroup")
        return FinGroup(self.degree, sorted(elements), elements)

    def subgroups(self):
        """All subgroups, as FinGroups, sorted by (order, elements)."""
        found = {}
        cyclic = {}
        for g in self.elements:
            h = self.subgroup([g])
            cyclic[h.elements] = h
        found.update(cyclic)
        frontier = list(cyclic.values())
        while frontier:
            nxt = []
            for h in frontier:
                for c in cyclic.values():
                    if c.element_set() <= h.element_set():
                        continue
                    j = self.subgroup(list(h.generators) + list(c.generators))
                    if j.elements not in found:
                        found[j.elements] = j
                        nxt.append(j)
            frontier = nxt
        return sorted(found.values(), key=lambda h: (h.order, h.elements))


def group_generate(degree, gens, cap=None):
    """Enumerate the group generated by ``gens`` by breadth-first closure."""
    cap = default_cap() if cap is None else cap
    gens = [g if isinstance(g, Permutation) else Permutation.from_images(g) for g in gens]
    for g in gens:
        if g.degree != degree:
            raise GroupError(f"generator {g} does not act on {degree} points")
    identity = Permutation.identity(degree)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = s * x
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise GroupTooLarge(f"group order exceeds cap {cap}")
                    nxt.append(y)
        frontier = nxt
    return FinGroup(degree, gens, seen)


def trivial_group(degree=1):
    return group_generate(degree, [])


def cyclic_group(n):
    if n == 1:
        return trivial_group(1)
    return group_generate(n, [Permutation.from_cycles(n, [list(range(1, n + 1))])])


def symmetric_group(n):
    if n == 1:
        return trivial_group(1)
    gens = [Permutation.from_cycles(n, [[1, 2]]), Permutation.from_cycles(n, [list(range(1, n + 1))])]
    return group_generate(n, gens)


def is_subgroup(G, elements):
    elements = frozenset(elements)
    if not elements or G.identity not in elements:
        return False
    if any(g not in G for g in elements):
        return False
    return all(a * b.inverse() in elements for a in elements for b in elements)


class GroupHom:
    """A homomorphism between finite groups, stored as a full lookup table.

    Multiplicativity is asserted over all pairs of source elements at
    construction.
    """

    def __init__(self, source, target, table, check=True):
        self.source = source
        self.target = target
        self.table = dict(table)
        if check:
            self._check()

    def _check(self):
        if set(self.table) != set(self.source.elements):
            raise GroupError("homomorphism table must cover the source group")
        for g, h in self.table.items():
            if h not in self.target:
                raise GroupError(f"image {h} of {g} is not in the target group")
        if not self.table[self.source.identity].is_identity():
            raise GroupError("identity is not sent to identity")
        for x, y in product(self.source.elements, repeat=2):
            if self.table[x * y] != self.table[x] * self.table[y]:
                raise GroupError(f"not a homomorphism: f({x}*{y}) != f({x})*f({y})")

    @classmethod
    def from_function(cls, source, target, fn):
        return cls(source, target, {g: fn(g) for g in source.elements})

    def __call__(self, g):
        return self.table[g]

    def __eq__(self, other):
        return (
            isinstance(other, GroupHom)
            and self.source == other.source
            and self.target == other.target
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.source, self.target, tuple(sorted(self.table.items()))))

    def __repr__(self):
        return f"GroupHom({self.source.order} -> {self.target.order}, gens {self.generator_images()})"

    def generator_images(self):
        return [self.table[g] for g in self.source.generators]

    def image(self):
        return frozenset(self.table.values())

    def image_subgroup(self):
        return self.target.subgroup_from_elements(self.image())

    def is_injective(self):
        return len(self.image()) == self.source.order

    def is_bijective(self):
        return self.is_injective() and len(self.image()) == self.target.order

    def is_trivial(self):
        return all(h.is_identity() for h in self.table.values())

    def preimage(self, h):
        """The unique preimage of ``h`` (requires injectivity)."""
        inv = getattr(self, "_inverse_table", None)
        if inv is None:
            if not self.is_injective():
                raise GroupError("preimage requested from a non-injective homomorphism")
            inv = self._inverse_table = {v: k for k, v in self.table.items()}
        return inv[h]


def make_hom(src, dst, gen_images):
    """Extend generator images to a homomorphism, or raise GroupError."""
    gen_images = [h if isinstance(h, Permutation) else Permutation.from_images(h) for h in gen_images]
    if len(gen_images) != len(src.generators):
        raise GroupError("need exactly one image per generator of the source group")
    table = {src.identity: dst.identity}
    frontier = [src.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s, t in zip(src.generators, gen_images):
                y = s * x
                image = t * table[x]
                if y in table:
                    if table[y] != image:
                        raise GroupError("generator images do not extend to a homomorphism")
                else:
                    table[y] = image
                    nxt.append(y)
        frontier = nxt
    return GroupHom(src, dst, table)


def identity_hom(G):
    return GroupHom(G, G, {g: g for g in G.elements}, check=False)


def trivial_hom(src, dst):
    return GroupHom(src, dst, {g: dst.identity for g in src.elements})


def inclusion_hom(H, G):
    if not H.is_subgroup_of(G):
        raise GroupError("inclusion of a non-subgroup")
    return GroupHom(H, G, {g: g for g in H.elements})


def conjugation(G, g):
    """``Ad(g)``: ``x -> g x g^-1`` as an automorphism of ``G``."""
    if g not in G:
        raise GroupError(f"{g} is not an element of the group")
    gi = g.inverse()
    return GroupHom(G, G, {x: g * x * gi for x in G.elements})


def compose(h2, h1):
    """``h2 . h1`` (apply ``h1`` first)."""
    if h1.target != h2.source:
        raise GroupError("homomorphisms are not composable")
    return GroupHom(h1.source, h2.target, {g: h2.table[h1.table[g]] for g in h1.source.elements}, check=False)


def left_cosets(G, H):
    """Partition ``G`` into left cosets ``gH``.

    Returns a list of ``(representative, frozenset)`` pairs ordered by
    representative, the representative being the least element of the coset.
    """
    H = frozenset(H.elements if isinstance(H, FinGroup) else H)
    if not is_subgroup(G, H):
        raise GroupError("H is not a subgroup of G")
    seen, out = set(), []
    for g in G.elements:
        if g in seen:
            continue
        coset = frozenset(g * h for h in H)
        seen |= coset
        out.append((min(coset), coset))
    return out


class CosetSpace:
    """Left cosets of ``H`` in ``G`` with fast canonical-representative lookup."""

    def __init__(self, G, H):
        self.group = G
        self.subgroup = frozenset(H.elements if isinstance(H, FinGroup) else H)
        self.cosets = left_cosets(G, self.subgroup)
        self._rep = {}
        for rep, coset in self.cosets:
            for g in coset:
                self._rep[g] = rep

    def rep(self, g):
        return self._rep[g]

    def reps(self):
        return [r for r, _ in self.cosets]

    def __len__(self):
        return len(self.cosets)
