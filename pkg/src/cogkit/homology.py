"""Exact integer homology: Smith normal form, chain complexes, cone recognition.

Matrices are lists of rows of Python ints, so entries never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd


class ChainError(ValueError):
    pass


def _copy(M):
    return [list(row) for row in M]


def _sparse(M):
    return [{j: v for j, v in enumerate(row) if v} for row in M]


def _divisibility_chain(diag):
    """Turn a diagonal into invariant factors via (a, b) -> (gcd, lcm)."""
    ones = [d for d in diag if d == 1]
    rest = [d for d in diag if d != 1]
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            a, b = rest[i], rest[j]
            g = gcd(a, b)
            rest[i], rest[j] = g, a // g * b
    return ones + rest


def smith_normal_form(M):
    """Invariant factors ``d_1 | d_2 | ...`` (all positive) and the rank.

    Works on sparse rows. Pivot: smallest nonzero absolute value in the
    active block, then least fill-in (Markowitz count), then (row, column)
    position. Elimination uses floor division, so every remainder is
    smaller than the pivot and the reduction of a pivot row/column ends.
    """
    rows = _sparse(M)
    cols = {}
    for i, row in enumerate(rows):
        for j in row:
            cols.setdefault(j, set()).add(i)

    def put(r, c, v):
        if v:
            rows[r][c] = v
            cols.setdefault(c, set()).add(r)
        elif c in rows[r]:
            del rows[r][c]
            cols[c].discard(r)

    def add_row(dst, src, f):
        for c, v in list(rows[src].items()):
            put(dst, c, rows[dst].get(c, 0) + f * v)

    def add_col(dst, src, f):
        for r in list(cols.get(src, ())):
            put(r, dst, rows[r].get(dst, 0) + f * rows[r][src])

    diag = []
    live = {i for i, row in enumerate(rows) if row}
    while live:
        best = None
        for i in live:
            for j, v in rows[i].items():
                key = (abs(v), (len(rows[i]) - 1) * (len(cols[j]) - 1), i, j)
                if best is None or key < best:
                    best = key
        _, _, i, j = best
        while True:
            p = rows[i][j]
            for r in sorted(cols[j] - {i}):
                q = rows[r][j] // p
                if q:
                    add_row(r, i, -q)
            for c in sorted(set(rows[i]) - {j}):
                q = rows[i][c] // p
                if q:
                    add_col(c, j, -q)
            rest = [(abs(rows[r][j]), r, j) for r in cols[j] - {i}]
            rest += [(abs(rows[i][c]), i, c) for c in set(rows[i]) - {j}]
            if not rest:
                break
            _, i, j = min(rest)
        diag.append(abs(rows[i][j]))
        put(i, j, 0)
        del cols[j]
        live = {r for r in live if rows[r]}
    return _divisibility_chain(sorted(diag)), len(diag)


def _det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        if M[0][j]:
            minor = [row[:j] + row[j + 1 :] for row in M[1:]]
            total += (-1) ** j * M[0][j] * _det(minor)
    return total


def invariant_factors_by_minors(M):
    """Reference oracle: ``d_1 ... d_k = gcd of all k x k minors``."""
    from itertools import combinations

    rows = len(M)
    cols = len(M[0]) if rows else 0
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, _det([[M[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def matmul(A, B):
    if not A or not B:
        return []
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def _composes_to_zero(A, B):
    """Whether ``A @ B == 0``, touching only nonzero entries."""
    acols = {}
    for r, row in enumerate(A):
        for c, v in enumerate(row):
            if v:
                acols.setdefault(c, []).append((r, v))
    for col in zip(*B):
        acc = {}
        for c, v in enumerate(col):
            for r, a in acols.get(c, ()) if v else ():
                acc[r] = acc.get(r, 0) + a * v
        if any(acc.values()):
            return False
    return True


class ChainComplex:
    """``boundaries[k]`` is the matrix of ``C_k -> C_{k-1}`` (rows index
    ``(k-1)``-cells, columns ``k``-cells) in the bases ``basis[k-1]``,
    ``basis[k]``."""

    def __init__(self, basis, boundaries):
        self.basis = {k: list(v) for k, v in basis.items()}
        self.boundaries = dict(boundaries)
        top = max(self.basis, default=-1)
        for k in range(top + 1):
            self.basis.setdefault(k, [])
        for k in range(1, top + 1):
            M = self.boundaries.get(k)
            if M is None:
                M = self.boundaries[k] = [[0] * len(self.basis[k]) for _ in self.basis[k - 1]]
            if len(M) != len(self.basis[k - 1]) or any(len(r) != len(self.basis[k]) for r in M):
                raise ChainError(f"boundary matrix in degree {k} has the wrong shape")
        for k in range(2, top + 1):
            if not self.basis[k] or not self.basis[k - 2]:
                continue
            if not _composes_to_zero(self.boundaries[k - 1], self.boundaries[k]):
                raise ChainError(f"boundary squared is nonzero in degree {k}")

    @property
    def top(self):
        return max(self.basis, default=-1)

    def rank(self, k):
        return len(self.basis.get(k, []))


@dataclass
class HomologyResult:
    betti: list
    torsion: list = field(default_factory=list)

    def is_point(self):
        return self.betti[:1] == [1] and not any(self.betti[1:]) and not any(self.torsion)

    def to_json(self):
        return [{"degree": k, "betti": b, "torsion": t} for k, (b, t) in enumerate(zip(self.betti, self.torsion))]

    def __str__(self):
        parts = []
        for b, t in zip(self.betti, self.torsion):
            summands = (["Z^%d" % b] if b > 1 else ["Z"] if b == 1 else []) + [f"Z/{d}" for d in t]
            parts.append(" + ".join(summands) or "0")
        return "(" + ", ".join(parts) + ")"


def homology(C):
    top = C.top
    snf = {}
    for k in range(1, top + 1):
        M = C.boundaries[k]
        snf[k] = smith_normal_form(M) if M and M[0] else ([], 0)
    betti, torsion = [], []
    for k in range(top + 1):
        rk_out = snf[k][1] if k >= 1 else 0
        rk_in = snf[k + 1][1] if k + 1 <= top else 0
        betti.append(C.rank(k) - rk_out - rk_in)
        torsion.append([d for d in snf[k + 1][0] if d > 1] if k + 1 <= top else [])
    return HomologyResult(betti, torsion)


def euler_characteristic(C):
    return sum((-1) ** k * C.rank(k) for k in range(C.top + 1))


def chain_from_delta(D):
    basis = {k: list(cs) for k, cs in D.cells.items()}
    index = {k: {c: n for n, c in enumerate(cs)} for k, cs in basis.items()}
    boundaries = {}
    for k in range(1, D.dimension + 1):
        M = [[0] * len(basis[k]) for _ in basis[k - 1]]
        for col, c in enumerate(basis[k]):
            for i, f in enumerate(D.faces[c]):
                M[index[k - 1][f]][col] += (-1) ** i
        boundaries[k] = M
    return ChainComplex(basis, boundaries)


def simplicial_chain_complex(K):
    """Oriented simplicial chains of a SimplicialComplex."""
    basis = {k: K.simplices_of_dim(k) for k in range(K.dimension + 1)}
    index = {k: {s: n for n, s in enumerate(v)} for k, v in basis.items()}
    boundaries = {}
    for k in range(1, K.dimension + 1):
        M = [[0] * len(basis[k]) for _ in basis[k - 1]]
        for col, s in enumerate(basis[k]):
            for i in range(len(s)):
                M[index[k - 1][s[:i] + s[i + 1 :]]][col] += (-1) ** i
        boundaries[k] = M
    return ChainComplex(basis, boundaries)


def is_simplicial_cone(D):
    """Return an apex 0-cell if ``D`` is a simplicial cone, else ``None``.

    ``D`` must be simplicial (cells determined by their vertex sets); ``v``
    is an apex when every cell not containing ``v`` spans a cell together
    with ``v``, i.e. every maximal cell contains ``v``.  The least such
    0-cell is returned.
    """
    if not D.cells.get(0) or not D.is_simplicial():
        return None
    spans = set(D.vertex_sets().values())
    for v in sorted(D.cells[0]):
        if all(s | {v} in spans for s in spans):
            return v
    return None
