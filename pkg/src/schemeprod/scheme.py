"""Finite association schemes stored as color matrices.

A scheme on ``n`` points is a ``n x n`` table ``color`` whose entry
``color[x][y]`` is the index of the relation containing ``(x, y)``.  Index 0
is always the diagonal relation.  Structure constants ``a[p][q][s]`` count
the points ``z`` with ``color[x][z] == p`` and ``color[z][y] == q`` for any
pair ``(x, y)`` in relation ``s``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadIndex,
    NoInvolution,
    NotAGroup,
    NotAPartitionOfDiagonal,
    NotRegular,
)

RelSet = frozenset  # frozenset[int] of relation indices


def relset(members: Iterable[int]) -> frozenset[int]:
    return frozenset(int(m) for m in members)


@dataclass(frozen=True, eq=False)
class Scheme:
    n: int
    r: int
    color: tuple[tuple[int, ...], ...]
    basepoint: int
    star: tuple[int, ...]
    constants: tuple[tuple[tuple[int, ...], ...], ...]
    _hash: int = field(default=0, repr=False)

    def __eq__(self, other):
        if not isinstance(other, Scheme):
            return NotImplemented
        return (
            self is other
            or (self._hash == other._hash
                and self.basepoint == other.basepoint
                and self.color == other.color)
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Scheme(n={self.n}, r={self.r}, basepoint={self.basepoint})"

    @property
    def relations(self) -> range:
        return range(self.r)

    @property
    def points(self) -> range:
        return range(self.n)

    def a(self, p: int, q: int, s: int) -> int:
        return self.constants[p][q][s]

    def valency(self, s: int) -> int:
        return self.constants[s][self.star[s]][0]

    def pairs(self, s: int) -> list[tuple[int, int]]:
        """All pairs of points in relation ``s``, row-major."""
        return [(x, y) for x in range(self.n) for y in range(self.n)
                if self.color[x][y] == s]

    def neighbours(self, x: int, rels: Iterable[int]) -> list[int]:
        """The points ``y`` with ``color[x][y]`` in ``rels``, ascending."""
        rels = set(rels)
        return [y for y in range(self.n) if self.color[x][y] in rels]

    def with_basepoint(self, basepoint: int) -> "Scheme":
        return from_color_matrix(self.color, basepoint)


def from_color_matrix(matrix: Sequence[Sequence[int]], basepoint: int = 0) -> Scheme:
    """Validate a color matrix against the scheme axioms and build a Scheme.

    Relation indices are kept exactly as given.  Raises ``BadIndex``,
    ``NotAPartitionOfDiagonal``, ``NoInvolution`` or ``NotRegular``.
    """
    rows = [list(row) for row in matrix]
    n = len(rows)
    if n == 0:
        raise BadIndex("empty matrix")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise BadIndex(f"row {i} has length {len(row)}, expected {n}")
        for v in row:
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < 0:
                raise BadIndex(f"row {i} has a non-index entry {v!r}")
    if not 0 <= basepoint < n:
        raise BadIndex(f"basepoint {basepoint} out of range 0..{n - 1}")
    for x in range(n):
        if rows[x][x] != 0:
            raise BadIndex(f"diagonal entry ({x},{x}) is {rows[x][x]}, not 0")
    used = {int(v) for row in rows for v in row}
    r = max(used) + 1
    if used != set(range(r)):
        missing = sorted(set(range(r)) - used)
        raise BadIndex(f"relation indices not contiguous; missing {missing}")
    for x, y in product(range(n), repeat=2):
        if x != y and rows[x][y] == 0:
            raise NotAPartitionOfDiagonal(f"off-diagonal pair ({x},{y}) has color 0")

    star = [-1] * r
    for x, y in product(range(n), repeat=2):
        s, t = rows[x][y], rows[y][x]
        if star[s] == -1:
            star[s] = t
        elif star[s] != t:
            raise NoInvolution(
                f"relation {s} transposes to both {star[s]} and {t} (pair ({y},{x}))"
            )

    color = np.array(rows, dtype=np.int64)
    constants = _structure_constants(color, r)
    color_t = tuple(tuple(int(v) for v in row) for row in rows)
    return Scheme(
        n=n, r=r, color=color_t, basepoint=int(basepoint), star=tuple(star),
        constants=constants, _hash=hash((color_t, int(basepoint))),
    )


def _structure_constants(color: np.ndarray, r: int):
    # One witness pair per relation fixes the constants; every other pair is
    # then checked against them.
    n = color.shape[0]
    adj = (color[None, :, :] == np.arange(r)[:, None, None]).astype(np.int64)
    flat = color.ravel()
    first = np.array([int(np.argmax(flat == s)) for s in range(r)])
    wx, wy = first // n, first % n
    const = np.zeros((r, r, r), dtype=np.int64)
    for p in range(r):
        counts = adj[p] @ adj  # counts[q, x, y]
        const[p] = counts[:, wx, wy]
        expected = const[p][:, color]
        bad = np.argwhere(counts != expected)
        if len(bad):
            q, x, y = (int(v) for v in bad[0])
            s = int(color[x, y])
            raise NotRegular(
                p, q, s, int(const[p, q, s]), int(counts[q, x, y]),
                pairs=((int(wx[s]), int(wy[s])), (x, y)),
            )
    return tuple(tuple(tuple(int(v) for v in row) for row in plane) for plane in const)


def structure_constants(S: Scheme):
    return S.constants


def valencies(S: Scheme) -> list[int]:
    return [S.valency(s) for s in range(S.r)]


def complex_product(S: Scheme, P: Iterable[int], Q: Iterable[int]) -> frozenset[int]:
    """``{s : a[p][q][s] > 0 for some p in P, q in Q}``."""
    Q = list(Q)
    out = set()
    for p in P:
        row = S.constants[p]
        for q in Q:
            out.update(s for s, v in enumerate(row[q]) if v)
    return frozenset(out)


def is_thin(S: Scheme) -> bool:
    return all(S.valency(s) == 1 for s in range(S.r))


def is_symmetric(S: Scheme) -> bool:
    return all(S.star[s] == s for s in range(S.r))


def thin_from_group(cayley: Sequence[Sequence[int]]) -> Scheme:
    """Thin scheme of a group given by its multiplication table.

    ``cayley[i][j]`` is the index of ``g_i * g_j``; index 0 must be the
    identity.  The pair ``(x, y)`` gets color ``g`` where ``y = x * g``.
    """
    m = len(cayley)
    table = [list(row) for row in cayley]
    if m == 0 or any(len(row) != m for row in table):
        raise NotAGroup("multiplication table must be square and nonempty")
    if any(not (0 <= v < m) for row in table for v in row):
        raise NotAGroup("table entries out of range")
    for g in range(m):
        if table[0][g] != g or table[g][0] != g:
            raise NotAGroup("element 0 is not the identity")
    for g in range(m):
        if sorted(table[g]) != list(range(m)):
            raise NotAGroup(f"row {g} is not a permutation; no inverse")
    for a, b, c in product(range(m), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise NotAGroup(f"not associative at ({a},{b},{c})")
    color = [[0] * m for _ in range(m)]
    for x in range(m):
        for g in range(m):
            color[x][table[x][g]] = g
    return from_color_matrix(color, 0)


def cyclic_table(m: int) -> list[list[int]]:
    return [[(i + j) % m for j in range(m)] for i in range(m)]


def one_point() -> Scheme:
    return from_color_matrix([[0]], 0)
