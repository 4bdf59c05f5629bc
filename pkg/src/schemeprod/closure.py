"""Closed subsets, cosets, subschemes and quotient schemes."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .errors import NotClosed
from .scheme import Scheme, complex_product, from_color_matrix, relset

# Above this rank, closed subsets are found by joining closures instead of
# closing every subset of relations.
EXHAUSTIVE_RANK_LIMIT = 12


@dataclass(frozen=True)
class ClosedSubset:
    scheme: Scheme
    members: frozenset[int]

    def __post_init__(self):
        if not _is_closed(self.scheme, self.members):
            raise NotClosed(f"{sorted(self.members)} is not a closed subset")

    def __contains__(self, s):
        return s in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    @property
    def valency(self) -> int:
        return sum(self.scheme.valency(s) for s in self.members)


def _is_closed(S: Scheme, members: frozenset[int]) -> bool:
    if 0 not in members:
        return False
    if any(not 0 <= s < S.r for s in members):
        return False
    starred = {S.star[s] for s in members}
    return complex_product(S, starred, members) <= members


def is_closed(S: Scheme, members: Iterable[int]) -> bool:
    return _is_closed(S, relset(members))


def as_closed(S: Scheme, T) -> ClosedSubset:
    if isinstance(T, ClosedSubset):
        return T
    return ClosedSubset(S, relset(T))


def closure_of(S: Scheme, seed: Iterable[int]) -> ClosedSubset:
    """Smallest closed subset of ``S`` containing ``seed``."""
    members = set(seed) | {0}
    while True:
        grown = set(members)
        grown.update(S.star[s] for s in members)
        grown |= complex_product(S, grown, grown)
        if grown == members:
            return ClosedSubset(S, frozenset(members))
        members = grown


def _canonical_key(T: ClosedSubset):
    return (len(T.members), T.sorted())


def enumerate_closed_subsets(S: Scheme, exhaustive: bool | None = None) -> list[ClosedSubset]:
    """Every closed subset of ``S``, ordered by size then members."""
    if exhaustive is None:
        exhaustive = S.r <= EXHAUSTIVE_RANK_LIMIT
    found: dict[frozenset, ClosedSubset] = {}
    if exhaustive:
        others = range(1, S.r)
        for k in range(S.r):
            for seed in combinations(others, k):
                T = closure_of(S, seed)
                found.setdefault(T.members, T)
    else:
        frontier = [closure_of(S, ())] + [closure_of(S, (s,)) for s in range(1, S.r)]
        for T in frontier:
            found.setdefault(T.members, T)
        atoms = list(found.values())
        queue = list(atoms)
        while queue:
            T = queue.pop()
            for A in atoms:
                J = closure_of(S, T.members | A.members)
                if J.members not in found:
                    found[J.members] = J
                    queue.append(J)
    return sorted(found.values(), key=_canonical_key)


def is_normal(S: Scheme, T) -> bool:
    members = T.members if isinstance(T, ClosedSubset) else relset(T)
    return all(
        complex_product(S, (p,), members) == complex_product(S, members, (p,))
        for p in range(S.r)
    )


@dataclass(frozen=True)
class PointPartition:
    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]

    def representative(self, b: int) -> int:
        return self.blocks[b][0]


@lru_cache(maxsize=4096)
def _cosets(S: Scheme, members: frozenset[int]) -> PointPartition:
    block_of = [-1] * S.n
    blocks = []
    for x in range(S.n):
        if block_of[x] != -1:
            continue
        block = tuple(y for y in range(S.n) if S.color[x][y] in members)
        for y in block:
            block_of[y] = len(blocks)
        blocks.append(block)
    return PointPartition(tuple(blocks), tuple(block_of))


def cosets(S: Scheme, T) -> PointPartition:
    """Coset partition ``X/T``; blocks ordered by their smallest point."""
    T = as_closed(S, T)
    return _cosets(S, T.members)


@dataclass(frozen=True)
class QuotientScheme:
    scheme: Scheme
    rel_map: tuple[int, ...]
    partition: PointPartition
    parent: Scheme
    subset: ClosedSubset

    @property
    def block_of(self) -> tuple[int, ...]:
        return self.partition.block_of

    def preimage(self, q: int) -> frozenset[int]:
        return frozenset(s for s, v in enumerate(self.rel_map) if v == q)


@lru_cache(maxsize=4096)
def _quotient(S: Scheme, members: frozenset[int]) -> QuotientScheme:
    T = ClosedSubset(S, members)
    part = _cosets(S, members)
    nb = len(part.blocks)
    # s^T as a set of block pairs, computed straight from the definition
    footprint = [set() for _ in range(S.r)]
    for x in range(S.n):
        bx = part.block_of[x]
        row = S.color[x]
        for y in range(S.n):
            footprint[row[y]].add((bx, part.block_of[y]))
    label_of_footprint: dict[frozenset, int] = {}
    color = [[-1] * nb for _ in range(nb)]
    fps = [frozenset(f) for f in footprint]
    by_pair = {}
    for s, fp in enumerate(fps):
        for pair in fp:
            by_pair[pair] = fp
    for b1 in range(nb):
        for b2 in range(nb):
            fp = by_pair[(b1, b2)]
            if fp not in label_of_footprint:
                label_of_footprint[fp] = len(label_of_footprint)
            color[b1][b2] = label_of_footprint[fp]
    rel_map = tuple(label_of_footprint[fp] for fp in fps)
    Q = from_color_matrix(color, part.block_of[S.basepoint])
    return QuotientScheme(Q, rel_map, part, S, T)


def quotient(S: Scheme, T) -> QuotientScheme:
    """The quotient scheme ``S // T`` with its canonical projection.

    Block ``b`` of the result is the ``b``-th coset in order of smallest
    point; quotient relations are numbered by first occurrence scanning
    block pairs row-major, so the diagonal gets 0.
    """
    T = as_closed(S, T)
    return _quotient(S, T.members)


@dataclass(frozen=True)
class Subscheme:
    scheme: Scheme
    points: tuple[int, ...]       # sub point -> parent point
    relations: tuple[int, ...]    # sub relation -> parent relation

    def point_index(self, z: int) -> int:
        return self.points.index(z)


def subscheme(S: Scheme, T, x: int) -> Subscheme:
    """The subscheme on the coset ``xT``, based at ``x``.

    Sub relations are numbered in ascending order of the parent relation.
    """
    T = as_closed(S, T)
    pts = cosets(S, T).blocks[cosets(S, T).block_of[x]]
    rels = T.sorted()
    index = {s: i for i, s in enumerate(rels)}
    color = [[index[S.color[a][b]] for b in pts] for a in pts]
    sub = from_color_matrix(color, pts.index(x))
    return Subscheme(sub, tuple(pts), rels)
