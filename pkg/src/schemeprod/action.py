"""Actions of one based scheme ``U`` (on points Y) on another ``T`` (on points X).

An action assigns a tau-scheme ``(T_y, alpha_y)`` on X to every point y and
a category morphism ``T_y1 -> T_y2`` to every ordered pair, subject to five
conditions which ``build_action`` checks exhaustively.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from .category import (
    CMorphism,
    LabellingSet,
    TauScheme,
    compose,
    full_morphism,
    identity,
    kernel_of_table,
    leq,
    singleton_table,
    star,
)
from .errors import ConditionFailed, SchemeError
from .scheme import Scheme


@dataclass(frozen=True, eq=False)
class Action:
    u_scheme: Scheme
    t_scheme: Scheme
    tau: LabellingSet
    per_point: tuple[TauScheme, ...]
    per_pair: tuple[tuple[CMorphism, ...], ...]   # per_pair[y1][y2]
    tables: tuple[tuple[frozenset, ...], ...]     # tables[u] = zeta_u on singletons

    @property
    def m(self) -> int:
        return self.u_scheme.n

    @property
    def n(self) -> int:
        return self.t_scheme.n

    def zeta(self, y1: int, y2: int) -> CMorphism:
        return self.per_pair[y1][y2]

    def zeta_u(self, u: int, P) -> frozenset[int]:
        """The power-set map of ``u`` applied to a label set ``P``."""
        table = self.tables[u]
        out = set()
        for t in P:
            out |= table[t]
        return frozenset(out)

    def tau_primed(self, u: int) -> frozenset[int]:
        return kernel_of_table(self.tables[u])

    def tau_doubled(self, u: int) -> frozenset[int]:
        return self.tables[u][0]

    def __eq__(self, other):
        if not isinstance(other, Action):
            return NotImplemented
        return (
            self.u_scheme == other.u_scheme and self.t_scheme == other.t_scheme
            and self.per_point == other.per_point and self.per_pair == other.per_pair
        )

    __hash__ = None


def build_action(
    u_scheme: Scheme,
    t_scheme: Scheme,
    per_point: Sequence[TauScheme],
    per_pair: Sequence[Sequence[CMorphism]] | Mapping[tuple[int, int], CMorphism],
) -> Action:
    """Validate action data against all five conditions; raise ``ConditionFailed``."""
    m, n = u_scheme.n, t_scheme.n
    tau = LabellingSet.of(t_scheme)
    per_point = tuple(per_point)
    if len(per_point) != m:
        raise SchemeError(f"expected {m} tau-schemes, got {len(per_point)}")
    if isinstance(per_pair, Mapping):
        try:
            pairs = tuple(tuple(per_pair[(y1, y2)] for y2 in range(m)) for y1 in range(m))
        except KeyError as exc:
            raise SchemeError(f"missing morphism for pair {exc.args[0]}") from None
    else:
        pairs = tuple(tuple(row) for row in per_pair)
    if len(pairs) != m or any(len(row) != m for row in pairs):
        raise SchemeError("per-pair morphisms must form an m x m table")
    for y, ts in enumerate(per_point):
        if ts.scheme.n != n:
            raise SchemeError(f"T_{y} is not a scheme on the {n} points of X")
        if ts.tau != tau:
            raise SchemeError(f"T_{y} is not labelled by the labelling set of T")
    for y1, y2 in product(range(m), repeat=2):
        phi = pairs[y1][y2]
        if phi.dom != per_point[y1].scheme or phi.cod != per_point[y2].scheme:
            raise SchemeError(f"morphism for ({y1},{y2}) does not run T_{y1} -> T_{y2}")

    ystar = u_scheme.basepoint
    base = per_point[ystar]
    if base.scheme != t_scheme or base.alpha != tuple(range(t_scheme.r)):
        raise ConditionFailed(1, (ystar,), "T at the basepoint must be T with identity labels")

    for y in range(m):
        if pairs[y][y] != identity(per_point[y].scheme):
            raise ConditionFailed(2, (y, y), "diagonal morphism is not the identity")

    for y1, y2 in product(range(m), repeat=2):
        if y1 < y2 and pairs[y2][y1] != star(pairs[y1][y2]):
            raise ConditionFailed(3, (y1, y2), "reverse morphism is not the star")

    tables: list[tuple | None] = [None] * u_scheme.r
    first_pair: list[tuple | None] = [None] * u_scheme.r
    for y1, y2 in product(range(m), repeat=2):
        u = u_scheme.color[y1][y2]
        table = singleton_table(pairs[y1][y2], per_point[y1], per_point[y2])
        if tables[u] is None:
            tables[u] = table
            first_pair[u] = (y1, y2)
        elif tables[u] != table:
            raise ConditionFailed(
                4, (first_pair[u], (y1, y2)),
                f"label maps differ within relation {u}",
            )

    for y1, y2, y3 in product(range(m), repeat=3):
        if not leq(pairs[y1][y3], compose(pairs[y1][y2], pairs[y2][y3])):
            raise ConditionFailed(5, (y1, y2, y3))

    return Action(u_scheme, t_scheme, tau, per_point, pairs, tuple(tables))


def trivial_action(U: Scheme, T: Scheme) -> Action:
    """Every pair carries the identity; the product is the direct product."""
    ts = TauScheme.plain(T)
    ident = identity(T)
    return build_action(U, T, [ts] * U.n, [[ident] * U.n for _ in range(U.n)])


def full_action(U: Scheme, T: Scheme) -> Action:
    """Off-diagonal pairs carry the morphism collapsing everything; wreath-type product."""
    ts = TauScheme.plain(T)
    ident, full = identity(T), full_morphism(T, T)
    pairs = [[ident if y1 == y2 else full for y2 in range(U.n)] for y1 in range(U.n)]
    return build_action(U, T, [ts] * U.n, pairs)
