"""Small fixed schemes and the order-12 worked example.

Points of X = {1, 2, 3} are 0, 1, 2 (basepoint 0); points a, b, c, d of Y
are 0..3 (basepoint a = 0).  U4 is the thin scheme of Z/4 with
``color(y1, y2) = (y2 - y1) mod 4``.  The published relation matrices of
Z/4 use the opposite orientation, so published relation ``k`` is our
``-k mod 4``; the materialised classified scheme below converts accordingly.
"""
from __future__ import annotations

from .action import Action, build_action
from .category import TauScheme, full_morphism, identity, make_cmorphism
from .scheme import Scheme, cyclic_table, from_color_matrix, one_point, thin_from_group

T3_MATRIX = ((0, 1, 1), (1, 0, 1), (1, 1, 0))

KLEIN_TABLE = tuple(tuple(i ^ j for j in range(4)) for i in range(4))


def t3() -> Scheme:
    return from_color_matrix(T3_MATRIX, 0)


def u4() -> Scheme:
    return thin_from_group(cyclic_table(4))


def klein() -> Scheme:
    return thin_from_group(KLEIN_TABLE)


def point() -> Scheme:
    return one_point()


def two_point() -> Scheme:
    return from_color_matrix(((0, 1), (1, 0)), 0)


def example_action(collapse_at_distance_two: bool = False) -> Action:
    """The action of Z/4 on T3: pairs at distance 1 or 3 collapse T3 entirely,
    pairs at distance 2 carry the identity of T3."""
    T, U = t3(), u4()
    ts = TauScheme.plain(T)
    ident, full = identity(T), full_morphism(T, T)
    pairs = []
    for y1 in range(4):
        row = []
        for y2 in range(4):
            d = (y2 - y1) % 4
            if d == 0:
                row.append(ident)
            elif d == 2:
                row.append(full if collapse_at_distance_two else ident)
            else:
                row.append(full)
        pairs.append(row)
    return build_action(U, T, [ts] * 4, pairs)


def example_pairs() -> dict[tuple[int, int], object]:
    """Unvalidated per-pair morphisms of the worked example, keyed by pair."""
    T = t3()
    ident, full = identity(T), full_morphism(T, T)
    small = make_cmorphism(T, T, (0,), (0,), range(3))
    out = {}
    for y1 in range(4):
        for y2 in range(4):
            d = (y2 - y1) % 4
            out[(y1, y2)] = ident if d == 0 else (small if d == 2 else full)
    return out


# Published point table: HM34 point k (1-based) -> (y, x) with y in a..d, x in 1..3
HM34_POINTS = (
    ("a", 1), ("c", 1), ("a", 2), ("a", 3), ("c", 2), ("c", 3),
    ("b", 1), ("b", 2), ("b", 3), ("d", 1), ("d", 2), ("d", 3),
)
# Published relation table: HM34 relation j -> (published u, t in {"1", "t"})
HM34_RELATIONS = (
    (0, "1"), (2, "1"), (0, "t"), (2, "t"), (1, "1"), (3, "1"),
)


def hm34_matrix(sd) -> list[list[int]]:
    """Push the product through the published point and relation tables."""
    T_LABEL = {"1": 0, "t": 1}
    rel_of_label = {}
    for j, (u_pub, t) in enumerate(HM34_RELATIONS):
        u = (-u_pub) % 4
        rel_of_label[sd.label_lookup(u, T_LABEL[t])] = j
    composite = ["abcd".index(y) * 3 + (x - 1) for y, x in HM34_POINTS]
    S = sd.scheme
    return [[rel_of_label[S.color[p][q]] for q in composite] for p in composite]


def hm34(sd) -> Scheme:
    return from_color_matrix(hm34_matrix(sd), 0)
