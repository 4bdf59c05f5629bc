"""The semidirect product of an action, its canonical splitting, and the
double-sum counting formula used to cross-check its structure constants.

Composite points are encoded as ``(y, x) -> y * n + x`` where ``n`` is the
number of points of X.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Sequence

from .action import Action
from .category import validate_morphism
from .closure import ClosedSubset, as_closed, quotient
from .errors import NotAMorphism
from .scheme import Scheme, complex_product, from_color_matrix

Label = tuple[int, frozenset]   # (u, class of labels t)


class _PairData:
    """Per-pair lookup: image block of every x1 and the quotient of T_y2."""

    def __init__(self, action: Action, y1: int, y2: int):
        phi = action.zeta(y1, y2)
        self.u = action.u_scheme.color[y1][y2]
        self.image = tuple(phi.image_block(x) for x in range(action.n))
        self.quotient = phi.cod_quotient
        alpha = action.per_point[y2].alpha
        qmap = self.quotient.rel_map
        self.classes: dict[int, frozenset] = {}
        for t in range(action.tau.r):
            self.classes.setdefault(qmap[alpha[t]], set()).add(t)
        self.classes = {k: frozenset(v) for k, v in self.classes.items()}

    def label(self, x1: int, x2: int) -> Label:
        q = self.quotient.scheme.color[self.image[x1]][self.quotient.block_of[x2]]
        return self.u, self.classes[q]


def _pair_table(action: Action):
    cache = getattr(action, "_pair_cache", None)
    if cache is None:
        cache = {}
        object.__setattr__(action, "_pair_cache", cache)
    return cache


def _pair(action: Action, y1: int, y2: int) -> _PairData:
    cache = _pair_table(action)
    if (y1, y2) not in cache:
        cache[(y1, y2)] = _PairData(action, y1, y2)
    return cache[(y1, y2)]


def relation_label(action: Action, p1: int, p2: int) -> Label:
    """The label ``(u, t-class)`` of the relation containing composite pair ``(p1, p2)``."""
    n = action.n
    y1, x1 = divmod(p1, n)
    y2, x2 = divmod(p2, n)
    return _pair(action, y1, y2).label(x1, x2)


@dataclass(frozen=True, eq=False)
class SemidirectScheme:
    scheme: Scheme
    labels: tuple[Label, ...]        # relation index -> (u, class)
    action: Action

    def label_of(self, s: int) -> Label:
        return self.labels[s]

    @cached_property
    def _lookup(self) -> dict[tuple[int, int], int]:
        out = {}
        for s, (u, cls) in enumerate(self.labels):
            for t in cls:
                out[(u, t)] = s
        return out

    def label_lookup(self, u: int, t: int) -> int:
        return self._lookup[(u, t)]

    def point(self, y: int, x: int) -> int:
        return y * self.action.n + x

    def label_text(self) -> str:
        """Sidecar table: ``relation_index u t_class_members...`` per line."""
        return "".join(
            f"{s} {u} {' '.join(map(str, sorted(cls)))}\n"
            for s, (u, cls) in enumerate(self.labels)
        )


def semidirect_product(action: Action) -> SemidirectScheme:
    """Build the scheme on Y x X whose relations are the labels ``[u, t]``.

    The result goes through ``from_color_matrix``, so all scheme axioms are
    re-verified.  Relation 0 is ``[1_Y, 1]``; the rest are ordered by ``u``
    and then by the smallest label in the class.
    """
    m, n = action.m, action.n
    N = m * n
    raw = [[None] * N for _ in range(N)]
    seen = set()
    for y1, y2 in product(range(m), repeat=2):
        pd = _pair(action, y1, y2)
        for x1, x2 in product(range(n), repeat=2):
            lab = pd.label(x1, x2)
            raw[y1 * n + x1][y2 * n + x2] = lab
            seen.add(lab)
    ordered = sorted(seen, key=lambda lab: (lab[0], min(lab[1])))
    assert ordered[0][0] == 0 and 0 in ordered[0][1], "identity label must sort first"
    index = {lab: i for i, lab in enumerate(ordered)}
    color = [[index[lab] for lab in row] for row in raw]
    basepoint = action.u_scheme.basepoint * n + action.t_scheme.basepoint
    S = from_color_matrix(color, basepoint)
    return SemidirectScheme(S, tuple(ordered), action)


@dataclass(frozen=True, eq=False)
class SplitData:
    s: Scheme
    t_tilde: ClosedSubset
    i_map: tuple[int, ...]            # Y -> Z
    u_scheme: Scheme
    t_scheme: Scheme | None = None
    gamma: tuple[int, ...] | None = None   # based iso T -> basepoint coset, X -> Z

    @cached_property
    def i_rel(self) -> tuple[int, ...]:
        """Relation map of the splitting ``U -> S``."""
        return validate_morphism(self.u_scheme, self.s, self.i_map).rel_map


def canonical_split(sd: SemidirectScheme) -> SplitData:
    action = sd.action
    n, xstar = action.n, action.t_scheme.basepoint
    t_tilde = as_closed(sd.scheme, [s for s, (u, _) in enumerate(sd.labels) if u == 0])
    i_map = tuple(y * n + xstar for y in range(action.m))
    ystar = action.u_scheme.basepoint
    gamma = tuple(ystar * n + x for x in range(n))
    return SplitData(sd.scheme, t_tilde, i_map, action.u_scheme, action.t_scheme, gamma)


def split_condition_failures(split: SplitData):
    """Yield ``(u, t, |(ui)t|, |t(ui)|)`` for every failure of the singleton condition."""
    S = split.s
    for u in range(split.u_scheme.r):
        ui = split.i_rel[u]
        for t in split.t_tilde:
            left = complex_product(S, (ui,), (t,))
            right = complex_product(S, (t,), (ui,))
            if len(left) != 1 or len(right) != 1:
                yield u, t, len(left), len(right)


def verify_split_condition(split: SplitData) -> bool:
    """True iff ``(ui)t`` and ``t(ui)`` are singletons for every u and every t in T~."""
    return next(split_condition_failures(split), None) is None


def split_is_iso(split: SplitData) -> bool:
    """Whether ``i`` followed by the projection onto ``S // T~`` is an isomorphism."""
    Q = quotient(split.s, split.t_tilde)
    composite = [Q.block_of[z] for z in split.i_map]
    try:
        m = validate_morphism(split.u_scheme, Q.scheme, composite)
    except NotAMorphism:
        return False
    return (
        Q.scheme.n == split.u_scheme.n
        and len(set(m.point_map)) == Q.scheme.n
        and len(set(m.rel_map)) == split.u_scheme.r == Q.scheme.r
    )


def counting_formula(sd: SemidirectScheme, p1: int, p2: int, p3: int) -> int:
    """Structure constant of the product from the action data alone.

    With ``p_i = [u_i, t_i]``: zero unless ``u3`` lies in ``u1 u2``; otherwise
    ``a(u1,u2,u3)`` times the sum of ``a(p', q', r)`` over ``p'`` in
    ``t1 tau''(u1)`` and ``q'`` in ``t2^ tau'(u2)``, where ``t2^`` is the star
    of any label in ``zeta_{u2*}(t2*)`` and ``r`` any label in
    ``zeta_{u2*}(t3)``.
    """
    action = sd.action
    U, tau = action.u_scheme, action.tau
    (u1, c1), (u2, c2), (u3, c3) = sd.labels[p1], sd.labels[p2], sd.labels[p3]
    a_u = U.constants[u1][u2][u3]
    if a_u == 0:
        return 0
    t1, t2, t3 = min(c1), min(c2), min(c3)
    u2s = U.star[u2]
    t2_hat = tau.star[min(action.zeta_u(u2s, (tau.star[t2],)))]
    r = min(action.zeta_u(u2s, (t3,)))
    left = tau.product((t1,), action.tau_doubled(u1))
    right = tau.product((t2_hat,), action.tau_primed(u2))
    total = sum(tau.constants[p][q][r] for p in left for q in right)
    return a_u * total


def counting_table(sd: SemidirectScheme) -> list[list[list[int]]]:
    R = sd.scheme.r
    return [[[counting_formula(sd, p, q, s) for s in range(R)] for q in range(R)] for p in range(R)]
