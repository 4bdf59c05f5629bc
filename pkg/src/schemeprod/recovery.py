"""Recover an action from a scheme with a closed subset and a splitting.

Given ``S`` on Z with closed subset ``T~``, a based splitting ``i: U -> S``
and a based isomorphism ``gamma`` from ``T`` onto the subscheme at the
basepoint coset, build an action of ``U`` on ``T`` whose semidirect product
is isomorphic to ``S``, together with that isomorphism.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .action import Action, build_action
from .category import LabellingSet, TauScheme, make_cmorphism, validate_morphism
from .closure import as_closed, cosets, is_normal, subscheme
from .errors import (
    ConditionViolated,
    EtaNotIso,
    NoBasedIso,
    NotAMorphism,
    NotNormal,
    SplitNotIso,
)
from .iso import find_isomorphism
from .scheme import Scheme, complex_product, from_color_matrix
from .semidirect import (
    SemidirectScheme,
    SplitData,
    semidirect_product,
    split_condition_failures,
    split_is_iso,
)


def validate_split_data(s: Scheme, t_tilde, i_map: Sequence[int], u_scheme: Scheme,
                        t_scheme: Scheme | None = None,
                        gamma: Sequence[int] | None = None) -> SplitData:
    t_tilde = as_closed(s, t_tilde)
    i_map = tuple(int(z) for z in i_map)
    morphism = validate_morphism(u_scheme, s, i_map)
    if not morphism.is_based:
        raise NotAMorphism("the splitting does not send the basepoint of U to the basepoint of S")
    split = SplitData(s, t_tilde, i_map, u_scheme, t_scheme,
                      tuple(gamma) if gamma is not None else None)
    if not split_is_iso(split):
        raise SplitNotIso("i followed by the projection onto S // T~ is not an isomorphism")
    for u, t, left, right in split_condition_failures(split):
        raise ConditionViolated(u, t, left, right)
    if not is_normal(s, t_tilde):
        raise NotNormal("T~ is not normal although the splitting conditions hold")
    if gamma is not None:
        if t_scheme is None:
            raise SplitNotIso("gamma supplied without the scheme T")
        _check_gamma(split, split.gamma)
    return split


def boundary_subsets(sd: SplitData, u: int) -> tuple[frozenset[int], frozenset[int]]:
    """``(T~'_u, T~''_u)``: labels t of T~ with ``t(ui) = {ui}``, resp. ``(ui)t = {ui}``."""
    S, ui = sd.s, sd.i_rel[u]
    primed = frozenset(t for t in sd.t_tilde if complex_product(S, (t,), (ui,)) == {ui})
    doubled = frozenset(t for t in sd.t_tilde if complex_product(S, (ui,), (t,)) == {ui})
    return primed, doubled


@dataclass(frozen=True, eq=False)
class RecoveredAction:
    action: Action
    gamma: tuple[int, ...]              # X -> Z onto the basepoint coset
    gamma_y: tuple[tuple[int, ...], ...]  # per y: X -> (yi)T~
    eta: tuple[int, ...]                # Z -> composite index of Y x X
    label_map: tuple[int, ...]          # tau label t -> relation of T~


def _find_gamma(sd: SplitData) -> tuple[int, ...]:
    sub = subscheme(sd.s, sd.t_tilde, sd.s.basepoint)
    iso = find_isomorphism(sd.t_scheme, sub.scheme, based=True)
    if iso is None:
        raise NoBasedIso("the basepoint coset subscheme is not isomorphic to T")
    return tuple(sub.points[iso.point_bij[x]] for x in range(sd.t_scheme.n))


def _check_gamma(sd: SplitData, gamma: Sequence[int]) -> tuple[int, ...]:
    """Relation map of a based isomorphism ``T -> T~_{y*}``, as labels of T~."""
    T, S = sd.t_scheme, sd.s
    coset = set(cosets(S, sd.t_tilde).blocks[cosets(S, sd.t_tilde).block_of[S.basepoint]])
    if sorted(gamma) != sorted(coset) or gamma[T.basepoint] != S.basepoint:
        raise NoBasedIso("gamma is not a based bijection onto the basepoint coset")
    rel = [-1] * T.r
    for x1 in range(T.n):
        for x2 in range(T.n):
            t, img = T.color[x1][x2], S.color[gamma[x1]][gamma[x2]]
            if rel[t] == -1:
                rel[t] = img
            elif rel[t] != img:
                raise NoBasedIso("gamma does not preserve relations")
    if len(set(rel)) != T.r or set(rel) != set(sd.t_tilde.members):
        raise NoBasedIso("gamma is not an isomorphism onto the subscheme")
    return tuple(rel)


def _default_gamma_y(sd: SplitData, y: int, xstar: int) -> tuple[int, ...]:
    # basepoint to yi, then remaining X ascending onto remaining coset points ascending
    part = cosets(sd.s, sd.t_tilde)
    zy = sd.i_map[y]
    coset = [z for z in part.blocks[part.block_of[zy]] if z != zy]
    xs = [x for x in range(sd.t_scheme.n) if x != xstar]
    g = [0] * sd.t_scheme.n
    g[xstar] = zy
    for x, z in zip(xs, coset):
        g[x] = z
    return tuple(g)


def recover_action(sd: SplitData,
                   gamma_y: Mapping[int, Sequence[int]] | None = None) -> RecoveredAction:
    """Build the action determined by a split scheme.

    ``gamma_y`` optionally overrides the based bijections ``X -> (yi)T~`` for
    points other than the basepoint of U.
    """
    if sd.t_scheme is None:
        raise NoBasedIso("the scheme T is required for recovery")
    S, U, T = sd.s, sd.u_scheme, sd.t_scheme
    m, n = U.n, T.n
    ystar, xstar = U.basepoint, T.basepoint
    gamma = sd.gamma if sd.gamma is not None else _find_gamma(sd)
    label_map = _check_gamma(sd, gamma)          # t -> t gamma delta
    label_of = {s: t for t, s in enumerate(label_map)}
    part = cosets(S, sd.t_tilde)

    gammas = []
    for y in range(m):
        if y == ystar:
            g = tuple(gamma)
        elif gamma_y is not None and y in gamma_y:
            g = tuple(gamma_y[y])
            coset = part.blocks[part.block_of[sd.i_map[y]]]
            if sorted(g) != list(coset) or g[xstar] != sd.i_map[y]:
                raise NoBasedIso(f"gamma_y for y={y} is not a based bijection onto its coset")
        else:
            g = _default_gamma_y(sd, y, xstar)
        gammas.append(g)

    # T_y is labelled through tau directly, so alpha_y is the identity on labels
    tau = LabellingSet.of(T)
    per_point = []
    for y, g in enumerate(gammas):
        color = [[label_of[S.color[g[a]][g[b]]] for b in range(n)] for a in range(n)]
        Ty = T if y == ystar else from_color_matrix(color, xstar)
        per_point.append(TauScheme(tau, Ty, tuple(range(T.r))))

    primed, doubled = {}, {}
    for u in range(U.r):
        p, d = boundary_subsets(sd, u)
        primed[u] = frozenset(label_of[s] for s in p)
        doubled[u] = frozenset(label_of[s] for s in d)

    inv = []
    for g in gammas:
        back = {z: x for x, z in enumerate(g)}
        inv.append(back)

    pairs = [[None] * m for _ in range(m)]
    for y1 in range(m):
        for y2 in range(m):
            u = U.color[y1][y2]
            ui = sd.i_rel[u]
            target = inv[y2]
            point_map = []
            for x1 in range(n):
                z1 = gammas[y1][x1]
                z2 = min(z for z in target if S.color[z1][z] == ui)
                point_map.append(target[z2])
            pairs[y1][y2] = make_cmorphism(
                per_point[y1].scheme, per_point[y2].scheme,
                primed[u], doubled[u], point_map,
            )

    action = build_action(U, T, per_point, pairs)
    eta = [0] * S.n
    for y, g in enumerate(gammas):
        for x, z in enumerate(g):
            eta[z] = y * n + x
    return RecoveredAction(action, tuple(gamma), tuple(gammas), tuple(eta), label_map)


def eta_is_isomorphism(S: Scheme, product_scheme: Scheme, eta: Sequence[int]) -> bool:
    if S.n != product_scheme.n or S.r != product_scheme.r:
        return False
    if sorted(eta) != list(range(S.n)) or eta[S.basepoint] != product_scheme.basepoint:
        return False
    try:
        m = validate_morphism(S, product_scheme, eta)
    except NotAMorphism:
        return False
    return len(set(m.rel_map)) == S.r


def reconstruct(sd: SplitData, gamma_y=None, strict: bool = False):
    """Recover the action, rebuild its product, and check ``eta`` point by point.

    Returns ``(recovered, verdict)``.  With ``strict`` a failed verdict
    raises ``EtaNotIso``.
    """
    recovered = recover_action(sd, gamma_y)
    product = semidirect_product(recovered.action)
    verdict = eta_is_isomorphism(sd.s, product.scheme, recovered.eta)
    if strict and not verdict:
        raise EtaNotIso("eta is not an isomorphism onto the rebuilt product")
    return recovered, verdict


def eta_relation_map(sd: SplitData, product: SemidirectScheme, eta: Sequence[int]) -> tuple[int, ...]:
    return validate_morphism(sd.s, product.scheme, eta).rel_map
