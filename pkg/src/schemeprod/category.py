"""Scheme morphisms, the category of based schemes with quotient isomorphisms,
labelling sets and tau-schemes.

A morphism ``phi`` of the category from ``T`` to ``U`` is a normal closed
subset ``T_phi`` of ``T``, a normal closed subset ``U_phi`` of ``U`` and a
based isomorphism ``T // T_phi -> U // U_phi``.  The isomorphism is stored
at coset level as ``block_map``; its relation part is always derived.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .closure import ClosedSubset, QuotientScheme, as_closed, is_normal, quotient
from .errors import (
    DomainMismatch,
    MismatchedTauScheme,
    NotAMorphism,
    NotBased,
    NotIso,
    NotNormal,
)
from .scheme import Scheme, relset


@dataclass(frozen=True)
class SchemeMorphism:
    dom: Scheme
    cod: Scheme
    point_map: tuple[int, ...]
    rel_map: tuple[int, ...]

    @property
    def kernel(self) -> ClosedSubset:
        return ClosedSubset(self.dom, frozenset(s for s, v in enumerate(self.rel_map) if v == 0))

    @property
    def is_based(self) -> bool:
        return self.point_map[self.dom.basepoint] == self.cod.basepoint


def validate_morphism(dom: Scheme, cod: Scheme, point_map: Sequence[int]) -> SchemeMorphism:
    """Check that ``point_map`` sends each relation of ``dom`` into one relation of ``cod``."""
    pm = tuple(int(v) for v in point_map)
    if len(pm) != dom.n or any(not 0 <= v < cod.n for v in pm):
        raise NotAMorphism("point map is not a total map into the codomain points")
    rel_map = [-1] * dom.r
    seen_at: list[tuple[int, int] | None] = [None] * dom.r
    for x1, x2 in product(range(dom.n), repeat=2):
        s = dom.color[x1][x2]
        image = cod.color[pm[x1]][pm[x2]]
        if rel_map[s] == -1:
            rel_map[s] = image
            seen_at[s] = (x1, x2)
        elif rel_map[s] != image:
            witness = (s, seen_at[s], (x1, x2))
            raise NotAMorphism(
                f"relation {s} lands in {rel_map[s]} at {seen_at[s]} "
                f"but in {image} at {(x1, x2)}",
                witness,
            )
    return SchemeMorphism(dom, cod, pm, tuple(rel_map))


def is_isomorphism(m: SchemeMorphism) -> bool:
    return (
        m.dom.n == m.cod.n and m.dom.r == m.cod.r
        and len(set(m.point_map)) == m.dom.n
        and len(set(m.rel_map)) == m.dom.r
    )


@dataclass(frozen=True, eq=False)
class CMorphism:
    dom: Scheme
    cod: Scheme
    t_phi: ClosedSubset
    u_phi: ClosedSubset
    block_map: tuple[int, ...]          # dom-quotient block -> cod-quotient block
    rel_iso: tuple[int, ...] = field(default=())  # dom-quotient rel -> cod-quotient rel

    def __eq__(self, other):
        if not isinstance(other, CMorphism):
            return NotImplemented
        return (
            self.dom == other.dom and self.cod == other.cod
            and self.t_phi.members == other.t_phi.members
            and self.u_phi.members == other.u_phi.members
            and self.block_map == other.block_map
        )

    def __hash__(self):
        return hash((self.dom, self.cod, self.t_phi.members, self.u_phi.members, self.block_map))

    @property
    def dom_quotient(self) -> QuotientScheme:
        return quotient(self.dom, self.t_phi)

    @property
    def cod_quotient(self) -> QuotientScheme:
        return quotient(self.cod, self.u_phi)

    def image_block(self, x: int) -> int:
        """Block of ``cod // u_phi`` that the coset of dom point ``x`` maps to."""
        return self.block_map[self.dom_quotient.block_of[x]]

    def image_coset(self, x: int) -> tuple[int, ...]:
        return self.cod_quotient.partition.blocks[self.image_block(x)]

    def point_map(self) -> tuple[int, ...]:
        """A representative point map: x -> smallest point of its image coset."""
        return tuple(self.image_coset(x)[0] for x in range(self.dom.n))

    def rel_image(self, s: int) -> frozenset[int]:
        """Relations of ``cod`` whose quotient class is the image of the class of ``s``."""
        c = self.rel_iso[self.dom_quotient.rel_map[s]]
        return self.cod_quotient.preimage(c)


def make_cmorphism(dom: Scheme, cod: Scheme, t_phi, u_phi, point_iso: Sequence[int]) -> CMorphism:
    """Validate and build a category morphism.

    ``point_iso[x]`` is a codomain point whose ``u_phi``-coset is the image of
    the ``t_phi``-coset of ``x``; it must be constant on cosets.
    """
    t_phi = as_closed(dom, t_phi)
    u_phi = as_closed(cod, u_phi)
    if not is_normal(dom, t_phi):
        raise NotNormal(f"{t_phi.sorted()} is not normal in the domain")
    if not is_normal(cod, u_phi):
        raise NotNormal(f"{u_phi.sorted()} is not normal in the codomain")
    qd, qc = quotient(dom, t_phi), quotient(cod, u_phi)
    nd, nc = qd.scheme, qc.scheme
    if nd.n != nc.n or nd.r != nc.r:
        raise NotIso(
            f"quotients differ: order {nd.n} rank {nd.r} vs order {nc.n} rank {nc.r}"
        )
    if len(point_iso) != dom.n:
        raise NotIso(f"point map has {len(point_iso)} entries, expected {dom.n}")
    block_map = [-1] * nd.n
    for x, xi in enumerate(point_iso):
        if not 0 <= xi < cod.n:
            raise NotIso(f"point {x} maps outside the codomain")
        b, c = qd.block_of[x], qc.block_of[xi]
        if block_map[b] == -1:
            block_map[b] = c
        elif block_map[b] != c:
            raise NotIso(f"map is not constant on the coset of {x}")
    if sorted(block_map) != list(range(nc.n)):
        raise NotIso("coset map is not a bijection")
    if block_map[nd.basepoint] != nc.basepoint:
        raise NotBased("coset map does not preserve the basepoint")
    rel_iso = [-1] * nd.r
    for b1, b2 in product(range(nd.n), repeat=2):
        q = nd.color[b1][b2]
        image = nc.color[block_map[b1]][block_map[b2]]
        if rel_iso[q] == -1:
            rel_iso[q] = image
        elif rel_iso[q] != image:
            raise NotIso(f"quotient relation {q} is not preserved")
    if len(set(rel_iso)) != nd.r:
        raise NotIso("quotient relation map is not injective")
    return CMorphism(dom, cod, t_phi, u_phi, tuple(block_map), tuple(rel_iso))


def identity(T: Scheme) -> CMorphism:
    return make_cmorphism(T, T, (0,), (0,), range(T.n))


def full_morphism(T: Scheme, U: Scheme) -> CMorphism:
    """The morphism collapsing both schemes to a point (the top element)."""
    return make_cmorphism(T, U, range(T.r), range(U.r), [U.basepoint] * T.n)


def compose(phi: CMorphism, psi: CMorphism) -> CMorphism:
    """Composite ``phi`` then ``psi`` (written ``phi psi``)."""
    if phi.cod != psi.dom:
        raise DomainMismatch("codomain of the first morphism is not the domain of the second")
    T, U, V = phi.dom, phi.cod, psi.cod
    qU_phi, qU_psi = phi.cod_quotient, psi.dom_quotient
    qV = psi.cod_quotient

    def psi_class_of_u(u):
        return psi.rel_iso[qU_psi.rel_map[u]]

    t_members = set()
    for t in range(T.r):
        if any(psi_class_of_u(u) == 0 for u in phi.rel_image(t)):
            t_members.add(t)
    v_members = set()
    for u in qU_phi.preimage(0):
        v_members |= qV.preimage(psi_class_of_u(u))

    # coset of x -> phi image -> smallest rep y -> psi image -> smallest rep z
    point_map = []
    for x in range(T.n):
        y = phi.image_coset(x)[0]
        z = psi.image_coset(y)[0]
        point_map.append(z)
    return make_cmorphism(T, V, t_members, v_members, point_map)


def star(phi: CMorphism) -> CMorphism:
    inverse = [0] * len(phi.block_map)
    for b, c in enumerate(phi.block_map):
        inverse[c] = b
    qd = phi.dom_quotient
    qc = phi.cod_quotient
    point_map = [qd.partition.representative(inverse[qc.block_of[y]]) for y in range(phi.cod.n)]
    return make_cmorphism(phi.cod, phi.dom, phi.u_phi, phi.t_phi, point_map)


def leq(phi: CMorphism, psi: CMorphism) -> bool:
    if phi.dom != psi.dom or phi.cod != psi.cod:
        raise DomainMismatch("morphisms must share domain and codomain")
    if not phi.t_phi.members <= psi.t_phi.members:
        return False
    if not phi.u_phi.members <= psi.u_phi.members:
        return False
    return all(
        set(phi.image_coset(x)) <= set(psi.image_coset(x)) for x in range(phi.dom.n)
    )


@dataclass(frozen=True)
class LabellingSet:
    r: int
    star: tuple[int, ...]
    constants: tuple

    @classmethod
    def of(cls, T: Scheme) -> "LabellingSet":
        return cls(T.r, T.star, T.constants)

    def product(self, P: Iterable[int], Q: Iterable[int]) -> frozenset[int]:
        Q = list(Q)
        return frozenset(
            s for p in P for q in Q for s in range(self.r) if self.constants[p][q][s]
        )

    def is_closed(self, P: Iterable[int]) -> bool:
        P = relset(P)
        return bool(P) and all(self.product((p,), (self.star[q],)) <= P for p in P for q in P)

    def is_normal(self, P: Iterable[int]) -> bool:
        P = relset(P)
        return all(self.product((p,), P) == self.product(P, (p,)) for p in range(self.r))


@dataclass(frozen=True)
class TauScheme:
    tau: LabellingSet
    scheme: Scheme
    alpha: tuple[int, ...]

    def __post_init__(self):
        S, a = self.scheme, self.alpha
        if S.r != self.tau.r or sorted(a) != list(range(S.r)):
            raise MismatchedTauScheme("alpha is not a bijection onto the relations")
        if a[0] != 0:
            raise MismatchedTauScheme("alpha does not send 1 to the diagonal")
        for p in range(S.r):
            if a[self.tau.star[p]] != S.star[a[p]]:
                raise MismatchedTauScheme(f"alpha does not commute with star at {p}")
        for p, q, s in product(range(S.r), repeat=3):
            if self.tau.constants[p][q][s] != S.constants[a[p]][a[q]][a[s]]:
                raise MismatchedTauScheme(f"constants differ at ({p},{q},{s})")

    @classmethod
    def plain(cls, T: Scheme) -> "TauScheme":
        return cls(LabellingSet.of(T), T, tuple(range(T.r)))

    def inverse(self) -> tuple[int, ...]:
        inv = [0] * len(self.alpha)
        for t, s in enumerate(self.alpha):
            inv[s] = t
        return tuple(inv)


def tau_apply(phi: CMorphism, dom_ts: TauScheme, cod_ts: TauScheme, P: Iterable[int]) -> frozenset[int]:
    """The power-set map of ``phi`` on labels: classes of ``P`` pushed through the quotient iso."""
    if dom_ts.scheme != phi.dom or cod_ts.scheme != phi.cod:
        raise MismatchedTauScheme("tau-schemes do not match the morphism ends")
    if dom_ts.tau != cod_ts.tau:
        raise MismatchedTauScheme("tau-schemes have different labelling sets")
    qc = phi.cod_quotient
    targets = {phi.rel_iso[phi.dom_quotient.rel_map[dom_ts.alpha[t]]] for t in P}
    return frozenset(u for u in range(cod_ts.tau.r) if qc.rel_map[cod_ts.alpha[u]] in targets)


def singleton_table(phi: CMorphism, dom_ts: TauScheme, cod_ts: TauScheme) -> tuple[frozenset, ...]:
    return tuple(tau_apply(phi, dom_ts, cod_ts, (t,)) for t in range(dom_ts.tau.r))


def kernel_of_table(table: Sequence[frozenset]) -> frozenset[int]:
    return frozenset(t for t, img in enumerate(table) if img == table[0])

