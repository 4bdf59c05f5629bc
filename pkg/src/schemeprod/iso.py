"""Isomorphism search between schemes and algebraic automorphisms."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .scheme import Scheme, is_symmetric  # noqa: F401  (re-exported)


@dataclass(frozen=True)
class Isomorphism:
    point_bij: tuple[int, ...]
    rel_bij: tuple[int, ...]
    based: bool

    def inverse(self) -> "Isomorphism":
        return Isomorphism(_invert(self.point_bij), _invert(self.rel_bij), self.based)


def _invert(perm):
    inv = [0] * len(perm)
    for i, v in enumerate(perm):
        inv[v] = i
    return tuple(inv)


def relation_signature(A: Scheme, p: int):
    rows = tuple(sorted(
        tuple(sorted(v for v in A.constants[p][q] if v)) for q in range(A.r)
    ))
    return (A.valency(p), A.star[p] == p, rows)


def fingerprint(A: Scheme):
    return tuple(sorted(relation_signature(A, p) for p in range(A.r)))


def check_isomorphism(A: Scheme, B: Scheme, iso: Isomorphism) -> bool:
    pb, rb = iso.point_bij, iso.rel_bij
    if sorted(pb) != list(range(B.n)) or sorted(rb) != list(range(B.r)) or A.n != B.n:
        return False
    if rb[0] != 0:
        return False
    if iso.based and pb[A.basepoint] != B.basepoint:
        return False
    return all(
        rb[A.color[x][y]] == B.color[pb[x]][pb[y]]
        for x, y in product(range(A.n), repeat=2)
    )


def find_isomorphism(A: Scheme, B: Scheme, based: bool = False) -> Isomorphism | None:
    """Backtracking search for a color-preserving point bijection ``A -> B``.

    Points of A are placed in ascending order (basepoint first when
    ``based``) and tried against B points in ascending order, so the witness
    returned is the first one in that order.  Relation pairings are pruned by
    valency and structure-constant signatures.
    """
    if A.n != B.n or A.r != B.r or fingerprint(A) != fingerprint(B):
        return None
    sig_b = {}
    for q in range(B.r):
        sig_b.setdefault(relation_signature(B, q), set()).add(q)
    allowed = [sig_b.get(relation_signature(A, p), set()) for p in range(A.r)]

    n = A.n
    order = list(range(n))
    if based:
        order.remove(A.basepoint)
        order.insert(0, A.basepoint)
    pmap = [-1] * n
    used = [False] * n
    sigma: dict[int, int] = {0: 0}
    sigma_inv: dict[int, int] = {0: 0}

    def bind(p, q, added):
        for pp, qq in ((p, q), (A.star[p], B.star[q])):
            if pp in sigma:
                if sigma[pp] != qq:
                    return False
            else:
                if qq in sigma_inv or qq not in allowed[pp]:
                    return False
                sigma[pp] = qq
                sigma_inv[qq] = pp
                added.append(pp)
        return True

    def undo(added):
        for p in added:
            del sigma_inv[sigma.pop(p)]

    def place(k):
        if k == n:
            return True
        x = order[k]
        candidates = [B.basepoint] if (based and k == 0) else range(n)
        for y in candidates:
            if used[y]:
                continue
            added: list[int] = []
            ok = True
            for j in range(k):
                xp = order[j]
                yp = pmap[xp]
                if not (bind(A.color[xp][x], B.color[yp][y], added)
                        and bind(A.color[x][xp], B.color[y][yp], added)):
                    ok = False
                    break
            if ok:
                pmap[x] = y
                used[y] = True
                if place(k + 1):
                    return True
                used[y] = False
                pmap[x] = -1
            undo(added)
        return False

    if not place(0):
        return None
    rel = tuple(sigma[p] for p in range(A.r))
    return Isomorphism(tuple(pmap), rel, based)


def algebraic_automorphisms(A: Scheme) -> list[tuple[int, ...]]:
    """All relation permutations fixing 0, commuting with star and preserving every constant."""
    r = A.r
    sig = [relation_signature(A, p) for p in range(r)]
    sigma = [-1] * r
    sigma[0] = 0
    taken = [False] * r
    taken[0] = True
    found = []

    def consistent(p):
        # every triple whose members are all assigned and include p
        assigned = [q for q in range(r) if sigma[q] != -1]
        for q, s in product(assigned, repeat=2):
            for a, b, c in ((p, q, s), (q, p, s), (q, s, p)):
                if A.constants[a][b][c] != A.constants[sigma[a]][sigma[b]][sigma[c]]:
                    return False
        return True

    def extend(p):
        if p == r:
            found.append(tuple(sigma))
            return
        if sigma[p] != -1:
            extend(p + 1)
            return
        ps = A.star[p]
        for q in range(1, r):
            if taken[q] or sig[q] != sig[p]:
                continue
            qs = A.star[q]
            if ps != p and (sigma[ps] != -1 or taken[qs] and qs != q):
                continue
            sigma[p], taken[q] = q, True
            if ps != p:
                sigma[ps], taken[qs] = qs, True
            if consistent(p) and (ps == p or consistent(ps)):
                extend(p + 1)
            sigma[p], taken[q] = -1, False
            if ps != p:
                sigma[ps], taken[qs] = -1, False

    extend(1)
    return sorted(found)
