"""Independent reference computations used by the tests.

Nothing here calls into the package's own constant, product or search code;
each function works straight from color matrices.
"""
from __future__ import annotations

from itertools import permutations, product


def triple_loop_constants(color):
    """Count z for every (x, y) and insist the count depends only on color[x][y]."""
    n = len(color)
    r = 1 + max(max(row) for row in color)
    table = [[[None] * r for _ in range(r)] for _ in range(r)]
    for x, y in product(range(n), repeat=2):
        s = color[x][y]
        counts = [[0] * r for _ in range(r)]
        for z in range(n):
            counts[color[x][z]][color[z][y]] += 1
        for p, q in product(range(r), repeat=2):
            if table[p][q][s] is None:
                table[p][q][s] = counts[p][q]
            else:
                assert table[p][q][s] == counts[p][q], "matrix is not a scheme"
    return table


def direct_product_matrix(color_u, color_t):
    """Color (y1,x1),(y2,x2) by the pair (u, t), encoded u * r_t + t."""
    m, n = len(color_u), len(color_t)
    r_t = 1 + max(max(row) for row in color_t)
    return [
        [color_u[y1][y2] * r_t + color_t[x1][x2] for y2 in range(m) for x2 in range(n)]
        for y1 in range(m) for x1 in range(n)
    ]


def wreath_matrix(color_u, color_t):
    """Inside a block copy T; between blocks only the U relation matters."""
    m, n = len(color_u), len(color_t)
    r_t = 1 + max(max(row) for row in color_t)
    out = []
    for y1, x1 in product(range(m), range(n)):
        row = []
        for y2, x2 in product(range(m), range(n)):
            u = color_u[y1][y2]
            row.append(color_t[x1][x2] if u == 0 else r_t - 1 + u)
        out.append(row)
    return out


def same_partition(c1, c2) -> bool:
    """Whether two color matrices differ only by a relabelling of colors."""
    fwd, back = {}, {}
    for row1, row2 in zip(c1, c2):
        for a, b in zip(row1, row2):
            if fwd.setdefault(a, b) != b or back.setdefault(b, a) != a:
                return False
    return True


def brute_force_isomorphic(c1, c2, based=None) -> bool:
    """Exhaustive search over point permutations (small n only)."""
    n = len(c1)
    if n != len(c2):
        return False
    for perm in permutations(range(n)):
        if based is not None and perm[based[0]] != based[1]:
            continue
        remapped = [[c2[perm[x]][perm[y]] for y in range(n)] for x in range(n)]
        if same_partition(c1, remapped):
            return True
    return False


def cyclic_table(m):
    return [[(i + j) % m for j in range(m)] for i in range(m)]


def relabel_points(color, perm):
    """Color matrix of the same scheme after moving point x to perm[x]."""
    n = len(color)
    out = [[0] * n for _ in range(n)]
    for x, y in product(range(n), repeat=2):
        out[perm[x]][perm[y]] = color[x][y]
    return out


def brute_force_automorphisms(constants):
    """Every relation permutation fixing 0 that preserves all constants."""
    r = len(constants)
    found = []
    for rest in permutations(range(1, r)):
        sigma = (0,) + rest
        if all(constants[a][b][c] == constants[sigma[a]][sigma[b]][sigma[c]]
               for a, b, c in product(range(r), repeat=3)):
            found.append(sigma)
    return found
