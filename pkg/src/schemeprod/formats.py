"""Reading and writing ``.scm`` scheme files and ``.act`` action files.

``.scm``: the first non-comment line is ``n r b`` (points, rank, basepoint),
followed by ``n`` rows of ``n`` relation indices.  Lines starting with ``#``
and blank lines are ignored; anything else after the matrix is an error.

``.act``::

    Y <m>
    X <n>
    u [path]           # inline .scm block follows when no path is given
    tau [path]
    point <y>          # n rows of the color matrix of T_y, then
    alpha <r labels>
    pair <y1> <y2>
    primed <labels>
    doubled <labels>
    map                # then n lines "x -> x'"

The point block of the basepoint of U and the diagonal pairs may be
omitted, and so may one of each pair of reversed pairs.
"""
from __future__ import annotations

import os
from pathlib import Path

from .action import Action, build_action
from .category import LabellingSet, TauScheme, identity, make_cmorphism, star
from .errors import ParseError, SchemeError
from .scheme import Scheme, from_color_matrix


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield number, line


def _ints(number, line, path=None):
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise ParseError(number, f"expected integers, got {line!r}", path) from None


class _Cursor:
    def __init__(self, text, path=None):
        self.items = list(_lines(text))
        self.pos = 0
        self.path = path

    def done(self):
        return self.pos >= len(self.items)

    def peek(self):
        return self.items[self.pos]

    def take(self, what="a line"):
        if self.done():
            last = self.items[-1][0] if self.items else 0
            raise ParseError(last, f"unexpected end of file, expected {what}", self.path)
        item = self.items[self.pos]
        self.pos += 1
        return item

    def error(self, number, reason):
        return ParseError(number, reason, self.path)


def _read_scheme(cur: _Cursor) -> Scheme:
    number, line = cur.take("header 'n r b'")
    header = _ints(number, line, cur.path)
    if len(header) != 3:
        raise cur.error(number, "header must be 'n r b'")
    n, r, b = header
    if n < 1 or r < 1:
        raise cur.error(number, "n and r must be positive")
    rows = []
    for _ in range(n):
        rn, rl = cur.take(f"a matrix row ({n} expected)")
        row = _ints(rn, rl, cur.path)
        if len(row) != n:
            raise cur.error(rn, f"row has {len(row)} entries, expected {n}")
        rows.append(row)
    used = {v for row in rows for v in row}
    if used and max(used) + 1 != r:
        raise cur.error(number, f"header says rank {r} but the matrix uses {max(used) + 1} relations")
    if not 0 <= b < n:
        raise cur.error(number, f"basepoint {b} out of range")
    try:
        return from_color_matrix(rows, b)
    except SchemeError as exc:
        if cur.path is not None:
            exc.path = cur.path
        raise


def parse_scheme_text(text: str, path=None) -> Scheme:
    cur = _Cursor(text, path)
    S = _read_scheme(cur)
    if not cur.done():
        number, _ = cur.peek()
        raise cur.error(number, "trailing garbage after the matrix")
    return S


def parse_scheme_file(path) -> Scheme:
    path = Path(path)
    return parse_scheme_text(path.read_text(), str(path))


def format_scheme(S: Scheme, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"{S.n} {S.r} {S.basepoint}")
    out.extend(" ".join(map(str, row)) for row in S.color)
    return "\n".join(out) + "\n"


def write_scheme(S: Scheme, path, comment=None) -> None:
    Path(path).write_text(format_scheme(S, comment))


def parse_table_text(text: str, path=None) -> list[list[int]]:
    """A square table of integers, one row per line (group multiplication tables)."""
    rows = [(_n, _ints(_n, line, path)) for _n, line in _lines(text)]
    for number, row in rows:
        if len(row) != len(rows):
            raise ParseError(number, "table is not square", path)
    return [row for _, row in rows]


# ---- actions -----------------------------------------------------------

def _keyword(cur, word):
    number, line = cur.take(f"'{word}'")
    parts = line.split()
    if parts[0] != word:
        raise cur.error(number, f"expected '{word}', got {parts[0]!r}")
    return number, parts[1:]


def _scheme_ref(cur, word, base_dir):
    number, rest = _keyword(cur, word)
    if not rest:
        return _read_scheme(cur)
    if len(rest) != 1:
        raise cur.error(number, f"'{word}' takes at most one path")
    ref = Path(rest[0])
    if not ref.is_absolute() and base_dir is not None:
        ref = Path(base_dir) / ref
    try:
        return parse_scheme_file(ref)
    except OSError as exc:
        raise cur.error(number, f"cannot read {ref}: {exc.strerror}") from None


def parse_action_text(text: str, path=None, base_dir=None) -> Action:
    cur = _Cursor(text, path)
    number, rest = _keyword(cur, "Y")
    if len(rest) != 1:
        raise cur.error(number, "expected 'Y <m>'")
    m = _ints(number, rest[0], path)[0]
    number, rest = _keyword(cur, "X")
    if len(rest) != 1:
        raise cur.error(number, "expected 'X <n>'")
    n = _ints(number, rest[0], path)[0]
    U = _scheme_ref(cur, "u", base_dir)
    T = _scheme_ref(cur, "tau", base_dir)
    if U.n != m or T.n != n:
        raise cur.error(number, f"Y/X sizes {m}/{n} disagree with the schemes ({U.n}/{T.n})")
    tau = LabellingSet.of(T)

    points: dict[int, TauScheme] = {}
    pair_data: dict[tuple[int, int], tuple] = {}
    while not cur.done():
        number, line = cur.take()
        parts = line.split()
        if parts[0] == "point":
            if len(parts) != 2:
                raise cur.error(number, "expected 'point <y>'")
            y = _ints(number, parts[1], path)[0]
            if not 0 <= y < m or y in points:
                raise cur.error(number, f"bad or repeated point {y}")
            rows = []
            for _ in range(n):
                rn, rl = cur.take("a matrix row")
                row = _ints(rn, rl, path)
                if len(row) != n:
                    raise cur.error(rn, f"row has {len(row)} entries, expected {n}")
                rows.append(row)
            an, arest = _keyword(cur, "alpha")
            alpha = tuple(_ints(an, " ".join(arest), path))
            try:
                Ty = T if rows == [list(r) for r in T.color] else from_color_matrix(rows, T.basepoint)
                points[y] = TauScheme(tau, Ty, alpha)
            except SchemeError as exc:
                raise cur.error(number, f"point {y}: {exc}") from None
        elif parts[0] == "pair":
            if len(parts) != 3:
                raise cur.error(number, "expected 'pair <y1> <y2>'")
            y1, y2 = _ints(number, " ".join(parts[1:]), path)
            if not (0 <= y1 < m and 0 <= y2 < m) or (y1, y2) in pair_data:
                raise cur.error(number, f"bad or repeated pair ({y1},{y2})")
            pn, prest = _keyword(cur, "primed")
            primed = _ints(pn, " ".join(prest), path)
            dn, drest = _keyword(cur, "doubled")
            doubled = _ints(dn, " ".join(drest), path)
            _keyword(cur, "map")
            image = [None] * n
            for _ in range(n):
                mn, ml = cur.take("a map entry 'x -> x'")
                lhs, arrow, rhs = ml.partition("->")
                if not arrow:
                    raise cur.error(mn, "map entries look like 'x -> x'")
                x, xi = _ints(mn, lhs, path), _ints(mn, rhs, path)
                if len(x) != 1 or len(xi) != 1 or not 0 <= x[0] < n or image[x[0]] is not None:
                    raise cur.error(mn, f"bad map entry {ml!r}")
                image[x[0]] = xi[0]
            pair_data[(y1, y2)] = (number, primed, doubled, image)
        else:
            raise cur.error(number, f"unknown block {parts[0]!r}")

    ystar = U.basepoint
    points.setdefault(ystar, TauScheme.plain(T))
    missing = [y for y in range(m) if y not in points]
    if missing:
        raise ParseError(0, f"no point block for y={missing[0]}", path)
    per_point = [points[y] for y in range(m)]

    pairs: dict[tuple[int, int], object] = {}
    for (y1, y2), (number, primed, doubled, image) in pair_data.items():
        try:
            pairs[(y1, y2)] = make_cmorphism(
                per_point[y1].scheme, per_point[y2].scheme, primed, doubled, image
            )
        except SchemeError as exc:
            raise cur.error(number, f"pair ({y1},{y2}): {exc}") from None
    for y in range(m):
        pairs.setdefault((y, y), identity(per_point[y].scheme))
    for y1 in range(m):
        for y2 in range(m):
            if (y1, y2) not in pairs:
                if (y2, y1) not in pairs:
                    raise ParseError(0, f"no morphism for pair ({y1},{y2})", path)
                pairs[(y1, y2)] = star(pairs[(y2, y1)])
    return build_action(U, T, per_point, pairs)


def parse_action_file(path) -> Action:
    path = Path(path)
    return parse_action_text(path.read_text(), str(path), base_dir=path.parent)


def _inline(word, S):
    return f"{word}\n" + format_scheme(S)


def format_action(action: Action, u_ref: str | None = None, tau_ref: str | None = None) -> str:
    """Serialise an action; omits the basepoint block, diagonal and reversed pairs."""
    m, n = action.m, action.n
    out = [f"Y {m}\n", f"X {n}\n"]
    out.append(f"u {u_ref}\n" if u_ref else _inline("u", action.u_scheme))
    out.append(f"tau {tau_ref}\n" if tau_ref else _inline("tau", action.t_scheme))
    ystar = action.u_scheme.basepoint
    for y, ts in enumerate(action.per_point):
        if y == ystar:
            continue
        out.append(f"point {y}\n")
        out.extend(" ".join(map(str, row)) + "\n" for row in ts.scheme.color)
        out.append("alpha " + " ".join(map(str, ts.alpha)) + "\n")
    for y1 in range(m):
        for y2 in range(y1 + 1, m):
            phi = action.zeta(y1, y2)
            out.append(f"pair {y1} {y2}\n")
            out.append("primed " + " ".join(map(str, phi.t_phi.sorted())) + "\n")
            out.append("doubled " + " ".join(map(str, phi.u_phi.sorted())) + "\n")
            out.append("map\n")
            out.extend(f"{x} -> {xi}\n" for x, xi in enumerate(phi.point_map()))
    return "".join(out)


def write_action(action: Action, path, **refs) -> None:
    Path(path).write_text(format_action(action, **refs))


def relpath(target, start) -> str:
    return os.path.relpath(target, start)
