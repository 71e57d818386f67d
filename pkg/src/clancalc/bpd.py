"""
Bumpless pipe dream fragments supported on the Young diagram of a clan.

Cells are addressed (row, column) with rows 1..p from the top and columns
1..q from the left of the p x q frame; row r has lambda_r cells.  Pipes
enter from the south boundary, travel north and east, and leave through
the east boundary.
"""

from __future__ import annotations

import builtins
import enum
from dataclasses import dataclass
from functools import cached_property

from . import clans as C
from .polynomials import Polynomial, const, prod, x

__all__ = [
    "Tile", "BpdFragment", "rothe", "droop_moves", "enumerate", "enumerate_oracle",
    "weight", "clan_polynomial", "read_clan", "render", "boundary_steps",
    "OracleTooLarge", "InvalidFragment",
]

N, E, S, W = 1, 2, 4, 8


class Tile(enum.IntEnum):
    BLANK = 0
    HORIZONTAL = 1
    VERTICAL = 2
    CROSS = 3
    ELBOW_SE = 4
    ELBOW_NW = 5

    @property
    def edges(self) -> int:
        return _EDGES[self]

    @property
    def glyph(self) -> str:
        return _GLYPHS[self]

    @property
    def code(self) -> str:
        return _CODES[self]

    @property
    def is_elbow(self) -> bool:
        return self in (Tile.ELBOW_SE, Tile.ELBOW_NW)

    @classmethod
    def from_edges(cls, edges: int) -> Tile:
        try:
            return _FROM_EDGES[edges]
        except KeyError:
            raise InvalidFragment(f"no tile has edge set {edges:04b}") from None

    @classmethod
    def from_code(cls, code: str) -> Tile:
        return _FROM_CODE[code]


_EDGES = {
    Tile.BLANK: 0, Tile.HORIZONTAL: W | E, Tile.VERTICAL: N | S,
    Tile.CROSS: N | E | S | W, Tile.ELBOW_SE: S | E, Tile.ELBOW_NW: N | W,
}
_FROM_EDGES = {v: k for k, v in _EDGES.items()}
_GLYPHS = {
    Tile.BLANK: ".", Tile.HORIZONTAL: "─", Tile.VERTICAL: "│",
    Tile.CROSS: "┼", Tile.ELBOW_SE: "┌", Tile.ELBOW_NW: "┘",
}
_CODES = {
    Tile.BLANK: "B", Tile.HORIZONTAL: "H", Tile.VERTICAL: "V",
    Tile.CROSS: "X", Tile.ELBOW_SE: "SE", Tile.ELBOW_NW: "NW",
}
_FROM_CODE = {v: k for k, v in _CODES.items()}


class InvalidFragment(ValueError):
    pass


class OracleTooLarge(ValueError):
    pass


def boundary_steps(shape: C.YoungDiagram) -> list[tuple[str, int]]:
    """Southeast boundary read from the NE to the SW corner.

    Each step is ("V", row) for a vertical step (east edge of row's last
    cell) or ("H", column) for a horizontal step (south edge of the
    column's lowest cell).
    """
    r, c = 0, shape.q
    steps = []
    while r < shape.p or c > 0:
        if r < shape.p and shape.rows[r] == c:
            r += 1
            steps.append(("V", r))
        else:
            steps.append(("H", c))
            c -= 1
    return steps


@dataclass(frozen=True)
class BpdFragment:
    shape: C.YoungDiagram
    tiles: tuple[tuple[Tile, ...], ...]

    def __post_init__(self):
        if tuple(len(row) for row in self.tiles) != self.shape.rows:
            raise InvalidFragment("tile rows do not match the shape")

    def __getitem__(self, cell) -> Tile:
        r, c = cell
        return self.tiles[r - 1][c - 1]

    @property
    def n(self) -> int:
        return self.shape.p + self.shape.q

    def sort_key(self):
        return tuple(t for row in self.tiles for t in row)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def count(self, kind: Tile) -> int:
        return sum(1 for row in self.tiles for t in row if t == kind)

    def blank_cells(self):
        return [(r, c) for r, row in builtins.enumerate(self.tiles, 1)
                for c, t in builtins.enumerate(row, 1) if t == Tile.BLANK]

    @cached_property
    def pipes(self) -> tuple[tuple[int, int], ...]:
        """(south column, east row) for every pipe; validates continuity."""
        return tuple(sorted(_trace(self)[0]))

    @cached_property
    def crossing_pairs(self) -> dict[tuple, int]:
        return _trace(self)[1]

    def is_reduced(self) -> bool:
        return all(k <= 1 for k in self.crossing_pairs.values())

    def to_json(self) -> dict:
        return {"tiles": [[t.code for t in row] for row in self.tiles],
                "weight": weight(self).to_text()}

    def __str__(self):
        return render(self)


def _trace(f: BpdFragment):
    """Follow every pipe from the south boundary; return endpoints and crossings."""
    shape = f.shape
    rows = shape.rows
    # validate edge matching across interior edges and absence on N/W boundary
    for r in range(1, shape.p + 1):
        for c in range(1, rows[r - 1] + 1):
            e = f[r, c].edges
            if c == 1 and e & W:
                raise InvalidFragment(f"pipe leaves the west boundary at ({r},{c})")
            if r == 1 and e & N:
                raise InvalidFragment(f"pipe leaves the north boundary at ({r},{c})")
            if c < rows[r - 1] and bool(e & E) != bool(f[r, c + 1].edges & W):
                raise InvalidFragment(f"broken horizontal edge right of ({r},{c})")
            if r < shape.p and c <= rows[r] and bool(e & S) != bool(f[r + 1, c].edges & N):
                raise InvalidFragment(f"broken vertical edge below ({r},{c})")
    ends = []
    through: dict[tuple[int, int], list[int]] = {}
    pid = 0
    for c in range(1, shape.q + 1):
        h = shape.column_height(c)
        if h == 0 or not f[h, c].edges & S:
            continue
        r, cc, came = h, c, S
        while True:
            t = f[r, cc]
            if t == Tile.CROSS:
                through.setdefault((r, cc), []).append(pid)
                out = N if came == S else E
            elif t == Tile.VERTICAL and came == S:
                out = N
            elif t == Tile.HORIZONTAL and came == W:
                out = E
            elif t == Tile.ELBOW_SE and came == S:
                out = E
            elif t == Tile.ELBOW_NW and came == W:
                out = N
            else:
                raise InvalidFragment(f"pipe from column {c} cannot pass ({r},{cc})")
            if out == N:
                r, came = r - 1, S
            else:
                cc, came = cc + 1, W
                if cc > rows[r - 1]:
                    break
        ends.append((c, r))
        pid += 1
    crossings: dict[tuple, int] = {}
    for cell, ids in through.items():
        if len(ids) != 2:
            raise InvalidFragment(f"cross tile at {cell} not traversed by two pipes")
        key = (ends[ids[0]], ends[ids[1]])
        key = tuple(sorted(key))
        crossings[key] = crossings.get(key, 0) + 1
    return ends, crossings


def _node_positions(c: C.Clan):
    """Map each clan node to its boundary step: ("V", row) or ("H", column)."""
    _, v = C.uv_perms(c)
    n = c.n
    return {k: ("V", v(k)) if c.is_vertical(k) else ("H", n + 1 - v(k))
            for k in range(1, n + 1)}


def _expected_pipes(c: C.Clan) -> set[tuple[int, int]]:
    _, v = C.uv_perms(c)
    return {(c.n + 1 - v(j), v(i)) for i, j in c.arcs}


def rothe(c: C.Clan) -> BpdFragment:
    shape = C.young_diagram(c)
    _, v = C.uv_perms(c)
    n = c.n
    grid = [[0] * r for r in shape.rows]
    for i, j in c.arcs:
        r0, c0 = v(i), n + 1 - v(j)
        if (r0, c0) not in shape:
            raise AssertionError(f"arc ({i},{j}) corner outside the diagram")
        if grid[r0 - 1][c0 - 1]:
            raise AssertionError(f"Rothe corner ({r0},{c0}) already occupied")
        grid[r0 - 1][c0 - 1] = S | E
        for cc in range(c0 + 1, shape.rows[r0 - 1] + 1):
            grid[r0 - 1][cc - 1] |= W | E
        for rr in range(r0 + 1, shape.column_height(c0) + 1):
            grid[rr - 1][c0 - 1] |= N | S
    tiles = tuple(tuple(Tile.from_edges(e) for e in row) for row in grid)
    return BpdFragment(shape, tiles)


def droop_moves(f: BpdFragment) -> list[BpdFragment]:
    shape = f.shape
    out = []
    for r1 in range(1, shape.p + 1):
        for c1 in range(1, shape.rows[r1 - 1] + 1):
            if f[r1, c1] != Tile.ELBOW_SE:
                continue
            for r2 in range(r1 + 1, shape.p + 1):
                for c2 in range(c1 + 1, shape.rows[r2 - 1] + 1):
                    if f[r2, c2] != Tile.BLANK:
                        continue
                    if any(f[r, cc].is_elbow for r in range(r1, r2 + 1)
                           for cc in range(c1, c2 + 1) if (r, cc) != (r1, c1)):
                        continue
                    out.append(_droop(f, r1, c1, r2, c2))
    return out


def _droop(f: BpdFragment, r1: int, c1: int, r2: int, c2: int) -> BpdFragment:
    g = [[t.edges for t in row] for row in f.tiles]

    def edit(r, c, remove=0, add=0):
        e = g[r - 1][c - 1]
        if e & remove != remove or e & add:
            raise InvalidFragment(f"droop conflict at ({r},{c})")
        g[r - 1][c - 1] = (e & ~remove) | add

    edit(r1, c1, remove=S | E)
    for c in range(c1 + 1, c2 + 1):
        edit(r1, c, remove=W | E)
    for r in range(r1 + 1, r2 + 1):
        edit(r, c1, remove=N | S)
    edit(r2, c1, add=S | E)
    for c in range(c1 + 1, c2):
        edit(r2, c, add=W | E)
    edit(r2, c2, add=N | W)
    for r in range(r1 + 1, r2):
        edit(r, c2, add=N | S)
    edit(r1, c2, add=S | E)
    tiles = tuple(tuple(Tile.from_edges(e) for e in row) for row in g)
    return BpdFragment(f.shape, tiles)


def enumerate(c: C.Clan) -> list[BpdFragment]:
    """Droop closure of the Rothe fragment, breadth first, each level sorted."""
    start = rothe(c)
    seen = {start}
    order = [start]
    level = [start]
    while level:
        nxt = set()
        for f in level:
            for g in droop_moves(f):
                if g not in seen:
                    nxt.add(g)
        seen |= nxt
        level = sorted(nxt)
        order.extend(level)
    return order


def enumerate_oracle(c: C.Clan, max_n: int = 8) -> list[BpdFragment]:
    """All valid fragments for c by exhaustive tiling search (sorted)."""
    if c.n > max_n:
        raise OracleTooLarge(f"oracle limited to p+q <= {max_n}, got {c.n}")
    shape = C.young_diagram(c)
    rows = shape.rows
    want = _expected_pipes(c)
    east_pipe = {}
    south_pipe = {}
    for k, (kind, idx) in _node_positions(c).items():
        matched = c.is_left(k) or c.is_right(k)
        if kind == "V":
            east_pipe[idx] = matched
        else:
            south_pipe[idx] = matched
    heights = {cc: shape.column_height(cc) for cc in range(1, shape.q + 1)}
    cells = shape.cells()
    grid = [[0] * r for r in rows]
    found = []

    def options(win: bool, nin: bool):
        if win and nin:
            return (N | E | S | W, N | W)
        if win:
            return (W | E,)
        if nin:
            return (N | S,)
        return (0, S | E)

    def fill(k: int):
        if k == len(cells):
            tiles = tuple(tuple(Tile.from_edges(e) for e in row) for row in grid)
            frag = BpdFragment(shape, tiles)
            try:
                ok = set(frag.pipes) == want and frag.is_reduced()
            except InvalidFragment:
                ok = False
            if ok:
                found.append(frag)
            return
        r, cc = cells[k]
        win = cc > 1 and bool(grid[r - 1][cc - 2] & E)
        nin = r > 1 and bool(grid[r - 2][cc - 1] & S)
        for e in options(win, nin):
            if cc == rows[r - 1] and bool(e & E) != east_pipe[r]:
                continue
            if r == heights[cc] and bool(e & S) != south_pipe[cc]:
                continue
            grid[r - 1][cc - 1] = e
            fill(k + 1)
        grid[r - 1][cc - 1] = 0

    fill(0)
    return sorted(found)


def weight(f: BpdFragment) -> Polynomial:
    n = f.n
    return prod(n, (x(n, i) - x(n, n - j + 1) for i, j in f.blank_cells()))


def clan_polynomial(c: C.Clan) -> Polynomial:
    """Sum of fragment weights with x_k renamed y_k."""
    n = c.n
    total = const(n, 0)
    for f in enumerate(c):
        total = total + weight(f)
    mapping = [n + k for k in range(n)] + list(range(n, 2 * n))
    return total.relabel(mapping)


def read_clan(f: BpdFragment) -> C.Clan:
    steps = boundary_steps(f.shape)
    node_of = {s: k for k, s in builtins.enumerate(steps, 1)}
    nodes = [C.PLUS if kind == "V" else C.MINUS for kind, _ in steps]
    for col, row in f.pipes:
        a, b = node_of[("V", row)], node_of[("H", col)]
        if a > b:
            raise InvalidFragment(f"pipe from column {col} ends at row {row} out of order")
        nodes[a - 1], nodes[b - 1] = b, a
    return C.Clan(tuple(nodes))


def render(f: BpdFragment) -> str:
    return "\n".join("".join(t.glyph for t in row) for row in f.tiles)


def from_json(c: C.Clan, data) -> BpdFragment:
    shape = C.young_diagram(c)
    tiles = tuple(tuple(Tile.from_code(code) for code in row) for row in data["tiles"])
    return BpdFragment(shape, tiles)
