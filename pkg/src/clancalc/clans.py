"""
(p,q)-clans: partial matchings on p+q nodes with the unmatched nodes signed.

Notation follows the usual display convention: a left endpoint shows the
span of its arc (``(k)`` when k >= 10), a right endpoint is ``.``, and
unmatched nodes are ``+`` or ``-``.

>>> c = parse("6-84+-..-+.")
>>> (c.p, c.q), c.arcs
((5, 6), ((1, 7), (3, 11), (4, 8)))
>>> format(hecke(parse("1.+1."), 3))
'1.2+.'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations

from .permutations import Permutation

__all__ = [
    "Clan", "YoungDiagram", "parse", "format", "enumerate_clans", "count_clans",
    "uv_perms", "young_diagram", "clan_length", "hecke", "hecke_word",
    "weak_covers", "strong_leq", "strong_stats", "contains_pattern",
    "reverse_signs", "rainbow", "partial_perm", "clan_matrix",
    "matchless_with_v", "PartialPermUndefined", "SMOOTHNESS_PATTERNS",
]

PLUS = "+"
MINUS = "-"


@dataclass(frozen=True)
class Clan:
    """A clan on nodes 1..n.

    ``nodes[k]`` describes node k+1: ``"+"``, ``"-"``, or the (1-based)
    index of its partner.
    """

    nodes: tuple

    def __post_init__(self):
        for k, a in enumerate(self.nodes, 1):
            if a in (PLUS, MINUS):
                continue
            if not isinstance(a, int) or not 1 <= a <= len(self.nodes) or a == k:
                raise ValueError(f"bad partner {a!r} at node {k}")
            if self.nodes[a - 1] != k:
                raise ValueError(f"node {k} matched to {a} but not conversely")

    @property
    def n(self) -> int:
        return len(self.nodes)

    @cached_property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple((k, a) for k, a in enumerate(self.nodes, 1)
                     if isinstance(a, int) and a > k)

    @cached_property
    def p(self) -> int:
        return len(self.arcs) + self.nodes.count(PLUS)

    @cached_property
    def q(self) -> int:
        return len(self.arcs) + self.nodes.count(MINUS)

    def is_left(self, k: int) -> bool:
        a = self.nodes[k - 1]
        return isinstance(a, int) and a > k

    def is_right(self, k: int) -> bool:
        a = self.nodes[k - 1]
        return isinstance(a, int) and a < k

    def is_vertical(self, k: int) -> bool:
        """Plus or left endpoint: a vertical boundary step of the Young diagram."""
        a = self.nodes[k - 1]
        return a == PLUS or (isinstance(a, int) and a > k)

    @property
    def is_matchless(self) -> bool:
        return not self.arcs

    @cached_property
    def is_noncrossing(self) -> bool:
        return crossings(self) == 0

    @cached_property
    def length(self) -> int:
        return clan_length(self)

    def __str__(self):
        return format(self)

    def __repr__(self):
        return f"Clan({format(self)!r})"

    def sort_key(self):
        return (len(self.arcs), tuple(_node_key(a) for a in self.nodes))


def _node_key(a):
    if a == PLUS:
        return (0, 0)
    if a == MINUS:
        return (1, 0)
    return (2, a)


@dataclass(frozen=True)
class YoungDiagram:
    """Row lengths of a diagram inside the p x q rectangle."""

    p: int
    q: int
    rows: tuple[int, ...]

    def __contains__(self, cell) -> bool:
        r, c = cell
        return 1 <= r <= self.p and 1 <= c <= self.rows[r - 1]

    @property
    def size(self) -> int:
        return sum(self.rows)

    def cells(self):
        return [(r, c) for r in range(1, self.p + 1) for c in range(1, self.rows[r - 1] + 1)]

    def complement(self):
        return [(r, c) for r in range(1, self.p + 1)
                for c in range(self.rows[r - 1] + 1, self.q + 1)]

    def column_height(self, c: int) -> int:
        return sum(1 for r in self.rows if r >= c)

    def is_full(self) -> bool:
        return all(r == self.q for r in self.rows)


class PartialPermUndefined(ValueError):
    """w_gamma is only defined when the first p nodes are + or left endpoints."""


# --- notation --------------------------------------------------------------

_TOKENS = re.compile(r"\((\d+)\)|([1-9])|([+\-.])|(.)")


def parse(notation: str) -> Clan:
    """Parse clan notation such as ``"6-84+-..-+."`` or ``"(11)9753--....."``."""
    tokens = []
    for m in _TOKENS.finditer(notation):
        if m.group(4) is not None:
            raise ValueError(f"malformed clan token {m.group(4)!r} in {notation!r}")
        if m.group(1) is not None:
            span = int(m.group(1))
            if span < 1:
                raise ValueError(f"malformed clan token '({span})' in {notation!r}")
            tokens.append(span)
        elif m.group(2) is not None:
            tokens.append(int(m.group(2)))
        else:
            tokens.append(m.group(3))
    n = len(tokens)
    nodes: list = [None] * n
    for k, tok in enumerate(tokens, 1):
        if isinstance(tok, int):
            j = k + tok
            if j > n or tokens[j - 1] != ".":
                raise ValueError(f"dangling arc from node {k} (span {tok}) in {notation!r}")
            if nodes[j - 1] is not None:
                raise ValueError(f"node {j} is the right end of two arcs in {notation!r}")
            nodes[k - 1] = j
            nodes[j - 1] = k
        elif tok in (PLUS, MINUS):
            nodes[k - 1] = tok
    for k, tok in enumerate(tokens, 1):
        if tok == "." and nodes[k - 1] is None:
            raise ValueError(f"unconsumed '.' at node {k} in {notation!r}")
    return Clan(tuple(nodes))


def format(c: Clan) -> str:
    out = []
    for k, a in enumerate(c.nodes, 1):
        if a in (PLUS, MINUS):
            out.append(a)
        elif a > k:
            span = a - k
            out.append(str(span) if span < 10 else f"({span})")
        else:
            out.append(".")
    return "".join(out)


# --- enumeration -----------------------------------------------------------

def count_clans(p: int, q: int) -> int:
    """Closed-form count: sum over m arcs of C(n,2m) (2m-1)!! C(n-2m, p-m)."""
    from math import comb
    n = p + q
    total = 0
    for m in range(min(p, q) + 1):
        dfact = 1
        for k in range(1, 2 * m, 2):
            dfact *= k
        total += comb(n, 2 * m) * dfact * comb(n - 2 * m, p - m)
    return total


@lru_cache(maxsize=None)
def enumerate_clans(p: int, q: int) -> tuple[Clan, ...]:
    """All (p,q)-clans ordered by arc count, then node sequence (+ < - < matched)."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    n = p + q
    found = []
    nodes: list = [None] * n

    def fill(k: int, plus_left: int, minus_left: int, arcs_left: int):
        while k <= n and nodes[k - 1] is not None:
            k += 1
        if k > n:
            if plus_left == minus_left == arcs_left == 0:
                found.append(Clan(tuple(nodes)))
            return
        free = sum(1 for a in nodes[k - 1:] if a is None)
        if free != plus_left + minus_left + 2 * arcs_left:
            return
        if plus_left:
            nodes[k - 1] = PLUS
            fill(k + 1, plus_left - 1, minus_left, arcs_left)
        if minus_left:
            nodes[k - 1] = MINUS
            fill(k + 1, plus_left, minus_left - 1, arcs_left)
        if arcs_left:
            for j in range(k + 1, n + 1):
                if nodes[j - 1] is None:
                    nodes[k - 1], nodes[j - 1] = j, k
                    fill(k + 1, plus_left, minus_left, arcs_left - 1)
                    nodes[j - 1] = None
        nodes[k - 1] = None

    for m in range(min(p, q) + 1):
        fill(1, p - m, q - m, m)
    return tuple(sorted(found, key=Clan.sort_key))


# --- permutations and diagram ---------------------------------------------

@lru_cache(maxsize=None)
def uv_perms(c: Clan) -> tuple[Permutation, Permutation]:
    """(u_gamma, v_gamma).

    u: minus signs and left endpoints get 1..q left to right, the rest q+1..n.
    v: plus signs and left endpoints get 1..p left to right, the rest p+1..n.
    """
    n, p, q = c.n, c.p, c.q
    u = [0] * n
    v = [0] * n
    lo_u, hi_u, lo_v, hi_v = 1, q + 1, 1, p + 1
    for k in range(1, n + 1):
        a = c.nodes[k - 1]
        left = isinstance(a, int) and a > k
        if a == MINUS or left:
            u[k - 1] = lo_u
            lo_u += 1
        else:
            u[k - 1] = hi_u
            hi_u += 1
        if a == PLUS or left:
            v[k - 1] = lo_v
            lo_v += 1
        else:
            v[k - 1] = hi_v
            hi_v += 1
    return Permutation(u), Permutation(v)


def young_diagram(c: Clan) -> YoungDiagram:
    """Nodes read as boundary steps from the NE to the SW corner of the p x q box."""
    col = c.q
    rows = []
    for k in range(1, c.n + 1):
        if c.is_vertical(k):
            rows.append(col)
        else:
            col -= 1
    return YoungDiagram(c.p, c.q, tuple(rows))


def crossings(c: Clan) -> int:
    return sum(1 for (a, b), (s, t) in combinations(c.arcs, 2)
               if a < s < b < t or s < a < t < b)


def clan_length(c: Clan) -> int:
    return sum(j - i for i, j in c.arcs) - crossings(c)


# --- 0-Hecke action --------------------------------------------------------

def _swap(c: Clan, i: int) -> Clan:
    nodes = list(c.nodes)
    nodes[i - 1], nodes[i] = nodes[i], nodes[i - 1]
    ren = {i: i + 1, i + 1: i}
    return Clan(tuple(ren.get(a, a) if isinstance(a, int) else a for a in nodes))


@lru_cache(maxsize=None)
def hecke(c: Clan, i: int) -> Clan:
    """s_i * c for 1 <= i <= n-1."""
    if not 1 <= i < c.n:
        raise ValueError(f"Hecke index {i} out of range 1..{c.n - 1}")
    a, b = c.nodes[i - 1], c.nodes[i]
    if {a, b} == {PLUS, MINUS}:
        nodes = list(c.nodes)
        nodes[i - 1], nodes[i] = i + 1, i
        return Clan(tuple(nodes))
    swapped = _swap(c, i)
    return swapped if swapped.length > c.length else c


def hecke_word(c: Clan, word) -> Clan:
    """s_{i_1} * (s_{i_2} * ... (s_{i_l} * c))."""
    for i in reversed(tuple(word)):
        c = hecke(c, i)
    return c


def weak_covers(c: Clan) -> list[tuple[int, Clan]]:
    out = []
    for i in range(1, c.n):
        d = hecke(c, i)
        if d.length > c.length:
            if d.length != c.length + 1:
                raise AssertionError(f"s_{i}*{c} raises length by {d.length - c.length}")
            out.append((i, d))
    return out


# --- strong order ----------------------------------------------------------

@lru_cache(maxsize=None)
def strong_stats(c: Clan):
    """(plus counts, minus counts, arc-spanning counts) for the strong order test.

    plus[i]  = #plus signs among nodes 1..i + #arcs inside 1..i
    minus[i] = #minus signs among nodes 1..i + #arcs inside 1..i
    span[i][j] = #arcs (s,t) with s <= i < j <= t
    """
    n = c.n
    plus = [0] * (n + 1)
    minus = [0] * (n + 1)
    for i in range(1, n + 1):
        a = c.nodes[i - 1]
        closes = 1 if isinstance(a, int) and a < i else 0
        plus[i] = plus[i - 1] + (a == PLUS) + closes
        minus[i] = minus[i - 1] + (a == MINUS) + closes
    span = {}
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            span[i, j] = sum(1 for s, t in c.arcs if s <= i and j <= t)
    return tuple(plus), tuple(minus), span


def strong_leq(g: Clan, t: Clan) -> bool:
    """g <= t in the closure (strong Bruhat) order on clans."""
    if (g.p, g.q) != (t.p, t.q):
        raise ValueError(f"parameter mismatch: {(g.p, g.q)} vs {(t.p, t.q)}")
    gp, gm, gs = strong_stats(g)
    tp, tm, ts = strong_stats(t)
    if any(a < b for a, b in zip(gp, tp)) or any(a < b for a, b in zip(gm, tm)):
        return False
    return all(gs[k] <= ts[k] for k in gs)


# --- patterns and transformations -----------------------------------------

SMOOTHNESS_PATTERNS = ("3+-.", "4+1..", "41.-.", "51.1..", "522...")


def contains_pattern(c: Clan, pat: Clan) -> bool:
    """True iff some node subsequence of c reads as pat.

    Selected signs must equal the pattern's signs, and a selected endpoint
    must have its partner selected at the position the pattern dictates.
    """
    k, n = pat.n, c.n
    if k == 0:
        return True
    if k > n:
        return False
    chosen = [0] * k

    def place(t: int, start: int) -> bool:
        if t == k:
            return True
        want = pat.nodes[t]
        for pos in range(start, n - (k - t) + 2):
            got = c.nodes[pos - 1]
            if want in (PLUS, MINUS):
                if got != want:
                    continue
            else:
                if not isinstance(got, int):
                    continue
                if want < t + 1:
                    # right endpoint: must close the arc opened at chosen[want-1]
                    if got != chosen[want - 1]:
                        continue
                elif got < pos:
                    continue
            chosen[t] = pos
            if place(t + 1, pos + 1):
                return True
        return False

    return place(0, 1)


def reverse_signs(c: Clan) -> Clan:
    flip = {PLUS: MINUS, MINUS: PLUS}
    return Clan(tuple(flip.get(a, a) if not isinstance(a, int) else a for a in c.nodes))


def rainbow(p: int, q: int) -> Clan:
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    n, m = p + q, min(p, q)
    sign = PLUS if p > q else MINUS
    nodes = [sign] * n
    for i in range(1, m + 1):
        nodes[i - 1], nodes[n - i] = n + 1 - i, i
    return Clan(tuple(nodes))


def partial_perm(c: Clan) -> list[int | None]:
    """w_gamma(i) = n+1-j for each arc (i, j); None at plus signs."""
    p, n = c.p, c.n
    ok = all(c.is_vertical(k) for k in range(1, p + 1)) and \
        all(not c.is_vertical(k) for k in range(p + 1, n + 1))
    if not ok:
        raise PartialPermUndefined(f"w_gamma undefined for this clan: {format(c)}")
    w: list[int | None] = [None] * p
    for i, j in c.arcs:
        w[i - 1] = n + 1 - j
    return w


def clan_matrix(c: Clan) -> list[list[int]]:
    """The n x n flag matrix: column i is e_{v(i)} (+ e_{v(j)} if i opens arc (i,j))."""
    n = c.n
    _, v = uv_perms(c)
    mat = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        mat[v(i) - 1][i - 1] = 1
        if c.is_left(i):
            mat[v(c.nodes[i - 1]) - 1][i - 1] += 1
    return mat


def matchless_with_v(w: Permutation, p: int) -> Clan:
    """The matchless clan whose node i is + iff w(i) <= p."""
    return Clan(tuple(PLUS if a <= p else MINUS for a in w.word))
