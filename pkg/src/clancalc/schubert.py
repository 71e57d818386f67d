"""
Double Schubert polynomials and the orbit-closure representatives Upsilon.

S_w(x;y) is reached from a dominant permutation above w (w0 in general)
by divided differences.  Upsilon for a matchless clan is
S_u(x; reversed y) * S_v(x; y); other clans are obtained by pushing
divided differences up the weak order.
"""

from __future__ import annotations

import threading
from collections import deque

from . import clans as C
from .permutations import Permutation, longest
from .polynomials import (
    Polynomial, divided_difference, localize, prod, reverse_y, x, y,
)

__all__ = [
    "SchubertCache", "UpsilonCache", "double_schubert", "partial_schubert",
    "complete_partial_perm", "upsilon", "upsilon_cache", "schubert_cache",
    "lehmer_code", "is_dominant", "upsilon_localization", "schubert_from_word",
]


def lehmer_code(w: Permutation) -> tuple[int, ...]:
    word = w.word
    return tuple(sum(1 for b in word[i + 1:] if b < a) for i, a in enumerate(word))


def is_dominant(w: Permutation) -> bool:
    code = lehmer_code(w)
    return all(a >= b for a, b in zip(code, code[1:]))


def _dominant_product(w: Permutation) -> Polynomial:
    n = w.n
    return prod(n, (x(n, i) - y(n, j)
                    for i, c in enumerate(lehmer_code(w), 1) for j in range(1, c + 1)))


class SchubertCache:
    """Memoized S_w(x;y) for w in S_n.

    Each entry is computed from S_{w s_i} for an ascent i of w, stopping at
    dominant permutations whose polynomial is a product of linear factors.
    For inverse Grassmannian w the ascent is chosen so the chain stays
    inside the inverse Grassmannian set, which keeps polynomials small.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self._table: dict[Permutation, Polynomial] = {}
        self._local: dict[tuple[Permutation, Permutation], Polynomial] = {}
        self._lock = threading.Lock()

    def __len__(self):
        return len(self._table)

    def __contains__(self, w):
        return w in self._table

    def _next_up(self, w: Permutation) -> int:
        word = w.word
        n = self.n
        inv = w.inverse.word
        inv_desc = [k for k in range(1, n) if inv[k - 1] > inv[k]]
        if len(inv_desc) <= 1:
            p = inv_desc[0] if inv_desc else None
            for i in range(1, n):
                a, b = word[i - 1], word[i]
                if a < b and (p is None or a <= p < b):
                    return i
        for i in range(1, n):
            if word[i - 1] < word[i]:
                return i
        raise AssertionError("w0 has no ascent")

    def get(self, w: Permutation) -> Polynomial:
        if w.n != self.n:
            raise ValueError(f"size mismatch: S_{w.n} vs cache for n={self.n}")
        hit = self._table.get(w)
        if hit is not None:
            return hit
        chain = []
        cur = w
        while cur not in self._table and not is_dominant(cur):
            i = self._next_up(cur)
            chain.append((cur, i))
            cur = cur.right_mul_simple(i)
        poly = self._table.get(cur)
        if poly is None:
            poly = _dominant_product(cur)
            self._store(cur, poly)
        for perm, i in reversed(chain):
            poly = divided_difference(poly, i)
            self._store(perm, poly)
        return poly

    def localized(self, w: Permutation, v: Permutation) -> Polynomial:
        """S_w|_v, memoized."""
        key = (w, v)
        hit = self._local.get(key)
        if hit is None:
            hit = self._local.setdefault(key, localize(self.get(w), v))
        return hit

    def _store(self, w, poly):
        with self._lock:
            self._table.setdefault(w, poly)

    __getitem__ = get


_SCHUBERT: dict[int, SchubertCache] = {}


def schubert_cache(n: int) -> SchubertCache:
    cache = _SCHUBERT.get(n)
    if cache is None:
        cache = _SCHUBERT.setdefault(n, SchubertCache(n))
    return cache


def double_schubert(w: Permutation) -> Polynomial:
    return schubert_cache(w.n).get(w)


def schubert_from_word(n: int, word) -> Polynomial:
    """S_w obtained from S_{w0} by applying the divided differences of ``word`` in order.

    With word = (i_1, ..., i_k) reduced for w^{-1} w0 read right-to-left, the
    result is S_w; used to check independence of the chosen word.
    """
    poly = _dominant_product(longest(n))
    for i in word:
        poly = divided_difference(poly, i)
    return poly


# --- partial permutations -------------------------------------------------

def complete_partial_perm(pm, p: int, q: int) -> Permutation:
    """Minimal-length permutation of S_{p+q} whose top-left p x q block is pm.

    Undefined positions among 1..p receive q+1, q+2, ... in increasing
    order (so the block stays a partial permutation matrix); positions
    p+1..n then receive the remaining values in increasing order.
    """
    n = p + q
    if len(pm) != p:
        raise ValueError(f"partial map must have {p} entries")
    used = [a for a in pm if a is not None]
    if len(set(used)) != len(used):
        raise ValueError("partial map is not injective")
    if any(not 1 <= a <= q for a in used):
        raise ValueError(f"partial map values must lie in 1..{q}")
    big = iter(range(q + 1, n + 1))
    word = [a if a is not None else next(big) for a in pm]
    word += sorted(set(range(1, n + 1)) - set(word))
    return Permutation(word)


def partial_schubert(pm, p: int, q: int) -> Polynomial:
    """S_w(x_1..x_p; y_1..y_q) for the partial permutation pm (ambient n = p+q)."""
    w = complete_partial_perm(pm, p, q)
    poly = double_schubert(w)
    n = p + q
    allowed = {f"x{i}" for i in range(1, p + 1)} | {f"y{j}" for j in range(1, q + 1)}
    extra = poly.variables() - allowed
    if extra:
        raise AssertionError(f"completion {w} uses variables {sorted(extra)}")
    assert poly.n == n
    return poly


# --- Upsilon ----------------------------------------------------------------

def _matchless_base(c: C.Clan) -> Polynomial:
    u, v = C.uv_perms(c)
    return reverse_y(double_schubert(u)) * double_schubert(v)


class UpsilonCache:
    """All Upsilon_gamma for one (p, q), filled by BFS up the weak order.

    With ``check_paths`` every weak cover into an already-computed clan is
    recomputed and compared, which certifies path independence.
    """

    def __init__(self, p: int, q: int, check_paths: bool = False):
        self.p, self.q = p, q
        self.table: dict[C.Clan, Polynomial] = {}
        self.paths_checked = 0
        clans = C.enumerate_clans(p, q)
        queue = deque()
        for c in clans:
            if c.is_matchless:
                self.table[c] = _matchless_base(c)
                queue.append(c)
        while queue:
            c = queue.popleft()
            f = self.table[c]
            for i, d in C.weak_covers(c):
                g = divided_difference(f, i)
                known = self.table.get(d)
                if known is None:
                    self.table[d] = g
                    queue.append(d)
                elif check_paths:
                    if known != g:
                        raise AssertionError(f"Upsilon of {d} depends on the path (via s_{i} from {c})")
                    self.paths_checked += 1
        if len(self.table) != len(clans):
            missing = [C.format(c) for c in clans if c not in self.table]
            raise AssertionError(f"clans unreachable from matchless ones: {missing[:5]}")

    def __getitem__(self, c: C.Clan) -> Polynomial:
        return self.table[c]


_UPSILON: dict[tuple[int, int], UpsilonCache] = {}


def upsilon_cache(p: int, q: int) -> UpsilonCache:
    cache = _UPSILON.get((p, q))
    if cache is None:
        cache = _UPSILON.setdefault((p, q), UpsilonCache(p, q))
    return cache


def upsilon(c: C.Clan) -> Polynomial:
    return upsilon_cache(c.p, c.q)[c]


# --- localizations without the full polynomial ----------------------------

class _LocalizationRecursion:
    """Upsilon_gamma|_w computed purely in the y variables.

    For a weak cover s_i*g = d the identity
    Upsilon_d|_w = (Upsilon_g|_w - Upsilon_g|_{w s_i}) / (y_{w(i)} - y_{w(i+1)})
    reduces everything to matchless clans, where the localization is a
    product of two localized inverse Grassmannian Schubert polynomials.
    """

    def __init__(self, p: int, q: int):
        self.p, self.q, self.n = p, q, p + q
        self.parent: dict[C.Clan, tuple[C.Clan, int]] = {}
        queue = deque(c for c in C.enumerate_clans(p, q) if c.is_matchless)
        seen = set(queue)
        while queue:
            c = queue.popleft()
            for i, d in C.weak_covers(c):
                if d not in seen:
                    seen.add(d)
                    self.parent[d] = (c, i)
                    queue.append(d)
        self._memo: dict[tuple[C.Clan, Permutation], Polynomial] = {}
        self._base: dict[Permutation, Polynomial] = {}
        self._rbase: dict[Permutation, Polynomial] = {}

    def value(self, c: C.Clan, w: Permutation) -> Polynomial:
        key = (c, w)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if c.is_matchless:
            u, v = C.uv_perms(c)
            ru = self._rbase.get(u)
            if ru is None:
                ru = self._rbase[u] = reverse_y(double_schubert(u))
            sv = self._base.get(v)
            if sv is None:
                sv = self._base[v] = double_schubert(v)
            val = localize(ru, w) * localize(sv, w)
        else:
            g, i = self.parent[c]
            ws = w.right_mul_simple(i)
            diff = self.value(g, w) - self.value(g, ws)
            n = self.n
            val = diff.divide_by_difference(n + w(i) - 1, n + w(i + 1) - 1)
        self._memo[key] = val
        return val


_LOCREC: dict[tuple[int, int], _LocalizationRecursion] = {}


def upsilon_localization(c: C.Clan, w: Permutation) -> Polynomial:
    """Upsilon_gamma|_w without materializing Upsilon_gamma(x;y)."""
    rec = _LOCREC.get((c.p, c.q))
    if rec is None:
        rec = _LOCREC.setdefault((c.p, c.q), _LocalizationRecursion(c.p, c.q))
    return rec.value(c, w)
