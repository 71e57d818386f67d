"""
Checks of the localization formulas for orbit closures Y_gamma.

Every function here compares two independently computed exact
polynomials.  Nothing is approximate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import bpd as B
from . import clans as C
from .permutations import Permutation, all_permutations, identity, longest, reduced_word
from .polynomials import (
    ExpansionTable, Polynomial, expand_in_schubert, localize, prod,
    reverse_y, y,
)
from .schubert import schubert_cache, upsilon, upsilon_localization

__all__ = [
    "CurveSpec", "SmoothnessReport", "CheckResult", "theorem_a_check",
    "theorem_b_coeffs", "theorem_b_interpolation", "theorem_b_localization",
    "theorem_c_check", "curve_in_orbit", "curves", "curves_not_in",
    "smoothness_report", "upsilon_at", "complement_product", "coefficient_via_dd",
]


@dataclass(frozen=True)
class CheckResult:
    lhs: Polynomial
    rhs: Polynomial

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def __iter__(self):
        return iter((self.lhs, self.rhs, self.equal))


def upsilon_at(c: C.Clan, w: Permutation, method: str = "full") -> Polynomial:
    """Upsilon_gamma|_w, from the full polynomial or the y-only recursion."""
    if method == "full":
        return localize(upsilon(c), w)
    if method == "recursive":
        return upsilon_localization(c, w)
    raise ValueError(f"unknown method {method!r}")


def complement_product(c: C.Clan) -> Polynomial:
    """prod over cells (i,j) of the p x q box outside lambda of (y_{n-j+1} - y_i)."""
    n = c.n
    return prod(n, (y(n, n - j + 1) - y(n, i) for i, j in C.young_diagram(c).complement()))


def theorem_a_check(c: C.Clan, method: str = "full") -> CheckResult:
    _, v = C.uv_perms(c)
    lhs = upsilon_at(c, v, method)
    rhs = B.clan_polynomial(c) * complement_product(c)
    return CheckResult(lhs, rhs)


# --- expansion coefficients -------------------------------------------------

def theorem_b_coeffs(c: C.Clan) -> ExpansionTable:
    """c_{gamma,w} = clan polynomial of w*gamma when v_{w*gamma} = id and lengths add."""
    n = c.n
    out = {}
    for w in all_permutations(n):
        g = C.hecke_word(c, reduced_word(w))
        if g.length - c.length != w.length:
            continue
        if not C.uv_perms(g)[1].is_identity():
            continue
        out[w] = B.clan_polynomial(g)
    return ExpansionTable(n, out)


def theorem_b_interpolation(c: C.Clan) -> ExpansionTable:
    return expand_in_schubert(upsilon(c), c.n)


def theorem_b_localization(c: C.Clan) -> ExpansionTable:
    """Upsilon_{w*gamma}|_id for every w with l(w*gamma) = l(gamma) + l(w)."""
    n = c.n
    ident = identity(n)
    out = {}
    for w in all_permutations(n):
        g = C.hecke_word(c, reduced_word(w))
        if g.length - c.length == w.length:
            out[w] = localize(upsilon(g), ident)
    return ExpansionTable(n, out)


def coefficient_via_dd(n: int, local, target: Permutation) -> Polynomial:
    """Coefficient of S_target in f, as (d_target f)|_{x=y}, from localizations of f.

    Uses (d_i g)|_w = (g|_w - g|_{w s_i}) / (y_{w(i)} - y_{w(i+1)}); valid even
    when f involves Schubert polynomials outside S_n.
    """
    word = reduced_word(target)
    memo: dict[tuple[int, Permutation], Polynomial] = {}

    def value(k: int, w: Permutation) -> Polynomial:
        if k == len(word):
            return local(w)
        key = (k, w)
        hit = memo.get(key)
        if hit is None:
            i = word[k]
            diff = value(k + 1, w) - value(k + 1, w.right_mul_simple(i))
            hit = diff.divide_by_difference(n + w(i) - 1, n + w(i + 1) - 1)
            memo[key] = hit
        return hit

    return value(0, identity(n))


def theorem_c_check(c: C.Clan, v: Permutation) -> CheckResult:
    """Coefficient of S_{w0 v_gamma} in S_{u_gamma} S_v against c_{gamma, w0 v}(reversed y)."""
    if not c.is_noncrossing:
        raise ValueError(f"clan {C.format(c)} has crossing arcs")
    n = c.n
    if v.n != n:
        raise ValueError(f"size mismatch: S_{v.n} vs clan on {n} nodes")
    u_g, v_g = C.uv_perms(c)
    w0 = longest(n)
    sc = schubert_cache(n)

    def local(w):
        return sc.localized(u_g, w) * sc.localized(v, w)

    lhs = coefficient_via_dd(n, local, w0 * v_g)
    rhs = reverse_y(_theorem_b_cached(c)[w0 * v])
    return CheckResult(lhs, rhs)


_B_CACHE: dict[C.Clan, ExpansionTable] = {}


def _theorem_b_cached(c: C.Clan) -> ExpansionTable:
    hit = _B_CACHE.get(c)
    if hit is None:
        hit = _B_CACHE[c] = theorem_b_coeffs(c)
    return hit


# --- T-stable curves --------------------------------------------------------

@dataclass(frozen=True)
class CurveSpec:
    v: Permutation
    a: int
    b: int
    weight: Polynomial = field(compare=False)

    @property
    def end(self) -> Permutation:
        return self.v.right_mul_transposition(self.a, self.b)

    def weight_indices(self) -> tuple[int, int]:
        return self.v(self.a), self.v(self.b)


def curves(c: C.Clan) -> list[CurveSpec]:
    """All T-stable curves through the fixed point v_gamma."""
    _, v = C.uv_perms(c)
    n = c.n
    return [CurveSpec(v, a, b, y(n, v(a)) - y(n, v(b)))
            for a in range(1, n) for b in range(a + 1, n + 1)]


def curve_in_orbit(c: C.Clan, a: int, b: int) -> bool:
    n, p = c.n, c.p
    if not 1 <= a < b <= n:
        raise ValueError(f"need 1 <= a < b <= {n}, got a={a}, b={b}")
    _, v = C.uv_perms(c)
    va, vb = v(a), v(b)
    if (va <= p) == (vb <= p):
        return True
    if va <= p < vb:
        return any(i <= a and b <= j for i, j in c.arcs)
    return False


def curves_not_in(c: C.Clan) -> list[CurveSpec]:
    return [cv for cv in curves(c) if not curve_in_orbit(c, cv.a, cv.b)]


@dataclass(frozen=True)
class SmoothnessReport:
    clan: C.Clan
    unique_bpd: bool
    avoids_patterns: bool
    localization_matches_product: bool

    @property
    def consistent(self) -> bool:
        return self.unique_bpd == self.avoids_patterns == self.localization_matches_product

    def to_json(self) -> dict:
        return {
            "clan": C.format(self.clan),
            "unique_bpd": self.unique_bpd,
            "avoids_patterns": self.avoids_patterns,
            "localization_matches_product": self.localization_matches_product,
            "consistent": self.consistent,
        }


def smoothness_report(c: C.Clan, method: str = "recursive") -> SmoothnessReport:
    n = c.n
    frags = B.enumerate(c)
    avoids = not any(C.contains_pattern(c, C.parse(pat)) for pat in C.SMOOTHNESS_PATTERNS)
    _, v = C.uv_perms(c)
    local = upsilon_at(c, v, method)
    curve_prod = prod(n, (cv.weight for cv in curves_not_in(c)))
    return SmoothnessReport(c, len(frags) == 1, avoids, local == curve_prod)
