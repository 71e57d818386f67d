from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st

from clancalc import clans as C
from clancalc.permutations import Permutation, bruhat_leq, identity

from conftest import clans_up_to

RUNNING = "6-84+-..-+."


def P(*word):
    return Permutation(list(word))


# --- parse / format ---------------------------------------------------------

def test_parse_running_example():
    c = C.parse(RUNNING)
    assert c.arcs == ((1, 7), (3, 11), (4, 8))
    assert [k for k in range(1, 12) if c.nodes[k - 1] == "-"] == [2, 6, 9]
    assert [k for k in range(1, 12) if c.nodes[k - 1] == "+"] == [5, 10]
    assert (c.p, c.q) == (5, 6)


def test_parse_small_and_parenthesized():
    c = C.parse("+-")
    assert (c.p, c.q) == (1, 1) and c.is_matchless
    r = C.parse("(11)9753--.....")
    assert r.arcs == ((1, 12), (2, 11), (3, 10), (4, 9), (5, 8))
    assert (r.p, r.q) == (5, 7)
    assert r.nodes[5] == r.nodes[6] == "-"


@pytest.mark.parametrize("bad", ["3+.", "1", "1..", "+x-", "2+-", "(0).", "1.(2"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        C.parse(bad)


def test_format_examples():
    assert C.format(C.parse(RUNNING)) == RUNNING
    assert C.format(C.rainbow(2, 2)) == "31.."
    assert C.format(C.parse("++--")) == "++--"
    assert C.format(C.rainbow(5, 7)) == "(11)9753--....."


@pytest.mark.parametrize("pq", [(1, 1), (2, 2), (3, 2), (2, 4), (3, 3)])
def test_format_round_trip(pq):
    for c in C.enumerate_clans(*pq):
        assert C.parse(C.format(c)) == c


def _double_factorial(k):
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def _closed_form(p, q):
    n = p + q
    return sum(comb(n, 2 * m) * _double_factorial(2 * m - 1) * comb(n - 2 * m, p - m)
               for m in range(min(p, q) + 1))


# --- enumeration --------------------------------------------------------------

def test_enumerate_small():
    assert [C.format(c) for c in C.enumerate_clans(1, 1)] == ["+-", "-+", "1."]
    two = C.enumerate_clans(2, 2)
    assert len(two) == 21
    assert [sum(1 for c in two if len(c.arcs) == m) for m in range(3)] == [6, 12, 3]
    # six (1,2)-clans; see the decisions ledger
    assert sorted(C.format(c) for c in C.enumerate_clans(1, 2)) == \
        sorted(["+--", "-+-", "--+", "-1.", "1.-", "2-."])


@pytest.mark.parametrize("p,q", [(p, q) for p in range(1, 6) for q in range(1, 6) if p + q <= 8])
def test_enumerate_count_matches_formula(p, q):
    cs = C.enumerate_clans(p, q)
    assert len(cs) == len(set(cs)) == _closed_form(p, q) == C.count_clans(p, q)
    assert all((c.p, c.q) == (p, q) for c in cs)
    assert list(cs) == sorted(cs, key=C.Clan.sort_key)


# --- u, v, lambda, length ---------------------------------------------------

def test_uv_examples():
    u, v = C.uv_perms(C.parse(RUNNING))
    assert u == P(1, 2, 3, 4, 7, 5, 8, 9, 6, 10, 11)
    assert v == P(1, 6, 2, 3, 4, 7, 8, 9, 10, 5, 11)
    u, v = C.uv_perms(C.parse("++--"))
    assert v.is_identity() and u == P(3, 4, 1, 2)
    u, v = C.uv_perms(C.parse("22.."))
    assert u.is_identity() and v.is_identity()


def test_uv_inverse_grassmannian():
    from clancalc.permutations import is_inverse_grassmannian
    for c in clans_up_to(6):
        u, v = C.uv_perms(c)
        assert is_inverse_grassmannian(u, c.q)
        assert is_inverse_grassmannian(v, c.p)


def test_young_diagram_examples():
    lam = C.young_diagram(C.parse("22.."))
    assert lam.rows == (2, 2) and lam.complement() == []
    lam = C.young_diagram(C.parse(RUNNING))
    assert lam.rows == (6, 5, 5, 5, 1)
    assert sorted(lam.complement()) == [(2, 6), (3, 6), (4, 6), (5, 2), (5, 3), (5, 4), (5, 5), (5, 6)]
    lam = C.young_diagram(C.parse("+-+-"))
    assert lam.rows == (2, 1) and lam.complement() == [(2, 2)]


def test_full_diagram_iff_v_identity():
    for c in clans_up_to(6):
        lam = C.young_diagram(c)
        assert lam.size + len(lam.complement()) == c.p * c.q
        assert list(lam.rows) == sorted(lam.rows, reverse=True)
        assert lam.is_full() == C.uv_perms(c)[1].is_identity()


def test_length_examples():
    assert all(c.length == 0 for c in C.enumerate_clans(2, 3) if c.is_matchless)
    assert C.clan_length(C.parse("1.+1.")) == 2
    assert C.clan_length(C.parse("22..")) == 3
    assert C.crossings(C.parse("22..")) == 1


# --- 0-Hecke action -------------------------------------------------------------

def test_hecke_examples():
    g = C.parse("1.+1.")
    assert C.format(C.hecke(g, 3)) == "1.2+."
    assert C.format(C.hecke(C.parse("+-+-"), 1)) == "1.+-"
    assert C.hecke(g, 1) == g
    for bad in (0, 5):
        with pytest.raises(ValueError):
            C.hecke(g, bad)


def test_hecke_word_examples():
    g = C.parse("1.+1.")
    assert C.hecke_word(g, ()) == g
    assert C.format(C.hecke_word(g, (2, 3, 2))) == "33+.."
    assert C.format(C.hecke_word(g, (3, 2))) == "3+2.."


def test_weak_cover_examples():
    fmt = lambda c: sorted((i, C.format(d)) for i, d in C.weak_covers(C.parse(c)))
    assert fmt("1.+1.") == [(2, "2+.1."), (3, "1.2+.")]
    assert fmt("31..") == []
    assert fmt("++--") == [(2, "+1.-")]


def test_hecke_never_decreases_length_and_covers_add_one():
    for c in clans_up_to(6):
        for i in range(1, c.n):
            assert C.hecke(c, i).length >= c.length
        for _, d in C.weak_covers(c):
            assert d.length == c.length + 1


def test_zero_hecke_relations():
    # exhaustive for p+q <= 6; also part of acceptance criterion 8
    for c in clans_up_to(6):
        n = c.n
        for i in range(1, n):
            si = C.hecke(c, i)
            assert C.hecke(si, i) == si
            for j in range(i + 2, n):
                assert C.hecke(C.hecke(c, j), i) == C.hecke(si, j)
            if i + 1 < n:
                assert C.hecke_word(c, (i, i + 1, i)) == C.hecke_word(c, (i + 1, i, i + 1))


# --- strong order -------------------------------------------------------------

def test_strong_examples():
    assert C.strong_leq(C.parse("1.1."), C.parse("22.."))
    a, b = C.parse("3+-."), C.parse("3-+.")
    assert not C.strong_leq(a, b) and not C.strong_leq(b, a)
    for c in C.enumerate_clans(2, 2):
        assert C.strong_leq(c, c)
    with pytest.raises(ValueError):
        C.strong_leq(C.parse("+-"), C.parse("+--"))


def test_weak_covers_are_strong_covers():
    for c in clans_up_to(6):
        for _, d in C.weak_covers(c):
            assert C.strong_leq(c, d) and not C.strong_leq(d, c)


def test_strong_statistics_match_uv_bruhat():
    for n in range(2, 7):
        for p in range(1, n):
            cs = C.enumerate_clans(p, n - p)
            uv = {c: C.uv_perms(c) for c in cs}
            stats = {c: C.strong_stats(c) for c in cs}
            for g in cs:
                for t in cs:
                    plus_ge = all(a >= b for a, b in zip(stats[g][0], stats[t][0]))
                    minus_ge = all(a >= b for a, b in zip(stats[g][1], stats[t][1]))
                    assert plus_ge == bruhat_leq(uv[t][0], uv[g][0])
                    assert minus_ge == bruhat_leq(uv[t][1], uv[g][1])


def test_matching_opposite_signs_goes_up():
    for c in clans_up_to(6):
        for i in range(1, c.n + 1):
            for j in range(i + 1, c.n + 1):
                if c.nodes[i - 1] == "+" and c.nodes[j - 1] == "-":
                    nodes = list(c.nodes)
                    nodes[i - 1], nodes[j - 1] = j, i
                    assert C.strong_leq(c, C.Clan(tuple(nodes)))


def test_nested_one_arc_clans_are_ordered():
    for n in range(2, 7):
        for p in range(1, n):
            one_arc = [c for c in C.enumerate_clans(p, n - p) if len(c.arcs) == 1]
            for g, t in combinations(one_arc, 2):
                if C.uv_perms(g)[1] != C.uv_perms(t)[1]:
                    continue
                (i1, j1), = t.arcs
                (i2, j2), = g.arcs
                if i1 <= i2 <= j2 <= j1:
                    assert C.strong_leq(g, t)
                if i2 <= i1 <= j1 <= j2:
                    assert C.strong_leq(t, g)


# --- patterns, signs, rainbow ---------------------------------------------------

def test_pattern_examples():
    c = C.parse(RUNNING)
    assert C.contains_pattern(c, C.parse("41.-."))
    assert not C.contains_pattern(c, C.parse("4+1.."))
    assert C.contains_pattern(c, C.Clan(()))
    assert C.contains_pattern(c, c)
    assert not C.contains_pattern(C.parse("22.."), C.parse("3+-."))
    assert C.contains_pattern(C.parse("3+-."), C.parse("3+-."))


def test_pattern_single_arc_needs_partner():
    # "1." needs two adjacent-in-subsequence matched nodes: any arc works
    assert C.contains_pattern(C.parse("3+-."), C.parse("1."))
    assert not C.contains_pattern(C.parse("+-+-"), C.parse("1."))
    assert C.contains_pattern(C.parse("22.."), C.parse("1."))
    assert not C.contains_pattern(C.parse("31.."), C.parse("1.1."))


def test_reverse_signs():
    assert C.format(C.reverse_signs(C.parse("+-"))) == "-+"
    assert C.format(C.reverse_signs(C.parse("1.+1."))) == "1.-1."
    for c in clans_up_to(5):
        r = C.reverse_signs(c)
        assert (r.p, r.q) == (c.q, c.p)
        assert C.reverse_signs(r) == c


def test_rainbow():
    assert C.format(C.rainbow(1, 1)) == "1."
    assert C.format(C.rainbow(3, 1)) == "3++."
    for p in range(1, 5):
        for q in range(1, 5):
            r = C.rainbow(p, q)
            assert (r.p, r.q) == (p, q)
            # the rainbow is the unique maximal clan
            assert not C.weak_covers(r)
            assert r.length == max(c.length for c in C.enumerate_clans(p, q))


# --- w_gamma and the flag matrix -------------------------------------------------

def test_partial_perm():
    assert C.partial_perm(C.parse("31..")) == [1, 2]
    assert C.partial_perm(C.parse("22..")) == [2, 1]
    assert C.partial_perm(C.parse("+1.-")) == [None, 2]
    with pytest.raises(C.PartialPermUndefined, match="w_gamma undefined"):
        C.partial_perm(C.parse(RUNNING))


MATRIX_ROWS = [
    "10000000000", "00100000000", "00010000000", "00001000000", "00000000010",
    "01000000000", "00000100000", "10000010000", "00010001000", "00000000100",
    "00100000001",
]


def test_clan_matrix_running_example():
    assert C.clan_matrix(C.parse(RUNNING)) == [[int(ch) for ch in row] for row in MATRIX_ROWS]


def test_clan_matrix_simple_cases():
    assert C.clan_matrix(C.parse("1.")) == [[1, 0], [1, 1]]
    for c in C.enumerate_clans(2, 3):
        if c.is_matchless:
            v = C.uv_perms(c)[1]
            assert C.clan_matrix(c) == [[int(v(j) == i) for j in range(1, 6)] for i in range(1, 6)]


def _det(m):
    m = [row[:] for row in m]
    n, sign, det = len(m), 1, 1
    from fractions import Fraction
    m = [[Fraction(a) for a in row] for row in m]
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k]), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        det *= m[k][k]
        for r in range(k + 1, n):
            f = m[r][k] / m[k][k]
            m[r] = [a - f * b for a, b in zip(m[r], m[k])]
    return sign * det


def test_clan_matrix_unimodular():
    for c in clans_up_to(5):
        assert abs(_det(C.clan_matrix(c))) == 1


# --- hypothesis -------------------------------------------------------------------

@st.composite
def clans(draw, max_n=7):
    n = draw(st.integers(2, max_n))
    p = draw(st.integers(1, n - 1))
    cs = C.enumerate_clans(p, n - p)
    return cs[draw(st.integers(0, len(cs) - 1))]


@given(clans())
def test_hypothesis_round_trip_and_matchless_base(c):
    assert C.parse(C.format(c)) == c
    if c.is_matchless:
        assert C.matchless_with_v(C.uv_perms(c)[1], c.p) == c


@given(clans(), st.lists(st.integers(1, 6), max_size=8))
def test_hypothesis_hecke_word_monotone(c, word):
    word = [i for i in word if i < c.n]
    d = C.hecke_word(c, word)
    assert d.length >= c.length
    assert C.strong_leq(c, d)
    assert (d.p, d.q) == (c.p, c.q)


def test_identity_v_clan_exists_for_every_shape():
    for p in range(1, 4):
        for q in range(1, 4):
            assert any(C.uv_perms(c)[1] == identity(p + q) for c in C.enumerate_clans(p, q))
