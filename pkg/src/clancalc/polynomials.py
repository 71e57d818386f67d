"""
Exact sparse polynomials in x_1..x_n, y_1..y_n with integer coefficients.

Monomials are packed into a single int, one byte per variable (x-block in
the low bytes, then the y-block), so monomial multiplication is integer
addition.  Exponents are limited to 127 per variable; the top bit of each
byte is a guard used for the divisibility test.
"""

from __future__ import annotations

import heapq
import re
from functools import cached_property

from .permutations import Permutation

__all__ = [
    "Polynomial", "NotDivisible", "x", "y", "const", "prod",
    "divided_difference", "localize", "is_symmetric_in",
    "reverse_y", "permute_y", "ExpansionTable", "expand_in_schubert",
    "expand_from_localizations", "schubert_coefficient", "NotInSchubertSpan",
]

BITS = 8
_FMASK = 0xFF
MAX_EXP = 127


class NotDivisible(ArithmeticError):
    """Raised when an exact division leaves a remainder."""


def _guard_mask(nvars: int) -> int:
    return int.from_bytes(bytes([0x80]) * nvars, "little")


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps packed monomial -> nonzero int."""

    __slots__ = ("n", "terms", "__dict__")

    def __init__(self, n: int, terms: dict[int, int] | None = None):
        self.n = n
        self.terms = {} if terms is None else terms

    # --- construction -----------------------------------------------------

    @classmethod
    def from_exponents(cls, n: int, items) -> Polynomial:
        """Build from ``{exponent tuple of length 2n: coeff}`` or pairs."""
        if isinstance(items, dict):
            items = items.items()
        terms: dict[int, int] = {}
        for exps, c in items:
            exps = tuple(exps)
            if len(exps) != 2 * n:
                raise ValueError(f"exponent vector must have length {2 * n}")
            if any(e < 0 or e > MAX_EXP for e in exps):
                raise ValueError(f"exponent out of range in {exps}")
            key = int.from_bytes(bytes(exps), "little")
            c = terms.get(key, 0) + int(c)
            if c:
                terms[key] = c
            else:
                terms.pop(key, None)
        return cls(n, terms)

    def _new(self, terms: dict[int, int]) -> Polynomial:
        return Polynomial(self.n, terms)

    # --- inspection -------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = const(self.n, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def exponents(self, key: int) -> tuple[int, ...]:
        return tuple(key.to_bytes(2 * self.n, "little"))

    def items(self):
        """(exponent tuple, coefficient) pairs, canonical order."""
        for key in self._sorted_keys():
            yield self.exponents(key), self.terms[key]

    @cached_property
    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(k.to_bytes(2 * self.n, "little")) for k in self.terms)

    def constant_term(self) -> int:
        return self.terms.get(0, 0)

    def uses_x(self) -> bool:
        xmask = (1 << (BITS * self.n)) - 1
        return any(k & xmask for k in self.terms)

    def variables(self) -> set[str]:
        names = set()
        for key in self.terms:
            for idx, e in enumerate(key.to_bytes(2 * self.n, "little")):
                if e:
                    names.add(_var_name(self.n, idx))
        return names

    # --- ring operations --------------------------------------------------

    def _check(self, other: Polynomial):
        if self.n != other.n:
            raise ValueError(f"ambient mismatch: n={self.n} vs n={other.n}")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, int):
            return const(self.n, other)
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for k, c in small.items():
            c += out.get(k, 0)
            if c:
                out[k] = c
            else:
                del out[k]
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            c = out.get(k, 0) - c
            if c:
                out[k] = c
            else:
                del out[k]
        return self._new(out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return self._new({})
            return self._new({k: c * other for k, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        if not self.terms or not other.terms:
            return self._new({})
        if self.degree + other.degree > MAX_EXP:
            raise OverflowError("degree exceeds packed exponent range")
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, int] = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return self._new({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = const(self.n, 1)
        for _ in range(e):
            result = result * self
        return result

    def exact_div(self, other: Polynomial) -> Polynomial:
        """Exact multivariate division; raises NotDivisible on a remainder."""
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        guard = _guard_mask(2 * self.n)
        lead = max(other.terms)
        lc = other.terms[lead]
        rest = [(k - lead, c) for k, c in other.terms.items() if k != lead]
        rem = dict(self.terms)
        heap = [-k for k in rem]
        heapq.heapify(heap)
        quot: dict[int, int] = {}
        while heap:
            k = -heapq.heappop(heap)
            c = rem.get(k)
            if not c:
                continue
            diff = (k | guard) - lead
            if diff & guard != guard:
                raise NotDivisible("leading monomial not divisible")
            qk = diff ^ guard
            qc, r = divmod(c, lc)
            if r:
                raise NotDivisible("leading coefficient not divisible")
            quot[qk] = qc
            del rem[k]
            for dk, dc in rest:
                m = qk + lead + dk
                v = rem.get(m, 0) - qc * dc
                if v:
                    if m not in rem:
                        heapq.heappush(heap, -m)
                    rem[m] = v
                else:
                    rem.pop(m, None)
        return self._new(quot)

    # --- substitutions ----------------------------------------------------

    def swap_vars(self, a: int, b: int) -> Polynomial:
        """Interchange the variables at byte positions a and b."""
        sa, sb = BITS * a, BITS * b
        out = {}
        for k, c in self.terms.items():
            ea = (k >> sa) & _FMASK
            eb = (k >> sb) & _FMASK
            out[k + ((eb - ea) << sa) + ((ea - eb) << sb)] = c
        return self._new(out)

    def relabel(self, mapping: list[int]) -> Polynomial:
        """Send the variable at byte position i to position mapping[i] (exponents add)."""
        nb = 2 * self.n
        out: dict[int, int] = {}
        for k, c in self.terms.items():
            src = k.to_bytes(nb, "little")
            dst = bytearray(nb)
            for i, e in enumerate(src):
                if e:
                    dst[mapping[i]] += e
            key = int.from_bytes(dst, "little")
            c += out.get(key, 0)
            if c:
                out[key] = c
            else:
                del out[key]
        return self._new(out)

    def divide_by_difference(self, a: int, b: int) -> Polynomial:
        """Exact division by (v_a - v_b), where v_i is the variable at byte i.

        Synthetic division in v_a with coefficients in the remaining
        variables; a nonzero remainder raises NotDivisible.
        """
        sa, sb = BITS * a, BITS * b
        clear = ~(_FMASK << sa)
        by_deg: dict[int, dict[int, int]] = {}
        for k, c in self.terms.items():
            by_deg.setdefault((k >> sa) & _FMASK, {})[k & clear] = c
        if not by_deg:
            return self._new({})
        top = max(by_deg)
        step = 1 << sb
        out: dict[int, int] = {}
        cur: dict[int, int] = {}
        # quotient coefficient of v_a^(d-1) is C_d + v_b * (coefficient of v_a^d)
        for d in range(top, 0, -1):
            nxt = {k + step: c for k, c in cur.items()}
            for k, c in by_deg.get(d, {}).items():
                c += nxt.get(k, 0)
                if c:
                    nxt[k] = c
                else:
                    nxt.pop(k, None)
            cur = nxt
            shift = (d - 1) << sa
            for k, c in cur.items():
                out[k + shift] = c
        remainder = {k + step: c for k, c in cur.items()}
        for k, c in by_deg.get(0, {}).items():
            c += remainder.get(k, 0)
            if c:
                remainder[k] = c
            else:
                remainder.pop(k, None)
        if remainder:
            raise NotDivisible(f"{_var_name(self.n, a)} - {_var_name(self.n, b)} does not divide")
        return self._new(out)

    def specialize_y_zero(self) -> Polynomial:
        ymask = ((1 << (BITS * self.n)) - 1) << (BITS * self.n)
        out: dict[int, int] = {}
        for k, c in self.terms.items():
            if not k & ymask:
                out[k] = c
        return self._new(out)

    # --- text -------------------------------------------------------------

    def _sorted_keys(self):
        nb = 2 * self.n

        def sort_key(k):
            e = k.to_bytes(nb, "little")
            return (-sum(e), tuple(-v for v in e))

        return sorted(self.terms, key=sort_key)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in self._sorted_keys():
            c = self.terms[key]
            mono = []
            for idx, e in enumerate(key.to_bytes(2 * self.n, "little")):
                if e == 1:
                    mono.append(_var_name(self.n, idx))
                elif e:
                    mono.append(f"{_var_name(self.n, idx)}^{e}")
            body = "*".join(mono)
            mag = abs(c)
            if not body:
                s = str(mag)
            elif mag == 1:
                s = body
            else:
                s = f"{mag}*{body}"
            if not parts:
                parts.append(s if c > 0 else "-" + s)
            else:
                parts.append(("+ " if c > 0 else "- ") + s)
        return " ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"Polynomial(n={self.n}, {self.to_text()!r})"

    def to_json(self) -> list[dict]:
        return [{"exps": list(e), "coeff": str(c)} for e, c in self.items()]

    @classmethod
    def from_json(cls, n: int, data) -> Polynomial:
        return cls.from_exponents(n, [(d["exps"], int(d["coeff"])) for d in data])

    @classmethod
    def parse(cls, n: int, text: str) -> Polynomial:
        """Parse expressions like ``"(y1 - y3)*(y2 - y4) + 2*x1^2"``.

        Accepts +, -, *, ^, parentheses, integers and variables x_i, y_i.
        """
        return _Parser(n, text).parse()


def _var_name(n: int, idx: int) -> str:
    return f"x{idx + 1}" if idx < n else f"y{idx - n + 1}"


def const(n: int, c: int) -> Polynomial:
    return Polynomial(n, {0: c} if c else {})


def x(n: int, i: int) -> Polynomial:
    if not 1 <= i <= n:
        raise ValueError(f"x{i} not in ambient n={n}")
    return Polynomial(n, {1 << (BITS * (i - 1)): 1})


def y(n: int, i: int) -> Polynomial:
    if not 1 <= i <= n:
        raise ValueError(f"y{i} not in ambient n={n}")
    return Polynomial(n, {1 << (BITS * (n + i - 1)): 1})


def prod(n: int, factors) -> Polynomial:
    result = const(n, 1)
    for f in factors:
        result = result * f
    return result


def divided_difference(f: Polynomial, i: int) -> Polynomial:
    """(f - s_i f) / (x_i - x_{i+1}), computed by exact synthetic division."""
    if not 1 <= i < f.n:
        raise ValueError(f"divided difference index {i} out of range for n={f.n}")
    g = f - f.swap_vars(i - 1, i)
    return g.divide_by_difference(i - 1, i)


def localize(f: Polynomial, w: Permutation) -> Polynomial:
    """Substitute x_i -> y_{w(i)}."""
    if w.n != f.n:
        raise ValueError(f"size mismatch: n={f.n} vs S_{w.n}")
    n = f.n
    nb = BITS * n
    targets = [a - 1 for a in w.word]
    out: dict[int, int] = {}
    for k, c in f.terms.items():
        dst = bytearray((k >> nb).to_bytes(n, "little"))
        for i, e in enumerate((k & ((1 << nb) - 1)).to_bytes(n, "little")):
            if e:
                dst[targets[i]] += e
        key = int.from_bytes(dst, "little") << nb
        c += out.get(key, 0)
        if c:
            out[key] = c
        else:
            del out[key]
    return Polynomial(n, out)


def permute_y(f: Polynomial, sigma) -> Polynomial:
    """Substitute y_k -> y_{sigma(k)} (sigma a Permutation or 1-based sequence)."""
    n = f.n
    word = sigma.word if isinstance(sigma, Permutation) else tuple(sigma)
    mapping = list(range(n)) + [n + word[k] - 1 for k in range(n)]
    return f.relabel(mapping)


def reverse_y(f: Polynomial) -> Polynomial:
    """Substitute y_k -> y_{n+1-k}."""
    return permute_y(f, range(f.n, 0, -1))


def is_symmetric_in(f: Polynomial, indices, block: str = "x") -> bool:
    """True iff f is invariant under swapping any two variables of the block in ``indices``."""
    offset = {"x": 0, "y": f.n}[block]
    idx = sorted(indices)
    for a, b in zip(idx, idx[1:]):
        if f.swap_vars(offset + a - 1, offset + b - 1) != f:
            return False
    return True


_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])(\d+)|(.))")


class _Parser:
    def __init__(self, n: int, text: str):
        self.n = n
        self.text = text
        self.tokens = []
        for m in _TOKEN.finditer(text):
            if m.group(1):
                self.tokens.append(("int", int(m.group(1))))
            elif m.group(2):
                self.tokens.append(("var", (m.group(2), int(m.group(3)))))
            elif m.group(4) and not m.group(4).isspace():
                self.tokens.append(("op", m.group(4)))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ValueError("empty polynomial text")
        result = self.expr()
        if self.pos != len(self.tokens):
            raise ValueError(f"unexpected token {self.peek()[1]!r} in {self.text!r}")
        return result

    def expr(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        result = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            result = result + t if op == "+" else result - t
        return result

    def term(self):
        result = self.power()
        while self.peek() == ("op", "*"):
            self.take()
            result = result * self.power()
        return result

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, e = self.take()
            if kind != "int":
                raise ValueError(f"bad exponent in {self.text!r}")
            base = base ** e
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return const(self.n, val)
        if kind == "var":
            name, i = val
            return x(self.n, i) if name == "x" else y(self.n, i)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError(f"unbalanced parentheses in {self.text!r}")
            return inner
        if (kind, val) == ("op", "-"):
            return -self.atom()
        raise ValueError(f"unexpected token {val!r} in {self.text!r}")


# --- Schubert expansion -----------------------------------------------------

class NotInSchubertSpan(ValueError):
    pass


class ExpansionTable:
    """Coefficients c_w(y) of f = sum_w c_w(y) S_w(x;y), keyed by permutation."""

    def __init__(self, n: int, coeffs: dict[Permutation, Polynomial] | None = None):
        self.n = n
        self.coeffs = {w: c for w, c in sorted((coeffs or {}).items()) if c}

    def __eq__(self, other):
        return isinstance(other, ExpansionTable) and self.n == other.n \
            and self.coeffs == other.coeffs

    def __getitem__(self, w: Permutation) -> Polynomial:
        return self.coeffs.get(w, const(self.n, 0))

    def __contains__(self, w):
        return w in self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def items(self):
        return self.coeffs.items()

    def keys(self):
        return self.coeffs.keys()

    def specialize_y_zero(self) -> dict[Permutation, int]:
        return {w: c.specialize_y_zero().constant_term() for w, c in self.coeffs.items()}

    def to_json(self) -> list[dict]:
        return [{"perm": list(w.word), "word": list(w.reduced_word()), "coeff": c.to_text()}
                for w, c in self.coeffs.items()]

    def __repr__(self):
        body = ", ".join(f"{w}: {c}" for w, c in self.coeffs.items())
        return f"ExpansionTable(n={self.n}, {{{body}}})"


def expand_from_localizations(n: int, local, support=None) -> ExpansionTable:
    """Schubert coefficients from the values ``local(v) = f|_v``.

    Permutations are processed by increasing length, so every w < v in
    Bruhat order is done before v:
    c_v = (f|_v - sum_{w<v} c_w S_w|_v) / S_v|_v.
    ``support`` restricts the computation to a Bruhat order ideal.
    """
    from .permutations import all_permutations, bruhat_leq
    from .schubert import schubert_cache

    sc = schubert_cache(n)
    perms = all_permutations(n) if support is None else sorted(support)
    found: dict[Permutation, Polynomial] = {}
    for v in perms:
        val = local(v)
        for w, c in found.items():
            if w.length < v.length and bruhat_leq(w, v):
                val = val - c * sc.localized(w, v)
        if not val:
            continue
        denom = sc.localized(v, v)
        if not denom:
            raise AssertionError(f"S_v|_v vanishes at {v}")
        try:
            found[v] = val.exact_div(denom)
        except NotDivisible:
            raise AssertionError(f"inexact interpolation step at {v}") from None
    return ExpansionTable(n, found)


def expand_in_schubert(f: Polynomial, n: int | None = None) -> ExpansionTable:
    from .schubert import double_schubert

    n = f.n if n is None else n
    if n != f.n:
        raise ValueError(f"size mismatch: n={n} vs polynomial in n={f.n}")
    table = expand_from_localizations(n, lambda v: localize(f, v))
    residual = f
    for w, c in table.items():
        residual = residual - c * double_schubert(w)
    if residual:
        raise NotInSchubertSpan("not in Schubert span: nonzero residual")
    return table


def schubert_coefficient(n: int, local, target: Permutation) -> Polynomial:
    """Coefficient of S_target, using only localizations at w <= target."""
    from .permutations import all_permutations, bruhat_leq

    ideal = [w for w in all_permutations(n) if bruhat_leq(w, target)]
    return expand_from_localizations(n, local, ideal)[target]
