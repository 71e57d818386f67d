"""
Permutations of {1, ..., n} in one-line notation.

>>> w = Permutation((2, 1, 3))
>>> w * Permutation((1, 3, 2))
Permutation(2, 3, 1)
>>> longest(3).reduced_word()
(1, 2, 1)
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from itertools import permutations as _itertools_permutations

__all__ = [
    "Permutation", "identity", "longest", "simple", "transposition",
    "compose", "bruhat_leq", "reduced_word", "is_inverse_grassmannian",
    "from_word", "all_permutations", "parse_permutation",
]


class Permutation:
    """A permutation w of {1..n}; ``word[i-1] == w(i)``."""

    __slots__ = ("word", "_hash", "__dict__")

    def __init__(self, word):
        word = tuple(int(a) for a in word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"not a permutation of 1..{len(word)}: {word}")
        self.word = word
        self._hash = hash(word)

    @classmethod
    def _trusted(cls, word: tuple[int, ...]) -> Permutation:
        obj = cls.__new__(cls)
        obj.word = word
        obj._hash = hash(word)
        return obj

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self):
        return iter(self.word)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.word == other.word

    def __hash__(self):
        return self._hash

    def __lt__(self, other: Permutation) -> bool:
        # total order used for deterministic output, not Bruhat
        return (self.length, self.word) < (other.length, other.word)

    def __repr__(self):
        return "Permutation(" + ", ".join(map(str, self.word)) + ")"

    def __str__(self):
        return ",".join(map(str, self.word))

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    @cached_property
    def length(self) -> int:
        w = self.word
        return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])

    @cached_property
    def inverse(self) -> Permutation:
        inv = [0] * len(self.word)
        for i, a in enumerate(self.word, 1):
            inv[a - 1] = i
        return Permutation._trusted(tuple(inv))

    def right_mul_simple(self, i: int) -> Permutation:
        """w s_i: swap positions i and i+1."""
        w = list(self.word)
        w[i - 1], w[i] = w[i], w[i - 1]
        return Permutation._trusted(tuple(w))

    def left_mul_simple(self, i: int) -> Permutation:
        """s_i w: swap values i and i+1."""
        return Permutation._trusted(tuple(
            i + 1 if a == i else i if a == i + 1 else a for a in self.word))

    def right_mul_transposition(self, a: int, b: int) -> Permutation:
        """w t_ab: swap positions a and b."""
        w = list(self.word)
        w[a - 1], w[b - 1] = w[b - 1], w[a - 1]
        return Permutation._trusted(tuple(w))

    def has_right_descent(self, i: int) -> bool:
        return self.word[i - 1] > self.word[i]

    def reduced_word(self) -> tuple[int, ...]:
        return reduced_word(self)

    def is_identity(self) -> bool:
        return all(a == i for i, a in enumerate(self.word, 1))


def identity(n: int) -> Permutation:
    if n < 1:
        raise ValueError("n must be positive")
    return Permutation._trusted(tuple(range(1, n + 1)))


def longest(n: int) -> Permutation:
    if n < 1:
        raise ValueError("n must be positive")
    return Permutation._trusted(tuple(range(n, 0, -1)))


def simple(n: int, i: int) -> Permutation:
    if not 1 <= i < n:
        raise ValueError(f"s_{i} is not defined in S_{n}")
    return identity(n).right_mul_simple(i)


def transposition(n: int, a: int, b: int) -> Permutation:
    if not (1 <= a <= n and 1 <= b <= n) or a == b:
        raise ValueError(f"bad transposition ({a},{b}) in S_{n}")
    return identity(n).right_mul_transposition(a, b)


def compose(u: Permutation, v: Permutation) -> Permutation:
    """(u v)(i) = u(v(i))."""
    if u.n != v.n:
        raise ValueError(f"size mismatch: S_{u.n} vs S_{v.n}")
    uw = u.word
    return Permutation._trusted(tuple(uw[a - 1] for a in v.word))


def from_word(n: int, letters) -> Permutation:
    """The product s_{i_1} s_{i_2} ... s_{i_l} in S_n."""
    w = identity(n)
    for i in letters:
        if not 1 <= i < n:
            raise ValueError(f"letter {i} out of range for S_{n}")
        w = w.right_mul_simple(i)
    return w


def bruhat_leq(u: Permutation, v: Permutation) -> bool:
    """Strong Bruhat order via rank-matrix dominance.

    u <= v iff #{a <= i : u(a) >= k} <= #{a <= i : v(a) >= k} for all i, k.
    """
    if u.n != v.n:
        raise ValueError(f"size mismatch: S_{u.n} vs S_{v.n}")
    n = u.n
    cu = [0] * (n + 2)
    cv = [0] * (n + 2)
    for a, b in zip(u.word[:-1], v.word[:-1]):
        # cu[k] holds #{entries >= k} seen so far, maintained incrementally
        for k in range(1, a + 1):
            cu[k] += 1
        for k in range(1, b + 1):
            cv[k] += 1
        for k in range(2, n + 1):
            if cu[k] > cv[k]:
                return False
    return True


def reduced_word(w: Permutation) -> tuple[int, ...]:
    """Lexicographically smallest reduced word (i_1, ..., i_l) with w = s_{i_1}...s_{i_l}."""
    return _reduced_word(w.word)


@lru_cache(maxsize=None)
def _reduced_word(word: tuple[int, ...]) -> tuple[int, ...]:
    # peel the smallest left descent: s_i w < w iff i+1 sits left of i
    pos = [0] * (len(word) + 2)
    for idx, a in enumerate(word):
        pos[a] = idx
    for i in range(1, len(word)):
        if pos[i] > pos[i + 1]:
            rest = tuple(i + 1 if a == i else i if a == i + 1 else a for a in word)
            return (i,) + _reduced_word(rest)
    return ()


def is_inverse_grassmannian(w: Permutation, p: int) -> bool:
    """True iff w^{-1} has no descent other than at p."""
    if not 1 <= p <= w.n:
        raise ValueError(f"p={p} out of range for S_{w.n}")
    inv = w.inverse.word
    return all(inv[k] < inv[k + 1] for k in range(w.n - 1) if k + 1 != p)


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple[Permutation, ...]:
    """S_n sorted by (length, one-line word)."""
    perms = [Permutation._trusted(w) for w in _itertools_permutations(range(1, n + 1))]
    return tuple(sorted(perms))


def parse_permutation(text: str) -> Permutation:
    """Parse the comma-separated CLI syntax, e.g. ``"2,3,1"``."""
    tokens = [t.strip() for t in text.split(",")]
    try:
        word = [int(t) for t in tokens]
    except ValueError:
        bad = next(t for t in tokens if not t.lstrip("-").isdigit())
        raise ValueError(f"malformed permutation token {bad!r} in {text!r}") from None
    return Permutation(word)
