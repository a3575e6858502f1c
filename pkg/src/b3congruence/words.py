"""Words in the modular-group generators T = (1 1; 0 1) and U = (1 0; 1 1).

Also builds Hsu's finite generating sets for the principal congruence
subgroups Gamma(N) and evaluates words, either under a representation or
under the integer matrices reduced mod N.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable

from .errors import DimensionMismatch, NotInvertibleMod, WordSyntaxError
from .linalg import CycMatrix, mat_inverse, mat_mul, mat_pow

GENERATORS = ("T", "U")


def _normalize(letters: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    out: list[tuple[str, int]] = []
    for gen, exp in letters:
        if gen not in GENERATORS:
            raise WordSyntaxError(f"unknown generator {gen!r}")
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((gen, merged))
        else:
            out.append((gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class GroupWord:
    """A reduced word over {T, U}; adjacent letters always differ."""

    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _normalize(self.letters))

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> "GroupWord":
        if name == "S":
            return cls((("T", 1), ("U", -1), ("T", 1))) ** exp
        return cls(((name, exp),))

    @classmethod
    def identity(cls) -> "GroupWord":
        return cls(())

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        return parse_word(text)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, k: int) -> "GroupWord":
        base = self if k >= 0 else self.inverse()
        return GroupWord(base.letters * abs(k))

    def commutator(self, other: "GroupWord") -> "GroupWord":
        """a b a^-1 b^-1"""
        return self * other * self.inverse() * other.inverse()

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(g if e == 1 else f"{g}^{e}" for g, e in self.letters)


_TOKEN = re.compile(r"\s*(?:(?P<gen>[TUS])|(?P<num>[-+]?\d+)|(?P<op>[\^()\[\],*.·]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise WordSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r} at position {pos} in {text!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    """expr := factor*, factor := atom ('^' int)*, atom := T | U | S | 1 | (expr) | [expr, expr]"""

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self, value: str):
        kind, val, pos = self.peek()
        if val != value:
            raise WordSyntaxError(f"expected {value!r} at position {pos} in {self.text!r}")
        self.i += 1

    def expr(self, stop: set[str]) -> GroupWord:
        word = GroupWord()
        while True:
            kind, val, _ = self.peek()
            if kind is None or val in stop:
                return word
            if val in ("*", ".", "·"):
                self.i += 1
                continue
            word = word * self.factor()

    def factor(self) -> GroupWord:
        word = self.atom()
        while self.peek()[1] == "^":
            self.i += 1
            kind, val, pos = self.peek()
            if kind == "num":
                self.i += 1
                word = word ** int(val)
            elif val == "(":
                self.i += 1
                kind, val, pos = self.peek()
                if kind != "num":
                    raise WordSyntaxError(f"expected integer exponent at position {pos} in {self.text!r}")
                self.i += 1
                self.take(")")
                word = word ** int(val)
            else:
                raise WordSyntaxError(f"expected integer exponent at position {pos} in {self.text!r}")
        return word

    def atom(self) -> GroupWord:
        kind, val, pos = self.peek()
        if kind == "gen":
            self.i += 1
            return GroupWord.gen(val)
        if kind == "num" and val == "1":
            self.i += 1
            return GroupWord()
        if val == "(":
            self.i += 1
            inner = self.expr({")"})
            self.take(")")
            return inner
        if val == "[":
            self.i += 1
            a = self.expr({","})
            self.take(",")
            b = self.expr({"]"})
            self.take("]")
            return a.commutator(b)
        raise WordSyntaxError(f"unexpected token {val!r} at position {pos} in {self.text!r}")


def parse_word(text: str) -> GroupWord:
    """Parse strings such as "T^6", "(U^2 T^-2)^3", "[T^10, U^9]" or "S^2"."""
    p = _Parser(text)
    word = p.expr(set())
    if p.i != len(p.tokens):
        _, val, pos = p.peek()
        raise WordSyntaxError(f"unexpected token {val!r} at position {pos} in {text!r}")
    return word


def mod_inverse(a: int, m: int) -> int:
    if m < 1:
        raise NotInvertibleMod(f"modulus must be positive, got {m}")
    if m == 1:
        return 0
    try:
        return pow(a, -1, m)
    except ValueError as exc:
        raise NotInvertibleMod(f"{a} is not invertible mod {m}") from exc


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """The x in [0, m1*m2) with x = r1 mod m1 and x = r2 mod m2."""
    if math.gcd(m1, m2) != 1:
        raise NotInvertibleMod(f"moduli {m1} and {m2} are not coprime")
    m = m1 * m2
    return (r1 * m2 * mod_inverse(m2, m1) + r2 * m1 * mod_inverse(m1, m2)) % m


@dataclass(frozen=True)
class HsuData:
    N: int
    e: int
    k: int
    branch: str
    c: int | None = None
    d: int | None = None
    tN: int | None = None
    fN: int | None = None
    labels: tuple[str, ...] = ()
    words: tuple[GroupWord, ...] = field(default=(), repr=False)

    def constants(self) -> dict:
        return {"N": self.N, "e": self.e, "k": self.k, "branch": self.branch,
                "c": self.c, "d": self.d, "t": self.tN, "f": self.fN}


def split_two_part(N: int) -> tuple[int, int]:
    e, k = 1, N
    while k % 2 == 0:
        k //= 2
        e *= 2
    return e, k


def _pw(gen: str, base: int, k: int = 1) -> str:
    """Render gen^(base*k) as a word fragment."""
    n = base * k
    return gen if n == 1 else f"{gen}^{n}"


def hsu_generators(N: int) -> HsuData:
    """Hsu's normal generating set for Gamma(N), in the standard listing order.

    N = 1 gives an empty list, since Gamma(1) is the whole group.
    """
    if N < 1:
        raise ValueError("level must be positive")
    e, k = split_two_part(N)
    if N == 1:
        return HsuData(1, 1, 1, "trivial")
    if e == 1:
        t = mod_inverse(2, N)
        labels = (f"T^{N}", f"(U^2 T^-{t})^3")
        return HsuData(N, e, k, "odd", tN=t, labels=labels, words=tuple(map(parse_word, labels)))
    if k == 1:
        f = mod_inverse(5, N)
        p = f"T^20 {_pw('U', f)} T^-4 U^-1"
        labels = (
            f"T^{N}",
            f"({p} U^5 T U^-1 T)^3",
            f"(T U^-1 T)^-1 ({p}) (T U^-1 T) ({p})",
        )
        return HsuData(N, e, k, "two-power", fN=f, labels=labels, words=tuple(map(parse_word, labels)))
    c = crt_pair(0, e, 1, k)
    d = crt_pair(0, k, 1, e)
    t = mod_inverse(2, k)
    f = mod_inverse(5, e)
    x, y, z, w = ("T", c), ("U", c), ("T", d), ("U", d)

    def P(letter, m=1):
        return _pw(letter[0], letter[1], m)

    p = f"{P(z, 20)} {P(w, f)} {P(z, -4)} {P(w, -1)}"
    xyx = f"({P(x)} {P(y, -1)} {P(x)})"
    zwz = f"({P(z)} {P(w, -1)} {P(z)})"
    labels = (
        f"T^{N}",
        f"[{P(x)}, {P(w)}]",
        f"{xyx}^4",
        f"{xyx}^2 ({P(x, -1)} {P(y)})^3",
        f"{xyx}^2 ({P(x, t)} {P(y, -2)})^3",
        f"{zwz}^2 ({p} {P(w, 5)} {P(z)} {P(w, -1)} {P(z)})^-3",
        f"{zwz}^-1 ({p}) {zwz} ({p})",
        f"{P(w, 25)} ({p}) {P(w, -1)} ({p})^-1",
    )
    return HsuData(N, e, k, "mixed", c=c, d=d, tN=t, fN=f, labels=labels, words=tuple(map(parse_word, labels)))


def evaluate_word(word: GroupWord, X: CycMatrix, Y: CycMatrix, _cache: dict | None = None) -> CycMatrix:
    """Substitute T -> X, U -> Y and multiply left to right.

    Pass the same dict as _cache across calls to reuse generator powers.
    """
    if X.dim != Y.dim:
        raise DimensionMismatch("X and Y must have equal dimension")
    cache = {} if _cache is None else _cache
    result = CycMatrix.identity(X.dim, X.n)
    for gen, exp in word.letters:
        key = (gen, exp)
        if key not in cache:
            base = X if gen == "T" else Y
            if exp < 0:
                inv_key = (gen, -1)
                if inv_key not in cache:
                    cache[inv_key] = mat_inverse(base)
                cache[key] = mat_pow(cache[inv_key], -exp)
            else:
                cache[key] = mat_pow(base, exp)
        result = mat_mul(result, cache[key])
    return result


IntMat = tuple[tuple[int, int], tuple[int, int]]


def evaluate_word_integer(word: GroupWord, N: int) -> IntMat:
    """The word under the integer matrices T, U, entries reduced mod N."""
    a, b, c, d = 1, 0, 0, 1
    for gen, exp in word.letters:
        if gen == "T":
            # (a b; c d)(1 e; 0 1)
            b = (a * exp + b) % N
            d = (c * exp + d) % N
        else:
            # (a b; c d)(1 0; e 1)
            a = (a + b * exp) % N
            c = (c + d * exp) % N
    return ((a % N, b % N), (c % N, d % N))


def is_pm_identity_mod(M: IntMat, N: int) -> bool:
    (a, b), (c, d) = M
    if b % N or c % N:
        return False
    return (a % N == 1 % N and d % N == 1 % N) or (a % N == (-1) % N and d % N == (-1) % N)


def hsu_oracle(n_min: int = 2, n_max: int = 60) -> list[tuple[int, int, str, IntMat]]:
    """Every (N, index, label, image) whose integer image is not +-I mod N."""
    bad = []
    for N in range(n_min, n_max + 1):
        data = hsu_generators(N)
        for i, (label, word) in enumerate(zip(data.labels, data.words)):
            M = evaluate_word_integer(word, N)
            if not is_pm_identity_mod(M, N):
                bad.append((N, i, label, M))
    return bad
