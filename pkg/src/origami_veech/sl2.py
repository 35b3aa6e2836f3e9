"""Exact arithmetic in SL(2, Z), words in S and T, and reduction mod n.

Matrices are immutable 4-tuples ``(a, b, c, d)`` of Python integers, so the
entries never overflow.  Words are strings over ``"SsTt"`` where a lower case
letter is the inverse of its upper case partner.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, NamedTuple

from ._kernels import closure_mod

__all__ = [
    "Mat",
    "ModMat",
    "ModClosure",
    "I",
    "MINUS_I",
    "S",
    "T",
    "mat",
    "eval_word",
    "reduce_st",
    "invert_st",
    "parse_st",
    "decompose_st",
    "reduce_mod",
    "crt_split",
    "crt_combine",
    "element_order_mod",
    "sl2_order",
    "subgroup_closure_mod",
]


class Mat(NamedTuple):
    """A 2x2 integer matrix, stored row-major."""

    a: int
    b: int
    c: int
    d: int

    def __matmul__(self, other: "Mat") -> "Mat":
        a, b, c, d = self
        e, f, g, h = other
        return Mat(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __pow__(self, k: int) -> "Mat":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = I
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __neg__(self) -> "Mat":
        return Mat(-self.a, -self.b, -self.c, -self.d)

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "Mat":
        # only valid for det 1, which is the only case we construct
        return Mat(self.d, -self.b, -self.c, self.a)

    def tolist(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def mat(rows) -> Mat:
    """Build a matrix from ``[[a, b], [c, d]]`` and check ``det == 1``."""
    (a, b), (c, d) = rows
    m = Mat(int(a), int(b), int(c), int(d))
    if m.det() != 1:
        raise ValueError(f"matrix {m} has determinant {m.det()}, expected 1")
    return m


I = Mat(1, 0, 0, 1)
MINUS_I = Mat(-1, 0, 0, -1)
S = Mat(0, -1, 1, 0)
T = Mat(1, 1, 0, 1)

_LETTERS = {"S": S, "s": S.inverse(), "T": T, "t": T.inverse()}
_INVERSE_LETTER = {"S": "s", "s": "S", "T": "t", "t": "T"}


def eval_word(word: str) -> Mat:
    """Multiply out a word over ``SsTt`` from left to right."""
    result = I
    for ch in word:
        try:
            result = result @ _LETTERS[ch]
        except KeyError:
            raise ValueError(f"invalid letter {ch!r} in word {word!r}") from None
    return result


def reduce_st(word: str) -> str:
    """Freely reduce a word (cancel adjacent letter/inverse pairs)."""
    out: list[str] = []
    for ch in word:
        if out and out[-1] == _INVERSE_LETTER[ch]:
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def invert_st(word: str) -> str:
    return "".join(_INVERSE_LETTER[ch] for ch in reversed(word))


_TOKEN = re.compile(r"\s*(?:([STst])|(\()|(\))|\^\s*\{?\s*(-?\d+)\s*\}?|(\*|\.|\\cdot))")


def parse_st(text: str) -> str:
    """Parse a word written with powers and brackets, e.g. ``(T^2S)T^4(T^2S)^{-1}``.

    Returns the freely reduced word over ``SsTt``.
    """
    text = text.strip()
    if text in ("", "I", "1", "id"):
        return ""
    pos = 0
    stack: list[list[str]] = [[]]
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse word {text!r} at position {pos}")
        pos = m.end()
        letter, lpar, rpar, exp, _ = m.groups()
        if letter:
            stack[-1].append(letter)
        elif lpar:
            stack.append([])
        elif rpar:
            if len(stack) == 1:
                raise ValueError(f"unbalanced ')' in {text!r}")
            group = "".join(stack.pop())
            stack[-1].append(group)
        elif exp is not None:
            if not stack[-1]:
                raise ValueError(f"exponent without base in {text!r}")
            k = int(exp)
            base = stack[-1].pop()
            stack[-1].append(base * k if k >= 0 else invert_st(base) * -k)
    if len(stack) != 1:
        raise ValueError(f"unbalanced '(' in {text!r}")
    return reduce_st("".join(stack[0]))


def decompose_st(m: Mat) -> str:
    """Return a word in S and T that evaluates exactly to ``m``.

    Euclidean reduction on the first column: ``T^-q`` shrinks the top entry
    below the bottom one, ``S^-1`` swaps the rows.  A leftover ``-I`` is
    written as ``SS``.
    """
    if m.det() != 1:
        raise ValueError(f"matrix {m} is not in SL(2, Z)")
    ops: list[str] = []  # letters L with ... L2 L1 m = rest, stored L1 first
    cur = m
    while cur.c != 0:
        q = cur.a // cur.c
        if q:
            cur = T ** (-q) @ cur
            ops.append("t" * q if q > 0 else "T" * -q)
        cur = S.inverse() @ cur
        ops.append("s")
    # now cur = +-[[1, b], [0, 1]]
    if cur.a == 1:
        tail = "T" * cur.b if cur.b >= 0 else "t" * -cur.b
    else:
        k = -cur.b
        tail = "SS" + ("T" * k if k >= 0 else "t" * -k)
    # m = L1^-1 L2^-1 ... tail
    word = "".join(invert_st(op) for op in ops) + tail
    return reduce_st(word)


class ModMat(NamedTuple):
    """A 2x2 matrix with entries in Z/nZ."""

    a: int
    b: int
    c: int
    d: int
    n: int

    def __matmul__(self, other: "ModMat") -> "ModMat":
        if self.n != other.n:
            raise ValueError(f"moduli differ: {self.n} vs {other.n}")
        a, b, c, d, n = self
        e, f, g, h, _ = other
        return ModMat(
            (a * e + b * g) % n, (a * f + b * h) % n, (c * e + d * g) % n, (c * f + d * h) % n, n
        )

    def __pow__(self, k: int) -> "ModMat":
        if k < 0:
            return self.inverse() ** (-k)
        result = ModMat(*(x % self.n for x in (1, 0, 0, 1)), self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def inverse(self) -> "ModMat":
        a, b, c, d, n = self
        return ModMat(d % n, -b % n, -c % n, a % n, n)

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def is_identity(self) -> bool:
        return self.entries == tuple(x % self.n for x in (1, 0, 0, 1))

    def tolist(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def code(self) -> int:
        n = self.n
        return ((self.a * n + self.b) * n + self.c) * n + self.d


def reduce_mod(m: Mat, n: int) -> ModMat:
    if n < 1:
        raise ValueError("modulus must be >= 1")
    return ModMat(m.a % n, m.b % n, m.c % n, m.d % n, n)


def _check_coprime(moduli: Iterable[int]) -> list[int]:
    moduli = list(moduli)
    for i, p in enumerate(moduli):
        if p < 1:
            raise ValueError("moduli must be >= 1")
        for q in moduli[i + 1:]:
            if math.gcd(p, q) != 1:
                raise ValueError(f"moduli {p} and {q} are not coprime")
    return moduli


def prime_power_factors(n: int) -> list[int]:
    """``60 -> [4, 3, 5]``: the prime-power parts of ``n`` by increasing prime."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append(q)
        p += 1
    if n > 1:
        out.append(n)
    return out


def crt_split(m: Mat | ModMat, moduli: Iterable[int] | int) -> list[ModMat]:
    """Reduce ``m`` modulo each of the pairwise coprime ``moduli``.

    An integer is expanded into its prime-power factors ordered so that
    ``60`` gives ``(4, 3, 5)``.
    """
    if isinstance(moduli, int):
        moduli = sorted(prime_power_factors(moduli), key=lambda q: _smallest_prime(q))
    moduli = _check_coprime(moduli)
    if isinstance(m, ModMat):
        total = math.prod(moduli)
        if m.n % total:
            raise ValueError(f"moduli {moduli} do not divide {m.n}")
        m = Mat(m.a, m.b, m.c, m.d)
    return [reduce_mod(m, q) for q in moduli]


def _smallest_prime(q: int) -> int:
    p = 2
    while q % p:
        p += 1
    return p


def crt_combine(parts: Iterable[ModMat]) -> ModMat:
    """Inverse of :func:`crt_split`."""
    parts = list(parts)
    moduli = _check_coprime(p.n for p in parts)
    n = math.prod(moduli)
    entries = []
    for k in range(4):
        x = 0
        for part, q in zip(parts, moduli):
            r = n // q
            x += part[k] * r * pow(r, -1, q) if q > 1 else 0
        entries.append(x % n)
    return ModMat(*entries, n)


def element_order_mod(m: Mat | ModMat, n: int | None = None) -> int:
    """Least ``k >= 1`` with ``m^k = I`` modulo ``n``."""
    r = m if isinstance(m, ModMat) else reduce_mod(m, n)
    cur = r
    k = 1
    bound = sl2_order(r.n)
    while not cur.is_identity():
        cur = cur @ r
        k += 1
        if k > bound:
            raise ArithmeticError(f"{r} has no finite order mod {r.n}")
    return k


def sl2_order(n: int) -> int:
    """``|SL(2, Z/nZ)| = n^3 prod_{p | n} (1 - p^-2)``."""
    order = n ** 3
    for q in prime_power_factors(n):
        p = _smallest_prime(q)
        order = order // (p * p) * (p * p - 1)
    return order


DEFAULT_CLOSURE_CAP = 10 ** 7


class ModClosure:
    """The finite subgroup of SL(2, Z/nZ) generated by some matrices."""

    def __init__(self, gens: Iterable[ModMat | Mat], n: int, cap: int = DEFAULT_CLOSURE_CAP):
        self.n = n
        self.gens = [g if isinstance(g, ModMat) else reduce_mod(g, n) for g in gens]
        for g in self.gens:
            if g.n != n:
                raise ValueError(f"generator {g} has modulus {g.n}, expected {n}")
        # add generators one at a time, skipping those already generated;
        # the kernel then only ever sees a short generating list
        useful: list[tuple[int, int, int, int]] = []
        self._codes = {reduce_mod(I, n).code()}
        for g in self.gens:
            if g.code() in self._codes:
                continue
            useful.append(g.entries)
            self._codes = closure_mod(useful, n, cap)

    def __len__(self) -> int:
        return len(self._codes)

    @property
    def size(self) -> int:
        return len(self._codes)

    def __contains__(self, m: ModMat | Mat) -> bool:
        r = m if isinstance(m, ModMat) else reduce_mod(m, self.n)
        if r.n != self.n:
            return False
        return r.code() in self._codes

    def index(self) -> int:
        """Index of the closure in SL(2, Z/nZ)."""
        return sl2_order(self.n) // self.size


def subgroup_closure_mod(gens: Iterable[ModMat | Mat], n: int,
                         cap: int = DEFAULT_CLOSURE_CAP) -> ModClosure:
    return ModClosure(gens, n, cap)
