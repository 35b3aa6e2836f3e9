"""Todd-Coxeter coset enumeration for subgroups of SL(2, Z).

SL(2, Z) is presented on ``S`` and ``U = ST`` with relators ``S^4`` and
``S^2 U^-3``.  Subgroups are given by words over ``SsTt``; ``T = S^-1 U``.
"""

from __future__ import annotations

from typing import Iterable

__all__ = ["coset_enumerate", "subgroup_index"]

# generator columns: 0 S, 1 S^-1, 2 U, 3 U^-1
_INV_COL = (1, 0, 3, 2)
_RELATORS = ((0, 0, 0, 0), (0, 0, 3, 3, 3))


def _to_columns(word: str) -> list[int]:
    out: list[int] = []
    for ch in word:
        if ch == "S":
            out.append(0)
        elif ch == "s":
            out.append(1)
        elif ch == "T":  # T = S^-1 U
            out += [1, 2]
        elif ch == "t":  # T^-1 = U^-1 S
            out += [3, 0]
        else:
            raise ValueError(f"invalid letter {ch!r}")
    return out


class _Table:
    def __init__(self, cap: int):
        self.rows: list[list[int | None]] = [[None] * 4]
        self.parent = [0]
        self.cap = cap

    def find(self, c: int) -> int:
        while self.parent[c] != c:
            self.parent[c] = self.parent[self.parent[c]]
            c = self.parent[c]
        return c

    def live(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, g: int) -> int:
        if len(self.rows) >= self.cap:
            raise OverflowError(f"coset enumeration exceeded {self.cap} cosets")
        d = len(self.rows)
        self.rows.append([None] * 4)
        self.parent.append(d)
        self.rows[c][g] = d
        self.rows[d][_INV_COL[g]] = c
        return d

    def _merge(self, k: int, l: int, dead: list[int]) -> None:
        k, l = self.find(k), self.find(l)
        if k == l:
            return
        if l < k:
            k, l = l, k
        self.parent[l] = k
        dead.append(l)

    def coincidence(self, a: int, b: int) -> None:
        dead: list[int] = []
        self._merge(a, b, dead)
        i = 0
        while i < len(dead):
            e = dead[i]
            i += 1
            for g in range(4):
                f = self.rows[e][g]
                if f is None:
                    continue
                gi = _INV_COL[g]
                self.rows[f][gi] = None
                e1, f1 = self.find(e), self.find(f)
                if self.rows[e1][g] is not None:
                    self._merge(f1, self.rows[e1][g], dead)
                elif self.rows[f1][gi] is not None:
                    self._merge(e1, self.rows[f1][gi], dead)
                else:
                    self.rows[e1][g] = f1
                    self.rows[f1][gi] = e1

    def scan_and_fill(self, c: int, word: list[int]) -> None:
        """HLT scan of ``word`` at coset ``c``, defining cosets as needed."""
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and self.rows[self.find(f)][word[i]] is not None:
                f = self.find(self.rows[self.find(f)][word[i]])
                i += 1
            if i > j:
                if self.find(f) != self.find(b):
                    self.coincidence(f, b)
                return
            while j >= i and self.rows[self.find(b)][_INV_COL[word[j]]] is not None:
                b = self.find(self.rows[self.find(b)][_INV_COL[word[j]]])
                j -= 1
            f, b = self.find(f), self.find(b)
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                self.rows[f][word[i]] = b
                self.rows[b][_INV_COL[word[i]]] = f
                return
            self.define(f, word[i])


def coset_enumerate(gens: Iterable[str], cap: int = 200_000) -> list[list[int]]:
    """Coset table of ``<gens>`` in SL(2, Z); row 0 is the subgroup itself.

    Columns are ``S, S^-1, U, U^-1`` with ``U = ST``.
    """
    table = _Table(cap)
    words = [_to_columns(w) for w in gens]
    for w in words:
        if w:
            table.scan_and_fill(0, w)
    c = 0
    while c < len(table.rows):
        if table.live(c):
            for rel in _RELATORS:
                if not table.live(c):
                    break
                table.scan_and_fill(c, list(rel))
            if table.live(c):
                for g in range(4):
                    if table.rows[c][g] is None:
                        table.define(c, g)
        c += 1
    live = [c for c in range(len(table.rows)) if table.live(c)]
    number = {c: i for i, c in enumerate(live)}
    return [[number[table.find(table.rows[c][g])] for g in range(4)] for c in live]


def subgroup_index(gens: Iterable[str], cap: int = 200_000) -> int:
    return len(coset_enumerate(gens, cap))
