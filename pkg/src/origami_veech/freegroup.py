"""Finite-index subgroups of the free group F2 = <x, y> as coset automata.

Words are strings over ``xXyY``; capitals are inverses.  A
:class:`CosetAutomaton` is the Schreier graph of a subgroup ``U``: states are
the cosets ``U w``, the x-transition of a state is the coset of ``w x`` (so it
is the origami's ``sigma_a``) and the base state is the coset ``U``.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .origami import Origami, Perm, compose, inverse

__all__ = [
    "CosetAutomaton",
    "SubgroupBasis",
    "IncompleteAutomaton",
    "NotAMemberError",
    "PropertyBResult",
    "reduce_word",
    "invert_word",
    "parse_word",
    "automaton",
    "origami_to_subgroup",
    "subgroup_to_origami",
    "fold",
    "contains",
    "rewrite_in_basis",
    "expand",
    "with_generators",
    "alpha",
    "power_kernel",
    "property_b_check",
    "apply_aut",
]

_INV = {"x": "X", "X": "x", "y": "Y", "Y": "y"}


class IncompleteAutomaton(ValueError):
    """The folded graph is not a covering; the subgroup has infinite index."""

    def __init__(self, missing: list[tuple[int, str]]):
        self.missing = missing
        shown = ", ".join(f"{s + 1}:{l}" for s, l in missing[:10])
        more = "" if len(missing) <= 10 else f" (+{len(missing) - 10} more)"
        super().__init__(f"folded graph is incomplete, missing transitions {shown}{more}")


class NotAMemberError(ValueError):
    pass


def reduce_word(w: str) -> str:
    out: list[str] = []
    for ch in w:
        if ch not in _INV:
            raise ValueError(f"invalid letter {ch!r} in F2 word {w!r}")
        if out and out[-1] == _INV[ch]:
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def invert_word(w: str) -> str:
    return "".join(_INV[ch] for ch in reversed(w))


_POWER = re.compile(r"([xyXY])(?:\^\{?(-?\d+)\}?)?")


def parse_word(text: str) -> str:
    """Parse ``"xyX"`` or ``"x^3 y x^-1"``; ``1``, ``e`` or ``""`` is the identity."""
    text = "".join(text.split())
    if text in ("", "1", "e", "id"):
        return ""
    parts = []
    pos = 0
    for m in _POWER.finditer(text):
        if m.start() != pos:
            break
        letter, exp = m.group(1), int(m.group(2) or 1)
        parts.append((letter if exp > 0 else _INV[letter]) * abs(exp))
        pos = m.end()
    if pos != len(text):
        raise ValueError(f"cannot parse F2 word {text!r} at position {pos}")
    return reduce_word("".join(parts))


@dataclass(frozen=True)
class CosetAutomaton:
    """Complete folded graph with bijective x- and y-transitions."""

    x: Perm
    y: Perm
    base: int = 0

    @property
    def index(self) -> int:
        return len(self.x)

    def step(self, state: int, letter: str) -> int:
        if letter == "x":
            return self.x[state]
        if letter == "y":
            return self.y[state]
        if letter == "X":
            return self._xinv[state]
        if letter == "Y":
            return self._yinv[state]
        raise ValueError(f"invalid letter {letter!r}")

    @property
    def _xinv(self) -> Perm:
        return _cached_inverse(self, "x")

    @property
    def _yinv(self) -> Perm:
        return _cached_inverse(self, "y")

    def trace(self, w: str, state: int | None = None) -> int:
        s = self.base if state is None else state
        for ch in w:
            s = self.step(s, ch)
        return s

    def to_origami(self) -> Origami:
        return Origami(self.index, self.x, self.y)

    def to_dot(self, reps: Sequence[str] | None = None, name: str = "U") -> str:
        """Graphviz source: x-edges solid, y-edges dashed."""
        lines = [f"digraph {name} {{"]
        for s in range(self.index):
            label = (reps[s] or "id") if reps else str(s + 1)
            shape = "doublecircle" if s == self.base else "circle"
            lines.append(f'  {s + 1} [label="{label}", shape={shape}];')
        for s in range(self.index):
            lines.append(f'  {s + 1} -> {self.x[s] + 1} [label="x"];')
            lines.append(f'  {s + 1} -> {self.y[s] + 1} [label="y", style=dashed];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _cached_inverse(a: CosetAutomaton, which: str) -> Perm:
    p = a.x if which == "x" else a.y
    inv = a.__dict__.get("_inv_" + which)
    if inv is None:
        inv = inverse(p)
        object.__setattr__(a, "_inv_" + which, inv)
    return inv


def automaton(o: Origami, base: int = 0) -> CosetAutomaton:
    return CosetAutomaton(o.sigma_a, o.sigma_b, base)


@dataclass(frozen=True)
class SubgroupBasis:
    """A free basis ``words`` of ``U`` plus the Schreier data used for rewriting.

    ``reps[s]`` is the spanning-tree word reaching state ``s``; ``schreier``
    lists the Schreier generators and ``edge_index`` maps each non-tree edge
    ``(state, "x"|"y")`` to its position there.  ``alpha_weights[i]`` is the
    value of ``alpha`` on ``schreier[i]``, i.e. the ``words[0]``-exponent.
    """

    words: tuple[str, ...]
    reps: tuple[str, ...]
    schreier: tuple[str, ...]
    edge_index: dict = field(hash=False, compare=False)
    alpha_weights: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.words)


def _spanning_tree(a: CosetAutomaton):
    reps: list[str | None] = [None] * a.index
    reps[a.base] = ""
    tree: set[tuple[int, str]] = set()
    order = [a.base]
    for s in order:
        for letter, p in (("x", a.x), ("y", a.y), ("X", a._xinv), ("Y", a._yinv)):
            t = p[s]
            if reps[t] is None:
                reps[t] = reps[s] + letter
                order.append(t)
                if letter in "xy":
                    tree.add((s, letter))
                else:
                    tree.add((t, letter.lower()))
    return reps, tree, order


def schreier_basis(a: CosetAutomaton) -> SubgroupBasis:
    reps, tree, order = _spanning_tree(a)
    gens: list[str] = []
    edge_index: dict[tuple[int, str], int] = {}
    for s in order:
        for letter, p in (("x", a.x), ("y", a.y)):
            if (s, letter) in tree:
                continue
            edge_index[(s, letter)] = len(gens)
            gens.append(reduce_word(reps[s] + letter + invert_word(reps[p[s]])))
    weights = tuple(1 if i == 0 else 0 for i in range(len(gens)))
    return SubgroupBasis(tuple(gens), tuple(reps), tuple(gens), edge_index, weights)


def origami_to_subgroup(o: Origami, base: int = 0) -> tuple[CosetAutomaton, SubgroupBasis]:
    """Automaton and Schreier basis of ``U = pi_1(X*)`` with the given base square."""
    a = automaton(o, base)
    return a, schreier_basis(a)


class _UnionFind:
    def __init__(self):
        self.parent: list[int] = []

    def add(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> int:
        i, j = self.find(i), self.find(j)
        if i == j:
            return i
        if j < i:
            i, j = j, i
        self.parent[j] = i
        return i


def fold(gens: Iterable[str]) -> tuple[list[dict[str, int]], int]:
    """Stallings folding of the bouquet of generator loops.

    Returns ``(edges, base)`` where ``edges[s]`` maps letters (including
    inverse letters) to target states; states are numbered by discovery
    order from the base.
    """
    uf = _UnionFind()
    base = uf.add()
    out: list[dict[str, int]] = [{}]
    raw: list[tuple[int, str, int]] = []
    for w in gens:
        w = reduce_word(w)
        if not w:
            continue
        cur = base
        for i, ch in enumerate(w):
            if i == len(w) - 1:
                nxt = base
            else:
                nxt = uf.add()
                out.append({})
            raw.append((cur, ch, nxt))
            cur = nxt
    # each edge stored in both directions, then merged until deterministic
    pending = deque()
    for s, ch, t in raw:
        pending.append((s, ch, t))
        pending.append((t, _INV[ch], s))
    while pending:
        s, ch, t = pending.popleft()
        s, t = uf.find(s), uf.find(t)
        tgt = out[s].get(ch)
        if tgt is None:
            out[s][ch] = t
            continue
        tgt = uf.find(tgt)
        if tgt == t:
            out[s][ch] = t
            continue
        # fold: identify t and tgt, re-queue the loser's edges
        keep = uf.union(t, tgt)
        lose = tgt if keep == t else t
        for c2, u in out[lose].items():
            pending.append((keep, c2, u))
        out[lose] = {}
        pending.append((s, ch, keep))
    # renumber live states by BFS from the base
    root = uf.find(base)
    number = {root: 0}
    order = [root]
    for s in order:
        for ch in "xXyY":
            t = out[s].get(ch)
            if t is not None:
                t = uf.find(t)
                if t not in number:
                    number[t] = len(order)
                    order.append(t)
    edges = [{ch: number[uf.find(t)] for ch, t in out[s].items()} for s in order]
    return edges, 0


def subgroup_to_origami(gens: Iterable[str]) -> Origami:
    """Origami of the subgroup generated by ``gens``; raises on infinite index."""
    return _complete_automaton(gens).to_origami()


def _complete_automaton(gens: Iterable[str]) -> CosetAutomaton:
    edges, base = fold(gens)
    missing = [(s, ch) for s, e in enumerate(edges) for ch in "xXyY" if ch not in e]
    if missing:
        raise IncompleteAutomaton(missing)
    return CosetAutomaton(tuple(e["x"] for e in edges), tuple(e["y"] for e in edges), base)


def contains(a: CosetAutomaton, w: str) -> bool:
    return a.trace(w) == a.base


def rewrite_in_basis(a: CosetAutomaton, basis: SubgroupBasis, w: str) -> list[tuple[int, int]]:
    """Schreier rewriting: ``w`` as a product of Schreier generators.

    Returns ``[(i, +1 or -1), ...]`` with ``i`` indexing ``basis.schreier``.
    """
    out: list[tuple[int, int]] = []
    s = a.base
    for ch in w:
        if ch in "xy":
            t = a.step(s, ch)
            i = basis.edge_index.get((s, ch))
            if i is not None:
                out.append((i, 1))
        else:
            t = a.step(s, ch)
            i = basis.edge_index.get((t, ch.lower()))
            if i is not None:
                out.append((i, -1))
        s = t
    if s != a.base:
        raise NotAMemberError(f"word {w!r} is not in the subgroup")
    # free reduction on the generator level
    red: list[tuple[int, int]] = []
    for g in out:
        if red and red[-1][0] == g[0] and red[-1][1] == -g[1]:
            red.pop()
        else:
            red.append(g)
    return red


def expand(words: Sequence[str], letters: Iterable[tuple[int, int]]) -> str:
    """Multiply out ``[(i, e), ...]`` into an F2 word using ``words[i]^e``."""
    parts = []
    for i, e in letters:
        w = words[i] if e > 0 else invert_word(words[i])
        parts.append(w * abs(e))
    return reduce_word("".join(parts))


def _same_rooted(a: CosetAutomaton, b: CosetAutomaton) -> bool:
    """Base-preserving isomorphism test (exact subgroup equality)."""
    if a.index != b.index:
        return False
    m = {a.base: b.base}
    order = [a.base]
    for s in order:
        for ch in "xy":
            t1, t2 = a.step(s, ch), b.step(m[s], ch)
            if t1 in m:
                if m[t1] != t2:
                    return False
            else:
                m[t1] = t2
                order.append(t1)
    return len(set(m.values())) == a.index


def _solve_unimodular(rows: list[list[int]], rhs: list[int]) -> list[int]:
    """Solve ``rows @ lam = rhs`` exactly; the solution must be integral."""
    k = len(rows)
    aug = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(k):
        piv = next((r for r in range(col, k) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("generators are not a free basis (singular abelianization)")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(k):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    lam = [aug[r][k] for r in range(k)]
    if any(v.denominator != 1 for v in lam):
        raise ValueError("generators are not a free basis (non-integral change of basis)")
    return [int(v) for v in lam]


def with_generators(a: CosetAutomaton, words: Sequence[str]) -> SubgroupBasis:
    """Use the given free basis of ``U`` (with ``words[0]`` as ``g_1``).

    The words must generate exactly the subgroup of ``a`` and number
    ``index + 1``; ``alpha`` weights are found from the abelianized change
    of basis.
    """
    words = tuple(reduce_word(w) for w in words)
    if not _same_rooted(_complete_automaton(words), a):
        raise ValueError("words do not generate the subgroup of the automaton")
    sb = schreier_basis(a)
    if len(words) != sb.rank:
        raise ValueError(f"a free basis needs {sb.rank} elements, got {len(words)}")
    k = sb.rank
    rows = []
    for w in words:
        v = [0] * k
        for i, e in rewrite_in_basis(a, sb, w):
            v[i] += e
        rows.append(v)
    lam = _solve_unimodular(rows, [1] + [0] * (k - 1))
    return SubgroupBasis(words, sb.reps, sb.schreier, sb.edge_index, tuple(lam))


def alpha(a: CosetAutomaton, basis: SubgroupBasis, w: str) -> int:
    """Exponent sum of ``g_1`` when ``w`` is written in ``basis.words``."""
    return sum(basis.alpha_weights[i] * e for i, e in rewrite_in_basis(a, basis, w))


def _edge_weight(basis: SubgroupBasis, s: int, letter: str) -> int:
    i = basis.edge_index.get((s, letter))
    return 0 if i is None else basis.alpha_weights[i]


def power_kernel(a: CosetAutomaton, basis: SubgroupBasis, n: int) -> tuple[CosetAutomaton, SubgroupBasis]:
    """``H_n = ker(alpha mod n)``: states are (U-state, alpha residue)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    start = (a.base, 0)
    number = {start: 0}
    order = [start]
    for s, r in order:
        for letter in "xy":
            t = a.step(s, letter)
            st = (t, (r + _edge_weight(basis, s, letter)) % n)
            if st not in number:
                number[st] = len(order)
                order.append(st)
    x = tuple(number[(a.x[s], (r + _edge_weight(basis, s, "x")) % n)] for s, r in order)
    y = tuple(number[(a.y[s], (r + _edge_weight(basis, s, "y")) % n)] for s, r in order)
    h = CosetAutomaton(x, y, 0)
    return h, schreier_basis(h)


def power_kernel_generators(basis: SubgroupBasis, n: int) -> list[str]:
    """The generating set ``g1^n, g1^i gj g1^-i`` (0 <= i < n, j >= 2)."""
    g = basis.words
    out = [reduce_word(g[0] * n)]
    for i in range(n):
        for j in range(1, len(g)):
            out.append(reduce_word(g[0] * i + g[j] + invert_word(g[0]) * i))
    return out


@dataclass
class PropertyBResult:
    verified: bool
    bound: int
    witnesses: dict[str, str]  # coset representative -> h0 with w h0 w^-1 not in U
    missing: list[str]

    def __str__(self) -> str:
        return f"{'Verified' if self.verified else 'Unknown'}({self.bound})"


def _h0_candidates(basis: SubgroupBasis, bound: int):
    """Elements of ``ker(alpha)`` as basis words, shortest first.

    Conjugates ``g1^i gj g1^-i`` come first since they normally generate
    the kernel; then all basis words of length <= bound with g1-exponent 0.
    """
    g = basis.words
    k = len(g)
    seen = set()
    for i in range(bound + 1):
        for sign in (1, -1) if i else (1,):
            for j in range(1, k):
                letters = [(0, sign)] * i + [(j, 1)] + [(0, -sign)] * i
                w = expand(g, letters)
                if w not in seen:
                    seen.add(w)
                    yield w
    gens = [(i, e) for i in range(k) for e in (1, -1)]
    for length in range(1, bound + 1):
        for combo in itertools.product(gens, repeat=length):
            if any(combo[t][0] == combo[t + 1][0] and combo[t][1] == -combo[t + 1][1]
                   for t in range(length - 1)):
                continue
            if sum(e for i, e in combo if i == 0) != 0:
                continue
            w = expand(g, combo)
            if w and w not in seen:
                seen.add(w)
                yield w


def property_b_check(a: CosetAutomaton, basis: SubgroupBasis, bound: int = 6) -> PropertyBResult:
    """Search, for every coset representative ``w != id``, an ``h0`` in
    ``ker(alpha)`` with ``w h0 w^-1`` outside ``U``.
    """
    reps = basis.reps
    todo = {s: reps[s] for s in range(a.index) if s != a.base}
    witnesses: dict[str, str] = {}
    if todo:
        for h in _h0_candidates(basis, bound):
            for s in list(todo):
                # w h w^-1 in U  <=>  h loops at the state of w
                if a.trace(h, s) != s:
                    witnesses[todo.pop(s)] = h
            if not todo:
                break
    missing = sorted(todo.values())
    return PropertyBResult(not missing, bound, witnesses, missing)


# automorphism lifts gamma_T: x -> x, y -> xy and gamma_S: x -> y, y -> X.
# gamma(U) is the stabilizer of the base under m o gamma^-1.
def apply_aut(gamma: str, a: CosetAutomaton) -> CosetAutomaton:
    """Automaton of ``gamma(U)`` for ``gamma`` in ``S, s, T, t, -I``."""
    x, y = a.x, a.y
    if gamma == "T":  # gamma_T^-1: y -> X y
        return CosetAutomaton(x, compose(a._xinv, y), a.base)
    if gamma == "t":  # gamma_T: y -> x y
        return CosetAutomaton(x, compose(x, y), a.base)
    if gamma == "S":  # gamma_S^-1: x -> Y, y -> x
        return CosetAutomaton(a._yinv, x, a.base)
    if gamma == "s":  # gamma_S: x -> y, y -> X
        return CosetAutomaton(y, a._xinv, a.base)
    if gamma == "-I":
        return CosetAutomaton(a._xinv, a._yinv, a.base)
    raise ValueError(f"unknown automorphism {gamma!r}")


def aut_image_word(gamma: str, w: str) -> str:
    """Apply the automorphism lift ``gamma`` to an F2 word."""
    images = {
        "T": {"x": "x", "y": "xy"},
        "t": {"x": "x", "y": "Xy"},
        "S": {"x": "y", "y": "X"},
        "s": {"x": "Y", "y": "x"},
        "-I": {"x": "X", "y": "Y"},
    }[gamma]
    parts = []
    for ch in w:
        parts.append(images[ch] if ch in "xy" else invert_word(images[ch.lower()]))
    return reduce_word("".join(parts))
