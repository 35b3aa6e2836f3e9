"""Veech groups of origamis via the SL(2, Z)-orbit of the origami.

A matrix ``A`` acts on origami classes through any automorphism lift of
``A`` (see :func:`origami_veech.freegroup.apply_aut`); the Veech group is the
stabilizer of the class of ``O``.  The orbit is found breadth first on
canonical forms, so orbit points are the left cosets ``A Gamma`` and
``coset_action`` records left multiplication by ``S`` and ``T``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cosets import subgroup_index
from .freegroup import CosetAutomaton, apply_aut
from .origami import Origami, Perm, canonical_form, compose, inverse, perm_to_cycles
from .sl2 import MINUS_I, Mat, S, T, decompose_st, eval_word, invert_st, reduce_st

__all__ = [
    "VeechGroup",
    "Cusp",
    "CurveInvariants",
    "OrbitCapExceeded",
    "compute_veech",
    "member",
    "coset_of_word",
    "cusps",
    "general_level",
    "curve_invariants",
    "coset_representatives",
    "check_representatives",
    "generates_group",
]

DEFAULT_MAX_ORBIT = 10 ** 6


class OrbitCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class VeechGroup:
    """Coset data of ``Gamma(O)``; orbit point 0 is ``O`` itself (the coset ``Gamma``)."""

    origami: Origami
    orbit: tuple[Origami, ...]
    s_action: Perm
    t_action: Perm
    reps: tuple[str, ...]
    generators: tuple[tuple[Mat, str], ...]
    _inv: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    @property
    def index(self) -> int:
        return len(self.orbit)

    def action(self, letter: str) -> Perm:
        """Permutation of cosets given by left multiplication with a letter of ``SsTt``."""
        if letter == "S":
            return self.s_action
        if letter == "T":
            return self.t_action
        if letter not in ("s", "t"):
            raise ValueError(f"invalid letter {letter!r}")
        inv = self._inv.get(letter)
        if inv is None:
            inv = inverse(self.s_action if letter == "s" else self.t_action)
            self._inv[letter] = inv
        return inv

    def __contains__(self, m: Mat) -> bool:
        return member(self, m)


def _act(letter: str, o: Origami) -> Origami:
    a = apply_aut(letter, CosetAutomaton(o.sigma_a, o.sigma_b))
    return Origami(o.d, a.x, a.y)


def compute_veech(o: Origami, max_orbit: int = DEFAULT_MAX_ORBIT) -> VeechGroup:
    """Orbit of ``O`` under S and T, coset action and Schreier generators."""
    start = canonical_form(o).origami
    orbit = [start]
    index = {start: 0}
    reps = [""]
    act = {"S": [], "T": []}
    for i, cur in enumerate(orbit):
        for letter in ("S", "T"):
            new = canonical_form(_act(letter, cur)).origami
            j = index.get(new)
            if j is None:
                if len(orbit) >= max_orbit:
                    raise OrbitCapExceeded(f"orbit exceeded {max_orbit} origamis")
                j = len(orbit)
                index[new] = j
                orbit.append(new)
                reps.append(reduce_st(letter + reps[i]))
            act[letter].append(j)
    s_action, t_action = tuple(act["S"]), tuple(act["T"])
    # Schreier generators r_j^-1 g r_i for g r_i Gamma = r_j Gamma
    gens: dict[Mat, str] = {}
    for i in range(len(orbit)):
        for letter, perm in (("S", s_action), ("T", t_action)):
            j = perm[i]
            w = reduce_st(invert_st(reps[j]) + letter + reps[i])
            m = eval_word(w)
            if m != Mat(1, 0, 0, 1) and m not in gens:
                gens[m] = w
    return VeechGroup(o, tuple(orbit), s_action, t_action, tuple(reps), tuple(gens.items()))


def coset_of_word(g: VeechGroup, word: str) -> int:
    """Coset index of the matrix of ``word`` (applied right to left)."""
    state = 0
    for letter in reversed(word):
        state = g.action(letter)[state]
    return state


def member(g: VeechGroup, m: Mat) -> bool:
    return coset_of_word(g, decompose_st(m)) == 0


@dataclass(frozen=True)
class Cusp:
    coset: int
    rep: str
    width: int


def cusps(g: VeechGroup, verify: bool = True) -> list[Cusp]:
    """One cusp per cycle of ``T`` on the cosets; the width is the cycle length.

    With ``verify`` each width is checked as the least ``w`` with
    ``r^-1 T^w r`` in the group, ``r`` the representative of the coset
    (the stabilizer of ``r Gamma`` is ``r Gamma r^-1``).
    """
    out = []
    for cyc in perm_to_cycles(g.t_action, singletons=True):
        c = cyc[0] - 1
        out.append(Cusp(c, g.reps[c], len(cyc)))
    if verify:
        for cusp in out:
            r = eval_word(cusp.rep)
            rinv = r.inverse()
            for w in range(1, cusp.width + 1):
                inside = member(g, rinv @ T ** w @ r)
                if inside != (w == cusp.width):
                    raise AssertionError(f"cusp {cusp} failed the amplitude check at {w}")
    return out


def general_level(g: VeechGroup) -> int:
    return math.lcm(*(c.width for c in cusps(g, verify=False)))


@dataclass(frozen=True)
class CurveInvariants:
    index: int
    psl_index: int
    contains_minus_i: bool
    cusp_count: int
    cusp_widths: tuple[int, ...]
    e2: int
    e3: int
    genus: int
    general_level: int

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "psl_index": self.psl_index,
            "contains_minus_identity": self.contains_minus_i,
            "cusps": self.cusp_count,
            "cusp_widths": list(self.cusp_widths),
            "e2": self.e2,
            "e3": self.e3,
            "genus": self.genus,
            "general_level": self.general_level,
        }


def _quotient_by_minus_i(g: VeechGroup) -> tuple[Perm, Perm]:
    """S and T on cosets of ``+-Gamma``; identical to the plain action if ``-I`` is in ``Gamma``."""
    s2 = compose(g.s_action, g.s_action)
    if all(s2[i] == i for i in range(g.index)):
        return g.s_action, g.t_action
    cls: dict[int, int] = {}
    n = 0
    for i in range(g.index):
        if i not in cls:
            cls[i] = cls[s2[i]] = n
            n += 1
    s = [0] * n
    t = [0] * n
    for i in range(g.index):
        s[cls[i]] = cls[g.s_action[i]]
        t[cls[i]] = cls[g.t_action[i]]
    return tuple(s), tuple(t)


def curve_invariants(g: VeechGroup) -> CurveInvariants:
    """Genus, elliptic points and cusps of the quotient of the upper half plane."""
    s, t = _quotient_by_minus_i(g)
    mu = len(s)
    st = compose(t, s)  # left action of ST: first T then S
    e2 = sum(1 for i in range(mu) if s[i] == i)
    e3 = sum(1 for i in range(mu) if st[i] == i)
    widths = tuple(len(c) for c in perm_to_cycles(g.t_action, singletons=True))
    psl_widths = [len(c) for c in perm_to_cycles(t, singletons=True)]
    c = len(psl_widths)
    genus = 1 + Fraction(mu, 12) - Fraction(e2, 4) - Fraction(e3, 3) - Fraction(c, 2)
    if genus.denominator != 1 or genus < 0:
        raise AssertionError(f"non-integral genus {genus} for index {mu}, e2={e2}, e3={e3}, c={c}")
    return CurveInvariants(
        index=g.index,
        psl_index=mu,
        contains_minus_i=member(g, MINUS_I),
        cusp_count=c,
        cusp_widths=widths,
        e2=e2,
        e3=e3,
        genus=int(genus),
        general_level=math.lcm(*widths),
    )


def coset_representatives(g: VeechGroup, side: str = "right") -> list[str]:
    """One word per coset, ordered like the orbit.

    ``side="right"`` gives ``A`` with the cosets ``Gamma A`` (the convention
    of the catalog lists); ``"left"`` gives the orbit words for ``A Gamma``.
    """
    if side == "left":
        return list(g.reps)
    if side == "right":
        return [invert_st(r) for r in g.reps]
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


@dataclass(frozen=True)
class RepresentativeCheck:
    cosets: dict[str, int]
    duplicates: list[str]  # words listed more than once
    collisions: list[tuple[str, str]]  # distinct words landing in the same coset

    @property
    def distinct(self) -> bool:
        return not self.collisions

    @property
    def complete(self) -> bool:
        return len(set(self.cosets.values())) == len(self.cosets) and not self.collisions


def check_representatives(g: VeechGroup, words: Sequence[str], side: str = "right") -> RepresentativeCheck:
    """Map each word (power notation allowed) to the orbit state of its coset.

    For ``side="right"`` the coset ``Gamma A`` is identified with the orbit
    state of ``A^-1 Gamma``.
    """
    from .sl2 import parse_st

    cosets: dict[str, int] = {}
    dups: list[str] = []
    owner: dict[int, str] = {}
    collisions = []
    for text in words:
        w = parse_st(text)
        if text in cosets:
            dups.append(text)
            continue
        c = coset_of_word(g, invert_st(w) if side == "right" else w)
        cosets[text] = c
        if c in owner:
            collisions.append((owner[c], text))
        else:
            owner[c] = text
    return RepresentativeCheck(cosets, dups, collisions)


def generates_group(g: VeechGroup, gens: Iterable[Mat]) -> bool:
    """True iff ``gens`` generate exactly ``Gamma``.

    Every matrix must be a member, and the subgroup they generate must have
    the same index (found by coset enumeration, independently of the orbit).
    """
    gens = list(gens)
    if not all(member(g, m) for m in gens):
        return False
    words = [decompose_st(m) for m in gens]
    try:
        idx = subgroup_index(words, cap=max(1000, 50 * g.index))
    except OverflowError:
        return False
    return idx == g.index


def coset_graph_dot(g: VeechGroup, name: str = "cosets") -> str:
    lines = [f"digraph {name} {{"]
    for i, r in enumerate(g.reps):
        lines.append(f'  {i} [label="{r or "I"}"];')
    for i in range(g.index):
        lines.append(f'  {i} -> {g.s_action[i]} [label="S", style=dashed];')
        lines.append(f'  {i} -> {g.t_action[i]} [label="T"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
