"""Congruence test for finite-index subgroups of SL(2, Z).

By Wohlfahrt's theorem a congruence subgroup has level equal to its general
level ``N`` (the lcm of the cusp widths), so ``Gamma`` is congruence iff it
contains ``Gamma(N)``.  Since ``Gamma`` is always contained in the full
preimage of its image mod ``N``, this holds iff the two indices agree:
``[SL2(Z) : Gamma] == [SL2(Z/N) : Gamma mod N]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .sl2 import (
    DEFAULT_CLOSURE_CAP,
    Mat,
    ModClosure,
    T,
    crt_split,
    decompose_st,
    element_order_mod,
    eval_word,
    parse_st,
    reduce_st,
    reduce_mod,
    sl2_order,
)
from .veech import VeechGroup, coset_of_word, coset_representatives, general_level, member

__all__ = [
    "CongruenceReport",
    "Witness",
    "ProofReplayError",
    "is_congruence",
    "image_mod",
    "find_witness",
    "verify_witness",
    "witness_from_closure",
    "factors_through",
    "replay_mod60_proof",
    "mod60_witness",
    "congruence_index_ratio",
]


@dataclass
class CongruenceReport:
    general_level: int
    index: int
    image_order: int
    image_index: int
    congruence: bool
    level: int | None = None  # minimal level when congruence
    closure_cap: int = DEFAULT_CLOSURE_CAP
    witness: "Witness | None" = None

    @property
    def verdict(self) -> str:
        return f"Congruence({self.level})" if self.congruence else "NonCongruence"

    def to_dict(self) -> dict:
        out = {
            "verdict": "Congruence" if self.congruence else "NonCongruence",
            "general_level": self.general_level,
            "index_in_SL2Z": self.index,
            "image_order": self.image_order,
            "index_in_SL2_mod_N": self.image_index,
            "level": self.level,
            "closure_cap": self.closure_cap,
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        return out


def image_mod(g: VeechGroup, n: int, cap: int = DEFAULT_CLOSURE_CAP) -> ModClosure:
    """The image of ``Gamma`` in SL(2, Z/nZ), closed from the Schreier generators."""
    return ModClosure([m for m, _ in g.generators], n, cap)


def is_congruence(g: VeechGroup, cap: int = DEFAULT_CLOSURE_CAP) -> CongruenceReport:
    n = general_level(g)
    image = image_mod(g, n, cap)
    image_index = sl2_order(n) // image.size
    congruent = image_index == g.index
    level = None
    if congruent:
        for d in sorted(k for k in range(1, n + 1) if n % k == 0):
            if d == n or sl2_order(d) // image_mod(g, d, cap).size == g.index:
                level = d
                break
    return CongruenceReport(n, g.index, image.size, image_index, congruent, level, cap)


def factors_through(g: VeechGroup, n: int, cap: int = DEFAULT_CLOSURE_CAP) -> bool:
    """Does the coset action of SL(2, Z) factor through reduction mod ``n``?

    Independent of :func:`is_congruence`: it closes the pairs
    ``(M mod n, coset permutation of M)`` for ``M`` in ``S, T`` and checks
    that no residue class carries two different permutations.  That is
    exactly ``Gamma(n)`` lying in the kernel of the action, which in turn is
    ``Gamma(n) <= Gamma``.
    """
    gens = [
        (reduce_mod(Mat(0, -1, 1, 0), n).entries, g.s_action),
        (reduce_mod(T, n).entries, g.t_action),
    ]
    one = 1 % n
    start = ((one, 0, 0, one), tuple(range(g.index)))
    seen = {start[0]: start[1]}
    frontier = [start]
    while frontier:
        new = []
        for (a, b, c, d), perm in frontier:
            for (e, f, gg, h), p in gens:
                m = ((a * e + b * gg) % n, (a * f + b * h) % n, (c * e + d * gg) % n, (c * f + d * h) % n)
                # left action of the product M G: first G then M
                q = tuple(perm[p[i]] for i in range(len(p)))
                old = seen.get(m)
                if old is None:
                    seen[m] = q
                    if len(seen) > cap:
                        raise OverflowError(f"closure exceeded cap of {cap} elements")
                    new.append((m, q))
                elif old != q:
                    return False
        frontier = new
    return True


@dataclass
class Witness:
    """``g`` in ``Gamma``, ``h`` not in ``Gamma``, ``g = h`` mod ``modulus``."""

    g: Mat
    h: Mat
    modulus: int
    factors: list[tuple[str, int]] = field(default_factory=list)  # (generator word, exponent)
    h_word: str = ""

    def to_dict(self) -> dict:
        return {
            "g": self.g.tolist(),
            "g_factors": [{"word": w, "exponent": e} for w, e in self.factors],
            "h": self.h.tolist(),
            "h_word": self.h_word,
            "modulus": self.modulus,
            "g_mod_N": reduce_mod(self.g, self.modulus).tolist(),
        }


def verify_witness(g: VeechGroup, w: Witness) -> bool:
    """Re-check the three witness conditions from scratch."""
    if w.factors:
        prod = Mat(1, 0, 0, 1)
        for word, e in w.factors:
            prod = prod @ eval_word(word) ** e
        if prod != w.g:
            return False
    return (
        member(g, w.g)
        and not member(g, w.h)
        and reduce_mod(w.g, w.modulus) == reduce_mod(w.h, w.modulus)
    )


def _short_words(length: int) -> list[str]:
    out = [""]
    layer = [""]
    for _ in range(length):
        nxt = []
        for w in layer:
            for ch in "STst":
                if w and reduce_st(w[-1] + ch) == "":
                    continue
                nxt.append(w + ch)
        out += nxt
        layer = nxt
    return out


def find_witness(
    g: VeechGroup,
    n: int | None = None,
    candidates: list[Mat] | None = None,
    max_length: int = 2,
    targets: list[str] | None = None,
    target_length: int = 8,
) -> Witness | None:
    """Search ``g1^a g2^b`` over candidate generators for a mod-``n`` twin outside ``Gamma``.

    Exponents run over ``0 .. order(gi mod n) - 1``.  Targets ``h`` default to
    ``T``, the coset representatives and every reduced word in ``S, T`` of
    length at most ``target_length``; those inside ``Gamma`` are dropped.  Returns ``None`` when the bounded search fails; raises
    ``ValueError`` if ``Gamma`` contains ``Gamma(n)`` (no witness can exist).
    """
    n = general_level(g) if n is None else n
    if factors_through(g, n):
        raise ValueError(f"the group contains Gamma({n}); there is no witness")
    gens = candidates if candidates is not None else [m for m, _ in g.generators]
    words = [decompose_st(m) for m in gens]
    if targets is None:
        targets = ["T"] + coset_representatives(g, side="right") + _short_words(target_length)
    hs = []
    for t in targets:
        h = eval_word(parse_st(t))
        if not member(g, h):
            hs.append((t, h))
    by_residue: dict[tuple, tuple[str, Mat]] = {}
    for t, h in hs:
        by_residue.setdefault(reduce_mod(h, n).entries, (t, h))

    powers = []  # (generator index, exponent, residue)
    for i, m in enumerate(gens):
        r = reduce_mod(m, n)
        order = element_order_mod(r)
        cur = reduce_mod(Mat(1, 0, 0, 1), n)
        for e in range(order):
            powers.append((i, e, cur))
            cur = cur @ r

    def make(parts):
        prod = Mat(1, 0, 0, 1)
        for i, e in parts:
            prod = prod @ gens[i] ** e
        return prod

    for i, e, r in powers:
        hit = by_residue.get(r.entries)
        if hit is not None:
            w = Witness(make([(i, e)]), hit[1], n, [(words[i], e)], hit[0])
            if verify_witness(g, w):
                return w
    if max_length < 2:
        return None
    lookup: dict[tuple, list[tuple[int, int]]] = {}
    for i, e, r in powers:
        lookup.setdefault(r.entries, []).append((i, e))
    for key, (t, h) in by_residue.items():
        hr = reduce_mod(h, n)
        for i, e, r in powers:
            need = (r.inverse() @ hr).entries
            for j, f in lookup.get(need, ()):
                if j == i:
                    continue
                w = Witness(make([(i, e), (j, f)]), h, n, [(words[i], e), (words[j], f)], t)
                if verify_witness(g, w):
                    return w
    return None


def witness_from_closure(g: VeechGroup, n: int | None = None) -> Witness | None:
    """Unbounded construction: walk the image mod ``n`` with parent pointers.

    Some representative ``r`` of a non-trivial coset reduces into the image
    of ``Gamma`` whenever the indices differ; the walk yields a product of
    generators with the same reduction.
    """
    n = general_level(g) if n is None else n
    gens = [m for m, _ in g.generators]
    words = [w for _, w in g.generators]
    reps = coset_representatives(g, side="right")
    wanted = {}
    for r in reps[1:]:
        wanted.setdefault(reduce_mod(eval_word(r), n).entries, r)
    ident = reduce_mod(Mat(1, 0, 0, 1), n)
    parent = {ident.entries: None}
    frontier = [ident]
    found = None
    while frontier and found is None:
        new = []
        for cur in frontier:
            for i, m in enumerate(gens):
                nxt = cur @ reduce_mod(m, n)
                if nxt.entries in parent:
                    continue
                parent[nxt.entries] = (cur.entries, i)
                if nxt.entries in wanted:
                    found = nxt.entries
                    break
                new.append(nxt)
            if found is not None:
                break
        frontier = new
    if found is None:
        return None
    path = []
    key = found
    while parent[key] is not None:
        key, i = parent[key]
        path.append(i)
    path.reverse()
    prod = Mat(1, 0, 0, 1)
    for i in path:
        prod = prod @ gens[i]
    hw = wanted[found]
    w = Witness(prod, eval_word(hw), n, [(words[i], 1) for i in path], hw)
    return w if verify_witness(g, w) else None


# ---------------------------------------------------------------------------
# the mod-60 argument for the origami D, step by step

A1_WORD = "T^3"
A6_WORD = "S^{-1}T^2S^{-1}T^{-1}S^{-1}TS^{-1}T^{-3}S^{-1}"


class ProofReplayError(AssertionError):
    pass


@dataclass
class ProofStep:
    label: str
    value: object
    expected: object

    @property
    def ok(self) -> bool:
        return self.value == self.expected

    def __str__(self) -> str:
        return f"[{'ok' if self.ok else 'FAIL'}] {self.label}: {self.value}"


def _triple(m: Mat) -> tuple:
    return tuple(tuple(map(tuple, r.tolist())) for r in crt_split(m, (4, 3, 5)))


def _orders(m: Mat) -> tuple[int, int, int]:
    return tuple(element_order_mod(r) for r in crt_split(m, (4, 3, 5)))


def replay_mod60_proof(g: VeechGroup | None = None) -> list[ProofStep]:
    """Recompute every displayed value of the mod-60 non-congruence argument for D.

    If ``g`` (the Veech group of D) is given, the membership claims are
    checked too.  Raises :class:`ProofReplayError` at the first mismatch.
    """
    a1 = eval_word(parse_st(A1_WORD))
    a6 = eval_word(parse_st(A6_WORD))
    one = ((1, 0), (0, 1))
    t = ((1, 1), (0, 1))
    steps = [
        ProofStep("A1 = T^3", a1.tolist(), [[1, 3], [0, 1]]),
        ProofStep("A6 = S^-1 T^2 S^-1 T^-1 S^-1 T S^-1 T^-3 S^-1", a6.tolist(), [[7, 2], [-18, -5]]),
        ProofStep("p60(A1)", _triple(a1), (((1, 3), (0, 1)), one, ((1, 3), (0, 1)))),
        ProofStep("p60(A6)", _triple(a6), (((3, 2), (2, 3)), ((1, 2), (0, 1)), ((2, 2), (2, 0)))),
        ProofStep("order of p60(A1)", _orders(a1), (4, 1, 5)),
        ProofStep("p60(A1^7)", _triple(a1 ** 7), (t, one, t)),
        ProofStep("p60(A6^2)", _triple(a6 ** 2), (one, t, ((3, 4), (4, 4)))),
        ProofStep("order of p60(A6^2)", _orders(a6 ** 2), (1, 3, 5)),
        ProofStep("p60(A6^20)", _triple(a6 ** 20), (one, t, one)),
        ProofStep("p60(A6^20 A1^7)", _triple(a6 ** 20 @ a1 ** 7), (t, t, t)),
        ProofStep("p60(A6^20 A1^7) = p60(T)", reduce_mod(a6 ** 20 @ a1 ** 7, 60), reduce_mod(T, 60)),
    ]
    if g is not None:
        steps += [
            ProofStep("A1 in Gamma(D)", member(g, a1), True),
            ProofStep("A6 in Gamma(D)", member(g, a6), True),
            ProofStep("A6^20 A1^7 in Gamma(D)", member(g, a6 ** 20 @ a1 ** 7), True),
            ProofStep("T not in Gamma(D)", not member(g, T), True),
            ProofStep("general level of Gamma(D)", general_level(g), 60),
        ]
    for step in steps:
        if not step.ok:
            raise ProofReplayError(f"step '{step.label}' gave {step.value}, expected {step.expected}")
    return steps


def mod60_witness() -> Witness:
    a1 = eval_word(parse_st(A1_WORD))
    a6 = eval_word(parse_st(A6_WORD))
    return Witness(
        a6 ** 20 @ a1 ** 7, T, 60,
        [(parse_st(A6_WORD), 20), (parse_st(A1_WORD), 7)], "T",
    )


def congruence_index_ratio(g: VeechGroup, n: int) -> tuple[int, int]:
    """``(index of Gamma, index of its image mod n)``; equal iff ``Gamma(n) <= Gamma``."""
    return g.index, sl2_order(n) // image_mod(g, n).size
