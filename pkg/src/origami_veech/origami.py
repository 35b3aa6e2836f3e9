"""Origamis as transitive pairs of permutations.

Points are stored 0-based internally and shown 1-based.  Permutations are
tuples of images and compose left to right: ``compose(p, q)[i] == q[p[i]]``,
i.e. first ``p`` then ``q``.  ``sigma_a[i]`` is the square to the right of
square ``i`` and ``sigma_b[i]`` the square above it.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from ._kernels import canonical_encoding

Perm = tuple[int, ...]

__all__ = [
    "Origami",
    "CanonicalForm",
    "NotTransitiveError",
    "perm_from_cycles",
    "perm_to_cycles",
    "compose",
    "inverse",
    "orbits",
    "canonical_form",
    "vertex_permutation",
    "vertex_structure",
    "surface_genus",
    "ramification_points",
    "parse_origami",
    "format_origami",
    "to_dot",
]


class NotTransitiveError(ValueError):
    """The permutation pair does not act transitively; ``orbits`` holds the partition."""

    def __init__(self, orbits: list[list[int]]):
        self.orbits = orbits
        shown = " ".join("{" + ",".join(str(i + 1) for i in o) + "}" for o in orbits)
        super().__init__(f"permutations are not transitive, orbits: {shown}")


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(q[i] for i in p)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def check_perm(p: Sequence[int], d: int) -> Perm:
    p = tuple(int(x) for x in p)
    if len(p) != d or sorted(p) != list(range(d)):
        raise ValueError(f"{[x + 1 for x in p]} is not a permutation of 1..{d}")
    return p


def perm_from_cycles(cycles: Iterable[Iterable[int]], d: int) -> Perm:
    """Permutation of ``0..d-1`` from 1-based disjoint cycles."""
    img = list(range(d))
    seen = set()
    for cyc in cycles:
        cyc = [int(x) - 1 for x in cyc]
        for x in cyc:
            if not 0 <= x < d:
                raise ValueError(f"point {x + 1} out of range 1..{d}")
            if x in seen:
                raise ValueError(f"point {x + 1} occurs twice in cycle notation")
            seen.add(x)
        for x, y in zip(cyc, cyc[1:] + cyc[:1]):
            img[x] = y
    return tuple(img)


def perm_to_cycles(p: Perm, singletons: bool = False) -> list[list[int]]:
    """1-based disjoint cycles, each starting at its least point."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j + 1)
            j = p[j]
        if len(cyc) > 1 or singletons:
            out.append(cyc)
    return out


def cycle_string(p: Perm) -> str:
    cycles = perm_to_cycles(p)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def orbits(perms: Sequence[Perm], d: int) -> list[list[int]]:
    """Orbits (0-based, sorted) of the group generated by ``perms``."""
    seen = [False] * d
    out = []
    for s in range(d):
        if seen[s]:
            continue
        seen[s] = True
        orb = [s]
        for u in orb:
            for p in perms:
                v = p[u]
                if not seen[v]:
                    seen[v] = True
                    orb.append(v)
        out.append(sorted(orb))
    return out


@dataclass(frozen=True)
class Origami:
    """A connected square-tiled surface of degree ``d``."""

    d: int
    sigma_a: Perm
    sigma_b: Perm

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("degree must be at least 1")
        object.__setattr__(self, "sigma_a", check_perm(self.sigma_a, self.d))
        object.__setattr__(self, "sigma_b", check_perm(self.sigma_b, self.d))
        orbs = orbits((self.sigma_a, self.sigma_b), self.d)
        if len(orbs) > 1:
            raise NotTransitiveError(orbs)

    @classmethod
    def from_cycles(cls, d: int, sigma_a: str | Iterable, sigma_b: str | Iterable) -> "Origami":
        return cls(d, _perm_arg(sigma_a, d), _perm_arg(sigma_b, d))

    def __str__(self) -> str:
        return format_origami(self)

    def relabel(self, s: Perm) -> "Origami":
        """The pair ``(s^-1 a s, s^-1 b s)``: point ``i`` is renamed ``s[i]``."""
        sinv = inverse(s)
        return Origami(self.d, compose(compose(sinv, self.sigma_a), s),
                       compose(compose(sinv, self.sigma_b), s))

    def key(self) -> tuple[int, ...]:
        """Hashable encoding of the equivalence class."""
        return canonical_encoding(self.sigma_a, self.sigma_b)[0]

    def to_dict(self) -> dict:
        return {
            "degree": self.d,
            "sigma_a": cycle_string(self.sigma_a),
            "sigma_b": cycle_string(self.sigma_b),
        }


def new_origami(d: int, sigma_a, sigma_b) -> Origami:
    return Origami.from_cycles(d, sigma_a, sigma_b)


@dataclass(frozen=True)
class CanonicalForm:
    """A relabeled origami; equal forms iff the pairs are simultaneously conjugate.

    ``relabeling[i]`` is the new name of point ``i`` of the input origami.
    """

    origami: Origami
    relabeling: Perm

    @property
    def key(self) -> tuple[int, ...]:
        return self.origami.sigma_a + self.origami.sigma_b

    def __eq__(self, other):
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)


def canonical_form(o: Origami) -> CanonicalForm:
    key, label = canonical_encoding(o.sigma_a, o.sigma_b)
    d = o.d
    return CanonicalForm(Origami(d, key[:d], key[d:]), label)


def vertex_permutation(o: Origami) -> Perm:
    """The commutator ``a b a^-1 b^-1`` (left to right) permuting squares."""
    a, b = o.sigma_a, o.sigma_b
    return compose(compose(compose(a, b), inverse(a)), inverse(b))


def vertex_structure(o: Origami) -> list[int]:
    """Sorted cycle lengths of the vertex permutation, one per vertex of ``X``."""
    return sorted((len(c) for c in perm_to_cycles(vertex_permutation(o), singletons=True)),
                  reverse=True)


def surface_genus(o: Origami) -> int:
    c = len(vertex_structure(o))
    # Euler characteristic: V - E + F = c - 2d + d
    assert (o.d - c) % 2 == 0
    return 1 + (o.d - c) // 2


def ramification_points(o: Origami) -> int:
    return sum(1 for k in vertex_structure(o) if k > 1)


def stratum(o: Origami) -> dict[int, int]:
    """Cone angle multiplicities: ``{k: number of vertices with angle 2*pi*k}``."""
    return dict(sorted(Counter(vertex_structure(o)).items()))


# ---------------------------------------------------------------------------
# text formats

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, d: int) -> Perm:
    """Cycle notation ``(1 2)(3 4 5)`` / ``()`` or one-line ``[2,3,1]`` (1-based)."""
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise ValueError(f"unterminated one-line permutation {text!r}")
        body = text[1:-1].strip()
        imgs = [int(x) - 1 for x in re.split(r"[,\s]+", body)] if body else []
        return check_perm(imgs, d)
    if re.sub(r"\([^()]*\)", "", text).strip():
        raise ValueError(f"cannot parse permutation {text!r}")
    cycles = []
    for body in _CYCLE.findall(text):
        body = body.strip()
        if body:
            cycles.append([int(x) for x in re.split(r"[,\s]+", body)])
    return perm_from_cycles(cycles, d)


def _perm_arg(p, d: int) -> Perm:
    if isinstance(p, str):
        return parse_perm(p, d)
    p = list(p)
    if p and isinstance(p[0], (list, tuple)):
        return perm_from_cycles(p, d)
    return check_perm(p, d)


def parse_origami(text: str) -> Origami:
    """Parse ``"d; sigma_a; sigma_b"``, e.g. ``"4; (2 3 4); (1 2)"``."""
    parts = [p.strip() for p in text.split(";")]
    if len(parts) != 3:
        raise ValueError(f"expected 'd; sigma_a; sigma_b', got {text!r}")
    try:
        d = int(parts[0])
    except ValueError:
        raise ValueError(f"degree {parts[0]!r} is not an integer") from None
    if d < 1:
        raise ValueError("degree must be at least 1")
    return Origami(d, parse_perm(parts[1], d), parse_perm(parts[2], d))


def format_origami(o: Origami) -> str:
    return f"{o.d}; {cycle_string(o.sigma_a)}; {cycle_string(o.sigma_b)}"


def to_dot(o: Origami, name: str = "origami") -> str:
    """Square-gluing graph: ``a`` edges solid, ``b`` edges dashed."""
    lines = [f"digraph {name} {{"]
    for i in range(o.d):
        lines.append(f'  {i + 1} [shape=square, label="{i + 1}"];')
    for i in range(o.d):
        lines.append(f'  {i + 1} -> {o.sigma_a[i] + 1} [label="a"];')
        lines.append(f'  {i + 1} -> {o.sigma_b[i] + 1} [label="b", style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
