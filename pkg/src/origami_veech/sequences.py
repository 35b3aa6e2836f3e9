"""The families O_n (cut from L(2,3)) and D_n (cut from D).

Both are built by cutting the base origami along a segment and gluing
``n`` copies cyclically; equivalently they are the covers belonging to the
power kernels ``H_n`` of the bases below.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .catalog import D, L23
from .freegroup import CosetAutomaton, SubgroupBasis, automaton, power_kernel, with_generators
from .origami import Origami, canonical_form, perm_from_cycles
from .sl2 import Mat
from .veech import DEFAULT_MAX_ORBIT, VeechGroup, compute_veech, member

__all__ = [
    "SequenceSpec",
    "BASES",
    "build",
    "base_subgroup",
    "kernel_origami",
    "matches_kernel",
    "veech_of",
    "verify_inclusion",
    "parabolic_test",
    "verify_distinctness",
    "remark_check",
    "REMARK_MATRIX",
    "DEFAULT_N_MAX",
]

BASES = ("L23", "D")

# free bases of U with g_1 first; the base square is where the words close up
_BASIS_WORDS = {
    "L23": (1, ("xxx", "xyX", "xxyXX", "yxY", "yy")),
    "D": (0, ("xxx", "xyXX", "xxyX", "yxY", "yyxYY", "yyy")),
}

REMARK_MATRIX = {"L23": Mat(1, 0, 2, 1), "D": Mat(1, 0, 3, 1)}
DEFAULT_N_MAX = {"L23": 4, "D": 3}


@dataclass(frozen=True)
class SequenceSpec:
    base: str
    n: int

    def __post_init__(self):
        _check_base(self.base)
        if self.n < 1:
            raise ValueError("n must be >= 1")

    @property
    def name(self) -> str:
        return f"{'O' if self.base == 'L23' else 'D'}{self.n}"


def _check_base(base: str) -> None:
    if base not in BASES:
        raise ValueError(f"base must be one of {BASES}, got {base!r}")


def build(base: str | SequenceSpec, n: int | None = None) -> Origami:
    """Glue ``n`` copies; copy ``k`` holds squares ``4k+1..4k+4`` (``5k+1..5k+5`` for D)."""
    if isinstance(base, SequenceSpec):
        base, n = base.base, base.n
    spec = SequenceSpec(base, n)
    n = spec.n
    if base == "L23":
        d = 4 * n
        a = [[j for k in range(n) for j in (4 * k + 1, 4 * k + 3, 4 * k + 4)]]
        b = [[4 * k + 1, 4 * k + 2] for k in range(n)]
    else:
        d = 5 * n
        a = [[j for k in range(n) for j in (5 * k + 1, 5 * k + 2, 5 * k + 3)]]
        b = [[5 * k + 1, 5 * k + 4, 5 * k + 5] for k in range(n)]
        b += [[5 * k + 2, 5 * k + 3] for k in range(n)]
    return Origami(d, perm_from_cycles(a, d), perm_from_cycles(b, d))


@lru_cache(maxsize=None)
def base_subgroup(base: str) -> tuple[CosetAutomaton, SubgroupBasis]:
    """Automaton of ``U`` for the base origami with the basis ``g_1 = x^3, ...``."""
    _check_base(base)
    square, words = _BASIS_WORDS[base]
    a = automaton(L23 if base == "L23" else D, square)
    return a, with_generators(a, words)


def kernel_origami(base: str, n: int) -> Origami:
    a, basis = base_subgroup(base)
    return power_kernel(a, basis, n)[0].to_origami()


def matches_kernel(base: str, n: int) -> bool:
    """Does the glued origami agree with the power-kernel cover up to relabelling?"""
    return canonical_form(build(base, n)) == canonical_form(kernel_origami(base, n))


@lru_cache(maxsize=32)
def veech_of(base: str, n: int, max_orbit: int = DEFAULT_MAX_ORBIT) -> VeechGroup:
    return compute_veech(build(base, n), max_orbit)


def verify_inclusion(base: str, n: int, m: int, max_orbit: int = DEFAULT_MAX_ORBIT) -> bool:
    """For ``n | m``: is every generator of ``Gamma(O_m)`` in ``Gamma(O_n)``?"""
    if n < 1 or m % n:
        raise ValueError(f"{n} does not divide {m}")
    small = veech_of(base, n, max_orbit)
    big = veech_of(base, m, max_orbit)
    return all(member(small, g) for g, _ in big.generators)


def parabolic_test(g: VeechGroup, s: int) -> bool:
    return member(g, Mat(1, s, 0, 1))


def verify_distinctness(base: str, n: int, m: int, max_orbit: int = DEFAULT_MAX_ORBIT) -> bool:
    """Separate the two groups by ``T^s`` with ``s = 3 min(n, m)``."""
    if n == m:
        raise ValueError("n and m must differ")
    s = 3 * min(n, m)
    return parabolic_test(veech_of(base, n, max_orbit), s) != parabolic_test(
        veech_of(base, m, max_orbit), s
    )


def remark_check(
    base: str,
    n_max: int | None = None,
    max_orbit: int = DEFAULT_MAX_ORBIT,
    matrix: Mat | None = None,
) -> bool:
    """Is ``matrix`` in ``Gamma(O_n)`` for all ``n <= n_max``?

    A finite stand-in for membership in the intersection of all the
    ``Gamma(O_n)``.  The default matrix is ``[[1,0],[2,1]]`` for L23 and
    ``[[1,0],[3,1]]`` for D; note the latter is not even in ``Gamma(D)``.
    """
    _check_base(base)
    n_max = DEFAULT_N_MAX[base] if n_max is None else n_max
    b = REMARK_MATRIX[base] if matrix is None else matrix
    return all(member(veech_of(base, n, max_orbit), b) for n in range(1, n_max + 1))
