"""Named origamis used by the command line and the tests."""

from __future__ import annotations

import re

from .origami import Origami, perm_from_cycles
from .sl2 import Mat

__all__ = [
    "TRIVIAL", "L23", "D", "GENERATORS", "GENERATOR_WORDS", "REPRESENTATIVES",
    "known_name", "l_shape", "lookup", "names",
]

TRIVIAL = Origami(1, (0,), (0,))
L23 = Origami.from_cycles(4, "(2 3 4)", "(2 1)")
D = Origami.from_cycles(5, "(1 2 3)", "(1 4 5)(2 3)")

# generating sets of the two Veech groups, as matrices
GENERATORS = {
    "L23": (Mat(1, 3, 0, 1), Mat(1, 0, 2, 1), Mat(-1, 3, -2, 5), Mat(3, -5, 2, -3), Mat(-1, 0, 0, -1)),
    "D": (
        Mat(-1, 0, 0, -1),
        Mat(1, 3, 0, 1),
        Mat(1, 0, -6, 1),
        Mat(-7, 16, -4, 9),
        Mat(-3, 4, -4, 5),
        Mat(-9, 5, -20, 11),
        Mat(7, 2, -18, -5),
    ),
}

# the same generators as words; two of the L23 words only agree up to sign
GENERATOR_WORDS = {
    "L23": ("T^3", "TSTST^{-1}S", "TST^2ST^{-1}T^{-1}", "T^2STST^{-1}S^{-1}T^{-2}", "SS"),
    "D": (
        "SS",
        "T^3",
        "ST^6S^{-1}",
        "(T^2S)T^4(T^2S)^{-1}",
        "(TS)T^4(TS)^{-1}",
        "(TST^2S)T^5(TST^2S)^{-1}",
        "(ST^3S)T^2(ST^3S)^{-1}",
    ),
}

# right coset representatives as listed; the D list repeats T^2S and misses a coset
REPRESENTATIVES = {
    "L23": ("I", "T", "S", "T^2", "TS", "ST", "T^2S", "TST", "T^2ST"),
    "D": (
        "I", "T", "S", "T^2", "TS", "ST", "T^2S", "TST", "ST^2", "STS", "T^2ST", "TST^2",
        "ST^5", "ST^3", "T^2S", "TST^3", "TST^2S", "ST^4", "ST^3S", "TST^2ST^{-1}",
        "TST^2ST^{-2}", "TST^2ST^{-3}", "TST^2ST^{-4}", "ST^3ST",
    ),
}


def l_shape(m: int, n: int) -> Origami:
    """L-shaped origami with a column of ``m`` squares and a row of ``n``.

    The corner square is ``m``; the column runs upwards ``m, m-1, .., 1`` and
    the row to the right ``m, m+1, .., m+n-1``.  ``l_shape(2, 3)`` is ``L23``.
    """
    if m < 1 or n < 1:
        raise ValueError("arm lengths must be >= 1")
    d = m + n - 1
    a = perm_from_cycles([list(range(m, d + 1))], d)
    b = perm_from_cycles([list(range(m, 0, -1))], d)
    return Origami(d, a, b)


_L_NAME = re.compile(r"^L\(?\s*(\d+)\s*,\s*(\d+)\s*\)?$")
_SEQ_NAME = re.compile(r"^(O|D)_?(\d+)$")


def lookup(name: str) -> Origami:
    """Resolve ``trivial``, ``L23``, ``D``, ``L(m,n)``, ``O<n>`` or ``D<n>``."""
    key = name.strip()
    if key.lower() == "trivial":
        return TRIVIAL
    if key == "L23":
        return L23
    if key == "D":
        return D
    m = _L_NAME.match(key)
    if m:
        return l_shape(int(m.group(1)), int(m.group(2)))
    m = _SEQ_NAME.match(key)
    if m:
        from .sequences import build

        return build("L23" if m.group(1) == "O" else "D", int(m.group(2)))
    raise KeyError(f"unknown origami name {name!r}; try one of {', '.join(names())}")


def known_name(o: Origami) -> str | None:
    """``"L23"`` or ``"D"`` if ``o`` is equivalent to one of them, else ``None``."""
    from .origami import canonical_form

    key = canonical_form(o)
    for name, base in (("L23", L23), ("D", D)):
        if canonical_form(base) == key:
            return name
    return None


def names() -> list[str]:
    return ["trivial", "L23", "D", "L(m,n)", "O<n>", "D<n>"]
