"""Mixed moments of a c-free pair straight from the independence axioms.

A word is a product of polynomials in two generators ``X`` (tag 1) and ``Y``
(tag 2).  Its value under ``psi`` or ``phi`` is obtained by repeatedly
splitting a letter ``p`` into ``(p - psi(p)) + psi(p)``: once every letter is
psi-centred and adjacent tags differ, ``psi`` of the word is 0 and ``phi`` is
the product of the ``phi`` values of the letters.  No operators and no
transforms are involved.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence, Tuple

from .series import Poly, TwoStateLaw

__all__ = [
    "InsufficientData",
    "AlternatingWord",
    "normalize_word",
    "expectation_of_word",
    "convolve_axiomatic",
]

Letter = Tuple[int, Poly]
AlternatingWord = Tuple[Letter, ...]

X = Poly([0, 1])


class InsufficientData(ValueError):
    """A letter's degree exceeds the number of known moments."""


def normalize_word(letters: Iterable[Letter]) -> tuple[Fraction, AlternatingWord]:
    """Merge adjacent equal tags and pull out constant letters.

    Returns ``(scalar, word)`` with ``scalar * word`` equal to the input and
    ``word`` strictly alternating with no constant letters.
    """
    scalar = Fraction(1)
    out: list[Letter] = []
    for tag, p in letters:
        if tag not in (1, 2):
            raise ValueError(f"letter tag must be 1 or 2, got {tag}")
        if not p:
            return Fraction(0), ()
        if p.degree == 0:
            scalar *= p[0]
            continue
        if out and out[-1][0] == tag:
            p = out.pop()[1] * p
        out.append((tag, p))
    return scalar, tuple(out)


class _Evaluator:
    def __init__(self, law1: TwoStateLaw, law2: TwoStateLaw):
        self.laws = {1: law1, 2: law2}
        self.memo: dict = {}

    def letter_value(self, state: str, tag: int, p: Poly) -> Fraction:
        law = self.laws[tag]
        if p.degree > law.order:
            raise InsufficientData(f"letter of degree {p.degree} but only {law.order} moments of algebra {tag}")
        moments = law.psi if state == "psi" else law.phi
        return p[0] + sum((p[k] * moments[k - 1] for k in range(1, p.degree + 1)), Fraction(0))

    def value(self, state: str, word: AlternatingWord) -> Fraction:
        if not word:
            return Fraction(1)
        key = (state, word)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        shifts = [self.letter_value("psi", tag, p) for tag, p in word]
        j = next((i for i, s in enumerate(shifts) if s), None)
        if j is None:
            if state == "psi":
                res = Fraction(0)
            else:
                res = Fraction(1)
                for tag, p in word:
                    res *= self.letter_value("phi", tag, p)
        else:
            s = shifts[j]
            tag, p = word[j]
            centred = (tag, p - Poly([s]))
            res = Fraction(0)
            c, w = normalize_word(word[:j] + (centred,) + word[j + 1 :])
            if c:
                res += c * self.value(state, w)
            c, w = normalize_word(word[:j] + word[j + 1 :])
            if c:
                res += s * c * self.value(state, w)
        self.memo[key] = res
        return res


def expectation_of_word(
    state: str,
    w: Sequence[Letter],
    law1: TwoStateLaw,
    law2: TwoStateLaw,
) -> Fraction:
    """``psi`` or ``phi`` of a word in a c-free pair with the given marginal laws."""
    if state not in ("psi", "phi"):
        raise ValueError(f"state must be 'psi' or 'phi', got {state!r}")
    c, word = normalize_word((t, p if isinstance(p, Poly) else Poly(p)) for t, p in w)
    if not c:
        return Fraction(0)
    return c * _Evaluator(law1, law2).value(state, word)


def convolve_axiomatic(kind: str, law1: TwoStateLaw, law2: TwoStateLaw, n_max: int) -> TwoStateLaw:
    """Law of ``X + Y`` (``kind='add'``) or ``XY`` (``kind='mul'``) for c-free X, Y."""
    if n_max > min(law1.order, law2.order):
        raise InsufficientData(f"n_max={n_max} exceeds the available moments")
    ev = _Evaluator(law1, law2)
    psi, phi = [], []
    for n in range(1, n_max + 1):
        if kind == "add":
            words = [tuple((t, X) for t in tags) for tags in product((1, 2), repeat=n)]
        elif kind == "mul":
            words = [tuple((t, X) for _ in range(n) for t in (1, 2))]
        else:
            raise ValueError(f"unknown kind {kind!r}; expected 'add' or 'mul'")
        s_psi = s_phi = Fraction(0)
        for word in words:
            c, w = normalize_word(word)
            s_psi += c * ev.value("psi", w)
            s_phi += c * ev.value("phi", w)
        psi.append(s_psi)
        phi.append(s_phi)
    return TwoStateLaw(psi, phi)
