"""
Positive distinguished subexpressions.

For ``v <= w`` and a reduced word ``(i_1, ..., i_m)`` of ``w`` there is exactly
one subexpression for ``v`` whose partial products go up at every step,
counting skipped letters too.  Positions here are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .weyl import CartanData, WeylElement, bruhat_leq

__all__ = [
    "PositiveSubexpression", "NotBelow", "NotReduced",
    "positive_subexpression", "is_positive_subexpression",
]


class NotBelow(ValueError):
    """v is not below w in the Bruhat order."""


class NotReduced(ValueError):
    """The word is not a reduced expression."""


@dataclass(frozen=True)
class PositiveSubexpression:
    cartan: CartanData
    word: tuple[int, ...]
    v_plus: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.word)

    @property
    def complement(self) -> tuple[int, ...]:
        taken = set(self.v_plus)
        return tuple(r for r in range(1, self.m + 1) if r not in taken)

    @property
    def v(self) -> WeylElement:
        return self.cartan.element(self.word[r - 1] for r in self.v_plus)

    @property
    def w(self) -> WeylElement:
        return self.cartan.element(self.word)

    @property
    def n_params(self) -> int:
        return self.m - len(self.v_plus)

    def param_names(self) -> list[str]:
        return [f"t{r}" for r in self.complement]

    def pattern(self) -> str:
        """One character per letter: ``s`` for a taken letter, ``y`` otherwise."""
        taken = set(self.v_plus)
        return "".join("s" if r in taken else "y" for r in range(1, self.m + 1))

    def to_json(self) -> dict:
        return {"word": list(self.word), "v_plus": list(self.v_plus),
                "v": self.v.to_json(), "cartan": self.cartan.to_json()}

    @classmethod
    def from_json(cls, data: dict, cartan: CartanData | None = None) -> "PositiveSubexpression":
        cd = cartan or CartanData.from_json(data["cartan"])
        return cls(cd, tuple(data["word"]), tuple(sorted(data["v_plus"])))


def _check_reduced(cd: CartanData, word: Sequence[int]) -> WeylElement:
    w = cd.element(word)
    if len(w) != len(word):
        raise NotReduced(f"{tuple(word)} is not reduced in {cd!r}")
    return w


def positive_subexpression(cd: CartanData, word: Iterable[int],
                           v: WeylElement) -> PositiveSubexpression:
    """The positive subexpression for ``v`` inside the reduced ``word``."""
    word = tuple(word)
    w = _check_reduced(cd, word)
    if not bruhat_leq(v, w):
        raise NotBelow(f"{v!r} is not below {w!r}")
    # right-to-left scan: position r is forced exactly when it is a right descent
    cur = v
    taken = []
    for r in range(len(word), 0, -1):
        i = word[r - 1]
        if cur.has_right_descent(i):
            taken.append(r)
            cur = cur.right_mul(i)
    if not cur.is_identity():
        raise NotBelow(f"{v!r} has no subexpression in {word}")
    return PositiveSubexpression(cd, word, tuple(sorted(taken)))


def is_positive_subexpression(pse: PositiveSubexpression, v: WeylElement | None = None) -> bool:
    """Check reducedness, the target ``v`` (if given) and the ascent condition at every step."""
    cd = pse.cartan
    if any(not 1 <= r <= pse.m for r in pse.v_plus) or len(set(pse.v_plus)) != len(pse.v_plus):
        return False
    if len(cd.element(pse.word)) != pse.m:
        return False
    prod = pse.v
    if len(prod) != len(pse.v_plus):
        return False
    if v is not None and prod != v:
        return False
    taken = set(pse.v_plus)
    cur = cd.identity()
    for r in range(1, pse.m + 1):
        i = pse.word[r - 1]
        if cur.has_right_descent(i):
            return False
        if r in taken:
            cur = cur.right_mul(i)
    return True
