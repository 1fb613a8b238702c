"""
Moves between reduced words and the matching change of cell coordinates.

A parameterised word is a reduced word together with a map from positions
(1-based) to values; positions without a value carry the signed permutation
ṡ_i, positions with a value carry y_i(value).  Braid moves on a triple
``i, j, i`` rewrite the local product with the subtraction-free rules

    (1) y_i(a) y_j(b) y_i(c) = y_j(bc/(a+c)) y_i(a+c) y_j(ab/(a+c))
    (2) y_i(a) ṡ_j y_i(b)   = y_j(b/a) y_i(a) ṡ_j
    (3) ṡ_j ṡ_i y_j(a)      = y_i(a) ṡ_j ṡ_i

together with the inverses of (2) and (3).  Only the patterns that occur in
positive subexpressions are handled.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from .embed import all_flag_minors
from .pinning import word_matrix
from .symbolic import IntLaurentPoly, RationalFn
from .weyl import CartanData, reduced_words

__all__ = [
    "BraidMove", "PatternMismatch", "UnsupportedMove",
    "apply_move", "apply_path", "local_rule", "verify_move_identity", "verify_all_rules",
    "word_path", "transport", "segre_invariant", "random_word_pair", "RULE_PATTERNS",
]


class PatternMismatch(ValueError):
    """The letters at the move position do not have the required shape."""


class UnsupportedMove(ValueError):
    """A braid move of length > 3, or a ṡ/y pattern that no rule covers."""


@dataclass(frozen=True)
class BraidMove:
    pos: int
    kind: str  # "comm" or "braid"

    def to_json(self) -> dict:
        return {"pos": self.pos, "kind": self.kind}

    @classmethod
    def from_json(cls, data: dict) -> "BraidMove":
        return cls(int(data["pos"]), data["kind"])


def _move_length(cd: CartanData | None, word: Sequence[int], move: BraidMove) -> int:
    k = move.pos - 1
    if k < 0 or k + 1 >= len(word):
        raise PatternMismatch(f"position {move.pos} out of range")
    i, j = word[k], word[k + 1]
    if i == j:
        raise PatternMismatch("repeated letter")
    m = cd.braid_order(i, j) if cd is not None else (3 if abs(i - j) == 1 else 2)
    if move.kind == "comm":
        if m != 2:
            raise PatternMismatch(f"s{i} and s{j} do not commute")
        return 2
    if move.kind != "braid" or m == 2:
        raise PatternMismatch(f"no braid move of kind {move.kind!r} on s{i}, s{j}")
    if k + m > len(word):
        raise PatternMismatch("braid move runs past the end of the word")
    expect = tuple(i if r % 2 == 0 else j for r in range(m))
    if tuple(word[k:k + m]) != expect:
        raise PatternMismatch(f"letters {tuple(word[k:k + m])} do not alternate")
    if m > 3:
        raise UnsupportedMove(f"braid move of length {m} has no coordinate rule")
    return m


def local_rule(pattern: str, vals: Sequence) -> tuple[str, list]:
    """New pattern and values for the triple i,j,i -> j,i,j.

    ``pattern`` is three characters from {"y", "s"}; ``vals`` lists the values
    at the ``y`` positions in order.
    """
    if pattern == "yyy":
        a, b, c = vals
        s = a + c
        return "yyy", [b * c / s, s, a * b / s]
    if pattern == "ysy":
        a, b = vals
        return "yys", [b / a, a]
    if pattern == "yys":
        c, d = vals
        return "ysy", [d, c * d]
    if pattern == "ssy":
        return "yss", list(vals)
    if pattern == "yss":
        return "ssy", list(vals)
    if pattern == "sss":
        return "sss", []
    raise UnsupportedMove(f"pattern {pattern!r} does not occur in a positive subexpression")


def apply_move(word: Sequence[int], move: BraidMove, coords: Mapping[int, object],
               cartan: CartanData | None = None) -> tuple[tuple[int, ...], dict[int, object]]:
    """Apply ``move`` to the word and transport the coordinates (positions are 1-based)."""
    word = tuple(word)
    m = _move_length(cartan, word, move)
    k = move.pos
    new_word = list(word)
    new_coords = {r: x for r, x in coords.items() if not k <= r < k + m}
    if m == 2:
        new_word[k - 1], new_word[k] = word[k], word[k - 1]
        if k in coords:
            new_coords[k + 1] = coords[k]
        if k + 1 in coords:
            new_coords[k] = coords[k + 1]
        return tuple(new_word), dict(sorted(new_coords.items()))
    i, j = word[k - 1], word[k]
    pattern = "".join("y" if r in coords else "s" for r in range(k, k + 3))
    new_pattern, vals = local_rule(pattern, [coords[r] for r in range(k, k + 3) if r in coords])
    new_word[k - 1:k + 2] = [j, i, j]
    it = iter(vals)
    for r, ch in zip(range(k, k + 3), new_pattern):
        if ch == "y":
            new_coords[r] = next(it)
    return tuple(new_word), dict(sorted(new_coords.items()))


def apply_path(word: Sequence[int], moves: Sequence[BraidMove], coords: Mapping[int, object],
               cartan: CartanData | None = None) -> tuple[tuple[int, ...], dict[int, object]]:
    word, coords = tuple(word), dict(coords)
    for mv in moves:
        word, coords = apply_move(word, mv, coords, cartan)
    return word, coords


def _factors(word: Sequence[int], coords: Mapping[int, object]) -> list[tuple]:
    return [("y", i, coords[r]) if r in coords else ("s", i) for r, i in enumerate(word, start=1)]


def verify_move_identity(pattern: str, i: int = 1, j: int = 2, n: int = 3,
                         modulo_borel: bool = False) -> bool:
    """Check the local rule for ``pattern`` as an exact identity of n×n matrices.

    The values are independent variables; both sides are multiplied out over
    the rational-function field and compared entry by entry.  With
    ``modulo_borel`` the check is only that both sides define the same flag,
    i.e. rhs⁻¹·lhs is upper triangular.
    """
    k = pattern.count("y")
    arity = max(k, 1)
    vals = [RationalFn(IntLaurentPoly.var(r, arity)) for r in range(k)]
    it = iter(vals)
    coords = {r: next(it) for r, ch in enumerate(pattern, start=1) if ch == "y"}
    word = (i, j, i)
    new_word, new_coords = apply_move(word, BraidMove(1, "braid"), coords)
    lhs = word_matrix(_factors(word, coords), n)
    rhs = word_matrix(_factors(new_word, new_coords), n)
    one = RationalFn.coerce(1, arity)
    lhs = [[one * x for x in row] for row in lhs]
    rhs = [[one * x for x in row] for row in rhs]
    if not modulo_borel:
        return all(x == y for rl, rr in zip(lhs, rhs) for x, y in zip(rl, rr))
    return _same_flag(lhs, rhs)


def _same_flag(g, h) -> bool:
    """g B+ = h B+, tested through the flag minors (each level must be proportional)."""
    one = next(x for row in g for x in row if isinstance(x, RationalFn)) ** 0
    lg, lh = all_flag_minors(g), all_flag_minors(h)
    for a, b in zip(lg[1:-1], lh[1:-1]):
        a = {R: one * x for R, x in a.items()}
        b = {R: one * x for R, x in b.items()}
        anchor = next(R for R in a if not a[R].is_zero())
        if b[anchor].is_zero():
            return False
        for R in a:
            if a[R] * b[anchor] != b[R] * a[anchor]:
                return False
    return True


RULE_PATTERNS = {"1": "yyy", "2": "ysy", "2inv": "yys", "3": "ssy", "3inv": "yss", "ss": "sss"}


def verify_all_rules(n: int = 3, modulo_borel: bool = False) -> dict[str, bool]:
    """Every supported pattern, in both orientations (i, j) = (1, 2) and (2, 1)."""
    return {name: all(verify_move_identity(pat, i, j, n, modulo_borel) for i, j in ((1, 2), (2, 1)))
            for name, pat in RULE_PATTERNS.items()}


def _neighbours(cd: CartanData, word: tuple[int, ...]):
    n = len(word)
    for k in range(n - 1):
        i, j = word[k], word[k + 1]
        if i == j:
            continue
        m = cd.braid_order(i, j)
        if m == 2:
            new = word[:k] + (j, i) + word[k + 2:]
            yield BraidMove(k + 1, "comm"), new
        elif k + m <= n and word[k:k + m] == tuple(i if r % 2 == 0 else j for r in range(m)):
            new = word[:k] + tuple(j if r % 2 == 0 else i for r in range(m)) + word[k + m:]
            yield BraidMove(k + 1, "braid"), new


def word_path(cd: CartanData, w1: Sequence[int], w2: Sequence[int]) -> list[BraidMove]:
    """Shortest sequence of moves turning ``w1`` into ``w2`` (breadth-first search)."""
    w1, w2 = tuple(w1), tuple(w2)
    if cd.element(w1) != cd.element(w2) or len(w1) != len(w2):
        raise ValueError("words represent different elements")
    if len(cd.element(w1)) != len(w1):
        raise ValueError("words are not reduced")
    prev: dict[tuple, tuple | None] = {w1: None}
    queue = deque([w1])
    while queue:
        cur = queue.popleft()
        if cur == w2:
            break
        for mv, nxt in _neighbours(cd, cur):
            if nxt not in prev:
                prev[nxt] = (cur, mv)
                queue.append(nxt)
    path = []
    cur = w2
    while prev[cur] is not None:
        cur, mv = prev[cur]
        path.append(mv)
    return path[::-1]


def transport(pse, target_word: Sequence[int], values: Sequence | None = None):
    """Carry the cell coordinates of ``pse`` to another reduced word of the same element.

    Returns (moves, new word, new coordinate map).  Without ``values`` the
    coordinates start as independent variables (RationalFn).
    """
    cd = pse.cartan
    moves = word_path(cd, pse.word, target_word)
    k = pse.n_params
    if values is None:
        arity = max(k, 1)
        values = [RationalFn(IntLaurentPoly.var(r, arity)) for r in range(k)]
    coords = dict(zip(pse.complement, values))
    word, coords = apply_path(pse.word, moves, coords, cd)
    return moves, word, coords


def segre_invariant(pse, target_word: Sequence[int]) -> bool:
    """Exact check that transporting the coordinates to ``target_word`` keeps the flag.

    Both Segre vectors are computed over the rational-function field in the
    original variables and compared projectively.
    """
    _, word, coords = transport(pse, target_word)
    arity = max(pse.n_params, 1)
    one = RationalFn.coerce(1, arity)
    vals = [RationalFn(IntLaurentPoly.var(r, arity)) for r in range(pse.n_params)]
    n = pse.cartan.rank + 1
    g = word_matrix(_factors(pse.word, dict(zip(pse.complement, vals))), n)
    h = word_matrix(_factors(word, coords), n)
    g = [[one * x for x in row] for row in g]
    h = [[one * x for x in row] for row in h]
    return _same_flag(g, h)


def random_word_pair(w, rng: random.Random) -> tuple[tuple[int, ...], tuple[int, ...]]:
    words = reduced_words(w)
    return rng.choice(words), rng.choice(words)
