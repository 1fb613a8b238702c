"""
Exact multivariate Laurent polynomials over the integers, and quotients of them.

Variables are addressed by 0-based index; the arity is fixed per polynomial.
Monomials are ordered graded-lexicographically, which fixes the leading term,
the sign normalisation of denominators and the serialised term order.

>>> t1, t2 = IntLaurentPoly.var(0, 2), IntLaurentPoly.var(1, 2)
>>> p = t2 * (t1 + 1) - t2
>>> p
x0*x1
>>> has_nonnegative_coeffs(p)
True
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

__all__ = [
    "IntLaurentPoly", "RationalFn", "PoleError",
    "has_nonnegative_coeffs", "exponent_vectors", "grlex_key",
]

Exp = tuple[int, ...]


class PoleError(ZeroDivisionError):
    """Evaluation hit a zero denominator or a negative power of zero."""


def grlex_key(exp: Exp):
    return (sum(exp), exp)


def _add_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def _sub_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def _pow_value(x, k: int):
    if k >= 0:
        return x ** k
    if x == 0:
        raise PoleError("negative power of zero")
    return Fraction(1) / Fraction(x) ** (-k)


class IntLaurentPoly:
    """Sparse Laurent polynomial ``{exponent vector: nonzero int}``; immutable."""

    __slots__ = ("arity", "terms", "_hash")

    def __init__(self, terms: Mapping[Exp, int] | None = None, arity: int = 0):
        clean = {}
        for e, c in (terms or {}).items():
            if c:
                e = tuple(int(x) for x in e)
                if len(e) != arity:
                    raise ValueError(f"exponent {e} does not have arity {arity}")
                clean[e] = int(c)
        self.arity = arity
        self.terms = clean
        self._hash = None

    # constructors

    @classmethod
    def constant(cls, c: int, arity: int) -> "IntLaurentPoly":
        return cls({(0,) * arity: c}, arity)

    @classmethod
    def var(cls, i: int, arity: int, power: int = 1) -> "IntLaurentPoly":
        if not 0 <= i < arity:
            raise IndexError(f"variable {i} out of range for arity {arity}")
        e = [0] * arity
        e[i] = power
        return cls({tuple(e): 1}, arity)

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff: int = 1) -> "IntLaurentPoly":
        return cls({tuple(exp): coeff}, len(exp))

    def _coerce(self, other) -> "IntLaurentPoly":
        if isinstance(other, IntLaurentPoly):
            if other.arity != self.arity:
                raise ValueError(f"arity mismatch {self.arity} vs {other.arity}")
            return other
        if isinstance(other, int):
            return IntLaurentPoly.constant(other, self.arity)
        return NotImplemented

    # predicates

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.arity in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.terms.get((0,) * self.arity, 0)

    def leading_term(self) -> tuple[Exp, int]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def sign(self) -> int:
        """Sign of the leading coefficient (0 for the zero polynomial)."""
        if not self.terms:
            return 0
        return 1 if self.leading_term()[1] > 0 else -1

    def content(self) -> int:
        return math.gcd(*self.terms.values()) if self.terms else 0

    def min_exponents(self) -> Exp:
        return tuple(min(e[k] for e in self.terms) for k in range(self.arity))

    def degree_in(self, i: int) -> tuple[int, int]:
        """(lowest, highest) power of variable ``i``."""
        ks = [e[i] for e in self.terms]
        return min(ks), max(ks)

    def variables(self) -> set[int]:
        return {k for e in self.terms for k, x in enumerate(e) if x}

    # arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return IntLaurentPoly(out, self.arity)

    __radd__ = __add__

    def __neg__(self):
        return IntLaurentPoly({e: -c for e, c in self.terms.items()}, self.arity)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntLaurentPoly({e: c * other for e, c in self.terms.items()}, self.arity)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Exp, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return IntLaurentPoly(out, self.arity)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial() or abs(self.leading_term()[1]) != 1:
                raise ValueError("only unit monomials have Laurent inverses")
            (e, c), = self.terms.items()
            return IntLaurentPoly({tuple(-x * (-k) for x in e): c ** (-k)}, self.arity)
        result = IntLaurentPoly.constant(1, self.arity)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        return RationalFn(self, other)

    def __rtruediv__(self, other):
        return RationalFn(other, self)

    def shift(self, exp: Exp) -> "IntLaurentPoly":
        """Multiply by the monomial x^exp."""
        return IntLaurentPoly({_add_exp(e, exp): c for e, c in self.terms.items()}, self.arity)

    def scale_down(self, k: int) -> "IntLaurentPoly":
        """Exact division of all coefficients by ``k``."""
        out = {}
        for e, c in self.terms.items():
            q, r = divmod(c, k)
            if r:
                raise ValueError(f"{k} does not divide coefficient {c}")
            out[e] = q
        return IntLaurentPoly(out, self.arity)

    def divexact(self, other: "IntLaurentPoly") -> "IntLaurentPoly | None":
        """Quotient ``self / other`` if it is a Laurent polynomial, else None."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        if other.is_monomial():
            (e2, c2), = other.terms.items()
            out = {}
            for e, c in self.terms.items():
                q, r = divmod(c, c2)
                if r:
                    return None
                out[_sub_exp(e, e2)] = q
            return IntLaurentPoly(out, self.arity)
        # clear negative powers and monomial factors, then divide in Z[x]
        a_shift = tuple(-x for x in self.min_exponents())
        b_shift = tuple(-x for x in other.min_exponents())
        num = self.shift(a_shift)
        den = other.shift(b_shift)
        lead_e, lead_c = den.leading_term()
        rem = dict(num.terms)
        quot: dict[Exp, int] = {}
        while rem:
            e = max(rem, key=grlex_key)
            c = rem[e]
            qe = _sub_exp(e, lead_e)
            if min(qe) < 0 or c % lead_c:
                return None
            qc = c // lead_c
            quot[qe] = qc
            for de, dc in den.terms.items():
                te = _add_exp(qe, de)
                v = rem.get(te, 0) - qc * dc
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        q = IntLaurentPoly(quot, self.arity)
        return q.shift(_sub_exp(b_shift, a_shift))

    # comparison / hashing

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_constant() and self.constant_value() == other
        if isinstance(other, IntLaurentPoly):
            return self.arity == other.arity and self.terms == other.terms
        if isinstance(other, RationalFn):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # evaluation and substitution

    def evaluate(self, point: Sequence) -> Fraction:
        """Exact value at a point of rationals (or ints)."""
        if len(point) != self.arity:
            raise ValueError(f"point has {len(point)} coordinates, arity is {self.arity}")
        total = Fraction(0)
        for e, c in self.terms.items():
            term = Fraction(c)
            for x, k in zip(point, e):
                if k:
                    term *= _pow_value(Fraction(x), k)
            total += term
        return total

    def substitute(self, mapping: Mapping[int, object], arity: int | None = None) -> "RationalFn":
        """Replace variable ``i`` by ``mapping[i]`` (int, IntLaurentPoly or RationalFn).

        Variables missing from ``mapping`` are carried over unchanged, which requires
        the target arity to equal ``self.arity``.  Denominators are combined once,
        so the result needs no gcd computation.
        """
        arity = self.arity if arity is None else arity
        subs: list[tuple[IntLaurentPoly, IntLaurentPoly]] = []
        for k in range(self.arity):
            f = mapping.get(k) if k in mapping else IntLaurentPoly.var(k, arity)
            f = RationalFn.coerce(f, arity)
            subs.append((f.num, f.den))
        lo = [0] * self.arity
        hi = [0] * self.arity
        for e in self.terms:
            for k, x in enumerate(e):
                lo[k] = min(lo[k], x)
                hi[k] = max(hi[k], x)
        # x_k^j = N^j / D^j for j >= 0 and D^-j / N^-j for j < 0;
        # multiply everything by prod N^(-lo) D^(hi)
        pow_cache: dict[tuple[int, int, int], IntLaurentPoly] = {}

        def pw(k: int, which: int, j: int) -> IntLaurentPoly:
            key = (k, which, j)
            if key not in pow_cache:
                pow_cache[key] = subs[k][which] ** j
            return pow_cache[key]

        num = IntLaurentPoly({}, arity)
        for e, c in self.terms.items():
            term = IntLaurentPoly.constant(c, arity)
            for k, x in enumerate(e):
                if lo[k] == 0 and hi[k] == 0:
                    continue
                # N^(x - lo) * D^(hi - x)
                term = term * pw(k, 0, x - lo[k]) * pw(k, 1, hi[k] - x)
            num = num + term
        den = IntLaurentPoly.constant(1, arity)
        for k in range(self.arity):
            if lo[k] or hi[k]:
                den = den * pw(k, 0, -lo[k]) * pw(k, 1, hi[k])
        return RationalFn(num, den)

    def rename(self, arity: int, index_map: Mapping[int, int]) -> "IntLaurentPoly":
        """Move variable ``i`` to position ``index_map[i]`` in a ring of the given arity."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * arity
            for k, x in enumerate(e):
                if x:
                    ne[index_map[k]] += x
            out[tuple(ne)] = c
        return IntLaurentPoly(out, arity)

    # presentation

    def sorted_terms(self) -> list[tuple[Exp, int]]:
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{k}" for k in range(self.arity)]
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(n if x == 1 else f"{n}^{x}" for n, x in zip(names, e) if x)
            if not mono:
                s = str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", s))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sgn, s in parts[1:]:
            out += f" {sgn} {s}"
        return out

    def __repr__(self):
        return self.to_str()

    def to_json(self) -> dict:
        return {"arity": self.arity,
                "terms": [{"exp": list(e), "coeff": str(c)} for e, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "IntLaurentPoly":
        arity = int(data["arity"])
        return cls({tuple(t["exp"]): int(t["coeff"]) for t in data["terms"]}, arity)


class RationalFn:
    """``num / den`` with Laurent-polynomial numerator and denominator.

    Normalised by integer content, by monomial factors of the denominator, by
    exact divisibility, and to a positive leading coefficient of ``den``.
    Equality is decided by cross-multiplication, so no canonical gcd is needed.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        if isinstance(num, RationalFn) or isinstance(den, RationalFn):
            q = RationalFn.coerce(num) / RationalFn.coerce(den)
            self.num, self.den = q.num, q.den
            return
        if isinstance(num, IntLaurentPoly):
            arity = num.arity
        elif isinstance(den, IntLaurentPoly):
            arity = den.arity
        else:
            raise TypeError("RationalFn needs at least one IntLaurentPoly to fix the arity")
        num = num if isinstance(num, IntLaurentPoly) else IntLaurentPoly.constant(num, arity)
        den = den if isinstance(den, IntLaurentPoly) else IntLaurentPoly.constant(den, arity)
        if num.arity != den.arity:
            raise ValueError("arity mismatch")
        if den.is_zero():
            raise ZeroDivisionError("denominator is the zero polynomial")
        self.num, self.den = self._normalize(num, den)

    @staticmethod
    def _normalize(num: IntLaurentPoly, den: IntLaurentPoly):
        if num.is_zero():
            return num, IntLaurentPoly.constant(1, den.arity)
        shift = tuple(-x for x in den.min_exponents())
        num, den = num.shift(shift), den.shift(shift)
        g = math.gcd(num.content(), den.content())
        if den.sign() < 0:
            g = -g
        if g != 1:
            num, den = num.scale_down(g), den.scale_down(g)
        if not den.is_constant():
            q = num.divexact(den)
            if q is not None:
                return q, IntLaurentPoly.constant(1, den.arity)
        return num, den

    @classmethod
    def coerce(cls, x, arity: int | None = None) -> "RationalFn":
        if isinstance(x, RationalFn):
            return x
        if isinstance(x, IntLaurentPoly):
            return cls(x)
        if arity is None:
            raise TypeError(f"cannot coerce {x!r} without an arity")
        if isinstance(x, int):
            return cls(IntLaurentPoly.constant(x, arity))
        if isinstance(x, Rational):
            return cls(IntLaurentPoly.constant(x.numerator, arity), x.denominator)
        raise TypeError(f"cannot coerce {type(x).__name__} to RationalFn")

    @property
    def arity(self) -> int:
        return self.num.arity

    def _other(self, other):
        if isinstance(other, (int, IntLaurentPoly, RationalFn)) or isinstance(other, Rational):
            return RationalFn.coerce(other, self.arity)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_monomial() and abs(self.den.leading_term()[1]) == 1

    def as_polynomial(self) -> IntLaurentPoly:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a Laurent polynomial")
        (e, c), = self.den.terms.items()
        return self.num.shift(tuple(-x for x in e)) * c

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(RationalFn)
        out.num, out.den = -self.num, self.den
        return out

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        # cheap cross-cancellation before multiplying out
        if not d2.is_constant():
            q = n1.divexact(d2)
            if q is not None:
                n1, d2 = q, IntLaurentPoly.constant(1, self.arity)
        if not d1.is_constant():
            q = n2.divexact(d1)
            if q is not None:
                n2, d1 = q, IntLaurentPoly.constant(1, self.arity)
        return RationalFn(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return self * RationalFn._raw(other.den, other.num)

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    @staticmethod
    def _raw(num, den):
        return RationalFn(num, den)

    def __pow__(self, k: int):
        if k < 0:
            return RationalFn(self.den ** (-k), self.num ** (-k))
        return RationalFn(self.num ** k, self.den ** k)

    def __eq__(self, other):
        other = self._other(other) if not isinstance(other, RationalFn) else other
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        # equal fractions may have different normal forms; hash by value at a fixed point
        try:
            return hash(self.evaluate([Fraction(k + 2, k + 3) for k in range(self.arity)]))
        except PoleError:
            return 0

    def evaluate(self, point: Sequence) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise PoleError("evaluation at a pole")
        return self.num.evaluate(point) / d

    def substitute(self, mapping: Mapping[int, object], arity: int | None = None) -> "RationalFn":
        return self.num.substitute(mapping, arity) / self.den.substitute(mapping, arity)

    def is_subtraction_free(self) -> bool:
        """Numerator and denominator both have nonnegative coefficients (up to a common sign)."""
        n, d = self.num, self.den
        if n.sign() < 0:
            n = -n
        return has_nonnegative_coeffs(n) and has_nonnegative_coeffs(d)

    def to_str(self, names=None) -> str:
        if self.den == 1:
            return self.num.to_str(names)
        return f"({self.num.to_str(names)})/({self.den.to_str(names)})"

    def __repr__(self):
        return self.to_str()

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}


def has_nonnegative_coeffs(p: IntLaurentPoly) -> bool:
    """True iff every stored coefficient is positive; see ``p.is_zero()`` for the zero case."""
    return all(c > 0 for c in p.terms.values())


def exponent_vectors(ps: Iterable[IntLaurentPoly]) -> tuple[list[Exp], list[list[int]]]:
    """Union S of the exponent vectors of ``ps`` (grlex sorted) and the table
    ``C[j][m]`` = coefficient of monomial S[m] in ps[j]."""
    ps = list(ps)
    if not ps:
        raise ValueError("empty polynomial list")
    arity = ps[0].arity
    for j, p in enumerate(ps):
        if p.arity != arity:
            raise ValueError("arity mismatch in polynomial list")
        if p.is_zero():
            raise ValueError(f"polynomial {j} is identically zero")
    S = sorted({e for p in ps for e in p.terms}, key=grlex_key)
    index = {e: m for m, e in enumerate(S)}
    C = [[0] * len(S) for _ in ps]
    for j, p in enumerate(ps):
        for e, c in p.terms.items():
            C[j][index[e]] = c
    return S, C
