"""Sparse multivariate polynomials over Q in a1, b1, a2, b2, a3, b3.

Terms map exponent tuples to nonzero Fractions; zero coefficients are never
stored, so two equal polynomials have equal term dicts.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

from ..errors import NotDivisibleError

VARIABLES = ("a1", "b1", "a2", "b2", "a3", "b3")
NVARS = len(VARIABLES)
_ZERO_EXP = (0,) * NVARS

Scalar = Union[int, Fraction]


def _grlex_key(exp):
    return (sum(exp), exp)


class MPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, Scalar] | None = None):
        self.terms = {}
        for exp, c in (terms or {}).items():
            if len(exp) != NVARS:
                raise ValueError(f"exponent {exp} does not have {NVARS} entries")
            c = Fraction(c)
            if c:
                self.terms[tuple(exp)] = c

    # -- constructors ----------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> MPoly:
        return cls({_ZERO_EXP: c})

    @classmethod
    def var(cls, name: str) -> MPoly:
        idx = VARIABLES.index(name)
        return cls({tuple(int(k == idx) for k in range(NVARS)): 1})

    @classmethod
    def coerce(cls, x) -> MPoly:
        if isinstance(x, MPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot use {type(x).__name__} as a polynomial")

    # -- queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {_ZERO_EXP}

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(_ZERO_EXP, Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def leading_term(self) -> tuple[tuple, Fraction]:
        exp = max(self.terms, key=_grlex_key)
        return exp, self.terms[exp]

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def variables(self) -> set[str]:
        return {VARIABLES[k] for e in self.terms for k in range(NVARS) if e[k]}

    # -- arithmetic -------------------------------------------------------
    def __eq__(self, other) -> bool:
        try:
            other = MPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self) -> MPoly:
        return MPoly({e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> MPoly:
        other = MPoly.coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> MPoly:
        return self + (-MPoly.coerce(other))

    def __rsub__(self, other) -> MPoly:
        return MPoly.coerce(other) - self

    def __mul__(self, other) -> MPoly:
        other = MPoly.coerce(other)
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MPoly:
        if n < 0:
            raise ValueError("negative exponent")
        result, base = MPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, divisor: MPoly) -> tuple[MPoly, MPoly]:
        """Multivariate division by a single polynomial in grlex order."""
        divisor = MPoly.coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lexp, lc = divisor.leading_term()
        quotient: dict[tuple, Fraction] = {}
        remainder: dict[tuple, Fraction] = {}
        p = MPoly(self.terms)
        while p.terms:
            exp, c = p.leading_term()
            if all(x >= y for x, y in zip(exp, lexp)):
                qexp = tuple(x - y for x, y in zip(exp, lexp))
                q = c / lc
                quotient[qexp] = quotient.get(qexp, 0) + q
                p = p - divisor * MPoly({qexp: q})
            else:
                remainder[exp] = remainder.get(exp, 0) + c
                del p.terms[exp]
        return MPoly(quotient), MPoly(remainder)

    def exact_div(self, divisor) -> MPoly:
        q, r = self.divmod(MPoly.coerce(divisor))
        if r:
            raise NotDivisibleError(f"{divisor} does not divide {self}")
        return q

    def divides(self, other: MPoly) -> bool:
        return not MPoly.coerce(other).divmod(self)[1]

    def substitute(self, mapping: Mapping[str, object]) -> MPoly:
        """Replace variables by polynomials or scalars."""
        values = [MPoly.coerce(mapping[v]) if v in mapping else MPoly.var(v) for v in VARIABLES]
        out = MPoly()
        for exp, c in self.terms.items():
            term = MPoly.const(c)
            for val, k in zip(values, exp):
                if k:
                    term = term * val ** k
            out = out + term
        return out

    def evaluate(self, point) -> object:
        """Value at a point given as a mapping or a 6-sequence (a1, b1, ..., b3).

        Works for any ring that accepts int powers and Fraction coefficients.
        """
        if isinstance(point, Mapping):
            point = [point[v] for v in VARIABLES]
        total = 0
        for exp, c in self.terms.items():
            term = c
            for x, k in zip(point, exp):
                if k:
                    term = term * x ** k
            total = total + term
        return total

    def evaluate_mod(self, point, p: int) -> int:
        total = 0
        for exp, c in self.terms.items():
            term = c.numerator * pow(c.denominator, -1, p)
            for x, k in zip(point, exp):
                if k:
                    term = term * pow(x, k, p)
            total += term
        return total % p

    # -- display --------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"{VARIABLES[k]}^{e}" if e > 1 else VARIABLES[k]
                for k, e in enumerate(exp) if e
            )
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"MPoly({self})"


def variables() -> tuple[MPoly, ...]:
    """(a1, b1, a2, b2, a3, b3) as polynomials."""
    return tuple(MPoly.var(v) for v in VARIABLES)


def parse(text: str) -> MPoly:
    """Parse a polynomial written with +, -, *, ^/** and parentheses."""
    return _Parser(text).parse()


class _Parser:
    def __init__(self, text: str):
        self.tokens = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text):
        tokens, i = [], 0
        text = text.replace("**", "^")
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                tokens.append(("num", int(text[i:j])))
                i = j
            elif ch.isalpha():
                j = i
                while j < len(text) and text[j].isalnum():
                    j += 1
                tokens.append(("var", text[i:j]))
                i = j
            elif ch in "+-*/^()":
                tokens.append((ch, ch))
                i += 1
            else:
                raise ValueError(f"unexpected character {ch!r}")
        return tokens

    def _peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def _take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> MPoly:
        out = self._expr()
        if self.pos != len(self.tokens):
            raise ValueError(f"trailing input at token {self.pos}")
        return out

    def _expr(self):
        out = self._term()
        while self._peek() in ("+", "-"):
            op = self._take()[0]
            rhs = self._term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def _term(self):
        out = self._factor()
        while True:
            if self._peek() == "*":
                self._take()
                out = out * self._factor()
            elif self._peek() == "/":
                self._take()
                rhs = self._factor()
                if not rhs.is_constant() or rhs.is_zero():
                    raise ValueError("only division by nonzero constants is supported")
                out = out * MPoly.const(1 / rhs.constant_value())
            elif self._peek() in ("var", "num", "("):
                out = out * self._factor()
            else:
                return out

    def _factor(self):
        if self._peek() == "-":
            self._take()
            return -self._factor()
        base = self._atom()
        if self._peek() == "^":
            self._take()
            kind, n = self._take()
            if kind != "num":
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** n
        return base

    def _atom(self):
        kind, val = self._take()
        if kind == "num":
            return MPoly.const(val)
        if kind == "var":
            return MPoly.var(val)
        if kind == "(":
            inner = self._expr()
            if self._take()[0] != ")":
                raise ValueError("unbalanced parentheses")
            return inner
        raise ValueError(f"unexpected token {val!r}")
