"""Localization of Q[a, b] at the parameter constraints.

The only polynomials we may divide by are nonzero constants times products of
a_i, b_i, a_i - 1, b_i - 1 and a_i - b_i. These are exactly the quantities the
smoothness conditions on the curves force to be nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import NotDivisibleError
from .mpoly import MPoly, variables


@dataclass(frozen=True)
class Factorization:
    constant: Fraction
    exponents: tuple[tuple[str, int], ...]

    def __str__(self) -> str:
        parts = [f"({name})^{e}" if e > 1 else f"({name})" for name, e in self.exponents]
        if self.constant != 1 or not parts:
            parts.insert(0, str(self.constant))
        return "*".join(parts)


class ConstraintSet:
    def __init__(self, indices=(1, 2, 3)):
        a1, b1, a2, b2, a3, b3 = variables()
        ab = {1: (a1, b1), 2: (a2, b2), 3: (a3, b3)}
        self.generators: dict[str, MPoly] = {}
        for i in indices:
            a, b = ab[i]
            self.generators[f"a{i}"] = a
            self.generators[f"b{i}"] = b
            self.generators[f"a{i}-1"] = a - 1
            self.generators[f"b{i}-1"] = b - 1
            self.generators[f"a{i}-b{i}"] = a - b

    def multiplicity(self, poly: MPoly, name: str) -> int:
        gen = self.generators[name]
        k = 0
        while poly and gen.divides(poly):
            poly = poly.exact_div(gen)
            k += 1
        return k

    def factor(self, poly: MPoly) -> Factorization | None:
        """Write ``poly`` as constant times generator powers, or return None.

        Generators are pairwise non-associate linear forms, so trial division
        finds the factorization whenever one exists.
        """
        if poly.is_zero():
            return None
        exps = []
        for name, gen in self.generators.items():
            k = 0
            while gen.divides(poly):
                poly = poly.exact_div(gen)
                k += 1
            if k:
                exps.append((name, k))
        if not poly.is_constant():
            return None
        return Factorization(poly.constant_value(), tuple(exps))

    def is_permitted(self, poly: MPoly) -> bool:
        return self.factor(poly) is not None

    def common_content(self, polys) -> MPoly:
        """Largest generator product dividing every nonzero entry of ``polys``."""
        polys = [p for p in polys if p]
        content = MPoly.const(1)
        if not polys:
            return content
        for name, gen in self.generators.items():
            k = min(self.multiplicity(p, name) for p in polys)
            if k:
                content = content * gen ** k
        return content


@dataclass(frozen=True)
class RatFun:
    """num / den with ``den`` a permitted denominator."""

    num: MPoly
    den: MPoly = MPoly.const(1)

    @classmethod
    def of(cls, x) -> RatFun:
        return x if isinstance(x, RatFun) else cls(MPoly.coerce(x))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        other = RatFun.of(other)
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash(self.reduced(ConstraintSet()).num)

    def __add__(self, other) -> RatFun:
        other = RatFun.of(other)
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> RatFun:
        return RatFun(-self.num, self.den)

    def __sub__(self, other) -> RatFun:
        return self + (-RatFun.of(other))

    def __mul__(self, other) -> RatFun:
        other = RatFun.of(other)
        return RatFun(self.num * other.num, self.den * other.den)

    def divide(self, other, constraints: ConstraintSet) -> RatFun:
        other = RatFun.of(other)
        if not constraints.is_permitted(other.num):
            raise NotDivisibleError(f"{other.num} is not a permitted denominator")
        return RatFun(self.num * other.den, self.den * other.num)

    def reduced(self, constraints: ConstraintSet) -> RatFun:
        """Cancel generator factors and constants shared by numerator and denominator."""
        num, den = self.num, self.den
        if num.is_zero():
            return RatFun(MPoly(), MPoly.const(1))
        for gen in constraints.generators.values():
            while gen.divides(den) and gen.divides(num):
                num, den = num.exact_div(gen), den.exact_div(gen)
        if den.is_constant():
            return RatFun(num * MPoly.const(1 / den.constant_value()), MPoly.const(1))
        _, lc = den.leading_term()
        scale = MPoly.const(1 / lc)
        return RatFun(num * scale, den * scale)

    def evaluate(self, point) -> Fraction:
        den = self.den.evaluate(point)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return Fraction(self.num.evaluate(point)) / den

    def __str__(self) -> str:
        if self.den == MPoly.const(1):
            return str(self.num)
        return f"({self.num})/({self.den})"
