"""The genus-5 curves C_{a,b} as (Z/2)^4-covers of the projective line.

C_{a,b} in P^4 is cut out by

    x2^2 = x0^2 - x1^2,   x3^2 = x0^2 - a x1^2,   x4^2 = x0^2 - b x1^2

and (x0^2 : x1^2) is the quotient map, branched over [0:1], [1:0], [1:1],
[a:1] and [b:1] with stabilizers generated by e_0, ..., e_4.

Characters of (Z/2)^4 are written additively as bit vectors; the pairing
<chi, g> in {0, 1} stands for the sign (-1)^<chi, g>.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import gf2core
from .errors import ConstraintError
from .gf2core import Gf2Mat4, Gf2Vec4

Char4 = Gf2Vec4


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a number into an exact Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, float):
        raise TypeError("floats are not exact; pass a 'p/q' string")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


def check_curve_constraints(a, b, label: str = "") -> None:
    """Raise ConstraintError naming the first violated smoothness condition."""
    for name, value in (("a", a), ("b", b)):
        for bad in (0, 1):
            if value == bad:
                raise ConstraintError(f"{name}{label} != {bad}")
    if a == b:
        raise ConstraintError(f"a{label} != b{label}")


@dataclass(frozen=True)
class CurveParams:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        if not isinstance(self.a, complex):
            object.__setattr__(self, "a", parse_rational(self.a))
        if not isinstance(self.b, complex):
            object.__setattr__(self, "b", parse_rational(self.b))
        check_curve_constraints(self.a, self.b)

    @classmethod
    def parse(cls, a: str, b: str) -> CurveParams:
        return cls(parse_rational(a), parse_rational(b))


@dataclass(frozen=True)
class BranchData:
    """Branch points in homogeneous coordinates and their stabilizer generators.

    ``group_order`` defaults to 16; other values exist only for sanity checks
    of the Riemann-Hurwitz count.
    """

    points: tuple[tuple[Fraction, Fraction], ...]
    stabilizers: tuple[Gf2Vec4, ...]
    group_order: int = 16
    stabilizer_order: int = 2

    @classmethod
    def from_params(cls, params: CurveParams) -> BranchData:
        one, zero = Fraction(1), Fraction(0)
        points = ((zero, one), (one, zero), (one, one), (params.a, one), (params.b, one))
        return cls(points, tuple(gf2core.stabilizer_generators()))

    def validate(self) -> None:
        if len(self.points) != len(self.stabilizers):
            raise ValueError("one stabilizer per branch point is required")
        for i, (p, q) in enumerate(self.points):
            if p == 0 and q == 0:
                raise ValueError(f"branch point {i} is not a projective point")
        for i in range(len(self.points)):
            for j in range(i):
                (p1, q1), (p2, q2) = self.points[i], self.points[j]
                if p1 * q2 == p2 * q1:
                    raise ConstraintError(
                        "branch points distinct",
                        f"branch points {j} and {i} coincide",
                    )

    def to_json(self) -> dict:
        return {
            "points": [[str(p), str(q)] for p, q in self.points],
            "stabilizers": [list(s) for s in self.stabilizers],
            "stabilizer_indices": [_stabilizer_index(s) for s in self.stabilizers],
            "group_order": self.group_order,
        }

    @classmethod
    def from_json(cls, data) -> BranchData:
        if isinstance(data, str):
            data = json.loads(data)
        points = tuple((parse_rational(p), parse_rational(q)) for p, q in data["points"])
        if "stabilizers" in data:
            stabs = tuple(gf2core.vec(s) for s in data["stabilizers"])
        else:
            stabs = tuple(gf2core.basis(i) for i in data["stabilizer_indices"])
        return cls(points, stabs, data.get("group_order", 16))


def _stabilizer_index(s: Gf2Vec4) -> int | None:
    gens = gf2core.stabilizer_generators()
    return gens.index(s) if s in gens else None


def genus(bd: BranchData) -> int:
    """Riemann-Hurwitz for a Galois cover of P^1 with cyclic stabilizers."""
    bd.validate()
    n, m = bd.group_order, bd.stabilizer_order
    twice_g_minus_2 = n * (-2) + len(bd.points) * (n - n // m)
    if twice_g_minus_2 % 2:
        raise ValueError("inconsistent branch data: odd Euler characteristic")
    return twice_g_minus_2 // 2 + 1


def pairing(chi: Char4, g: Gf2Vec4) -> int:
    return gf2core.dot(chi, g)


def chevalley_weil_dim(chi: Char4, bd: BranchData) -> int:
    """Dimension of the chi-eigenspace of holomorphic 1-forms on the curve."""
    if chi == gf2core.ZERO:
        return 0
    m = sum(pairing(chi, e) for e in bd.stabilizers)
    if m % 2:
        raise ValueError(f"character {chi} pairs nontrivially with an odd number of stabilizers")
    return m // 2 - 1


def section_character(i: int) -> Char4:
    """Character of the 1-form given by the coordinate x_i (canonical linearization)."""
    return gf2core.vadd(naive_character(i), gf2core.ONES)


def naive_character(i: int) -> Char4:
    """Sign character of the linear form x_i under e_1..e_4 (x_0 invariant)."""
    if not 0 <= i <= 4:
        raise IndexError(f"section index must be in 0..4, got {i}")
    return gf2core.ZERO if i == 0 else gf2core.basis(i)


def twisted_character(chi: Char4, m: Gf2Mat4) -> Char4:
    """Character g -> <chi, M g>, i.e. M^T chi, on a factor twisted by M."""
    return m.transpose().apply(chi)


def correction_sum(a: Gf2Mat4) -> Char4:
    """(I + A^T + (A^2)^T)(1,1,1,1): the gap between the two sign conventions on T."""
    ident = Gf2Mat4.identity()
    return gf2core.vsum(twisted_character(gf2core.ONES, m) for m in (ident, a, a @ a))


def character_table(bd: BranchData) -> dict[Char4, int]:
    return {chi: chevalley_weil_dim(chi, bd) for chi in gf2core.all_vectors()}


def default_branch_data(a="2", b="3") -> BranchData:
    return BranchData.from_params(CurveParams.parse(a, b))


def sections_for(m: Gf2Mat4, convention: str = "canonical") -> list[Char4]:
    """Characters of x_0..x_4 on a factor on which the group acts through ``m``."""
    if convention == "canonical":
        base = [section_character(i) for i in range(5)]
    elif convention == "paper":
        base = [naive_character(i) for i in range(5)]
    else:
        raise ValueError(f"unknown sign convention {convention!r}")
    return [twisted_character(chi, m) for chi in base]


def factor_twists(a: Gf2Mat4) -> Sequence[Gf2Mat4]:
    return (Gf2Mat4.identity(), a, a @ a)
