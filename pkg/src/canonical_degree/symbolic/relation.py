"""The linear system deciding whether the sections s_i satisfy a diagonal quadric.

Substituting the curve equations into sum(lambda_i s_i^2) and dehomogenizing
with u = x1^2/x0^2, v = y1^2/y0^2, w = z1^2/z0^2 gives

    l0 + l1*uvw + l2*(1-u)(1-v)(1-w)
       + l3*(1-a1 u)(1-a2 v)(1-a3 w) + l4*(1-b1 u)(1-b2 v)(1-b3 w)

whose eight coefficients must vanish. The rows of the resulting 8x5 matrix
are indexed by the monomials 1, uvw, u, v, w, uv, vw, uw.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from ..covering import CurveParams, check_curve_constraints, parse_rational
from ..errors import ConstraintError
from .localized import ConstraintSet, RatFun
from .mpoly import MPoly, variables

ROW_LABELS = ("1", "uvw", "u", "v", "w", "uv", "vw", "uw")
_ROW_MONOMIALS = ((0, 0, 0), (1, 1, 1), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 0, 1))
# rows whose raw coefficient is negated so the matrix reads (0, 0, 1, a_i, b_i)
_NEGATED_ROWS = (2, 3, 4)
# pivot rows used in the hand reduction, column by column
PAPER_PIVOT_ROWS = (0, 1, 2, 5)
# original row indices in the order the reduced matrix is displayed
PAPER_ROW_ORDER = (0, 1, 2, 5, 7, 3, 4, 6)


@dataclass(frozen=True)
class ParamPoint:
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(parse_rational(v) for v in self.values)
        if len(vals) != 6:
            raise ValueError("a parameter point has six coordinates (a1, b1, a2, b2, a3, b3)")
        object.__setattr__(self, "values", vals)
        for i in range(3):
            check_curve_constraints(vals[2 * i], vals[2 * i + 1], label=str(i + 1))

    @classmethod
    def from_ab(cls, a: Sequence, b: Sequence) -> ParamPoint:
        if len(a) != 3 or len(b) != 3:
            raise ValueError("need three a's and three b's")
        return cls(tuple(x for pair in zip(a, b) for x in pair))

    @classmethod
    def parse(cls, texts: Sequence[str]) -> ParamPoint:
        return cls(tuple(parse_rational(t) for t in texts))

    @property
    def a(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.values[0::2]

    @property
    def b(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.values[1::2]

    def curves(self) -> tuple[CurveParams, CurveParams, CurveParams]:
        return tuple(CurveParams(x, y) for x, y in zip(self.a, self.b))

    def is_diagonal(self) -> bool:
        return len(set(self.a)) == 1 and len(set(self.b)) == 1

    def to_json(self) -> dict:
        return {"a": [str(x) for x in self.a], "b": [str(x) for x in self.b]}


@dataclass(frozen=True)
class QuadricRelation:
    lambdas: tuple[Fraction, ...]

    def __post_init__(self):
        lams = tuple(Fraction(x) for x in self.lambdas)
        if len(lams) != 5 or not any(lams):
            raise ValueError("a quadric relation has five coefficients, not all zero")
        object.__setattr__(self, "lambdas", lams)

    def normalized(self) -> QuadricRelation:
        lead = next(x for x in self.lambdas if x)
        return QuadricRelation(tuple(x / lead for x in self.lambdas))

    def to_json(self) -> list[str]:
        return [str(x) for x in self.lambdas]

    @classmethod
    def from_json(cls, data) -> QuadricRelation:
        return cls(tuple(parse_rational(x) for x in data))


@dataclass
class RelationMatrix:
    entries: list[list[MPoly]]
    row_labels: tuple[str, ...] = ROW_LABELS

    def evaluate(self, point: ParamPoint) -> list[list[Fraction]]:
        return [[Fraction(e.evaluate(point.values)) for e in row] for row in self.entries]

    def row(self, label: str) -> list[MPoly]:
        return self.entries[self.row_labels.index(label)]

    def __str__(self) -> str:
        width = max(len(str(e)) for row in self.entries for e in row)
        return "\n".join(
            f"{lab:>3} | " + "  ".join(f"{str(e):>{width}}" for e in row)
            for lab, row in zip(self.row_labels, self.entries)
        )


def _symbolic_params(point):
    if point is None:
        return variables()
    if not isinstance(point, ParamPoint):
        point = ParamPoint(tuple(point))
    return tuple(MPoly.const(v) for v in point.values)


def expand_relation(point=None) -> list[dict[tuple[int, int, int], MPoly]]:
    """For each lambda_k, the expanded polynomial in (u, v, w) before collection."""
    a1, b1, a2, b2, a3, b3 = _symbolic_params(point)
    one = MPoly.const(1)
    factor_triples = [
        None,
        None,
        ((one, one), (one, one), (one, one)),
        ((one, a1), (one, a2), (one, a3)),
        ((one, b1), (one, b2), (one, b3)),
    ]
    columns = [{(0, 0, 0): one}, {(1, 1, 1): one}]
    for triple in factor_triples[2:]:
        # (c - d u)(c - d v)(c - d w), expanded
        col: dict[tuple[int, int, int], MPoly] = {}
        for mono in product((0, 1), repeat=3):
            coeff = one
            for (c, d), bit in zip(triple, mono):
                coeff = coeff * (-d if bit else c)
            col[mono] = col.get(mono, MPoly()) + coeff
        columns.append(col)
    return columns


def build_relation_matrix(point=None) -> RelationMatrix:
    """The 8x5 coefficient matrix, symbolic when ``point`` is None."""
    if point is not None and not isinstance(point, ParamPoint):
        point = ParamPoint(tuple(point))
    columns = expand_relation(point)
    entries = []
    for r, mono in enumerate(_ROW_MONOMIALS):
        row = [col.get(mono, MPoly()) for col in columns]
        if r in _NEGATED_ROWS:
            row = [-e for e in row]
        entries.append(row)
    return RelationMatrix(entries)


def raw_relation_matrix(point=None) -> RelationMatrix:
    """Coefficient matrix without the sign normalization of rows u, v, w."""
    m = build_relation_matrix(point)
    return RelationMatrix([[-e for e in row] if r in _NEGATED_ROWS else row
                           for r, row in enumerate(m.entries)])


@dataclass
class RankResult:
    rank: int | None
    rank_lower: int
    rank_upper: int
    status: str  # "certified" or "inconclusive"
    pivot_certificate: list[MPoly] = field(default_factory=list)
    pivot_factorizations: list[str] = field(default_factory=list)
    witness: MPoly | None = None
    reduced: list[list[RatFun]] = field(default_factory=list)
    reduced_labels: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "rank_lower": self.rank_lower,
            "rank_upper": self.rank_upper,
            "status": self.status,
            "pivot_certificate": [str(p) for p in self.pivot_certificate],
            "pivot_factorizations": self.pivot_factorizations,
            "witness": None if self.witness is None else str(self.witness),
        }


def generic_rank(m: RelationMatrix, constraints: ConstraintSet | None = None,
                 order: str = "auto") -> RankResult:
    """Rank over Q(a, b) using only permitted pivots as divisors.

    Every pivot in ``pivot_certificate`` is a unit in the localized ring, so
    the ranks they certify hold at every admissible parameter point. Once a
    single column remains, any nonzero entry is enough to raise the rank by one
    without dividing by it; that entry is returned as ``witness``.

    ``order="paper"`` follows the pivot rows of the hand reduction and lists
    the reduced rows in the displayed order.
    """
    cs = constraints or ConstraintSet()
    nrows, ncols = len(m.entries), len(m.entries[0])
    rows = [(idx, [RatFun.of(e) for e in row]) for idx, row in enumerate(m.entries)]
    pivots: list[MPoly] = []
    factorizations: list[str] = []
    witness = None
    r = 0
    for col in range(ncols):
        candidates = [k for k in range(r, nrows) if rows[k][1][col]]
        if not candidates:
            continue
        chosen = None
        if order == "paper" and col < len(PAPER_PIVOT_ROWS):
            wanted = [k for k in candidates if rows[k][0] == PAPER_PIVOT_ROWS[col]]
            if wanted and cs.is_permitted(rows[wanted[0]][1][col].num):
                chosen = wanted[0]
        if chosen is None:
            permitted = [k for k in candidates if cs.is_permitted(rows[k][1][col].num)]
            if permitted:
                chosen = min(permitted, key=lambda k: (rows[k][1][col].num.degree(), k))
        if chosen is None:
            if col == ncols - 1:
                witness = rows[candidates[0]][1][col].num
                r += 1
                break
            upper = min(nrows, r + (ncols - col))
            return RankResult(None, r, upper, "inconclusive", pivots, factorizations,
                              reduced=[row for _, row in rows], reduced_labels=[m.row_labels[i] for i, _ in rows])
        rows[r], rows[chosen] = rows[chosen], rows[r]
        idx, prow = rows[r]
        pivot = prow[col]
        pivots.append(pivot.num)
        factorizations.append(str(cs.factor(pivot.num)))
        prow = [e.divide(pivot, cs).reduced(cs) for e in prow]
        rows[r] = (idx, prow)
        for k in range(r + 1, nrows):
            kidx, krow = rows[k]
            factor = krow[col]
            if factor:
                rows[k] = (kidx, [(x - factor * y).reduced(cs) for x, y in zip(krow, prow)])
        r += 1
    reduced = []
    labels = []
    for pos, (idx, row) in enumerate(rows):
        reduced.append(row if pos < len(pivots) else clear_row(row, cs))
        labels.append(m.row_labels[idx])
    if order == "paper":
        position = {idx: pos for pos, (idx, _) in enumerate(rows)}
        reduced = [reduced[position[i]] for i in PAPER_ROW_ORDER]
        labels = [m.row_labels[i] for i in PAPER_ROW_ORDER]
    return RankResult(r, r, r, "certified", pivots, factorizations, witness, reduced, labels)


def clear_row(row: Sequence[RatFun], cs: ConstraintSet) -> list[RatFun]:
    """Scale a row by a permitted unit so its entries are coprime polynomials."""
    den = MPoly.const(1)
    for e in row:
        if e and not e.den.divides(den):
            den = den * e.den
    polys = [(e * RatFun(den)).reduced(cs) for e in row]
    nums = [p.num for p in polys]
    content = cs.common_content(nums)
    return [RatFun(n.exact_div(content)) if n else RatFun(MPoly()) for n in nums]


def rational_rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(matrix)[1])


def rref(matrix: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    rows = [[Fraction(x) for x in row] for row in matrix]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for col in range(ncols):
        k = next((k for k in range(r, len(rows)) if rows[k][col]), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col]:
                f = rows[k][col]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
    return rows, pivots


def nullspace_basis(matrix: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    rows, pivots = rref(matrix)
    ncols = len(matrix[0])
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][free]
        basis.append(v)
    return basis


def nullspace_at(point: ParamPoint) -> QuadricRelation | None:
    """The quadric through the sections at ``point``, or None when there is none."""
    if not isinstance(point, ParamPoint):
        point = ParamPoint(tuple(point))
    basis = nullspace_basis(build_relation_matrix(point).evaluate(point))
    if not basis:
        return None
    if len(basis) > 1:
        # permitted pivots force rank >= 4 on the whole parameter space
        raise AssertionError(f"nullspace of dimension {len(basis)} at {point}")
    return QuadricRelation(tuple(basis[0])).normalized()


def rank_at(point: ParamPoint) -> int:
    if not isinstance(point, ParamPoint):
        point = ParamPoint(tuple(point))
    return rational_rank(build_relation_matrix(point).evaluate(point))


def residual_polynomials() -> dict[str, MPoly]:
    """Left minus right sides of the four equations equivalent to rank <= 4."""
    a1, b1, a2, b2, a3, b3 = variables()
    return {
        "i": (b3 - 1) * (a2 - 1) - (a3 - 1) * (b2 - 1),
        "ii": (b2 - b1) * a1 * (a2 - 1) - (a2 - a1) * b1 * (b2 - 1),
        "iii": (b3 - b1) * a1 * (a2 - 1) - (a3 - a1) * b1 * (b2 - 1),
        "iv": (b2 * b3 - b1) * a1 * (a2 - 1) - (a2 * a3 - a1) * b1 * (b2 - 1),
    }


def residuals_4eq_values(a1, b1, a2, b2, a3, b3):
    """The four residuals at plain values; works over Q and over Z/p alike."""
    return (
        (b3 - 1) * (a2 - 1) - (a3 - 1) * (b2 - 1),
        (b2 - b1) * a1 * (a2 - 1) - (a2 - a1) * b1 * (b2 - 1),
        (b3 - b1) * a1 * (a2 - 1) - (a3 - a1) * b1 * (b2 - 1),
        (b2 * b3 - b1) * a1 * (a2 - 1) - (a2 * a3 - a1) * b1 * (b2 - 1),
    )


def residuals_4eq(point: ParamPoint) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    if not isinstance(point, ParamPoint):
        point = ParamPoint(tuple(point))
    return residuals_4eq_values(*point.values)


__all__ = [
    "ConstraintError",
    "ParamPoint",
    "QuadricRelation",
    "RelationMatrix",
    "RankResult",
    "build_relation_matrix",
    "generic_rank",
    "nullspace_at",
    "rank_at",
    "residuals_4eq",
    "residual_polynomials",
]
