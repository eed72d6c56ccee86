"""Points on the curves, the sections s_i = x_i y_i z_i, and the checks built on them.

Numerics only corroborate exact results: whether a quadric exists is decided
by the exact nullspace, and base-point-freeness by exact 2x2 minors.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from .covering import CurveParams, check_curve_constraints
from .errors import ConstraintError
from .symbolic.localized import ConstraintSet
from .symbolic.mpoly import MPoly

CURVE_TOL = 1e-12
BRANCH_AVOID = 1e-3
RANK_TOL = 1e-6
RESIDUAL_FLOOR = 1e-300


@dataclass(frozen=True)
class CurvePoint:
    coords: tuple[complex, ...]

    def residuals(self, params: CurveParams) -> tuple[float, float, float]:
        x0, x1, x2, x3, x4 = self.coords
        a, b = complex(params.a), complex(params.b)
        return (
            abs(x2 ** 2 - (x0 ** 2 - x1 ** 2)),
            abs(x3 ** 2 - (x0 ** 2 - a * x1 ** 2)),
            abs(x4 ** 2 - (x0 ** 2 - b * x1 ** 2)),
        )

    def flip(self, k: int) -> CurvePoint:
        """Change the square-root branch of x_k (k in 2..4)."""
        coords = list(self.coords)
        coords[k] = -coords[k]
        return CurvePoint(tuple(coords))

    def to_json(self) -> list[list[float]]:
        return [[z.real, z.imag] for z in self.coords]


def lift(params: CurveParams, t: complex, branches: Sequence[int] = (1, 1, 1),
         normalize: bool = True) -> CurvePoint:
    """The point over (x0 : x1) = (1 : t) with the given square-root signs."""
    a, b = complex(params.a), complex(params.b)
    t = complex(t)
    squares = (1 - t * t, 1 - a * t * t, 1 - b * t * t)
    roots = [s * cmath.sqrt(q) for s, q in zip(branches, squares)]
    coords = (1 + 0j, t, *roots)
    if normalize:
        scale = max(abs(z) for z in coords)
        coords = tuple(z / scale for z in coords)
    return CurvePoint(tuple(coords))


def _near_branch(t: complex, params: CurveParams) -> bool:
    # the base coordinate is t^2 = x1^2 / x0^2; branch values 0, 1, 1/a, 1/b
    s = t * t
    targets = (0, 1, 1 / complex(params.a), 1 / complex(params.b))
    return any(abs(s - c) < BRANCH_AVOID for c in targets)


def sample_points(params: CurveParams, seed: int, n: int, radius: float = 2.0) -> list[CurvePoint]:
    rng = np.random.default_rng(seed)
    points = []
    while len(points) < n:
        t = complex(*rng.uniform(-radius, radius, size=2))
        if _near_branch(t, params):
            continue
        branches = tuple(int(s) for s in rng.choice((-1, 1), size=3))
        points.append(lift(params, t, branches))
    return points


def evaluate_sections(px: CurvePoint, py: CurvePoint, pz: CurvePoint) -> tuple[complex, ...]:
    return tuple(x * y * z for x, y, z in zip(px.coords, py.coords, pz.coords))


def sample_sections(curves: Sequence[CurveParams], seed: int, n: int) -> list[tuple[complex, ...]]:
    """``n`` section vectors on the product, one independent sample per factor."""
    per_factor = [sample_points(c, seed * 3 + f, n) for f, c in enumerate(curves)]
    return [evaluate_sections(*triple) for triple in zip(*per_factor)]


def quadric_residual(lambdas: Sequence, samples: Sequence[Sequence[complex]]) -> float:
    """max over samples of |sum lambda_i s_i^2| / max_i |lambda_i s_i^2|."""
    lam = np.array([complex(Fraction(x)) if not isinstance(x, complex) else x for x in lambdas])
    if not samples:
        raise ValueError("no samples")
    if not lam.any():
        raise ValueError("lambda must be nonzero")
    worst = 0.0
    for s in samples:
        terms = lam * np.asarray(s, dtype=complex) ** 2
        scale = np.max(np.abs(terms))
        if scale < RESIDUAL_FLOOR:
            raise ValueError("degenerate sample: every term of the quadric vanishes")
        worst = max(worst, float(abs(terms.sum()) / scale))
    return worst


# x_k^2 = L_k . (x0^2, x1^2) on C_{a,b}
def linear_forms(a, b) -> list[tuple]:
    return [(1, 0), (0, 1), (1, -1), (1, -a), (1, -b)]


def pairwise_minors(a, b) -> dict[tuple[int, int], object]:
    """det(L_i, L_j) for all 10 pairs; works for Fractions and polynomials."""
    forms = linear_forms(a, b)
    return {
        (i, j): forms[i][0] * forms[j][1] - forms[i][1] * forms[j][0]
        for i, j in combinations(range(5), 2)
    }


def symbolic_minor_factorizations() -> dict[tuple[int, int], object]:
    """Factor the 10 minors over the constraint generators of one curve."""
    cs = ConstraintSet(indices=(1,))
    a, b = MPoly.var("a1"), MPoly.var("b1")
    return {ij: cs.factor(MPoly.coerce(m)) for ij, m in pairwise_minors(a, b).items()}


_MINOR_CONSTRAINT = {(0, 1): None, (0, 2): None, (0, 3): "a != 0", (0, 4): "b != 0",
                     (1, 2): None, (1, 3): None, (1, 4): None,
                     (2, 3): "a != 1", (2, 4): "b != 1", (3, 4): "a != b"}


def base_point_free_certificate(params) -> bool:
    """Exact check that no two coordinates x_i, x_j vanish together on the curve.

    If x_i = x_j = 0 then (x0^2, x1^2) lies in the kernel of L_i and L_j; when
    det(L_i, L_j) != 0 that forces x0 = x1 = 0 and then every coordinate is 0.
    """
    if isinstance(params, CurveParams):
        a, b = params.a, params.b
    else:
        a, b = (Fraction(x) for x in params)
    for (i, j), minor in pairwise_minors(a, b).items():
        if minor == 0:
            raise ConstraintError(
                _MINOR_CONSTRAINT[(i, j)] or "nonzero minor",
                f"x{i} and x{j} vanish simultaneously: constraint {_MINOR_CONSTRAINT[(i, j)]} fails",
            )
    check_curve_constraints(a, b)
    return True


def numeric_common_zero_sweep(curves: Sequence[CurveParams], seed: int, n: int,
                              floor: float = 1e-12) -> int:
    """Count sampled section vectors whose entries all fall below ``floor``."""
    hits = 0
    for s in sample_sections(curves, seed, n):
        if max(abs(z) for z in s) < floor:
            hits += 1
    return hits


def section_matrix(curves: Sequence[CurveParams], seed: int, n: int,
                   transform: Callable | None = None) -> np.ndarray:
    rows = sample_sections(curves, seed, n)
    if transform is not None:
        rows = [transform(s) for s in rows]
    return np.array(rows, dtype=complex)


def nondegeneracy_check(tp, seed: int, n: int = 8, transform: Callable | None = None,
                        tol: float = RANK_TOL) -> bool:
    """True if the sections span a 5-dimensional space of values at random points.

    ``transform`` rewrites each section vector before the rank test; it exists
    for fault injection. One retry with a fresh seed is allowed.
    """
    if n < 5:
        raise ValueError("need at least five sample triples")
    for attempt in range(2):
        m = section_matrix(tp.curves, seed + 7919 * attempt, n, transform)
        sv = np.linalg.svd(m, compute_uv=False)
        if sv[0] > 0 and sv[-1] / sv[0] > tol:
            return True
    return False


@dataclass(frozen=True)
class QuadricShape:
    nonzero_count: int
    irreducible: bool

    def to_json(self) -> dict:
        return {"nonzero_count": self.nonzero_count, "irreducible": self.irreducible}


def quadric_shape(lambdas) -> QuadricShape:
    """A diagonal quadric factors exactly when it has rank at most 2."""
    lams = getattr(lambdas, "lambdas", lambdas)
    count = sum(1 for x in lams if x != 0)
    if count == 0:
        raise ValueError("lambda must be nonzero")
    return QuadricShape(count, count >= 3)
