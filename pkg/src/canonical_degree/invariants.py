"""Freeness, invariant forms and numerical invariants of the quotient X = T / (Z/2)^4.

The group acts on the i-th factor of T = C1 x C2 x C3 through I, A and A^2.
Invariant cohomology is counted with the Kunneth decomposition: a product of
character eigenvectors is invariant iff its characters sum to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product
from math import prod
from typing import Sequence

from . import covering, gf2core
from .covering import CurveParams
from .errors import NonFreeActionError, NotDivisibleError, SingularMatrixError
from .gf2core import Gf2Mat4

MonomialTriple = tuple[int, int, int]


@dataclass(frozen=True)
class TwistedProduct:
    curves: tuple[CurveParams, CurveParams, CurveParams]
    twist: Gf2Mat4 = gf2core.PAPER_A
    mode: str = "paper"

    def __post_init__(self):
        if len(self.curves) != 3:
            raise ValueError("a twisted product needs exactly three curves")
        if self.mode not in ("paper", "search"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "paper" and not gf2core.check_admissible(self.twist).admissible:
            raise ValueError("twist matrix is not admissible")

    @classmethod
    def from_point(cls, a: Sequence, b: Sequence, twist: Gf2Mat4 = gf2core.PAPER_A, mode="paper"):
        return cls(tuple(CurveParams(x, y) for x, y in zip(a, b, strict=True)), twist, mode)

    def genera(self) -> tuple[int, int, int]:
        return tuple(covering.genus(covering.BranchData.from_params(c)) for c in self.curves)


@dataclass(frozen=True)
class HodgeRecord:
    pg: int
    q1: int
    q2: int
    h11: int
    h21: int
    chi: int
    K3: int

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in ("pg", "q1", "q2", "h11", "h21", "chi", "K3")}


def _require_invertible(a: Gf2Mat4) -> None:
    if not a.is_invertible():
        raise SingularMatrixError("the twist must be invertible")


def is_free(a: Gf2Mat4) -> bool:
    """No nonzero g has fixed points on all three factors simultaneously.

    On a factor twisted by M the element g acts as M g, and only e_0..e_4
    have fixed points on a single curve.
    """
    _require_invertible(a)
    return not fixed_point_witnesses(a)


def fixed_point_witnesses(a: Gf2Mat4) -> list[gf2core.Gf2Vec4]:
    stabs = set(gf2core.stabilizer_generators())
    a2 = a @ a
    return [g for g in gf2core.all_vectors()
            if g != gf2core.ZERO and g in stabs and a.apply(g) in stabs and a2.apply(g) in stabs]


def invariant_canonical_monomials(a: Gf2Mat4, convention: str = "paper") -> set[MonomialTriple]:
    """Triples (i, j, k) with x_i y_j z_k invariant.

    ``"paper"`` uses the sign exponents I_{i,alpha} + A_{j,alpha} + A^2_{k,alpha}
    with the x_0 rows set to zero; ``"canonical"`` uses the characters of the
    1-forms. They agree whenever the correction sum vanishes.
    """
    _require_invertible(a)
    if convention == "paper":
        ident, a2 = Gf2Mat4.identity(), a @ a
        found = set()
        for i, j, k in product(range(5), repeat=3):
            n = [
                (ident[i - 1, al] if i else 0) + (a[j - 1, al] if j else 0) + (a2[k - 1, al] if k else 0)
                for al in range(4)
            ]
            if all(x % 2 == 0 for x in n):
                found.add((i, j, k))
        return found
    chars = [covering.sections_for(m, convention) for m in covering.factor_twists(a)]
    return {
        (i, j, k) for i, j, k in product(range(5), repeat=3)
        if gf2core.vsum((chars[0][i], chars[1][j], chars[2][k])) == gf2core.ZERO
    }


def _count_invariant(char_lists: Sequence[Sequence[gf2core.Gf2Vec4]]) -> int:
    return sum(1 for combo in product(*char_lists) if gf2core.vsum(combo) == gf2core.ZERO)


def kunneth_counts(a: Gf2Mat4, convention: str = "canonical") -> dict[str, int]:
    """Invariant counts per Kunneth piece, keyed by a short label.

    H^{0,0} and H^{1,1} of a curve carry the trivial character; H^{1,0} and
    H^{0,1} carry the five section characters (real characters are self-conjugate).
    """
    one_forms = [covering.sections_for(m, convention) for m in covering.factor_twists(a)]
    counts = {
        "h10": sum(_count_invariant([one_forms[f]]) for f in range(3)),
        "h20": sum(_count_invariant([one_forms[f], one_forms[g]]) for f, g in combinations(range(3), 2)),
        "h30": _count_invariant(one_forms),
        "h11_same": 3,
        "h11_cross": sum(_count_invariant([one_forms[f], one_forms[g]]) for f, g in permutations(range(3), 2)),
        # (1,1) on one factor times (1,0) on another
        "h21_mixed": sum(_count_invariant([one_forms[g]]) for f, g in permutations(range(3), 2)),
        # (1,0) (1,0) (0,1), one entry per choice of the conjugated factor
        "h21_triple": 3 * _count_invariant(one_forms),
    }
    return counts


def hodge_numbers(tp: TwistedProduct, forced: bool = False, convention: str = "canonical") -> HodgeRecord:
    """Hodge numbers of X by Kunneth character counting.

    ``forced=True`` skips the freeness check so the counter can be exercised on
    non-free actions; the output is then not a statement about any smooth variety.
    """
    _require_invertible(tp.twist)
    if not forced and not is_free(tp.twist):
        raise NonFreeActionError("the action has fixed points; the quotient is singular")
    c = kunneth_counts(tp.twist, convention)
    pg, q1, q2 = c["h30"], c["h10"], c["h20"]
    h11 = c["h11_same"] + c["h11_cross"]
    h21 = c["h21_mixed"] + c["h21_triple"]
    if forced:
        chi = 1 - q1 + q2 - pg
        K3 = None
        try:
            K3 = euler_and_K3(tp.genera(), 16)["K3"]
        except NotDivisibleError:
            pass
        return HodgeRecord(pg, q1, q2, h11, h21, chi, K3)
    budget = euler_and_K3(tp.genera(), 16)
    return HodgeRecord(pg, q1, q2, h11, h21, budget["chi"], budget["K3"])


def euler_and_K3(genera: Sequence[int], group_order: int) -> dict[str, int]:
    chi_t = prod(1 - g for g in genera)
    k3_t = 6 * prod(2 * g - 2 for g in genera)
    if chi_t % group_order or k3_t % group_order:
        raise NotDivisibleError(
            f"group order {group_order} does not divide chi(O_T)={chi_t} and K_T^3={k3_t}"
        )
    return {"chi": chi_t // group_order, "K3": k3_t // group_order}


@dataclass(frozen=True)
class DegreeBudget:
    K3: int
    canonical_degree: int | None
    image_degree: int | None
    degree_upper_bound: int

    def to_json(self) -> dict:
        return {
            "K3": self.K3,
            "canonical_degree": self.canonical_degree,
            "image_degree": self.image_degree,
            "degree_upper_bound": self.degree_upper_bound,
        }


def degree_budget(K3: int, quadric_certified: bool, nondegenerate: bool) -> DegreeBudget:
    """Split K^3 = deg(canonical map) * deg(image).

    A nondegenerate hypersurface in P^4 has degree at least 2, with equality
    exactly for a quadric; without a quadric the image degree is at least 3.
    """
    if K3 <= 0:
        raise ValueError("K^3 must be positive")
    if not nondegenerate:
        raise ValueError("a degenerate canonical image contradicts five independent sections")
    if quadric_certified:
        if K3 % 2:
            raise NotDivisibleError(f"K^3 = {K3} is not divisible by the quadric degree 2")
        return DegreeBudget(K3, K3 // 2, 2, K3 // 2)
    return DegreeBudget(K3, None, None, K3 // 3)
