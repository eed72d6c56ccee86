"""Polynomial identities behind the family characterization, and finite-field scans.

Write P_i, ..., P_iv for the residual polynomials and
P_st = (b2 b3 - b3)(a2 - a1) - (a2 a3 - a3)(b2 - b1). Each step of the case
analysis is one identity below. The multipliers on the left are either
permitted units or the case assumption b2 - b1 != 0, so the argument holds
over any field.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .mpoly import MPoly, variables
from .relation import residual_polynomials, residuals_4eq_values


def subtraction_polynomial() -> MPoly:
    a1, b1, a2, b2, a3, b3 = variables()
    return (b2 * b3 - b3) * (a2 - a1) - (a2 * a3 - a3) * (b2 - b1)


@dataclass(frozen=True)
class Identity:
    name: str
    description: str
    lhs: MPoly
    rhs: MPoly

    def holds(self) -> bool:
        return (self.lhs - self.rhs).is_zero()


def proof_identities() -> list[Identity]:
    a1, b1, a2, b2, a3, b3 = variables()
    P = residual_polynomials()
    P_st = subtraction_polynomial()
    a, b = MPoly.var("a1"), MPoly.var("b1")
    case1 = {"a2": a, "b2": b}  # a1 -> a, b1 -> b stay as a1, b1
    return [
        Identity(
            "A",
            "dividing iii) and iv) by ii) and subtracting yields (st); denominators cleared by a1(a2-1)",
            a1 * (a2 - 1) * P_st,
            (a2 - a1) * (P["iv"] - P["iii"]) - a3 * (a2 - 1) * P["ii"],
        ),
        Identity(
            "B0",
            "case b1 = b2: ii) reduces to (a1 - a2) b (b - 1)",
            P["ii"].substitute({"b2": b}),
            (a1 - a2) * b * (b - 1),
        ),
        Identity(
            "B",
            "case b1 = b2, a1 = a2: iii) - b*i) = (a - 1)(b3 - b)(a - b)",
            (P["iii"] - b * P["i"]).substitute(case1),
            (a - 1) * (b3 - b) * (a - b),
        ),
        Identity(
            "C",
            "case b1 = b2 = b3, a1 = a2: i) = (b - 1)(a - a3)",
            P["i"].substitute({**case1, "b3": b}),
            (b - 1) * (a - a3),
        ),
        Identity(
            "D",
            "substituting ii) into (st) gives b3 a1 = a3 b1",
            b1 * P_st + b3 * P["ii"],
            (b2 - b1) * (a2 - 1) * (a1 * b3 - a3 * b1),
        ),
        Identity(
            "E",
            "with b3 a1 = a3 b1, iii) reduces to b1 (a3 - a1)(a2 - b2)",
            P["iii"] - (a2 - 1) * (a1 * b3 - a3 * b1),
            b1 * (a3 - a1) * (a2 - b2),
        ),
        Identity(
            "E'",
            "with b3 a1 = a3 b1, iii) reduces to (b3 - b1) a1 (a2 - b2)",
            P["iii"] - (b2 - 1) * (a1 * b3 - a3 * b1),
            (b3 - b1) * a1 * (a2 - b2),
        ),
    ]


@dataclass
class IdentityReport:
    ok: bool
    results: dict[str, bool]
    first_failure: str | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "results": self.results, "first_failure": self.first_failure}


def verify_proof_identities() -> IdentityReport:
    results = {}
    first = None
    for ident in proof_identities():
        results[ident.name] = ident.holds()
        if not results[ident.name] and first is None:
            first = ident.name
    return IdentityReport(first is None, results, first)


@dataclass
class ScanResult:
    p: int
    tuples_checked: int = 0
    eq_solutions: int = 0
    family_solutions: int = 0
    counterexamples: int = 0
    examples: list[tuple[int, ...]] = field(default_factory=list)

    def merge(self, other: ScanResult) -> ScanResult:
        return ScanResult(
            self.p,
            self.tuples_checked + other.tuples_checked,
            self.eq_solutions + other.eq_solutions,
            self.family_solutions + other.family_solutions,
            self.counterexamples + other.counterexamples,
            (self.examples + other.examples)[:10],
        )

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "tuples_checked": self.tuples_checked,
            "eq_solutions": self.eq_solutions,
            "family_solutions": self.family_solutions,
            "counterexamples": self.counterexamples,
            "examples": [list(t) for t in self.examples],
        }


def admissible_pairs(p: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(2, p) for b in range(2, p) if a != b]


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def finite_field_scan(p: int, first_pair: tuple[int, int] | None = None) -> ScanResult:
    """Check that the four equations force a1 = a2 = a3, b1 = b2 = b3 over F_p.

    ``first_pair`` restricts (a1, b1) to one value so the scan can be split
    across workers; summing the partial results gives the full scan.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p < 5:
        raise ValueError("need p >= 5 for constraint-satisfying parameters to exist")
    pairs = admissible_pairs(p)
    result = ScanResult(p)
    outer = [first_pair] if first_pair is not None else pairs
    for a1, b1 in outer:
        for a2, b2 in pairs:
            # i) and ii) only involve the first two factors and a3, b3 linearly;
            # precompute the pieces that do not depend on the third factor
            x = a1 * (a2 - 1) % p
            y = b1 * (b2 - 1) % p
            ii = ((b2 - b1) * x - (a2 - a1) * y) % p
            for a3, b3 in pairs:
                result.tuples_checked += 1
                if ii:
                    continue
                r = residuals_4eq_values(a1, b1, a2, b2, a3, b3)
                if any(v % p for v in r):
                    continue
                result.eq_solutions += 1
                if a1 == a2 == a3 and b1 == b2 == b3:
                    result.family_solutions += 1
                else:
                    result.counterexamples += 1
                    if len(result.examples) < 10:
                        result.examples.append((a1, b1, a2, b2, a3, b3))
    return result
