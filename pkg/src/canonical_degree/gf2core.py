"""4x4 linear algebra over GF(2) and the search for admissible twist matrices.

Vectors are columns and matrices act on the left, so ``A @ e_i`` is column
``i`` of ``A``. Vectors are tuples of four bits ``(v1, v2, v3, v4)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .errors import SingularMatrixError

Gf2Vec4 = tuple[int, int, int, int]

# |GL(4, F_2)|; no element order can exceed it
GL4_ORDER = 20160


def vec(*bits: int) -> Gf2Vec4:
    if len(bits) == 1 and not isinstance(bits[0], int):
        bits = tuple(bits[0])
    if len(bits) != 4 or any(b not in (0, 1) for b in bits):
        raise ValueError(f"expected four bits, got {bits!r}")
    return tuple(int(b) for b in bits)  # type: ignore[return-value]


ZERO: Gf2Vec4 = (0, 0, 0, 0)
ONES: Gf2Vec4 = (1, 1, 1, 1)


def vadd(u: Gf2Vec4, v: Gf2Vec4) -> Gf2Vec4:
    return tuple(x ^ y for x, y in zip(u, v))  # type: ignore[return-value]


def vsum(vectors: Iterable[Gf2Vec4]) -> Gf2Vec4:
    total = ZERO
    for v in vectors:
        total = vadd(total, v)
    return total


def dot(u: Gf2Vec4, v: Gf2Vec4) -> int:
    return sum(x & y for x, y in zip(u, v)) & 1


def basis(i: int) -> Gf2Vec4:
    """Standard basis vector e_i for i in 1..4; e_0 is e_1 + e_2 + e_3 + e_4."""
    if i == 0:
        return vsum(basis(k) for k in range(1, 5))
    if not 1 <= i <= 4:
        raise IndexError(f"basis index must be in 0..4, got {i}")
    return tuple(int(k == i - 1) for k in range(4))  # type: ignore[return-value]


def stabilizer_generators() -> list[Gf2Vec4]:
    """(e_0, e_1, e_2, e_3, e_4), recomputed on every call."""
    return [basis(i) for i in range(5)]


def all_vectors() -> list[Gf2Vec4]:
    return [tuple(bits) for bits in product((0, 1), repeat=4)]  # type: ignore[misc]


@dataclass(frozen=True)
class Gf2Mat4:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ValueError("a Gf2Mat4 needs 4 rows of 4 entries")
        if any(x not in (0, 1) for r in rows for x in r):
            raise ValueError("entries must be 0 or 1")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls) -> Gf2Mat4:
        return cls(tuple(tuple(int(i == j) for j in range(4)) for i in range(4)))

    @classmethod
    def from_int(cls, code: int) -> Gf2Mat4:
        """Decode the 16-bit row-major encoding; entry (0, 0) is the top bit."""
        if not 0 <= code < 1 << 16:
            raise ValueError("code must fit in 16 bits")
        bits = [(code >> (15 - k)) & 1 for k in range(16)]
        return cls(tuple(tuple(bits[4 * i:4 * i + 4]) for i in range(4)))

    def to_int(self) -> int:
        code = 0
        for x in self.flat():
            code = (code << 1) | x
        return code

    def flat(self) -> list[int]:
        return [x for r in self.rows for x in r]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Gf2Vec4:
        return tuple(r[j] for r in self.rows)  # type: ignore[return-value]

    def transpose(self) -> Gf2Mat4:
        return Gf2Mat4(tuple(zip(*self.rows)))

    def apply(self, v: Sequence[int]) -> Gf2Vec4:
        return tuple(sum(a & x for a, x in zip(r, v)) & 1 for r in self.rows)  # type: ignore[return-value]

    def __matmul__(self, other):
        if isinstance(other, Gf2Mat4):
            return mat_mul(self, other)
        return self.apply(other)

    def __add__(self, other: Gf2Mat4) -> Gf2Mat4:
        return Gf2Mat4(tuple(tuple(x ^ y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __pow__(self, n: int) -> Gf2Mat4:
        if n < 0:
            raise ValueError("negative powers are not supported")
        result, base = Gf2Mat4.identity(), self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.flat())

    def rank(self) -> int:
        return gf2_rank([int("".join(map(str, r)), 2) for r in self.rows])

    def is_invertible(self) -> bool:
        return self.rank() == 4

    # -- serialization -------------------------------------------------
    def to_text(self) -> str:
        return "\n".join("".join(str(x) for x in r) for r in self.rows)

    @classmethod
    def from_text(cls, text: str) -> Gf2Mat4:
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        return cls(tuple(tuple(int(ch) for ch in ln.replace(" ", "")) for ln in lines))

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    @classmethod
    def from_json(cls, data) -> Gf2Mat4:
        if isinstance(data, str):
            data = json.loads(data)
        rows = []
        for r in data:
            rows.append(tuple(int(ch) for ch in r) if isinstance(r, str) else tuple(r))
        return cls(tuple(rows))

    def __str__(self) -> str:
        return self.to_text()


def gf2_rank(rows: list[int]) -> int:
    """Rank of a list of bit-packed rows, by elimination."""
    work = list(rows)
    rank = 0
    while work:
        pivot = work.pop()
        if not pivot:
            continue
        rank += 1
        low = pivot & -pivot
        work = [r ^ pivot if r & low else r for r in work]
    return rank


def mat_mul(a: Gf2Mat4, b: Gf2Mat4) -> Gf2Mat4:
    cols = list(zip(*b.rows))
    return Gf2Mat4(tuple(
        tuple(sum(x & y for x, y in zip(r, c)) & 1 for c in cols) for r in a.rows
    ))


PAPER_A = Gf2Mat4((
    (0, 1, 0, 1),
    (0, 1, 1, 1),
    (1, 1, 1, 0),
    (1, 0, 1, 0),
))


def element_order(a: Gf2Mat4) -> int:
    if not a.is_invertible():
        raise SingularMatrixError("element_order needs an invertible matrix")
    ident = Gf2Mat4.identity()
    power = a
    for n in range(1, GL4_ORDER + 1):
        if power == ident:
            return n
        power = power @ a
    raise AssertionError("order exceeded |GL(4,2)|")  # pragma: no cover


def translates(a: Gf2Mat4) -> list[Gf2Vec4]:
    """The 15 vectors e_i, A e_i, A^2 e_i for i = 0..4, in that order."""
    gens = stabilizer_generators()
    a2 = a @ a
    return gens + [a.apply(g) for g in gens] + [a2.apply(g) for g in gens]


def has_partition_property(a: Gf2Mat4) -> bool:
    vs = translates(a)
    return ZERO not in vs and len(set(vs)) == 15


@dataclass(frozen=True)
class AdmissibilityReport:
    invertible: bool
    order: int | None
    order_three: bool
    sum_identity: bool
    partition: bool

    @property
    def admissible(self) -> bool:
        return self.invertible and self.order_three and self.partition

    def to_json(self) -> dict:
        return {
            "invertible": self.invertible,
            "order": self.order,
            "order_three": self.order_three,
            "sum_identity": self.sum_identity,
            "partition": self.partition,
            "admissible": self.admissible,
        }


def check_admissible(a: Gf2Mat4) -> AdmissibilityReport:
    invertible = a.is_invertible()
    order = element_order(a) if invertible else None
    return AdmissibilityReport(
        invertible=invertible,
        order=order,
        order_three=order == 3,
        sum_identity=(Gf2Mat4.identity() + a + a @ a).is_zero(),
        partition=has_partition_property(a),
    )


def enumerate_admissible() -> list[Gf2Mat4]:
    """Every admissible matrix, scanning all 2**16 codes in increasing order.

    Cheap filters (A^3 = I, A != I, partition) run before the full report.
    """
    ident = Gf2Mat4.identity()
    found = []
    for code in range(1 << 16):
        a = Gf2Mat4.from_int(code)
        if a == ident or (a @ a) @ a != ident:
            continue
        if has_partition_property(a) and check_admissible(a).admissible:
            found.append(a)
    return found
