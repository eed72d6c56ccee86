"""Orchestration of every check into a single reproducible certificate."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from . import geometry, gf2core, invariants
from .errors import ConstraintError
from .gf2core import AdmissibilityReport, Gf2Mat4
from .invariants import HodgeRecord
from .symbolic import proof
from .symbolic.relation import ParamPoint, QuadricRelation, generic_rank, build_relation_matrix, nullspace_at, rank_at

SCHEMA = "canonical-degree-cert/1"
DEFAULT_A = ("2", "2", "2")
DEFAULT_B = ("3", "3", "3")
DEFAULT_SEED = 0
DEFAULT_SAMPLES = 100
DEFAULT_PRIMES = (7,)
PROOF_PRIMES = (7, 11, 13)
DEFAULT_TOLERANCES = {"residual": 1e-9, "rank": 1e-6}


class ConfigError(ValueError):
    """The configuration file or flags cannot be parsed."""


class Verdict(str, Enum):
    DEGREE_96 = "DEGREE_96"
    NO_QUADRIC_DEGREE_AT_MOST_64 = "NO_QUADRIC_DEGREE_AT_MOST_64"
    INVALID_INPUT = "INVALID_INPUT"


@dataclass
class VerifyConfig:
    matrix: Gf2Mat4 = gf2core.PAPER_A
    params: tuple[str, ...] = tuple(x for pair in zip(DEFAULT_A, DEFAULT_B) for x in pair)
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    primes: tuple[int, ...] = DEFAULT_PRIMES
    tolerances: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> VerifyConfig:
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(data) - {"matrix", "params", "seed", "samples", "primes", "tolerances"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls()
        try:
            if "matrix" in data:
                cfg.matrix = Gf2Mat4.from_json(data["matrix"])
            if "params" in data:
                cfg.params = _parse_params(data["params"])
            if "seed" in data:
                cfg.seed = _as_int(data["seed"], "seed")
            if "samples" in data:
                cfg.samples = _as_int(data["samples"], "samples")
            if "primes" in data:
                cfg.primes = tuple(_as_int(p, "primes") for p in data["primes"])
            if "tolerances" in data:
                tol = data["tolerances"]
                if not isinstance(tol, dict) or set(tol) - set(DEFAULT_TOLERANCES):
                    raise ConfigError(f"tolerances must be an object with keys {sorted(DEFAULT_TOLERANCES)}")
                cfg.tolerances.update({k: float(v) for k, v in tol.items()})
        except ConfigError:
            raise
        except (TypeError, ValueError, KeyError) as exc:
            raise ConfigError(str(exc)) from exc
        return cfg

    @classmethod
    def load(cls, path) -> VerifyConfig:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_dict(data)


def _as_int(x, name: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ConfigError(f"{name} must be an integer")
    return x


def _parse_params(raw) -> tuple[str, ...]:
    if isinstance(raw, dict):
        if set(raw) != {"a", "b"} or len(raw["a"]) != 3 or len(raw["b"]) != 3:
            raise ConfigError("params object needs 'a' and 'b' lists of three rationals")
        raw = [x for pair in zip(raw["a"], raw["b"]) for x in pair]
    if not isinstance(raw, (list, tuple)) or len(raw) != 6:
        raise ConfigError("params must be six rationals a1, b1, a2, b2, a3, b3")
    for x in raw:
        if not isinstance(x, (str, int)) or isinstance(x, bool):
            raise ConfigError(f"parameter {x!r} must be a 'p/q' string")
    return tuple(str(x) for x in raw)


@dataclass
class Certificate:
    params: dict | None
    matrix: list[list[int]]
    seed: int
    matrix_report: AdmissibilityReport
    free: bool | None = None
    hodge: HodgeRecord | None = None
    bpf: bool | None = None
    nondegenerate: bool | None = None
    rank_at_point: int | None = None
    quadric: QuadricRelation | None = None
    quadric_nonzero_count: int | None = None
    quadric_irreducible: bool = False
    quadric_residual: float | None = None
    identities_ok: bool | None = None
    scans: list[proof.ScanResult] = field(default_factory=list)
    canonical_degree: int | None = None
    degree_upper_bound: int | None = None
    verdict: Verdict = Verdict.INVALID_INPUT
    invalid_reason: str | None = None
    failures: list[str] = field(default_factory=list)

    def gates(self) -> dict[str, bool]:
        return {
            "admissible": self.matrix_report.admissible,
            "free": bool(self.free),
            "bpf": bool(self.bpf),
            "nondegenerate": bool(self.nondegenerate),
            "quadric_present": self.quadric is not None,
            "quadric_irreducible": bool(self.quadric_irreducible),
            "K3_192": self.hodge is not None and self.hodge.K3 == 192,
        }

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "params": self.params,
            "matrix": self.matrix,
            "seed": self.seed,
            "matrix_report": self.matrix_report.to_json(),
            "free": self.free,
            "hodge": None if self.hodge is None else self.hodge.to_json(),
            "bpf": self.bpf,
            "nondegenerate": self.nondegenerate,
            "rank_at_point": self.rank_at_point,
            "quadric": None if self.quadric is None else self.quadric.to_json(),
            "quadric_nonzero_count": self.quadric_nonzero_count,
            "quadric_irreducible": self.quadric_irreducible,
            "quadric_residual": self.quadric_residual,
            "identities_ok": self.identities_ok,
            "scans": [s.to_json() for s in self.scans],
            "canonical_degree": self.canonical_degree,
            "degree_upper_bound": self.degree_upper_bound,
            "verdict": self.verdict.value,
            "invalid_reason": self.invalid_reason,
            "failures": self.failures,
        }

    def dumps(self) -> str:
        return dumps(self.to_json())

    @classmethod
    def from_json(cls, data) -> Certificate:
        if isinstance(data, str):
            data = json.loads(data)
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unsupported certificate schema {data.get('schema')!r}")
        mr = data["matrix_report"]
        return cls(
            params=data["params"],
            matrix=data["matrix"],
            seed=data["seed"],
            matrix_report=AdmissibilityReport(
                mr["invertible"], mr["order"], mr["order_three"], mr["sum_identity"], mr["partition"]
            ),
            free=data["free"],
            hodge=None if data["hodge"] is None else HodgeRecord(**data["hodge"]),
            bpf=data["bpf"],
            nondegenerate=data["nondegenerate"],
            rank_at_point=data["rank_at_point"],
            quadric=None if data["quadric"] is None else QuadricRelation.from_json(data["quadric"]),
            quadric_nonzero_count=data["quadric_nonzero_count"],
            quadric_irreducible=data["quadric_irreducible"],
            quadric_residual=data["quadric_residual"],
            identities_ok=data["identities_ok"],
            scans=[proof.ScanResult(s["p"], s["tuples_checked"], s["eq_solutions"], s["family_solutions"],
                                    s["counterexamples"], [tuple(t) for t in s["examples"]])
                   for s in data["scans"]],
            canonical_degree=data["canonical_degree"],
            degree_upper_bound=data["degree_upper_bound"],
            verdict=Verdict(data["verdict"]),
            invalid_reason=data["invalid_reason"],
            failures=list(data["failures"]),
        )


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def verdict_for(gates: dict[str, bool]) -> Verdict:
    if not (gates["admissible"] and gates["free"]):
        return Verdict.INVALID_INPUT
    if all(gates.values()):
        return Verdict.DEGREE_96
    return Verdict.NO_QUADRIC_DEGREE_AT_MOST_64


def cmd_verify(config: VerifyConfig | None = None) -> Certificate:
    cfg = config or VerifyConfig()
    report = gf2core.check_admissible(cfg.matrix)
    cert = Certificate(params=None, matrix=cfg.matrix.to_json(), seed=cfg.seed, matrix_report=report)
    try:
        point = ParamPoint.parse(cfg.params)
    except ConstraintError as exc:
        cert.invalid_reason = f"constraint violated: {exc.constraint}"
        return cert
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    cert.params = point.to_json()
    if not report.admissible:
        cert.invalid_reason = "twist matrix is not admissible"
        if report.invertible:
            cert.free = invariants.is_free(cfg.matrix)
        return cert
    cert.free = invariants.is_free(cfg.matrix)
    if not cert.free:
        cert.invalid_reason = "group action is not free"
        return cert

    tp = invariants.TwistedProduct(point.curves(), cfg.matrix)
    cert.hodge = invariants.hodge_numbers(tp)
    cert.bpf = all(geometry.base_point_free_certificate(c) for c in tp.curves)
    cert.rank_at_point = rank_at(point)
    cert.quadric = nullspace_at(point)
    cert.nondegenerate = geometry.nondegeneracy_check(tp, cfg.seed, tol=cfg.tolerances["rank"])
    if cert.quadric is not None:
        shape = geometry.quadric_shape(cert.quadric)
        cert.quadric_nonzero_count = shape.nonzero_count
        cert.quadric_irreducible = shape.irreducible
        samples = geometry.sample_sections(tp.curves, cfg.seed, cfg.samples)
        cert.quadric_residual = geometry.quadric_residual(cert.quadric.lambdas, samples)
        if cert.quadric_residual >= cfg.tolerances["residual"]:
            cert.failures.append("quadric residual above tolerance")
            cert.quadric_irreducible = False
        if not shape.irreducible:
            cert.failures.append("quadric is reducible")
    cert.identities_ok = proof.verify_proof_identities().ok
    cert.scans = [proof.finite_field_scan(p) for p in cfg.primes]

    if cert.hodge.K3 != 192 or cert.hodge.chi != -4 or cert.hodge.pg != 5:
        cert.failures.append("invariants differ from chi = -4, K3 = 192, pg = 5")
    if not cert.bpf:
        cert.failures.append("canonical system has base points")
    if not cert.nondegenerate:
        cert.failures.append("canonical image is degenerate")
    if not cert.identities_ok:
        cert.failures.append("proof identity failed")
    if any(s.counterexamples for s in cert.scans):
        cert.failures.append("finite-field scan found counterexamples")
    if (cert.quadric is not None) != point.is_diagonal():
        cert.failures.append("quadric existence disagrees with the family characterization")

    cert.verdict = verdict_for(cert.gates())
    if cert.nondegenerate:
        budget = invariants.degree_budget(cert.hodge.K3, cert.verdict is Verdict.DEGREE_96, True)
        cert.canonical_degree = budget.canonical_degree
        cert.degree_upper_bound = budget.degree_upper_bound
    return cert


def cmd_search() -> dict:
    entries = []
    for m in gf2core.enumerate_admissible():
        free = invariants.is_free(m)
        entries.append({
            "code": m.to_int(),
            "matrix": m.to_json(),
            "order": gf2core.element_order(m),
            "free": free,
            "pg": len(invariant_monomials := invariants.invariant_canonical_monomials(m)),
            "diagonal_monomials": invariant_monomials == {(i, i, i) for i in range(5)},
            "is_paper_matrix": m == gf2core.PAPER_A,
        })
    return {"schema": "canonical-degree-search/1", "count": len(entries), "matrices": entries}


def cmd_certify_proof(primes=PROOF_PRIMES) -> dict:
    identities = proof.verify_proof_identities()
    rank = generic_rank(build_relation_matrix(), order="paper")
    scans = [proof.finite_field_scan(p) for p in primes]
    ok = (identities.ok and rank.rank == 5 and rank.status == "certified"
          and all(s.counterexamples == 0 for s in scans))
    return {
        "schema": "canonical-degree-proof/1",
        "ok": ok,
        "identities": identities.to_json(),
        "symbolic_rank": rank.to_json(),
        "scans": [s.to_json() for s in scans],
    }
