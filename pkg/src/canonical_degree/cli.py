"""Command-line entry point: ``canonical-degree verify | search | certify-proof``.

Exit codes: 0 verified (either verdict), 1 a check that should hold failed,
2 invalid input, 3 malformed config.
"""

from __future__ import annotations

import argparse
import sys

from . import certificate as certmod
from .certificate import Certificate, ConfigError, Verdict, VerifyConfig
from .gf2core import Gf2Mat4

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_CONFIG = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="canonical-degree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def output_flags(p):
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="fmt", action="store_const", const="json", default="json")
        fmt.add_argument("--markdown", dest="fmt", action="store_const", const="markdown")
        p.add_argument("-o", "--output", help="write the report here instead of stdout")

    verify = sub.add_parser("verify", help="run every check for one parameter point")
    verify.add_argument("--config", help="JSON config with matrix, params, seed, samples, primes, tolerances")
    verify.add_argument("--seed", type=int)
    verify.add_argument("--samples", type=int)
    verify.add_argument("--prime", type=int, action="append", dest="primes")
    verify.add_argument("--params", nargs=6, metavar=("A1", "B1", "A2", "B2", "A3", "B3"))
    verify.add_argument("--matrix", help="four rows of bits separated by commas, e.g. 0101,0111,1110,1010")
    verify.add_argument("--residual-tol", type=float)
    verify.add_argument("--rank-tol", type=float)
    output_flags(verify)

    search = sub.add_parser("search", help="list every admissible twist matrix")
    output_flags(search)

    proof = sub.add_parser("certify-proof", help="check the family characterization")
    proof.add_argument("--prime", type=int, action="append", dest="primes")
    output_flags(proof)
    return parser


def config_from_args(args) -> VerifyConfig:
    cfg = VerifyConfig.load(args.config) if args.config else VerifyConfig()
    if args.seed is not None:
        cfg.seed = args.seed
    if args.samples is not None:
        cfg.samples = args.samples
    if args.primes:
        cfg.primes = tuple(args.primes)
    if args.params:
        cfg.params = tuple(args.params)
    if args.matrix:
        try:
            cfg.matrix = Gf2Mat4.from_json(args.matrix.split(","))
        except ValueError as exc:
            raise ConfigError(f"bad --matrix: {exc}") from exc
    if args.residual_tol is not None:
        cfg.tolerances["residual"] = args.residual_tol
    if args.rank_tol is not None:
        cfg.tolerances["rank"] = args.rank_tol
    if cfg.samples < 1:
        raise ConfigError("samples must be positive")
    return cfg


def render_certificate_markdown(cert: Certificate) -> str:
    d = cert.to_json()
    lines = [f"# Canonical degree certificate ({d['schema']})", "", f"**Verdict:** `{d['verdict']}`", ""]
    if d["invalid_reason"]:
        lines += [f"Invalid input: {d['invalid_reason']}", ""]
    if d["params"]:
        lines.append(f"- parameters: a = ({', '.join(d['params']['a'])}), b = ({', '.join(d['params']['b'])})")
    lines.append("- twist matrix: " + " / ".join("".join(map(str, r)) for r in d["matrix"]))
    mr = d["matrix_report"]
    lines.append(f"- matrix: order {mr['order']}, I+A+A^2=0: {mr['sum_identity']}, "
                 f"partition: {mr['partition']}, admissible: {mr['admissible']}")
    lines.append(f"- free action: {d['free']}")
    if d["hodge"]:
        h = d["hodge"]
        lines.append(f"- invariants: p_g={h['pg']}, q1={h['q1']}, q2={h['q2']}, h11={h['h11']}, "
                     f"h21={h['h21']}, chi={h['chi']}, K^3={h['K3']}")
    lines.append(f"- base point free: {d['bpf']}")
    lines.append(f"- nondegenerate image: {d['nondegenerate']}")
    lines.append(f"- relation matrix rank: {d['rank_at_point']}")
    if d["quadric"]:
        lines.append(f"- quadric: ({', '.join(d['quadric'])}), {d['quadric_nonzero_count']} nonzero terms, "
                     f"residual {d['quadric_residual']:.3e}")
    else:
        lines.append("- quadric: none")
    lines.append(f"- proof identities: {d['identities_ok']}")
    for s in d["scans"]:
        lines.append(f"- F_{s['p']} scan: {s['tuples_checked']} tuples, {s['family_solutions']} family, "
                     f"{s['counterexamples']} counterexamples")
    if d["canonical_degree"] is not None:
        lines.append(f"- canonical degree: {d['canonical_degree']} = {d['hodge']['K3']}/2")
    elif d["degree_upper_bound"] is not None:
        lines.append(f"- canonical degree at most {d['degree_upper_bound']}")
    for f in d["failures"]:
        lines.append(f"- FAILED: {f}")
    return "\n".join(lines) + "\n"


def render_search_markdown(report: dict) -> str:
    lines = [f"# Admissible twist matrices ({report['count']})", "",
             "| code | rows | order | free | p_g | default |", "|---|---|---|---|---|---|"]
    for e in report["matrices"]:
        rows = " ".join("".join(map(str, r)) for r in e["matrix"])
        lines.append(f"| {e['code']} | {rows} | {e['order']} | {e['free']} | {e['pg']} | "
                     f"{'yes' if e['is_paper_matrix'] else ''} |")
    return "\n".join(lines) + "\n"


def render_proof_markdown(report: dict) -> str:
    lines = [f"# Family characterization: {'OK' if report['ok'] else 'FAILED'}", ""]
    for name, ok in report["identities"]["results"].items():
        lines.append(f"- identity {name}: {ok}")
    r = report["symbolic_rank"]
    lines.append(f"- symbolic rank {r['rank']} ({r['status']}), divisors: {', '.join(r['pivot_factorizations'])}")
    for s in report["scans"]:
        lines.append(f"- F_{s['p']}: {s['tuples_checked']} tuples, {s['family_solutions']} family, "
                     f"{s['counterexamples']} counterexamples")
    return "\n".join(lines) + "\n"


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        try:
            cert = certmod.cmd_verify(config_from_args(args))
        except ConfigError as exc:
            print(f"malformed config: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        text = cert.dumps() if args.fmt == "json" else render_certificate_markdown(cert)
        _emit(text, args.output)
        if cert.verdict is Verdict.INVALID_INPUT:
            print(f"invalid input: {cert.invalid_reason}", file=sys.stderr)
            return EXIT_INVALID
        return EXIT_CHECK_FAILED if cert.failures else EXIT_OK
    if args.command == "search":
        report = certmod.cmd_search()
        _emit(certmod.dumps(report) if args.fmt == "json" else render_search_markdown(report), args.output)
        return EXIT_OK
    primes = tuple(args.primes) if args.primes else certmod.PROOF_PRIMES
    try:
        report = certmod.cmd_certify_proof(primes)
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(certmod.dumps(report) if args.fmt == "json" else render_proof_markdown(report), args.output)
    return EXIT_OK if report["ok"] else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
