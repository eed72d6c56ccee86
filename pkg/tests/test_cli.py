import json
import subprocess
import sys

import pytest

from canonical_degree import certificate as certmod
from canonical_degree import cli, gf2core
from canonical_degree.certificate import Certificate, ConfigError, Verdict, VerifyConfig, cmd_verify, verdict_for

import oracles


@pytest.fixture(scope="module")
def default_cert():
    return cmd_verify()


def off_family_config():
    return VerifyConfig.from_dict({"params": {"a": ["2", "3", "4"], "b": ["5", "6", "7"]}})


def test_default_verdict(default_cert):
    c = default_cert
    assert c.verdict is Verdict.DEGREE_96
    assert c.hodge.K3 == 192 and c.canonical_degree == 96 == c.hodge.K3 // 2
    assert c.rank_at_point == 4 and c.quadric.to_json() == ["1", "-6", "-3", "3", "-1"]
    assert c.failures == []


def test_off_family_verdict():
    c = cmd_verify(off_family_config())
    assert c.verdict is Verdict.NO_QUADRIC_DEGREE_AT_MOST_64
    assert c.quadric is None and c.rank_at_point == 5 and c.degree_upper_bound == 64
    assert c.failures == []


def test_invalid_parameter_named():
    c = cmd_verify(VerifyConfig.from_dict({"params": ["1", "3", "2", "3", "2", "3"]}))
    assert c.verdict is Verdict.INVALID_INPUT
    assert "a1 != 1" in c.invalid_reason


def test_non_admissible_matrix_invalid():
    c = cmd_verify(VerifyConfig(matrix=gf2core.Gf2Mat4.identity()))
    assert c.verdict is Verdict.INVALID_INPUT and c.free is False


def test_certificate_roundtrip(default_cert):
    text = default_cert.dumps()
    again = Certificate.from_json(text).dumps()
    assert again == text
    assert json.loads(text)["schema"] == "canonical-degree-cert/1"


def test_certificate_reproducible():
    assert cmd_verify(VerifyConfig(seed=42)).dumps() == cmd_verify(VerifyConfig(seed=42)).dumps()


def test_every_gate_is_needed(default_cert):
    gates = default_cert.gates()
    assert verdict_for(gates) is Verdict.DEGREE_96
    for name in gates:
        assert verdict_for({**gates, name: False}) is not Verdict.DEGREE_96


def test_degree_needs_nondegenerate_image(monkeypatch):
    monkeypatch.setattr(certmod.geometry, "nondegeneracy_check", lambda *a, **k: False)
    c = cmd_verify()
    assert c.verdict is not Verdict.DEGREE_96 and c.canonical_degree is None
    assert "canonical image is degenerate" in c.failures


def test_reducible_quadric_blocks_degree(monkeypatch):
    from canonical_degree.symbolic.relation import QuadricRelation
    monkeypatch.setattr(certmod, "nullspace_at", lambda pt: QuadricRelation((1, -1, 0, 0, 0)))
    c = cmd_verify()
    assert c.verdict is not Verdict.DEGREE_96
    assert "quadric is reducible" in c.failures


@pytest.mark.parametrize("data", [
    [],
    {"params": ["2", "3"]},
    {"params": ["x", "3", "2", "3", "2", "3"]},
    {"matrix": [[0, 1]]},
    {"seed": "zero"},
    {"bogus": 1},
    {"tolerances": {"other": 1}},
])
def test_malformed_configs(data):
    with pytest.raises(ConfigError):
        cfg = VerifyConfig.from_dict(data)
        cmd_verify(cfg)


def test_config_file(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({
        "matrix": ["0101", "0111", "1110", "1010"],
        "params": {"a": ["2", "2", "2"], "b": ["3", "3", "3"]},
        "seed": 7, "samples": 50, "primes": [7], "tolerances": {"residual": 1e-9},
    }))
    cfg = VerifyConfig.load(path)
    assert cfg.matrix == gf2core.PAPER_A and cfg.seed == 7 and cfg.samples == 50


def run_main(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_main_verify_default(capsys):
    code, out, _ = run_main(["verify"], capsys)
    assert code == 0 and json.loads(out)["verdict"] == "DEGREE_96"


def test_main_verify_off_family(capsys):
    code, out, _ = run_main(["verify", "--params", "2", "5", "3", "6", "4", "7"], capsys)
    assert code == 0 and json.loads(out)["verdict"] == "NO_QUADRIC_DEGREE_AT_MOST_64"


def test_main_verify_invalid(capsys):
    code, out, err = run_main(["verify", "--params", "1", "3", "2", "3", "2", "3"], capsys)
    assert code == 2 and "a1 != 1" in err


def test_main_malformed_config(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run_main(["verify", "--config", str(path)], capsys)
    assert code == 3 and "malformed config" in err


def test_main_bad_flag_is_config_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--seed", "abc"])
    assert exc.value.code == 3


def test_main_repeatable_prime_and_markdown(capsys):
    code, out, _ = run_main(["verify", "--prime", "5", "--prime", "7", "--markdown"], capsys)
    assert code == 0
    assert "F_5 scan" in out and "F_7 scan" in out and "`DEGREE_96`" in out


def test_main_output_file(tmp_path, capsys):
    path = tmp_path / "cert.json"
    assert cli.main(["verify", "--seed", "3", "-o", str(path)]) == 0
    first = path.read_bytes()
    assert cli.main(["verify", "--seed", "3", "-o", str(path)]) == 0
    assert path.read_bytes() == first


def test_search_report(capsys):
    code, out, _ = run_main(["search"], capsys)
    report = json.loads(out)
    assert code == 0
    assert report["count"] == len(oracles.brute_force_admissible_codes())
    assert [e["code"] for e in report["matrices"]] == oracles.brute_force_admissible_codes()
    assert all(e["order"] == 3 for e in report["matrices"])
    paper = [e for e in report["matrices"] if e["is_paper_matrix"]]
    assert len(paper) == 1 and paper[0]["free"] and paper[0]["pg"] == 5


def test_search_markdown(capsys):
    code, out, _ = run_main(["search", "--markdown"], capsys)
    assert code == 0 and "| yes |" in out


def test_certify_proof(capsys):
    code, out, _ = run_main(["certify-proof", "--prime", "7", "--prime", "11"], capsys)
    report = json.loads(out)
    assert code == 0 and report["ok"]
    assert all(report["identities"]["results"].values())
    assert report["symbolic_rank"]["rank"] == 5
    assert report["symbolic_rank"]["pivot_factorizations"] == ["1", "1", "1", "(a1)*(a2-1)"]
    p7 = report["scans"][0]
    assert (p7["tuples_checked"], p7["family_solutions"], p7["counterexamples"]) == (8000, 20, 0)


def test_certify_proof_bad_prime(capsys):
    code, _, _ = run_main(["certify-proof", "--prime", "4"], capsys)
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "canonical_degree", "verify", "--markdown"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "DEGREE_96" in proc.stdout
