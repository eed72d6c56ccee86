from fractions import Fraction

import pytest
import sympy as sp

from canonical_degree.symbolic import proof, residual_polynomials
from canonical_degree.symbolic.proof import finite_field_scan, proof_identities, verify_proof_identities

import oracles

A1, B1, A2, B2, A3, B3 = oracles.SYMBOLS


def _sympy_steps():
    Pi, Pii, Piii, Piv = oracles.sympy_residuals()
    Pst = (B2 * B3 - B3) * (A2 - A1) - (A2 * A3 - A3) * (B2 - B1)
    return Pi, Pii, Piii, Piv, Pst


def test_all_identities_hold():
    report = verify_proof_identities()
    assert report.ok and report.first_failure is None
    assert set(report.results) >= {"A", "B", "D", "E"}


@pytest.mark.parametrize("ident", proof_identities(), ids=lambda i: i.name)
def test_identity_against_sympy(ident):
    assert sp.expand(oracles.to_sympy(ident.lhs) - oracles.to_sympy(ident.rhs)) == 0


def test_subtraction_step_by_sympy():
    Pi, Pii, Piii, Piv, Pst = _sympy_steps()
    # dividing iv) and iii) by ii) and cross-multiplying gives Q_iv, Q_iii; Q_iv - Q_iii = (st)
    q_iv = (B2 * B3 - B1) * (A2 - A1) - (A2 * A3 - A1) * (B2 - B1)
    q_iii = (B3 - B1) * (A2 - A1) - (A3 - A1) * (B2 - B1)
    assert sp.expand(q_iv - q_iii - Pst) == 0
    x = A1 * (A2 - 1)
    assert sp.expand(x * q_iv - ((A2 - A1) * Piv - (A2 * A3 - A1) * Pii)) == 0
    # the uncleared difference iv) - iii) is not the subtraction polynomial
    assert sp.expand(Piv - Piii - Pst) != 0


def test_case_one_sample_value():
    P = residual_polynomials()
    sub = {"a1": 2, "a2": 2, "b1": 3, "b2": 3, "a3": 4, "b3": 5}
    lhs = P["iii"].substitute(sub).constant_value() - 3 * P["i"].substitute(sub).constant_value()
    assert lhs == -2 == (2 - 1) * (5 - 3) * (2 - 3)


def test_broken_identity_is_reported(monkeypatch):
    real = proof.proof_identities

    def tampered():
        ids = real()
        bad = ids[0]
        ids[0] = proof.Identity(bad.name, bad.description, bad.lhs + 1, bad.rhs)
        return ids

    monkeypatch.setattr(proof, "proof_identities", tampered)
    report = verify_proof_identities()
    assert not report.ok and report.first_failure == "A"


def test_scan_p7_counts():
    r = finite_field_scan(7)
    assert r.tuples_checked == (5 * 4) ** 3 == 8000
    assert r.family_solutions == 20
    assert r.counterexamples == 0


def test_scan_p11():
    r = finite_field_scan(11)
    assert r.tuples_checked == (9 * 8) ** 3
    assert r.family_solutions == 72 and r.counterexamples == 0


@pytest.mark.slow
def test_scan_p13():
    r = finite_field_scan(13)
    assert r.tuples_checked == (11 * 10) ** 3 and r.counterexamples == 0


def test_scan_split_matches_full():
    full = finite_field_scan(7)
    parts = [finite_field_scan(7, first_pair=pair) for pair in proof.admissible_pairs(7)]
    merged = parts[0]
    for part in parts[1:]:
        merged = merged.merge(part)
    assert merged.to_json() == full.to_json()


def test_scan_against_direct_rank_oracle():
    # for p = 5, the matrix rank mod p drops exactly on the family
    p = 5
    pairs = proof.admissible_pairs(p)
    low = 0
    for x in pairs:
        for y in pairs:
            for z in pairs:
                vals = (*x, *y, *z)
                m = oracles.sympy_point_matrix(vals).tolist()
                if oracles.rank_mod_p(m, p) <= 4:
                    low += 1
    assert low == finite_field_scan(p).eq_solutions == 6


@pytest.mark.parametrize("p", [2, 3, 4, 9])
def test_scan_rejects_bad_primes(p):
    with pytest.raises(ValueError):
        finite_field_scan(p)
