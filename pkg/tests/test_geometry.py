import random
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from canonical_degree import geometry
from canonical_degree.covering import CurveParams
from canonical_degree.errors import ConstraintError
from canonical_degree.invariants import TwistedProduct
from canonical_degree.symbolic import ParamPoint, nullspace_at

from conftest import random_curve_pair

FAMILY = ParamPoint.from_ab([2, 2, 2], [3, 3, 3])
OFF = ParamPoint.from_ab([2, 3, 4], [5, 6, 7])
C23 = CurveParams.parse("2", "3")


def test_lift_at_ramification_point():
    p = geometry.lift(C23, 0, branches=(1, -1, 1), normalize=False)
    assert p.coords == (1, 0, 1, -1, 1)


def test_lift_squares_before_normalization():
    p = geometry.lift(C23, 2, normalize=False)
    x2, x3, x4 = p.coords[2:]
    assert np.allclose([x2 ** 2, x3 ** 2, x4 ** 2], [-3, -7, -11], atol=1e-12)


def test_sampled_points_lie_on_curve():
    for pt in geometry.sample_points(C23, seed=3, n=500):
        assert max(abs(z) for z in pt.coords) == pytest.approx(1.0)
        assert max(pt.residuals(C23)) < 1e-12


def test_sampling_avoids_branch_points():
    for pt in geometry.sample_points(C23, seed=4, n=500):
        t = pt.coords[1] / pt.coords[0]
        assert not geometry._near_branch(t, C23)


def test_sampling_is_seeded():
    assert geometry.sample_points(C23, 9, 20) == geometry.sample_points(C23, 9, 20)
    assert geometry.sample_points(C23, 9, 20) != geometry.sample_points(C23, 10, 20)


def test_evaluate_sections():
    p = geometry.CurvePoint((1, 0, 1, 1, 1))
    assert geometry.evaluate_sections(p, p, p) == (1, 0, 1, 1, 1)
    px, py, pz = geometry.sample_points(C23, 1, 3)
    s = geometry.evaluate_sections(px, py, pz)
    assert s[1] == px.coords[1] * py.coords[1] * pz.coords[1]


def test_no_common_zero_of_sections():
    assert geometry.numeric_common_zero_sweep(FAMILY.curves(), seed=2, n=1000) == 0
    smallest = min(max(abs(z) for z in s) for s in geometry.sample_sections(FAMILY.curves(), 2, 1000))
    assert smallest > 1e-6


def test_family_quadric_residual():
    lam = nullspace_at(FAMILY).lambdas
    samples = geometry.sample_sections(FAMILY.curves(), seed=0, n=100)
    assert geometry.quadric_residual(lam, samples) < 1e-9


@pytest.mark.parametrize("n", [1, 10, 1000, 10000])
def test_family_residual_over_sample_sizes(n):
    lam = nullspace_at(FAMILY).lambdas
    samples = geometry.sample_sections(FAMILY.curves(), seed=n, n=n)
    assert geometry.quadric_residual(lam, samples) < 1e-9


def test_residual_is_scale_free():
    lam = nullspace_at(FAMILY).lambdas
    samples = geometry.sample_sections(FAMILY.curves(), seed=5, n=50)
    base = geometry.quadric_residual(lam, samples)
    scaled = geometry.quadric_residual([Fraction(-8) * x for x in lam], samples)
    assert scaled == pytest.approx(base, rel=1e-6, abs=1e-15)


def test_off_family_probe_never_vanishes():
    rng = random.Random(11)
    samples = geometry.sample_sections(OFF.curves(), seed=6, n=100)
    for _ in range(200):
        lam = [Fraction(rng.randint(-20, 20), rng.randint(1, 20)) for _ in range(5)]
        if not any(lam):
            continue
        assert geometry.quadric_residual(lam, samples) > 1e-3


def test_residual_rejects_degenerate_input():
    with pytest.raises(ValueError):
        geometry.quadric_residual([1, 0, 0, 0, 0], [(0, 1, 1, 1, 1)])
    with pytest.raises(ValueError):
        geometry.quadric_residual([1, 1, 1, 1, 1], [])


def test_branch_flip_invariance():
    lam = nullspace_at(FAMILY).lambdas
    curves = FAMILY.curves()
    triples = list(zip(*(geometry.sample_points(c, 20 + f, 30) for f, c in enumerate(curves))))
    base = geometry.quadric_residual(lam, [geometry.evaluate_sections(*t) for t in triples])
    for flips in product((False, True), repeat=3):
        flipped = []
        for px, py, pz in triples:
            for k, on in zip((2, 3, 4), flips):
                if on:
                    px = px.flip(k)
            flipped.append(geometry.evaluate_sections(px, py, pz))
        assert geometry.quadric_residual(lam, flipped) == base


def test_bpf_certificate_true():
    assert geometry.base_point_free_certificate(C23) is True


def test_bpf_invalid_parameter():
    with pytest.raises(ConstraintError) as err:
        geometry.base_point_free_certificate((1, 3))
    assert err.value.constraint == "a != 1"
    with pytest.raises(ConstraintError) as err:
        geometry.base_point_free_certificate((5, 5))
    assert err.value.constraint == "a != b"


def test_symbolic_minors_factor_over_generators():
    facts = geometry.symbolic_minor_factorizations()
    assert len(facts) == 10
    assert all(f is not None for f in facts.values())
    assert dict(facts[(3, 4)].exponents) == {"a1-b1": 1} and facts[(3, 4)].constant == 1
    assert dict(facts[(2, 3)].exponents) == {"a1-1": 1}


def test_bpf_agrees_with_minor_path():
    rng = random.Random(3)
    for _ in range(100):
        a, b = random_curve_pair(rng)
        minors_ok = all(m != 0 for m in geometry.pairwise_minors(a, b).values())
        assert geometry.base_point_free_certificate(CurveParams(a, b)) == minors_ok


def test_nondegeneracy():
    tp = TwistedProduct(FAMILY.curves())
    assert geometry.nondegeneracy_check(tp, seed=0)
    assert geometry.nondegeneracy_check(tp, seed=0) == geometry.nondegeneracy_check(tp, seed=0)


def test_nondegeneracy_detects_duplicated_section():
    tp = TwistedProduct(FAMILY.curves())
    assert not geometry.nondegeneracy_check(tp, seed=0, transform=lambda s: (*s[:4], s[3]))


@pytest.mark.parametrize("lam, count, irreducible", [
    ((1, -6, -3, 3, -1), 5, True),
    ((1, -1, 0, 0, 0), 2, False),
    ((1, 0, 0, 0, 0), 1, False),
])
def test_quadric_shape(lam, count, irreducible):
    shape = geometry.quadric_shape(lam)
    assert (shape.nonzero_count, shape.irreducible) == (count, irreducible)


def test_family_quadric_is_irreducible():
    assert geometry.quadric_shape(nullspace_at(FAMILY)).irreducible


def test_curve_point_json():
    data = geometry.lift(C23, 0).to_json()
    assert data[0] == [1.0, 0.0] and len(data) == 5
