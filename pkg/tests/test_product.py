"""Product fixed-point enumeration, classification, and entropy."""

import mpmath as mp
import pytest

from salemforge.product import (FixedPoint, McMullenFactor, ProductSpec,
                                SpecError, build_product_spec, classify,
                                enumerate_fixed_points, product_entropy,
                                siegel_count, SIEGEL, NONSIEGEL)
from salemforge.mau import MAUSequence


@pytest.fixture(scope="module")
def spec_plane(seq19_739):
    return build_product_spec([("mcmullen", 19), ("toric", "plane")],
                              seq19_739)


@pytest.fixture(scope="module")
def spec_double(seq4):
    return build_product_spec([("mcmullen", 739), ("mcmullen", 3259)], seq4)


def test_spec_requires_exact_entry_consumption(seq19_739):
    with pytest.raises(SpecError):
        build_product_spec([("mcmullen", 19)], seq19_739)   # 2 of 4 used
    with pytest.raises(SpecError):
        build_product_spec([("mcmullen", 739)], seq19_739)  # wrong source


def test_spec_rejects_two_toric_factors(seq19_739):
    with pytest.raises(SpecError):
        build_product_spec([("toric", "p1"), ("toric", "plane")],
                           seq19_739.truncate(3))


def test_enumeration_counts(spec_plane, spec_double):
    assert len(enumerate_fixed_points(spec_plane)) == 6      # 2 x N, N = 3
    assert len(enumerate_fixed_points(spec_double)) == 4     # 2 x 2


def test_empty_product_has_one_fixed_point(seq19_739):
    spec = ProductSpec(factors=(), joint_mau=MAUSequence(precision_bits=512),
                       precision_bits=512)
    pts = enumerate_fixed_points(spec)
    assert len(pts) == 1
    assert pts[0].eigenvalue_arguments == ()
    assert classify(pts[0]).classification == SIEGEL


def test_p_addresses_are_nonsiegel(spec_plane):
    for fp in enumerate_fixed_points(spec_plane):
        if "P" in fp.address:
            out = classify(fp, 32, 512)
            assert out.classification == NONSIEGEL
            assert "P" in out.evidence["reason"]


def test_plane_product_counts(spec_plane):
    count, report = siegel_count(spec_plane, 32, 512)
    assert len(report) == 6
    assert count == 3
    assert sum(1 for fp in report if fp.classification == NONSIEGEL) == 3
    # the Siegel points are exactly the Q addresses
    for fp in report:
        assert (fp.classification == SIEGEL) == (fp.address[0] == "Q")


def test_double_factor_counts(spec_double):
    count, report = siegel_count(spec_double, 32, 512)
    assert len(report) == 4 and count == 1
    siegel_addrs = [fp.address for fp in report
                    if fp.classification == SIEGEL]
    assert siegel_addrs == [("Q", "Q")]


def test_classification_invariant_under_reordering(seq4):
    fwd = build_product_spec([("mcmullen", 739), ("mcmullen", 3259)], seq4)
    # swap the entries to swap factor order coherently
    swapped = MAUSequence(entries=seq4.entries[2:] + seq4.entries[:2],
                          degree_bound=seq4.degree_bound,
                          certificates=seq4.certificates,
                          relation_audit=seq4.relation_audit,
                          precision_bits=seq4.precision_bits)
    rev = build_product_spec([("mcmullen", 3259), ("mcmullen", 739)], swapped)
    _, rf = siegel_count(fwd, 32, 512)
    _, rr = siegel_count(rev, 32, 512)
    fwd_map = {fp.address: fp.classification for fp in rf}
    rev_map = {fp.address[::-1]: fp.classification for fp in rr}
    assert fwd_map == rev_map


def test_entropy_of_plane_product(spec_plane):
    e = product_entropy(spec_plane)
    with mp.workprec(300):
        oracle = mp.mpf("0.276265276471051153650071446194313256961608122")
    assert abs(e.mid - oracle) < mp.mpf(2) ** -80
    assert e.lo > 0


def test_entropy_additivity(spec_plane, spec_double, seq4):
    single = build_product_spec([("mcmullen", 739)], seq4.truncate(2))
    e1 = product_entropy(single)
    e2 = product_entropy(spec_double)
    from salemforge.roots import salem_eta, log_ball
    phi2 = seq4.entries[2].minimal_poly
    expect = e1 + log_ball(salem_eta(phi2, 512), 512)
    assert abs(e2.mid - expect.mid) <= e2.rad + expect.rad + mp.mpf(2) ** -400


def test_pure_toric_entropy_is_zero(seq19_739):
    spec = build_product_spec([("toric", "p1xp1")], seq19_739.truncate(2))
    with pytest.warns(UserWarning):
        e = product_entropy(spec)
    assert e.mid == 0 and e.rad == 0


def test_undetermined_on_coarse_precision(spec_plane):
    # classify at a precision far above the stored argument accuracy:
    # the radii check must refuse rather than silently classify
    fp = next(f for f in enumerate_fixed_points(spec_plane)
              if f.address[0] == "Q")
    out = classify(fp, 32, 4096)
    assert out.classification == "Undetermined"
    assert "raise_precision_to" in out.evidence["remediation"]
