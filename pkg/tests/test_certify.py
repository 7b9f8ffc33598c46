import copy
import json
from fractions import Fraction
from itertools import product

import pytest

from kakeya.certify import (cascade_steps, certify_cascade, certify_refutation_thm2,
                            verify_certificate)
from kakeya.core import PointSet, check_delta_gamma, construct, space
from kakeya.errors import NotKakeyaError
from kakeya.field import FieldSpec
from kakeya.poly import Polynomial

from conftest import gf

F3, F5 = FieldSpec(3), FieldSpec(5)


def round_trip(cert):
    return verify_certificate(json.loads(cert.to_json()))


def test_thm2_refutation_example():
    k = PointSet.from_points(F5, 2, [(0, 0), (1, 1)])
    cert = certify_refutation_thm2(k, 1, 1)
    assert cert.kind == "refutation"
    names = [s["name"] for s in cert.steps]
    assert names == ["size_vs_bound", "monomial_count", "vanishing_on_set", "homogeneous",
                     "vanishing_on_cone", "zero_count"]
    final = cert.final_step
    assert final["outcome"] == "profile_fails" and final["zeros"] <= final["sz_bound"] == 15
    assert round_trip(cert).ok


def test_thm2_consistency_branch():
    cert = certify_refutation_thm2(PointSet.full(F3, 2), 1, 1)
    assert cert.kind == "consistency" and cert.polynomial is None
    assert cert.steps[0]["relation"] == ">=" and cert.steps[0]["bound"] == 2
    assert round_trip(cert).ok


def test_thm2_vacuous_bound_is_consistency():
    cert = certify_refutation_thm2(PointSet(FieldSpec(2), 2, ()), Fraction(1, 2), Fraction(1, 2))
    assert cert.kind == "consistency"


def test_thm2_line_claim_both_branches():
    # q=5, n=3: d = 3, bound C(5, 2) = 10, so a set with full lines can still be small
    spec = F5
    through_origin = [(a, 0, 0) for a in range(5)]
    offset = [(a, 1, 0) for a in range(5)]
    k = PointSet.from_points(spec, 3, through_origin + [(0, 0, 1), (2, 3, 4)])
    cert = certify_refutation_thm2(k, 1, 1)
    claims = [s for s in cert.steps if s["name"] == "line_claim"]
    assert [c["branch"] for c in claims] == ["base_zero"]
    assert round_trip(cert).ok

    k = PointSet.from_points(spec, 3, offset + [(1, 2, 3)])
    cert = certify_refutation_thm2(k, 1, 1)
    claims = [s for s in cert.steps if s["name"] == "line_claim"]
    assert [c["branch"] for c in claims] == ["auxiliary_line"]
    c = claims[0]
    assert c["direction"] == [1, 0, 0] and c["base"] == [0, 1, 0]
    assert len(c["params"]) == 4 and 0 not in c["params"]  # d + 1 nonzero parameters
    assert c["params"] == [1, 2, 3, 4]
    assert cert.final_step["qualifying_vectors"] == 4
    assert round_trip(cert).ok


def test_thm2_with_partial_gamma():
    # gamma = 4/5: lines with >= 4 of 5 points qualify; d = floor(4) - 2 = 2
    spec = F5
    k = PointSet.from_points(spec, 3, [(a, 1, 1) for a in range(4)] + [(0, 0, 1)])
    cert = certify_refutation_thm2(k, Fraction(4, 5), Fraction(4, 5))
    assert cert.params["d"] == 2 and cert.kind == "refutation"
    claims = [s for s in cert.steps if s["name"] == "line_claim"]
    assert claims and all(len(c["params"]) == 3 for c in claims)
    assert round_trip(cert).ok


def test_thm2_random_small_sets_never_contradict_profile_check(rng):
    allpts = list(product(range(5), repeat=3))
    for _ in range(30):
        k = PointSet.from_points(F5, 3, rng.sample(allpts, rng.randrange(0, 10)))
        cert = certify_refutation_thm2(k, 1, 1)
        assert cert.kind == "refutation"
        assert not check_delta_gamma(k, 1, 1).ok
        assert round_trip(cert).ok


def tamper(cert, fn):
    data = copy.deepcopy(cert.to_dict())
    fn(data)
    return verify_certificate(data)


def test_verification_detects_tampering():
    spec = F5
    k = PointSet.from_points(spec, 3, [(a, 1, 0) for a in range(5)] + [(1, 2, 3)])
    cert = certify_refutation_thm2(k, 1, 1)
    assert verify_certificate(cert.to_dict()).ok

    def swap_poly(d):
        d["polynomial"] = "1*x1^3"

    def add_point(d):
        d["points"].append([4, 4, 4])

    def fake_zero_count(d):
        d["steps"][-1]["zeros"] += 1

    def drop_claim(d):
        d["steps"] = [s for s in d["steps"] if s["name"] != "line_claim"]
        for i, s in enumerate(d["steps"]):
            s["index"] = i

    def bad_param(d):
        claim = next(s for s in d["steps"] if s["name"] == "line_claim")
        claim["params"][0] = 0

    for fn in (swap_poly, add_point, fake_zero_count, drop_claim, bad_param):
        assert not tamper(cert, fn).ok, fn.__name__


def test_cascade_consistency_for_constructions(rng):
    for q, n in [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3)]:
        spec = gf(q)
        for kind in ("full", "greedy_lines", "union_random_lines"):
            cert = certify_cascade(construct(kind, spec, n, rng.randrange(100)))
            assert cert.kind == "consistency"
            assert cert.steps[-1]["relation"] == ">="
            assert round_trip(cert).ok


def test_cascade_tampered_witness_rejected():
    k = construct("greedy_lines", F3, 2)
    cert = certify_cascade(k)
    data = cert.to_dict()
    data["steps"][0]["witnesses"][0][1] = [2, 2] if data["steps"][0]["witnesses"][0][1] != [2, 2] else [1, 1]
    assert not verify_certificate(data).ok


def test_cascade_rejects_non_kakeya():
    with pytest.raises(NotKakeyaError) as exc:
        certify_cascade(PointSet.from_points(F3, 2, [(0, 0)]))
    assert exc.value.direction == (0, 1)


def test_cascade_bypass_halts_at_first_direction_without_witness():
    # one full line in direction (0, 0, 1); 5 points < C(6, 3) = 20
    small = PointSet.from_points(F5, 3, [(0, 0, a) for a in range(5)])
    with pytest.raises(NotKakeyaError) as exc:
        certify_cascade(small, skip_kakeya_check=True)
    assert exc.value.direction == (0, 1, 0)


def test_cascade_degenerate_dimension_one():
    for q in (2, 3, 5, 7):
        spec = gf(q)
        with pytest.raises(NotKakeyaError):
            certify_cascade(PointSet.from_points(spec, 1, [(0,)]))
        cert = certify_cascade(PointSet.full(spec, 1))
        assert cert.kind == "consistency" and cert.steps[-1]["bound"] == q - 1
        assert round_trip(cert).ok


def test_cascade_levels_on_zero_polynomial():
    # every level of the cascade is satisfiable only by the zero polynomial
    spec = F3
    sp = space(spec, 2)
    witnesses = {d: (0, 0) for d in sp.directions()}
    steps = []
    rest = cascade_steps(Polynomial.zero(spec, 2), witnesses, sp, steps)
    assert [s["degree"] for s in steps[:-1]] == [2, 1]
    assert all(s["holds"] for s in steps)
    assert rest.is_zero() and steps[-1]["contradiction"] is False


def test_cascade_levels_detect_nonvanishing_polynomial():
    spec = F3
    sp = space(spec, 2)
    witnesses = {d: (0, 0) for d in sp.directions()}
    steps = []
    cascade_steps(Polynomial(spec, 2, {(1, 1): 1}), witnesses, sp, steps)
    assert steps[0]["degree"] == 2 and not steps[0]["holds"]


def test_certificates_are_byte_stable():
    k = PointSet.from_points(F5, 3, [(a, 1, 0) for a in range(5)] + [(1, 2, 3)])
    assert certify_refutation_thm2(k).to_json() == certify_refutation_thm2(k).to_json()
    g = construct("union_random_lines", gf(4), 2, seed=3)
    assert certify_cascade(g).to_json() == certify_cascade(g).to_json()
