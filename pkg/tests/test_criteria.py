import pytest

from iwasawa3.criteria import (
    CaseTag,
    Verdict,
    analyze,
    analyze_inert,
    analyze_split,
    classify,
    h_minus_witness_pi9,
    kummer_rank1_witness,
)


def test_classify():
    assert classify(35) is CaseTag.SPLIT
    assert classify(31) is CaseTag.INERT
    assert classify(21) is CaseTag.INVALID
    assert classify(0) is CaseTag.INVALID
    assert classify(-5) is CaseTag.INVALID
    assert classify(1) is CaseTag.INERT
    assert classify(244) is CaseTag.INERT  # core 61 = 1 mod 3


def test_analyze_d31():
    r = analyze(31)
    assert r.case is CaseTag.INERT
    assert (r.h_plus, r.h_minus) == (1, 3)
    assert r.log_eps_ratio_mod9 == 6
    assert r.lambda_ge2 is Verdict.NO
    assert r.lambda_lower_bound == 1
    assert r.eps0.render() == "(29+3*sqrt(93))/2"
    assert r.consistency_ok


def test_analyze_d211():
    r = analyze(211)
    assert (r.h_plus, r.h_minus) == (1, 3)
    assert r.log_eps_ratio_mod9 == 3
    assert r.lambda_ge2 is Verdict.YES
    assert r.lambda_lower_bound == 2
    assert r.consistency_ok


def test_analyze_d244():
    r = analyze(244)
    assert r.d_raw == 244 and r.d == 61
    assert (r.h_plus, r.h_minus) == (2, 6)
    assert r.log_eps_ratio_mod9 == 0
    assert r.lambda_ge2 is Verdict.NO
    assert r.consistency_ok


def test_analyze_d35():
    r = analyze(35)
    assert (r.h_plus, r.h_minus) == (2, 2)
    assert r.alpha.render() == "(1+sqrt(-35))/2"
    assert r.log_alpha_mod9 == 0
    assert r.lambda_ge2 is Verdict.YES
    assert r.alpha_is_cube is False
    assert r.eps0_kummer_unramified is True
    assert dict(r.criteria_detail)["alpha_global_cube"] == "inapplicable"
    assert r.consistency_ok


def test_analyze_d107():
    r = analyze(107)
    assert (r.h_plus, r.h_minus) == (3, 3)
    assert r.alpha.render() == "(1+sqrt(-107))/2"
    assert r.lambda_ge2 is Verdict.YES
    assert r.alpha_is_cube is False
    detail = dict(r.criteria_detail)
    assert detail["alpha_global_cube"] == "inapplicable"
    assert detail["h_plus_divisible_by_3"] == "yes"
    assert r.r3 == 1  # forces the verdict through the rank bound
    assert r.lambda_lower_bound == 2
    assert r.consistency_ok


def test_analyze_d2_full_pipeline():
    r = analyze(2)
    assert (r.h_minus, r.h_plus) == (1, 1)
    assert r.alpha.render() == "1+sqrt(-2)"
    assert r.log_alpha_mod9 == 3
    assert r.lambda_ge2 is Verdict.NO
    assert r.lambda_lower_bound == 1
    assert r.consistency_ok


def test_analyze_inert_lambda_zero_shape():
    r = analyze(1)  # Q(i), h- = 1
    assert r.case is CaseTag.INERT
    assert r.h_minus == 1
    assert r.lambda_ge2 is Verdict.NO
    assert r.lambda_lower_bound == 0
    assert ("inert_a0_unit", "a0 = 2h- not divisible by 3 (lambda = 0)") in r.criteria_detail


def test_analyze_rejects_invalid():
    with pytest.raises(ValueError):
        analyze(21)
    with pytest.raises(ValueError):
        analyze(0)
    with pytest.raises(ValueError):
        analyze_split(31)
    with pytest.raises(ValueError):
        analyze_inert(35)


@pytest.mark.parametrize("d,scaled", [(2, 8), (2, 50), (35, 140), (61, 244), (31, 124)])
def test_scale_invariance(d, scaled):
    a = analyze(d).to_dict()
    b = analyze(scaled).to_dict()
    a.pop("d_raw")
    b.pop("d_raw")
    assert a == b


def test_kummer_rank1_witness():
    assert kummer_rank1_witness(35) is True
    assert kummer_rank1_witness(2) is True
    assert kummer_rank1_witness(107) is True
    with pytest.raises(ValueError):
        kummer_rank1_witness(31)


def test_h_minus_witness():
    # scan-discovered qualifying instances (split, 3 not dividing h+, verdict yes)
    assert h_minus_witness_pi9(239) is True  # 3 | h-
    assert h_minus_witness_pi9(14) is False  # 3 does not divide h-
    assert h_minus_witness_pi9(41) is False
    with pytest.raises(ValueError):
        h_minus_witness_pi9(107)  # 3 | h+
    with pytest.raises(ValueError):
        h_minus_witness_pi9(2)  # master criterion fails
    with pytest.raises(ValueError):
        h_minus_witness_pi9(31)  # inert


def test_consistency_over_small_range():
    for d in range(1, 120):
        if d % 3 == 0:
            continue
        r = analyze(d)
        assert r.consistency_ok, f"d={d}"
        if r.case is CaseTag.SPLIT:
            assert r.lambda_lower_bound >= 1
            assert r.lambda_lower_bound >= r.r3 + 1
            assert r.eps0_kummer_unramified is True
            assert r.log_eps_ratio_mod9 % 3 == 0
            if r.r3 >= 1:
                assert r.lambda_ge2 is Verdict.YES
