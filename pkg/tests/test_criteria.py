import pytest

from partineq.analysis import scan_bo, scan_logconcavity
from partineq.criteria import (
    BOCriterionInputs,
    ProbeStatus,
    check_bo_condition2,
    check_bo_condition3,
    check_prop42,
    check_ratio_descent,
    check_thm43,
    limsup_probe,
    run_bo_criterion,
    run_lc_criterion,
)
from partineq.envelopes import LEHMER
from partineq.errors import DomainError, InvalidSpec
from partineq.expr import IndexMap
from partineq.presets import load_config, preset
from partineq.seq_core import SequenceSpec
from partineq.verdict import Status, Verdict

EULER = SequenceSpec.euler()


@pytest.fixture(scope="module")
def euler_bo():
    inst = preset("bo-euler-example21")
    return inst, run_bo_criterion(inst.inputs, inst.sequence, 300)


def test_euler_bo_thresholds(euler_bo):
    _, v = euler_bo
    assert v.status is Status.VERIFIED
    assert v.thresholds == {"N0": 1, "N1": 1, "N2": 3, "N3": 22, "combined": 22}
    assert v.check("bo-conclusion").horizon == (22, 300)


def test_condition3_witnesses_are_exact_indices(euler_bo):
    _, v = euler_bo
    c3 = v.check("bo-condition-3")
    assert c3.status is Status.REFUTED
    assert [w["n"] for w in c3.witnesses] == list(range(15, 22))


def test_condition2_against_direct_evaluation():
    # c2(a+b)/c1(a) <= 2 fails only at small a
    inst = preset("bo-euler-example21")
    v = check_bo_condition2(inst.inputs, 60)
    assert v.thresholds["N2"] == 3
    assert v.status is Status.VERIFIED


def test_criteria_conclusion_matches_scanner():
    # the criteria module has its own exact pair check; on a region with
    # violations it must list exactly what the scanner lists
    from partineq.criteria import _bo_pairs_exact

    for spec in (EULER, SequenceSpec.mary(2), SequenceSpec.fib_even()):
        vals = spec.values(120)
        from_criteria = {(w["a"], w["b"]) for w in _bo_pairs_exact(vals, 1, 60)}
        from_scan = {ix for ix in scan_bo(spec, 1, 120).violation_set() if ix[0] <= 60}
        assert from_criteria == from_scan


def test_criteria_and_scanner_agree_above_threshold():
    inst = preset("bo-mary", m=2, horizon=300)
    v = run_bo_criterion(inst.inputs, inst.sequence, 300)
    T = v.thresholds["combined"]
    scan = scan_bo(inst.sequence, T, 600)
    assert {ix for ix in scan.violation_set() if ix[0] <= 300} == set()
    assert v.check("bo-conclusion").witnesses == []


def test_nonpositive_g_is_rejected():
    inputs = BOCriterionInputs(env=LEHMER, g=IndexMap.from_expr("n - 5"), h=IndexMap.constant("2"))
    with pytest.raises(InvalidSpec):
        run_bo_criterion(inputs, EULER, 50)


def test_candidate_outside_horizon():
    inst = preset("bo-euler-example21")
    with pytest.raises(DomainError):
        run_bo_criterion(inst.inputs, EULER, 10)


def test_lc_chen():
    inst = preset("lc-chen")
    v = run_lc_criterion(inst.inputs, inst.sequence, 300)
    assert v.ok
    assert v.thresholds["closing"] == 94
    assert v.thresholds["exact_lc_from"] == 26
    side = v.check("closing")
    assert side.ok and side.horizon == (94, 300)
    assert 93 in side.details["failures_below_candidate"]


def test_plane_and_mary_presets():
    inst = preset("bo-planepartition")
    v = run_bo_criterion(inst.inputs, inst.sequence, 200)
    assert v.ok and v.thresholds["N3"] == 16
    inst = preset("bo-mary", m=2, horizon=400)
    v = run_bo_criterion(inst.inputs, inst.sequence, 400)
    assert v.ok and v.thresholds["N0"] == 200 and v.thresholds["combined"] == 295


def test_mary_fixed_constants_refuted():
    inst = preset("bo-mary", m=2, horizon=150, constants="fixed")
    v = run_bo_criterion(inst.inputs, inst.sequence, 150)
    assert v.status is Status.REFUTED
    assert v.checks[0].status is Status.REFUTED
    with pytest.raises(InvalidSpec):
        preset("bo-mary", constants="bogus")
    with pytest.raises(InvalidSpec):
        preset("nope")


def test_ratio_descent_agrees_with_lc_scan():
    for spec in (EULER, SequenceSpec.mary(3), SequenceSpec.plane()):
        rd = check_ratio_descent(spec, 1, 300)
        lc = scan_logconcavity(spec, 2, 300)
        assert {w["n"] for w in rd.witnesses} == {v.indices[0] for v in lc.violations}


def test_thm43_shifted_and_fib():
    assert check_thm43(SequenceSpec.shifted(EULER, 26), 120).ok
    v = check_thm43(SequenceSpec.fib_even(), 60)
    assert v.check("thm43-hypothesis-f0").status is Status.REFUTED
    assert v.check("thm43-hypothesis-logconcave").ok
    assert v.check("thm43-conclusion").status is Status.REFUTED


def test_prop42():
    v = check_prop42(EULER, 26, 200)
    assert v.ok and all(c.ok for c in v.checks)
    v = check_prop42(EULER, 5, 100)
    assert v.status is Status.REFUTED
    with pytest.raises(DomainError):
        check_prop42(EULER, 26, 40)


def test_limsup_probe():
    r = limsup_probe(EULER, 26, 400)
    assert r.status is ProbeStatus.PLAUSIBLE
    assert r.trailing_max < r.f_n0
    r = limsup_probe(SequenceSpec.fib_even(), 2, 100)
    assert r.status is ProbeStatus.VIOLATED_ON_WINDOW
    assert r.to_dict()["status"] == "Violated-on-window"


def test_refuted_verdict_needs_witness():
    with pytest.raises(ValueError):
        Verdict("x", Status.REFUTED)


def test_verdict_round_trip(euler_bo):
    _, v = euler_bo
    assert Verdict.from_dict(v.to_dict()).to_dict() == v.to_dict()


CONFIG = """
[envelope:mine]
f = pi/6*sqrt(24*n - 1)
c1 = sqrt(3)/(12*n)*(1 - k/sqrt(n))
c2 = sqrt(3)/(12*n)*(1 + k/sqrt(n))
N0 = 1
param.k = 1

[criterion:custom]
type = bo
sequence = euler
envelope = mine
g = pi/12*sqrt(24*n - 1) - 1/24
h = 2
N1 = 1
N2 = 9
N3 = 22
horizon = 120

[criterion:lc]
type = lc
sequence = euler
envelope = chen
h = sqrt(24)*pi/6*(1/4*n**(-3/2) - 55588/13824*n**(-5/2))
N1 = 94
N2 = 94
"""


def test_config_criteria():
    cfg = load_config(CONFIG, is_text=True)
    inst = cfg.criteria["custom"]
    v = run_bo_criterion(inst.inputs, inst.sequence, inst.horizon)
    assert v.ok and v.thresholds["combined"] == 22
    assert v.check("bo-condition-3").ok
    inst = cfg.criteria["lc"]
    assert run_lc_criterion(inst.inputs, inst.sequence, 150).ok


def test_config_errors():
    with pytest.raises(InvalidSpec):
        load_config("[criterion:x]\nenvelope = nowhere\n", is_text=True)
    with pytest.raises(InvalidSpec):
        load_config("[envelope:e]\nf = n\n", is_text=True)
    with pytest.raises(InvalidSpec):
        load_config("[criterion:x]\nenvelope = lehmer\ntype = zz\ng = 1\nh = 1\n", is_text=True)


def test_condition3_direct():
    inst = preset("bo-euler-example21")
    v = check_bo_condition3(inst.inputs, 100, search_from=1)
    assert v.thresholds["N3"] == 22
