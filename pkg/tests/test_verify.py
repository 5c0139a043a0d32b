import pytest

from klh.groups import CoxeterContext
from klh.verify import (
    SUITES, Failure, RankCapExceeded, VerificationReport, rank_cap, run_suite,
    suites_for,
)

A3, D4 = CoxeterContext("A", 3), CoxeterContext("D", 4)


def test_suite_selection():
    assert suites_for(A3, "all") == ["formula-a", "smoothness", "bruhat", "klprops"]
    assert suites_for(D4, "all") == ["bounds-d", "smoothness", "bruhat", "klprops"]
    assert suites_for(CoxeterContext("D", 3), "all") == ["smoothness", "bruhat", "klprops"]
    with pytest.raises(ValueError):
        suites_for(D4, "formula-a")
    with pytest.raises(ValueError):
        suites_for(A3, "bounds-d")
    with pytest.raises(ValueError):
        suites_for(A3, "nope")


def test_caps():
    assert rank_cap(A3) == 5 and rank_cap(A3, slow=True) == 6
    assert rank_cap(D4) == 4 and rank_cap(D4, slow=True) == 5
    with pytest.raises(RankCapExceeded):
        run_suite(CoxeterContext("A", 6), "smoothness")


@pytest.mark.parametrize("suite", [s for s in SUITES if s != "formula-a"] + ["all"])
def test_every_suite_passes_on_d4(suite):
    rep = run_suite(D4, suite)
    assert rep.ok, rep.failures[:3]
    assert rep.checked == 192


def test_every_suite_on_small_groups():
    for ctx in (CoxeterContext("A", 1), CoxeterContext("A", 2), A3,
                CoxeterContext("D", 2), CoxeterContext("D", 3)):
        rep = run_suite(ctx, "all")
        assert rep.ok and rep.checked == ctx.order


def test_report_counts_and_max_h():
    rep = run_suite(A3, "formula-a")
    assert rep.max_h_singular == 1
    assert rep.checks == {"formula-a": 24, "bound": 24}
    assert run_suite(A3, "bruhat").max_h_singular is None


def _report(ctx, checked, fails, h):
    r = VerificationReport(ctx, "x", checked=checked, max_h_singular=h)
    r.failures = [Failure((i,), "c", 0, 1) for i in fails]
    r.checks.update({"c": checked})
    return r


def test_merge_is_associative_and_order_independent():
    parts = [(A3, 5, [1], 1), (A3, 7, [], None), (A3, 3, [2, 3], 2)]

    def merged(order):
        acc = _report(A3, 0, [], None)
        for i in order:
            acc.merge(_report(*parts[i]))
        return acc

    a, b = merged([0, 1, 2]), merged([2, 0, 1])
    assert a.max_h_singular == b.max_h_singular == 2
    assert sorted(f.element for f in a.failures) == sorted(f.element for f in b.failures)
    assert a.checks == b.checks
    assert not a.ok


def test_indices_subset():
    rep = run_suite(A3, "smoothness", elements=range(5))
    assert rep.checked == 5 and rep.ok


def test_failure_json_encodes_infinity():
    f = Failure((1, 2), "x", float("inf"), 2)
    assert f.to_json() == {"element": [1, 2], "check": "x", "expected": "inf", "actual": 2}
