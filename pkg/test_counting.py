import pytest
from pydantic import ValidationError

from padic_solve.core.errors import DomainError, InternalConsistencyError, ResourceLimitError, UnsupportedCaseError
from padic_solve.models.arith import FactorList
from padic_solve.models.problem import CaseTag, CountReport, ProblemInstance, SolutionSet
from padic_solve.services.counting import (
    count_mod_p,
    count_solutions,
    enumerate_k_eq_p,
    enumerate_pnmidk,
    enumerate_solutions,
    is_wieferich_base,
    pair_count,
    reduction_degree,
)
from padic_solve.services.oracle import brute_force


def instance(g, n, k, p, e):
    return ProblemInstance(g=g, n=n, k=k, p=p, e=e)


def test_instance_derives_order_and_reduces_base():
    inst = ProblemInstance(g=52, n=1, k=1, p=7, e=2, m=99)
    assert inst.g == 3
    assert inst.m == 6
    assert inst.window == 294
    assert inst.case_tag == CaseTag.P_NDIVIDES_K


@pytest.mark.parametrize(
    "fields",
    [
        dict(g=3, n=0, k=1, p=7, e=1),
        dict(g=3, n=1, k=0, p=7, e=1),
        dict(g=3, n=1, k=1, p=7, e=0),
        dict(g=3, n=1, k=1, p=9, e=1),
        dict(g=14, n=1, k=1, p=7, e=1),
    ],
)
def test_instance_rejects_invalid_parameters(fields):
    with pytest.raises(DomainError):
        ProblemInstance(**fields)


def test_instance_window_is_bounded():
    with pytest.raises(ResourceLimitError):
        instance(2, 1, 1, 7, 30)


@pytest.mark.parametrize(
    "g, n, k, p, reason",
    [(2, 2, 7, 7, "n = 2"), (2, 1, 14, 7, "k = 14"), (1, 1, 1, 2, "p = 2")],
)
def test_unsupported_cases(g, n, k, p, reason):
    inst = instance(g, n, k, p, 1)
    assert not inst.supported
    assert reason in inst.unsupported_reason
    with pytest.raises(UnsupportedCaseError):
        count_solutions(inst)
    with pytest.raises(UnsupportedCaseError):
        enumerate_solutions(inst)


@pytest.mark.parametrize("m, d, N", [(1, 1, 2), (2, 2, 2), (3, 1, 6), (6, 2, 6)])
def test_worked_example_for_k_equal_four(m, d, N):
    assert reduction_degree(4, 7, m) == d
    assert pair_count(4, 1, 7, m)[0] == N


@pytest.mark.parametrize("g, n, k, p, N", [(2, 1, 1, 7, 3), (6, 1, 4, 7, 2), (1, 1, 1, 7, 1), (3, 2, 2, 11, 10)])
def test_count_mod_p(g, n, k, p, N):
    count, pairs = count_mod_p(instance(g, n, k, p, 1))
    assert count == N
    assert len(pairs) == N
    for x0, x1 in pairs:
        assert pow(g, x0.value**n, p) == pow(x1.value, k, p)


def test_count_mod_p_needs_odd_prime():
    with pytest.raises(DomainError):
        count_mod_p(instance(1, 1, 1, 2, 1))


@pytest.mark.parametrize(
    "g, n, k, p, e, total",
    [(3, 1, 1, 7, 3, 6), (3, 1, 11, 11, 2, 55), (4, 1, 11, 11, 4, 0), (1, 1, 11, 11, 3, 11), (2, 3, 2, 7, 2, 6)],
)
def test_count_solutions(g, n, k, p, e, total):
    report = count_solutions(instance(g, n, k, p, e))
    assert report.total == total
    assert report.d_factors.value() == report.d


def test_count_report_reports_the_case():
    report = count_solutions(instance(3, 1, 11, 11, 2))
    assert report.case_tag == CaseTag.K_EQUALS_P_N1.value
    assert report.wieferich is True
    assert count_solutions(instance(3, 1, 1, 7, 1)).wieferich is None


def test_count_report_rejects_inconsistent_totals():
    inst = instance(4, 1, 11, 11, 2)
    with pytest.raises(InternalConsistencyError):
        CountReport(instance=inst, N=5, d=1, d_factors=FactorList(), m=5, total=55, wieferich=False, case_tag="k_equals_p_n1")
    with pytest.raises(InternalConsistencyError):
        CountReport(instance=inst, N=5, d=2, d_factors=FactorList(), m=5, total=5, wieferich=None, case_tag="k_equals_p_n1")
    assert InternalConsistencyError.exit_code == 3


@pytest.mark.parametrize("g, p, expected", [(3, 11, True), (4, 11, False), (1, 7, True), (1, 3, True), (7, 5, True)])
def test_is_wieferich_base(g, p, expected):
    assert is_wieferich_base(g, p) is expected


def test_is_wieferich_base_rejects_multiples_of_p():
    with pytest.raises(DomainError):
        is_wieferich_base(22, 11)


def test_enumerate_trivial_instance():
    assert enumerate_pnmidk(instance(1, 1, 1, 7, 1)).solutions == [1]


@pytest.mark.parametrize("g, n, k, p, e, size", [(3, 1, 1, 7, 2, 6), (6, 1, 4, 7, 2, 2), (3, 2, 2, 11, 2, 10)])
def test_enumerate_pnmidk_matches_oracle(g, n, k, p, e, size):
    inst = instance(g, n, k, p, e)
    found = enumerate_pnmidk(inst)
    assert len(found) == size
    assert found.solutions == brute_force(inst).solutions


@pytest.mark.parametrize("g, e, size", [(1, 2, 11), (10, 2, 0), (3, 2, 55), (9, 3, 55), (2, 1, 10)])
def test_enumerate_k_eq_p(g, e, size):
    inst = instance(g, 1, 11, 11, e)
    found = enumerate_k_eq_p(inst)
    assert len(found) == size
    assert found.solutions == brute_force(inst).solutions


def test_enumerators_refuse_the_other_case():
    with pytest.raises(UnsupportedCaseError):
        enumerate_k_eq_p(instance(3, 1, 1, 7, 1))
    with pytest.raises(UnsupportedCaseError):
        enumerate_pnmidk(instance(3, 1, 7, 7, 1))


def test_enumerate_solutions_dispatches_on_case():
    assert enumerate_solutions(instance(3, 1, 7, 7, 2)) == enumerate_k_eq_p(instance(3, 1, 7, 7, 2))
    assert enumerate_solutions(instance(3, 1, 2, 7, 2)) == enumerate_pnmidk(instance(3, 1, 2, 7, 2))


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
@pytest.mark.parametrize("e", [2, 3])
def test_wieferich_trichotomy(p, e):
    for g in range(1, p * p):
        if g % p == 0:
            continue
        report = count_solutions(instance(g, 1, p, p, e))
        assert (report.total > 0) == is_wieferich_base(g, p)
        assert report.total in (0, report.N * p)


def test_counts_on_the_p7_grid_do_not_depend_on_n():
    for g in range(1, 7):
        for k in range(1, 5):
            counts = {count_solutions(instance(g, n, k, 7, 1)).total for n in (1, 2, 3)}
            assert len(counts) == 1


def test_solution_set_invariants():
    with pytest.raises(ValidationError):
        SolutionSet(window=(0, 10), solutions=[3, 3])
    with pytest.raises(ValidationError):
        SolutionSet(window=(0, 10), solutions=[4, 12])
    assert len(SolutionSet(window=(0, 10), solutions=[1, 4])) == 2
