import pytest

from padic_solve.core.errors import (
    DomainError,
    HypothesisViolationError,
    InternalConsistencyError,
    UnsupportedCaseError,
)
from padic_solve.models.arith import PadicApprox, Residue
from padic_solve.models.problem import ProblemInstance
from padic_solve.services.counting import count_mod_p
from padic_solve.services.hensel import LiftProblem, hensel_lift, lift_pair
from padic_solve.services.modmath import crt_combine
from padic_solve.services.padic import interp_f


def polynomial(p, coefficients):
    """f and f' of sum(c_i x^i) as evaluators modulo p^j."""

    def f(x, j):
        return sum(c * x**i for i, c in enumerate(coefficients)) % p**j

    def df(x, j):
        return sum(i * c * x ** (i - 1) for i, c in enumerate(coefficients) if i) % p**j

    return f, df


def lift(p, coefficients, seed, e):
    f, df = polynomial(p, coefficients)
    return hensel_lift(LiftProblem(f=f, df=df, seed=Residue(value=seed, modulus=p), target_precision=e))


def test_square_root_of_two_mod_49():
    assert lift(7, [-2, 0, 1], 3, 2).residue == 10


def test_linear_polynomial_lifts_to_its_constant():
    assert lift(7, [-40, 1], 40 % 7, 3).residue == 40


def test_exact_root_persists():
    assert lift(5, [-1, 0, 0, 1], 1, 3).residue == 1


def test_seed_must_be_a_simple_root():
    with pytest.raises(HypothesisViolationError):
        lift(7, [0, 0, 1], 0, 2)
    with pytest.raises(HypothesisViolationError):
        lift(7, [-2, 0, 1], 2, 2)


def test_wrong_derivative_is_caught():
    f, _ = polynomial(7, [-2, 0, 1])
    problem = LiftProblem(f=f, df=lambda x, j: 1, seed=Residue(value=3, modulus=7), target_precision=2)
    with pytest.raises(InternalConsistencyError):
        hensel_lift(problem)


def test_lift_of_eight_to_the_x():
    x = lift_pair(8, 1, 1, 0, 1, 7, 2)
    assert x.residue == 8
    assert pow(8, x.residue, 49) == x.residue


def test_lift_with_trivial_base():
    assert lift_pair(1, 1, 1, 0, 1, 7, 3).residue == 1


def test_lift_every_pair_of_three_to_the_x():
    lifted = []
    for x0 in range(6):
        a = pow(3, x0, 7)
        x = lift_pair(3, 1, 1, x0, a, 7, 2)
        X = crt_combine(Residue(value=x0, modulus=6), Residue(value=x.residue, modulus=49)).value
        assert pow(3, X % 42, 49) == X % 49
        lifted.append(X)
    assert len(set(lifted)) == 6


def test_lift_pair_preconditions():
    with pytest.raises(UnsupportedCaseError):
        lift_pair(2, 1, 7, 0, 1, 7, 2)
    with pytest.raises(DomainError):
        lift_pair(3, 1, 1, 0, 2, 7, 2)
    with pytest.raises(DomainError):
        lift_pair(3, 1, 1, 0, 1, 2, 2)


def _pairs(g, n, k, p):
    _, pairs = count_mod_p(ProblemInstance(g=g, n=n, k=k, p=p, e=1))
    return [(x0.value, x1.value) for x0, x1 in pairs]


@pytest.mark.slow
@pytest.mark.parametrize("p", [5, 7])
@pytest.mark.parametrize("e", [1, 2, 3])
def test_lift_is_the_unique_root_in_its_class(p, e):
    modulus = p**e
    for g in range(1, p):
        for n in (1, 2):
            for k in (1, 2, 3):
                for x0, a in _pairs(g, n, k, p):
                    x = lift_pair(g, n, k, x0, a, p, e).residue
                    roots = [
                        y
                        for y in range(a, modulus, p)
                        if interp_f(g, n, x0, PadicApprox.of(y, p, e)).residue == pow(y, k, modulus)
                    ]
                    assert roots == [x], (g, n, k, x0, a)


@pytest.mark.parametrize("g, n, k", [(3, 1, 1), (2, 2, 3), (6, 3, 4), (5, 2, 2)])
def test_precision_coherence(g, n, k):
    for x0, a in _pairs(g, n, k, 7):
        high = lift_pair(g, n, k, x0, a, 7, 4)
        assert high.reduce(3) == lift_pair(g, n, k, x0, a, 7, 3)


@pytest.mark.parametrize("g, n, k, p, e", [(3, 2, 2, 11, 3), (2, 3, 5, 7, 3), (4, 1, 2, 5, 4)])
def test_lift_gives_integer_solutions_in_the_whole_class(g, n, k, p, e):
    modulus = p**e
    inst = ProblemInstance(g=g, n=n, k=k, p=p, e=e)
    for x0, a in _pairs(g, n, k, p):
        x = lift_pair(g, n, k, x0, a, p, e).residue
        X = crt_combine(Residue(value=x0, modulus=inst.m), Residue(value=x, modulus=modulus)).value
        for shift in range(3):
            Y = X + shift * inst.window
            assert pow(g, Y**n, modulus) == pow(Y, k, modulus)
