import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from avkernel.coeff import QQ
from avkernel.errors import BudgetExceeded, ContractViolation
from avkernel.hahn import HahnSeries, closure_sample, hahn_evaluate, truncate, truncation_closed_on_sample
from avkernel.literals import parse_adic, parse_hahn, parse_series
from avkernel.sampling import random_series, truncation_closed_generators
from avkernel.series import evaluate
from strategies import adics, hahns


def H(text, cutoff=4):
    return parse_hahn(text, cutoff)


def geo(N=8):
    return parse_series(" + ".join(f"t^{k}*Y1^{k}" for k in range(N)) + f" (mod t^{N})")


def test_arithmetic_examples():
    assert H("t^{1/2}") * H("t^{1/2}") == H("t")
    a = H("2*t^{1/2} + t")
    assert a + HahnSeries.zero(4) == a
    # expand (1 + s)^2 with s = t^{1/3}: 1 + 2s + s^2
    assert H("1 + t^{1/3}") ** 2 == H("1 + 2*t^{1/3} + t^{2/3}")


def test_terms_beyond_cutoff_are_dropped():
    assert H("t^3") * H("t^2") == HahnSeries.zero(4)
    assert H("t^5") == HahnSeries.zero(4)


def test_evaluate_geometric_at_root_t():
    value = hahn_evaluate(geo(), [H("t^{1/2}")], 4)
    # t^k * t^{k/2} = t^{3k/2}: exponents 0, 3/2, 3 lie below 4
    assert value == H("1 + t^{3/2} + t^3")


def test_evaluate_constant_series():
    f = parse_series("2 - t + 5*t^3 (mod t^6)")
    for y in (H("t^{1/2}"), H("0"), H("1 + t^{2/3}")):
        assert hahn_evaluate(f, [y], 4) == H("2 - t + 5*t^3")


def test_evaluate_contracts():
    with pytest.raises(ContractViolation):
        hahn_evaluate(geo(), [H("t^-1")], 4)
    with pytest.raises(ContractViolation):
        hahn_evaluate(geo(3), [H("t")], 4)  # t-precision below the cutoff
    with pytest.raises(ContractViolation):
        hahn_evaluate(geo(), [H("t"), H("t")], 4)


@given(st.data())
def test_evaluate_agrees_with_series_on_integer_points(data):
    N = data.draw(st.integers(1, 8))
    n = data.draw(st.integers(1, 2))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    f = random_series(rng, n, N, max_deg=3)
    ys = [data.draw(adics(N)) for _ in range(n)]
    expected = HahnSeries.from_adic(evaluate(f, ys))
    assert hahn_evaluate(f, [HahnSeries.from_adic(y) for y in ys], N) == expected


def test_truncate_examples():
    a = H("2*t^{1/2} + t + 3*t^2")
    assert truncate(a, 2) == H("2*t^{1/2} + t")
    assert truncate(a, QQ(1, 2)) == HahnSeries.zero(4)
    assert truncate(a, 3) == a
    with pytest.raises(ContractViolation):
        truncate(a, 5)


@given(hahns(), st.fractions(0, 4))
def test_truncation_properties(a, gamma):
    gamma = QQ(gamma.numerator, gamma.denominator)
    if gamma > a.cutoff:
        return
    low = truncate(a, gamma)
    assert all(g < gamma for g in low.support)
    assert all(g >= gamma for g in (a - low).support)
    assert truncate(low, gamma) == low


def test_closure_contains_registry_value():
    sample = closure_sample([H("t")], {"geo": geo()}, 1, 4)
    # geo(t) = sum t^{2k}
    assert H("1 + t^2") in sample


def test_closure_depth_zero_is_level_zero():
    sample = closure_sample([H("t^{1/2}")], {}, 0, 4)
    assert set(sample) >= {H("0"), H("1"), H("-1"), H("t"), H("t^{1/2}")}
    assert H("t^{1/2} + 1") not in sample


def test_closure_without_generators_stays_integral():
    sample = closure_sample([], {"geo": geo()}, 1, 4)
    assert all(a.support == [] or min(a.support) >= 0 for a in sample)
    assert all(all(g.denominator == 1 for g in a.support) for a in sample)
    assert H("1 + t") in sample and H("1 + t^2") in sample


def test_closure_is_deterministic():
    gens = [H("t^{1/2}"), H("t^{1/3}")]
    assert closure_sample(gens, {}, 2, 4) == closure_sample(list(reversed(gens)), {}, 2, 4)


def test_closure_budget_and_contracts():
    with pytest.raises(BudgetExceeded):
        closure_sample([H("t^{1/2}")], {"geo": geo()}, 3, 4, budget=50)
    with pytest.raises(ContractViolation):
        closure_sample([H("t^-1")], {}, 1, 4)
    with pytest.raises(ContractViolation):
        closure_sample([H("t")], {"geo": geo(2)}, 1, 4)


def test_truncation_verdict_examples():
    assert truncation_closed_on_sample([H("0"), H("1"), H("t"), H("1 + t")]).closed
    verdict = truncation_closed_on_sample([H("1 + t")])
    assert not verdict.closed
    assert verdict.element == H("1 + t") and truncate(verdict.element, verdict.gamma) == H("1")


def test_closure_of_root_t_is_truncation_closed():
    sample = closure_sample([H("t^{1/2}")], {"geo": geo()}, 2, 4)
    assert truncation_closed_on_sample(sample).closed


def test_negative_control_non_closed_generator():
    # x = t^{1/2} + t^{1/3} has the truncation t^{1/3}, which no ring operation recovers
    sample = closure_sample([H("t^{1/2} + t^{1/3}")], {}, 1, 4)
    verdict = truncation_closed_on_sample(sample)
    assert not verdict.closed


def test_truncation_closed_generators_give_closed_samples():
    rng = random.Random(11)
    for _ in range(5):
        gens = truncation_closed_generators(rng, 3)
        sample = closure_sample(gens, {}, 1, 3)
        assert truncation_closed_on_sample(sample).closed, gens


@given(hahns())
def test_literal_round_trip(a):
    assert parse_hahn(str(a)) == a
