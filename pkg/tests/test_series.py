from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import fractions_q

from ntate.divided_power import DividedPower
from ntate.laurent import LaurentPoly
from ntate.series import (
    C_ONE,
    Degraded,
    FormalGroupLaw,
    OneFormSeries,
    PowerSeries,
    SeriesError,
    b_series,
    bernoulli,
    c_from_b,
    c_from_b_check,
    degrade,
    degrade_map,
    divided_weight_parts,
    exp_bT,
    exp_character,
    fgl_character_check,
    laurent_weight_parts,
    one_form_check,
    ps_arith,
    ps_exp_log,
    series_weight,
    uniform_cumulants,
)


def cq(k, a=1):
    return LaurentPoly.monomial(k, a, "c", "Q")


def bernoulli_recurrence(n):
    # sum_{k<=m} C(m+1, k) B_k = 0
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return B


series_q = st.integers(1, 10).flatmap(
    lambda n: st.lists(fractions_q(), min_size=n + 1, max_size=n + 1).map(lambda cs: PowerSeries(cs, n))
)


# arithmetic


def test_arith_examples():
    N = 8
    assert ps_arith(PowerSeries([1, 1], N), PowerSeries([1, -1], N), "mul") == PowerSeries([1, 0, -1], N)
    assert ps_arith(PowerSeries([1, -1], N), None, "invert") == PowerSeries([1] * (N + 1), N)
    inner = PowerSeries([0, 0, 0, 1], N)
    got = ps_arith(PowerSeries([0, 1, 1], N), inner, "compose")
    assert got == PowerSeries([0, 0, 0, 1, 0, 0, 1], N)


def test_preconditions():
    N = 4
    with pytest.raises(SeriesError):
        PowerSeries([1, 1], N).compose(PowerSeries([1, 1], N))
    with pytest.raises(SeriesError):
        PowerSeries([0, 1], N).inverse()
    with pytest.raises(SeriesError):
        PowerSeries([1, 1], N).exp()
    with pytest.raises(SeriesError):
        PowerSeries([2, 1], N).log()
    with pytest.raises(SeriesError):
        PowerSeries([1], 3) + PowerSeries([1], 4)


def test_order_never_changes_silently():
    a = PowerSeries([1, 2, 3], 5)
    assert (a * a).order == 5
    assert a.retruncate(2).order == 2
    with pytest.raises(SeriesError):
        a.retruncate(6)
    with pytest.raises(IndexError):
        a[6]


def test_exp_log_examples():
    N = 12
    assert ps_exp_log(PowerSeries([], N), "exp") == PowerSeries([1], N)
    mercator = PowerSeries([0] + [Fraction(-1, k) for k in range(1, N + 1)], N)
    assert ps_exp_log(PowerSeries([1, -1], N), "log") == mercator
    assert ps_exp_log(ps_exp_log(PowerSeries([1, 1], N), "log"), "exp") == PowerSeries([1, 1], N)


@given(series_q)
def test_log_exp_round_trip(a):
    a = a - PowerSeries.constant(a[0], a.order)
    assert a.exp().log() == a


@given(series_q, series_q)
def test_inverse_and_product(a, b):
    if a.order != b.order:
        b = PowerSeries(b.coeffs, a.order)
    if a[0]:
        assert a * a.inverse() == PowerSeries([1], a.order)
    assert a * b == b * a


@given(series_q)
def test_exp_is_a_homomorphism(a):
    a = a - PowerSeries.constant(a[0], a.order)
    two = a + a
    assert two.exp() == a.exp() * a.exp()


# Bernoulli numbers


def test_bernoulli_examples():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(1, "plus") == Fraction(1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(12) == Fraction(-691, 2730)


def test_bernoulli_matches_recurrence():
    oracle = bernoulli_recurrence(40)
    for n in range(41):
        assert bernoulli(n) == oracle[n]
    for n in range(3, 40, 2):
        assert bernoulli(n) == 0


def test_bernoulli_conventions_differ_only_at_one():
    for n in range(30):
        if n != 1:
            assert bernoulli(n, "plus") == bernoulli(n)


def test_log_bernoulli_kernel_series():
    # log(x/(e^x - 1)) = sum_{k>=1} (-B+_k/k) x^k/k!  mod x^33
    N = 32
    kernel = PowerSeries.from_function(lambda k: Fraction(1, factorial(k + 1)), N).inverse()
    lhs = kernel.log()
    rhs = PowerSeries([0] + [-bernoulli(k, "plus") / k / factorial(k) for k in range(1, N + 1)], N)
    assert lhs == rhs


# the b and c series


def test_b_series_low_coefficients():
    b = b_series(6)
    assert b[0] == cq(-1)
    assert b[1] == cq(-2, Fraction(1, 2))
    assert b[5] == cq(-6, Fraction(1, 6))


def test_b_series_weight():
    assert series_weight(b_series(10)) == -1
    assert series_weight(PowerSeries([C_ONE, cq(1)], 3, C_ONE)) is None


def test_exp_bT_is_geometric():
    N = 64
    e = exp_bT(N)
    for k in range(N + 1):
        assert e[k] == cq(-k)
    assert e == (PowerSeries([C_ONE, cq(-1, -1)], N, C_ONE)).inverse()


def test_c_from_b_by_hand_order_two():
    N = 2
    b = b_series(N)
    assert b.inverse() == PowerSeries([cq(1), cq(0, Fraction(-1, 2)), cq(-1, Fraction(-1, 12))], N, C_ONE)
    assert c_from_b(N) == PowerSeries([cq(1)], N, C_ONE)
    assert c_from_b_check(N)


def test_c_from_b_signs():
    assert c_from_b_check(16, +1)
    assert not c_from_b_check(16, -1)
    assert c_from_b(16, -1) == PowerSeries([cq(1, -1)], 16, C_ONE)


def test_one_form_check():
    assert one_form_check(1)
    assert one_form_check(64)


def test_one_form_coefficients():
    N = 5
    form = OneFormSeries.d(b_series(N).shift(1))
    assert form.series[0] == LaurentPoly.zero("c", "Q")
    assert form.series[1] == cq(-2, -1)
    for k in range(1, N + 1):
        assert form.series[k] == cq(-k - 1, -1)


def test_one_form_zero_truncation():
    # keeping only T^0, both sides vanish
    T_b = b_series(1).shift(1).retruncate(0)
    assert OneFormSeries.d(T_b).series == PowerSeries([], 0, C_ONE)


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_dc_is_a_derivation(ka, kb):
    N = 3
    f = PowerSeries([cq(k, i + 1) for i, k in enumerate(ka)], N, C_ONE)
    g = PowerSeries([cq(k, 2 - i) for i, k in enumerate(kb)], N, C_ONE)
    lhs = OneFormSeries.d(f * g)
    rhs = OneFormSeries(OneFormSeries.d(f).series * g + f * OneFormSeries.d(g).series)
    assert lhs == rhs


# degrading


def test_degrade_examples():
    c = LaurentPoly.monomial(1)
    assert degrade([(c, 1)]).as_dict() == {-1: c}
    assert degrade([(c**-1, -1)]).as_dict() == {1: c**-1}
    assert degrade([(Fraction(3), 0)]).as_dict() == {0: Fraction(3)}
    with pytest.raises(TypeError):
        degrade([(c, 0.5)])


def test_degrade_divided_powers():
    x = DividedPower({0: 2, 3: 1})
    d = degrade(divided_weight_parts(x))
    assert d.as_dict() == {0: DividedPower({0: 2}), 3: DividedPower({3: 1})}


@given(st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5), st.integers(-3, 3))
def test_degrade_maps(coeffs, r):
    p = LaurentPoly(coeffs)
    parts = laurent_weight_parts(p)
    identity = degrade_map(lambda v: v, 0)
    assert identity(degrade(parts)) == degrade(parts)
    # multiplication by c^r raises weight by r, acting as T^-r on slots
    shift = lambda v: v * LaurentPoly.monomial(r)  # noqa: E731
    moved = degrade([(shift(v), w + r) for v, w in parts])
    assert degrade_map(shift, -r)(degrade(parts)) == moved
    assert degrade(parts).times_T(-r) == Degraded.from_dict(
        {i - r: v for i, v in degrade(parts).as_dict().items()}
    )


# cumulants


def test_uniform_cumulants():
    assert uniform_cumulants(1) == Fraction(1, 2)
    assert uniform_cumulants(2) == Fraction(1, 12)
    assert uniform_cumulants(2) == bernoulli(2) / 2
    for k in range(2, 21):
        assert uniform_cumulants(k) == bernoulli(k) / k
    assert uniform_cumulants(1) == bernoulli(1, "plus") / 1


def test_uniform_cumulants_against_moments():
    # kappa_3 = m3 - 3 m2 m1 + 2 m1^3 with m_j = 1/(j+1)
    m1, m2, m3 = Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)
    assert uniform_cumulants(3) == m3 - 3 * m2 * m1 + 2 * m1**3


# formal group laws


def test_character_examples():
    N = 12
    one_plus_T = PowerSeries([1, 1], N)
    assert fgl_character_check(FormalGroupLaw.multiplicative(N), one_plus_T, N)
    assert fgl_character_check(FormalGroupLaw.additive(N), exp_character(N), N)
    assert fgl_character_check(FormalGroupLaw.additive(N), exp_character(N, Fraction(-3, 7)), N)
    assert not fgl_character_check(FormalGroupLaw.additive(N), one_plus_T, N)


def test_character_multiplicative_powers():
    # (1+T)^a is a character of the multiplicative law for rational a
    N = 8
    a = Fraction(2, 3)
    chi = (PowerSeries([1, 1], N).log() * a).exp()
    assert fgl_character_check(FormalGroupLaw.multiplicative(N), chi, N)
    assert not fgl_character_check(FormalGroupLaw.additive(N), chi, N)


def test_character_preconditions():
    with pytest.raises(SeriesError):
        fgl_character_check(FormalGroupLaw.additive(5), PowerSeries([2, 1], 5), 5)
    with pytest.raises(SeriesError):
        fgl_character_check(FormalGroupLaw.additive(5), PowerSeries([1, 1], 5), 6)


@pytest.mark.parametrize("law", [FormalGroupLaw.additive, FormalGroupLaw.multiplicative])
def test_fgl_axioms(law):
    F = law(8)
    assert F.is_unital() and F.is_commutative() and F.is_associative()


def test_non_associative_law_detected():
    F = FormalGroupLaw.from_coeffs(6, {(1, 0): 1, (0, 1): 1, (2, 1): 1, (1, 2): 1, (1, 1): 1})
    assert F.is_unital() and F.is_commutative()
    assert not F.is_associative()


def test_fgl_json_round_trip():
    F = FormalGroupLaw.multiplicative(5)
    assert F.to_json() == {"order": 5, "a": {"0,1": "1", "1,0": "1", "1,1": "1"}}
    assert FormalGroupLaw.from_json(F.to_json()) == F


def test_series_json_round_trip():
    for s in (PowerSeries([1, Fraction(1, 3)], 3), b_series(3)):
        assert PowerSeries.from_json(s.to_json()) == s
    assert b_series(1).to_json()["coeffs"][1]["coeffs"] == {"-2": "1/2"}


@settings(max_examples=30)
@given(st.integers(1, 12))
def test_compose_associates_with_exp(n):
    exp_T = PowerSeries.from_function(lambda k: Fraction(1, factorial(k)), n)
    log_one_plus = PowerSeries([0] + [Fraction((-1) ** (k + 1), k) for k in range(1, n + 1)], n)
    assert exp_T.compose(log_one_plus) == PowerSeries([1, 1], n)
