import json
import random

from hypothesis import given
from strategies import laurent

from ntate.divided_power import DividedPower
from ntate.laurent import LaurentPoly, lp_parse
from ntate.tate import boundary, exactness_check, negative_part, rota_baxter_check, section

c = LaurentPoly.monomial(1)


def test_boundary_diagram_rows():
    for k in (3, 2, 1, 0):
        assert boundary(c**k) == DividedPower.zero()
    assert boundary(c**-1) == DividedPower.one()
    assert boundary(c**-2) == DividedPower.basis(1)
    assert boundary(c**-3) == DividedPower.basis(2)


def test_boundary_is_linear_on_expressions():
    assert boundary(lp_parse("3*c^-2 + c")) == DividedPower({1: 3})


@given(laurent(), laurent())
def test_boundary_additive_and_kills_nonneg(p, r):
    assert boundary(p + r) == boundary(p) + boundary(r)
    assert boundary(p.project("nonneg")) == DividedPower.zero()
    assert section(boundary(p)) == p.project("neg")


def test_boundary_after_multiplying_by_c():
    for k in range(1, 65):
        assert boundary(c * c ** (-k - 1)) == DividedPower.basis(k - 1)


def test_exactness_small_and_large_windows():
    assert exactness_check(1).passed
    report = exactness_check(64)
    assert report.passed
    assert report.to_json() == {"window": 64, "pass": True, "violations": []}


def test_exactness_fault_injection_names_the_element():
    def faulty(p):
        if p == c**-1:
            return DividedPower.zero()
        return boundary(p)

    report = exactness_check(4, faulty)
    assert not report.passed
    flagged = {v["element"] for v in report.violations}
    assert "c^-1" in flagged
    assert json.loads(report.dumps())["pass"] is False


def test_exactness_flags_kernel_violation():
    def leaky(p):
        return boundary(p) + (DividedPower.basis(7) if p == c**2 else DividedPower.zero())

    report = exactness_check(3, leaky)
    assert [v["element"] for v in report.violations if v["check"] == "kernel"] == ["c^2"]


def test_rota_baxter_examples():
    assert rota_baxter_check(c**-1, c**-1)
    x = c + c**-1
    assert negative_part(x) * negative_part(x) == c**-2
    inner = negative_part(x) * x + x * negative_part(x) - x * x
    assert inner == c**-2 - c**2
    assert rota_baxter_check(x, x)
    assert rota_baxter_check(c**2 + 3 * c, c**5)


def test_rota_baxter_seeded_pairs():
    rng = random.Random(20260101)
    for _ in range(1000):
        x = LaurentPoly({rng.randint(-8, 8): rng.randint(-9, 9) for _ in range(rng.randint(0, 5))})
        y = LaurentPoly({rng.randint(-8, 8): rng.randint(-9, 9) for _ in range(rng.randint(0, 5))})
        assert rota_baxter_check(x, y)


def test_rota_baxter_detects_a_non_projector():
    def doubled(p):
        return negative_part(p) * 2

    assert not rota_baxter_check(c**-1, c**-1, doubled)


@given(laurent())
def test_projector_properties(p):
    assert negative_part(negative_part(p)) == negative_part(p)
    assert p.project("nonneg") == p - negative_part(p)
