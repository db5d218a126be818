"""
Tests for critical-line scans, argument-principle counts and seed scans.
"""

import mpmath
import pytest

from components.dynamics import BNQNParams
from components.errors import ConvergenceError, DomainError
from components.functions import PolynomialSpec, poly_handle, xi_handle
from components.functions.polynomial import XI_ZERO_ORDINATES
from components.numerics import PrecisionContext
from components.verify import (
    Rect,
    SeedScanSettings,
    count_zeros_rect,
    critical_zeros,
    refine_bracket,
    seed_scan,
    sign_scan,
    verify_root_near,
    winding_number,
    xi_critical,
)

with mpmath.workdps(40):
    FIRST_ORDINATE = mpmath.mpf("14.134725141734693790457251983562")


class TestXiCritical:
    def test_at_real_axis(self, xi_ctx):
        assert abs(xi_critical(0, xi_ctx) - mpmath.mpf("0.49712077818831410991")) < 1e-18

    def test_vanishes_at_first_zero(self, xi_ctx):
        assert abs(xi_critical(FIRST_ORDINATE, xi_ctx)) < 1e-18

    def test_even(self, xi_ctx):
        for t in ("3.5", "17.25"):
            assert abs(xi_critical(t, xi_ctx) - xi_critical("-" + t, xi_ctx)) < 1e-25

    def test_positive_below_first_zero(self, xi_ctx):
        assert xi_critical(10, xi_ctx) > 0
        assert xi_critical(15, xi_ctx) < 0


class TestSignScan:
    def test_one_bracket(self, xi_ctx):
        scan = sign_scan(14, 15, 0.1, xi_ctx)
        assert len(scan) == 1
        a, b = scan.brackets[0]
        assert a < FIRST_ORDINATE < b
        assert b - a <= mpmath.mpf("0.1") + 1e-20

    def test_no_brackets_below_first_zero(self, xi_ctx):
        assert len(sign_scan(10, 13, 0.25, xi_ctx)) == 0

    def test_endpoint_included(self, xi_ctx):
        # 13.99 + 0.1k never lands on 14.2, the last sample is t_hi itself
        scan = sign_scan("13.99", "14.2", 0.1, xi_ctx)
        assert len(scan) == 1

    @pytest.mark.parametrize("args", [(14, 15, 0), (14, 15, -0.1), (15, 14, 0.1)])
    def test_invalid(self, xi_ctx, args):
        with pytest.raises(DomainError):
            sign_scan(*args, ctx=xi_ctx)

    def test_refine(self, xi_ctx):
        a, b = refine_bracket(14, 15, xi_ctx, width=1e-10)
        assert b - a <= 1e-10
        assert a <= FIRST_ORDINATE <= b

    @pytest.mark.slow
    def test_first_four_zeros(self, xi_ctx):
        zeros = critical_zeros(14, 31, 0.05, xi_ctx)
        assert len(zeros) == 4
        for t, expected in zip(zeros, XI_ZERO_ORDINATES):
            assert abs(t - mpmath.mpf(expected)) < 1e-4


class TestVerifyRootNear:
    def test_true_near_zero(self, xi_ctx):
        assert verify_root_near("0.5+14.1347251417j", 1e-6, xi_ctx)

    def test_false_between_zeros(self, xi_ctx):
        assert not verify_root_near("0.5+17j", 0.5, xi_ctx)

    def test_uses_imaginary_part(self, xi_ctx):
        # off the line, only Im z matters
        assert verify_root_near("3+14.1347251417j", 1e-6, xi_ctx)

    def test_radius_must_be_positive(self, xi_ctx):
        with pytest.raises(DomainError):
            verify_root_near("0.5+14j", 0, xi_ctx)


class TestArgumentPrinciple:
    def test_quadratic(self, quadratic):
        assert count_zeros_rect(quadratic, Rect(0, 2, -1, 1)) == 1
        assert count_zeros_rect(quadratic, Rect(-2, 2, -1, 1)) == 2
        assert count_zeros_rect(quadratic, Rect(2, 3, -1, 1)) == 0

    def test_multiple_root(self, ctx):
        cube = poly_handle(PolynomialSpec(roots=("0.25", "0.25", "0.25", "5")), ctx)
        assert count_zeros_rect(cube, Rect(-1, 1, -1, 1)) == 3

    def test_winding_is_near_integer(self, octic):
        w = winding_number(octic, Rect(0, 1, 0, 22))
        assert abs(w - 2) < 1e-6

    def test_zero_on_boundary(self, quadratic):
        with pytest.raises(ConvergenceError, match="boundary proximity"):
            count_zeros_rect(quadratic, Rect(0, 2, 0, 1))

    def test_invalid_rect(self):
        with pytest.raises(DomainError):
            Rect(1, 0, 0, 1)

    def test_contains_is_open(self):
        r = Rect(0, 1, 0, 1)
        assert r.contains(0.5 + 0.5j)
        assert not r.contains(0.5j)

    def test_xi_no_zeros_below_first(self, xi_h):
        assert count_zeros_rect(xi_h, Rect(-1, 2, 1, 13)) == 0

    @pytest.mark.slow
    def test_xi_first_four(self, xi_h):
        assert count_zeros_rect(xi_h, Rect(-1, 2, 1, 31)) == 4


@pytest.mark.slow
def test_seed_scan_finds_window_zero():
    ctx = PrecisionContext(digits=30)
    h = xi_handle(ctx)
    settings = SeedScanSettings(height=101.0)
    result = seed_scan(h, BNQNParams.seeded(0), settings)
    assert result.counted == 1
    assert result.complete
    (root,) = result.roots_in_window()
    assert abs(root - mpmath.mpc("0.5", "101.317851005731391")) < 1e-8
    assert all(v is not False for v in result.verified)
    ys = [o.y for o in result.seeds]
    assert ys == sorted(ys)
    assert len(result.seeds) >= settings.seed_count


@pytest.mark.slow
@pytest.mark.parametrize("height", [100.0, 1000.0])
def test_seed_scan_matches_zero_count(height):
    h = xi_handle(PrecisionContext(digits=30))
    result = seed_scan(h, BNQNParams.seeded(0), SeedScanSettings(height=height))
    assert result.counted is not None
    assert len(result.roots_in_window()) == result.counted
    assert all(result.verified)


@pytest.mark.long
@pytest.mark.parametrize("height", [1e9, 1e10])
def test_seed_scan_large_heights(height):
    ctx = PrecisionContext(digits=100)
    result = seed_scan(xi_handle(ctx), BNQNParams.seeded(0), SeedScanSettings(height=height, extension_budget=0),
                       workers=None)
    assert result.counted is not None
    assert len(result.roots_in_window()) >= 1
    assert all(result.verified)
