import io

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from components.dynamics import (
    CRITICAL_POINT,
    DIVERGENT,
    UNMATCHED,
    BNQNParams,
    Outcome,
    Trajectory,
    bnqn_run,
    bnqn_step,
    classify_limit,
    default_deltas,
    grad_hess_F,
    match_root,
    newton_run,
    newton_step,
    nu_step,
    random_alphas,
    random_relaxed_run,
    read_csv,
    relaxed_newton_step,
    relaxed_run,
    run_method,
    trajectory_csv,
)
from components.errors import AmbiguousMatchError, ConvergenceError, DomainError
from components.functions import FunctionHandle, PolynomialSpec, poly_handle, xi_handle
from components.functions.handle import Evaluator
from components.numerics import PrecisionContext

PARAMS = BNQNParams(deltas=(0.0, 1.0, -1.0), theta=1.0, tau=1.0, gamma0=1.0)


def assert_step_invariants(trajectory: Trajectory, p: BNQNParams):
    """Descent, strict decrease, delta-search soundness and the step cap on every step."""
    steps = trajectory.steps
    for record, following in zip(steps, trajectory.records[1:]):
        assert record.descent > 0
        assert following.F < record.F
        assert record.min_spectrum >= record.kappa_scale
        if p.theta > 0:
            assert record.step_norm <= 1 / mpmath.mpf(p.theta) + mpmath.mpf(10) ** -30


class TestGradHess:
    def test_at_two(self, quadratic):
        gh = grad_hess_F(quadratic, 2)
        assert gh.grad == (12, 0)
        assert (gh.hess.a, gh.hess.b, gh.hess.d) == (22, 0, 10)

    def test_at_root(self, quadratic):
        gh = grad_hess_F(quadratic, 1)
        assert gh.grad == (0, 0)
        assert (gh.hess.a, gh.hess.b, gh.hess.d) == (4, 0, 4)

    def test_at_saddle(self, quadratic):
        gh = grad_hess_F(quadratic, 0)
        assert gh.grad == (0, 0)
        assert (gh.hess.a, gh.hess.b, gh.hess.d) == (-2, 0, 2)

    def test_trace_is_twice_derivative_modulus(self, octic, ctx):
        gh = grad_hess_F(octic, "0.3+2j")
        with ctx.scope():
            assert abs(gh.hess.trace() - 2 * abs(gh.g1) ** 2) <= ctx.eps(2) * gh.hess.trace()

    def test_pole(self, ctx):
        class Reciprocal(Evaluator):
            name = "reciprocal"

            def jet(self, z, ctx):
                return 1 / z, -1 / z ** 2, 2 / z ** 3

            def is_pole(self, z):
                return mpmath.mpc(z) == 0

        with pytest.raises(DomainError, match="pole evaluation"):
            grad_hess_F(FunctionHandle(Reciprocal(), ctx), 0)

    @given(st.floats(min_value=-3, max_value=3), st.floats(min_value=-3, max_value=3))
    @settings(max_examples=50, deadline=None)
    def test_against_finite_differences(self, x, y):
        ctx = PrecisionContext(digits=30)
        h = poly_handle(PolynomialSpec(roots=("0.5+1j", "-1", "2-0.5j")), ctx)
        gh = grad_hess_F(h, mpmath.mpc(x, y))
        with ctx.elevated(2).scope():
            step = mpmath.mpf(10) ** -15
            F = lambda a, b: h.with_context(ctx.elevated(2)).objective(mpmath.mpc(a, b))  # noqa: E731
            x, y = mpmath.mpf(x), mpmath.mpf(y)
            fx = (F(x + step, y) - F(x - step, y)) / (2 * step)
            fy = (F(x, y + step) - F(x, y - step)) / (2 * step)
            fxx = (F(x + step, y) - 2 * F(x, y) + F(x - step, y)) / step ** 2
            fyy = (F(x, y + step) - 2 * F(x, y) + F(x, y - step)) / step ** 2
            fxy = (F(x + step, y + step) - F(x + step, y - step) - F(x - step, y + step)
                   + F(x - step, y - step)) / (4 * step ** 2)
            tol = mpmath.mpf(10) ** -10
            scale = 1 + abs(gh.hess.a) + abs(gh.hess.d) + abs(gh.hess.b)
            assert abs(gh.grad[0] - fx) <= tol * (1 + abs(fx))
            assert abs(gh.grad[1] - fy) <= tol * (1 + abs(fy))
            assert abs(gh.hess.a - fxx) <= tol * scale
            assert abs(gh.hess.d - fyy) <= tol * scale
            assert abs(gh.hess.b - fxy) <= tol * scale


class TestBNQNStep:
    def test_hand_example(self, quadratic, ctx):
        z1, record = bnqn_step(quadratic, 2, PARAMS)
        with ctx.scope():
            assert record.delta_index == 0
            assert record.min_spectrum == 10
            assert record.kappa_scale == 6
            assert record.gamma == 1 and record.halvings == 0
            assert abs(z1 - mpmath.mpf(16) / 11) <= ctx.eps(1)
            assert record.F == mpmath.mpf(9) / 2
            assert abs(quadratic.objective(z1) - mpmath.mpf("0.6223")) < 1e-4

    def test_near_saddle_moves_away(self, quadratic, ctx):
        z1, record = bnqn_step(quadratic, "0.01", PARAMS)
        assert record.descent > 0
        assert abs(z1) > mpmath.mpf("0.01")
        assert quadratic.objective(z1) < quadratic.objective("0.01")

    def test_stationary_point(self, quadratic):
        with pytest.raises(DomainError, match="stationary point"):
            bnqn_step(quadratic, 1, PARAMS)

    def test_line_search_stall(self, quadratic):
        with pytest.raises(ConvergenceError, match="line-search stall"):
            bnqn_step(quadratic, 2, PARAMS.with_(gamma0=1.0, max_halvings=1, armijo_c=50.0))

    def test_large_theta_caps_step(self, quadratic, ctx):
        p = PARAMS.with_(theta=1000.0)
        z1, record = bnqn_step(quadratic, 2, p)
        assert record.step_norm <= mpmath.mpf("0.001") + ctx.eps(0)
        assert quadratic.objective(z1) < quadratic.objective(2)

    def test_equals_newton_for_optimization_step(self, quadratic, ctx):
        # positive-definite Hessian accepted at j = 0, no cap, full step
        z = ctx.complex("2+0.3j")
        gh = grad_hess_F(quadratic, z)
        z1, record = bnqn_step(quadratic, z, PARAMS.with_(theta=0.0), gh)
        with ctx.scope():
            H, (gx, gy) = gh.hess, gh.grad
            det = H.det()
            wx = (H.d * gx - H.b * gy) / det
            wy = (H.a * gy - H.b * gx) / det
            assert record.delta_index == 0 and record.gamma == 1
            assert abs(z1 - (z - mpmath.mpc(wx, wy))) <= ctx.eps(2)

    def test_shift_search_moves_past_rejected_delta(self, quadratic):
        # at z = 3 the unshifted Hessian diag(52, 20) has 20 < κ‖∇F‖ = 24
        _, record = bnqn_step(quadratic, 3, PARAMS)
        assert record.delta_index == 1
        assert record.min_spectrum == 68
        assert record.min_spectrum >= record.kappa_scale


class TestBNQNRun:
    def test_converges_quadratically(self, quadratic, ctx):
        trajectory = bnqn_run(quadratic, 2, PARAMS)
        assert trajectory.outcome == Outcome.CONVERGED_ROOT
        assert abs(trajectory.terminal - 1) <= mpmath.mpf(10) ** -24
        assert_step_invariants(trajectory, PARAMS)
        errors = [abs(r.z - 1) for r in trajectory.records]
        tail = [(a, b) for a, b in zip(errors, errors[1:]) if 0 < a < 1e-3 and b > 0]
        for a, b in tail:
            assert b <= 10 * a ** mpmath.mpf(1.8)

    def test_root_start_is_classified_without_steps(self, quadratic):
        trajectory = bnqn_run(quadratic, 1, PARAMS)
        assert trajectory.outcome == Outcome.CONVERGED_ROOT
        assert trajectory.iterations == 0

    def test_saddle_start_is_critical(self, quadratic):
        trajectory = bnqn_run(quadratic, 0, PARAMS)
        assert trajectory.outcome == Outcome.CONVERGED_CRITICAL
        assert classify_limit(trajectory, [1, -1], 1e-6) == CRITICAL_POINT

    def test_saddle_avoidance(self, quadratic):
        rng = np.random.default_rng(2024)
        p = BNQNParams.seeded(7, max_iter=100)
        for x, y in rng.uniform(-2, 2, size=(100, 2)):
            trajectory = bnqn_run(quadratic, mpmath.mpc(x, y), p)
            assert classify_limit(trajectory, [1, -1], 1e-6) in (0, 1)
            assert_step_invariants(trajectory, p)

    @pytest.mark.parametrize("z0", ["0.2+30j", "0.5+16j", "-0.5-5j"])
    def test_invariants_on_octic(self, octic, z0):
        trajectory = bnqn_run(octic, z0, PARAMS)
        assert_step_invariants(trajectory, PARAMS)

    @pytest.mark.parametrize("z0", ["0.4+0.3j", "3.5-0.4j"])
    def test_invariants_on_sine(self, sine, z0):
        trajectory = bnqn_run(sine, z0, PARAMS)
        assert trajectory.outcome == Outcome.CONVERGED_ROOT
        assert_step_invariants(trajectory, PARAMS)

    def test_invariants_on_xi(self, xi_h):
        trajectory = bnqn_run(xi_h, "0+14j", PARAMS)
        assert_step_invariants(trajectory, PARAMS)

    @pytest.mark.slow
    @pytest.mark.parametrize("y0, ordinate", [
        ("14", "14.13472514173"),
        ("21", "21.02203963877"),
        ("25", "25.01085758014"),
        ("30.4", "30.42487612585"),
    ])
    def test_xi_roots_from_imaginary_axis(self, y0, ordinate):
        h = xi_handle(PrecisionContext(digits=100))
        trajectory = bnqn_run(h, f"0+{y0}j", BNQNParams.seeded(0, max_iter=40))
        assert trajectory.outcome == Outcome.CONVERGED_ROOT
        assert abs(trajectory.terminal - mpmath.mpc("0.5", ordinate)) < 1e-6

    def test_max_iter_zero(self, quadratic):
        trajectory = bnqn_run(quadratic, 2, PARAMS.with_(max_iter=0))
        assert trajectory.outcome == Outcome.MAX_ITER
        assert trajectory.iterations == 0

    def test_deterministic(self, octic):
        p = BNQNParams.seeded(11)
        a = bnqn_run(octic, "0.1+20j", p)
        b = bnqn_run(octic, "0.1+20j", p)
        assert trajectory_csv(a) == trajectory_csv(b)

    def test_csv_columns_and_reload(self, quadratic, ctx):
        trajectory = bnqn_run(quadratic, 2, PARAMS)
        text = trajectory_csv(trajectory)
        assert text.splitlines()[0] == "iter,x,y,F,grad_norm,delta_index,gamma,halvings"
        records = read_csv(io.StringIO(text), ctx)
        assert len(records) == len(trajectory.records)
        assert records[-1].delta_index == -1
        assert abs(records[-1].z - trajectory.terminal) < 1e-25


class TestParams:
    def test_kappa(self):
        assert BNQNParams(deltas=(0.0, 1.0, -1.0)).kappa == 0.5

    @pytest.mark.parametrize("kwargs", [
        {"deltas": (0.0, 1.0)},
        {"deltas": (0.0, 1.0, 1.0)},
        {"theta": -1.0},
        {"tau": 0.0},
        {"gamma0": 1.5},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(DomainError):
            BNQNParams(**kwargs)

    def test_default_deltas(self):
        deltas = default_deltas(5)
        assert deltas == default_deltas(5)
        assert len(deltas) == 3
        assert all(-2 <= d <= 2 for d in deltas)
        assert min(abs(a - b) for i, a in enumerate(deltas) for b in deltas[i + 1:]) >= 0.1

    def test_default_grad_tol(self):
        assert abs(BNQNParams().resolved_grad_tol(50) - mpmath.mpf("1e-25")) < mpmath.mpf("1e-35")


class TestComparators:
    def test_newton_step(self, quadratic):
        assert newton_step(quadratic, 2) == mpmath.mpf("1.25")
        assert newton_step(quadratic, 1) == 1

    def test_newton_critical_point(self, quadratic):
        with pytest.raises(DomainError, match="critical point"):
            newton_step(quadratic, 0)

    def test_relaxed_step(self, quadratic):
        assert relaxed_newton_step(quadratic, 2, 1) == newton_step(quadratic, 2)
        assert relaxed_newton_step(quadratic, 2, "0.5") == mpmath.mpf("1.625")
        assert relaxed_newton_step(quadratic, 2, 0) == 2

    def test_nu_step(self, quadratic):
        assert nu_step(quadratic, 2) == mpmath.mpf("1.625")
        assert nu_step(quadratic, 1) == 1
        with pytest.raises(DomainError):
            nu_step(quadratic, 0)

    def test_random_alphas_in_disk(self):
        stream = random_alphas(3, 0)
        alphas = [next(stream) for _ in range(200)]
        assert all(abs(a - 1) <= 0.5 for a in alphas)
        again = random_alphas(3, 0)
        assert alphas[:10] == [next(again) for _ in range(10)]
        other = random_alphas(3, 1)
        assert alphas[0] != next(other)

    def test_random_relaxed_reproducible(self, quadratic):
        a = random_relaxed_run(quadratic, 2, seed=9)
        b = random_relaxed_run(quadratic, 2, seed=9)
        assert trajectory_csv(a) == trajectory_csv(b)
        assert a.method == "random-relaxed"
        assert a.outcome == Outcome.CONVERGED_ROOT

    def test_unit_alphas_equal_newton(self, quadratic):
        relaxed = relaxed_run(quadratic, "2+0.3j", iter(lambda: 1, None), PARAMS)
        newton = newton_run(quadratic, "2+0.3j", PARAMS)
        assert relaxed.points() == newton.points()

    def test_critical_point_is_unresolved(self, quadratic):
        trajectory = newton_run(quadratic, 0, PARAMS)
        assert trajectory.outcome == Outcome.UNRESOLVED
        assert trajectory.failure == "critical point"

    @pytest.mark.parametrize("method", ["bnqn", "newton", "relaxed", "random-relaxed", "nu"])
    def test_run_method(self, quadratic, method):
        trajectory = run_method(method, quadratic, "1.5+0.2j", PARAMS)
        assert trajectory.outcome == Outcome.CONVERGED_ROOT
        assert match_root(trajectory.terminal, [1, -1], 1e-6) == 0

    def test_unknown_method(self, quadratic):
        with pytest.raises(DomainError):
            run_method("halley", quadratic, 2, PARAMS)


class TestClassify:
    def _done(self, z, outcome=Outcome.CONVERGED_ROOT):
        return Trajectory(records=[], outcome=outcome, terminal=mpmath.mpc(z))

    def test_match(self):
        assert classify_limit(self._done(1 + mpmath.mpf(10) ** -12), [1, -1], 1e-6) == 0

    def test_unmatched(self):
        assert classify_limit(self._done(0.3), [1, -1], 1e-6) == UNMATCHED

    def test_ambiguous(self):
        with pytest.raises(AmbiguousMatchError, match="ambiguous match"):
            classify_limit(self._done(1), [1, 1 + mpmath.mpf(10) ** -8], 1e-6)

    def test_outcome_labels(self):
        assert classify_limit(self._done(100, Outcome.DIVERGED), [1, -1], 1e-6) == DIVERGENT
        assert classify_limit(self._done(0, Outcome.UNRESOLVED), [1, -1], 1e-6) == UNMATCHED

    def test_tol_must_be_positive(self):
        with pytest.raises(DomainError):
            classify_limit(self._done(1), [1], 0)
