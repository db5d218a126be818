import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from components.errors import DomainError
from components.numerics import PrecisionContext, Sym2, abs2, eig2_sym, minsp

entries = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
parts = st.floats(min_value=-100, max_value=100, allow_nan=False, allow_infinity=False)


def test_context_rejects_low_digits():
    with pytest.raises(DomainError):
        PrecisionContext(digits=10)
    with pytest.raises(DomainError):
        PrecisionContext(digits=30, guard_digits=-1)


def test_context_scope_restores_precision():
    before = mpmath.mp.dps
    ctx = PrecisionContext(digits=80, guard_digits=5)
    with ctx.scope():
        assert mpmath.mp.dps == 85
    assert mpmath.mp.dps == before


def test_elevated_context():
    assert PrecisionContext(digits=100).elevated(1.5).digits == 150
    assert PrecisionContext(digits=31).elevated(1.5).digits == 47


def test_complex_parsing(ctx):
    assert ctx.complex("0.5+14.1j") == mpmath.mpc("0.5", "14.1")
    assert ctx.complex((1, -2)) == mpmath.mpc(1, -2)
    assert ctx.complex(3) == mpmath.mpc(3, 0)


@pytest.mark.parametrize("z, expected", [(mpmath.mpc(3, 4), 25), (mpmath.mpc(0), 0), (mpmath.mpc(0, 1), 1)])
def test_abs2(ctx, z, expected):
    assert abs2(z, ctx) == expected


def test_abs2_nonfinite(ctx):
    with pytest.raises(DomainError, match="nonfinite operand"):
        abs2(mpmath.mpc(mpmath.inf, 0), ctx)


@given(parts, parts, parts, parts)
@settings(max_examples=100, deadline=None)
def test_abs2_is_multiplicative(a, b, c, d):
    ctx = PrecisionContext(digits=30)
    z, w = mpmath.mpc(a, b), mpmath.mpc(c, d)
    with ctx.scope():
        lhs = abs2(z * w, ctx)
        rhs = abs2(z, ctx) * abs2(w, ctx)
        assert abs(lhs - rhs) <= ctx.eps(2) * max(1, abs(rhs))


def test_eig2_diagonal(ctx):
    eig = eig2_sym(Sym2(mpmath.mpf(22), mpmath.mpf(0), mpmath.mpf(10)), ctx)
    assert (eig.lam1, eig.lam2) == (22, 10)
    assert eig.e1 == (1, 0) and eig.e2 == (0, 1)


def test_eig2_off_diagonal(ctx):
    eig = eig2_sym(Sym2(mpmath.mpf(0), mpmath.mpf(1), mpmath.mpf(0)), ctx)
    assert (eig.lam1, eig.lam2) == (1, -1)
    with ctx.scope():
        r = 1 / mpmath.sqrt(2)
        assert abs(eig.e1[0] - r) < ctx.eps(2) and abs(eig.e1[1] - r) < ctx.eps(2)
        assert abs(abs(eig.e2[0]) - r) < ctx.eps(2)
        assert eig.e2[0] * eig.e2[1] < 0


def test_eig2_negative_entry(ctx):
    eig = eig2_sym(Sym2(mpmath.mpf(-2), mpmath.mpf(0), mpmath.mpf(2)), ctx)
    assert (eig.lam1, eig.lam2) == (2, -2)
    assert eig.e1 == (0, 1) and eig.e2 == (1, 0)


def test_eig2_scalar_matrix_returns_standard_basis(ctx):
    eig = eig2_sym(Sym2(mpmath.mpf(3), mpmath.mpf(0), mpmath.mpf(3)), ctx)
    assert eig.e1 == (1, 0) and eig.e2 == (0, 1)


@pytest.mark.parametrize("a, b, d, expected", [(22, 0, 10, 10), (-2, 0, 2, 2), (0, 0, 0, 0)])
def test_minsp(ctx, a, b, d, expected):
    assert minsp(Sym2(mpmath.mpf(a), mpmath.mpf(b), mpmath.mpf(d)), ctx) == expected


@given(entries, entries, entries)
@settings(max_examples=1000, deadline=None)
def test_eigenpairs(a, b, d):
    ctx = PrecisionContext(digits=30)
    H = Sym2(mpmath.mpf(a), mpmath.mpf(b), mpmath.mpf(d))
    eig = eig2_sym(H, ctx)
    tol = ctx.eps(4) * 100
    with ctx.scope():
        assert eig.lam1 >= eig.lam2
        for lam, e in eig.pairs():
            He = H.apply(e)
            assert mpmath.sqrt((He[0] - lam * e[0]) ** 2 + (He[1] - lam * e[1]) ** 2) <= tol
            assert abs(e[0] ** 2 + e[1] ** 2 - 1) <= tol
        assert abs(eig.e1[0] * eig.e2[0] + eig.e1[1] * eig.e2[1]) <= tol
        assert abs(eig.lam1 + eig.lam2 - H.trace()) <= tol
        assert abs(eig.lam1 * eig.lam2 - H.det()) <= tol
