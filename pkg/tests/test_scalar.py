import json
import random
from fractions import Fraction as F

import pytest

from dynrmat import (
    SC_ONE,
    SC_ZERO,
    DivergentLimit,
    Scalar,
    phase,
    qbinom,
    qdiff,
    qfact,
    qnum,
    qpow,
    sc_coeff,
    sqrt_qdiff,
    sqrt_qfact,
    sqrt_qint,
    sqrt_xbracket,
    xbracket,
    xpow,
)
from dynrmat.coeffs import make_coeff
from dynrmat.lattice import LatticeError
from dynrmat.polys import QP_ONE, QRAT_ONE, qp_gcd, qrat
from dynrmat.ratfunc import ratfn
from dynrmat.scalar import sc_from_rf


# ----------------------------------------------------------- q machinery ---


def test_qnum_small_values():
    assert qnum(0) == SC_ZERO
    assert qnum(1) == SC_ONE
    assert qnum(2) == qpow(1) + qpow(-1)
    assert qnum(3) == qpow(2) + 1 + qpow(-2)
    assert qnum(-3) == -qnum(3)


def test_qnum_defining_ratio():
    # [n] * (q - 1/q) == q^n - q^-n
    for n in range(1, 7):
        assert qnum(n) * qdiff() == qpow(n) - qpow(-n)


def test_qfact_and_qbinom():
    assert qfact(0) == SC_ONE
    assert qfact(3) == qnum(2) * qnum(3)
    assert qbinom(3, 1) == qpow(2) + 1 + qpow(-2)
    assert qbinom(4, 2) * qfact(2) * qfact(2) == qfact(4)
    assert qbinom(5, 7) == SC_ZERO
    # symmetric
    for n in range(6):
        for k in range(n + 1):
            assert qbinom(n, k) == qbinom(n, n - k)


def test_pascal_rule():
    # [n k] = q^k [n-1 k] + q^(k-n) [n-1 k-1]
    for n in range(1, 7):
        for k in range(n + 1):
            lhs = qbinom(n, k)
            rhs = qpow(k) * qbinom(n - 1, k) + qpow(k - n) * qbinom(n - 1, k - 1)
            assert lhs == rhs, (n, k)


# --------------------------------------------------------------- radicals ---


def test_radicals_square_out():
    assert sqrt_qint(2) * sqrt_qint(2) == qnum(2)
    assert sqrt_qfact(4) ** 2 == qfact(4)
    assert sqrt_qdiff() ** 2 == qdiff()
    s = sqrt_qint(2) * sqrt_qint(3)
    assert s * s == qnum(2) * qnum(3)
    t = sqrt_xbracket(F(1, 2))
    assert t * t == xbracket(F(1, 2))


def test_radical_edge_cases():
    assert sqrt_qint(0) == SC_ZERO
    assert sqrt_qint(1) == SC_ONE
    assert sqrt_qfact(1) == SC_ONE


def test_radical_inverse():
    s = qnum(2) * sqrt_qint(3) * sqrt_xbracket(1)
    assert (s * s.inv()).is_one()
    with pytest.raises(ArithmeticError):
        (sqrt_qint(2) + sqrt_qint(3)).inv()
    with pytest.raises(ZeroDivisionError):
        SC_ZERO.inv()


def test_distinct_radicals_do_not_merge():
    s = sqrt_qint(2) + sqrt_qint(3)
    assert len(s.terms) == 2
    assert s - sqrt_qint(3) == sqrt_qint(2)


# ----------------------------------------------------------------- phases ---


def test_eighth_root_phases():
    assert phase(1) == sc_coeff(-1)
    assert phase(2) == SC_ONE
    assert phase(F(1, 2)) ** 2 == phase(1)
    assert phase(F(1, 4)) ** 8 == SC_ONE
    assert phase(F(-1, 2)) * phase(F(1, 2)) == SC_ONE
    # i as a coefficient
    i = phase(F(1, 2))
    assert i == sc_coeff(make_coeff(0, 0, 1, 0))
    v = i.numeric_eval(0.5, 0.5)
    assert abs(v - 1j) < 1e-12


def test_phase_off_lattice_rejected():
    with pytest.raises(ValueError):
        phase(F(1, 8))


# ------------------------------------------------------------------ shifts ---


def test_shift_x_on_brackets():
    assert xbracket(F(1, 2)).shift_x(1) == xbracket(F(3, 2))
    assert xpow(1).shift_x(F(1, 2)) == xpow(1) * qpow(F(1, 2))
    assert xpow(F(1, 2)).shift_x(1) == xpow(F(1, 2)) * qpow(F(1, 2))
    s = xbracket(2) / xbracket(0)
    assert s.shift_x(1).shift_x(-1) == s


def test_shift_x_is_multiplicative():
    rng = random.Random(7)
    for _ in range(20):
        a = _random_scalar(rng)
        b = _random_scalar(rng)
        m = rng.choice([1, -1, 2, F(1, 2), F(-3, 2)])
        assert (a * b).shift_x(m) == a.shift_x(m) * b.shift_x(m)
        assert (a + b).shift_x(m) == a.shift_x(m) + b.shift_x(m)


def test_shift_x_off_lattice_raises():
    # x^(1/4) -> x^(1/4) q^(1/16) falls off the quarter lattice
    with pytest.raises(LatticeError):
        xpow(F(1, 4)).shift_x(F(1, 4))


# ------------------------------------------------------------ substitution ---


def test_signed_qpow_substitution():
    # <c> vanishes at x = q^-c and at x = -q^-c
    for c in (0, 1, F(1, 2)):
        z = xbracket(c).eval_x_at_signed_qpow(1, -c)
        assert z == SC_ZERO
        z = xbracket(c).eval_x_at_signed_qpow(-1, -c)
        assert z == SC_ZERO
    # x*q - 1/(x*q) at x = -q: -(q^2 - q^-2)
    f = xpow(1) * qpow(1) - xpow(-1) * qpow(-1)
    got = f.eval_x_at_signed_qpow(-1, 1)
    assert got == -(qpow(2) - qpow(-2))


def test_substitution_rejects_x_radicals():
    with pytest.raises(ValueError):
        sqrt_xbracket(1).eval_x_at_signed_qpow(1, 0)


# ----------------------------------------------------------------- limits ---


def test_limits_of_bracket_ratios():
    r = xbracket(1) / xbracket(0)
    assert r.limit_x(at_zero=True) == qpow(-1)
    assert r.limit_x(at_zero=False) == qpow(1)
    with pytest.raises(DivergentLimit):
        xbracket(0).limit_x(True)
    assert (SC_ONE / xbracket(2)).limit_x(True) == SC_ZERO
    assert (SC_ONE / xbracket(2)).limit_x(False) == SC_ZERO


def test_limits_of_radical_ratios():
    s = sqrt_xbracket(3) / sqrt_xbracket(1)
    assert s.limit_x(True) == qpow(-1)
    assert s.limit_x(False) == qpow(1)
    # the limit agrees numerically with the principal branch
    q0 = 0.6
    for x0, at_zero in ((1e-8, True), (1e8, False)):
        lhs = s.numeric_eval(q0, x0)
        rhs = s.limit_x(at_zero).numeric_eval(q0, x0)
        assert abs(lhs - rhs) < 1e-6 * abs(rhs)


def test_radical_limit_branches_match_numerics():
    # sqrt<c>, damped to a finite limit: exact limit matches principal branch
    for c in (0, 1, F(1, 2)):
        s = sqrt_xbracket(c)
        lim0 = (s * xpow(F(1, 2))).limit_x(True)
        vnum = (s * xpow(F(1, 2))).numeric_eval(0.6, 1e-10)
        vlim = lim0.numeric_eval(0.6, 1e-10)
        assert abs(vnum - vlim) < 1e-4 * abs(vlim)
        limi = (s * xpow(F(-1, 2))).limit_x(False)
        vnum = (s * xpow(F(-1, 2))).numeric_eval(0.6, 1e10)
        vlim = limi.numeric_eval(0.6, 1e10)
        assert abs(vnum - vlim) < 1e-4 * abs(vlim)


# ---------------------------------------------------------------- numerics ---


def test_numeric_eval_basics():
    assert abs(qnum(2).numeric_eval(2.0, 0.3) - 2.5) < 1e-12
    v = xbracket(0).numeric_eval(0.5, 0.25)
    x, q = 0.25, 0.5
    assert abs(v - (x - 1 / x) / (q - 1 / q)) < 1e-12


def test_numeric_eval_is_multiplicative():
    rng = random.Random(11)
    for _ in range(10):
        a = _random_scalar(rng)
        b = _random_scalar(rng)
        q0, x0 = 0.7, 0.4
        va, vb = a.numeric_eval(q0, x0), b.numeric_eval(q0, x0)
        vab = (a * b).numeric_eval(q0, x0)
        scale = max(1.0, abs(va * vb))
        assert abs(vab - va * vb) < 1e-9 * scale


# -------------------------------------------------------------- field laws ---


def _random_qrat(rng):
    def poly():
        return {
            rng.randrange(-6, 7): F(rng.randrange(-4, 5), rng.randrange(1, 4))
            for _ in range(rng.randrange(1, 4))
        }

    num = {k: v for k, v in poly().items() if v}
    den = {k: v for k, v in poly().items() if v}
    if not den:
        den = dict(QP_ONE)
    return qrat(num, den) if num else qrat(QP_ONE)


def _random_rf(rng):
    def xpoly():
        return {
            rng.randrange(-4, 5) * 2: _random_qrat(rng)
            for _ in range(rng.randrange(1, 3))
        }

    num = {k: v for k, v in xpoly().items() if v}
    den = {k: v for k, v in xpoly().items() if v}
    if not num:
        num = {0: QRAT_ONE}
    if not den:
        den = {0: QRAT_ONE}
    return ratfn(num, den)


def _random_scalar(rng):
    s = SC_ZERO
    for _ in range(rng.randrange(1, 3)):
        atoms = rng.choice(
            [SC_ONE, sqrt_qint(2), sqrt_qint(3), sqrt_xbracket(1), sqrt_qdiff()]
        )
        s = s + sc_from_rf(_random_rf(rng)) * atoms
    return s


def test_field_laws_random_sweep():
    rng = random.Random(42)
    for _ in range(25):
        a = _random_scalar(rng)
        b = _random_scalar(rng)
        c = _random_scalar(rng)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * (b + c) == a * b + a * c
        assert a - a == SC_ZERO
        assert a * SC_ONE == a


def test_division_round_trip():
    rng = random.Random(43)
    for _ in range(25):
        a = _random_scalar(rng)
        b = sc_from_rf(_random_rf(rng)) * rng.choice(
            [SC_ONE, sqrt_qint(2), sqrt_xbracket(1)]
        )
        if not b:
            continue
        assert (a * b) / b == a
        assert b.inv().inv() == b


def test_canonical_invariants_after_arithmetic():
    rng = random.Random(44)
    for _ in range(40):
        r = _random_rf(rng)
        s = _random_rf(rng)
        for t in (r + s, r * s, r - s):
            if not t:
                continue
            assert min(t.den) == 0
            lead = t.den[max(t.den)]
            assert lead == QRAT_ONE
            for qr in list(t.num.values()) + list(t.den.values()):
                assert qr  # stored coefficients are never zero
                assert min(qr.den) == 0
                assert qr.den[max(qr.den)] == F(1)
                if qr.den != QP_ONE:
                    g = qp_gcd(qr.num, qr.den)
                    assert max(g) == 0


# ------------------------------------------------------------------- JSON ----


def test_json_round_trip():
    rng = random.Random(45)
    for _ in range(10):
        s = _random_scalar(rng)
        blob = json.dumps(s.to_jsonable(), sort_keys=True)
        t = Scalar.from_jsonable(json.loads(blob))
        assert t == s
    # determinism: same object, same bytes
    s = _random_scalar(random.Random(9))
    b1 = json.dumps(s.to_jsonable(), sort_keys=True)
    b2 = json.dumps(s.to_jsonable(), sort_keys=True)
    assert b1 == b2
