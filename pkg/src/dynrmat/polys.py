"""Layered exact Laurent-polynomial arithmetic.

Level one: a QPoly is a Laurent polynomial in u = q**(1/D), stored as a dict
mapping integer u-exponents to nonzero coefficients (Fraction or Cyclo).
Level two: a QRat is a canonical fraction of two QPolys.  Level three: an
XPoly is a Laurent polynomial in v = x**(1/D) with QRat coefficients.  The
fraction field of XPolys lives in ratfunc.py.

Canonical form of a fraction: numerator and denominator coprime (monic
Euclidean gcd on the unit-stripped parts), denominator with minimum exponent
zero and leading coefficient one.  Structural equality of the dicts is then
value equality, which is what every verifier in this package leans on.

Euclidean gcds dominate the cost, so both levels first try a one-sided
modular filter: map the operands into GF(p) for p = 998244353, a prime with
p = 1 mod 8 so the eighth-root coefficients embed (3 is a primitive root,
hence pow(3, (p-1)//8, p) has order eight).  If the images keep their
degrees and are coprime mod p, the exact gcd is trivial by the resultant
argument and the Fraction-arithmetic Euclid is skipped.  Any reduction
failure falls back to the exact path, so the filter changes speed only.
"""

import random
from fractions import Fraction

from .coeffs import Cyclo, coeff_mod, coeff_to_complex
from .lattice import LatticeError

_F1 = Fraction(1)

_P = 998244353
_Z8 = pow(3, (_P - 1) // 8, _P)
_RNG = random.Random(0x51CA1A)

QP_ZERO = {}
QP_ONE = {0: _F1}


# ---------------------------------------------------------------- QPoly ----


def qp_const(c):
    if not isinstance(c, (Fraction, Cyclo)):
        c = Fraction(c)
    return {0: c} if c else {}


def qp_add(a, b):
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = c
        else:
            s = s + c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def qp_neg(a):
    return {e: -c for e, c in a.items()}


def qp_sub(a, b):
    if not b:
        return a
    return qp_add(a, qp_neg(b))


def qp_scale(a, c):
    if not c:
        return QP_ZERO
    if c == 1:
        return a
    return {e: v * c for e, v in a.items()}


def qp_shift(a, s):
    if not s:
        return a
    return {e + s: c for e, c in a.items()}


def qp_mul(a, b):
    if not a or not b:
        return QP_ZERO
    if len(a) == 1:
        (e, c), = a.items()
        return qp_shift(qp_scale(b, c), e)
    if len(b) == 1:
        (e, c), = b.items()
        return qp_shift(qp_scale(a, c), e)
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            t = ca * cb
            s = out.get(e)
            if s is None:
                out[e] = t
            else:
                s = s + t
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


def qp_strip(a):
    """(min-exponent-zero copy, stripped exponent)."""
    s = min(a)
    if s:
        return {e - s: c for e, c in a.items()}, s
    return a, 0


def qp_divmod(a, b):
    # ordinary polynomials, b nonzero
    if not b:
        raise ZeroDivisionError("q-polynomial division by zero")
    db = max(b)
    inv_lb = 1 / b[db]
    r = dict(a)
    q = {}
    while r:
        dr = max(r)
        if dr < db:
            break
        f = r[dr] * inv_lb
        k = dr - db
        q[k] = f
        for e, c in b.items():
            t = e + k
            s = r.get(t)
            if s is None:
                r[t] = -c * f
            else:
                s = s - c * f
                if s:
                    r[t] = s
                else:
                    del r[t]
    return q, r


def qp_div_exact(a, b):
    q, r = qp_divmod(a, b)
    if r:
        raise ArithmeticError("inexact q-polynomial division")
    return q


def qp_monic(a):
    lead = a[max(a)]
    if lead == 1:
        return a
    return qp_scale(a, 1 / lead)


def _qp_mod(a):
    out = {}
    for e, c in a.items():
        m = coeff_mod(c, _P, _Z8)
        if m:
            out[e] = m
    return out


def _gfp_mod(a, b):
    db = max(b)
    inv = pow(b[db], -1, _P)
    r = dict(a)
    while r:
        dr = max(r)
        if dr < db:
            break
        f = r[dr] * inv % _P
        for e, c in b.items():
            t = e + dr - db
            s = (r.get(t, 0) - c * f) % _P
            if s:
                r[t] = s
            else:
                r.pop(t, None)
    return r


def _gfp_gcd_is_unit(a, b):
    while b:
        a, b = b, _gfp_mod(a, b)
    return bool(a) and max(a) == 0


def _qp_coprime_mod(a0, b0):
    # sound one-sided test: True means provably coprime over the exact field
    try:
        am = _qp_mod(a0)
        bm = _qp_mod(b0)
    except ZeroDivisionError:
        return False
    if not am or not bm:
        return False
    if max(am) != max(a0) or max(bm) != max(b0):
        return False
    return _gfp_gcd_is_unit(am, bm)


def qp_gcd(a, b):
    """Monic gcd of the unit-stripped parts; Laurent inputs are fine."""
    if not a:
        return qp_monic(qp_strip(b)[0]) if b else QP_ZERO
    if not b:
        return qp_monic(qp_strip(a)[0])
    a0, _ = qp_strip(a)
    b0, _ = qp_strip(b)
    if len(a0) == 1 or len(b0) == 1:
        return QP_ONE
    if _qp_coprime_mod(a0, b0):
        return QP_ONE
    x, y = a0, b0
    while y:
        x, y = y, qp_divmod(x, y)[1]
    return qp_monic(x)


def qp_eval_complex(a, u0):
    t = 0j
    for e, c in a.items():
        t += coeff_to_complex(c) * u0 ** e
    return t


def _qp_eval_mod(a, u0):
    t = 0
    for e, c in a.items():
        t += coeff_mod(c, _P, _Z8) * pow(u0, e, _P)
    return t % _P


# ----------------------------------------------------------------- QRat ----


class QRat:
    """Canonical fraction of Laurent polynomials in u = q**(1/D)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        # raw constructor: callers guarantee canonical form
        self.num = num
        self.den = den

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, QRat):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash(
            (
                tuple(sorted(self.num.items(), key=lambda kv: kv[0])),
                tuple(sorted(self.den.items(), key=lambda kv: kv[0])),
            )
        )

    def __repr__(self):
        return "QRat(%r, %r)" % (self.num, self.den)

    def __neg__(self):
        if not self.num:
            return self
        return QRat(qp_neg(self.num), self.den)

    def __add__(self, other):
        if not isinstance(other, QRat):
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        na, da, nb, db = self.num, self.den, other.num, other.den
        if da == db:
            t = qp_add(na, nb)
            if not t:
                return QRAT_ZERO
            if da == QP_ONE:
                return QRat(t, QP_ONE)
            return _qrat_cancel(t, da)
        if da == QP_ONE:
            return QRat(qp_add(qp_mul(na, db), nb), db)
        if db == QP_ONE:
            return QRat(qp_add(qp_mul(nb, da), na), da)
        g = qp_gcd(da, db)
        if max(g) == 0:
            t = qp_add(qp_mul(na, db), qp_mul(nb, da))
            if not t:
                return QRAT_ZERO
            return QRat(t, qp_mul(da, db))
        b1 = qp_div_exact(da, g)
        d1 = qp_div_exact(db, g)
        t = qp_add(qp_mul(na, d1), qp_mul(nb, b1))
        if not t:
            return QRAT_ZERO
        t0, st = qp_strip(t)
        h = qp_gcd(t0, g)
        if max(h) > 0:
            t0 = qp_div_exact(t0, h)
            g = qp_div_exact(g, h)
        den = qp_mul(qp_mul(g, b1), d1)
        if den == QP_ONE:
            return QRat(qp_shift(t0, st), QP_ONE)
        return QRat(qp_shift(t0, st), den)

    def __sub__(self, other):
        if not isinstance(other, QRat):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, QRat):
            return NotImplemented
        if not self.num or not other.num:
            return QRAT_ZERO
        if self is QRAT_ONE:
            return other
        if other is QRAT_ONE:
            return self
        na, da, nb, db = self.num, self.den, other.num, other.den
        if da == QP_ONE and db == QP_ONE:
            return QRat(qp_mul(na, nb), QP_ONE)
        na0, sa = qp_strip(na)
        nb0, sb = qp_strip(nb)
        if db != QP_ONE:
            g = qp_gcd(na0, db)
            if max(g) > 0:
                na0 = qp_div_exact(na0, g)
                db = qp_div_exact(db, g)
        if da != QP_ONE:
            g = qp_gcd(nb0, da)
            if max(g) > 0:
                nb0 = qp_div_exact(nb0, g)
                da = qp_div_exact(da, g)
        num = qp_shift(qp_mul(na0, nb0), sa + sb)
        den = qp_mul(da, db)
        if den == QP_ONE:
            return QRat(num, QP_ONE)
        return QRat(num, den)

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero q-rational")
        n0, s = qp_strip(self.num)
        den = self.den
        lead = n0[max(n0)]
        if lead != 1:
            inv = 1 / lead
            n0 = qp_scale(n0, inv)
            den = qp_scale(den, inv)
        if n0 == QP_ONE:
            return QRat(qp_shift(den, -s), QP_ONE)
        return QRat(qp_shift(den, -s), n0)

    def __truediv__(self, other):
        if not isinstance(other, QRat):
            return NotImplemented
        return self * other.inverse()


def _qrat_cancel(t, d):
    # t nonzero Laurent, d monic ordinary with nonzero constant term
    t0, st = qp_strip(t)
    g = qp_gcd(t0, d)
    if max(g) > 0:
        t0 = qp_div_exact(t0, g)
        d = qp_div_exact(d, g)
    if d == QP_ONE:
        return QRat(qp_shift(t0, st), QP_ONE)
    return QRat(qp_shift(t0, st), d)


def qrat(num, den=QP_ONE):
    """Canonicalizing QRat factory."""
    if not num:
        return QRAT_ZERO
    if not den:
        raise ZeroDivisionError("zero denominator in q-rational")
    n0, sn = qp_strip(num)
    d0, sd = qp_strip(den)
    if len(n0) > 1 and len(d0) > 1:
        g = qp_gcd(n0, d0)
        if max(g) > 0:
            n0 = qp_div_exact(n0, g)
            d0 = qp_div_exact(d0, g)
    lead = d0[max(d0)]
    if lead != 1:
        inv = 1 / lead
        n0 = qp_scale(n0, inv)
        d0 = qp_scale(d0, inv)
    if d0 == QP_ONE:
        d0 = QP_ONE
    return QRat(qp_shift(n0, sn - sd), d0)


QRAT_ZERO = QRat(QP_ZERO, QP_ONE)
QRAT_ONE = QRat(QP_ONE, QP_ONE)


def qrat_const(c):
    n = qp_const(c)
    return QRat(n, QP_ONE) if n else QRAT_ZERO


def qrat_qpow(units):
    return QRat({units: _F1}, QP_ONE)


def qrat_scale(qr, c):
    """qr times a nonzero bare coefficient."""
    if not qr.num:
        return QRAT_ZERO
    return QRat(qp_scale(qr.num, c), qr.den)


def qrat_monomial_mul(qr, s):
    if not s or not qr.num:
        return qr
    return QRat(qp_shift(qr.num, s), qr.den)


def qrat_eval_complex(qr, u0):
    return qp_eval_complex(qr.num, u0) / qp_eval_complex(qr.den, u0)


def qrat_eval_mod(qr, u0):
    n = _qp_eval_mod(qr.num, u0)
    d = _qp_eval_mod(qr.den, u0)
    if d == 0:
        raise ZeroDivisionError("denominator vanished at filter point")
    return n * pow(d, -1, _P) % _P


# ---------------------------------------------------------------- XPoly ----


XP_ZERO = {}
XP_ONE = {0: QRAT_ONE}


def xp_add(a, b):
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for k, c in b.items():
        s = out.get(k)
        if s is None:
            out[k] = c
        else:
            s = s + c
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def xp_neg(a):
    return {k: -c for k, c in a.items()}


def xp_sub(a, b):
    if not b:
        return a
    return xp_add(a, xp_neg(b))


def xp_scale(a, qr):
    if not qr:
        return XP_ZERO
    if qr is QRAT_ONE:
        return a
    return {k: c * qr for k, c in a.items()}


def xp_shift(a, s):
    if not s:
        return a
    return {k + s: c for k, c in a.items()}


def xp_mul(a, b):
    if not a or not b:
        return XP_ZERO
    if len(a) == 1:
        (k, c), = a.items()
        return xp_shift(xp_scale(b, c), k)
    if len(b) == 1:
        (k, c), = b.items()
        return xp_shift(xp_scale(a, c), k)
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            t = ca * cb
            s = out.get(k)
            if s is None:
                out[k] = t
            else:
                s = s + t
                if s:
                    out[k] = s
                else:
                    del out[k]
    return out


def xp_strip(a):
    s = min(a)
    if s:
        return {k - s: c for k, c in a.items()}, s
    return a, 0


def xp_divmod(a, b):
    if not b:
        raise ZeroDivisionError("x-polynomial division by zero")
    db = max(b)
    inv_lb = b[db].inverse()
    r = dict(a)
    q = {}
    while r:
        dr = max(r)
        if dr < db:
            break
        f = r[dr] * inv_lb
        k = dr - db
        q[k] = f
        for e, c in b.items():
            t = e + k
            s = r.get(t)
            if s is None:
                r[t] = -(c * f)
            else:
                s = s - c * f
                if s:
                    r[t] = s
                else:
                    del r[t]
    return q, r


def xp_div_exact(a, b):
    q, r = xp_divmod(a, b)
    if r:
        raise ArithmeticError("inexact x-polynomial division")
    return q


def xp_monic(a):
    lead = a[max(a)]
    if lead is QRAT_ONE or lead == QRAT_ONE:
        return a
    return xp_scale(a, lead.inverse())


def _xp_coprime_mod(a0, b0):
    da, db = max(a0), max(b0)
    for _ in range(2):
        u0 = _RNG.randrange(2, _P - 1)
        try:
            am = {}
            for k, qr in a0.items():
                m = qrat_eval_mod(qr, u0)
                if m:
                    am[k] = m
            bm = {}
            for k, qr in b0.items():
                m = qrat_eval_mod(qr, u0)
                if m:
                    bm[k] = m
        except ZeroDivisionError:
            continue
        if not am or not bm or max(am) != da or max(bm) != db:
            continue
        return _gfp_gcd_is_unit(am, bm)
    return False


def xp_gcd(a, b):
    if not a:
        return xp_monic(xp_strip(b)[0]) if b else XP_ZERO
    if not b:
        return xp_monic(xp_strip(a)[0])
    a0, _ = xp_strip(a)
    b0, _ = xp_strip(b)
    if len(a0) == 1 or len(b0) == 1:
        return XP_ONE
    if _xp_coprime_mod(a0, b0):
        return XP_ONE
    x, y = a0, b0
    while y:
        x, y = y, xp_divmod(x, y)[1]
    return xp_monic(x)


def xp_eval_complex(a, u0, v0):
    t = 0j
    for k, c in a.items():
        t += qrat_eval_complex(c, u0) * v0 ** k
    return t


# ---------------------------------------------------------- lattice ops ----


def xp_qshift(a, m_units, denom):
    """Image of the substitution x -> x*q**(m_units/D) on an XPoly."""
    if not m_units:
        return a
    out = {}
    for k, c in a.items():
        s = m_units * k
        if s % denom:
            raise LatticeError(
                "shift by %d/%d units leaves the lattice at x-exponent %d/%d"
                % (m_units, denom, k, denom)
            )
        out[k] = qrat_monomial_mul(c, s // denom)
    return out
