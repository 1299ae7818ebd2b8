"""Scalars: rational functions of q and x extended by formal square roots.

A Scalar is a finite sum of terms  rf * sqrt(prod of radicands), stored as a
dict mapping a sorted tuple of radical atoms to a RationalFunction.  Three
atom kinds occur:

    ("qint", n)   radicand [n] = (q^n - q^-n)/(q - q^-1)
    ("xbr", c)    radicand (x q^c - x^-1 q^-c)/(q - q^-1), c in lattice units
    ("qdiff",)    radicand q - q^-1

Products square out repeated atoms into the rational part, so each atom
appears at most once per term and distinct atom tuples are independent.
Structural equality of canonical terms is how every identity check in this
package decides equality; numeric evaluation (principal square roots) is the
safety net on top, never the proof.
"""

from fractions import Fraction

from .coeffs import Cyclo, imaginary_unit, make_coeff, minus_one_pow
from .lattice import (
    LatticeError,
    from_units,
    get_lattice_denominator,
    to_units,
)
from .polys import (
    QRAT_ONE,
    QRAT_ZERO,
    QRat,
    qrat,
    qrat_const,
    qrat_monomial_mul,
    qrat_scale,
)
from .ratfunc import (
    RF_ONE,
    RF_ZERO,
    RationalFunction,
    qdiff_qrat,
    ratfn,
    rf_const,
    rf_qpow_units,
    rf_xpow_units,
    xbracket_rf,
)

__all__ = [
    "Scalar",
    "DivergentLimit",
    "SC_ZERO",
    "SC_ONE",
    "sc_coeff",
    "sc_from_rf",
    "sc_from_qrat",
    "qpow",
    "xpow",
    "qnum",
    "qfact",
    "qbinom",
    "qdiff",
    "xbracket",
    "sqrt_qint",
    "sqrt_qfact",
    "sqrt_xbracket",
    "sqrt_qdiff",
    "phase",
]


class DivergentLimit(ArithmeticError):
    """An x -> 0 or x -> infinity limit does not exist."""


# ------------------------------------------------------------- radicands ---

_RADICAND_CACHE = {}


def _radicand_rf(atom):
    key = (get_lattice_denominator(), atom)
    rf = _RADICAND_CACHE.get(key)
    if rf is None:
        kind = atom[0]
        if kind == "qint":
            rf = rf_const(qrat_qnum(atom[1]))
        elif kind == "xbr":
            rf = xbracket_rf(atom[1])
        elif kind == "qdiff":
            rf = rf_const(qdiff_qrat())
        else:
            raise ValueError("unknown radical atom %r" % (atom,))
        _RADICAND_CACHE[key] = rf
    return rf


def _atom_jsonable(atom):
    if atom[0] == "qint":
        return {"kind": "qint", "n": atom[1]}
    if atom[0] == "xbr":
        return {"kind": "xbracket", "c": str(from_units(atom[1]))}
    return {"kind": "qdiff"}


def _atom_from_jsonable(d):
    kind = d["kind"]
    if kind == "qint":
        return ("qint", int(d["n"]))
    if kind == "xbracket":
        return ("xbr", to_units(Fraction(d["c"])))
    if kind == "qdiff":
        return ("qdiff",)
    raise ValueError("unknown radical atom kind %r" % (kind,))


# ---------------------------------------------------------------- Scalar ---


class Scalar:
    __slots__ = ("terms",)

    def __init__(self, terms):
        # raw constructor: no zero coefficients, atoms sorted and unique
        self.terms = terms

    # ----------------------------------------------------------- basics

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return len(self.terms) == 1 and self.terms.get((), RF_ZERO).is_one()

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        return "Scalar<%s>" % (self,)

    def __str__(self):
        return scalar_text(self)

    # ------------------------------------------------------- arithmetic

    def __neg__(self):
        return Scalar({a: -rf for a, rf in self.terms.items()})

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for a, rf in other.terms.items():
            s = out.get(a)
            if s is None:
                out[a] = rf
            else:
                s = s + rf
                if s:
                    out[a] = s
                else:
                    del out[a]
        return Scalar(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return SC_ZERO
        out = {}
        for a1, r1 in self.terms.items():
            for a2, r2 in other.terms.items():
                atoms, rf = _term_mul(a1, r1, a2, r2)
                s = out.get(atoms)
                if s is None:
                    out[atoms] = rf
                else:
                    s = s + rf
                    if s:
                        out[atoms] = s
                    else:
                        del out[atoms]
        return Scalar(out)

    __rmul__ = __mul__

    def inv(self):
        """Reciprocal; defined for single-term scalars only."""
        if len(self.terms) != 1:
            if not self.terms:
                raise ZeroDivisionError("inverse of zero scalar")
            raise ArithmeticError(
                "inverse of a %d-term scalar is not radical-representable"
                % len(self.terms)
            )
        (atoms, rf), = self.terms.items()
        acc = rf
        for a in atoms:
            acc = acc * _radicand_rf(a)
        return Scalar({atoms: acc.inverse()})

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        out = SC_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # ------------------------------------------------------ lattice maps

    def shift_x_units(self, m_units):
        if not m_units or not self.terms:
            return self
        out = {}
        for atoms, rf in self.terms.items():
            shifted = tuple(
                sorted(
                    ("xbr", a[1] + m_units) if a[0] == "xbr" else a
                    for a in atoms
                )
            )
            out[shifted] = rf.shift_x(m_units)
        return Scalar(out)

    def shift_x(self, m):
        return self.shift_x_units(to_units(m))

    def is_x_free(self):
        return all(
            rf.is_x_free() and all(a[0] != "xbr" for a in atoms)
            for atoms, rf in self.terms.items()
        )

    def eval_x_at_signed_qpow(self, sign, a):
        """Exact substitution x = sign * q**a for radical-free x-radicals."""
        au = to_units(a)
        out = {}
        for atoms, rf in self.terms.items():
            if any(at[0] == "xbr" for at in atoms):
                raise ValueError("substitution into an x-dependent radical")
            qr = rf.subs_signed_qpow(sign, au)
            if qr:
                out[atoms] = rf_const(qr)
        return Scalar(out)

    # ----------------------------------------------------------- limits

    def limit_x(self, at_zero):
        """Exact limit as x -> 0 (at_zero) or x -> infinity; may diverge."""
        if not self.terms:
            return SC_ZERO
        denom = get_lattice_denominator()
        if denom % 2:
            raise LatticeError("x-limits need an even lattice denominator")
        half = denom // 2
        total = SC_ZERO
        for atoms, rf in self.terms.items():
            e, lead = rf.edge(at_zero)
            nxbr = sum(1 for a in atoms if a[0] == "xbr")
            e_total = e + (-half * nxbr if at_zero else half * nxbr)
            if at_zero:
                if e_total < 0:
                    raise DivergentLimit(
                        "term with net x-exponent %s diverges at x -> 0"
                        % from_units(e_total)
                    )
                if e_total > 0:
                    continue
            else:
                if e_total > 0:
                    raise DivergentLimit(
                        "term with net x-exponent %s diverges at x -> infinity"
                        % from_units(e_total)
                    )
                if e_total < 0:
                    continue
            rest = tuple(a for a in atoms if a[0] != "xbr")
            val = Scalar({rest: rf_xpow_units(e).scale_q(lead)})
            for a in atoms:
                if a[0] == "xbr":
                    val = val * _xbr_limit_factor(a[1], at_zero)
            total = total + val
        return total

    # ---------------------------------------------------------- numeric

    def numeric_eval(self, q0, x0):
        """Principal-branch complex value at real q0, x0 > 0."""
        import cmath

        total = 0j
        for atoms, rf in self.terms.items():
            v = rf.eval_complex(q0, x0)
            for a in atoms:
                v *= cmath.sqrt(_radicand_rf(a).eval_complex(q0, x0))
            total += v
        return total

    # ------------------------------------------------------------- JSON

    def to_jsonable(self):
        terms = []
        for atoms in sorted(self.terms):
            rf = self.terms[atoms]
            terms.append(
                {
                    "radical": [_atom_jsonable(a) for a in atoms],
                    "coeff": rf_jsonable(rf),
                }
            )
        return {"lattice": get_lattice_denominator(), "terms": terms}

    @staticmethod
    def from_jsonable(d):
        out = {}
        for t in d["terms"]:
            atoms = tuple(sorted(_atom_from_jsonable(a) for a in t["radical"]))
            rf = rf_from_jsonable(t["coeff"])
            if rf:
                out[atoms] = rf
        return Scalar(out)


def _term_mul(a1, r1, a2, r2):
    if not a1:
        return a2, r1 * r2
    if not a2:
        return a1, r1 * r2
    s1 = set(a1)
    s2 = set(a2)
    rf = r1 * r2
    for a in s1 & s2:
        rf = rf * _radicand_rf(a)
    return tuple(sorted(s1 ^ s2)), rf


def _xbr_limit_factor(c_units, at_zero):
    # sqrt<c> ~ i x^(-1/2) q^(-c/2) / sqrt(q - 1/q)      as x -> 0
    # sqrt<c> ~  -x^(+1/2) q^(+c/2) / sqrt(q - 1/q)      as x -> infinity
    # with 1/sqrt(q - 1/q) written as sqrt(q - 1/q)/(q - 1/q); signs chosen
    # to match principal branches at 0 < q < 1 < 1/x or x.
    if c_units % 2:
        raise LatticeError("half of bracket offset leaves the lattice")
    denom = get_lattice_denominator()
    inv_qd = qdiff_qrat().inverse()
    if at_zero:
        qr = qrat_scale(inv_qd, imaginary_unit())
        rf = rf_xpow_units(-(denom // 2)).scale_q(
            qrat_monomial_mul(qr, -(c_units // 2))
        )
    else:
        qr = qrat_scale(inv_qd, Fraction(-1))
        rf = rf_xpow_units(denom // 2).scale_q(
            qrat_monomial_mul(qr, c_units // 2)
        )
    return Scalar({(("qdiff",),): rf})


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction, Cyclo)):
        return sc_coeff(x)
    return NotImplemented


# -------------------------------------------------------------- builders ---


SC_ZERO = Scalar({})
SC_ONE = Scalar({(): RF_ONE})


def sc_coeff(c):
    if not isinstance(c, (Fraction, Cyclo)):
        c = Fraction(c)
    if not c:
        return SC_ZERO
    return Scalar({(): rf_const(qrat_const(c))})


def sc_from_rf(rf):
    if not rf:
        return SC_ZERO
    return Scalar({(): rf})


def sc_from_qrat(qr):
    if not qr:
        return SC_ZERO
    return Scalar({(): rf_const(qr)})


def qpow(e):
    return sc_from_rf(rf_qpow_units(to_units(e)))


def xpow(e):
    return sc_from_rf(rf_xpow_units(to_units(e)))


_QNUM_CACHE = {}
_QFACT_CACHE = {}


def qrat_qnum(n):
    """[n] = (q^n - q^-n)/(q - q^-1) as a QRat."""
    n = int(n)
    if n < 0:
        return -qrat_qnum(-n)
    denom = get_lattice_denominator()
    key = (denom, n)
    qr = _QNUM_CACHE.get(key)
    if qr is None:
        poly = {denom * (n - 1 - 2 * i): Fraction(1) for i in range(n)}
        qr = QRat(poly, {0: Fraction(1)}) if poly else QRAT_ZERO
        _QNUM_CACHE[key] = qr
    return qr


def qrat_qfact(n):
    n = int(n)
    if n < 0:
        raise ValueError("q-factorial of a negative integer")
    denom = get_lattice_denominator()
    key = (denom, n)
    qr = _QFACT_CACHE.get(key)
    if qr is None:
        qr = QRAT_ONE
        for i in range(2, n + 1):
            qr = qr * qrat_qnum(i)
        _QFACT_CACHE[key] = qr
    return qr


def qnum(n):
    return sc_from_qrat(qrat_qnum(n))


def qfact(n):
    return sc_from_qrat(qrat_qfact(n))


def qbinom(n, k):
    n, k = int(n), int(k)
    if k < 0 or k > n:
        return SC_ZERO
    return sc_from_qrat(
        qrat_qfact(n) / (qrat_qfact(k) * qrat_qfact(n - k))
    )


def qdiff():
    return sc_from_qrat(qdiff_qrat())


def xbracket(c):
    """<c> = (x q^c - x^-1 q^-c)/(q - q^-1)."""
    return sc_from_rf(xbracket_rf(to_units(c)))


def sqrt_qint(n):
    n = int(n)
    if n < 0:
        raise ValueError("square root of a negative-index q-integer")
    if n == 0:
        return SC_ZERO
    if n == 1:
        return SC_ONE
    return Scalar({(("qint", n),): RF_ONE})


def sqrt_qfact(n):
    n = int(n)
    if n < 0:
        raise ValueError("square root of a negative q-factorial")
    atoms = tuple(("qint", i) for i in range(2, n + 1))
    return Scalar({atoms: RF_ONE})


def sqrt_xbracket(c):
    return Scalar({(("xbr", to_units(c)),): RF_ONE})


def sqrt_qdiff():
    return Scalar({(("qdiff",),): RF_ONE})


def phase(t):
    """(-1)**t on the quarter-integer lattice."""
    return sc_coeff(minus_one_pow(t))


# ------------------------------------------------------------- rendering ---


def _coeff_text(c):
    if isinstance(c, Cyclo):
        parts = []
        for i, comp in enumerate(c.parts):
            if not comp:
                continue
            if i == 0:
                parts.append(str(comp))
            elif comp == 1:
                parts.append("z8^%d" % i)
            else:
                parts.append("%s*z8^%d" % (comp, i))
        return "(" + " + ".join(parts) + ")"
    return str(c)


def _qp_text(p, var="q"):
    if not p:
        return "0"
    denom = get_lattice_denominator()
    bits = []
    for e in sorted(p, reverse=True):
        c = p[e]
        ef = Fraction(e, denom)
        if ef == 0:
            bits.append(_coeff_text(c))
        else:
            pw = var if ef == 1 else "%s^(%s)" % (var, ef)
            if c == 1:
                bits.append(pw)
            elif c == -1:
                bits.append("-" + pw)
            else:
                bits.append("%s*%s" % (_coeff_text(c), pw))
    return " + ".join(bits).replace("+ -", "- ")


def _qrat_text(qr):
    if not qr.num:
        return "0"
    if qr.den == {0: Fraction(1)}:
        return _qp_text(qr.num)
    return "(%s)/(%s)" % (_qp_text(qr.num), _qp_text(qr.den))


def _xp_text(xp):
    if not xp:
        return "0"
    denom = get_lattice_denominator()
    bits = []
    for k in sorted(xp, reverse=True):
        qr = xp[k]
        kf = Fraction(k, denom)
        ct = _qrat_text(qr)
        if kf == 0:
            bits.append(ct)
        else:
            pw = "x" if kf == 1 else "x^(%s)" % kf
            if ct == "1":
                bits.append(pw)
            else:
                bits.append("(%s)*%s" % (ct, pw))
    return " + ".join(bits)


def _rf_text(rf):
    if not rf.num:
        return "0"
    if rf.den == {0: QRAT_ONE}:
        return _xp_text(rf.num)
    return "(%s) / (%s)" % (_xp_text(rf.num), _xp_text(rf.den))


def _atom_text(atom):
    if atom[0] == "qint":
        return "[%d]" % atom[1]
    if atom[0] == "xbr":
        return "<%s>" % from_units(atom[1])
    return "(q-1/q)"


def scalar_text(s):
    if not s.terms:
        return "0"
    parts = []
    for atoms in sorted(s.terms):
        rf = s.terms[atoms]
        body = _rf_text(rf)
        if atoms:
            rad = "sqrt(%s)" % "".join(_atom_text(a) for a in atoms)
            body = "(%s)*%s" % (body, rad)
        parts.append(body)
    return "  +  ".join(parts)


# ----------------------------------------------------------------- JSON ----


def _coeff_jsonable(c):
    if isinstance(c, Cyclo):
        return {"zeta8": [str(p) for p in c.parts]}
    return str(c)


def _coeff_from_jsonable(d):
    if isinstance(d, dict):
        return make_coeff(*[Fraction(s) for s in d["zeta8"]])
    return Fraction(d)


def _qp_jsonable(p):
    denom = get_lattice_denominator()
    return {
        str(Fraction(e, denom)): _coeff_jsonable(c)
        for e, c in sorted(p.items())
    }


def _qp_from_jsonable(d):
    out = {}
    for s, c in d.items():
        coeff = _coeff_from_jsonable(c)
        if coeff:
            out[to_units(Fraction(s))] = coeff
    return out


def qrat_jsonable(qr):
    return {"num": _qp_jsonable(qr.num), "den": _qp_jsonable(qr.den)}


def qrat_from_jsonable(d):
    return qrat(_qp_from_jsonable(d["num"]), _qp_from_jsonable(d["den"]))


def rf_jsonable(rf):
    denom = get_lattice_denominator()
    return {
        "num": {
            str(Fraction(k, denom)): qrat_jsonable(c)
            for k, c in sorted(rf.num.items())
        },
        "den": {
            str(Fraction(k, denom)): qrat_jsonable(c)
            for k, c in sorted(rf.den.items())
        },
    }


def rf_from_jsonable(d):
    num = {}
    for s, c in d["num"].items():
        qr = qrat_from_jsonable(c)
        if qr:
            num[to_units(Fraction(s))] = qr
    den = {}
    for s, c in d["den"].items():
        qr = qrat_from_jsonable(c)
        if qr:
            den[to_units(Fraction(s))] = qr
    return ratfn(num, den)
