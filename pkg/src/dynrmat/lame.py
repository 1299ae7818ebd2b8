"""The trigonometric difference equation solved by the exchange matrices.

Everything acts on Laurent-type functions of x through the scale shift
T: f(x) -> f(q x).  Operators are kept in the normal form sum_s a_s(x) T^s,
so composition uses a(x) T^s . b(x) T^t = a(x) b(q^s x) T^(s+t).
"""

from fractions import Fraction

from .scalar import SC_ONE, SC_ZERO, qdiff, qbinom, qpow, xpow
from .spins import Spin, TensorSpace, rep_eminus, rep_eplus
from .report import VerificationReport, run_comparisons

__all__ = [
    "QDiffOperator",
    "QDOMatrix",
    "c_function",
    "d_function",
    "hamiltonian",
    "shift_operator",
    "wavefunction",
    "wavefunction_recursive",
    "wavefunction_closed",
    "wavefunction_terms",
    "energy",
    "lax_matrix",
    "lax_matrix_blocks",
    "transfer_operator",
    "transfer_and_restrict",
    "rll_sides",
    "classical_limit_check",
    "classical_limit_table",
    "verify_intertwining",
    "verify_wavefunction_routes",
    "verify_eigen_equation",
    "verify_exclusion",
    "verify_residues",
    "verify_spectral_properties",
    "verify_lax_routes",
    "verify_transfer_restriction",
    "verify_rll",
    "verify_classical_limit",
    "LAME_RELATIONS",
    "verify_lame_relation",
]


def _fr(v):
    return Fraction(v)


class QDiffOperator:
    """Finite sum of scale shifts with exact function coefficients."""

    __slots__ = ("data",)

    def __init__(self, data=None):
        clean = {}
        for s, a in (data or {}).items():
            if a:
                clean[Fraction(s)] = a
        self.data = clean

    def __bool__(self):
        return bool(self.data)

    def __eq__(self, other):
        if not isinstance(other, QDiffOperator):
            return NotImplemented
        return self.data == other.data

    def __add__(self, other):
        out = dict(self.data)
        for s, a in other.data.items():
            got = out.get(s)
            tot = a if got is None else got + a
            if tot:
                out[s] = tot
            elif s in out:
                del out[s]
        return QDiffOperator(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return QDiffOperator({s: -a for s, a in self.data.items()})

    def __matmul__(self, other):
        out = {}
        for s, a in self.data.items():
            for t, b in other.data.items():
                term = a * b.shift_x(s)
                key = s + t
                got = out.get(key)
                tot = term if got is None else got + term
                if tot:
                    out[key] = tot
                elif key in out:
                    del out[key]
        return QDiffOperator(out)

    def scale(self, c):
        return QDiffOperator({s: a * c for s, a in self.data.items()})

    def apply(self, psi):
        """Act on a function of x."""
        out = SC_ZERO
        for s, a in self.data.items():
            out = out + a * psi.shift_x(s)
        return out

    def __repr__(self):
        return "QDiffOperator(%r)" % (self.data,)

    def __str__(self):
        if not self.data:
            return "0"
        return " + ".join(
            "(%s) T^(%s)" % (a, s) for s, a in sorted(self.data.items())
        )


QDO_ZERO = QDiffOperator()


def qdo_shift(s, coeff=SC_ONE):
    return QDiffOperator({Fraction(s): coeff})


def qdo_func(a):
    return QDiffOperator({Fraction(0): a})


# --------------------------------------------------------------- operators


def _two_brackets(a, b):
    """(q^a x - q^-a x^-1)(q^b x - q^-b x^-1) as a Scalar."""
    return (xpow(1) * qpow(a) - xpow(-1) * qpow(-a)) * (
        xpow(1) * qpow(b) - xpow(-1) * qpow(-b)
    )


def c_function(j, shift=0):
    """Potential coefficient at argument x q^shift."""
    j = _fr(j)
    num = _two_brackets(j, -j - 1)
    den = _two_brackets(0, -1)
    return (num / den).shift_x(shift)


def d_function(j, shift=0):
    """Forward coefficient of the ladder operator at x q^shift."""
    j = _fr(j)
    num = _two_brackets(-j, -j - 1)
    den = _two_brackets(0, -1)
    return (num / den).shift_x(shift)


def hamiltonian(j):
    """T^-1 + c_j(qx) T."""
    return QDiffOperator({-1: SC_ONE, 1: c_function(j, shift=1)})


def shift_operator(j):
    """T^-1 - d_j(qx) T, mapping level j-1 eigenfunctions to level j."""
    return QDiffOperator({-1: SC_ONE, 1: -d_function(j, shift=1)})


def energy(k):
    return qpow(k) + qpow(-k)


def wavefunction_recursive(j, k):
    """Eigenfunction by the ladder cascade from the free solution."""
    j = int(j)
    psi = xpow(k) - xpow(-k)
    for level in range(1, j + 1):
        psi = shift_operator(level).apply(psi)
    return psi


def wavefunction(j, k, method="closed"):
    if method == "closed":
        return wavefunction_closed(j, k)
    if method == "recursive":
        return wavefunction_recursive(j, k)
    raise ValueError("method must be 'closed' or 'recursive'")


def wavefunction_terms(j, k):
    """Summands of the closed form, kept apart for residue inspection."""
    j, k = int(j), int(k)
    terms = []
    for n in range(j + 1):
        num = SC_ONE
        den = SC_ONE
        for r in range(1, n + 1):
            num = num * (xpow(1) * qpow(r - j - 1) - xpow(-1) * qpow(j + 1 - r))
            den = den * (xpow(1) * qpow(r) - xpow(-1) * qpow(-r))
        wave = qpow(k * (2 * n - j)) * xpow(k) - qpow(-k * (2 * n - j)) * xpow(-k)
        sign = SC_ONE if n % 2 == 0 else -SC_ONE
        terms.append(sign * qbinom(j, n) * num / den * wave)
    return terms


def wavefunction_closed(j, k):
    out = SC_ZERO
    for t in wavefunction_terms(j, k):
        out = out + t
    return out


# ------------------------------------------------------------- lax matrix


def _aux_quantum_space(j):
    return TensorSpace((Spin(Fraction(1, 2)), Spin(_fr(j))))


class QDOMatrix:
    """Matrix of q-difference operators over a tensor-product basis."""

    __slots__ = ("space", "data")

    def __init__(self, space, data=None):
        self.space = space
        clean = {}
        for rc, op in (data or {}).items():
            if op:
                clean[rc] = op
        self.data = clean

    def entry(self, r, c):
        return self.data.get((r, c), QDO_ZERO)

    def __eq__(self, other):
        if not isinstance(other, QDOMatrix):
            return NotImplemented
        return self.space.dims == other.space.dims and self.data == other.data

    def __add__(self, other):
        out = dict(self.data)
        for rc, op in other.data.items():
            got = out.get(rc)
            tot = op if got is None else got + op
            if tot:
                out[rc] = tot
            elif rc in out:
                del out[rc]
        return QDOMatrix(self.space, out)

    def __sub__(self, other):
        return self + other.scale(-SC_ONE)

    def scale(self, c):
        return QDOMatrix(self.space, {rc: op.scale(c) for rc, op in self.data.items()})

    def __matmul__(self, other):
        by_row = {}
        for (r, k), op in self.data.items():
            by_row.setdefault(r, []).append((k, op))
        # group the right factor by its row for the contraction
        right_rows = {}
        for (r, c), op in other.data.items():
            right_rows.setdefault(r, []).append((c, op))
        out = {}
        for r, row in by_row.items():
            acc = {}
            for k, op1 in row:
                for c, op2 in right_rows.get(k, ()):
                    term = op1 @ op2
                    got = acc.get(c)
                    tot = term if got is None else got + term
                    if tot:
                        acc[c] = tot
                    elif c in acc:
                        del acc[c]
            for c, op in acc.items():
                out[(r, c)] = op
        return QDOMatrix(self.space, out)

    def to_jsonable(self):
        ent = {}
        for (r, c), op in sorted(self.data.items()):
            ent["%d,%d" % (r, c)] = {
                str(s): a.to_jsonable() for s, a in sorted(op.data.items())
            }
        return {"dims": list(self.space.dims), "entries": ent}


def qdo_from_graded(op):
    """Wrap a function-valued matrix as a shift-free operator matrix."""
    return QDOMatrix(op.space, {rc: qdo_func(v) for rc, v in op.data.items()})


def lax_matrix(j):
    """Dressing route: scale-shift conjugation of the exchange matrix.

    Entries pick up x-shifts and shift powers set by the weights of the
    auxiliary and quantum legs.
    """
    from .twist import gnf_r

    j = _fr(j)
    r_op = gnf_r(Fraction(1, 2), j)
    space = r_op.space
    w_aux = space.leg_weights[0]
    w_qua = space.leg_weights[1]
    data = {}
    for (r, c), v in r_op.data.items():
        lead = -(Fraction(w_aux[r]) + Fraction(w_qua[r], 2))
        tpow = lead + Fraction(w_qua[c], 2)
        data[(r, c)] = qdo_shift(tpow, v.shift_x(lead))
    return QDOMatrix(space, data)


def lax_matrix_blocks(j):
    """Display route: the 2x2 auxiliary block form with ladder entries."""
    j = _fr(j)
    space = _aux_quantum_space(j)
    spin = space.spins[1]
    dim = spin.dim
    eplus = rep_eplus(spin)
    eminus = rep_eminus(spin)
    weights = [spin.twice_m(i) for i in range(dim)]

    def fx(shift_units):
        # (q - q^-1)/(x - x^-1) at argument x q^shift
        return (qdiff() / (xpow(1) - xpow(-1))).shift_x(shift_units)

    data = {}
    half = Fraction(1, 2)
    for i in range(dim):
        m = Fraction(weights[i]) / 2
        # upper-left: T^-1 q^(H/2)
        data[(space.index((0, i)), space.index((0, i)))] = qdo_shift(-1, qpow(m))
        # lower-right: T q^(-H/2) (1 - f(x q^(-H/2)) f(x q^(H/2-1)) E+ E-);
        # E+E- is diagonal here, and pulling T left->right shifts every x
        val = SC_ZERO
        if i + 1 < dim:
            val = eplus.entry(i, i + 1) * eminus.entry(i + 1, i)
        coeff = qpow(-m) * (SC_ONE - fx(-m) * fx(m - 1) * val)
        data[(space.index((1, i)), space.index((1, i)))] = qdo_shift(
            1, coeff.shift_x(1)
        )
    for (r, c), v in eminus.data.items():
        # upper-right: -q^(-1/2) x^-1 f(x q^(H/2)) q^(-H/2) E-, with the
        # diagonal factors acting on the lowered state (weight of the row)
        m_out = Fraction(weights[r]) / 2
        ent = -qpow(-half) * xpow(-1) * fx(m_out) * qpow(-m_out) * v
        data[(space.index((0, r)), space.index((1, c)))] = qdo_func(ent)
    for (r, c), v in eplus.data.items():
        # lower-left: q^(-1/2) x f(x q^(-H/2+1)) q^(H/2) E+
        m_out = Fraction(weights[r]) / 2
        ent = qpow(-half) * xpow(1) * fx(-m_out + 1) * qpow(m_out) * v
        data[(space.index((1, r)), space.index((0, c)))] = qdo_func(ent)
    return QDOMatrix(space, data)


def transfer_operator(j):
    """Partial trace of the Lax matrix over the auxiliary leg."""
    lax = lax_matrix(j)
    big = lax.space
    spin = big.spins[1]
    small = TensorSpace((spin,))
    data = {}
    for (r, c), op in lax.data.items():
        ra, ri = big.multi(r)
        ca, ci = big.multi(c)
        if ra != ca:
            continue
        got = data.get((ri, ci))
        tot = op if got is None else got + op
        if tot:
            data[(ri, ci)] = tot
        elif (ri, ci) in data:
            del data[(ri, ci)]
    return QDOMatrix(small, data)


def transfer_and_restrict(j):
    """Transfer operator on the zero-weight state."""
    j = _fr(j)
    if j.denominator != 1:
        raise ValueError("zero-weight restriction needs an integer spin")
    t = transfer_operator(j)
    spin = t.space.spins[0]
    zero = next(i for i in range(spin.dim) if spin.twice_m(i) == 0)
    return t.entry(zero, zero)


def _embed_qdo(mat, big, legs):
    """Place an aux (x) quantum operator matrix onto two legs of a larger
    space, identity elsewhere."""
    spectators = [i for i in range(len(big.dims)) if i not in legs]
    out = {}
    small = mat.space
    for (r, c), op in mat.data.items():
        rm = small.multi(r)
        cm = small.multi(c)
        specs = [range(big.dims[i]) for i in spectators]

        def fill(pos, assign):
            if pos == len(spectators):
                rr = [0] * len(big.dims)
                cc = [0] * len(big.dims)
                for leg, val in zip(legs, rm):
                    rr[leg] = val
                for leg, val in zip(legs, cm):
                    cc[leg] = val
                for leg, val in zip(spectators, assign):
                    rr[leg] = val
                    cc[leg] = val
                out[(big.index(tuple(rr)), big.index(tuple(cc)))] = op
                return
            for v in specs[pos]:
                fill(pos + 1, assign + [v])

        fill(0, [])
    return QDOMatrix(big, out)


def _r12_with_aux_shift(space, sign):
    """Exchange matrix on the two auxiliary legs, argument dressed by the
    weight of the quantum leg."""
    from .twist import gnf_r
    from .spins import embed

    half = Fraction(1, 2)
    r12 = embed(gnf_r(half, half), space, (0, 1))
    w3 = space.leg_weights[2]
    data = {}
    for (r, c), v in r12.data.items():
        data[(r, c)] = qdo_func(v.shift_x(sign * Fraction(w3[r], 2)))
    return QDOMatrix(space, data)


def rll_sides(j):
    """Both sides of the exchange relation for the Lax matrix."""
    j = _fr(j)
    half = Fraction(1, 2)
    space = TensorSpace((Spin(half), Spin(half), Spin(j)))
    lax = lax_matrix(j)
    l13 = _embed_qdo(lax, space, (0, 2))
    l23 = _embed_qdo(lax, space, (1, 2))
    lhs = _r12_with_aux_shift(space, -1) @ l13 @ l23
    rhs = l23 @ l13 @ _r12_with_aux_shift(space, +1)
    return lhs, rhs


# ------------------------------------------------------------ verification


def _qdo_pairs(label, a, b):
    """Flatten two operator matrices into comparable scalar pairs."""
    pairs = []
    keys = sorted(set(a.data) | set(b.data))
    for rc in keys:
        opa = a.entry(*rc)
        opb = b.entry(*rc)
        shifts = sorted(set(opa.data) | set(opb.data))
        for s in shifts:
            pairs.append(
                (
                    "%s entry %s shift %s" % (label, rc, s),
                    opa.data.get(s, SC_ZERO),
                    opb.data.get(s, SC_ZERO),
                )
            )
    return pairs


def verify_intertwining(j, mode="exact", q0=None, x0=None):
    """H_j D_j = D_j H_(j-1)."""
    j = int(j)
    lhs = hamiltonian(j) @ shift_operator(j)
    rhs = shift_operator(j) @ hamiltonian(j - 1)
    comparisons = []
    shifts = sorted(set(lhs.data) | set(rhs.data))
    for s in shifts:
        comparisons.append(
            (
                "shift %s" % s,
                lhs.data.get(s, SC_ZERO),
                rhs.data.get(s, SC_ZERO),
            )
        )
    return run_comparisons(
        "INTERTWINING", (Fraction(j),), comparisons, mode=mode, q0=q0, x0=x0
    )


def verify_wavefunction_routes(j, mode="exact", q0=None, x0=None, kmax=5):
    comparisons = []
    for k in range(-kmax, kmax + 1):
        comparisons.append(
            ("k=%d" % k, wavefunction_recursive(j, k), wavefunction_closed(j, k))
        )
    return run_comparisons(
        "WAVEFUNCTION_ROUTES", (Fraction(j),), comparisons, mode=mode, q0=q0, x0=x0
    )


def verify_eigen_equation(j, mode="exact", q0=None, x0=None, kmax=5):
    h = hamiltonian(j)
    comparisons = []
    for k in range(-kmax, kmax + 1):
        psi = wavefunction_closed(j, k)
        comparisons.append(("k=%d" % k, h.apply(psi), energy(k) * psi))
    return run_comparisons(
        "EIGEN_EQUATION", (Fraction(j),), comparisons, mode=mode, q0=q0, x0=x0
    )


def verify_exclusion(j, mode="exact", q0=None, x0=None):
    """Both routes annihilate the free solutions with |k| <= j."""
    j = int(j)
    comparisons = []
    for k in range(-j, j + 1):
        comparisons.append(
            ("recursive k=%d" % k, wavefunction_recursive(j, k), SC_ZERO)
        )
        comparisons.append(
            ("closed k=%d" % k, wavefunction_closed(j, k), SC_ZERO)
        )
    return run_comparisons(
        "EXCLUSION", (Fraction(j),), comparisons, mode=mode, q0=q0, x0=x0
    )


def _residue_rows(j, k):
    """Exact residue probes at x = +- q^-r for one wavefunction.

    Row 'termwise': the closed-form summands each have at most a simple
    pole; multiply by the vanishing factor, substitute, and sum.  Row
    'reduced': the same probe on the wavefunction brought over its common
    denominator.  Both must vanish.
    """
    rows = []
    terms = wavefunction_terms(j, k)
    reduced = wavefunction_closed(j, k)
    for r in range(1, j + 1):
        factor = xpow(1) * qpow(r) - xpow(-1) * qpow(-r)
        for sign in (1, -1):
            acc = SC_ZERO
            for t in terms:
                acc = acc + (t * factor).eval_x_at_signed_qpow(sign, -r)
            rows.append(
                ("termwise k=%d r=%d sign=%+d" % (k, r, sign), acc, SC_ZERO)
            )
            red = (reduced * factor).eval_x_at_signed_qpow(sign, -r)
            rows.append(
                ("reduced k=%d r=%d sign=%+d" % (k, r, sign), red, SC_ZERO)
            )
    return rows


def verify_residues(j, mode="exact", q0=None, x0=None, ks=(None,)):
    """Residues of the wavefunctions cancel at x = +- q^-r, 1 <= r <= j."""
    j = int(j)
    if ks == (None,):
        ks = (j + 1, j + 2)
    comparisons = []
    for k in ks:
        comparisons.extend(_residue_rows(j, k))
    return run_comparisons(
        "RESIDUES", (Fraction(j),), comparisons, mode=mode, q0=q0, x0=x0
    )


def verify_spectral_properties(j, mode="exact", q0=None, x0=None, kmax=5):
    """Eigen-equation, exclusion and residue vanishing in one report."""
    j = int(j)
    h = hamiltonian(j)
    comparisons = []
    for k in range(-kmax, kmax + 1):
        psi = wavefunction_closed(j, k)
        comparisons.append(("eigen k=%d" % k, h.apply(psi), energy(k) * psi))
    for k in range(-j, j + 1):
        comparisons.append(
            ("exclusion k=%d" % k, wavefunction_closed(j, k), SC_ZERO)
        )
    for k in (j + 1, j + 2):
        comparisons.extend(_residue_rows(j, k))
    return run_comparisons(
        "SPECTRAL_PROPERTIES", (Fraction(j),), comparisons, mode=mode, q0=q0, x0=x0
    )


def verify_lax_routes(j, mode="exact", q0=None, x0=None):
    a = lax_matrix(j)
    b = lax_matrix_blocks(j)
    comparisons = _qdo_pairs("lax", a, b)
    return run_comparisons(
        "LAX_ROUTES", (_fr(j),), comparisons, mode=mode, q0=q0, x0=x0
    )


def verify_transfer_restriction(j, mode="exact", q0=None, x0=None):
    t = transfer_and_restrict(j)
    h = hamiltonian(j)
    comparisons = []
    for s in sorted(set(t.data) | set(h.data)):
        comparisons.append(
            ("shift %s" % s, t.data.get(s, SC_ZERO), h.data.get(s, SC_ZERO))
        )
    return run_comparisons(
        "TRANSFER_RESTRICTION", (_fr(j),), comparisons, mode=mode, q0=q0, x0=x0
    )


def verify_rll(j, mode="exact", q0=None, x0=None):
    lhs, rhs = rll_sides(j)
    comparisons = _qdo_pairs("rll", lhs, rhs)
    return run_comparisons(
        "RLL", (_fr(j),), comparisons, mode=mode, q0=q0, x0=x0
    )


def classical_limit_table(j, k, z, eps_values=(1e-2, 1e-3)):
    """Epsilon sweep of the scaled operator action at one (k, z) point.

    The action of the difference operator on x^k, evaluated at
    q = e^(+-eps) and averaged so the result is an even function of eps,
    approaches k^2 - j(j+1)/sinh(z)^2 quadratically.  Returns
    (rows, extrapolated, target, order) with rows pairing each eps with
    the symmetrized value.  The one-sided action carries an odd eps term
    (the test function is not an eigenfunction), which the symmetrization
    removes.
    """
    import math

    j, k = int(j), int(k)
    cj = c_function(j, shift=1)
    x0 = math.exp(z)

    def action(q0):
        cval = cj.numeric_eval(q0, x0).real
        return q0 ** (-k) + q0 ** k * cval - 2.0

    def v(eps):
        return (action(math.exp(eps)) + action(math.exp(-eps))) / (
            2.0 * eps ** 2
        )

    target = k * k - j * (j + 1) / math.sinh(z) ** 2
    rows = [(eps, v(eps)) for eps in eps_values]
    (e1, v1), (e2, v2) = rows[-2], rows[-1]
    ratio = (e1 / e2) ** 2
    extrap = (ratio * v2 - v1) / (ratio - 1.0)
    order = math.log(abs(v1 - target) / abs(v2 - target)) / math.log(e1 / e2)
    return rows, extrap, target, order


def classical_limit_check(j, k, z):
    """(extrapolated value, target, observed order) at one (k, z) point."""
    rows, extrap, target, order = classical_limit_table(j, k, z)
    return extrap, target, order


def verify_classical_limit(j, mode="numeric", q0=None, x0=None,
                           ks=(2, 3), zs=(0.5, 1.0), tol=1e-4,
                           order_window=(1.8, 2.2)):
    """Pass when every sampled (k, z) extrapolates to the continuum value
    at second order."""
    import time

    t0 = time.perf_counter()
    failing = None
    for k in ks:
        for z in zs:
            extrap, target, order = classical_limit_check(j, k, z)
            rel = abs(extrap - target) / max(1.0, abs(target))
            if rel > tol or not (order_window[0] <= order <= order_window[1]):
                failing = {
                    "check": "k=%d z=%s" % (k, z),
                    "extrapolated": repr(extrap),
                    "target": repr(target),
                    "relative_error": repr(rel),
                    "order": repr(order),
                }
                break
        if failing:
            break
    return VerificationReport(
        relation="CLASSICAL_LIMIT",
        spins=(Fraction(j),),
        mode="numeric",
        status="pass" if failing is None else "fail",
        failing_entry=failing,
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )


LAME_RELATIONS = {
    "INTERTWINING": verify_intertwining,
    "WAVEFUNCTION_ROUTES": verify_wavefunction_routes,
    "EIGEN_EQUATION": verify_eigen_equation,
    "EXCLUSION": verify_exclusion,
    "RESIDUES": verify_residues,
    "SPECTRAL_PROPERTIES": verify_spectral_properties,
    "LAX_ROUTES": verify_lax_routes,
    "TRANSFER_RESTRICTION": verify_transfer_restriction,
    "RLL": verify_rll,
    "CLASSICAL_LIMIT": verify_classical_limit,
}


def verify_lame_relation(name, spins, mode="exact", q0=None, x0=None):
    fn = LAME_RELATIONS[name]
    if len(spins) != 1:
        raise ValueError("%s expects one spin, got %d" % (name, len(spins)))
    return fn(spins[0], mode=mode, q0=q0, x0=x0)
