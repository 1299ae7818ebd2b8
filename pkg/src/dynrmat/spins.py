"""Finite-dimensional spin representations and sparse graded operators.

A Spin stores 2j as an integer.  A TensorSpace is an ordered tuple of spins
with row-major basis indexing; basis vectors of each leg are ordered by
descending magnetic number, and the per-leg weight tables hold 2m for every
full-space basis index.  A GradedOperator is a sparse matrix over the exact
scalar field, keyed by (row, column).

Generator conventions on a single spin-j leg:

    H |j,m>  = 2m |j,m>
    E+ |j,m> = sqrt([j-m][j+m+1]) |j,m+1>
    E- |j,m> = sqrt([j+m][j-m+1]) |j,m-1>

and on two legs the coproduct

    D(E+) = E+ (x) q^(H/2) + q^(-H/2) (x) E+
    D(E-) = E- (x) q^(H/2) + q^(-H/2) (x) E-
    D(H)  = H (x) 1 + 1 (x) H

with the flipped coproduct D' obtained by swapping the q^(+-H/2) dressings.
"""

import itertools
from fractions import Fraction

from .lattice import to_units
from .scalar import (
    SC_ONE,
    SC_ZERO,
    Scalar,
    qnum,
    qpow,
    sc_coeff,
    sqrt_qint,
)

__all__ = [
    "Spin",
    "TensorSpace",
    "GradedOperator",
    "identity_op",
    "zero_op",
    "diag_weight_qpow",
    "rep_h",
    "rep_eplus",
    "rep_eminus",
    "embed",
    "coproduct_h",
    "coproduct_eplus",
    "coproduct_eminus",
    "zero_weight_indices",
    "check_algebra",
]


class Spin:
    """A finite-dimensional irreducible, labelled by twice its spin."""

    __slots__ = ("twice",)

    def __init__(self, j):
        if isinstance(j, Spin):
            self.twice = j.twice
            return
        t = Fraction(j) * 2
        if t.denominator != 1 or t < 0:
            raise ValueError("spin must be a nonnegative half-integer")
        self.twice = int(t)

    @property
    def j(self):
        return Fraction(self.twice, 2)

    @property
    def dim(self):
        return self.twice + 1

    def twice_m(self, i):
        """2m of basis vector i (descending order: i = 0 is m = +j)."""
        return self.twice - 2 * i

    def __eq__(self, other):
        return isinstance(other, Spin) and self.twice == other.twice

    def __hash__(self):
        return hash(("spin", self.twice))

    def __repr__(self):
        return "Spin(%s)" % (self.j,)


class TensorSpace:
    __slots__ = ("spins", "dims", "dim", "leg_weights", "total_weights")

    def __init__(self, spins):
        self.spins = tuple(Spin(s) for s in spins)
        self.dims = tuple(s.dim for s in self.spins)
        dim = 1
        for d in self.dims:
            dim *= d
        self.dim = dim
        legs = len(self.spins)
        weights = [[0] * dim for _ in range(legs)]
        totals = [0] * dim
        for idx, multi in enumerate(itertools.product(*map(range, self.dims))):
            t = 0
            for l, il in enumerate(multi):
                w = self.spins[l].twice_m(il)
                weights[l][idx] = w
                t += w
            totals[idx] = t
        self.leg_weights = tuple(tuple(w) for w in weights)
        self.total_weights = tuple(totals)

    def index(self, multi):
        idx = 0
        for d, i in zip(self.dims, multi):
            idx = idx * d + i
        return idx

    def multi(self, idx):
        out = []
        for d in reversed(self.dims):
            out.append(idx % d)
            idx //= d
        return tuple(reversed(out))

    def __eq__(self, other):
        return isinstance(other, TensorSpace) and self.spins == other.spins

    def __hash__(self):
        return hash(self.spins)

    def __repr__(self):
        return "TensorSpace(%s)" % (", ".join(str(s.j) for s in self.spins),)


class GradedOperator:
    """Sparse matrix over the exact scalar field."""

    __slots__ = ("space", "data")

    def __init__(self, space, data):
        # raw constructor: data holds no zero scalars
        self.space = space
        self.data = data

    # ----------------------------------------------------------- basics

    def __bool__(self):
        return bool(self.data)

    def is_zero(self):
        return not self.data

    def entry(self, r, c):
        return self.data.get((r, c), SC_ZERO)

    def __eq__(self, other):
        if isinstance(other, GradedOperator):
            return self.space == other.space and self.data == other.data
        return NotImplemented

    def __repr__(self):
        return "<GradedOperator %dx%d, %d entries>" % (
            self.space.dim,
            self.space.dim,
            len(self.data),
        )

    # ------------------------------------------------------- arithmetic

    def __neg__(self):
        return GradedOperator(self.space, {k: -s for k, s in self.data.items()})

    def __add__(self, other):
        if not isinstance(other, GradedOperator):
            return NotImplemented
        if self.space != other.space:
            raise ValueError("operator spaces differ")
        out = dict(self.data)
        for k, s in other.data.items():
            t = out.get(k)
            if t is None:
                out[k] = s
            else:
                t = t + s
                if t:
                    out[k] = t
                else:
                    del out[k]
        return GradedOperator(self.space, out)

    def __sub__(self, other):
        if not isinstance(other, GradedOperator):
            return NotImplemented
        return self + (-other)

    def __matmul__(self, other):
        if not isinstance(other, GradedOperator):
            return NotImplemented
        if self.space != other.space:
            raise ValueError("operator spaces differ")
        by_row = {}
        for (k, c), s in other.data.items():
            by_row.setdefault(k, []).append((c, s))
        out = {}
        for (r, k), sa in self.data.items():
            cols = by_row.get(k)
            if not cols:
                continue
            for c, sb in cols:
                key = (r, c)
                p = sa * sb
                t = out.get(key)
                if t is None:
                    if p:
                        out[key] = p
                else:
                    t = t + p
                    if t:
                        out[key] = t
                    else:
                        del out[key]
        return GradedOperator(self.space, out)

    def __mul__(self, factor):
        if isinstance(factor, GradedOperator):
            return NotImplemented
        f = factor if isinstance(factor, Scalar) else sc_coeff(factor)
        if not f:
            return zero_op(self.space)
        return GradedOperator(
            self.space, {k: s * f for k, s in self.data.items()}
        )

    __rmul__ = __mul__

    # ------------------------------------------------------ lattice maps

    def shift_x_by_weight(self, coeff, weights):
        """Substitute x -> x q^(coeff * w) with w the given diagonal weight.

        Only legal when the weight is conserved by the operator, i.e. the
        shifted argument commutes with it.
        """
        coeff = Fraction(coeff)
        if not coeff:
            return self
        out = {}
        for (r, c), s in self.data.items():
            if weights[r] != weights[c]:
                raise ValueError(
                    "shift weight not conserved on entry (%d, %d)" % (r, c)
                )
            out[(r, c)] = s.shift_x_units(to_units(coeff * weights[r]))
        return GradedOperator(self.space, out)

    def shift_x(self, m):
        """Substitute x -> x q^m on every entry."""
        mu = to_units(m)
        if not mu:
            return self
        return GradedOperator(
            self.space, {k: s.shift_x_units(mu) for k, s in self.data.items()}
        )

    def map_entries(self, fn):
        out = {}
        for k, s in self.data.items():
            t = fn(s)
            if t:
                out[k] = t
        return GradedOperator(self.space, out)

    # ---------------------------------------------------------- queries

    def first_nonzero(self):
        """Deterministic witness entry (row, col, scalar) of a nonzero op."""
        if not self.data:
            return None
        r, c = min(self.data)
        return (r, c, self.data[(r, c)])

    def to_jsonable(self):
        return {
            "spins": [str(s.j) for s in self.space.spins],
            "entries": {
                "%d,%d" % k: self.data[k].to_jsonable()
                for k in sorted(self.data)
            },
        }


def zero_op(space):
    return GradedOperator(space, {})


def identity_op(space):
    return GradedOperator(space, {(i, i): SC_ONE for i in range(space.dim)})


def diag_weight_qpow(space, weights, coeff):
    """Diagonal operator q^(coeff * w(i)) for an integer weight table."""
    coeff = Fraction(coeff)
    return GradedOperator(
        space, {(i, i): qpow(coeff * w) for i, w in enumerate(weights)}
    )


def diag_scalars(space, values):
    data = {}
    for i, s in enumerate(values):
        if s:
            data[(i, i)] = s
    return GradedOperator(space, data)


# ------------------------------------------------------- representations ---

_REP_CACHE = {}


def _single(spin):
    return TensorSpace((spin,))


def rep_h(spin):
    spin = Spin(spin)
    key = ("h", spin.twice)
    op = _REP_CACHE.get(key)
    if op is None:
        space = _single(spin)
        data = {}
        for i in range(spin.dim):
            tm = spin.twice_m(i)
            if tm:
                data[(i, i)] = sc_coeff(tm)
        op = GradedOperator(space, data)
        _REP_CACHE[key] = op
    return op


def rep_eplus(spin):
    spin = Spin(spin)
    key = ("e+", spin.twice)
    op = _REP_CACHE.get(key)
    if op is None:
        space = _single(spin)
        data = {}
        for i in range(1, spin.dim):
            # input m at index i, output m+1 at index i-1
            data[(i - 1, i)] = sqrt_qint(i) * sqrt_qint(spin.twice - i + 1)
        op = GradedOperator(space, data)
        _REP_CACHE[key] = op
    return op


def rep_eminus(spin):
    spin = Spin(spin)
    key = ("e-", spin.twice)
    op = _REP_CACHE.get(key)
    if op is None:
        space = _single(spin)
        data = {}
        for i in range(spin.dim - 1):
            data[(i + 1, i)] = sqrt_qint(spin.twice - i) * sqrt_qint(i + 1)
        op = GradedOperator(space, data)
        _REP_CACHE[key] = op
    return op


def embed(op, big, legs):
    """Extend an operator on a sub-tensor-factor to the full space.

    legs gives, for each leg of op.space in order, the target leg of big;
    permutations are allowed, so embedding a two-leg operator with
    legs=(1, 0) realizes the flipped action.
    """
    sub = op.space
    legs = tuple(legs)
    if tuple(sub.spins) != tuple(big.spins[l] for l in legs):
        raise ValueError("leg spins do not match the embedded operator")
    others = [l for l in range(len(big.spins)) if l not in legs]
    other_ranges = [range(big.dims[l]) for l in others]
    nlegs = len(big.spins)
    out = {}
    for (rs, cs), s in op.data.items():
        rmulti = sub.multi(rs)
        cmulti = sub.multi(cs)
        for assign in itertools.product(*other_ranges):
            rfull = [0] * nlegs
            cfull = [0] * nlegs
            for pos, l in enumerate(legs):
                rfull[l] = rmulti[pos]
                cfull[l] = cmulti[pos]
            for pos, l in enumerate(others):
                rfull[l] = assign[pos]
                cfull[l] = assign[pos]
            out[(big.index(rfull), big.index(cfull))] = s
    return GradedOperator(big, out)


def coproduct_h(space2):
    return embed(rep_h(space2.spins[0]), space2, (0,)) + embed(
        rep_h(space2.spins[1]), space2, (1,)
    )


def coproduct_eplus(space2, flipped=False):
    s0, s1 = space2.spins
    half = Fraction(-1, 2) if flipped else Fraction(1, 2)
    e0 = embed(rep_eplus(s0), space2, (0,))
    e1 = embed(rep_eplus(s1), space2, (1,))
    d1 = diag_weight_qpow(space2, space2.leg_weights[1], half)
    d0 = diag_weight_qpow(space2, space2.leg_weights[0], -half)
    return e0 @ d1 + d0 @ e1


def coproduct_eminus(space2, flipped=False):
    s0, s1 = space2.spins
    half = Fraction(-1, 2) if flipped else Fraction(1, 2)
    e0 = embed(rep_eminus(s0), space2, (0,))
    e1 = embed(rep_eminus(s1), space2, (1,))
    d1 = diag_weight_qpow(space2, space2.leg_weights[1], half)
    d0 = diag_weight_qpow(space2, space2.leg_weights[0], -half)
    return e0 @ d1 + d0 @ e1


def zero_weight_indices(space):
    return [i for i, w in enumerate(space.total_weights) if w == 0]


def check_algebra(spin):
    """Defining relations of the quantum algebra in the spin-j matrices.

    Returns (ok, message); message names the first failing relation.
    """
    spin = Spin(spin)
    space = _single(spin)
    h = rep_h(spin)
    ep = rep_eplus(spin)
    em = rep_eminus(spin)
    two = sc_coeff(2)

    comm = h @ ep - ep @ h
    if comm != ep * two:
        return False, "[H, E+] != 2 E+ at spin %s" % spin.j
    comm = h @ em - em @ h
    if comm != em * (-two):
        return False, "[H, E-] != -2 E- at spin %s" % spin.j
    comm = ep @ em - em @ ep
    target = diag_scalars(
        space, [qnum(spin.twice_m(i)) for i in range(spin.dim)]
    )
    if comm != target:
        return False, "[E+, E-] != [H]_q at spin %s" % spin.j
    return True, "spin %s algebra relations hold" % spin.j


def check_coproduct_algebra(space2, flipped=False):
    """The coproduct images satisfy the same defining relations."""
    h = coproduct_h(space2)
    ep = coproduct_eplus(space2, flipped)
    em = coproduct_eminus(space2, flipped)
    two = sc_coeff(2)
    if h @ ep - ep @ h != ep * two:
        return False, "[D(H), D(E+)] != 2 D(E+)"
    if h @ em - em @ h != em * (-two):
        return False, "[D(H), D(E-)] != -2 D(E-)"
    comm = ep @ em - em @ ep
    target = diag_scalars(
        space2, [qnum(w) for w in space2.total_weights]
    )
    if comm != target:
        return False, "[D(E+), D(E-)] != [D(H)]_q"
    return True, "coproduct algebra relations hold"
