"""Twist families, exchange matrices and the identity checkers."""

from fractions import Fraction as F

import pytest

from dynrmat.scalar import SC_ONE, qdiff, qpow, xpow
from dynrmat.spins import TensorSpace, identity_op
from dynrmat.twist import (
    associator_phi,
    associator_phi_inv,
    boundary_m,
    drinfeld_r,
    gnf_r,
    relation_arity,
    relation_names,
    twist_f,
    twist_f_inv,
    verify_relation,
)

H = F(1, 2)


def test_constant_exchange_matrix_pinned():
    rd = drinfeld_r(H, H)
    assert rd.entry(0, 0) == qpow(H)
    assert rd.entry(1, 1) == qpow(-H)
    assert rd.entry(2, 2) == qpow(-H)
    assert rd.entry(3, 3) == qpow(H)
    assert rd.entry(1, 2) == qpow(-H) * qdiff()
    assert len(rd.data) == 5


def test_twist_pinned_entry():
    f = twist_f(H, H)
    assert f.entry(1, 2) == -(qdiff() * xpow(1)) / (xpow(1) - xpow(-1))
    for i in range(4):
        assert f.entry(i, i) == SC_ONE


def test_twist_inverse_two_routes():
    # the closed-form inverse series must agree with the matrix inverse
    # computed by a plain geometric series in (1 - F), which terminates
    # because 1 - F is strictly triangular in the weight filtration
    for pair in [(H, H), (H, 1)]:
        f = twist_f(*pair)
        finv = twist_f_inv(*pair)
        space = f.space
        ident = identity_op(space)
        n = ident - f
        series = ident
        term = ident
        while term.data:
            term = term @ n
            series = series + term
        assert finv == series
        assert f @ finv == ident
        assert finv @ f == ident


def test_boundary_twist_matrix_pinned():
    m = boundary_m(H)
    den = SC_ONE - xpow(2) * qpow(2)
    assert m.entry(0, 0) == SC_ONE / den
    assert m.entry(0, 1) == -(qpow(H) * xpow(1)) / den
    assert m.entry(1, 0) == -qpow(-H) * xpow(1)
    assert m.entry(1, 1) == SC_ONE


def test_delta_m_matches_coboundary_product():
    rep = verify_relation("COBOUNDARY", (H, H))
    assert rep.ok, rep.line()


def test_associator_inverse():
    phi = associator_phi(H, H, H)
    inv = associator_phi_inv(H, H, H)
    ident = identity_op(phi.space)
    assert phi @ inv == ident
    assert inv @ phi == ident


def test_associator_conserves_total_weight():
    phi = associator_phi(H, H, 1)
    space = phi.space
    for (r, c) in phi.data:
        assert space.total_weights[r] == space.total_weights[c]


@pytest.mark.parametrize(
    "name,spins",
    [
        ("RD_INTERTWINER", (H, H)),
        ("RD_INTERTWINER", (H, 1)),
        ("RD_FUSION", (H, H, H)),
        ("RD_FUSION", (H, 1, H)),
        ("GNF", (H, H, H)),
        ("GNF", (H, H, 1)),
        ("COCYCLE", (H, H, H)),
        ("COCYCLE", (H, 1, H)),
        ("COBOUNDARY", (H, 1)),
        ("PHI_FORMS", (H, H, H)),
        ("SHIFTED_COASSOC", (H, H, H)),
        ("PHI_CONJUGATION", (H, H, H)),
        ("QUASI_YBE", (H, H, H)),
        ("QUASITRIANG_LEFT", (H, H, H)),
        ("QUASITRIANG_RIGHT", (H, H, H)),
        ("DELTAX_HOMOMORPHISM", (H, H)),
        ("DELTAX_HOMOMORPHISM", (H, 1)),
        ("TWIST_LIMITS", (H, H)),
        ("TWIST_LIMITS", (H, 1)),
    ],
)
def test_relation_exact(name, spins):
    rep = verify_relation(name, spins)
    assert rep.ok, rep.line()


def test_relation_numeric_mode():
    rep = verify_relation("GNF", (H, H, H), mode="numeric", q0=0.43, x0=0.67)
    assert rep.ok, rep.line()


def test_relation_catches_wrong_identity():
    # sanity of the harness itself: a deliberately false comparison fails
    from dynrmat.report import run_comparisons

    space = TensorSpace((F(1, 2), F(1, 2)))
    lhs = drinfeld_r(H, H)
    rhs = identity_op(space)
    rep = run_comparisons("SANITY", (H, H), [("broken", lhs, rhs)])
    assert not rep.ok
    assert rep.failing_entry is not None
    assert rep.residual_rank is not None and rep.residual_rank > 0


def test_registry_arities():
    for name in relation_names():
        assert relation_arity(name) in (2, 3)


def test_gnf_r_acts_block_diagonally():
    r = gnf_r(H, 1)
    space = r.space
    for (row, col) in r.data:
        assert space.total_weights[row] == space.total_weights[col]


def test_report_json_shape():
    rep = verify_relation("GNF", (H, H, H))
    blob = rep.to_jsonable(stable=True)
    assert blob == {
        "relation": "GNF",
        "spins": ["1/2", "1/2", "1/2"],
        "mode": "exact",
        "status": "pass",
    }
