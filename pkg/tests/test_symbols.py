"""Coupling coefficients, recoupling symbols and the matrix dictionaries."""

import math
from fractions import Fraction as F

import pytest

from dynrmat.scalar import (
    SC_ONE,
    SC_ZERO,
    phase,
    qpow,
    sqrt_qint,
    xbracket,
)
from dynrmat.symbols import (
    ContinuedExpr,
    cg,
    cont_spin,
    m_element,
    norm_xi,
    six_j,
    six_j_brute,
    six_j_cont,
    six_j_u,
    three_j,
    verify_delta_m_decomposition,
    verify_f_dictionary,
    verify_m_dictionary,
    verify_m_limit_formula,
    verify_r_dictionary,
    verify_recoupling,
    verify_symbol_relation,
)

H = F(1, 2)


def _mrange(j):
    out = []
    m = j
    while m >= -j:
        out.append(m)
        m -= 1
    return out


def _jrange(j1, j2):
    out = []
    j = abs(j1 - j2)
    while j <= j1 + j2:
        out.append(j)
        j += 1
    return out


# --------------------------------------------------------------- couplings


def test_three_j_selection_rules():
    assert three_j(H, H, 1, H, H, 0) == SC_ZERO
    assert three_j(H, H, 2, H, H, 1) == SC_ZERO
    assert three_j(1, 1, 1, 1, 1, 2) == SC_ZERO


def test_three_j_pinned_values():
    # top of the spin-1 triplet and both middle components
    assert three_j(H, H, 1, H, H, 1) == SC_ONE
    s = sqrt_qint(2)
    assert three_j(H, H, 1, H, -H, 0) == qpow(-H) / s
    assert three_j(H, H, 1, -H, H, 0) == qpow(H) / s
    # singlet carries the quantum dimension
    assert three_j(H, H, 0, H, -H, 0) == qpow(H) / s
    assert three_j(H, H, 0, -H, H, 0) == -qpow(-H) / s


@pytest.mark.parametrize("j1,j2", [(H, H), (H, 1), (1, 1)])
def test_three_j_orthonormality(j1, j2):
    for j3 in _jrange(j1, j2):
        for j3p in _jrange(j1, j2):
            for m3 in _mrange(min(j3, j3p)):
                acc = SC_ZERO
                for m1 in _mrange(j1):
                    m2 = m3 - m1
                    if abs(m2) <= j2:
                        acc = acc + three_j(j1, j2, j3, m1, m2, m3) * three_j(
                            j1, j2, j3p, m1, m2, m3
                        )
                assert acc == (SC_ONE if j3 == j3p else SC_ZERO)


def test_three_j_completeness():
    # resolving the identity on the product of two spin-1/2 lines
    for m1 in _mrange(H):
        for m2 in _mrange(H):
            for n1 in _mrange(H):
                n2 = m1 + m2 - n1
                if abs(n2) > H:
                    continue
                acc = SC_ZERO
                for j3 in _jrange(H, H):
                    acc = acc + three_j(H, H, j3, m1, m2, m1 + m2) * three_j(
                        H, H, j3, n1, n2, m1 + m2
                    )
                want = SC_ONE if (m1, m2) == (n1, n2) else SC_ZERO
                assert acc == want


def test_classical_limit_of_coupling():
    # independent float oracle: the undeformed coefficient by the plain
    # van der Waerden sum with ordinary factorials
    def classical(j1, j2, j3, m1, m2):
        m3 = m1 + m2
        f = math.factorial

        def fa(v):
            return f(int(v))

        pre = math.sqrt(
            fa(-j1 + j2 + j3) * fa(j1 - j2 + j3) * fa(j1 + j2 - j3)
            / fa(j1 + j2 + j3 + 1)
            * (2 * j3 + 1)
            * fa(j1 + m1) * fa(j1 - m1) * fa(j2 + m2) * fa(j2 - m2)
            * fa(j3 + m3) * fa(j3 - m3)
        )
        tot = 0.0
        p = 0
        while True:
            args = (
                j1 + j2 - j3 - p,
                j2 - m2 - p,
                j1 + m1 - p,
                j3 - j1 + m2 + p,
                j3 - j2 - m1 + p,
            )
            if min(args[:3]) < 0:
                break
            if min(args) >= 0:
                den = fa(p)
                for a in args:
                    den *= fa(a)
                tot += (-1) ** p / den
            p += 1
        return (-1) ** int(j1 + j2 - j3) * pre * tot

    q0 = 1.0 + 1e-8
    for (j1, j2, j3, m1, m2) in [
        (H, H, 1, H, -H),
        (1, H, F(3, 2), 0, H),
        (1, 1, 2, 1, -1),
        (1, 1, 1, 1, 0),
    ]:
        got = three_j(j1, j2, j3, m1, m2, m1 + m2).numeric_eval(q0, 1.0)
        assert abs(got.imag) < 1e-6
        assert abs(got.real - classical(j1, j2, j3, m1, m2)) < 1e-4


# -------------------------------------------------------------- recoupling


@pytest.mark.parametrize(
    "triple",
    [(H, H, H), (H, H, 1), (H, 1, H), (1, 1, 1), (H, 1, F(3, 2))],
)
def test_recoupling_two_routes(triple):
    assert verify_recoupling(*triple).ok


def test_six_j_pinned_value():
    # both intermediate channels of three spin-1/2 lines; the classical
    # values are 1/6 and 1/2
    two = sqrt_qint(2) * sqrt_qint(2)
    three = sqrt_qint(3) * sqrt_qint(3)
    assert six_j(H, H, 1, H, H, 1) == SC_ONE / (two * three)
    assert six_j(H, H, 0, H, H, 1) == SC_ONE / two


def test_six_j_triangle_gate():
    assert six_j(H, H, 2, H, H, 1) == SC_ZERO


def test_overlap_normalisation_matches_brute_force():
    for (j12, j23) in [(0, 0), (0, 1), (1, 0), (1, 1)]:
        raw = SC_ZERO
        jtot = H
        # explicit overlap at the highest weight of the total spin-1/2
        for m1 in _mrange(H):
            for m2 in _mrange(H):
                m3 = jtot - m1 - m2
                if abs(m3) > H:
                    continue
                raw = raw + (
                    cg(H, m1, H, m2, j12, m1 + m2)
                    * cg(j12, m1 + m2, H, m3, jtot, jtot)
                    * cg(H, m2, H, m3, j23, m2 + m3)
                    * cg(H, m1, j23, m2 + m3, jtot, jtot)
                )
        assert six_j_u(H, H, j12, H, jtot, j23) == raw
        assert six_j_brute(H, H, j12, H, jtot, j23) == six_j(
            H, H, j12, H, jtot, j23
        )


# ------------------------------------------------------ continued symbols


def test_continued_expr_reduce_ratio():
    # fact(3)/fact(1) = [K+2][K+3] = <1><2>
    e = ContinuedExpr().with_fact(3, 1).with_fact(1, -1)
    assert e.reduce() == xbracket(1) * xbracket(2)


def test_continued_expr_half_masses():
    e = ContinuedExpr().with_fact(2, F(1, 2)).with_fact(1, -F(1, 2))
    sq = e.reduce()
    assert sq * sq == xbracket(1)


def test_continued_expr_unbalanced_raises():
    with pytest.raises(ValueError):
        ContinuedExpr().with_fact(2, 1).reduce()


def test_continued_expr_shift():
    e = ContinuedExpr().with_fact(2, 1).with_fact(0, -1).shift_x(2)
    assert e.reduce() == xbracket(3) * xbracket(2)


def test_continued_symbol_specialises_to_finite():
    # substituting x = q^(2j+1) into the continued symbol must reproduce
    # the finite one; compared numerically since the exact value carries
    # x-dependent square roots
    q0 = 0.77
    for jx in (1, F(3, 2), 2):
        x0 = q0 ** float(2 * jx + 1)
        contval = six_j_u(
            H, cont_spin(0), cont_spin(H), H, cont_spin(0), cont_spin(H)
        ).numeric_eval(q0, x0)
        finval = six_j_u(H, jx, jx + H, H, jx, jx + H).numeric_eval(q0, 1.0)
        assert abs(contval - finval) < 1e-12 * max(1.0, abs(finval))


def test_single_continued_entry_rejected():
    with pytest.raises(ValueError):
        six_j_cont(H, cont_spin(0), H, H, H, 1)


# ------------------------------------------------------------ dictionaries


@pytest.mark.parametrize("j", [H, 1, F(3, 2)])
def test_m_dictionary(j):
    assert verify_m_dictionary(j).ok


@pytest.mark.parametrize("j", [H, 1, F(3, 2)])
def test_m_limit_formula(j):
    assert verify_m_limit_formula(j).ok


def test_m_element_pinned():
    from dynrmat.twist import boundary_m

    m = boundary_m(H)
    assert m_element(H, H, H) == m.entry(0, 0)
    assert m_element(H, H, -H) == m.entry(0, 1)
    assert m_element(H, -H, H) == m.entry(1, 0)
    assert m_element(H, -H, -H) == m.entry(1, 1)
    assert m_element(H, -H, -H) == SC_ONE


def test_norm_xi_phase_lives_on_eighth_roots():
    # opposite arguments cancel to a rational, equal ones do not
    assert norm_xi(H) * norm_xi(-H) == SC_ONE
    assert norm_xi(H) * norm_xi(H) == phase(-H) * qpow(H)


@pytest.mark.parametrize("pair", [(H, H), (H, 1), (1, H), (1, 1)])
def test_r_dictionary(pair):
    assert verify_r_dictionary(*pair).ok


@pytest.mark.parametrize("pair", [(H, H), (H, 1), (1, H)])
def test_f_dictionary(pair):
    assert verify_f_dictionary(*pair).ok


@pytest.mark.parametrize("pair", [(H, H), (H, 1), (1, 1)])
def test_delta_m_decomposition(pair):
    assert verify_delta_m_decomposition(*pair).ok


def test_relation_registry_dispatch():
    rep = verify_symbol_relation("M_DICTIONARY", (H,))
    assert rep.ok and rep.relation == "M_DICTIONARY"
    with pytest.raises(ValueError):
        verify_symbol_relation("R_DICTIONARY", (H,))


def test_numeric_mode_dictionary():
    rep = verify_r_dictionary(H, H, mode="numeric", q0=0.43, x0=0.67)
    assert rep.ok and rep.mode == "numeric"
