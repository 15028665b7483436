"""Basis, coordinates, K-form, auxiliary matrix, biunit construction."""

import numpy as np
import pytest

import ternalg as ta
from ternalg import qcyclic
from ternalg.core import MembershipError, Q, QBAR, RegularityError
from ternalg.ternary import ProductKind

S6 = np.sqrt(6.0)
S3 = np.sqrt(3.0)


def test_basis_orthonormal():
    e = ta.basis()
    gram = np.array([[ta.hermitian_inner(e[i], e[j]) for j in range(5)]
                     for i in range(5)])
    assert np.abs(gram - np.eye(5)).max() <= 1e-15


def test_basis_membership():
    for t in ta.basis():
        res = qcyclic.membership_residuals(t)
        assert res["trace"] <= 1e-15
        assert res["cyclic"] <= 1e-15


def test_basis_first_element_entries():
    e1 = ta.basis()[0]
    assert e1[0, 1, 1] == pytest.approx(1 / S6, abs=1e-16)
    assert abs(e1[1, 0, 1] - Q / S6) <= 1e-16
    assert abs(e1[0, 2, 2] + 1 / S6) <= 1e-16


def _display_form(z):
    """The 27-entry table of sum(z^A E_A), written out block by block
    (block = first index, row = second, column = third)."""
    q, qb = Q, QBAR
    block1 = [
        [0, -qb * z[1] / S6, qb * z[2] / S6],
        [-q * z[1] / S6, z[0] / S6, z[3] / S3],
        [q * z[2] / S6, q * z[4] / S3, -z[0] / S6],
    ]
    block2 = [
        [-z[1] / S6, q * z[0] / S6, qb * z[4] / S3],
        [qb * z[0] / S6, 0, -qb * z[2] / S6],
        [qb * z[3] / S3, -q * z[2] / S6, z[1] / S6],
    ]
    block3 = [
        [z[2] / S6, q * z[3] / S3, -q * z[0] / S6],
        [z[4] / S3, -z[2] / S6, q * z[1] / S6],
        [-qb * z[0] / S6, qb * z[1] / S6, 0],
    ]
    return np.array([block1, block2, block3], dtype=complex)


def test_from_coords_matches_display_form():
    z = qcyclic.random_coords(12)
    np.testing.assert_allclose(ta.from_coords(z), _display_form(z), atol=1e-15)


def test_from_coords_basis_vectors():
    e = ta.basis()
    for a in range(5):
        unit = np.zeros(5, dtype=complex)
        unit[a] = 1.0
        assert np.array_equal(ta.from_coords(unit), e[a])


def test_coordinate_round_trip():
    for seed in range(10):
        z = qcyclic.random_coords(seed)
        back = ta.to_coords(ta.from_coords(z))
        assert np.abs(back - z).max() <= 1e-14


def test_to_coords_rejects_nonmember():
    with pytest.raises(MembershipError, match="residual"):
        ta.to_coords(ta.levi_civita())


def test_k_form_values():
    e4_plus_e5 = np.array([0, 0, 0, 1, 1], dtype=complex)
    assert abs(ta.k_form(e4_plus_e5, e4_plus_e5) - 2 * Q) <= 1e-15
    e1 = np.array([1, 0, 0, 0, 0], dtype=complex)
    assert ta.k_form(e1, e1) == 1.0


def test_k_form_symmetric_bilinear():
    u = qcyclic.random_coords(3)
    v = qcyclic.random_coords(4)
    assert abs(ta.k_form(u, v) - ta.k_form(v, u)) <= 1e-15
    lam = 1.5 - 2.5j
    assert abs(ta.k_form(lam * u, v) - lam * ta.k_form(u, v)) <= 1e-12


def test_k_form_equals_quadratic_invariant():
    # oracle: the index sum T_ijk T_ikj evaluated directly
    for seed in range(10):
        z = qcyclic.random_coords(20 + seed)
        t = ta.from_coords(z)
        i2 = complex(np.einsum("ijk,ikj->", t, t))
        assert abs(ta.k_form(z, z) - i2) <= 1e-12


def test_k_matrix_properties():
    k = ta.k_matrix()
    assert np.array_equal(k, k.T)
    assert np.abs(k @ np.conj(k).T - np.eye(5)).max() <= 1e-14
    assert abs(np.linalg.det(k) - ta.EPS6) <= 1e-12
    assert np.abs(np.linalg.matrix_power(k, 6) - np.eye(5)).max() <= 1e-12
    eig = np.sort_complex(np.linalg.eigvals(k))
    expected = np.sort_complex(np.array([1, 1, 1, Q, -Q]))
    assert np.abs(eig - expected).max() <= 1e-10


def test_k_matrix_consistent_with_k_form():
    k = ta.k_matrix()
    u = qcyclic.random_coords(5)
    v = qcyclic.random_coords(6)
    assert abs(u @ k @ v - ta.k_form(u, v)) <= 1e-13


def test_restricted_invariants_on_basis():
    report = ta.restricted_invariants_check(ta.basis()[2])
    assert report.max_residual <= 1e-12


def test_restricted_invariants_random_members():
    for seed in range(10):
        t = qcyclic.random_member(40 + seed)
        report = ta.restricted_invariants_check(t)
        assert report.max_residual <= 1e-12


def test_restricted_invariants_rejects_nonmember():
    with pytest.raises(MembershipError):
        ta.restricted_invariants_check(ta.levi_civita())


def test_h_matrix_direct_is_diamond_core():
    # (t <> u <> v)_ijk = t_ijp H_pk
    t, u, v = (ta.random_hypermatrix(3, 50 + s) for s in range(3))
    h = ta.h_matrix_direct(u, v)
    via_h = np.einsum("ijp,pk->ijk", t, h)
    direct = ta.ternary_product(ProductKind.P3_DIAMOND, t, u, v)
    assert np.abs(via_h - direct).max() <= 1e-13


def test_h_matrix_closed_vs_direct():
    for seed in range(20):
        u = qcyclic.random_coords(60 + seed)
        v = qcyclic.random_coords(90 + seed)
        closed = ta.h_matrix_closed(u, v)
        direct = ta.h_matrix_direct(ta.from_coords(u), ta.from_coords(v))
        assert np.abs(closed - direct).max() <= 1e-12


def test_h_matrix_equal_arguments_is_scalar():
    u = qcyclic.random_coords(7)
    closed = ta.h_matrix_closed(u, u)
    off = closed - np.diag(np.diag(closed))
    assert np.abs(off).max() <= 1e-13
    expected_diag = (Q / 3.0) * ta.k_form(u, u)
    assert np.abs(np.diag(closed) - expected_diag).max() <= 1e-15


def test_h_matrix_off_diagonal_antisymmetric():
    u = qcyclic.random_coords(8)
    v = qcyclic.random_coords(9)
    h = ta.h_matrix_closed(u, v)
    for p in range(3):
        for k in range(p + 1, 3):
            assert abs(h[p, k] + h[k, p]) <= 1e-13


def test_make_biunit_on_first_basis_element():
    e1 = ta.basis()[0]
    u_hat = ta.make_biunit(e1)
    # I2(E1) = 1, so the factor is the principal root of 3 qbar
    factor = S3 * np.exp(-1j * np.pi / 3)
    assert np.abs(u_hat - factor * e1).max() <= 1e-14
    t = ta.random_hypermatrix(3, 70)
    residual = ta.biunit_residual(ProductKind.P3_DIAMOND, u_hat, t, "right")
    assert residual <= 1e-9 * ta.norm(t)


def test_make_biunit_random_members():
    for seed in range(10):
        u = qcyclic.random_member(80 + seed, regular=True)
        u_hat = ta.make_biunit(u)
        t = ta.random_hypermatrix(3, 90 + seed)
        residual = ta.biunit_residual(ProductKind.P3_DIAMOND, u_hat, t, "right")
        assert residual <= 1e-9 * ta.norm(t)


def test_make_biunit_scale_invariant():
    u = qcyclic.random_member(101, regular=True)
    u_hat = ta.make_biunit(u)
    u_hat5 = ta.make_biunit(5.0 * u)
    assert np.abs(u_hat5 - u_hat).max() <= 1e-12
    t = ta.random_hypermatrix(3, 102)
    for cand in (u_hat, u_hat5):
        assert ta.biunit_residual(ProductKind.P3_DIAMOND, cand, t, "right") \
            <= 1e-9 * ta.norm(t)


def test_both_square_root_branches_work():
    # the biunit enters the product twice, so -u_hat acts identically
    u_hat = ta.make_biunit(qcyclic.random_member(120, regular=True))
    t = ta.random_hypermatrix(3, 121)
    for cand in (u_hat, -u_hat):
        assert ta.biunit_residual(ProductKind.P3_DIAMOND, cand, t, "right") \
            <= 1e-9 * ta.norm(t)


def test_make_biunit_rejects_null_members():
    # K(z,z) = 2q z4 z5 vanishes for a lone fourth basis vector
    e4 = ta.basis()[3]
    with pytest.raises(RegularityError, match="not I2-regular"):
        ta.make_biunit(e4)


def test_make_biunit_rejects_nonmember():
    with pytest.raises(MembershipError):
        ta.make_biunit(ta.random_hypermatrix(3, 0))


def test_conjugation_swaps_the_split():
    # conjugates of members land in the opposite shift eigenspace
    u = qcyclic.random_member(110)
    part_q, part_qbar = ta.cyclic_split_weight2(np.conj(u))
    assert np.abs(part_q - np.conj(u)).max() <= 1e-14
    assert ta.norm(part_qbar) <= 1e-14
