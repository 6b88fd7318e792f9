import numpy as np
import pytest

from triphase import oracle, symmat
from triphase.degeneracy import (b_point, d_point, degeneracy_angle,
                                 nearest_degenerate)
from triphase.errors import ParallelToAnchor
from triphase.frame import frame_from_coords
from triphase.symmat import Q0, Q1, Q4, inner, psi_of


def anchor(psi):
    return np.cos(psi) * Q0 + np.sin(psi) * Q4


def test_d_point_examples():
    np.testing.assert_allclose(d_point(1, [1, 0, 0]),
                               np.diag([-2.0, 1.0, 1.0]) / np.sqrt(6))
    np.testing.assert_allclose(d_point(-1, [0, 0, 1]),
                               np.diag([-1.0, -1.0, 2.0]) / np.sqrt(6))
    n = np.array([0.3, -0.5, 0.81])
    np.testing.assert_allclose(d_point(1, n), d_point(1, -n))


def test_d_point_spectra():
    rng = np.random.default_rng(12)
    for _ in range(50):
        n = rng.normal(size=3)
        d_plus = d_point(1, n)
        d_minus = d_point(-1, n)
        assert abs(np.trace(d_plus)) < 1e-14
        assert inner(d_plus, d_plus) == pytest.approx(1, abs=1e-12)
        # psi_of loses half the digits at the endpoints of [0, pi/3],
        # where the double eigenvalue makes arccos ill-conditioned
        assert psi_of(d_plus) == pytest.approx(np.pi / 3, abs=1e-7)
        assert psi_of(d_minus) == pytest.approx(0.0, abs=1e-7)
        s = symmat.eig(d_plus)
        assert s.gap12 < 1e-12 and s.gap23 > 0.1


def test_b_point_hand_example():
    n = np.array([0.0, 1 / np.sqrt(3), np.sqrt(2 / 3)])
    bp = b_point(1, n, np.pi / 6)
    np.testing.assert_allclose(bp.b, [-1, 0, 0, 0], atol=1e-14)
    np.testing.assert_allclose(b_point(-1, n, np.pi / 6).b, [1, 0, 0, 0],
                               atol=1e-14)
    assert bp.c == pytest.approx(-1 / np.sqrt(3))
    assert bp.s == pytest.approx(0, abs=1e-15)


def test_b_point_matches_direct_projection():
    # independent oracle: project the degenerate matrix into the anchor's
    # equator by explicit Gram-Schmidt and compare
    rng = np.random.default_rng(2)
    for _ in range(300):
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        psi = rng.uniform(0.02, np.pi / 3 - 0.02)
        branch = 1 if rng.random() < 0.5 else -1
        F = anchor(psi)
        try:
            bp = b_point(branch, n, psi)
        except ParallelToAnchor:
            continue
        D = d_point(branch, n)
        proj = D - inner(D, F) * F
        proj /= np.linalg.norm(proj)
        assert np.abs(bp.matrix - proj).max() < 1e-10
        assert np.linalg.norm(bp.b) == pytest.approx(1, abs=1e-10)
        assert abs(inner(bp.matrix, F)) < 1e-10
        assert abs(np.trace(bp.matrix)) < 1e-12


def test_b_point_single_offdiagonal_structure():
    # one nonzero pair product leaves exactly one of b1, b2, b3 nonzero
    bp = b_point(1, [0.0, 0.6, 0.8], 0.4)
    assert np.count_nonzero(np.abs(bp.b[:3]) > 1e-14) == 1


def test_b_point_parallel_singularity():
    with pytest.raises(ParallelToAnchor):
        # n along e1 at small psi: D nearly parallel to the anchor
        b_point(-1, [1.0, 0.0, 0.0], 1e-9)


def test_nearest_recovers_exact_member():
    rng = np.random.default_rng(31)
    for _ in range(20):
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        psi = rng.uniform(0.1, np.pi / 3 - 0.1)
        branch = 1 if rng.random() < 0.5 else -1
        bp = b_point(branch, n, psi)
        frm = frame_from_coords(psi, bp.b)
        point, dist = nearest_degenerate(frm)
        assert dist < 1e-8


def test_nearest_local_lipschitz():
    rng = np.random.default_rng(6)
    for _ in range(10):
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        psi = rng.uniform(0.1, np.pi / 3 - 0.1)
        bp = b_point(1, n, psi)
        g = bp.b + 1e-3 * rng.normal(size=4)
        g /= np.linalg.norm(g)
        _, dist = nearest_degenerate(frame_from_coords(psi, g))
        assert dist < 5e-3


def test_degeneracy_angle():
    psi = np.pi / 6
    F = anchor(psi)
    # the geodesic through F and B meets the degenerate set exactly at theta*
    n = np.array([0.0, 1 / np.sqrt(3), np.sqrt(2 / 3)])
    for branch in (1, -1):
        bq = b_point(branch, n, psi)
        th = degeneracy_angle(F, bq)
        h = np.cos(th) * F + np.sin(th) * bq.matrix
        np.testing.assert_allclose(h, d_point(branch, n), atol=1e-12)
    bp = b_point(1, n, psi)
    theta = degeneracy_angle(F, bp)

    # c = 0 case: theta* = pi/2 (mod pi)
    rng = np.random.default_rng(9)
    for _ in range(200):
        m = rng.normal(size=3)
        m /= np.linalg.norm(m)
        bq = b_point(1, m, psi)
        if abs(bq.c) < 1e-3:
            th = degeneracy_angle(F, bq)
            assert min(abs(th - np.pi / 2), abs(th - 3 * np.pi / 2)) < 2e-3

    # oracle minimum-gap location agrees with the predicted angle; the gap
    # also vanishes at theta* + pi since H(theta*+pi) = -D is degenerate too
    cr = oracle.continuation(F, bp.matrix, steps=2048, max_refine=0)
    assert cr.min_gap < 1e-6
    d_angle = abs(cr.min_gap_theta - theta) % np.pi
    assert min(d_angle, np.pi - d_angle) < 2 * np.pi / 2048


def test_constructed_degeneracies_are_physical():
    rng = np.random.default_rng(14)
    for _ in range(50):
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        psi = rng.uniform(0.05, np.pi / 3 - 0.05)
        branch = 1 if rng.random() < 0.5 else -1
        try:
            bp = b_point(branch, n, psi)
        except ParallelToAnchor:
            continue
        cr = oracle.continuation(anchor(psi), bp.matrix, steps=1024, max_refine=0)
        assert cr.min_gap < 1e-6
        assert not cr.reliable
