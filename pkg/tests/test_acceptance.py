"""Acceptance gate: eight end-to-end criteria, one pass/fail line each.

Each test emits "[criterion N] ...: PASS|FAIL" via the terminal-summary hook
in conftest.py (also printed, visible with -s) before asserting.
"""

import json
import time

import numpy as np
import pytest

from conftest import record_acceptance
from triphase import classifier, degeneracy, frame, mirror, oracle
from triphase.cli import LAUBER_G, LAUBER_PSI_COS, run_scan
from triphase.errors import TriphaseError
from triphase.symmat import Q0, Q1, Q2, Q3, Q4

SCAN_SAMPLES = 10_000
SCAN_SEED = 42
SCAN_GAP_FLOOR = 0.05


def _line(num, desc, ok, detail):
    text = f"[criterion {num}] {desc}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(text)
    record_acceptance(text)
    assert ok, text


@pytest.fixture(scope="module")
def scan_report():
    t0 = time.perf_counter()
    report = run_scan(SCAN_SAMPLES, SCAN_SEED, SCAN_GAP_FLOOR)
    report["_runtime"] = time.perf_counter() - t0
    return report


def _geodesic(psi, g):
    f_mat = np.cos(psi) * Q0 + np.sin(psi) * Q4
    e_mat = -np.sin(psi) * Q0 + np.cos(psi) * Q4
    g_mat = g[0] * Q1 + g[1] * Q2 + g[2] * Q3 + g[3] * e_mat
    return f_mat, g_mat


def test_criterion_1_classifier_oracle_equivalence(scan_report):
    r = scan_report
    ok = r["disagreements"] == 0 and r["_runtime"] < 60.0
    _line(1, "classifier-oracle equivalence, 10,000-sample scan", ok,
          f"disagreements={r['disagreements']}, agreements={r['agreements']}, "
          f"runtime={r['_runtime']:.1f}s < 60s")


def test_criterion_2_gamma_identities(scan_report):
    v = scan_report["gamma_identity_violations"]
    _line(2, "gamma2=+1 and gamma1=gamma3 on every reliable run", v == 0,
          f"violations={v} of {scan_report['agreements']} reliable samples")


def test_criterion_3_ellipse_identity():
    rng = np.random.default_rng(3)
    worst_id = 0.0
    worst_gap = 0.0
    count = 0
    while count < 1000:
        psi = rng.uniform(0.05, np.pi / 3 - 0.05)
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        branch = 1 if rng.random() < 0.5 else -1
        try:
            point = degeneracy.b_point(branch, n, psi)
            v = classifier.v_coords(point.b[0], point.b[1], point.b[2])
        except TriphaseError:
            continue
        tp = classifier.cs_coords(v, psi)
        worst_id = max(worst_id, abs(tp.C**2 + tp.S**2 / point.b4**2 - 1.0))
        cr = oracle.continuation(*_geodesic(psi, point.b),
                                 steps=1024, max_refine=0)
        worst_gap = max(worst_gap, cr.min_gap)
        count += 1
    ok = worst_id < 1e-10 and worst_gap < 1e-6
    _line(3, "degenerate directions land on the ellipse with vanishing gap", ok,
          f"max |C^2+S^2/b4^2-1|={worst_id:.2e} < 1e-10, "
          f"max minGap={worst_gap:.2e} < 1e-6 over 1000 points")


def test_criterion_4_worked_r2_pair():
    psi = np.pi / 6
    e_mat = -np.sin(psi) * Q0 + np.cos(psi) * Q4
    f = np.cos(psi) * Q0 + np.sin(psi) * Q4     # = diag(1,0,-1)/sqrt(2)
    assert np.allclose(f, np.diag([1.0, 0.0, -1.0]) / np.sqrt(2))
    results = {}
    for sign in (+1, -1):
        g = (sign * e_mat + Q1 + Q2 + Q3) / 2.0
        frm = frame.build_frame(f, g)
        res = classifier.classify(frm)
        cr = oracle.continuation(f, g, steps=10_000)
        results[sign] = (res.region, res.phase, cr.gamma, cr.reliable)
    ok = (results[+1] == ("R2", -1, (-1, 1, -1), True)
          and results[-1] == ("R2", 1, (1, 1, 1), True))
    _line(4, "worked R2 pair phases -1/+1 from classifier and oracle", ok,
          f"plus sign -> {results[+1]}, minus sign -> {results[-1]}")


def test_criterion_5_common_eigenvector_threshold():
    psi = np.pi / 6
    gaps = {}
    phases = {}
    for g4 in (-0.4, -0.45, -0.55, -0.6):
        g = np.array([0.0, np.sqrt(1.0 - g4**2), 0.0, g4])
        cr = oracle.continuation(*_geodesic(psi, g), steps=4096)
        gaps[g4] = cr.min_gap
        res = classifier.classify(frame.frame_from_coords(psi, g))
        phases[g4] = res.phase
    ok = (all(gaps[g4] > 0.01 for g4 in (-0.4, -0.45))
          and all(gaps[g4] < 1e-4 for g4 in (-0.55, -0.6))
          and phases[-0.4] == phases[-0.45] == -1)
    _line(5, "common-eigenvector gap collapse brackets g4_c = -1/2", ok,
          "minGap " + ", ".join(f"{g4}: {gaps[g4]:.2e}" for g4 in sorted(gaps))
          + f"; phase above threshold {phases[-0.4]}/{phases[-0.45]}")


def test_criterion_6_lauber_reproduction():
    psi = float(np.arccos(LAUBER_PSI_COS))
    frm = frame.frame_from_coords(psi, np.array(LAUBER_G))
    point, dist = degeneracy.nearest_degenerate(frm)
    lead = float(point.b[0])
    ok = abs(lead - 0.997) < 0.01 and 0.03 <= dist <= 0.09
    _line(6, "microwave-cavity loop: nearest degenerate direction", ok,
          f"psi={psi:.6f}=arccos(23/26), leading b component={lead:.4f} "
          f"(|.-0.997|<0.01), distance={dist:.4f} in [0.03, 0.09]")


def test_criterion_7_mirror_symmetry():
    p = (1, 1, -1)
    rng = np.random.default_rng(7)
    worst_res = 0.0
    checked = 0
    ok = True
    while checked < 100:
        f = mirror.parity_split(_random_sym(rng), p)[0]
        g = mirror.parity_split(_random_sym(rng), p)[1]
        try:
            rep = mirror.mirror_report(f, g, p, steps=2048)
        except TriphaseError:
            continue
        worst_res = max(worst_res, rep.max_residual)
        if not rep.identity_holds or rep.max_residual > 1e-8:
            ok = False
        checked += 1
    reg = mirror.mirror_report(np.diag([1.0, 0.0, -1.0]) / np.sqrt(2),
                               (Q1 + Q2) / np.sqrt(2), p, steps=2048)
    reg_ok = (reg.sigma == (-1, 1, 1) and reg.gamma == (-1, 1, -1)
              and reg.band_parity == (1, 1, -1))
    ok = ok and reg_ok
    _line(7, "mirror symmetry sigma_i = gamma_i * parity_i", ok,
          f"100 random symmetric pairs, maxResidual={worst_res:.2e} < 1e-8; "
          f"regression sigma={reg.sigma}, gamma={reg.gamma}, "
          f"parity={reg.band_parity}")


def _random_sym(rng):
    a = rng.normal(size=(3, 3))
    return a + a.T


def test_criterion_8_stability():
    rng = np.random.default_rng(8)
    changed = 0
    checked = 0
    while checked < 1000:
        psi = rng.uniform(0.05, np.pi / 3 - 0.05)
        g = rng.normal(size=4)
        g /= np.linalg.norm(g)
        f, gm = _geodesic(psi, g)
        base = oracle.continuation(f, gm, steps=512, gap_floor=0.05,
                                   odef_tol=1e-3, max_refine=0)
        if not base.reliable:
            continue
        doubled = oracle.continuation(f, gm, steps=1024, gap_floor=0.05,
                                      odef_tol=1e-3, max_refine=0)
        if doubled.gamma != base.gamma:
            changed += 1
        checked += 1
    a = json.dumps(run_scan(500, 11, SCAN_GAP_FLOOR), sort_keys=True)
    b = json.dumps(run_scan(500, 11, SCAN_GAP_FLOOR), sort_keys=True)
    ok = changed == 0 and a == b
    _line(8, "step-doubling stability and bit-reproducible scan", ok,
          f"gamma changes under doubling: {changed}/1000; "
          f"repeated scan reports identical: {a == b}")
