"""Command-line surface: JSON in, phase reports / SVG diagrams out.

Subcommands: phase | oracle | diagram | nearest | scan | lauber.
Exit codes: 0 defined phase or clean scan, 1 input error, 2 degenerate or
boundary verdict (or unreliable oracle), 3 scan disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import classifier, config, degeneracy, frame, oracle
from .errors import InputError, TriphaseError

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNDEFINED = 2
EXIT_DISAGREEMENT = 3

G_LABELS = ("g1", "g2", "g3", "g4")
B_LABELS = ("b1", "b2", "b3", "b4")


def _fmt(x):
    if isinstance(x, float):
        if not np.isfinite(x):
            return None
        return float(f"{x:.12g}")
    return x


def _load_matrix(doc, key):
    if key not in doc:
        raise InputError(f"missing field '{key}'")
    m = doc[key]
    if (not isinstance(m, list) or len(m) != 3
            or any(not isinstance(r, list) or len(r) != 3 for r in m)):
        raise InputError(f"'{key}' must be a 3x3 array of numbers")
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            if not isinstance(x, (int, float)) or isinstance(x, bool):
                raise InputError(f"'{key}[{i}][{j}]' is not a number")
    a = np.array(m, dtype=float)
    defect = np.abs(a - a.T).max()
    if defect > 1e-9:
        i, j = np.unravel_index(int(np.argmax(np.abs(a - a.T))), (3, 3))
        raise InputError(
            f"'{key}' is not symmetric: |{key}[{i}][{j}] - {key}[{j}][{i}]| = {defect:.3e}")
    return a


def load_input(path):
    """Parse and validate an input document from a file or stdin."""
    try:
        if path in (None, "-"):
            doc = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("input document must be a JSON object")
    f = _load_matrix(doc, "f")
    g = _load_matrix(doc, "g")
    parity = doc.get("parity")
    if parity is not None:
        if (not isinstance(parity, list) or len(parity) != 3
                or any(p not in (-1, 1) for p in parity)):
            raise InputError("'parity' must be three values of +/-1")
        parity = tuple(int(p) for p in parity)
    overrides = doc.get("overrides", {})
    if not isinstance(overrides, dict):
        raise InputError("'overrides' must be an object")
    return f, g, parity, overrides


def _frame_dict(frm):
    d = {"psi": _fmt(frm.psi)}
    for label, val in zip(G_LABELS, frm.g):
        d[label] = _fmt(float(val))
    d["applied_flips"] = list(frm.applied_flips)
    return d


def _region_dict(res):
    return {
        "region": res.region,
        "phase": res.phase,
        "C": _fmt(res.C),
        "S": _fmt(res.S),
        "u": _fmt(res.u),
        "distance_to_degenerate_arc": _fmt(res.distance_to_arc),
        "special_case": res.special_case,
    }


def _oracle_dict(cr):
    return {
        "gamma1": cr.gamma[0],
        "gamma2": cr.gamma[1],
        "gamma3": cr.gamma[2],
        "minGap": _fmt(cr.min_gap),
        "minGapTheta": _fmt(cr.min_gap_theta),
        "steps": cr.steps,
        "overlap_defect": _fmt(cr.overlap_defect),
        "reliable": cr.reliable,
    }


def _nearest_dict(point, dist):
    d = {"branch": "+" if point.branch > 0 else "-",
         "n": [_fmt(float(x)) for x in point.n]}
    for label, val in zip(B_LABELS, point.b):
        d[label] = _fmt(float(val))
    d["distance"] = _fmt(dist)
    return d


def _emit(report, as_json, out=sys.stdout):
    if as_json:
        print(json.dumps(report, indent=2), file=out)
    else:
        _emit_text(report, out)


def _emit_text(node, out, indent=0):
    pad = "  " * indent
    for key, val in node.items():
        if isinstance(val, dict):
            print(f"{pad}{key}:", file=out)
            _emit_text(val, out, indent + 1)
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            print(f"{pad}{key}:", file=out)
            for item in val:
                _emit_text(item, out, indent + 1)
                print(file=out)
        else:
            print(f"{pad}{key:<28} {val}", file=out)


def _phase_report(f, g, overrides, want_oracle, want_nearest):
    F, G = frame.orthonormalize(f, g)
    frm = frame.build_frame(F, G, psi_tol=overrides.get("psi_tol", config.PSI_TOL))
    res = classifier.classify(frm,
                              tol=overrides.get("tol", config.REGION_TOL),
                              ztol=overrides.get("ztol", config.ZTOL))
    report = {"frame": _frame_dict(frm), "classifier": _region_dict(res)}
    cr = None
    if want_oracle or res.region == "Boundary":
        cr = oracle.continuation(frm.f_mat, frm.g_mat,
                                 steps=overrides.get("steps", config.STEPS))
        report["oracle"] = _oracle_dict(cr)
    report["agreement"] = (cr is not None and cr.reliable
                           and res.phase_defined and res.phase == cr.gamma[0])
    if want_nearest:
        point, dist = degeneracy.nearest_degenerate(frm)
        report["nearest_degeneracy"] = _nearest_dict(point, dist)
    exit_code = EXIT_OK if res.phase_defined else EXIT_UNDEFINED
    return report, exit_code


def cmd_phase(args):
    f, g, _, overrides = load_input(args.input)
    report, code = _phase_report(f, g, overrides, args.oracle, args.nearest)
    _emit(report, args.json)
    return code


def cmd_oracle(args):
    f, g, _, overrides = load_input(args.input)
    F, G = frame.orthonormalize(f, g)
    cr = oracle.continuation(F, G, steps=args.steps or overrides.get("steps", config.STEPS))
    _emit({"oracle": _oracle_dict(cr)}, args.json)
    return EXIT_OK if cr.reliable else EXIT_UNDEFINED


def cmd_nearest(args):
    f, g, _, overrides = load_input(args.input)
    F, G = frame.orthonormalize(f, g)
    frm = frame.build_frame(F, G)
    point, dist = degeneracy.nearest_degenerate(frm)
    _emit({"frame": _frame_dict(frm),
           "nearest_degeneracy": _nearest_dict(point, dist)}, args.json)
    return EXIT_OK


# --- diagram -----------------------------------------------------------------

def _svg_path(points, closed=False):
    cmds = [f"{'M' if i == 0 else 'L'} {x:.5f} {y:.5f}" for i, (x, y) in enumerate(points)]
    if closed:
        cmds.append("Z")
    return " ".join(cmds)


def _region_label_anchors(frm, res):
    """Barycenters of classified sample points, one per nonempty region."""
    verts = classifier.triangle_vertices(frm.psi)
    rng = np.random.default_rng(7)
    w = rng.dirichlet(np.ones(3), size=600)
    pts = w @ verts
    g4 = frm.g4
    anchors = {}
    for name in ("R1", "R2", "R3"):
        if abs(g4) < config.ZTOL:
            mask = {"R1": pts[:, 1] > 0.05, "R2": np.zeros(len(pts), bool),
                    "R3": pts[:, 1] < -0.05}[name]
        else:
            u = pts[:, 0] ** 2 + pts[:, 1] ** 2 / g4**2
            mask = {"R1": (u > 1.1) & (pts[:, 1] > 0),
                    "R2": u < 0.9,
                    "R3": (u > 1.1) & (pts[:, 1] < 0)}[name]
        if mask.any():
            anchors[name] = pts[mask].mean(axis=0)
    return anchors


def render_diagram(frm, res):
    """SVG of the triangle/ellipse diagram with the query point marked."""
    verts = classifier.triangle_vertices(frm.psi)
    arcs = classifier.ellipse_arcs(frm.psi, frm.g4)
    phase_text = {"R1": "-1", "R2": "+1" if frm.g4 < 0 else "-1", "R3": "+1"}
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="-1.2 -1.2 2.4 2.4" '
        'width="480" height="480">',
        '<g transform="scale(1,-1)">',
        # reference unit circle
        '<circle cx="0" cy="0" r="1" fill="none" stroke="black" '
        'stroke-width="0.006" stroke-dasharray="0.04 0.03"/>',
        # triangle
        f'<path d="{_svg_path(verts, closed=True)}" fill="none" stroke="black" '
        'stroke-width="0.012"/>',
    ]
    b = abs(frm.g4)
    if arcs.kind == "segment":
        parts.append('<line x1="-1" y1="0" x2="1" y2="0" stroke="black" '
                     'stroke-width="0.008"/>')
    else:
        parts.append(f'<ellipse cx="0" cy="0" rx="1" ry="{b:.5f}" fill="none" '
                     'stroke="black" stroke-width="0.008"/>')
    if len(arcs.active):
        parts.append(f'<path d="{_svg_path(arcs.active)}" fill="none" stroke="black" '
                     'stroke-width="0.028"/>')
    if np.isfinite(res.C) and np.isfinite(res.S):
        parts.append(f'<circle cx="{res.C:.5f}" cy="{res.S:.5f}" r="0.025" fill="black"/>')
    parts.append("</g>")
    for name, (x, y) in _region_label_anchors(frm, res).items():
        parts.append(
            f'<text x="{x:.4f}" y="{-y:.4f}" font-size="0.09" font-family="sans-serif" '
            f'text-anchor="middle">{name}: {phase_text[name]}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_diagram(args):
    f, g, _, overrides = load_input(args.input)
    F, G = frame.orthonormalize(f, g)
    frm = frame.build_frame(F, G)
    res = classifier.classify(frm)
    svg = render_diagram(frm, res)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {args.out}")
    return EXIT_OK


# --- scan --------------------------------------------------------------------

SCAN_STEPS = 512        # starting resolution; the oracle doubles on defect
SCAN_ODEF_TOL = 1e-3    # loose per-step bound, ample against band swaps
SCAN_MARGIN = 0.02      # exclusion radius around the two-zero loci
GAP_BINS = np.arange(0.0, 1.05, 0.1)


def _sample_frame(rng):
    psi = rng.uniform(0.05, np.pi / 3.0 - 0.05)
    while True:
        g = rng.normal(size=4)
        g /= np.linalg.norm(g)
        pair_norms = [np.hypot(g[i], g[j]) for i, j in ((0, 1), (1, 2), (0, 2))]
        if min(pair_norms) >= SCAN_MARGIN:
            return frame.frame_from_coords(psi, g)


def run_scan(samples, seed, gap_floor):
    """Classifier-versus-oracle agreement sweep over random frames."""
    rng = np.random.default_rng(seed)
    agreements = disagreements = 0
    skipped_classifier = skipped_oracle = 0
    gamma_identity_violations = 0
    failures = []
    gap_hist = np.zeros(len(GAP_BINS), dtype=int)
    for _ in range(samples):
        frm = _sample_frame(rng)
        res = classifier.classify(frm, arc_distance=False)
        if not res.phase_defined:
            skipped_classifier += 1
            continue
        cr = oracle.continuation(frm.f_mat, frm.g_mat, steps=SCAN_STEPS,
                                 gap_floor=gap_floor, odef_tol=SCAN_ODEF_TOL)
        k = min(int(cr.min_gap / 0.1), len(GAP_BINS) - 1) if cr.min_gap >= 0 else 0
        gap_hist[k] += 1
        if not cr.reliable:
            skipped_oracle += 1
            continue
        if cr.gamma[1] != 1 or cr.gamma[0] != cr.gamma[2]:
            gamma_identity_violations += 1
        if res.phase == cr.gamma[0]:
            agreements += 1
        else:
            disagreements += 1
            failures.append({"psi": _fmt(frm.psi),
                             **{l: _fmt(float(v)) for l, v in zip(G_LABELS, frm.g)},
                             "classifier_phase": res.phase, "gamma1": cr.gamma[0]})
    report = {
        "samples": samples,
        "seed": seed,
        "gap_floor": _fmt(gap_floor),
        "agreements": agreements,
        "disagreements": disagreements,
        "gamma_identity_violations": gamma_identity_violations,
        "skipped_classifier": skipped_classifier,
        "skipped_oracle": skipped_oracle,
        "min_gap_histogram": {
            f"[{lo:.1f},{lo + 0.1:.1f})": int(n) for lo, n in zip(GAP_BINS, gap_hist)},
    }
    if failures:
        report["failures"] = failures
    return report


def cmd_scan(args):
    report = run_scan(args.samples, args.seed, args.gap_floor)
    _emit(report, args.json)
    return EXIT_DISAGREEMENT if report["disagreements"] else EXIT_OK


# --- lauber ------------------------------------------------------------------

# published application values: spectral angle arccos(23/26) and loop
# direction (g1, g2, g3, g4) = (0.995, 0.101, 0, 0) at 3-decimal precision
LAUBER_PSI_COS = 23.0 / 26.0
LAUBER_G = (0.995, 0.101, 0.0, 0.0)


def cmd_lauber(args):
    psi = float(np.arccos(LAUBER_PSI_COS))
    frm = frame.frame_from_coords(psi, np.array(LAUBER_G))
    res = classifier.classify(frm)
    point, dist = degeneracy.nearest_degenerate(frm)
    report = {
        "frame": _frame_dict(frm),
        "classifier": _region_dict(res),
        "nearest_degeneracy": _nearest_dict(point, dist),
        "note": ("published loop direction, truncated to 3 decimals; not itself "
                 f"degenerate but within {dist:.3f} of the degenerate set, so "
                 "second-order effects dominate in practice"),
    }
    _emit(report, args.json)
    return EXIT_OK if res.phase_defined else EXIT_UNDEFINED


# --- argument parsing --------------------------------------------------------

def _add_io(p, steps=False):
    p.add_argument("--input", "-i", default=None, metavar="PATH",
                   help="input JSON document (default: stdin)")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="machine-readable output")
    fmt.add_argument("--text", dest="json", action="store_false",
                     help="human-readable output (default)")
    if steps:
        p.add_argument("--steps", type=int, default=None,
                       help=f"theta-grid resolution (default {config.STEPS})")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="triphase",
        description="Topological phases of three-state symmetric Hamiltonian loops.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phase", help="classify a perturbation pair end to end")
    _add_io(p)
    p.add_argument("--oracle", action="store_true",
                   help="also run the continuation oracle and cross-check")
    p.add_argument("--nearest", action="store_true",
                   help="also search for the nearest degenerate direction")
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser("oracle", help="eigenvector-continuation phases only")
    _add_io(p, steps=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("diagram", help="emit the triangle/ellipse diagram as SVG")
    _add_io(p)
    p.add_argument("--out", default="diagram.svg", metavar="PATH")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("nearest", help="nearest degenerate loop direction")
    _add_io(p)
    p.set_defaults(func=cmd_nearest)

    p = sub.add_parser("scan", help="random classifier-vs-oracle agreement sweep")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gap-floor", type=float, default=0.05)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--text", dest="json", action="store_false")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("lauber", help="built-in microwave-cavity application example")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--text", dest="json", action="store_false")
    p.set_defaults(func=cmd_lauber)

    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TriphaseError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED


if __name__ == "__main__":
    sys.exit(main())
