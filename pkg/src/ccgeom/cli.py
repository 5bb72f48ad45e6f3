"""Command-line front end: experiments as subcommands with JSON configs.

Subcommands: section, sccp, cutvol, asym.  Every run emits a JSON report
(config echo, rows, summary, wall time, version) and a CSV payload whose
bytes are a deterministic function of the config.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .asymptotics import blowdown_check, shell_distance, trend_verdict
from .bodies import BodySpec
from .centroids import classify_lines, sccp_residual
from .cutvol import (
    cut_gradient,
    cut_volume,
    floating_constancy,
    homothety_cut_scan,
    parallel_cut_scan,
)
from .errors import GeometryError
from .sections import csv_header, section_stats

EXIT_OK = 0
EXIT_BAD_CONFIG = 2
EXIT_ALL_FAILED = 3


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _csv_bytes(header, rows) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue().encode()


class ConfigError(Exception):
    pass


def _require(cfg, key):
    if key not in cfg:
        raise ConfigError(f"config is missing required key {key!r}")
    return cfg[key]


def _body(cfg) -> BodySpec:
    try:
        return BodySpec.from_json(_require(cfg, "body"))
    except (KeyError, ValueError, TypeError) as e:
        raise ConfigError(f"invalid body spec: {e}") from e


def _sample_directions(body, n, seed, admissible="bounded"):
    """Deterministic admissible direction sampling (documented generator:
    numpy default_rng seeded from the config)."""
    from .sections import section_bounded

    rng = np.random.default_rng(seed)
    out = []
    tries = 0
    while len(out) < n and tries < 1000 * n:
        tries += 1
        u = rng.normal(size=body.ambient_dim)
        nu = np.linalg.norm(u)
        if nu < 1e-12:
            continue
        u /= nu
        if admissible == "bounded" and not section_bounded(body, u):
            continue
        if admissible == "attained" and not body.support_attained(u):
            continue
        out.append(u)
    if len(out) < n:
        raise ConfigError("could not sample enough admissible directions")
    return out


# ----------------------------------------------------------------- presets

PRESETS = {
    "section": {
        "disk-grid": {
            "body": {"kind": "ellipsoid", "params": [1.0, 1.0],
                     "translation": [0.0, 0.0], "dim": 2},
            "directions": [[1.0, 0.0], [0.0, 1.0],
                           [0.7071067811865476, 0.7071067811865476]],
            "levels": [-0.5, 0.0, 0.5],
        },
    },
    "sccp": {
        "ellipsoid": {
            "body": {"kind": "ellipsoid", "params": [1.3, 0.8, 1.0],
                     "translation": [0.2, -0.1, 0.4], "dim": 3},
            "n_directions": 12,
        },
        "paraboloid": {
            "body": {"kind": "elliptic-paraboloid-epigraph", "params": [1.0, 0.7],
                     "translation": [0.0, 0.0, 0.0], "dim": 3},
            "n_directions": 12,
        },
        "hyperboloid": {
            "body": {"kind": "hyperboloid-upper-sheet", "params": [1.0, 1.4],
                     "translation": [0.0, 0.0, 0.0], "dim": 3},
            "n_directions": 12,
        },
        "controls": {
            "body": {"kind": "superellipsoid", "params": [4.0],
                     "translation": [0.0, 0.0], "dim": 2},
            "directions": [
                [0.4472135954999579, 0.8944271909999159],
                [-0.4472135954999579, 0.8944271909999159],
                [0.8944271909999159, 0.4472135954999579],
            ],
        },
    },
    "cutvol": {
        "parabola-parallel": {
            "body": {"kind": "function-epigraph", "params": [], "tag": "square",
                     "translation": [0.0, 0.0], "dim": 2},
            "op": "parallel", "k": 1.0,
            "anchors": [[-2.0], [-1.0], [0.0], [1.0], [2.0]],
        },
        "paraboloid-parallel": {
            "body": {"kind": "elliptic-paraboloid-epigraph", "params": [1.0, 1.0],
                     "translation": [0.0, 0.0, 0.0], "dim": 3},
            "op": "parallel", "k": 1.0,
            "anchors": [[-1.0, 0.0], [0.0, 0.0], [1.0, 0.0],
                        [0.0, 1.0], [0.5, -0.5]],
        },
        "hyperbola-homothety": {
            "body": {"kind": "hyperboloid-upper-sheet", "params": [1.0],
                     "translation": [0.0, 0.0], "dim": 2},
            "op": "homothety", "k": 2.0,
            "anchors": [[-1.0], [-0.5], [0.0], [0.5], [1.0]],
        },
        "quartic-control": {
            "body": {"kind": "function-epigraph", "params": [], "tag": "quartic",
                     "translation": [0.0, 0.0], "dim": 2},
            "op": "parallel", "k": 1.0, "anchors": [[0.0], [1.0]],
        },
        "cosh-control": {
            "body": {"kind": "function-epigraph", "params": [], "tag": "cosh",
                     "translation": [0.0, 0.0], "dim": 2},
            "op": "homothety", "k": 2.0, "anchors": [[0.0], [1.0]],
        },
        "sphere-gradient": {
            "body": {"kind": "ellipsoid", "params": [1.0, 1.0, 1.0],
                     "translation": [0.0, 0.0, 3.0], "dim": 3},
            "op": "gradient", "n_cuts": 5,
        },
    },
    "asym": {
        "fig1": {
            "body": {"kind": "function-epigraph", "params": [], "tag": "exp",
                     "translation": [0.0, 0.0], "dim": 2},
            "radii": [100.0, 1000.0, 10000.0, 100000.0],
        },
        "hyperboloid": {
            "body": {"kind": "hyperboloid-upper-sheet", "params": [1.0],
                     "translation": [0.0, 0.0], "dim": 2},
            "radii": [10.0, 100.0, 1000.0, 10000.0],
        },
        "parabola-ray": {
            "body": {"kind": "function-epigraph", "params": [], "tag": "square",
                     "translation": [0.0, 0.0], "dim": 2},
            "radii": [100.0, 1000.0, 10000.0, 100000.0],
        },
    },
}


# ----------------------------------------------------------------- commands


def cmd_section(cfg):
    body = _body(cfg)
    dirs = [np.asarray(u, dtype=float) for u in _require(cfg, "directions")]
    levels = [float(t) for t in _require(cfg, "levels")]
    rtol = float(cfg.get("tol", 1e-8))
    header = csv_header(body.ambient_dim) + ["error"]
    rows, n_failed = [], 0
    for u in dirs:
        u = u / np.linalg.norm(u)
        for t in levels:
            try:
                s = section_stats(body, u, t, rtol=rtol)
                rows.append(s.csv_row() + [""])
            except GeometryError as e:
                n_failed += 1
                rows.append(list(u) + [t] + [""] * (body.ambient_dim + 3)
                            + [type(e).__name__])
    summary = {"n_rows": len(rows), "n_failed": n_failed}
    return header, rows, summary, n_failed == len(rows)


def cmd_sccp(cfg):
    body = _body(cfg)
    rtol = float(cfg.get("tol", 1e-8))
    seed = int(cfg.get("seed", 0))
    if "directions" in cfg:
        dirs = [np.asarray(u, dtype=float) for u in cfg["directions"]]
        dirs = [u / np.linalg.norm(u) for u in dirs]
    else:
        dirs = _sample_directions(body, int(_require(cfg, "n_directions")), seed)
    n_levels = cfg.get("n_levels")
    axes = ["x", "y", "z"][: body.ambient_dim]
    header = ([f"u{a}" for a in axes] + ["residual_norm", "residual_rms"]
              + [f"base_{a}" for a in axes] + [f"dir_{a}" for a in axes] + ["error"])
    rows, fits, n_failed = [], [], 0
    for u in dirs:
        try:
            fit = sccp_residual(body, u, n_levels=n_levels, rtol=rtol)
            fits.append(fit)
            rows.append(list(u) + [fit.residual_norm, fit.residual_rms]
                        + list(fit.base) + list(fit.dir) + [""])
        except GeometryError as e:
            n_failed += 1
            rows.append(list(u) + [""] * (2 + 2 * body.ambient_dim)
                        + [type(e).__name__])
    summary = {"n_rows": len(rows), "n_failed": n_failed}
    if len(fits) >= 3:
        verdict = classify_lines(fits, tol=float(cfg.get("classify_tol", 1e-5)))
        summary["verdict"] = verdict.to_json()
        summary["max_residual_norm"] = max(f.residual_norm for f in fits)
    return header, rows, summary, n_failed == len(rows)


def cmd_cutvol(cfg):
    body = _body(cfg)
    rtol = float(cfg.get("tol", 1e-8))
    op = cfg.get("op", "volume")
    rows, n_failed = [], 0
    summary = {}
    if op in ("parallel", "homothety"):
        k = float(_require(cfg, "k"))
        anchors = _require(cfg, "anchors")
        scan = parallel_cut_scan if op == "parallel" else homothety_cut_scan
        values = scan(body, k, anchors, rtol=rtol)
        header = ["anchor", "value", "err"]
        for anchor, v in zip(anchors, values):
            rows.append([json.dumps(anchor), v, rtol * v])
        arr = np.array(values)
        summary = {
            "min": float(arr.min()), "max": float(arr.max()),
            "mean": float(arr.mean()),
            "rel_spread": float((arr.max() - arr.min()) / arr.mean()),
        }
    elif op == "floating":
        res = floating_constancy(
            body, _require(cfg, "mode"), float(_require(cfg, "lam")),
            n_normals=int(cfg.get("n_normals", 12)),
            seed=int(cfg.get("seed", 0)), rtol=rtol,
        )
        header = ["index", "value", "err"]
        rows = [[i, v, rtol * v] for i, v in enumerate(res["values"])]
        summary = {k: res[k] for k in ("min", "max", "mean", "rel_spread")}
    elif op == "gradient":
        shift = np.zeros(body.ambient_dim)
        if bool(body.contains(np.zeros(body.ambient_dim))):
            if "cuts" in cfg:
                raise ConfigError(
                    "body contains the origin; explicit cuts are ambiguous "
                    "after auto-translation, move the body yourself")
            # move the body up until the origin is strictly outside
            shift[-1] = 3.0 * (body.scale
                               + float(np.linalg.norm(body.translation)) + 1.0)
            body = BodySpec(body.kind, body.params, body.translation + shift,
                            body.ambient_dim, body.tag)
        if "cuts" in cfg:
            cuts = [np.asarray(a, dtype=float) for a in cfg["cuts"]]
        else:
            cuts = _random_cuts(body, int(cfg.get("n_cuts", 5)),
                                int(cfg.get("seed", 0)))
        header = ["a", "V", "identity_residual", "moment_residual",
                  "section_diameter", "err", "error"]
        residuals = []
        for a in cuts:
            try:
                r = cut_gradient(body, a, rtol=rtol)
                rows.append([json.dumps(list(a)), r.V, r.identity_residual,
                             r.moment_residual, r.section_diameter,
                             r.err_estimate, ""])
                residuals.append(r.identity_residual / r.section_diameter)
            except GeometryError as e:
                n_failed += 1
                rows.append([json.dumps(list(a)), "", "", "", "", "",
                             type(e).__name__])
        summary = {"n_failed": n_failed}
        if float(np.linalg.norm(shift)) > 0.0:
            summary["origin_shift"] = shift.tolist()
        if residuals:
            summary["max_scaled_identity_residual"] = max(residuals)
    elif op == "volume":
        cuts = [np.asarray(a, dtype=float) for a in _require(cfg, "cuts")]
        header = ["a", "V", "err"]
        vals = []
        for a in cuts:
            v = cut_volume(body, a, rtol=rtol)
            rows.append([json.dumps(list(a)), v, rtol * v])
            vals.append(v)
        finite = [v for v in vals if np.isfinite(v)]
        summary = {"n_rows": len(rows),
                   "n_infinite": sum(1 for v in vals if not np.isfinite(v))}
        if finite:
            summary.update(min=min(finite), max=max(finite),
                           mean=float(np.mean(finite)))
    else:
        raise ConfigError(f"unknown cutvol op {op!r}")
    return header, rows, summary, bool(rows) and n_failed == len(rows)


def _random_cuts(body, n, seed):
    """Admissible cut parameters a with 0 < V(a) < inf, deterministically."""
    from .sections import admissible_levels, section_bounded

    rng = np.random.default_rng(seed)
    cone = body.recession_cone()
    cuts = []
    tries = 0
    while len(cuts) < n and tries < 1000 * n:
        tries += 1
        u = rng.normal(size=body.ambient_dim)
        u /= np.linalg.norm(u)
        if not section_bounded(body, u):
            continue
        if cone.dim > 0 and not cone.positive_on(u):
            if not cone.positive_on(-u):
                continue
            u = -u
        if abs(u[-1]) < 0.3:  # keep finite-difference steps well-conditioned
            continue
        lo, hi = admissible_levels(body, u)
        if not np.isfinite(hi):
            hi = max(lo, 0.0) + 4.0 * body.scale
        span = hi - lo
        s = lo + (0.2 + 0.6 * rng.random()) * span
        if s <= 1e-3 * body.scale and cone.dim > 0:
            continue
        if abs(s) < 1e-3 * body.scale:
            continue
        # near-asymptotic normals give huge, ill-conditioned sections where
        # a finite-difference step changes the cut volume disproportionately
        from .sections import section_diameter

        if section_diameter(body, u, s) > 20.0 * body.scale:
            continue
        cuts.append(u / s)
    if len(cuts) < n:
        raise ConfigError("could not sample enough admissible cuts")
    return cuts


def cmd_asym(cfg):
    body = _body(cfg)
    radii = [float(r) for r in _require(cfg, "radii")]
    n_az = int(cfg.get("n_azimuth", 720))
    cone = body.recession_cone()
    header = ["R", "d_asym", "d_blowdown", "err", "error"]
    rows, dvals, n_failed = [], [], 0
    for R in radii:
        try:
            sd = shell_distance(body, cone, R, n_azimuth=n_az)
            rows.append(sd.csv_row() + [""])
            dvals.append(sd.d_asym)
        except GeometryError as e:
            n_failed += 1
            rows.append([R, "", "", "", type(e).__name__])
    summary = {"n_rows": len(rows), "n_failed": n_failed}
    if len(dvals) >= 4:
        summary["verdict"] = trend_verdict(dvals)
    if dvals:
        try:
            summary["d_blowdown_final"] = blowdown_check(
                body, radii[-1], n_azimuth=n_az)
        except GeometryError:
            pass
    return header, rows, summary, n_failed == len(rows)


COMMANDS = {
    "section": cmd_section,
    "sccp": cmd_sccp,
    "cutvol": cmd_cutvol,
    "asym": cmd_asym,
}


# ----------------------------------------------------------------- driver


def build_parser():
    ap = argparse.ArgumentParser(
        prog="ccgeom",
        description="section centroids, cut volumes, and cone asymptotics "
                    "for convex bodies",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", type=Path, help="JSON config file")
        p.add_argument("--preset", choices=sorted(PRESETS[name]),
                       help="named built-in experiment")
        p.add_argument("--out", type=Path, help="output directory")
        p.add_argument("--tol", type=float, help="quadrature tolerance override")
        p.add_argument("--seed", type=int, help="RNG seed override")
        p.add_argument("--format", choices=("csv", "json"), default="json",
                       dest="fmt", help="what to print on stdout")
    return ap


def _load_config(args):
    if args.config is None and args.preset is None:
        raise ConfigError("either --config or --preset is required")
    if args.config is not None:
        try:
            cfg = json.loads(args.config.read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config: {e}") from e
        if not isinstance(cfg, dict):
            raise ConfigError("config must be a JSON object")
    else:
        cfg = json.loads(json.dumps(PRESETS[args.command][args.preset]))
    if args.tol is not None:
        cfg["tol"] = args.tol
    if args.seed is not None:
        cfg["seed"] = args.seed
    return cfg


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = _load_config(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    t0 = time.perf_counter()
    try:
        header, rows, summary, all_failed = COMMANDS[args.command](cfg)
    except (ConfigError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    wall = time.perf_counter() - t0
    payload = _csv_bytes(header, rows)
    report = {
        "config": cfg,
        "command": args.command,
        "rows": [dict(zip(header, (_fmt(v) for v in row))) for row in rows],
        "summary": summary,
        "wall_time_s": wall,
        "version": __version__,
    }
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / "rows.csv").write_bytes(payload)
        (args.out / "report.json").write_text(json.dumps(report, indent=2) + "\n")
    if args.fmt == "csv":
        sys.stdout.write(payload.decode())
    else:
        print(json.dumps({"summary": summary, "wall_time_s": wall,
                          "version": __version__}, indent=2))
    return EXIT_ALL_FAILED if all_failed else EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
