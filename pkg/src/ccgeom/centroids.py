"""Centroid curves, line fitting, collinearity residuals, and line-family
classification (concurrent / parallel / neither)."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bodies import INF, _check_unit
from .errors import ConeSectionUnbounded, DegeneratePointSet, UnboundedSection
from .sections import DEFAULT_RTOL, admissible_levels, section_bounded, section_stats

GEOMETRIC_RATIO = 1.7
N_LEVELS_BOUNDED = 16
N_LEVELS_UNBOUNDED = 12


@dataclass(frozen=True)
class LineFit:
    """Affine line fitted to a point cloud by principal direction."""

    base: np.ndarray
    dir: np.ndarray
    residual_rms: float
    residual_norm: float
    n_points: int

    def point_at(self, s: float):
        return self.base + s * self.dir

    def distance_to(self, p):
        d = np.asarray(p) - self.base
        return float(np.linalg.norm(d - (d @ self.dir) * self.dir))

    def to_json(self):
        return {
            "base": self.base.tolist(),
            "dir": self.dir.tolist(),
            "residual_rms": self.residual_rms,
            "residual_norm": self.residual_norm,
            "n_points": self.n_points,
        }


@dataclass(frozen=True)
class LineFamilyVerdict:
    """Outcome of the concurrent-vs-parallel dichotomy test."""

    tag: str  # "concurrent" | "parallel" | "neither"
    witness: np.ndarray  # common point if concurrent, direction if parallel
    score: float
    tie: bool = False

    def to_json(self):
        return {
            "tag": self.tag,
            "witness": self.witness.tolist(),
            "score": self.score,
            "tie": self.tie,
        }


def sample_levels(body, u, n_levels=None):
    """Level grid for a centroid curve.

    Bounded intervals get interior Chebyshev nodes; half-infinite intervals
    get a geometric grid t0 + delta * r^k probing the asymptotic regime.
    """
    lo, hi = admissible_levels(body, u)
    if math.isfinite(lo) and math.isfinite(hi):
        n = n_levels or N_LEVELS_BOUNDED
        j = np.arange(n)
        nodes = np.cos(math.pi * (2.0 * j + 1.0) / (2.0 * n))
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        return np.sort(mid + half * nodes)
    n = n_levels or N_LEVELS_UNBOUNDED
    k = np.arange(n)
    if math.isfinite(lo):
        delta = 0.5 * max(1.0, abs(lo))
        return lo + delta * GEOMETRIC_RATIO ** k
    if math.isfinite(hi):
        delta = 0.5 * max(1.0, abs(hi))
        return np.sort(hi - delta * GEOMETRIC_RATIO ** k)
    delta = 0.5
    half = (n + 1) // 2
    grid = delta * GEOMETRIC_RATIO ** np.arange(half)
    return np.sort(np.concatenate([-grid, grid]))[:n]


def centroid_curve(body, u, levels, rtol=DEFAULT_RTOL):
    """Section centroids sampled at the given levels, order preserved."""
    u = np.array(_check_unit(u))
    levels = [float(t) for t in levels]
    if len(levels) < 3:
        raise ValueError("need at least 3 levels")
    return [section_stats(body, u, t, rtol=rtol).centroid for t in levels]


def fit_line(points) -> LineFit:
    """Least-squares affine line through points (principal direction)."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 3:
        raise DegeneratePointSet("need at least 3 points")
    base = pts.mean(axis=0)
    centered = pts - base
    spread = float(np.sqrt(np.mean(np.sum(centered ** 2, axis=-1))))
    if spread < 1e-300:
        raise DegeneratePointSet("points are all coincident")
    _, sv, vt = np.linalg.svd(centered, full_matrices=False)
    direction = vt[0]
    i = int(np.argmax(np.abs(direction)))
    if direction[i] < 0:
        direction = -direction
    proj = centered @ direction
    perp = centered - np.outer(proj, direction)
    residual_rms = float(np.sqrt(np.mean(np.sum(perp ** 2, axis=-1))))
    along_rms = float(np.sqrt(np.mean(proj ** 2)))
    residual_norm = residual_rms / along_rms if along_rms > 0 else 1.0
    return LineFit(base, direction, residual_rms, min(residual_norm, 1.0), len(pts))


def sccp_residual(body, u, n_levels=None, rtol=DEFAULT_RTOL) -> LineFit:
    """Collinearity of the centroid curve in direction u.

    residual_norm is the scale-free violation measure: 0 for bodies whose
    parallel-section centroids are collinear, bounded away from 0 otherwise.
    """
    u = np.array(_check_unit(u))
    if not section_bounded(body, u):
        raise UnboundedSection(f"sections normal to {u} are unbounded")
    if n_levels is not None and n_levels < 8:
        raise ValueError("need at least 8 levels")
    levels = sample_levels(body, u, n_levels)
    return fit_line(centroid_curve(body, u, levels, rtol=rtol))


def classify_lines(lines, tol=1e-5) -> LineFamilyVerdict:
    """Concurrent / parallel / neither for a family of fitted lines.

    Concurrency is decided first via the least-squares common point; a
    near-singular normal matrix signals a (near-)parallel family.
    """
    if len(lines) < 3:
        raise ValueError("need at least 3 lines")
    dim = lines[0].base.shape[0]
    bases = np.array([ln.base for ln in lines])
    dirs = np.array([ln.dir for ln in lines])
    center = bases.mean(axis=0)
    scale = max(1.0, float(np.sqrt(np.mean(np.sum((bases - center) ** 2, axis=-1)))))

    # max pairwise angle (mod line orientation)
    cosines = np.abs(dirs @ dirs.T)
    max_angle = float(np.arccos(np.clip(cosines.min(), -1.0, 1.0)))

    A = len(lines) * np.eye(dim) - dirs.T @ dirs
    rhs = np.zeros(dim)
    for b, d in zip(bases, dirs):
        rhs += b - (b @ d) * d
    eigvals = np.linalg.eigvalsh(A)
    if eigvals[0] < 1e-10 * len(lines):
        # common-point system is singular: family is parallel (or nearly so)
        w = dirs.mean(axis=0)
        w /= np.linalg.norm(w)
        tag = "parallel" if max_angle <= tol else "neither"
        return LineFamilyVerdict(tag, w, max_angle)
    p = np.linalg.solve(A, rhs)
    dmax = max(ln.distance_to(p) for ln in lines)
    concurrent = dmax <= tol * scale
    parallel = max_angle <= tol
    if concurrent:
        return LineFamilyVerdict("concurrent", p, dmax / scale, tie=parallel)
    if parallel:
        w = dirs.mean(axis=0)
        w /= np.linalg.norm(w)
        return LineFamilyVerdict("parallel", w, max_angle)
    return LineFamilyVerdict("neither", p, min(dmax / scale, max_angle))


def cone_direction_check(body, u, rtol=DEFAULT_RTOL) -> float:
    """Angle between the body's centroid line and its recession cone's.

    Cone section centroids scale linearly with the level, so two levels
    determine the cone line.
    """
    u = np.array(_check_unit(u))
    cone = body.recession_cone()
    if cone.dim < 1:
        raise ConeSectionUnbounded("recession cone is trivial")
    if cone.dim < body.ambient_dim:
        raise ConeSectionUnbounded("cone sections have measure zero")
    if cone.meets_hyperplane(u):
        raise ConeSectionUnbounded("cone sections normal to u are unbounded")
    fit = sccp_residual(body, u, rtol=rtol)
    u_cone = u if cone.positive_on(u) else -u
    c1 = section_stats(cone, u_cone, 1.0, rtol=rtol).centroid
    c2 = section_stats(cone, u_cone, 2.0, rtol=rtol).centroid
    w = c2 - c1
    w /= np.linalg.norm(w)
    cosang = abs(float(fit.dir @ w))
    return float(np.arccos(np.clip(cosang, -1.0, 1.0)))
