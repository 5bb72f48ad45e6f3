"""Blow-down and asymptotic-cone diagnostics on spheres of radius R.

The boundary/sphere intersection is sampled by ray casting from an interior
anchor: a coarse angular scan brackets the crossings of ||hit|| = R, and all
brackets are then polished simultaneously by direction bisection.  The
cone/sphere intersection comes from the cone's closed-form generators.  The
symmetric Hausdorff distance between the two sample sets is the reported
shell distance (one-sided values are exposed for verbose output).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .bodies import ConeDescriptor, ray_hits_batch
from .errors import EmptyShellIntersection

_N_AZIMUTH = 720
_N_SCAN_2D = 2048
_N_SCAN_SLICE = 192
_N_POLISH = 48


@dataclass(frozen=True)
class ShellDistance:
    """Distances between the boundary and the cone on the sphere S_R."""

    R: float
    d_asym: float
    d_blowdown: float
    err: float
    d_body_to_cone: float
    d_cone_to_body: float

    def csv_row(self):
        return [self.R, self.d_asym, self.d_blowdown, self.err]


def _radius_gap(body, cone, anchor, center, R, dirs):
    """||boundary hit - center|| - R per direction; +inf along recessive rays."""
    g = np.full(len(dirs), np.inf)
    free = ~np.asarray(cone.contains(dirs))
    if free.any():
        t = ray_hits_batch(body, anchor, dirs[free])
        hits = anchor + t[:, None] * dirs[free]
        g[free] = np.linalg.norm(hits - center, axis=-1) - R
    return g


def _collect_brackets(dirs, g, wrap):
    """Pairs of adjacent directions where the sign of g flips (inf counts +)."""
    sign = np.where(np.isfinite(g), g > 0, True)
    finite_any = np.isfinite(g)
    n = len(dirs)
    neg, pos = [], []
    last = n if wrap else n - 1
    for i in range(last):
        j = (i + 1) % n
        if not (finite_any[i] or finite_any[j]):
            continue
        if sign[i] == sign[j]:
            continue
        if sign[i]:
            neg.append(dirs[j])
            pos.append(dirs[i])
        else:
            neg.append(dirs[i])
            pos.append(dirs[j])
    return np.array(neg), np.array(pos)


def _polish_brackets(body, cone, anchor, center, R, neg, pos):
    """Bisect each (negative, positive) direction bracket down to the shell."""
    for _ in range(_N_POLISH):
        mid = neg + pos
        mid /= np.linalg.norm(mid, axis=-1, keepdims=True)
        g = _radius_gap(body, cone, anchor, center, R, mid)
        take_pos = np.where(np.isfinite(g), g > 0, True)
        pos = np.where(take_pos[:, None], mid, pos)
        neg = np.where(take_pos[:, None], neg, mid)
    t = ray_hits_batch(body, anchor, neg)
    return anchor + t[:, None] * neg


def body_shell_points(body, R, center=None, n_azimuth=_N_AZIMUTH):
    """Sample the boundary points at distance R from center (default origin)."""
    dim = body.ambient_dim
    center = np.zeros(dim) if center is None else np.asarray(center, dtype=float)
    anchor = body.interior_point()
    cone = body.recession_cone()
    if dim == 2:
        theta = 2.0 * math.pi * np.arange(_N_SCAN_2D) / _N_SCAN_2D
        dirs = np.column_stack([np.cos(theta), np.sin(theta)])
        g = _radius_gap(body, cone, anchor, center, R, dirs)
        neg, pos = _collect_brackets(dirs, g, wrap=True)
    else:
        neg_all, pos_all = [], []
        psi = math.pi * ((np.arange(_N_SCAN_SLICE) + 0.5) / _N_SCAN_SLICE - 0.5)
        e3 = np.array([0.0, 0.0, 1.0])
        for kphi in range(n_azimuth):
            phi = 2.0 * math.pi * kphi / n_azimuth
            w = np.array([math.cos(phi), math.sin(phi), 0.0])
            dirs = np.outer(np.cos(psi), w) + np.outer(np.sin(psi), e3)
            g = _radius_gap(body, cone, anchor, center, R, dirs)
            n, p = _collect_brackets(dirs, g, wrap=False)
            if len(n):
                neg_all.append(n)
                pos_all.append(p)
        if not neg_all:
            raise EmptyShellIntersection(
                f"boundary does not meet the sphere of radius {R}"
            )
        neg = np.concatenate(neg_all)
        pos = np.concatenate(pos_all)
    if len(neg) == 0:
        raise EmptyShellIntersection(f"boundary does not meet the sphere of radius {R}")
    return _polish_brackets(body, cone, anchor, center, R, neg, pos)


def cone_shell_points(cone: ConeDescriptor, R, n_azimuth=_N_AZIMUTH):
    """Closed-form samples of (boundary of cone) ∩ S_R."""
    if cone.kind == "zero":
        raise EmptyShellIntersection("trivial cone has no shell points")
    if cone.kind == "ray":
        return R * np.asarray(cone.params, dtype=float)[None, :]
    if cone.kind == "quadrant":
        return np.array([[-R, 0.0], [0.0, R]])
    alpha = np.asarray(cone.params, dtype=float)
    if cone.ambient_dim == 2:
        vs = np.array([[alpha[0], 1.0], [-alpha[0], 1.0]])
    else:
        phi = 2.0 * math.pi * np.arange(n_azimuth) / n_azimuth
        vs = np.column_stack(
            [alpha[0] * np.cos(phi), alpha[1] * np.sin(phi), np.ones(n_azimuth)]
        )
    vs /= np.linalg.norm(vs, axis=-1, keepdims=True)
    return R * vs


def _hausdorff(A, B):
    d = cdist(A, B)
    d_ab = float(d.min(axis=1).max())
    d_ba = float(d.min(axis=0).max())
    return max(d_ab, d_ba), d_ab, d_ba


def shell_distance(body, cone, R, n_azimuth=_N_AZIMUTH) -> ShellDistance:
    """Hausdorff distance between boundary and cone samples on S_R."""
    R = float(R)
    if R < 10.0 * (float(np.linalg.norm(body.translation)) + 1.0):
        raise ValueError("R must be at least 10*(translation magnitude + 1)")
    A = body_shell_points(body, R, n_azimuth=n_azimuth)
    B = cone_shell_points(cone, R, n_azimuth=n_azimuth)
    d, d_ab, d_ba = _hausdorff(A, B)
    if body.ambient_dim == 2:
        err = 1e-9 * R
    else:
        err = R * (2.0 * math.pi / n_azimuth)  # azimuthal sampling resolution
    return ShellDistance(R, d, d / R, err, d_ab, d_ba)


def blowdown_check(body, R, n_azimuth=_N_AZIMUTH) -> float:
    """Hausdorff distance of (1/R)(boundary - x0) to the recession cone at S_1."""
    R = float(R)
    x0 = body.interior_point()
    cone = body.recession_cone()
    A = body_shell_points(body, R, center=x0, n_azimuth=n_azimuth)
    B = cone_shell_points(cone, R, n_azimuth=n_azimuth)
    d, _, _ = _hausdorff(A - x0, B)
    return d / R


def trend_verdict(distances) -> str:
    """Asymptotic / not_asymptotic / inconclusive from a d(R) sequence."""
    d = [float(x) for x in distances]
    if len(d) < 3:
        raise ValueError("need at least 3 radii")
    decreasing = all(b < a for a, b in zip(d, d[1:]))
    if decreasing and d[-1] < 0.1 * d[0]:
        return "asymptotic"
    if all(b >= a for a, b in zip(d[-3:], d[-2:])):
        return "not_asymptotic"
    return "inconclusive"


def asymptotic_diagnostic(body, radii, n_azimuth=_N_AZIMUTH) -> str:
    """Fit the trend of d_asym(R) against the body's own recession cone."""
    radii = [float(r) for r in radii]
    if len(radii) < 4 or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be >= 4 increasing values")
    if radii[-1] < 100.0 * radii[0]:
        raise ValueError("radii must span at least two decades")
    cone = body.recession_cone()
    d = [shell_distance(body, cone, R, n_azimuth=n_azimuth).d_asym for R in radii]
    return trend_verdict(d)
