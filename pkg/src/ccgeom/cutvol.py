"""Cut-volume functional V(a), its finite-difference gradient, and the
constancy scans for the parallel-cut / homothety-cut characterizations.

V(a) is the volume of the body on the <= side of the hyperplane {<a,x> = 1},
computed by Fubini slicing perpendicular to a.  Unboundedness of a cut is
decided analytically from the recession cone, never by runaway integration.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .bodies import INF, _check_unit
from .errors import (
    DegenerateCut,
    DegenerateSection,
    LevelOutOfRange,
    NotApexCentered,
    NotGraphLike,
    OriginInsideBody,
)
from .sections import (
    DEFAULT_RTOL,
    section_diameter,
    section_measure,
    section_stats,
)

_GRAPH_KINDS = ("elliptic-paraboloid-epigraph",)
_GRAPH_TAGS = ("square", "quartic", "cosh")
_HOMOTHETY_TAGS = ("cosh",)


@dataclass(frozen=True)
class CutParam:
    """Parameter a of the cut hyperplane H(a) = {<a,x> = 1}."""

    a: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        if np.linalg.norm(a) == 0.0:
            raise ValueError("cut parameter must be nonzero")
        a.flags.writeable = False
        object.__setattr__(self, "a", a)

    @property
    def unit_normal(self):
        return self.a / np.linalg.norm(self.a)

    @property
    def level(self) -> float:
        return 1.0 / float(np.linalg.norm(self.a))


@dataclass(frozen=True)
class CutVolumeResult:
    """V(a), finite-difference gradient, and the centroid-identity residuals."""

    a: np.ndarray
    V: float
    grad: np.ndarray
    lam: float  # <a, grad V>
    identity_residual: float  # ||x(a) - grad/lam||
    moment_residual: float  # ||grad + measure * x(a) / ||a|| ||
    err_estimate: float
    section_measure: float
    section_centroid: np.ndarray
    section_diameter: float

    def to_json(self):
        return {
            "a": self.a.tolist(),
            "V": self.V,
            "grad": self.grad.tolist(),
            "lambda": self.lam,
            "identity_residual": self.identity_residual,
            "moment_residual": self.moment_residual,
            "err_estimate": self.err_estimate,
            "section_measure": self.section_measure,
            "section_centroid": self.section_centroid.tolist(),
            "section_diameter": self.section_diameter,
        }


def halfspace_cut_volume(body, u, t, rtol=DEFAULT_RTOL) -> float:
    """Volume of body ∩ {<u,x> <= t} for a unit normal u.

    +inf when the cut contains a recession direction; 0 when the halfspace
    misses the interior.
    """
    u = np.array(_check_unit(u))
    t = float(t)
    cone = body.recession_cone()
    if not cone.positive_on(u):
        # some recession direction stays in the halfspace: infinite volume
        h_back = body.support(-u)
        if math.isfinite(h_back) and t <= -h_back:
            return 0.0
        return INF
    s_lo = -body.support(-u)
    s_hi = min(t, body.support(u))
    scale = body.scale
    if s_hi <= s_lo + 1e-12 * scale:
        return 0.0

    def m(s):
        try:
            return section_measure(body, u, s, rtol=rtol)
        except DegenerateSection:
            return 0.0

    # cosine substitution removes the sqrt behaviour at the boundary levels
    c = 0.5 * (s_lo + s_hi)
    h = 0.5 * (s_hi - s_lo)

    def g(phi):
        return m(c - h * math.cos(phi)) * h * math.sin(phi)

    val, _ = quad(g, 0.0, math.pi, epsabs=1e-14 * scale ** body.ambient_dim,
                  epsrel=rtol, limit=200)
    return float(val)


def cut_volume(body, a, rtol=DEFAULT_RTOL) -> float:
    """V(a) = volume of body on the <= side of {<a,x> = 1}."""
    a = a.a if isinstance(a, CutParam) else np.asarray(a, dtype=float)
    nrm = float(np.linalg.norm(a))
    if nrm == 0.0:
        raise ValueError("cut parameter must be nonzero")
    return halfspace_cut_volume(body, a / nrm, 1.0 / nrm, rtol=rtol)


def cut_gradient(body, a, rtol=DEFAULT_RTOL) -> CutVolumeResult:
    """Central-difference gradient of V plus the centroid-identity residuals."""
    a = a.a if isinstance(a, CutParam) else np.asarray(a, dtype=float)
    if bool(body.contains(np.zeros(body.ambient_dim))):
        raise OriginInsideBody("translate the body so that 0 is outside first")
    V0 = cut_volume(body, a, rtol=rtol)
    if not (0.0 < V0 < INF):
        raise DegenerateCut(f"V(a) = {V0} is not finite positive")
    nrm = float(np.linalg.norm(a))
    # the difference quotient amplifies quadrature noise by 1/step, so the
    # perturbed volumes are computed tighter than the requested tolerance
    fd_rtol = min(rtol, 1e-10)
    step = max(1.0, nrm) * fd_rtol ** (1.0 / 3.0)
    dim = body.ambient_dim
    grad = np.zeros(dim)
    for j in range(dim):
        e = np.zeros(dim)
        e[j] = step
        vp = cut_volume(body, a + e, rtol=fd_rtol)
        vm = cut_volume(body, a - e, rtol=fd_rtol)
        if not (math.isfinite(vp) and math.isfinite(vm)):
            raise DegenerateCut("perturbed cut became unbounded; reduce the step")
        grad[j] = (vp - vm) / (2.0 * step)
    u = a / nrm
    t = 1.0 / nrm
    stats = section_stats(body, u, t, rtol=rtol)
    lam = float(a @ grad)
    identity_residual = float(np.linalg.norm(stats.centroid - grad / lam))
    # growing a shrinks the cut, so the gradient points against the moment
    moment_residual = float(np.linalg.norm(grad + stats.measure * stats.centroid / nrm))
    diam = section_diameter(body, u, t)
    err = fd_rtol * V0 / step + step ** 2
    return CutVolumeResult(
        a=a,
        V=V0,
        grad=grad,
        lam=lam,
        identity_residual=identity_residual,
        moment_residual=moment_residual,
        err_estimate=err,
        section_measure=stats.measure,
        section_centroid=stats.centroid,
        section_diameter=diam,
    )


def _graph_gradient(body, abscissa):
    """Boundary point and graph gradient at an abscissa of a graph-like body."""
    x0 = np.atleast_1d(np.asarray(abscissa, dtype=float))
    n = body.ambient_dim - 1
    if x0.shape != (n,):
        raise ValueError(f"anchor abscissa must have {n} component(s)")
    if body.kind == "elliptic-paraboloid-epigraph":
        q = np.asarray(body.params)
        height = float(np.sum(q * x0 ** 2))
        grad = 2.0 * q * x0
    elif body.kind == "function-epigraph":
        from .bodies import _f_eval, _f_prime

        height = float(_f_eval(body.tag, x0[0]))
        grad = np.array([float(_f_prime(body.tag, x0[0]))])
    elif body.kind == "hyperboloid-upper-sheet":
        p = np.asarray(body.params)
        w = math.sqrt(1.0 + float(np.sum((x0 / p) ** 2)))
        height = w
        grad = x0 / (p ** 2 * w)
    else:
        raise NotGraphLike(f"kind {body.kind!r} is not a global graph")
    point = np.concatenate([x0, [height]]) + body.translation
    normal = np.concatenate([-grad, [1.0]])
    normal /= np.linalg.norm(normal)
    return point, grad, normal


def parallel_cut_scan(body, k, anchors, rtol=DEFAULT_RTOL):
    """Volumes between vertically shifted tangent planes and the surface.

    Constant across anchors exactly for elliptic paraboloids.
    """
    if k <= 0:
        raise ValueError("shift k must be positive")
    graph_ok = body.kind in _GRAPH_KINDS or (
        body.kind == "function-epigraph" and body.tag in _GRAPH_TAGS
    )
    if not graph_ok:
        raise NotGraphLike(f"parallel cuts need a graph-like body, got {body.kind!r}")
    out = []
    for anchor in anchors:
        point, _, normal = _graph_gradient(body, anchor)
        t = float(normal @ point) + k * normal[-1]
        out.append(halfspace_cut_volume(body, normal, t, rtol=rtol))
    return out


def homothety_cut_scan(body, k, anchors, rtol=DEFAULT_RTOL):
    """Volumes between homothetically scaled tangent planes and the surface.

    Constant across anchors exactly for hyperboloid sheets (apex-centered).
    """
    if k <= 1.0:
        raise ValueError("homothety factor k must exceed 1")
    apex_ok = body.kind == "hyperboloid-upper-sheet" or (
        body.kind == "function-epigraph" and body.tag in _HOMOTHETY_TAGS
    )
    if not apex_ok:
        raise NotApexCentered(
            f"homothety cuts need apex-centered coordinates, got {body.kind!r}"
        )
    if float(np.linalg.norm(body.translation)) > 0.0:
        raise NotApexCentered("body must keep its asymptotic-cone apex at 0")
    out = []
    for anchor in anchors:
        point, _, normal = _graph_gradient(body, anchor)
        u = -normal  # outer normal of the epigraph-form body
        h0 = float(u @ point)
        if h0 >= -1e-12 * body.scale:
            raise DegenerateCut(
                "tangent plane does not separate the apex from the surface"
            )
        out.append(halfspace_cut_volume(body, -u, -k * h0, rtol=rtol))
    return out


def floating_constancy(body, mode, lam, n_normals=12, seed=0, rtol=DEFAULT_RTOL):
    """Spread of cut volumes beyond support hyperplanes of a shifted/scaled copy.

    mode "translate": copy is body + lam * e_last (lam > 0).
    mode "scale":     copy is lam * body (lam > 1).
    """
    dim = body.ambient_dim
    e_last = np.zeros(dim)
    e_last[-1] = 1.0
    if mode == "translate":
        if lam <= 0:
            raise ValueError("translate mode needs lam > 0")
    elif mode == "scale":
        if lam <= 1:
            raise ValueError("scale mode needs lam > 1")
    else:
        raise ValueError("mode must be 'translate' or 'scale'")
    rng = np.random.default_rng(seed)
    values = []
    attempts = 0
    while len(values) < n_normals and attempts < 100 * n_normals:
        attempts += 1
        u = rng.normal(size=dim)
        u[-1] = -abs(u[-1]) - 0.3 * np.linalg.norm(u[:-1])  # bias downward
        u /= np.linalg.norm(u)
        if not body.support_attained(u):
            continue
        contact = body.inverse_gauss(u)
        if mode == "translate":
            contact = contact + lam * e_last
        else:
            contact = lam * contact
        level = float(u @ contact)
        # cap beyond the support hyperplane of the copy
        v = halfspace_cut_volume(body, -u, -level, rtol=rtol)
        if not (0.0 < v < INF):
            continue
        values.append(v)
    if len(values) < n_normals:
        raise DegenerateCut("could not sample enough admissible normals")
    values = np.array(values)
    mean = float(values.mean())
    return {
        "min": float(values.min()),
        "max": float(values.max()),
        "mean": mean,
        "rel_spread": float((values.max() - values.min()) / mean),
        "values": values.tolist(),
    }
