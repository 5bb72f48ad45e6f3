"""Catalog of convex bodies in R^2 / R^3 with exact analytic oracles.

Every body is described by a global convex defining function F with
membership F(x) <= 0, so that ray/boundary queries reduce to robust 1D
bisection and all downstream quadrature error is attributable to the
integration scheme, not the oracles.

Membership and defining-value evaluation are vectorized over trailing
point batches (shape (..., dim)); all other oracles are scalar.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import (
    GeometryError,
    InadmissibleNormal,
    NotInterior,
    NotOnBoundary,
    OriginNotInterior,
)

INF = math.inf

KINDS = (
    "ellipsoid",
    "elliptic-paraboloid-epigraph",
    "hyperboloid-upper-sheet",
    "circular-cone",
    "function-epigraph",
    "superellipsoid",
)

FUNCTION_TAGS = ("square", "quartic", "exp", "cosh")

_UNIT_TOL = 1e-12
_DIVERGENCE_CAP = 1e12


def _as_point(x, dim):
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != dim:
        raise ValueError(f"point has dimension {x.shape[-1]}, body lives in R^{dim}")
    return x


def _check_unit(u):
    u = np.asarray(u, dtype=float)
    if abs(np.linalg.norm(u) - 1.0) > _UNIT_TOL:
        raise ValueError("direction must be a unit vector (within 1e-12)")
    return u


def _f_eval(tag, x):
    with np.errstate(over="ignore"):
        if tag == "square":
            return x * x
        if tag == "quartic":
            return x ** 4
        if tag == "exp":
            return np.exp(x)
        if tag == "cosh":
            return np.cosh(x)
    raise ValueError(f"unknown function tag {tag!r}")


def _f_prime(tag, x):
    with np.errstate(over="ignore"):
        if tag == "square":
            return 2.0 * x
        if tag == "quartic":
            return 4.0 * x ** 3
        if tag == "exp":
            return np.exp(x)
        if tag == "cosh":
            return np.sinh(x)
    raise ValueError(f"unknown function tag {tag!r}")


@dataclass(frozen=True)
class ConeDescriptor:
    """Closed convex cone with apex at the origin, given in closed form.

    kind is one of:
      "zero"      -- {0}
      "ray"       -- {t*d : t >= 0} for a unit direction d (params)
      "quadrant"  -- {x <= 0, y >= 0} in R^2
      "elliptic"  -- {x_d >= sqrt(sum (x_i/alpha_i)^2)} (params = alpha)
    """

    kind: str
    ambient_dim: int
    params: tuple = ()

    @property
    def dim(self) -> int:
        if self.kind == "zero":
            return 0
        if self.kind == "ray":
            return 1
        return self.ambient_dim

    @property
    def scale(self) -> float:
        return 1.0

    @property
    def translation(self):
        return np.zeros(self.ambient_dim)

    def defining(self, x):
        """Convex defining function; membership is defining(x) <= 0."""
        x = _as_point(x, self.ambient_dim)
        if self.kind == "zero":
            return np.linalg.norm(x, axis=-1)
        if self.kind == "ray":
            d = np.asarray(self.params)
            proj = x @ d
            perp = x - proj[..., None] * d
            return np.maximum(np.linalg.norm(perp, axis=-1), -proj)
        if self.kind == "quadrant":
            return np.maximum(x[..., 0], -x[..., 1])
        if self.kind == "elliptic":
            alpha = np.asarray(self.params)
            q = np.sqrt(np.sum((x[..., :-1] / alpha) ** 2, axis=-1))
            return q - x[..., -1]
        raise ValueError(self.kind)

    def contains(self, x):
        return self.defining(x) <= 1e-12

    def support(self, u) -> float:
        """0 exactly when <u, v> <= 0 on the whole cone, +inf otherwise."""
        u = _check_unit(u)
        return 0.0 if self._polar_contains(u) else INF

    def _polar_contains(self, u) -> bool:
        u = np.asarray(u, dtype=float)
        if self.kind == "zero":
            return True
        if self.kind == "ray":
            return float(u @ np.asarray(self.params)) <= 1e-14
        if self.kind == "quadrant":
            return u[0] >= -1e-14 and u[1] <= 1e-14
        if self.kind == "elliptic":
            alpha = np.asarray(self.params)
            return -u[-1] >= np.linalg.norm(alpha * u[:-1]) - 1e-14
        raise ValueError(self.kind)

    def positive_on(self, a) -> bool:
        """True iff <a, v> > 0 for every nonzero v in the cone."""
        a = np.asarray(a, dtype=float)
        if self.kind == "zero":
            return True
        if self.kind == "ray":
            return float(a @ np.asarray(self.params)) > 0.0
        if self.kind == "quadrant":
            return a[0] < 0.0 and a[1] > 0.0
        if self.kind == "elliptic":
            alpha = np.asarray(self.params)
            return a[-1] > np.linalg.norm(alpha * a[:-1])
        raise ValueError(self.kind)

    def meets_hyperplane(self, u) -> bool:
        """True iff the cone meets u-perp in more than the origin."""
        u = np.asarray(u, dtype=float)
        if self.kind == "zero":
            return False
        if self.kind == "ray":
            return abs(float(u @ np.asarray(self.params))) <= 1e-14
        if self.kind == "quadrant":
            return u[0] * u[1] >= 0.0
        if self.kind == "elliptic":
            alpha = np.asarray(self.params)
            return u[-1] ** 2 <= np.sum((alpha * u[:-1]) ** 2)
        raise ValueError(self.kind)

    def interior_point(self):
        """A point in the interior (full-dimensional cones only)."""
        if self.kind == "quadrant":
            return np.array([-1.0, 1.0])
        if self.kind == "elliptic":
            p = np.zeros(self.ambient_dim)
            p[-1] = 2.0 * max(1.0, *self.params)
            return p
        raise GeometryError(f"cone of kind {self.kind!r} has empty interior")

    def interior_direction(self):
        """A unit direction strictly inside the cone (dim >= 1)."""
        if self.kind == "ray":
            return np.asarray(self.params, dtype=float)
        if self.kind == "quadrant":
            return np.array([-1.0, 1.0]) / math.sqrt(2.0)
        if self.kind == "elliptic":
            d = np.zeros(self.ambient_dim)
            d[-1] = 1.0
            return d
        raise GeometryError("zero cone has no nonzero direction")

    def recession_cone(self) -> "ConeDescriptor":
        return self

    def generators(self) -> str:
        if self.kind == "zero":
            return "{0}"
        if self.kind == "ray":
            return f"ray through {tuple(self.params)}"
        if self.kind == "quadrant":
            return "second quadrant {x <= 0, y >= 0}"
        alpha = tuple(self.params)
        return f"elliptic cone x_d >= sqrt(sum (x_i/{alpha})^2)"

    def boundary_hit(self, origin, direction) -> float:
        return _ray_hit(self, origin, direction)


@dataclass(frozen=True, eq=False)
class BodySpec:
    """Immutable parametric description of a closed convex body."""

    # eq=False: the translation field is an ndarray, so the generated
    # __eq__ would raise; compare via to_json() when needed.

    kind: str
    params: tuple
    translation: np.ndarray = None
    ambient_dim: int = 2
    tag: str = None  # function tag, only for kind == "function-epigraph"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown body kind {self.kind!r}")
        if self.ambient_dim not in (2, 3):
            raise ValueError("ambient_dim must be 2 or 3")
        params = tuple(float(p) for p in np.atleast_1d(self.params))
        object.__setattr__(self, "params", params)
        tr = self.translation
        tr = np.zeros(self.ambient_dim) if tr is None else np.asarray(tr, dtype=float)
        if tr.shape != (self.ambient_dim,):
            raise ValueError("translation dimension mismatch")
        tr.flags.writeable = False
        object.__setattr__(self, "translation", tr)
        self._validate()

    def _validate(self):
        d, n = self.ambient_dim, self.ambient_dim - 1
        k, p = self.kind, self.params
        if k == "ellipsoid":
            if len(p) != d or min(p) <= 0:
                raise ValueError("ellipsoid needs dim positive semi-axes")
        elif k == "elliptic-paraboloid-epigraph":
            if len(p) != n or min(p) <= 0:
                raise ValueError("paraboloid needs n positive quadratic coefficients")
        elif k == "hyperboloid-upper-sheet":
            if len(p) != n or min(p) <= 0:
                raise ValueError("hyperboloid sheet needs n positive semi-axes")
        elif k == "circular-cone":
            if len(p) != 1 or p[0] <= 0:
                raise ValueError("circular cone needs one positive slope")
        elif k == "function-epigraph":
            if self.ambient_dim != 2:
                raise ValueError("function epigraphs are 2D only")
            if self.tag not in FUNCTION_TAGS:
                raise ValueError(f"function tag must be one of {FUNCTION_TAGS}")
        elif k == "superellipsoid":
            if len(p) != 1 or p[0] < 2:
                raise ValueError("superellipsoid needs one exponent p >= 2")

    # -- basic geometry -------------------------------------------------

    @property
    def scale(self) -> float:
        s = max(1.0, float(np.linalg.norm(self.translation)))
        if self.params:
            s = max(s, max(abs(p) for p in self.params))
        return s

    def _local(self, x):
        return _as_point(x, self.ambient_dim) - self.translation

    def defining(self, x):
        """Convex defining function F; the body is {F <= 0}. Vectorized."""
        y = self._local(x)
        k, p = self.kind, np.asarray(self.params)
        if k == "ellipsoid":
            return np.sum((y / p) ** 2, axis=-1) - 1.0
        if k == "elliptic-paraboloid-epigraph":
            return np.sum(p * y[..., :-1] ** 2, axis=-1) - y[..., -1]
        if k == "hyperboloid-upper-sheet":
            q = np.sum((y[..., :-1] / p) ** 2, axis=-1)
            return np.sqrt(1.0 + q) - y[..., -1]
        if k == "circular-cone":
            return p[0] * np.linalg.norm(y[..., :-1], axis=-1) - y[..., -1]
        if k == "function-epigraph":
            return _f_eval(self.tag, y[..., 0]) - y[..., 1]
        if k == "superellipsoid":
            return np.sum(np.abs(y) ** p[0], axis=-1) - 1.0
        raise ValueError(k)

    def defining_gradient(self, x):
        """Gradient of the defining function (scalar points)."""
        y = self._local(x)
        k, p = self.kind, np.asarray(self.params)
        g = np.empty(self.ambient_dim)
        if k == "ellipsoid":
            return 2.0 * y / p ** 2
        if k == "elliptic-paraboloid-epigraph":
            g[:-1] = 2.0 * p * y[:-1]
            g[-1] = -1.0
            return g
        if k == "hyperboloid-upper-sheet":
            w = math.sqrt(1.0 + float(np.sum((y[:-1] / p) ** 2)))
            g[:-1] = y[:-1] / (p ** 2 * w)
            g[-1] = -1.0
            return g
        if k == "circular-cone":
            r = float(np.linalg.norm(y[:-1]))
            if r < 1e-300:
                raise NotOnBoundary("cone apex has no unique normal")
            g[:-1] = p[0] * y[:-1] / r
            g[-1] = -1.0
            return g
        if k == "function-epigraph":
            return np.array([float(_f_prime(self.tag, y[0])), -1.0])
        if k == "superellipsoid":
            pw = p[0]
            return pw * np.sign(y) * np.abs(y) ** (pw - 1.0)
        raise ValueError(k)

    def contains(self, x):
        """Membership oracle, vectorized over point batches."""
        return self.defining(x) <= 1e-12 * self.scale

    def interior_point(self):
        k = self.kind
        if k in ("ellipsoid", "superellipsoid"):
            return self.translation.copy()
        p = np.zeros(self.ambient_dim)
        if k == "elliptic-paraboloid-epigraph":
            p[-1] = 1.0
        elif k == "hyperboloid-upper-sheet":
            p[-1] = 2.0
        elif k == "circular-cone":
            p[-1] = max(1.0, self.params[0])
        elif k == "function-epigraph":
            p[1] = float(_f_eval(self.tag, 0.0)) + 1.0
        return p + self.translation

    # -- support function / Gauss map ------------------------------------

    def support(self, u) -> float:
        """h(u) = sup over the body of <u, x>; +inf in recession-positive directions.

        Positively homogeneous: any nonzero u is accepted and rescaled.
        """
        u = np.asarray(u, dtype=float)
        nrm = float(np.linalg.norm(u))
        if nrm == 0.0:
            raise ValueError("direction must be nonzero")
        u = u / nrm
        base = self._support_base(u)
        if base == INF:
            return INF
        return nrm * (base + float(u @ self.translation))

    def _support_base(self, u) -> float:
        k, p = self.kind, np.asarray(self.params)
        if k == "ellipsoid":
            return float(np.linalg.norm(p * u))
        if k == "superellipsoid":
            pw = p[0]
            q = pw / (pw - 1.0)
            return float(np.sum(np.abs(u) ** q) ** (1.0 / q))
        if k == "elliptic-paraboloid-epigraph":
            s = -u[-1]
            if s <= 0.0:
                return 0.0 if np.linalg.norm(u[:-1]) == 0.0 and s == 0.0 else INF
            return float(np.sum(u[:-1] ** 2 / (4.0 * p * s)))
        if k == "hyperboloid-upper-sheet":
            s = -u[-1]
            r = float(np.linalg.norm(p * u[:-1]))
            if s < r:
                return INF
            return -math.sqrt(max(s * s - r * r, 0.0))
        if k == "circular-cone":
            s = -u[-1]
            return 0.0 if p[0] * s >= np.linalg.norm(u[:-1]) else INF
        if k == "function-epigraph":
            return _epigraph_support(self.tag, u)
        raise ValueError(k)

    def support_attained(self, u) -> bool:
        """Whether u lies in the Gauss-map image N(boundary)."""
        u = _check_unit(u)
        k, p = self.kind, np.asarray(self.params)
        if k in ("ellipsoid", "superellipsoid"):
            return True
        if k == "elliptic-paraboloid-epigraph":
            return u[-1] < 0.0
        if k == "hyperboloid-upper-sheet":
            return -u[-1] > float(np.linalg.norm(p * u[:-1]))
        if k == "circular-cone":
            return False  # not strictly convex; Gauss map not invertible
        if k == "function-epigraph":
            if u[1] >= 0.0:
                return False
            return u[0] > 0.0 if self.tag == "exp" else True
        raise ValueError(k)

    def inverse_gauss(self, u):
        """The unique boundary point whose outer unit normal is u."""
        u = _check_unit(u)
        if not self.support_attained(u):
            raise InadmissibleNormal(f"{u} is not an attained normal of this body")
        k, p = self.kind, np.asarray(self.params)
        d = self.ambient_dim
        x = np.empty(d)
        if k == "ellipsoid":
            x = p ** 2 * u / np.linalg.norm(p * u)
        elif k == "superellipsoid":
            pw = p[0]
            q = pw / (pw - 1.0)
            nq = float(np.sum(np.abs(u) ** q))
            x = np.sign(u) * np.abs(u) ** (q / pw) / nq ** (1.0 / pw)
        elif k == "elliptic-paraboloid-epigraph":
            s = -u[-1]
            x[:-1] = u[:-1] / (2.0 * p * s)
            x[-1] = float(np.sum(p * x[:-1] ** 2))
        elif k == "hyperboloid-upper-sheet":
            s = -u[-1]
            r = float(np.linalg.norm(p * u[:-1]))
            w = s / math.sqrt(s * s - r * r)
            x[:-1] = u[:-1] * p ** 2 * w / s
            x[-1] = w
        elif k == "function-epigraph":
            s = -u[1]
            slope = u[0] / s
            if self.tag == "square":
                t = slope / 2.0
            elif self.tag == "quartic":
                t = math.copysign(abs(slope / 4.0) ** (1.0 / 3.0), slope)
            elif self.tag == "exp":
                t = math.log(slope)
            else:  # cosh
                t = math.asinh(slope)
            x = np.array([t, float(_f_eval(self.tag, t))])
        else:
            raise InadmissibleNormal("cone Gauss map is not invertible")
        return x + self.translation

    def outer_normal(self, x):
        """Outward unit normal at a boundary point."""
        x = _as_point(x, self.ambient_dim)
        f = float(self.defining(x))
        if abs(f) > 1e-8 * self.scale:
            raise NotOnBoundary(f"|F(x)| = {abs(f):.3g} exceeds boundary tolerance")
        g = self.defining_gradient(x)
        n = g / np.linalg.norm(g)
        # F is convex with the body as its 0-sublevel set, so grad F points outward.
        return n

    # -- gauge and ray casting -------------------------------------------

    def gauge(self, x) -> float:
        """Minkowski functional inf{lam > 0 : x in lam*K}; requires 0 in int K."""
        x = _as_point(x, self.ambient_dim)
        m = 1e-6 * self.scale
        probes = np.vstack([np.eye(self.ambient_dim) * m, -np.eye(self.ambient_dim) * m])
        if not bool(np.all(self.contains(probes))):
            raise OriginNotInterior("0 is not interior to the body")
        nx = float(np.linalg.norm(x))
        if nx == 0.0:
            return 0.0
        if self.recession_cone().contains(x):
            return 0.0
        lam = 1.0
        for _ in range(600):
            if bool(self.contains(x / lam)):
                break
            lam *= 2.0
        else:  # pragma: no cover
            raise GeometryError("gauge bracketing failed")
        lo, hi = 0.0, lam
        while hi - lo > 1e-12 * max(1.0, hi):
            mid = 0.5 * (lo + hi)
            if mid > 0.0 and bool(self.contains(x / mid)):
                hi = mid
            else:
                lo = mid
        return hi

    def boundary_hit(self, origin, direction) -> float:
        """Distance along a unit ray from a strictly interior origin to the boundary."""
        origin = _as_point(origin, self.ambient_dim)
        direction = _check_unit(direction)
        m = 1e-6 * self.scale
        probes = origin + np.vstack(
            [np.eye(self.ambient_dim) * m, -np.eye(self.ambient_dim) * m]
        )
        if not (bool(self.contains(origin)) and bool(np.all(self.contains(probes)))):
            raise NotInterior("ray origin fails the interiority margin test")
        return _ray_hit(self, origin, direction)

    def recession_cone(self) -> ConeDescriptor:
        d = self.ambient_dim
        k, p = self.kind, self.params
        if k in ("ellipsoid", "superellipsoid"):
            return ConeDescriptor("zero", d)
        ray = tuple(1.0 if i == d - 1 else 0.0 for i in range(d))
        if k == "elliptic-paraboloid-epigraph":
            return ConeDescriptor("ray", d, ray)
        if k == "hyperboloid-upper-sheet":
            return ConeDescriptor("elliptic", d, p)
        if k == "circular-cone":
            return ConeDescriptor("elliptic", d, tuple(1.0 / p[0] for _ in range(d - 1)))
        if k == "function-epigraph":
            if self.tag == "exp":
                return ConeDescriptor("quadrant", 2)
            return ConeDescriptor("ray", 2, ray)
        raise ValueError(k)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        obj = {
            "kind": self.kind,
            "params": list(self.params),
            "translation": self.translation.tolist(),
            "dim": self.ambient_dim,
        }
        if self.tag is not None:
            obj["tag"] = self.tag
        return obj

    @classmethod
    def from_json(cls, obj) -> "BodySpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(
            kind=obj["kind"],
            params=tuple(obj.get("params", ())),
            translation=np.asarray(obj.get("translation", [0.0] * obj["dim"])),
            ambient_dim=int(obj["dim"]),
            tag=obj.get("tag"),
        )


def _ray_hit(setlike, origin, direction) -> float:
    """Generic membership-bisection boundary hit; +inf along recession directions."""
    origin = np.asarray(origin, dtype=float)
    direction = np.asarray(direction, dtype=float)
    if setlike.recession_cone().contains(direction):
        return INF
    t = setlike.scale
    for _ in range(200):
        if not bool(setlike.contains(origin + t * direction)):
            break
        t *= 2.0
    else:  # pragma: no cover
        raise GeometryError("boundary bracketing failed; direction nearly recessive")
    lo, hi = 0.0, t
    while hi - lo > 1e-12 * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if bool(setlike.contains(origin + mid * direction)):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def ray_hits_batch(setlike, origin, directions, rtol=1e-12):
    """Vectorized boundary hits from one interior origin along many unit rays.

    All directions must be non-recessive (guaranteed for bounded sections).
    """
    directions = np.asarray(directions, dtype=float)
    m = directions.shape[0]
    t = np.full(m, setlike.scale, dtype=float)
    inside = np.asarray(setlike.contains(origin + t[:, None] * directions))
    for _ in range(200):
        if not inside.any():
            break
        t[inside] *= 2.0
        inside = np.asarray(setlike.contains(origin + t[:, None] * directions))
    else:  # pragma: no cover
        raise GeometryError("batch boundary bracketing failed")
    lo = np.zeros(m)
    hi = t
    # fixed iteration count => bitwise-deterministic node schedule
    for _ in range(80):
        if np.all(hi - lo <= rtol * np.maximum(1.0, hi)):
            break
        mid = 0.5 * (lo + hi)
        ins = np.asarray(setlike.contains(origin + mid[:, None] * directions))
        lo = np.where(ins, mid, lo)
        hi = np.where(ins, hi, mid)
    return 0.5 * (lo + hi)


def _epigraph_support(tag, u) -> float:
    """sup of u_x*x + u_y*f(x) by 1D concave ascent with divergence detection."""
    ux, uy = float(u[0]), float(u[1])
    if uy > 1e-15:
        return INF
    if abs(uy) <= 1e-15:
        return INF if abs(ux) > 1e-15 else 0.0
    if tag == "exp":
        # f is not coercive as x -> -inf: the supremum there is a limit, not a max
        if ux < -1e-15:
            return INF
        if ux <= 1e-15:
            return 0.0

    def g(x):
        return ux * x + uy * float(_f_eval(tag, x))

    # march both ways from 0 until g turns over or the running max diverges
    best_x, best = 0.0, g(0.0)
    for sgn in (1.0, -1.0):
        step = 1.0
        prev = best
        while step < 2.0 ** 80:
            val = g(sgn * step)
            if val > _DIVERGENCE_CAP:
                return INF
            if val > best:
                best_x, best = sgn * step, val
            if val < prev:
                break
            prev = val
            step *= 2.0
    # expand to a certified downhill bracket around the sampled maximizer
    span = max(1.0, abs(best_x))
    for _ in range(200):
        if g(best_x - span) < best and g(best_x + span) < best:
            break
        span *= 2.0
    res = minimize_scalar(
        lambda x: -g(x),
        bracket=(best_x - span, best_x, best_x + span),
        method="brent",
        options={"xtol": 1e-12},
    )
    return float(-res.fun)


# -- convenience constructors used throughout the tests and CLI ------------


def ellipsoid(semi_axes, center=None) -> BodySpec:
    semi_axes = tuple(np.atleast_1d(semi_axes))
    return BodySpec("ellipsoid", semi_axes, center, ambient_dim=len(semi_axes))


def unit_disk(center=None) -> BodySpec:
    return ellipsoid((1.0, 1.0), center)


def unit_sphere(center=None) -> BodySpec:
    return ellipsoid((1.0, 1.0, 1.0), center)


def paraboloid_epigraph(coeffs, shift=None) -> BodySpec:
    coeffs = tuple(np.atleast_1d(coeffs))
    return BodySpec(
        "elliptic-paraboloid-epigraph", coeffs, shift, ambient_dim=len(coeffs) + 1
    )


def hyperboloid_sheet(semi_axes, shift=None) -> BodySpec:
    semi_axes = tuple(np.atleast_1d(semi_axes))
    return BodySpec(
        "hyperboloid-upper-sheet", semi_axes, shift, ambient_dim=len(semi_axes) + 1
    )


def circular_cone(slope, dim=2, shift=None) -> BodySpec:
    return BodySpec("circular-cone", (slope,), shift, ambient_dim=dim)


def function_epigraph(tag, shift=None) -> BodySpec:
    return BodySpec("function-epigraph", (), shift, ambient_dim=2, tag=tag)


def superellipsoid(p, dim=2, shift=None) -> BodySpec:
    return BodySpec("superellipsoid", (p,), shift, ambient_dim=dim)
