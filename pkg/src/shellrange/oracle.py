"""Brute-force verification of the closed-form descriptors.

Ranges are sampled from unit vectors x = (cos th, e^{i ph} sin th); a
regular (th, ph) grid guarantees boundary coverage for extent tests and is
blended with seeded uniform noise against aliasing, so runs are
reproducible from the seed alone.  Membership checks evaluate normalized
algebraic residuals of the descriptor quadrics plus the synthetic focal
inequalities where they apply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .exceptions import KindMismatch, TooFewSamples
from .hyperbolic import moebius_point_action
from .matrices import MoebiusMap, as_matrix
from .ranges import (
    NumericalRangeDescriptor,
    RangeDescriptor,
    ShellDescriptor,
    shell_primal_bck,
)

TARGETS = ("shell", "range", "nr")


@dataclass(frozen=True)
class SampleCloud:
    target: str  # "shell" | "range" | "nr"
    model: str | None
    points: np.ndarray  # (n, 3) shell, (n, 2) range, (n,) complex nr
    seed: int
    count: int


@dataclass(frozen=True)
class Report:
    count: int
    max_violation: float
    passed: bool
    checks: dict = field(default_factory=dict)


def _angles(n: int, seed: int):
    g = math.isqrt(n // 2)
    if g >= 2:
        th = np.linspace(0.0, math.pi / 2, g)
        ph = np.linspace(0.0, 2.0 * math.pi, g, endpoint=False)
        tt, pp = np.meshgrid(th, ph, indexing="ij")
        base_t, base_p = tt.ravel(), pp.ravel()
    else:
        base_t = base_p = np.empty(0)
    rng = np.random.default_rng(seed)
    rest = n - base_t.size
    rand_t = rng.uniform(0.0, math.pi / 2, rest)
    rand_p = rng.uniform(0.0, 2.0 * math.pi, rest)
    return np.concatenate([base_t, rand_t]), np.concatenate([base_p, rand_p])


def sample(a, target: str, model: str | None, n: int, seed: int = 0) -> SampleCloud:
    """Sample a range by pushing unit vectors through the defining formulas."""
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}")
    if n < 1:
        raise ValueError("need at least one sample")
    m = as_matrix(a)
    th, ph = _angles(n, seed)
    z1 = np.cos(th).astype(complex)
    z2 = np.sin(th) * np.exp(1j * ph)
    y1 = m[0, 0] * z1 + m[0, 1] * z2
    y2 = m[1, 0] * z1 + m[1, 1] * z2
    axx = y1 * np.conj(z1) + y2 * np.conj(z2)  # <Ax, x> with |x| = 1
    ayy = (np.abs(y1) ** 2 + np.abs(y2) ** 2).real  # <Ax, Ax>

    if target == "nr":
        return SampleCloud("nr", None, axx, seed, n)

    re, im = axx.real, axx.imag
    if target == "shell":
        if model == "pck3" or model == "pck":
            pts = np.stack([re, im, ayy], axis=1)
            model_name = "pck3"
        else:
            d = ayy + 1.0
            pts = np.stack([2 * re / d, 2 * im / d, (ayy - 1.0) / d], axis=1)
            model_name = "bck3"
        return SampleCloud("shell", model_name, pts, seed, n)

    if model == "pck2" or model == "pck":
        pts = np.stack([re, ayy], axis=1)
        model_name = "pck2"
    elif model == "ph2" or model == "ph":
        pts = np.stack([re, np.sqrt(np.maximum(ayy - re * re, 0.0))], axis=1)
        model_name = "ph2"
    else:
        d = ayy + 1.0
        pts = np.stack([2 * re / d, (ayy - 1.0) / d], axis=1)
        model_name = "bck2"
    return SampleCloud("range", model_name, pts, seed, n)


def _to_bck2(pts: np.ndarray, model: str) -> np.ndarray:
    if model == "bck2":
        return pts
    if model == "pck2":
        x, z = pts[:, 0], pts[:, 1]
        return np.stack([2 * x / (z + 1.0), (z - 1.0) / (z + 1.0)], axis=1)
    if model == "ph2":
        x, z = pts[:, 0], pts[:, 1]
        n2 = x * x + z * z
        return np.stack([2 * x / (n2 + 1.0), (n2 - 1.0) / (n2 + 1.0)], axis=1)
    raise KindMismatch(f"unsupported 2d model {model!r}")


def _to_bck3(pts: np.ndarray, model: str) -> np.ndarray:
    if model == "bck3":
        return pts
    if model == "pck3":
        d = pts[:, 2] + 1.0
        return np.stack([2 * pts[:, 0] / d, 2 * pts[:, 1] / d, (pts[:, 2] - 1.0) / d], axis=1)
    raise KindMismatch(f"unsupported 3d model {model!r}")


def _quadric_values(q: np.ndarray, pts: np.ndarray) -> np.ndarray:
    # evaluate on unit-normalized projective vectors for a scale-free residual
    hom = np.concatenate([pts, np.ones((pts.shape[0], 1))], axis=1)
    hom = hom / np.linalg.norm(hom, axis=1, keepdims=True)
    return np.einsum("ni,ij,nj->n", hom, q, hom)


def _segment_distance(pts: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    d = b - a
    den = float(d @ d)
    if den == 0.0:
        return np.linalg.norm(pts - a, axis=1)
    s = np.clip((pts - a) @ d / den, 0.0, 1.0)
    proj = a[None, :] + s[:, None] * d[None, :]
    return np.linalg.norm(pts - proj, axis=1)


def _h_dist_to_point(pts: np.ndarray, f: np.ndarray) -> np.ndarray:
    s1 = np.maximum(1.0 - np.sum(pts * pts, axis=1), 1e-300)
    s2 = max(1.0 - float(f @ f), 1e-300)
    arg = np.maximum((1.0 - pts @ f) / np.sqrt(s1 * s2), 1.0)
    return np.arccosh(arg)


def _range_checks(d: RangeDescriptor, pts: np.ndarray, tol: Tolerances) -> dict:
    checks: dict[str, float] = {}
    case = d.case
    if case in ("point-ordinary", "point-asymptotic"):
        f = np.array(d.foci[0].coords)
        checks["point-distance"] = float(np.max(np.linalg.norm(pts - f, axis=1)))
        return checks
    if case in ("segment", "closed-line", "closed-half-line"):
        a = np.array(d.foci[0].coords)
        b = np.array(d.foci[1].coords)
        checks["segment-distance"] = float(np.max(_segment_distance(pts, a, b)))
        return checks
    vals = _quadric_values(d.conic.primal, pts)
    checks["conic"] = float(np.max(np.maximum(vals, 0.0)))
    interior = 1.0 - np.sum(pts * pts, axis=1) > tol.geometry
    if case in ("circle", "proper-ellipse"):
        f1 = np.array(d.foci[0].coords)
        f2 = np.array(d.foci[-1].coords)
        sums = _h_dist_to_point(pts, f1) + _h_dist_to_point(pts, f2)
        checks["focal-sum"] = float(np.max(np.maximum(sums - 2.0 * d.s_plus, 0.0), initial=0.0))
    elif case == "elliptic-parabola":
        checks["focal-horocycle"] = _parabola_check(d, pts[interior])
    return checks


def _parabola_check(d: RangeDescriptor, pts: np.ndarray) -> float:
    if pts.shape[0] == 0:
        return 0.0
    f1, f2 = d.foci
    asym, ordinary = (f1, f2) if f1.is_asymptotic() else (f2, f1)
    x0, z0 = asym.coords
    lam0 = x0 / (1.0 - z0)
    shift = MoebiusMap(1.0, -lam0, 0.0, 1.0)
    ff = np.array(moebius_point_action(shift, ordinary).coords)
    vv = np.array(moebius_point_action(shift, d.vertex).coords)
    # shift the cloud through the half-plane model in vectorized form
    x, z = pts[:, 0], pts[:, 1]
    s = np.sqrt(np.maximum(1.0 - x * x - z * z, 1e-300))
    xp = x / (1.0 - z) - lam0
    zp = s / (1.0 - z)
    n2 = xp * xp + zp * zp
    moved = np.stack([2 * xp / (n2 + 1.0), (n2 - 1.0) / (n2 + 1.0)], axis=1)

    def d0(p):
        s2 = np.maximum(1.0 - np.sum(p * p, axis=-1), 1e-300)
        return np.log((1.0 + p[..., 1]) / np.sqrt(s2))

    vals = _h_dist_to_point(moved, ff) + d0(moved) + float(d0(ff)) - 2.0 * float(d0(vv))
    return float(np.max(np.maximum(vals, 0.0), initial=0.0))


def _shell_checks(d: ShellDescriptor, pts: np.ndarray) -> dict:
    checks: dict[str, float] = {}
    if d.case == "point":
        lam = d.asymptotic_points[0]
        n2 = abs(lam) ** 2
        f = np.array([2 * lam.real / (n2 + 1), 2 * lam.imag / (n2 + 1), (n2 - 1) / (n2 + 1)])
        checks["point-distance"] = float(np.max(np.linalg.norm(pts - f, axis=1)))
        return checks
    if d.case == "line":
        ends = []
        for lam in d.asymptotic_points:
            n2 = abs(lam) ** 2
            ends.append(
                np.array([2 * lam.real / (n2 + 1), 2 * lam.imag / (n2 + 1), (n2 - 1) / (n2 + 1)])
            )
        checks["segment-distance"] = float(np.max(_segment_distance(pts, ends[0], ends[1])))
        return checks
    q = shell_primal_bck(d.dual_quadric)
    checks["quadric"] = float(np.max(np.abs(_quadric_values(q, pts))))
    return checks


def verify_membership(cloud: SampleCloud, descriptor, tol: float = 1e-8,
                      tolerances: Tolerances = DEFAULT_TOLERANCES) -> Report:
    """Check every sampled point against the descriptor; reports the worst violation."""
    if cloud.target == "range":
        if not isinstance(descriptor, RangeDescriptor):
            raise KindMismatch("range cloud needs a RangeDescriptor")
        pts = _to_bck2(cloud.points, cloud.model)
        checks = _range_checks(descriptor, pts, tolerances)
    elif cloud.target == "shell":
        if not isinstance(descriptor, ShellDescriptor):
            raise KindMismatch("shell cloud needs a ShellDescriptor")
        pts = _to_bck3(cloud.points, cloud.model)
        checks = _shell_checks(descriptor, pts)
    elif cloud.target == "nr":
        if not isinstance(descriptor, NumericalRangeDescriptor):
            raise KindMismatch("numerical-range cloud needs a NumericalRangeDescriptor")
        f1, f2 = descriptor.foci
        sums = np.abs(cloud.points - f1) + np.abs(cloud.points - f2)
        checks = {"focal-sum": float(np.max(sums - 2.0 * descriptor.s_plus, initial=0.0))}
    else:
        raise KindMismatch(f"unknown cloud target {cloud.target!r}")
    worst = max(checks.values()) if checks else 0.0
    return Report(count=cloud.count, max_violation=worst, passed=worst <= tol, checks=checks)


def _farthest_pair(pts: np.ndarray):
    from scipy.spatial import ConvexHull, QhullError

    if pts.shape[0] > 3:
        try:
            hull = pts[ConvexHull(pts).vertices]
        except QhullError:
            hull = None
    else:
        hull = pts
    if hull is None:
        # collinear cloud: extremes along the principal direction
        c = pts - pts.mean(axis=0)
        _, _, vt = np.linalg.svd(c, full_matrices=False)
        proj = c @ vt[0]
        hull = pts[[int(np.argmin(proj)), int(np.argmax(proj))]]
    best = (0.0, hull[0], hull[0])
    for i in range(hull.shape[0]):
        dv = _h_dist_to_point(hull[i + 1:], hull[i])
        if dv.size and float(np.max(dv)) > best[0]:
            j = int(np.argmax(dv))
            best = (float(dv[j]), hull[i], hull[i + 1 + j])
    return best


def empirical_axes(cloud: SampleCloud, tol: Tolerances = DEFAULT_TOLERANCES):
    """Estimate (s_plus, s_minus) of a conformal-range cloud in bck2.

    The major semi-axis is half the largest pairwise hyperbolic distance
    (singled out on the convex hull); it is reported as +inf when the cloud
    reaches the boundary circle.  The minor semi-axis is the largest
    hyperbolic distance from the estimated major-axis line.
    """
    if cloud.target != "range" or cloud.model != "bck2":
        raise KindMismatch("empirical axes need a conformal-range cloud in bck2")
    if cloud.count < 10_000:
        raise TooFewSamples("axis estimation needs at least 10000 samples")
    pts = cloud.points
    s2 = 1.0 - np.sum(pts * pts, axis=1)
    touches_boundary = bool(np.any(s2 <= tol.geometry))
    interior = pts[s2 > tol.geometry]
    if interior.shape[0] < 2:
        return (math.inf if touches_boundary else 0.0), 0.0
    dmax, a, b = _farthest_pair(interior)
    s_plus = math.inf if touches_boundary else dmax / 2.0
    if np.linalg.norm(b - a) < 1e-12:
        return s_plus, 0.0
    # chord line through the farthest pair, as (u, v, w) with u x + v z + w = 0
    u, v = a[1] - b[1], b[0] - a[0]
    w = a[0] * b[1] - a[1] * b[0]
    den = u * u + v * v - w * w
    if den <= 0.0:
        return s_plus, 0.0
    si = 1.0 - np.sum(interior * interior, axis=1)
    vals = np.abs(interior @ np.array([u, v]) + w) / np.sqrt(den * si)
    return s_plus, float(np.arcsinh(np.max(vals)))
