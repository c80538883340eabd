"""Models of the asymptotically closed hyperbolic plane and space.

Supported models: the Beltrami-Cayley-Klein unit disk/ball (bck2, bck3),
the parabolic Cayley-Klein region (pck2, pck3) and the Poincare half-plane
(ph2).  Points on the boundary of the base set are the asymptotic points;
the pck ideal point and the ph point at infinity are stored with the
``at_infinity`` flag.

The Riemann sphere embeds as the set of asymptotic points; the point at
infinity of the sphere is represented by ``math.inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .config import DEFAULT_TOLERANCES, Tolerances
from .exceptions import InternalConsistencyError, ModelDimensionMismatch, OutsideModel
from .matrices import MoebiusMap

MODELS_2D = ("bck2", "pck2", "ph2")
MODELS_3D = ("bck3", "pck3")
MODELS = MODELS_2D + MODELS_3D

INFINITY = math.inf


def is_infinity(lam) -> bool:
    """Whether an extended complex value is the point at infinity."""
    z = complex(lam)
    return math.isinf(z.real) or math.isinf(z.imag)


@dataclass(frozen=True)
class HPoint:
    model: str
    coords: tuple = field(default=())
    at_infinity: bool = False

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        dim = 2 if self.model in MODELS_2D else 3
        if self.at_infinity:
            if self.model.startswith("bck"):
                raise ValueError("bck models have no point at infinity")
            object.__setattr__(self, "coords", (0.0,) * dim)
            return
        coords = tuple(float(c) for c in self.coords)
        if len(coords) != dim:
            raise ModelDimensionMismatch(
                f"model {self.model} needs {dim} coordinates, got {len(coords)}"
            )
        object.__setattr__(self, "coords", coords)
        tau = DEFAULT_TOLERANCES.geometry
        if self.model.startswith("bck"):
            if sum(c * c for c in coords) > 1.0 + tau:
                raise OutsideModel(f"{coords} outside the closed unit ball")
        elif self.model.startswith("pck"):
            if sum(c * c for c in coords[:-1]) > coords[-1] + tau:
                raise OutsideModel(f"{coords} outside the parabolic region")
        else:  # ph2
            if coords[1] < -tau:
                raise OutsideModel(f"{coords} below the half-plane boundary")

    @property
    def dim(self) -> int:
        return 2 if self.model in MODELS_2D else 3

    def is_asymptotic(self, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
        if self.at_infinity:
            return True
        c = self.coords
        if self.model.startswith("bck"):
            return 1.0 - sum(x * x for x in c) <= tol.geometry
        if self.model.startswith("pck"):
            return c[-1] - sum(x * x for x in c[:-1]) <= tol.geometry
        return c[1] <= tol.geometry


def embed(lam, model: str) -> HPoint:
    """Image of an extended complex number among the asymptotic points.

    3d models use (Re, Im, |.|^2) data; 2d models drop the imaginary
    coordinate, so conjugate values share one image; ph2 keeps (Re, |Im|).
    """
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}")
    if is_infinity(lam):
        if model == "bck2":
            return HPoint(model, (0.0, 1.0))
        if model == "bck3":
            return HPoint(model, (0.0, 0.0, 1.0))
        return HPoint(model, at_infinity=True)
    z = complex(lam)
    n2 = z.real * z.real + z.imag * z.imag
    if model == "pck2":
        return HPoint(model, (z.real, n2))
    if model == "pck3":
        return HPoint(model, (z.real, z.imag, n2))
    if model == "ph2":
        return HPoint(model, (z.real, abs(z.imag)))
    w = n2 + 1.0
    if model == "bck2":
        return HPoint(model, (2 * z.real / w, (n2 - 1.0) / w))
    return HPoint(model, (2 * z.real / w, 2 * z.imag / w, (n2 - 1.0) / w))


def _bck_from_pck(coords):
    z = coords[-1]
    return tuple(2 * c / (z + 1.0) for c in coords[:-1]) + ((z - 1.0) / (z + 1.0),)


def _pck_from_bck(coords):
    z = coords[-1]
    if 1.0 - z <= DEFAULT_TOLERANCES.geometry:
        return None  # the distinguished boundary point maps to the ideal point
    return tuple(c / (1.0 - z) for c in coords[:-1]) + ((1.0 + z) / (1.0 - z),)


def _ph_from_bck(coords):
    x, z = coords
    if 1.0 - z <= DEFAULT_TOLERANCES.geometry:
        return None
    s2 = max(1.0 - x * x - z * z, 0.0)
    return (x / (1.0 - z), math.sqrt(s2) / (1.0 - z))


def _bck_from_ph(coords):
    x, z = coords
    n2 = x * x + z * z
    return (2 * x / (n2 + 1.0), (n2 - 1.0) / (n2 + 1.0))


def transcribe(p: HPoint, target: str, tol: Tolerances = DEFAULT_TOLERANCES) -> HPoint:
    """Move a point between models of the same dimension.

    Round trips are identity within the geometric tolerance;
    (0,1) in bck2 corresponds to the pck2 ideal point and to ph2 infinity.
    """
    if target not in MODELS:
        raise ValueError(f"unknown model {target!r}")
    src_dim = p.dim
    tgt_dim = 2 if target in MODELS_2D else 3
    if src_dim != tgt_dim:
        raise ModelDimensionMismatch(f"cannot transcribe {p.model} to {target}")
    if p.model == target:
        return p

    # hub representation: bck coordinates, or None for the distinguished point
    if p.at_infinity:
        hub = None
    elif p.model.startswith("bck"):
        hub = p.coords
    elif p.model.startswith("pck"):
        hub = _bck_from_pck(p.coords)
    else:
        hub = _bck_from_ph(p.coords)

    if target.startswith("bck"):
        if hub is None:
            return HPoint(target, (0.0,) * (tgt_dim - 1) + (1.0,))
        return HPoint(target, hub)
    if hub is None:
        return HPoint(target, at_infinity=True)
    if target.startswith("pck"):
        out = _pck_from_bck(hub)
    else:
        out = _ph_from_bck(hub)
    if out is None:
        return HPoint(target, at_infinity=True)
    return HPoint(target, out)


def _safe_arcosh(arg: float) -> float:
    if arg < 1.0 - 1e-9:
        raise InternalConsistencyError(f"arcosh argument {arg} out of range")
    return math.acosh(max(arg, 1.0))


def _same_point(p: HPoint, q: HPoint, tol: Tolerances) -> bool:
    if p.at_infinity or q.at_infinity:
        return p.at_infinity and q.at_infinity
    scale = 1.0 + max(abs(c) for c in p.coords + q.coords)
    return all(abs(a - b) <= tol.geometry * scale for a, b in zip(p.coords, q.coords))


def dist(p: HPoint, q: HPoint, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Hyperbolic distance, +inf to an asymptotic point, 0 between identical points."""
    if p.model != q.model:
        raise ModelDimensionMismatch(f"distance between {p.model} and {q.model} points")
    if p.is_asymptotic(tol) or q.is_asymptotic(tol):
        return 0.0 if _same_point(p, q, tol) else math.inf
    if p.model.startswith("pck"):
        target = "bck2" if p.dim == 2 else "bck3"
        return dist(transcribe(p, target), transcribe(q, target), tol)
    if p.model == "ph2":
        (x1, z1), (x2, z2) = p.coords, q.coords
        arg = 1.0 + ((x1 - x2) ** 2 + (z1 - z2) ** 2) / (2.0 * z1 * z2)
        return _safe_arcosh(arg)
    a = sum(x * y for x, y in zip(p.coords, q.coords))
    s1 = 1.0 - sum(x * x for x in p.coords)
    s2 = 1.0 - sum(x * x for x in q.coords)
    return _safe_arcosh((1.0 - a) / math.sqrt(s1 * s2))


def boundary_action(f: MoebiusMap, lam):
    """Evaluate a Moebius map on the Riemann sphere with infinity handling."""
    if is_infinity(lam):
        if f.c == 0:
            return INFINITY
        return f.a / f.c
    z = complex(lam)
    den = f.c * z + f.d
    if den == 0:
        return INFINITY
    return (f.a * z + f.b) / den


def moebius_point_action(f: MoebiusMap, p: HPoint, tol: Tolerances = DEFAULT_TOLERANCES) -> HPoint:
    """Image of a 2d point under the collineation induced by a real Moebius map.

    Ordinary points travel through the half-plane model, where the induced
    action is the scalar map itself (conjugated for ad - bc < 0, which the
    absolute value of the imaginary part absorbs); asymptotic points use
    the boundary action.
    """
    if not f.is_real:
        raise ValueError("only real Moebius maps act on the hyperbolic plane")
    if p.dim != 2:
        raise ModelDimensionMismatch("point action is available for plane models only")
    if p.is_asymptotic(tol):
        ph = transcribe(p, "ph2")
        lam = INFINITY if ph.at_infinity else complex(ph.coords[0], 0.0)
        return transcribe(embed(boundary_action(f, lam), "ph2"), p.model)
    ph = transcribe(p, "ph2")
    w = complex(ph.coords[0], ph.coords[1])
    image = boundary_action(f, w)
    if is_infinity(image):
        return transcribe(HPoint("ph2", at_infinity=True), p.model)
    return transcribe(HPoint("ph2", (image.real, abs(image.imag))), p.model)


def horo_signed_distance(p: HPoint, anchor_z: int = 1) -> float:
    """Signed distance from the canonical horocycle in bck2, negative inside.

    ``anchor_z=+1`` anchors the horocycle at (0, 1):
    log((1 - z) / sqrt(1 - x^2 - z^2)); ``anchor_z=-1`` uses the mirror
    horocycle at (0, -1): log((1 + z) / sqrt(1 - x^2 - z^2)).
    """
    if p.model != "bck2":
        raise ModelDimensionMismatch("signed horocycle distance is defined on bck2")
    if anchor_z not in (1, -1):
        raise ValueError("anchor_z must be +1 or -1")
    x, z = p.coords
    s2 = 1.0 - x * x - z * z
    if s2 <= 0.0:
        raise OutsideModel("signed horocycle distance needs an interior point")
    return math.log((1.0 - anchor_z * z) / math.sqrt(s2))
