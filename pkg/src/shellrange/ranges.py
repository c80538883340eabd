"""Closed-form descriptors of the three ranges of a 2x2 complex matrix.

The Davis-Wielandt shell is the image of the Bloch sphere under a 4x4 real
matrix (the moment map), so its boundary quadric is carried by the dual:
``G = M J M^T`` with ``J = diag(1,1,1,-1)`` the self-dual unit sphere.
The conformal range drops the imaginary coordinate, which on the dual side
is a section: delete the second row and column.  Conic algebra happens in
pCK projective coordinates first and is converted to BCK once; dual (line)
coordinates convert by the transpose of the point map.

Foci come from the pencil of the dual conic with the dual absolute
``diag(1,1,-1)``: its unique member that factors into a pair of real lines
with both dual points inside the closed disk yields the foci.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .exceptions import InternalConsistencyError, NoRealLinePair, WrongCase
from .hyperbolic import HPoint, dist, embed, horo_signed_distance, moebius_point_action, transcribe
from .matrices import MoebiusMap, as_matrix, frob, operator_norm, trace_det
from .spectra import (
    SpectralClass,
    characteristic_values,
    classify,
    eigenvalues,
    invariants,
    semi_axes,
    triple_ratio,
)

J4 = np.diag([1.0, 1.0, 1.0, -1.0])
G0_DUAL = np.diag([1.0, 1.0, -1.0])

# 2d projective point maps between the models (eq. pairs are inverse up to scale)
P2_BCK_TO_PCK = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 1.0], [0.0, -1.0, 1.0]])
Q2_PCK_TO_BCK = np.array([[2.0, 0.0, 0.0], [0.0, 1.0, -1.0], [0.0, 1.0, 1.0]])
# 3d versions: (x, y, z, w)_bck -> (x, y, z + w, w - z)_pck
P4_BCK_TO_PCK = np.array(
    [[1.0, 0, 0, 0], [0, 1.0, 0, 0], [0, 0, 1.0, 1.0], [0, 0, -1.0, 1.0]]
)

SHELL_CASES = ("point", "line", "horosphere", "tube")
RANGE_CASES = (
    "point-ordinary",
    "segment",
    "closed-line",
    "closed-half-line",
    "point-asymptotic",
    "circle",
    "proper-ellipse",
    "distance-band",
    "elliptic-parabola",
    "horodisk",
)

_SINGLE_FOCUS_CASES = {"point-ordinary", "point-asymptotic", "circle", "horodisk"}

_RANGE_CASE_TABLE = {
    (SpectralClass.REAL_PARABOLIC, True): "point-asymptotic",
    (SpectralClass.REAL_PARABOLIC, False): "horodisk",
    (SpectralClass.REAL_HYPERBOLIC, True): "closed-line",
    (SpectralClass.REAL_HYPERBOLIC, False): "distance-band",
    (SpectralClass.SEMI_REAL, True): "closed-half-line",
    (SpectralClass.SEMI_REAL, False): "elliptic-parabola",
    (SpectralClass.REAL_ELLIPTIC, True): "point-ordinary",
    (SpectralClass.REAL_ELLIPTIC, False): "circle",
    (SpectralClass.NON_REAL_PARABOLIC, True): "point-ordinary",
    (SpectralClass.NON_REAL_PARABOLIC, False): "circle",
    (SpectralClass.QUASI_ELLIPTIC, True): "segment",
    (SpectralClass.QUASI_ELLIPTIC, False): "proper-ellipse",
    (SpectralClass.QUASI_HYPERBOLIC, True): "segment",
    (SpectralClass.QUASI_HYPERBOLIC, False): "proper-ellipse",
}


@dataclass(frozen=True)
class DualQuadric:
    g: np.ndarray  # symmetric 4x4, pCK projective dual coordinates
    rank: int


@dataclass(frozen=True)
class ConicBCK:
    gc: np.ndarray  # symmetric 3x3 dual conic, BCK projective coordinates
    rank: int
    primal: np.ndarray | None  # unit Frobenius, negative on the interior; rank 3 only


@dataclass(frozen=True)
class ShellDescriptor:
    case: str
    asymptotic_points: tuple[complex, ...]  # eigenvalues, deduplicated
    radius: float
    touch_height: float  # squared operator norm (pCK scale)
    dual_quadric: DualQuadric


@dataclass(frozen=True)
class RangeDescriptor:
    case: str
    foci: tuple[HPoint, ...]  # h-eigenpoints in bck2, ordinary or asymptotic
    s_plus: float
    s_minus: float
    s_focal: float
    chi_plus: float
    chi_minus: float
    chi_e: float
    vertex: HPoint | None  # elliptic parabola only
    conic: ConicBCK
    touch_height: float  # squared operator norm (pCK scale)


@dataclass(frozen=True)
class NumericalRangeDescriptor:
    foci: tuple[complex, complex]  # the eigenvalues
    s_plus: float  # Euclidean semi-axes sqrt((U +- |D|)/2)
    s_minus: float
    s_focal: float  # sqrt(|D|)


def _form_coeffs(b: np.ndarray) -> np.ndarray:
    # coefficients of <Bx, x> in the Klein coordinates
    # (p, q, r, s) = (2 Re z2 conj(z1), 2 Im z2 conj(z1), |z2|^2 - |z1|^2, |z2|^2 + |z1|^2)
    return np.array(
        [
            (b[0, 1] + b[1, 0]) / 2,
            1j * (b[0, 1] - b[1, 0]) / 2,
            (b[1, 1] - b[0, 0]) / 2,
            (b[0, 0] + b[1, 1]) / 2,
        ]
    )


def moment_map(a) -> np.ndarray:
    """The real 4x4 matrix taking Klein coordinates of a unit state to shell data.

    M @ (p, q, r, s) = (Re<Ax,x>, Im<Ax,x>, <Ax,Ax>, <x,x>) for every state
    x = z1 e1 + z2 e2; the last row is (0, 0, 0, 1).
    """
    m = as_matrix(a)
    ca = _form_coeffs(m)
    cb = _form_coeffs(m.conj().T @ m)
    return np.array([ca.real, ca.imag, cb.real, [0.0, 0.0, 0.0, 1.0]])


def _numerical_rank(mat: np.ndarray, rel: float) -> int:
    s = np.linalg.svd(mat, compute_uv=False)
    if s[0] <= 0.0:
        return 0
    return int(np.sum(s > rel * s[0]))


def _is_normal_inv(inv) -> bool:
    return inv.u == inv.abs_d


def shell_dual_quadric(a, tol: Tolerances = DEFAULT_TOLERANCES) -> DualQuadric:
    """Dual quadric of the shell boundary, G = M J M^T in pCK dual coordinates."""
    m = as_matrix(a)
    mm = moment_map(m)
    g = mm @ J4 @ mm.T
    g = (g + g.T) / 2
    if _is_normal_inv(invariants(m, tol=tol)):
        rank = min(_numerical_rank(g, tol.identity), 3)
    else:
        rank = 4  # M is invertible exactly when A is non-normal
    return DualQuadric(g=g, rank=rank)


def shell_primal_bck(dq: DualQuadric) -> np.ndarray | None:
    """Point quadric of the shell boundary in BCK projective coordinates, unit Frobenius."""
    if dq.rank < 4:
        return None
    q_pck = np.linalg.inv(dq.g)
    q_bck = P4_BCK_TO_PCK.T @ q_pck @ P4_BCK_TO_PCK
    q_bck = (q_bck + q_bck.T) / 2
    return q_bck / np.linalg.norm(q_bck)


def _pck_center_bck(mm: np.ndarray) -> np.ndarray:
    # image of the ball center (0,0,0,1); strictly interior for non-normal a
    x_p, z_p = mm[0, 3], mm[2, 3]
    return np.array([2 * x_p / (z_p + 1.0), (z_p - 1.0) / (z_p + 1.0), 1.0])


def _adjugate3(m: np.ndarray) -> np.ndarray:
    c = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            minor = np.delete(np.delete(m, i, axis=0), j, axis=1)
            c[i, j] = ((-1) ** (i + j)) * (minor[0, 0] * minor[1, 1] - minor[0, 1] * minor[1, 0])
    return c.T


def conformal_dual_conic(a, tol: Tolerances = DEFAULT_TOLERANCES) -> ConicBCK:
    """Dual conic of the conformal-range boundary in BCK projective coordinates.

    Deletes the imaginary row and column of the shell dual quadric (a dual
    section realizes the projection) and converts dual coordinates with the
    pCK-to-BCK point map.  The primal boundary conic is the scaled adjugate,
    sign-normalized to be negative on the interior, and is present exactly
    in the non-normal (rank 3) case.
    """
    m = as_matrix(a)
    dq = shell_dual_quadric(m, tol=tol)
    gp = np.delete(np.delete(dq.g, 1, axis=0), 1, axis=1)
    gc = Q2_PCK_TO_BCK @ gp @ Q2_PCK_TO_BCK.T
    gc = (gc + gc.T) / 2
    if _is_normal_inv(invariants(m, tol=tol)):
        return ConicBCK(gc=gc, rank=min(_numerical_rank(gc, tol.identity), 2), primal=None)
    primal = _adjugate3(gc)
    primal = primal / np.linalg.norm(primal)
    ref = _pck_center_bck(moment_map(m))
    if ref @ primal @ ref > 0.0:
        primal = -primal
    return ConicBCK(gc=gc, rank=3, primal=primal)


def _cubic_real_roots(c3: float, c2: float, c1: float, c0: float) -> list[float]:
    """Real roots of a cubic, Cardano with the trigonometric branch, Newton-polished."""
    a, b, c = c2 / c3, c1 / c3, c0 / c3
    p = b - a * a / 3.0
    q = c - a * b / 3.0 + 2.0 * a ** 3 / 27.0
    scale = max(abs(p) ** 1.5, abs(q), 1e-300)
    roots: list[float]
    if abs(p) ** 1.5 <= 1e-12 * scale and abs(q) <= 1e-12 * scale:
        roots = [0.0]
    elif p == 0.0:
        roots = [-math.copysign(abs(q) ** (1.0 / 3.0), q)]
    elif p < 0.0:
        arg = 3.0 * q / (2.0 * p) * math.sqrt(-3.0 / p)
        if abs(arg) <= 1.0:
            theta = math.acos(arg)
            r = 2.0 * math.sqrt(-p / 3.0)
            roots = [r * math.cos(theta / 3.0 - 2.0 * math.pi * k / 3.0) for k in range(3)]
        else:
            t = -math.copysign(2.0 * math.sqrt(-p / 3.0), q) * math.cosh(
                math.acosh(abs(arg)) / 3.0
            )
            roots = [t]
    else:
        t = -2.0 * math.copysign(math.sqrt(p / 3.0), q) * math.sinh(
            math.asinh(3.0 * q / (2.0 * p) * math.sqrt(3.0 / p)) / 3.0
        )
        roots = [t]

    def poly(x):
        return ((c3 * x + c2) * x + c1) * x + c0

    def dpoly(x):
        return (3.0 * c3 * x + 2.0 * c2) * x + c1

    polished = []
    for y in roots:
        x = y - a / 3.0
        for _ in range(3):
            d = dpoly(x)
            if d != 0.0:
                x = x - poly(x) / d
        polished.append(x)
    # critical and inflection points of the cubic: double (triple) roots split
    # by O(eps^(1/2)) (O(eps^(1/3))) under rounding, whereas the derivatives
    # still locate them to full precision
    disc = c2 * c2 - 3.0 * c3 * c1
    if disc >= 0.0:
        rd = math.sqrt(disc)
        polished.append((-c2 + rd) / (3.0 * c3))
        polished.append((-c2 - rd) / (3.0 * c3))
    polished.append(-c2 / (3.0 * c3))
    # deduplicate
    out: list[float] = []
    span = 1.0 + max(abs(x) for x in polished)
    for x in sorted(polished):
        if not out or abs(x - out[-1]) > 1e-12 * span:
            out.append(x)
    return out


def _pencil_roots(gc: np.ndarray) -> list[float]:
    # det(gc + lam * G0) as a cubic in lam, with G0 = diag(1, 1, -1)
    adj = _adjugate3(gc)
    c3 = -1.0
    c2 = gc[2, 2] - gc[1, 1] - gc[0, 0]
    c1 = adj[0, 0] + adj[1, 1] - adj[2, 2]
    c0 = float(np.linalg.det(gc))
    return _cubic_real_roots(c3, c2, c1, c0)


def _split_lines(s: np.ndarray, degeneracy: float) -> tuple[np.ndarray, np.ndarray] | None:
    """Factor a degenerate symmetric form into two real lines, or None.

    Candidates that are not actually degenerate (smallest eigenvalue above
    the degeneracy threshold) are rejected, as are members of
    imaginary-pair signature.
    """
    w, v = np.linalg.eigh(s)
    order = np.argsort(-np.abs(w))
    w, v = w[order], v[:, order]
    if abs(w[0]) == 0.0:
        return None
    if abs(w[2]) > degeneracy * abs(w[0]):
        return None
    if abs(w[1]) <= 1e-12 * abs(w[0]):
        line = v[:, 0]
        return line, line
    if w[0] * w[1] > 0.0:
        return None
    pos, neg = (0, 1) if w[0] > 0 else (1, 0)
    va = math.sqrt(w[pos]) * v[:, pos]
    vb = math.sqrt(-w[neg]) * v[:, neg]
    return va + vb, va - vb


def _line_to_point(line: np.ndarray) -> np.ndarray | None:
    # dual points of the focal line pair lie in the closed disk; the slack
    # absorbs splitting noise of boundary foci before projecting them back
    u, v, m = line
    if abs(m) <= 1e-12 * np.linalg.norm(line):
        return None
    p = np.array([u / m, v / m])
    n2 = p @ p
    if n2 > (1.0 + 1e-2) ** 2:
        return None
    if n2 > 1.0:
        p = p / math.sqrt(n2)
    return p


def extract_foci(conic: ConicBCK, tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[HPoint, HPoint]:
    """Foci of a rank-3 boundary conic from the pencil with the dual absolute.

    Scans the real roots of det(Gc + lam * diag(1,1,-1)) for the member that
    factors into two real lines whose dual points lie in the closed disk;
    those points are the foci.
    """
    if conic.rank != 3:
        raise WrongCase("focus extraction needs the rank-3 (non-normal) dual conic")
    gc = conic.gc / np.linalg.norm(conic.gc)
    roots = _pencil_roots(gc)

    def scan(candidates, degeneracy):
        found, found_mid = None, math.inf
        for lam in candidates:
            s = gc + lam * G0_DUAL
            lines = _split_lines(s, degeneracy)
            if lines is None:
                continue
            pts = [_line_to_point(line) for line in lines]
            if any(p is None for p in pts):
                continue
            w = np.sort(np.abs(np.linalg.eigvalsh(s)))
            if w[1] < found_mid:
                found_mid = w[1]
                found = pts
        return found

    # deflated refinement: clustered pencil roots are ill-conditioned for the
    # cubic, but after projecting out the dominant eigendirection the
    # remaining 2x2 pencil locates them to near machine precision
    refined = []
    for lam in roots:
        for _ in range(3):
            w, v = np.linalg.eigh(gc + lam * G0_DUAL)
            order = np.argsort(-np.abs(w))
            vv = v[:, order[1:]]
            b = vv.T @ gc @ vv
            c = vv.T @ G0_DUAL @ vv
            qa = c[0, 0] * c[1, 1] - c[0, 1] * c[1, 0]
            qb = b[0, 0] * c[1, 1] + c[0, 0] * b[1, 1] - 2.0 * b[0, 1] * c[0, 1]
            qc = b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0]
            disc = qb * qb - 4.0 * qa * qc
            if disc < 0.0 or qa == 0.0:
                break
            rd = math.sqrt(disc)
            cands = ((-qb + rd) / (2.0 * qa), (-qb - rd) / (2.0 * qa))
            lam = min(cands, key=lambda x: abs(x - lam))
        refined.append(lam)

    best = scan(roots + refined, 1e-7)
    if best is None:
        best = scan(roots + refined, 1e-3)
    if best is None:
        # last resort: a conic whose focal pair is below numerical resolution
        # (nearly coincident pencil roots with noise-flipped signature) is
        # treated as its double-line limit, merging the foci
        best_mid = math.inf
        for lam in roots + refined:
            w, v = np.linalg.eigh(gc + lam * G0_DUAL)
            order = np.argsort(-np.abs(w))
            w = w[order]
            if abs(w[2]) > 1e-3 * abs(w[0]) or abs(w[1]) > 1e-3 * abs(w[0]):
                continue
            pt = _line_to_point(v[:, order[0]])
            if pt is not None and abs(w[1]) < best_mid:
                best_mid = abs(w[1])
                best = [pt, pt]
    if best is None:
        raise NoRealLinePair("no pencil member factors into real lines inside the disk")
    pts = sorted((tuple(p) for p in best), reverse=True)
    return HPoint("bck2", pts[0]), HPoint("bck2", pts[1])


def dw_shell(a, tol: Tolerances = DEFAULT_TOLERANCES) -> ShellDescriptor:
    """Four-case description of the Davis-Wielandt shell.

    The hyperbolic tube radius is arcosh(U/|D|)/2 with the conventions
    0/0 -> 0 and positive/0 -> +inf; the shell touches the plane
    z_pck = ||A||^2 from below.
    """
    m = as_matrix(a)
    inv = invariants(m, tol=tol)
    normal = _is_normal_inv(inv)
    l1, l2 = eigenvalues(m)
    cls = classify(m, tol=tol)
    equal = cls in (SpectralClass.REAL_PARABOLIC, SpectralClass.NON_REAL_PARABOLIC)
    if normal:
        case = "point" if equal else "line"
        radius = 0.0
    elif equal:
        case, radius = "horosphere", math.inf
    else:
        case = "tube"
        radius = 0.5 * math.acosh(max(inv.u / inv.abs_d, 1.0))
    points = (l1,) if equal else (l1, l2)
    return ShellDescriptor(
        case=case,
        asymptotic_points=points,
        radius=radius,
        touch_height=operator_norm(m) ** 2,
        dual_quadric=shell_dual_quadric(m, tol=tol),
    )


def _parabola_vertex(primal: np.ndarray, asym: HPoint, ordinary: HPoint) -> HPoint:
    # second intersection of the conic with the chord through the two foci;
    # the first intersection is the asymptotic focus itself
    p0 = np.array(asym.coords)
    d = np.array(ordinary.coords) - p0
    a2 = primal[:2, :2]
    b = primal[:2, 2]
    qa = d @ a2 @ d
    qb = 2.0 * (p0 @ a2 @ d + b @ d)
    if qa == 0.0:
        raise InternalConsistencyError("degenerate chord-conic intersection")
    return HPoint("bck2", tuple(p0 - (qb / qa) * d))


def _foci_pencil_residual(gc: np.ndarray, foci) -> float:
    """Relative defect of gc + lam*G0 = mu * (line pair spanned by the foci).

    Solving the 3x3 symmetric identity for (lam, mu) by least squares
    validates the focus structure without the ill-conditioned extraction
    inverse: the residual vanishes exactly when the embedded eigenpoints
    are the foci of the conic.
    """
    pts = [np.array(p.coords) for p in foci]
    if len(pts) == 1:
        pts = pts * 2
    l1 = np.array([pts[0][0], pts[0][1], 1.0])
    l2 = np.array([pts[1][0], pts[1][1], 1.0])
    pair = np.outer(l1, l2) + np.outer(l2, l1)
    gn = gc / np.linalg.norm(gc)
    design = np.stack([G0_DUAL.ravel(), -pair.ravel()], axis=1)
    coeffs, *_ = np.linalg.lstsq(design, -gn.ravel(), rcond=None)
    return float(np.linalg.norm(gn + coeffs[0] * G0_DUAL - coeffs[1] * pair))


def conformal_range(a, tol: Tolerances = DEFAULT_TOLERANCES) -> RangeDescriptor:
    """Ten-case description of the conformal range in the BCK disk.

    Foci are the embedded eigenvalues (h-eigenpoints); the semi-axes come
    from the invariant formulas, the boundary conic from the projected dual
    quadric.  In non-normal cases the pencil-extracted foci are checked
    against the embedded eigenpoints.
    """
    m = as_matrix(a)
    inv = invariants(m, tol=tol)
    normal = _is_normal_inv(inv)
    cls = classify(m, tol=tol)
    case = _RANGE_CASE_TABLE[(cls, normal)]
    l1, l2 = eigenvalues(m)
    conic = conformal_dual_conic(m, tol=tol)
    s_plus, s_minus, s_focal = semi_axes(m, tol=tol)
    cv = characteristic_values(triple_ratio(m, tol=tol))
    f1, f2 = embed(l1, "bck2"), embed(l2, "bck2")
    foci = (f1,) if case in _SINGLE_FOCUS_CASES else (f1, f2)
    vertex = None
    if case == "elliptic-parabola":
        asym, ordinary = (f1, f2) if f1.is_asymptotic(tol) else (f2, f1)
        vertex = _parabola_vertex(conic.primal, asym, ordinary)
    if not normal:
        # redundant validation of the conic pipeline: the dual pencil must
        # contain the pair of lines spanned by the embedded eigenpoints.
        # Snapped double eigenvalues are themselves fuzzy to the snapping
        # width, hence the looser bound for merged foci.
        residual = _foci_pencil_residual(conic.gc, foci)
        if residual > (1e-8 if len(foci) > 1 else 1e-6):
            raise InternalConsistencyError(
                "the dual pencil does not contain the embedded eigenpoint line pair "
                f"(residual {residual:.3e})"
            )
    return RangeDescriptor(
        case=case,
        foci=foci,
        s_plus=s_plus,
        s_minus=s_minus,
        s_focal=s_focal,
        chi_plus=cv.chi_plus,
        chi_minus=cv.chi_minus,
        chi_e=cv.chi_e,
        vertex=vertex,
        conic=conic,
        touch_height=operator_norm(m) ** 2,
    )


def numerical_range(a, tol: Tolerances = DEFAULT_TOLERANCES) -> NumericalRangeDescriptor:
    """Elliptical-range data of W(A): eigenvalue foci and Euclidean semi-axes."""
    m = as_matrix(a)
    inv = invariants(m, tol=tol)
    l1, l2 = eigenvalues(m)
    return NumericalRangeDescriptor(
        foci=(l1, l2),
        s_plus=math.sqrt((inv.u + inv.abs_d) / 2.0),
        s_minus=math.sqrt(max(inv.u - inv.abs_d, 0.0) / 2.0),
        s_focal=math.sqrt(inv.abs_d),
    )


def touch_height_bck(touch_height: float) -> float:
    """The touching line height in BCK coordinates, (h - 1)/(h + 1) for h = ||A||^2."""
    return (touch_height - 1.0) / (touch_height + 1.0)


_ELLIPSE_CASES = {"point-ordinary", "segment", "circle", "proper-ellipse"}


def ellipse_membership(d: RangeDescriptor, p: HPoint, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Signed defect dist(p, F1) + dist(p, F2) - 2 s_plus; nonpositive inside."""
    if d.case not in _ELLIPSE_CASES:
        raise WrongCase(f"ellipse membership does not apply to case {d.case!r}")
    if p.model != "bck2":
        raise WrongCase("membership tests expect bck2 points")
    f1 = d.foci[0]
    f2 = d.foci[1] if len(d.foci) > 1 else d.foci[0]
    return dist(p, f1, tol) + dist(p, f2, tol) - 2.0 * d.s_plus


def _real_eigenvalue_of_boundary_point(p: HPoint) -> float:
    x, z = p.coords
    return x / (1.0 - z)


def parabola_membership(d: RangeDescriptor, p: HPoint, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Signed defect dist(p, F) + d_C(p) for the elliptic parabola; nonpositive inside.

    The asymptotic focus is moved to (0, -1) by a real Moebius shift; there
    the signed horocycle distance d_C(x) = d0(x) + d0(F) - 2 d0(V) is exact,
    with d0 the mirrored canonical horocycle distance.
    """
    if d.case != "elliptic-parabola":
        raise WrongCase(f"parabola membership does not apply to case {d.case!r}")
    if p.model != "bck2":
        raise WrongCase("membership tests expect bck2 points")
    f1, f2 = d.foci
    asym, ordinary = (f1, f2) if f1.is_asymptotic(tol) else (f2, f1)
    lam0 = _real_eigenvalue_of_boundary_point(asym)
    shift = MoebiusMap(1.0, -lam0, 0.0, 1.0)
    pp = moebius_point_action(shift, p, tol)
    ff = moebius_point_action(shift, ordinary, tol)
    vv = moebius_point_action(shift, d.vertex, tol)
    d0p = horo_signed_distance(pp, anchor_z=-1)
    d0f = horo_signed_distance(ff, anchor_z=-1)
    d0v = horo_signed_distance(vv, anchor_z=-1)
    return dist(pp, ff, tol) + d0p + d0f - 2.0 * d0v


def ellipse_geometry(primal: np.ndarray):
    """Euclidean center, semi-axis lengths and axis directions of the boundary ellipse.

    Returns (center, (a, b), (va, vb)) with a >= b.
    """
    a2 = primal[:2, :2]
    b = primal[:2, 2]
    c = primal[2, 2]
    center = np.linalg.solve(a2, -b)
    k = c + b @ center  # value at the center
    w, v = np.linalg.eigh(a2)
    radii = np.sqrt(np.maximum(-k / w, 0.0))
    order = np.argsort(-radii)
    radii = radii[order]
    vecs = v[:, order]
    return center, (float(radii[0]), float(radii[1])), (vecs[:, 0], vecs[:, 1])


def boundary_polyline(d: RangeDescriptor, n: int, model: str,
                      tol: Tolerances = DEFAULT_TOLERANCES) -> list[HPoint]:
    """n points tracing the boundary, transcribed to the requested model.

    Conic cases parametrize the boundary ellipse starting on the major axis;
    segment-like cases interpolate the endpoints linearly in BCK (h-lines
    are chords there).  Points are clipped to the closed unit disk.
    """
    if n < 8:
        raise ValueError("polyline needs at least 8 points")
    if d.case in ("point-ordinary", "point-asymptotic"):
        raise WrongCase("point descriptors have no one-dimensional boundary")
    pts: list[np.ndarray] = []
    if d.case in ("segment", "closed-line", "closed-half-line"):
        p0 = np.array(d.foci[0].coords)
        p1 = np.array(d.foci[1].coords)
        for s in np.linspace(0.0, 1.0, n):
            pts.append(p0 + s * (p1 - p0))
    else:
        center, (ra, rb), (va, vb) = ellipse_geometry(d.conic.primal)
        for theta in np.linspace(0.0, 2.0 * math.pi, n, endpoint=False):
            pts.append(center + ra * math.cos(theta) * va + rb * math.sin(theta) * vb)
    out = []
    for p in pts:
        n2 = float(p @ p)
        if n2 > 1.0:
            p = p / math.sqrt(n2)
        out.append(transcribe(HPoint("bck2", tuple(p)), model, tol))
    return out
