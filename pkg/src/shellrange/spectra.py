"""Scalar invariants, spectral classification and canonical representatives.

Three nonnegative scalars drive every metric formula downstream:

* ``U`` metric discriminant:    tr(A*A)/2 - |tr A|^2 / 4
* ``D`` spectral discriminant:  det A - (tr A)^2 / 4, with |D| = |l1-l2|^2/4
* ``E`` conjugate companion:    (Im tr A / 2)^2 + (|D| - Re D)/2 = |l1 - conj(l2)|^2/4

``U >= |D|`` always, with equality exactly for normal matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .matrices import as_matrix, frob, ordered_roots, trace_det


class SpectralClass(Enum):
    REAL_ELLIPTIC = "real-elliptic"
    REAL_PARABOLIC = "real-parabolic"
    REAL_HYPERBOLIC = "real-hyperbolic"
    NON_REAL_PARABOLIC = "non-real-parabolic"
    SEMI_REAL = "semi-real"
    QUASI_ELLIPTIC = "quasielliptic"
    QUASI_HYPERBOLIC = "quasihyperbolic"


@dataclass(frozen=True)
class Invariants:
    u: float
    d: complex
    abs_d: float
    e: float

    def triple(self) -> tuple[float, float, float]:
        """The raw triple (U - |D|, U + |D|, U - |D| + 2E)."""
        return (self.u - self.abs_d, self.u + self.abs_d, self.u - self.abs_d + 2 * self.e)


@dataclass(frozen=True)
class TripleRatio:
    """Sorted ascending, normalized so the largest entry is 1 (or all zero)."""

    chi1: float
    chi2: float
    chi3: float


@dataclass(frozen=True)
class CanonicalRep:
    """Representative of the matrix class under real Moebius maps and unitary conjugation.

    kind "zero" is the zero matrix; kind "s" is [[0, cos b], [0, i sin b]];
    kind "l" is [[cos a + i sin a, 2t], [0, -cos a + sign * i sin a]].
    For kind "l" with alpha == 0 the sign is normalized to +1.
    """

    kind: str  # "zero" | "s" | "l"
    alpha: float = 0.0
    beta: float = 0.0
    t: float = 0.0
    sign: int = 1


class CharacteristicValues(NamedTuple):
    chi_plus: float
    chi_minus: float
    chi_e: float
    s_plus: float
    s_minus: float
    s_e: float


def invariants(a, tol: Tolerances = DEFAULT_TOLERANCES) -> Invariants:
    """The triple (U, D, E); tiny negative U - |D| and E are clamped to zero."""
    m = as_matrix(a)
    tr, det = trace_det(m)
    u = float(np.trace(m.conj().T @ m).real) / 2 - abs(tr) ** 2 / 4
    d = det - tr * tr / 4
    abs_d = abs(d)
    scale = frob(m) ** 2
    u = max(u, 0.0)
    if abs(u - abs_d) <= tol.identity * scale:
        u = abs_d  # U = |D| characterizes normality; snap within tolerance
    e = (tr.imag / 2) ** 2 + (abs_d - d.real) / 2
    if -tol.identity * scale < e < 0.0:
        e = 0.0
    return Invariants(u=u, d=d, abs_d=abs_d, e=e)


def eigenvalues(a) -> tuple[complex, complex]:
    """Roots of lambda^2 - (tr A) lambda + det A, ordered as in schur_form."""
    return ordered_roots(as_matrix(a))


def is_normal(a, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """Whether U = |D| within tolerance (equivalent to a vanishing commutator)."""
    inv = invariants(a, tol=tol)
    return inv.u == inv.abs_d


# double eigenvalues split by O(sqrt(machine eps) * ||A||) under rounding
# (the discriminant suffers cancellation), so equality detection needs a
# square-root-aware threshold; reality checks have no such amplification
EQUAL_GAP_FACTOR = 1e-7


def classify(a, tol: Tolerances = DEFAULT_TOLERANCES, exact: bool = False) -> SpectralClass:
    """Seven-way spectral classification by eigenvalue reality pattern.

    Near class boundaries the eigenvalues snap to the degenerate class
    (real / parabolic) within ``tol.classify * (1 + ||A||)``; pass
    ``exact=True`` to disable snapping on exactly representable inputs.
    """
    m = as_matrix(a)
    l1, l2 = ordered_roots(m)
    eps = 0.0 if exact else tol.classify * (1.0 + frob(m))
    eps_eq = 0.0 if exact else EQUAL_GAP_FACTOR * (1.0 + frob(m))
    if abs(l1 - l2) <= eps_eq:
        lam = (l1 + l2) / 2
        if abs(lam.imag) <= eps:
            return SpectralClass.REAL_PARABOLIC
        return SpectralClass.NON_REAL_PARABOLIC
    if abs(l1 - np.conj(l2)) <= eps and abs(l1.imag) > eps:
        return SpectralClass.REAL_ELLIPTIC
    real1 = abs(l1.imag) <= eps
    real2 = abs(l2.imag) <= eps
    if real1 and real2:
        return SpectralClass.REAL_HYPERBOLIC
    if real1 or real2:
        return SpectralClass.SEMI_REAL
    if l1.imag * l2.imag < 0:
        return SpectralClass.QUASI_ELLIPTIC
    return SpectralClass.QUASI_HYPERBOLIC


def triple_ratio(a, tol: Tolerances = DEFAULT_TOLERANCES) -> TripleRatio:
    """The unordered ratio {U-|D| : U+|D| : U-|D|+2E}, sorted and scaled to max 1."""
    m = as_matrix(a)
    inv = invariants(m, tol=tol)
    vals = sorted(max(v, 0.0) for v in inv.triple())
    top = vals[2]
    if top <= tol.identity * frob(m) ** 2:
        return TripleRatio(0.0, 0.0, 0.0)
    return TripleRatio(vals[0] / top, vals[1] / top, 1.0)


def _artanh_ext(u: float) -> float:
    if u >= 1.0:
        return math.inf
    return math.atanh(max(u, 0.0))


def characteristic_values(r: TripleRatio) -> CharacteristicValues:
    """Characteristic BCK values and the corresponding hyperbolic lengths.

    chi+ = sqrt(chi2/chi3), chi- = sqrt(chi1/chi3),
    chi_e = sqrt((chi2-chi1)/(chi3-chi1)), with the convention 0/0 = 0;
    each s value is artanh of the matching chi (artanh 1 = +inf).
    """
    def ratio(num, den):
        if den <= 0.0:
            return 0.0
        return math.sqrt(min(max(num / den, 0.0), 1.0))

    chi_plus = ratio(r.chi2, r.chi3)
    chi_minus = ratio(r.chi1, r.chi3)
    chi_e = ratio(r.chi2 - r.chi1, r.chi3 - r.chi1)
    return CharacteristicValues(
        chi_plus, chi_minus, chi_e,
        _artanh_ext(chi_plus), _artanh_ext(chi_minus), _artanh_ext(chi_e),
    )


def _half_arcosh_ratio(num: float, den: float) -> float:
    # hyperbolic length conventions: 0/0 = 1 (length 0), a/0 = +inf
    if den <= 0.0:
        return 0.0 if num <= 0.0 else math.inf
    return 0.5 * math.acosh(max(num / den, 1.0))


def semi_axes(a, tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[float, float, float]:
    """Generalized (s+, s-, sF) of the conformal range in hyperbolic length.

    s- = arcosh((U - |D| + max(E,|D|)) / max(E,|D|)) / 2,
    s+ = arcosh((U + E) / |E - |D||) / 2,
    sF = arcosh((E + |D|) / |E - |D||) / 2,
    with the conventions 0/0 = 1 inside arcosh and a/0 = +inf.
    """
    inv = invariants(a, tol=tol)
    scale = frob(as_matrix(a)) ** 2
    u, d, e = inv.u, inv.abs_d, inv.e
    gap = abs(e - d)
    if gap <= tol.identity * scale:
        gap = 0.0
    s_minus = _half_arcosh_ratio(u - d + max(e, d), max(e, d))
    s_plus = _half_arcosh_ratio(u + e, gap)
    s_focal = _half_arcosh_ratio(e + d, gap)
    return s_plus, s_minus, s_focal


def eigendistance(a, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Hyperbolic distance between the two h-eigenpoints: arcosh|(E+|D|)/(E-|D|)|.

    +inf when E = |D| > 0 (a real eigenvalue with distinct spectrum),
    0 when E = |D| = 0 (a double real eigenvalue).
    """
    inv = invariants(a, tol=tol)
    scale = frob(as_matrix(a)) ** 2
    gap = abs(inv.e - inv.abs_d)
    if gap <= tol.identity * scale:
        return math.inf if inv.e > tol.identity * scale else 0.0
    return math.acosh(max((inv.e + inv.abs_d) / gap, 1.0))


def canonical_representative(a, tol: Tolerances = DEFAULT_TOLERANCES) -> CanonicalRep:
    """Recover the representative parameters from (U, |D|, E) and the spectral class.

    The L(0, t) versus S(beta) ambiguity at equal triple ratios is resolved by
    the class: real-hyperbolic inputs map to L, semi-real and real-parabolic to S.
    """
    cls = classify(a, tol=tol)
    r = triple_ratio(a, tol=tol)
    if r.chi3 == 0.0:
        return CanonicalRep(kind="zero")
    c1, c2 = r.chi1, r.chi2
    if cls is SpectralClass.REAL_PARABOLIC:
        return CanonicalRep(kind="s", beta=0.0)
    if cls is SpectralClass.SEMI_REAL:
        return CanonicalRep(kind="s", beta=math.acos(math.sqrt(min(c1, 1.0))))
    t = math.sqrt(c1 / (1.0 - c1)) if c1 < 1.0 else 0.0
    if cls is SpectralClass.REAL_HYPERBOLIC:
        return CanonicalRep(kind="l", alpha=0.0, t=t, sign=1)
    cos2 = min(max((c2 - c1) / (1.0 - c1), 0.0), 1.0)
    alpha = math.acos(math.sqrt(cos2))
    sign = -1 if cls in (SpectralClass.QUASI_ELLIPTIC, SpectralClass.REAL_ELLIPTIC) else 1
    return CanonicalRep(kind="l", alpha=alpha, t=t, sign=sign)


def canonical_matrix(rep: CanonicalRep) -> np.ndarray:
    """The matrix realizing a canonical representative."""
    if rep.kind == "zero":
        return np.zeros((2, 2), dtype=complex)
    if rep.kind == "s":
        return np.array([[0.0, math.cos(rep.beta)], [0.0, 1j * math.sin(rep.beta)]])
    if rep.kind == "l":
        ca, sa = math.cos(rep.alpha), math.sin(rep.alpha)
        return np.array([[ca + 1j * sa, 2.0 * rep.t], [0.0, -ca + rep.sign * 1j * sa]])
    raise ValueError(f"unknown representative kind {rep.kind!r}")
