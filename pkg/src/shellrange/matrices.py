"""Closed-form arithmetic on 2x2 complex matrices.

Eigenvalues come from the quadratic formula (cancellation-safe), the
unitary triangularization from an explicit kernel vector, and the operator
norm from trace and determinant of A*A.  Matrices are plain (2, 2) complex
numpy arrays throughout the library.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .exceptions import SingularDenominator

EYE2 = np.eye(2, dtype=complex)


def as_matrix(a) -> np.ndarray:
    """Coerce input to a finite 2x2 complex ndarray."""
    m = np.asarray(a, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def frob(a) -> float:
    return float(np.linalg.norm(np.asarray(a)))


def trace_det(m: np.ndarray) -> tuple[complex, complex]:
    tr = m[0, 0] + m[1, 1]
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    return complex(tr), complex(det)


def ordered_roots(m: np.ndarray) -> tuple[complex, complex]:
    """Roots of lambda^2 - tr(A) lambda + det(A), larger (re, im) first.

    Uses cmath.sqrt, i.e. the principal branch: nonnegative real part,
    positive imaginary part on the negative real axis.  The larger-magnitude
    root is computed first and the other recovered from the product, which
    avoids cancellation.
    """
    tr, det = trace_det(m)
    mid = tr / 2
    r = cmath.sqrt(mid * mid - det)
    big = mid + r if abs(mid + r) >= abs(mid - r) else mid - r
    if big == 0:
        l1 = l2 = 0j
    else:
        l1, l2 = big, det / big
    if (l1.real, l1.imag) < (l2.real, l2.imag):
        l1, l2 = l2, l1
    return l1, l2


def schur_form(a, tol: Tolerances = DEFAULT_TOLERANCES):
    """Unitary triangularization with a real nonnegative off-diagonal.

    Returns ``(lambda1, lambda2, t, u)`` where ``u`` is unitary,
    ``u.conj().T @ a @ u`` is upper triangular with diagonal
    ``(lambda1, lambda2)`` and off-diagonal entry ``t >= 0``.
    ``lambda1`` is the eigenvalue with lexicographically larger (re, im).
    """
    m = as_matrix(a)
    l1, l2 = ordered_roots(m)
    k = m - l1 * EYE2
    # kernel candidates, each orthogonal to one row of the singular matrix k
    v1 = np.array([k[0, 1], -k[0, 0]])
    v2 = np.array([k[1, 1], -k[1, 0]])
    v = v1 if np.linalg.norm(v1) >= np.linalg.norm(v2) else v2
    nv = np.linalg.norm(v)
    if nv <= tol.unitary * (1.0 + frob(m)):
        # k vanished: a is a scalar matrix, any basis triangularizes
        v, nv = np.array([1.0 + 0j, 0j]), 1.0
    v = v / nv
    w = np.array([-np.conj(v[1]), np.conj(v[0])])
    t = complex(np.conj(v) @ (m @ w))
    if abs(t) > 0.0:
        w = w * (np.conj(t) / abs(t))
        t = abs(t)
    u = np.column_stack([v, w])
    return l1, l2, float(abs(t)), u


@dataclass(frozen=True)
class MoebiusMap:
    """Fractional linear map lambda -> (a lambda + b) / (c lambda + d)."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        coeffs = tuple(complex(x) for x in (self.a, self.b, self.c, self.d))
        object.__setattr__(self, "a", coeffs[0])
        object.__setattr__(self, "b", coeffs[1])
        object.__setattr__(self, "c", coeffs[2])
        object.__setattr__(self, "d", coeffs[3])
        scale = max(abs(x) for x in coeffs)
        if scale == 0.0 or abs(self.det) <= DEFAULT_TOLERANCES.determinant * scale * scale:
            raise ValueError("Moebius map requires ad - bc != 0")

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    @property
    def is_real(self) -> bool:
        return all(x.imag == 0.0 for x in (self.a, self.b, self.c, self.d))

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def compose(self, other: "MoebiusMap") -> "MoebiusMap":
        """The map 'self after other'."""
        return MoebiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )


IDENTITY_MAP = MoebiusMap(1, 0, 0, 1)


def moebius_apply(f: MoebiusMap, a, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Evaluate f on a matrix: (a A + b I)(c A + d I)^(-1)."""
    m = as_matrix(a)
    num = f.a * m + f.b * EYE2
    den = f.c * m + f.d * EYE2
    det = den[0, 0] * den[1, 1] - den[0, 1] * den[1, 0]
    scale = (abs(f.c) * frob(m) + abs(f.d)) ** 2
    if abs(det) <= tol.determinant * scale:
        raise SingularDenominator(
            f"cA + dI is singular within tolerance (|det| = {abs(det):.3e})"
        )
    inv = np.array([[den[1, 1], -den[0, 1]], [-den[1, 0], den[0, 0]]]) / det
    return num @ inv


def real_double(a) -> np.ndarray:
    """The matrix (A + A*)/2 + i A*A, whose numerical range is the pCK conformal range of A."""
    m = as_matrix(a)
    return (m + m.conj().T) / 2 + 1j * (m.conj().T @ m)


def operator_norm(a) -> float:
    """Largest singular value, from trace and determinant of A*A."""
    m = as_matrix(a)
    b = m.conj().T @ m
    tr = float(np.trace(b).real)
    det = float((b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0]).real)
    half = tr / 2
    gap = math.sqrt(max(half * half - det, 0.0))
    return math.sqrt(max(half + gap, 0.0))


def normality_defect(a) -> float:
    """Frobenius norm of the commutator A*A - AA*; zero exactly for normal A."""
    m = as_matrix(a)
    return frob(m.conj().T @ m - m @ m.conj().T)
