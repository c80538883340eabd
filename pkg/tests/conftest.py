"""Shared generators for randomized tests.

Matrices with a prescribed spectral class are built as unitary conjugates
of upper-triangular forms with eigenvalues kept well clear of the class
boundaries, so tolerance snapping never flips the class under test.
"""

import math

import numpy as np

from shellrange.matrices import MoebiusMap, moebius_apply
from shellrange.spectra import SpectralClass


def random_matrix(rng, scale=1.0):
    re = rng.normal(size=(2, 2))
    im = rng.normal(size=(2, 2))
    return scale * (re + 1j * im) / math.sqrt(2)


def random_unitary(rng):
    z = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _class_eigenvalues(cls, rng):
    def real(lo=0.1):
        return rng.uniform(-2.0, 2.0)

    def imag():
        y = rng.uniform(0.1, 1.5)
        return y if rng.uniform() < 0.5 else -y

    if cls is SpectralClass.REAL_PARABOLIC:
        lam = real()
        return lam, lam
    if cls is SpectralClass.REAL_HYPERBOLIC:
        a = real()
        b = real()
        while abs(a - b) < 0.1:
            b = real()
        return a, b
    if cls is SpectralClass.REAL_ELLIPTIC:
        lam = complex(real(), rng.uniform(0.1, 1.5))
        return lam, np.conj(lam)
    if cls is SpectralClass.NON_REAL_PARABOLIC:
        lam = complex(real(), imag())
        return lam, lam
    if cls is SpectralClass.SEMI_REAL:
        return real(), complex(real(), imag())
    if cls is SpectralClass.QUASI_ELLIPTIC:
        while True:
            l1 = complex(real(), rng.uniform(0.1, 1.5))
            l2 = complex(real(), -rng.uniform(0.1, 1.5))
            if abs(l1 - np.conj(l2)) > 0.1:
                return l1, l2
    if cls is SpectralClass.QUASI_HYPERBOLIC:
        while True:
            y1 = rng.uniform(0.1, 1.5)
            y2 = rng.uniform(0.1, 1.5)
            s = 1.0 if rng.uniform() < 0.5 else -1.0
            l1 = complex(real(), s * y1)
            l2 = complex(real(), s * y2)
            if abs(l1 - l2) > 0.1:
                return l1, l2
    raise ValueError(cls)


def matrix_in_class(cls, normal, rng):
    l1, l2 = _class_eigenvalues(cls, rng)
    t = 0.0 if normal else rng.uniform(0.3, 2.0)
    tri = np.array([[l1, t], [0.0, l2]], dtype=complex)
    u = random_unitary(rng)
    return u @ tri @ u.conj().T


def all_class_pairs():
    """Every (class, normal) combination; all fourteen are realizable."""
    return [(cls, normal) for cls in SpectralClass for normal in (True, False)]


def random_real_moebius(rng, a=None, span=2.0):
    """A real Moebius map, applicable to the matrix when one is given."""
    for _ in range(100):
        co = rng.uniform(-span, span, size=4)
        if abs(co[0] * co[3] - co[1] * co[2]) < 0.3:
            continue
        f = MoebiusMap(*co)
        if a is None:
            return f
        try:
            moebius_apply(f, a)
        except Exception:
            continue
        return f
    raise RuntimeError("could not draw an applicable real Moebius map")


def s_mat(beta):
    return np.array([[0.0, math.cos(beta)], [0.0, 1j * math.sin(beta)]])


def l_mat(alpha, t, sign=1):
    ca, sa = math.cos(alpha), math.sin(alpha)
    return np.array([[ca + 1j * sa, 2.0 * t], [0.0, -ca + sign * 1j * sa]])


def l_t(t):
    return np.array([[1.0, 2.0 * t], [0.0, -1.0]], dtype=complex)
