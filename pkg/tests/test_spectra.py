import math

import numpy as np
import pytest

from shellrange.hyperbolic import dist, embed
from shellrange.matrices import moebius_apply
from shellrange.spectra import (
    SpectralClass,
    TripleRatio,
    canonical_matrix,
    canonical_representative,
    characteristic_values,
    classify,
    eigendistance,
    eigenvalues,
    invariants,
    semi_axes,
    triple_ratio,
)

from conftest import (
    all_class_pairs,
    l_mat,
    l_t,
    matrix_in_class,
    random_matrix,
    random_real_moebius,
    random_unitary,
    s_mat,
)


def test_invariants_canonical_values():
    inv = invariants(l_t(1.0))  # [[1, 2], [0, -1]]
    assert (inv.u, inv.abs_d) == (3.0, 1.0)
    inv = invariants([[0, 1], [0, 0]])
    assert (inv.u, inv.abs_d, inv.e) == (0.5, 0.0, 0.0)
    inv = invariants(s_mat(math.pi / 3))
    assert abs(inv.u - 5 / 16) < 1e-15
    assert abs(inv.abs_d - 3 / 16) < 1e-15
    assert abs(inv.e - 3 / 16) < 1e-15


def test_invariants_l_family_parametric():
    # U = 2t^2 + cos^2 a, |D| = cos^2 a, E = 1 for the + sign;
    # U = 2t^2 + 1, |D| = 1, E = cos^2 a for the - sign
    for alpha in (0.3, 1.0, 1.5):
        for t in (0.0, 0.7, 2.0):
            ca2 = math.cos(alpha) ** 2
            inv = invariants(l_mat(alpha, t, +1))
            assert abs(inv.u - (2 * t * t + ca2)) < 1e-12
            assert abs(inv.abs_d - ca2) < 1e-12
            assert abs(inv.e - 1.0) < 1e-12
            inv = invariants(l_mat(alpha, t, -1))
            assert abs(inv.u - (2 * t * t + 1)) < 1e-12
            assert abs(inv.abs_d - 1.0) < 1e-12
            assert abs(inv.e - ca2) < 1e-12


def test_eigenvalues_examples():
    assert eigenvalues(np.diag([2.0, 3.0j])) == (2.0, 3.0j)
    l1, l2 = eigenvalues([[1j, 2], [0, -1j]])
    assert l1 == 1j and l2 == -1j


def test_eigenvalues_characteristic_residual():
    rng = np.random.default_rng(4)
    for _ in range(2000):
        a = random_matrix(rng)
        tr = np.trace(a)
        det = np.linalg.det(a)
        for lam in eigenvalues(a):
            assert abs(lam * lam - tr * lam + det) <= 1e-10 * (1 + abs(lam)) ** 2


def test_classify_examples():
    assert classify([[0, 1], [0, 0]]) is SpectralClass.REAL_PARABOLIC
    assert classify([[1j, 2], [0, -1j]]) is SpectralClass.REAL_ELLIPTIC
    assert classify(s_mat(math.pi / 4)) is SpectralClass.SEMI_REAL


@pytest.mark.parametrize("cls,normal", all_class_pairs())
def test_classify_constructed_matrices(cls, normal):
    rng = np.random.default_rng(hash((cls.value, normal)) % 2**32)
    for _ in range(25):
        a = matrix_in_class(cls, normal, rng)
        assert classify(a) is cls


def test_classify_exact_mode():
    # gap below the snap threshold but large enough that the discriminant
    # resolves it in double precision
    gap = 1e-7
    a = np.diag([1.0, 1.0 + gap]).astype(complex)
    assert classify(a) is SpectralClass.REAL_PARABOLIC  # snapped
    assert classify(a, exact=True) is SpectralClass.REAL_HYPERBOLIC


def test_classify_real_moebius_invariance():
    rng = np.random.default_rng(17)
    for cls, normal in all_class_pairs():
        for _ in range(10):
            a = matrix_in_class(cls, normal, rng)
            f = random_real_moebius(rng, a)
            assert classify(moebius_apply(f, a)) is cls


def test_unitary_invariance_of_invariants():
    rng = np.random.default_rng(3)
    for _ in range(500):
        a = random_matrix(rng)
        u = random_unitary(rng)
        ia = invariants(a)
        ib = invariants(u @ a @ u.conj().T)
        scale = 1.0 + np.linalg.norm(a) ** 2
        assert abs(ia.u - ib.u) <= 1e-10 * scale
        assert abs(ia.abs_d - ib.abs_d) <= 1e-10 * scale
        assert abs(ia.e - ib.e) <= 1e-10 * scale


def test_complex_moebius_invariance_of_ud_ratio():
    rng = np.random.default_rng(19)
    count = 0
    while count < 300:
        a = random_matrix(rng)
        co = rng.normal(size=4) + 1j * rng.normal(size=4)
        if abs(co[0] * co[3] - co[1] * co[2]) < 0.3:
            continue
        from shellrange.matrices import MoebiusMap, SingularDenominator

        f = MoebiusMap(*co)
        try:
            b = moebius_apply(f, a)
        except SingularDenominator:
            continue
        count += 1
        ia, ib = invariants(a), invariants(b)
        lhs = ib.u * ia.abs_d
        rhs = ib.abs_d * ia.u
        assert abs(lhs - rhs) <= 1e-8 * max(abs(lhs), abs(rhs), 1e-12)


def test_real_moebius_invariance_of_ed_ratio():
    rng = np.random.default_rng(23)
    for _ in range(300):
        a = random_matrix(rng)
        f = random_real_moebius(rng, a)
        b = moebius_apply(f, a)
        ia, ib = invariants(a), invariants(b)
        lhs = ib.e * ia.abs_d
        rhs = ib.abs_d * ia.e
        assert abs(lhs - rhs) <= 1e-8 * max(abs(lhs), abs(rhs), 1e-12)


def test_triple_ratio_examples():
    r = triple_ratio([[1j, 2], [0, -1j]])  # {2, 4, 2} -> (1/2, 1/2, 1)
    assert (r.chi1, r.chi2, r.chi3) == (0.5, 0.5, 1.0)
    r = triple_ratio([[0, 1], [0, 0]])  # {1/2, 1/2, 1/2}
    assert (r.chi1, r.chi2, r.chi3) == (1.0, 1.0, 1.0)
    r = triple_ratio(np.zeros((2, 2)))
    assert (r.chi1, r.chi2, r.chi3) == (0.0, 0.0, 0.0)


def test_characteristic_values():
    cv = characteristic_values(TripleRatio(0.5, 0.5, 1.0))
    assert abs(cv.chi_plus - 1 / math.sqrt(2)) < 1e-15
    assert abs(cv.chi_minus - 1 / math.sqrt(2)) < 1e-15
    assert cv.chi_e == 0.0
    assert abs(cv.s_plus - math.atanh(1 / math.sqrt(2))) < 1e-15
    assert cv.s_e == 0.0

    cv = characteristic_values(TripleRatio(0.0, 0.0, 0.0))
    assert cv == (0.0, 0.0, 0.0, 0.0, 0.0, 0.0)

    cv = characteristic_values(TripleRatio(1.0, 1.0, 1.0))
    assert (cv.chi_plus, cv.chi_minus, cv.chi_e) == (1.0, 1.0, 0.0)
    assert cv.s_plus == math.inf and cv.s_minus == math.inf and cv.s_e == 0.0


def test_semi_axes_examples():
    sp, sm, sf = semi_axes(s_mat(math.pi / 3))
    assert abs(sm - 0.5 * math.acosh(5 / 3)) < 1e-15
    assert abs(sm - math.acosh(1 / math.sin(math.pi / 3))) < 1e-12  # same length
    assert sp == math.inf and sf == math.inf

    sp, sm, sf = semi_axes([[1j, 2], [0, -1j]])
    assert abs(sm - 0.5 * math.acosh(3.0)) < 1e-15
    assert abs(sp - sm) < 1e-15
    assert sf == 0.0

    assert semi_axes(np.diag([1.5 + 0.5j] * 2)) == (0.0, 0.0, 0.0)


def test_eigendistance_examples():
    val = eigendistance(l_mat(math.pi / 3, 0.7, -1))
    assert abs(val - math.log(3.0)) < 1e-12  # arcosh(5/3), any t
    assert eigendistance([[0, 1], [0, 0]]) == 0.0
    assert eigendistance(s_mat(math.pi / 4)) == math.inf


def test_eigendistance_matches_half_plane_distance():
    rng = np.random.default_rng(29)
    for cls in (SpectralClass.REAL_ELLIPTIC, SpectralClass.QUASI_ELLIPTIC,
                SpectralClass.QUASI_HYPERBOLIC):
        for _ in range(100):
            a = matrix_in_class(cls, False, rng)
            l1, l2 = eigenvalues(a)
            d = dist(embed(l1, "ph2"), embed(l2, "ph2"))
            assert abs(eigendistance(a) - d) <= 1e-9 * (1 + d)


def test_canonical_representative_examples():
    rep = canonical_representative([[0, 1], [0, 0]])
    assert rep.kind == "s" and rep.beta == 0.0

    rep = canonical_representative([[1j, 2], [0, -1j]])
    assert rep.kind == "l" and rep.sign == -1
    assert abs(rep.alpha - math.pi / 2) < 1e-7
    assert abs(rep.t - 1.0) < 1e-12

    rng = np.random.default_rng(31)
    u = random_unitary(rng)
    conj = u @ s_mat(math.pi / 3) @ u.conj().T
    rep = canonical_representative(conj)
    assert rep.kind == "s"
    assert abs(rep.beta - math.pi / 3) < 1e-9


def test_canonical_representative_round_trip():
    # parameters recovered from the invariants reproduce the same invariants
    rng = np.random.default_rng(37)
    for cls, normal in all_class_pairs():
        for _ in range(10):
            a = matrix_in_class(cls, normal, rng)
            rep = canonical_representative(a)
            b = canonical_matrix(rep)
            ra, rb = triple_ratio(a), triple_ratio(b)
            for x, y in zip((ra.chi1, ra.chi2, ra.chi3), (rb.chi1, rb.chi2, rb.chi3)):
                assert abs(x - y) <= 1e-8
            assert classify(b) is cls


def test_triple_ratio_and_class_separate_representatives():
    # distinct representative parameters give distinct (ratio, class) data
    reps = [
        l_mat(0.4, 0.8, -1),
        l_mat(0.4, 0.8, +1),
        l_mat(0.9, 0.8, -1),
        l_mat(0.4, 1.2, -1),
        s_mat(0.4),
        s_mat(1.1),
        l_t(0.5),
    ]
    seen = []
    for a in reps:
        r = triple_ratio(a)
        key = (classify(a), round(r.chi1, 9), round(r.chi2, 9))
        assert key not in seen
        seen.append(key)
    # the two sign families share the ratio but differ in class
    ra = triple_ratio(l_mat(0.4, 0.8, -1))
    rb = triple_ratio(l_mat(0.4, 0.8, +1))
    assert abs(ra.chi1 - rb.chi1) < 1e-14 and abs(ra.chi2 - rb.chi2) < 1e-14
