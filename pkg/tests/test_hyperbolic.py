import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shellrange.exceptions import ModelDimensionMismatch, OutsideModel
from shellrange.hyperbolic import (
    HPoint,
    INFINITY,
    boundary_action,
    dist,
    embed,
    horo_signed_distance,
    moebius_point_action,
    transcribe,
)
from shellrange.matrices import MoebiusMap

from conftest import random_real_moebius


def test_embed_examples():
    assert embed(0.0, "bck2").coords == (0.0, -1.0)
    assert embed(1j, "bck2").coords == (0.0, 0.0)
    p = embed(INFINITY, "bck2")
    assert p.coords == (0.0, 1.0) and p.is_asymptotic()
    assert embed(1 + 1j, "pck2").coords == (1.0, 2.0)
    assert embed(1 + 1j, "pck3").coords == (1.0, 1.0, 2.0)
    assert embed(2 - 3j, "ph2").coords == (2.0, 3.0)
    assert embed(INFINITY, "pck2").at_infinity
    assert embed(INFINITY, "ph2").at_infinity


def test_embed_hits_asymptotic_set():
    # 3d embeddings land on the boundary for every value; 2d embeddings only
    # for real values (non-real ones give ordinary h-points)
    rng = np.random.default_rng(2)
    for _ in range(200):
        lam = complex(rng.normal(), rng.normal())
        for model in ("bck3", "pck3"):
            assert embed(lam, model).is_asymptotic()
        for model in ("bck2", "pck2", "ph2"):
            assert not embed(lam, model).is_asymptotic()
            assert embed(lam.real, model).is_asymptotic()


def test_transcribe_examples():
    p = transcribe(HPoint("pck2", (0.0, 1.0)), "bck2")
    assert p.coords == (0.0, 0.0)
    p = transcribe(HPoint("pck3", (0.0, 0.0, 1.0)), "bck3")
    assert p.coords == (0.0, 0.0, 0.0)
    p = transcribe(HPoint("bck2", (0.3, 0.4)), "ph2")
    assert abs(p.coords[0] - 0.5) < 1e-15
    assert abs(p.coords[1] - math.sqrt(0.75) / 0.6) < 1e-15


def test_transcribe_distinguished_points():
    top = HPoint("bck2", (0.0, 1.0))
    assert transcribe(top, "pck2").at_infinity
    assert transcribe(top, "ph2").at_infinity
    assert transcribe(HPoint("pck2", at_infinity=True), "bck2").coords == (0.0, 1.0)
    assert transcribe(HPoint("ph2", at_infinity=True), "bck2").coords == (0.0, 1.0)
    assert transcribe(HPoint("pck3", at_infinity=True), "bck3").coords == (0.0, 0.0, 1.0)


def test_transcribe_round_trips():
    rng = np.random.default_rng(14)
    for _ in range(10_000):
        r = math.sqrt(rng.uniform(0.0, 0.96))
        phi = rng.uniform(0.0, 2 * math.pi)
        p = HPoint("bck2", (r * math.cos(phi), r * math.sin(phi)))
        for target in ("pck2", "ph2"):
            q = transcribe(transcribe(p, target), "bck2")
            assert max(abs(a - b) for a, b in zip(p.coords, q.coords)) <= 1e-12


def test_transcribe_round_trips_3d():
    rng = np.random.default_rng(15)
    for _ in range(2000):
        v = rng.normal(size=3)
        v = v / np.linalg.norm(v) * math.sqrt(rng.uniform(0.0, 0.96))
        p = HPoint("bck3", tuple(v))
        q = transcribe(transcribe(p, "pck3"), "bck3")
        assert max(abs(a - b) for a, b in zip(p.coords, q.coords)) <= 1e-12


def test_transcribe_dimension_mismatch():
    with pytest.raises(ModelDimensionMismatch):
        transcribe(HPoint("bck2", (0.0, 0.0)), "bck3")


def test_dist_examples():
    assert abs(dist(HPoint("bck2", (0, 0)), HPoint("bck2", (0.6, 0))) - math.log(2.0)) < 1e-15
    assert dist(HPoint("ph2", (0, 1)), HPoint("ph2", (0, 1))) == 0.0
    d = dist(HPoint("ph2", (0, 1)), HPoint("ph2", (1, 1)))
    assert abs(d - math.acosh(1.5)) < 1e-15


def test_dist_asymptotic_points():
    a = embed(0.5, "bck2")
    b = HPoint("bck2", (0.0, 0.0))
    assert dist(a, b) == math.inf
    assert dist(a, a) == 0.0
    assert dist(embed(INFINITY, "pck2"), embed(0.0, "pck2")) == math.inf


def test_dist_metric_properties():
    rng = np.random.default_rng(6)
    for _ in range(500):
        pts = []
        for _ in range(3):
            r = math.sqrt(rng.uniform(0.0, 0.9))
            phi = rng.uniform(0.0, 2 * math.pi)
            pts.append(HPoint("bck2", (r * math.cos(phi), r * math.sin(phi))))
        d01 = dist(pts[0], pts[1])
        d10 = dist(pts[1], pts[0])
        assert d01 == d10
        assert d01 <= dist(pts[0], pts[2]) + dist(pts[2], pts[1]) + 1e-10


def test_dist_model_independence():
    rng = np.random.default_rng(9)
    for _ in range(500):
        pts = []
        for _ in range(2):
            r = math.sqrt(rng.uniform(0.0, 0.9))
            phi = rng.uniform(0.0, 2 * math.pi)
            pts.append(HPoint("bck2", (r * math.cos(phi), r * math.sin(phi))))
        d_bck = dist(pts[0], pts[1])
        d_ph = dist(transcribe(pts[0], "ph2"), transcribe(pts[1], "ph2"))
        d_pck = dist(transcribe(pts[0], "pck2"), transcribe(pts[1], "pck2"))
        assert abs(d_bck - d_ph) <= 1e-10 * (1 + d_bck)
        assert abs(d_bck - d_pck) <= 1e-10 * (1 + d_bck)


def test_boundary_action_examples():
    ident = MoebiusMap(1, 0, 0, 1)
    assert boundary_action(ident, 2 - 1j) == 2 - 1j
    inv = MoebiusMap(0, 1, 1, 0)
    assert boundary_action(inv, 0.0) == INFINITY
    f = MoebiusMap(1, -1, 1, 1)
    assert abs(boundary_action(f, 1j) - 1j) < 1e-15


def test_boundary_action_commutes_with_embedding():
    # embed(f(lam)) is the collineation image of embed(lam) for real f
    rng = np.random.default_rng(41)
    for _ in range(300):
        f = random_real_moebius(rng)
        lam = rng.normal()
        p = embed(lam, "bck2")
        q = embed(boundary_action(f, lam), "bck2")
        moved = moebius_point_action(f, p)
        assert max(abs(a - b) for a, b in zip(moved.coords, q.coords)) <= 1e-9


def test_moebius_point_action_is_isometry():
    rng = np.random.default_rng(43)
    for _ in range(300):
        f = random_real_moebius(rng)
        pts = []
        for _ in range(2):
            r = math.sqrt(rng.uniform(0.0, 0.9))
            phi = rng.uniform(0.0, 2 * math.pi)
            pts.append(HPoint("bck2", (r * math.cos(phi), r * math.sin(phi))))
        d0 = dist(pts[0], pts[1])
        d1 = dist(moebius_point_action(f, pts[0]), moebius_point_action(f, pts[1]))
        assert abs(d0 - d1) <= 1e-8 * (1 + d0)


def test_horo_signed_distance_values():
    assert horo_signed_distance(HPoint("bck2", (0.0, 0.0)), anchor_z=-1) == 0.0
    v = horo_signed_distance(HPoint("bck2", (0.0, 0.5)), anchor_z=-1)
    assert abs(v - 0.5 * math.log(3.0)) < 1e-15
    # approaching the anchored asymptotic point the signed distance diverges down
    eps = 1e-10
    v = horo_signed_distance(HPoint("bck2", (0.0, -1.0 + eps)), anchor_z=-1)
    assert v < -10
    assert abs(v - 0.5 * math.log(eps / (2.0 - eps))) < 1e-5


def test_horo_signed_distance_outside():
    with pytest.raises(OutsideModel):
        horo_signed_distance(HPoint("bck2", (1.0, 0.0)))


def test_horo_level_sets_match_horocycle_equation():
    # the level set at value d is the horocycle with parameter c = exp(-2 d)
    for c in (0.25, 1.0, 3.0):
        d = -0.5 * math.log(c)
        for x_ph in (-2.0, 0.0, 0.7, 5.0):
            p = transcribe(HPoint("ph2", (x_ph, math.sqrt(c))), "bck2")
            assert abs(horo_signed_distance(p, anchor_z=1) - d) <= 1e-9 * (1 + abs(d))
            x, z = p.coords
            residual = x * x + z * z - 1.0 + c * (z - 1.0) ** 2
            assert abs(residual) <= 1e-9


@settings(max_examples=100, deadline=None)
@given(st.floats(-0.98, 0.98), st.floats(-0.98, 0.98))
def test_round_trip_hypothesis(x, z):
    if x * x + z * z >= 0.96:
        return
    p = HPoint("bck2", (x, z))
    for target in ("pck2", "ph2"):
        q = transcribe(transcribe(p, target), "bck2")
        assert max(abs(a - b) for a, b in zip(p.coords, q.coords)) <= 1e-12


def test_hpoint_validation():
    with pytest.raises(OutsideModel):
        HPoint("bck2", (1.2, 0.0))
    with pytest.raises(OutsideModel):
        HPoint("pck2", (2.0, 1.0))
    with pytest.raises(OutsideModel):
        HPoint("ph2", (0.0, -1.0))
    with pytest.raises(ModelDimensionMismatch):
        HPoint("bck3", (0.0, 0.0))
    with pytest.raises(ValueError):
        HPoint("bck2", at_infinity=True)
