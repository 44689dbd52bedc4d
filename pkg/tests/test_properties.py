"""Randomised invariants, driven by hypothesis seeds."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grasspack import (
    Packing,
    Subspace,
    chordal_sq,
    distance,
    principal_angles,
    projection,
    random_subspace,
)
from grasspack.optimizer import gradient_chordal

from conftest import random_orthogonal

SHAPES = [(3, 1), (4, 2), (5, 2), (8, 4)]
seeds = st.integers(0, 2**32 - 1)
shapes = st.sampled_from(SHAPES)
metrics = st.sampled_from(["chordal", "geodesic", "maxangle"])
FAST = settings(max_examples=60, deadline=None)


def pair(seed, m, n):
    rng = np.random.default_rng(seed)
    return random_subspace(m, n, rng), random_subspace(m, n, rng), rng


@FAST
@given(seeds, shapes, metrics)
def test_metric_symmetry_is_exact(seed, shape, metric):
    P, Q, _ = pair(seed, *shape)
    assert distance(P, Q, metric) == distance(Q, P, metric)


@FAST
@given(seeds, shapes)
def test_sin_form_matches_projection_form(seed, shape):
    P, Q, _ = pair(seed, *shape)
    half = 0.5 * np.sum((projection(P).mat - projection(Q).mat) ** 2)
    assert abs(chordal_sq(P, Q) - half) <= 1e-10


@FAST
@given(seeds, shapes)
def test_embedding_isometry(seed, shape):
    P, Q, _ = pair(seed, *shape)
    gap = np.linalg.norm(projection(P).embed_vec - projection(Q).embed_vec)
    assert abs(gap - np.sqrt(2) * distance(P, Q)) <= 1e-10


@FAST
@given(seeds, shapes)
def test_sphere_property(seed, shape):
    m, n = shape
    P, _, _ = pair(seed, m, n)
    v = projection(P).embed_vec
    assert abs(v @ v - n * (m - n) / m) <= 1e-10


@FAST
@given(seeds, shapes, metrics)
def test_rotation_invariance(seed, shape, metric):
    P, Q, rng = pair(seed, *shape)
    R = random_orthogonal(shape[0], rng)
    assert abs(distance(P.rotate(R), Q.rotate(R), metric) - distance(P, Q, metric)) <= 1e-9


@FAST
@given(seeds, shapes)
def test_complement_duality(seed, shape):
    P, Q, _ = pair(seed, *shape)
    assert abs(distance(P.complement(), Q.complement()) - distance(P, Q)) <= 1e-9


@FAST
@given(seeds, shapes)
def test_triangle_inequality(seed, shape):
    rng = np.random.default_rng(seed)
    P, Q, S = (random_subspace(*shape, rng) for _ in range(3))
    assert distance(P, S) <= distance(P, Q) + distance(Q, S) + 1e-12


@FAST
@given(seeds, st.floats(0, 1e-7), shapes)
def test_angle_clamp_near_identical(seed, jitter, shape):
    m, n = shape
    P, _, rng = pair(seed, m, n)
    Q = Subspace.from_rows(P.gen + jitter * rng.standard_normal(P.gen.shape))
    for X, Y in ((P, Q), (P, P), (Q, Q)):
        a = principal_angles(X, Y).angles
        assert not np.any(np.isnan(a))
        assert np.all(a >= 0)


def test_clamp_with_cosine_above_one():
    # scaled copy whose singular value is 1 + O(eps) in floating point
    g = np.array([[1.0, 1e-8, 0.0]])
    g /= np.linalg.norm(g)
    P = Subspace(g)
    a = principal_angles(P, P).angles
    assert np.all(np.isfinite(a)) and a[0] == pytest.approx(0.0, abs=1e-7)


def _fd_chordal(A, B, h):
    n = A.shape[0]

    def f(X, Y):
        return n - np.sum((X @ Y.T) ** 2)

    gA = np.zeros_like(A)
    gB = np.zeros_like(B)
    for idx in np.ndindex(A.shape):
        E = np.zeros_like(A)
        E[idx] = h
        gA[idx] = (f(A + E, B) - f(A - E, B)) / (2 * h)
        gB[idx] = (f(A, B + E) - f(A, B - E)) / (2 * h)
    return gA, gB


def test_chordal_gradient_matches_fd():
    rng = np.random.default_rng(7)
    for _ in range(50):
        pk = Packing((random_subspace(5, 2, rng), random_subspace(5, 2, rng)))
        gA, gB = gradient_chordal(pk, (0, 1))
        fA, fB = _fd_chordal(pk[0].gen, pk[1].gen, 1e-6)
        scale = max(np.abs(gA).max(), np.abs(gB).max())
        assert np.abs(gA - fA).max() <= 1e-5 * scale
        assert np.abs(gB - fB).max() <= 1e-5 * scale
