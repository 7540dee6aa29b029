from __future__ import annotations

import math
import random
import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import simple_mdcc.dispersion as dispersion_module
from simple_mdcc.config import configure_solver
from simple_mdcc.dataset import generate_normal
from simple_mdcc.models import (
    INFINITE,
    CardinalityConstraint,
    ResultVariant,
    SolveMode,
    dispersion_of,
)
from simple_mdcc.dispersion import solve, solve_full, solve_heap
from simple_mdcc.exceptions import CardinalityMismatch
from simple_mdcc.oracle import brute_force_mdcc

from .helpers import grid_points, line_points, normal_points


def test_line_example_full():
    result = solve_full(line_points(0, 1, 3), CardinalityConstraint(2, 1))
    assert result.dispersion == 3.0
    assert result.assignment.groups == (1, 2, 1)
    assert result.iterations_used == 3
    assert result.variant is ResultVariant.FULL_SORT
    assert not result.fallback_triggered


def test_line_example_heap_never_falls_back():
    result = solve_heap(line_points(0, 1, 3), CardinalityConstraint(2, 1))
    assert (result.dispersion, result.assignment.groups) == (3.0, (1, 2, 1))
    assert result.variant is ResultVariant.HEAP_ONLY
    assert not result.fallback_triggered


@pytest.mark.parametrize("solver", [solve_full, solve_heap])
def test_two_points_split_is_infinite(solver):
    result = solver(line_points(0, 4), CardinalityConstraint(1, 1))
    assert result.dispersion == INFINITE
    assert result.is_infinite
    assert result.assignment.groups == (1, 2)


@pytest.mark.parametrize("solver", [solve_full, solve_heap])
def test_identical_points_break_at_first_value(solver):
    result = solver(np.zeros((4, 2)), CardinalityConstraint(2, 2))
    assert result.dispersion == 0.0
    assert result.assignment.groups == (1, 1, 2, 2)
    assert result.iterations_used == 1


def test_degenerate_single_group():
    points = normal_points(12, 2, 4)
    result = solve(points, CardinalityConstraint(0, 12))
    assert result.assignment.groups == (2,) * 12
    assert result.dispersion == dispersion_of(points, result.assignment)
    assert result.dispersion == brute_force_mdcc(points, CardinalityConstraint(0, 12))[0]
    assert solve(points, CardinalityConstraint(12, 0)).assignment.groups == (1,) * 12


def test_degenerate_single_item():
    assert solve(line_points(3), CardinalityConstraint(0, 1)).dispersion == INFINITE


def test_validation_errors_surface():
    with pytest.raises(CardinalityMismatch):
        solve(line_points(0, 1, 3), CardinalityConstraint(2, 2))


def test_auto_dispatches_to_heap():
    rng = random.Random(5)
    for seed in range(20):
        n = rng.randint(2, 60)
        points = normal_points(n, 2, seed)
        c1 = rng.randint(0, n)
        constraint = CardinalityConstraint(c1, n - c1)
        assert solve(points, constraint, SolveMode.AUTO) == solve_heap(points, constraint)
        assert solve(points, constraint, "heap") == solve_heap(points, constraint)
        assert solve(points, constraint, "full") == solve_full(points, constraint)


def test_default_variant_comes_from_config():
    points, constraint = grid_points(3), CardinalityConstraint(5, 4)
    configure_solver(simple_mdcc_default_variant="full")
    assert solve(points, constraint).variant is ResultVariant.FULL_SORT
    configure_solver(simple_mdcc_default_variant="heap")
    assert solve(points, constraint).variant is not ResultVariant.FULL_SORT


def test_lattice_forces_fallback(monkeypatch):
    # 4x4 网格：24 条单位边构成二部图，前 16 条全部可行，heap 不会中断
    calls = []
    original = dispersion_module.all_distances_sorted

    def counting(points):
        calls.append(points.n)
        return original(points)

    points, constraint = grid_points(4), CardinalityConstraint(8, 8)
    full = solve_full(points, constraint)
    monkeypatch.setattr(dispersion_module, "all_distances_sorted", counting)
    heap = solve_heap(points, constraint)

    assert calls == [16]
    assert heap.fallback_triggered
    assert heap.variant is ResultVariant.HEAP_THEN_FALLBACK
    assert heap.dispersion == full.dispersion == math.sqrt(2.0)
    assert heap.assignment == full.assignment
    assert heap.iterations_used == full.iterations_used == 2


def test_oracle_optimality_small_instances():
    rng = random.Random(20240601)
    instances = 0
    while instances < 2000:
        n = rng.randint(2, 12)
        m = rng.choice([1, 2, 3])
        points = generate_normal(n, m, rng.randrange(2**32))
        for c1 in range(n + 1):
            constraint = CardinalityConstraint(c1, n - c1)
            expected, _ = brute_force_mdcc(points, constraint)
            for result in (solve_full(points, constraint), solve_heap(points, constraint)):
                assert result.dispersion == expected, (n, m, c1, result)
                assert result.assignment.respects(constraint)
                assert dispersion_of(points, result.assignment) == expected
            instances += 1


def test_variants_agree_up_to_300_points():
    rng = random.Random(77)
    for seed in range(500):
        n = rng.randint(2, 300)
        points = normal_points(n, rng.choice([1, 2, 3]), seed)
        c1 = rng.randint(0, n)
        constraint = CardinalityConstraint(c1, n - c1)
        full = solve_full(points, constraint)
        heap = solve_heap(points, constraint)
        assert heap.dispersion == full.dispersion, (seed, n, c1)
        assert dispersion_of(points, heap.assignment) == heap.dispersion


def test_variants_agree_bitwise_at_500_points():
    points = normal_points(500, 2, 500)
    constraint = CardinalityConstraint(250, 250)
    assert solve_full(points, constraint).dispersion == solve_heap(points, constraint).dispersion


@settings(max_examples=40, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=2**32 - 1),
    n=st.integers(min_value=2, max_value=30),
    data=st.data(),
)
def test_dispersion_is_invariant_under_relabeling_and_scaling(seed, n, data):
    points = normal_points(n, 2, seed)
    c1 = data.draw(st.integers(min_value=0, max_value=n))
    constraint = CardinalityConstraint(c1, n - c1)
    base = solve(points, constraint).dispersion

    order = np.random.default_rng(seed).permutation(n)
    assert solve(points.data[order], constraint).dispersion == base
    assert solve(points.data * 2.0, constraint).dispersion == base * 2.0
    assert solve(points, constraint.swapped()).dispersion == base


def test_hooks_verify_certificate_and_monotonicity():
    configure_solver(simple_mdcc_verify_certificate=True, simple_mdcc_debug_monotone=True)
    rng = random.Random(3)
    for seed in range(60):
        n = rng.randint(2, 14)
        points = normal_points(n, 2, seed)
        c1 = rng.randint(0, n)
        solve_full(points, CardinalityConstraint(c1, n - c1))
        solve_heap(points, CardinalityConstraint(c1, n - c1))
    solve_heap(grid_points(4), CardinalityConstraint(8, 8))


@pytest.mark.slow
def test_ten_thousand_points_heap_variant(monkeypatch):
    calls = []
    original = dispersion_module.all_distances_sorted

    def counting(points):
        calls.append(points.n)
        return original(points)

    monkeypatch.setattr(dispersion_module, "all_distances_sorted", counting)
    points = generate_normal(10_000, 2, 1)
    started = time.perf_counter()
    result = solve_heap(points, CardinalityConstraint.balanced(10_000))
    elapsed = time.perf_counter() - started

    assert elapsed < 10.0
    if not result.fallback_triggered:
        assert calls == []
    assert result.assignment.respects(CardinalityConstraint.balanced(10_000))
