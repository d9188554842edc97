"""Inverse oracle: known decisions, region geometry, witness contracts,
and agreement with the brute-force lattice scan."""

import math

import numpy as np
import pytest

from trigame import (
    BOUNDARY,
    INTRANSITIVE_I,
    INTRANSITIVE_II,
    TRANSITIVE,
    Frequencies,
    Rng,
    brute_force_feasible,
    classify,
    feasible,
    is_optimal,
)
from trigame.feasibility import (
    FILTER_ANY,
    FILTER_INTRANSITIVE_ANY,
    FILTER_INTRANSITIVE_I,
    FILTER_INTRANSITIVE_II,
    FILTER_TRANSITIVE_ANY,
    FILTERS,
    MODEL_CLASSICAL,
    MODEL_QUANTUM_MIXED,
    MODEL_QUANTUM_PURE,
    MODELS,
)

CENTER = Frequencies(1 / 3, 1 / 3, 1 / 3)


def random_frequencies(count, seed, floor=0.0):
    u = Rng(seed=seed).draws(count)
    e = -np.log1p(-u[:, :3] * (1.0 - 1e-12))
    q = e / e.sum(axis=1, keepdims=True)
    if floor:
        q = (q + floor) / (1.0 + 3.0 * floor)
    return [Frequencies(*row) for row in q]


def sphere_norm(p):
    x1, x2, x3 = p.bloch()
    return math.sqrt(x1 * x1 + x2 * x2 + x3 * x3)


class TestKnownPoints:
    def test_center_classical_witness_is_all_half(self):
        res = feasible(CENTER, MODEL_CLASSICAL)
        assert res
        assert abs(res.witness.p02 - 0.5) < 1e-12
        assert abs(res.witness.p01 - 0.5) < 1e-12
        assert abs(res.witness.p10 - 0.5) < 1e-12
        assert classify(res.witness).kind == BOUNDARY

    def test_center_pure_transitive_infeasible(self):
        assert not feasible(CENTER, MODEL_QUANTUM_PURE, FILTER_TRANSITIVE_ANY)

    def test_center_pure_cycles_pin_the_two_roots(self):
        lo = (1.0 - 1.0 / math.sqrt(3.0)) / 2.0
        hi = (1.0 + 1.0 / math.sqrt(3.0)) / 2.0
        res_i = feasible(CENTER, MODEL_QUANTUM_PURE, FILTER_INTRANSITIVE_I)
        res_ii = feasible(CENTER, MODEL_QUANTUM_PURE, FILTER_INTRANSITIVE_II)
        assert res_i and res_ii
        assert abs(res_i.witness.p02 - lo) < 1e-9
        assert abs(res_ii.witness.p02 - hi) < 1e-9
        assert classify(res_i.witness).kind == INTRANSITIVE_I
        assert classify(res_ii.witness).kind == INTRANSITIVE_II

    def test_center_pure_any_witness_on_sphere(self):
        res = feasible(CENTER, MODEL_QUANTUM_PURE)
        assert res
        assert abs(sphere_norm(res.witness) - 1.0) < 1e-9

    def test_center_intransitive_any(self):
        res = feasible(CENTER, MODEL_QUANTUM_PURE, FILTER_INTRANSITIVE_ANY)
        assert res
        assert classify(res.witness).kind in (INTRANSITIVE_I, INTRANSITIVE_II)

    def test_lopsided_points(self):
        assert not feasible(Frequencies(0.7, 0.15, 0.15), MODEL_CLASSICAL)
        assert not feasible(Frequencies(0.7, 0.15, 0.15), MODEL_QUANTUM_PURE)
        assert not feasible(Frequencies(0.7, 0.15, 0.15), MODEL_QUANTUM_MIXED)
        assert feasible(Frequencies(0.6, 0.2, 0.2), MODEL_CLASSICAL)
        assert not feasible(Frequencies(0.68, 0.16, 0.16), MODEL_CLASSICAL)


class TestClassicalHexagon:
    def test_region_is_inscribed_hexagon(self):
        n = 200
        margin = 1e-6
        for i in range(n + 1):
            for j in range(n + 1 - i):
                q0 = i / n
                q1 = j / n
                q2 = 1.0 - q0 - q1
                if min(q0, q1, q2) < margin:
                    continue
                qmax = max(q0, q1, q2)
                if abs(qmax - 2 / 3) <= margin:
                    continue
                got = bool(feasible(Frequencies(q0, q1, q2), MODEL_CLASSICAL))
                assert got == (qmax < 2 / 3), (q0, q1, q2)


class TestModelNesting:
    def test_sphere_ball_cube_chain(self):
        for q in random_frequencies(2000, seed=61):
            pure = bool(feasible(q, MODEL_QUANTUM_PURE))
            mixed = bool(feasible(q, MODEL_QUANTUM_MIXED))
            classical = bool(feasible(q, MODEL_CLASSICAL))
            assert not (pure and not mixed)
            assert not (mixed and not classical)

    def test_ball_matches_sphere_except_transitive(self):
        # `any` coincides (the ball segment reaches norm 1 whenever it is
        # nonempty) and each cycle occupies one end of the admissible line,
        # so the segment meets a cycle exactly when its endpoint root does.
        # The transitive middle is where the ball genuinely grows: the
        # segment crosses it while both roots sit in the cycles.
        grew = 0
        equal_filters = (
            FILTER_ANY,
            FILTER_INTRANSITIVE_I,
            FILTER_INTRANSITIVE_II,
            FILTER_INTRANSITIVE_ANY,
        )
        for q in random_frequencies(800, seed=62, floor=1e-4):
            for class_filter in equal_filters:
                pure = bool(feasible(q, MODEL_QUANTUM_PURE, class_filter))
                mixed = bool(feasible(q, MODEL_QUANTUM_MIXED, class_filter))
                assert pure == mixed, (q, class_filter)
            pure_tr = bool(feasible(q, MODEL_QUANTUM_PURE, FILTER_TRANSITIVE_ANY))
            mixed_tr = bool(feasible(q, MODEL_QUANTUM_MIXED, FILTER_TRANSITIVE_ANY))
            assert not (pure_tr and not mixed_tr), q
            grew += mixed_tr and not pure_tr
        assert grew > 50

    def test_ball_transitive_counterexamples(self):
        # both sphere roots are cyclic at these points, yet the ball segment
        # between them crosses the transitive middle
        for triple in ((0.45, 0.35, 0.20), (0.334, 0.333, 0.333)):
            s = sum(triple)
            q = Frequencies(*(v / s for v in triple))
            assert not feasible(q, MODEL_QUANTUM_PURE, FILTER_TRANSITIVE_ANY)
            res = feasible(q, MODEL_QUANTUM_MIXED, FILTER_TRANSITIVE_ANY)
            assert res
            assert classify(res.witness).kind == TRANSITIVE
            assert sphere_norm(res.witness) < 1.0 - 1e-6
            assert is_optimal(res.witness, q, 1e-9)

    def test_center_ball_transitive_still_infeasible(self):
        # at the exact center the admissible segment is the cycle diagonal:
        # interior points keep the cyclic patterns, so mixing adds nothing
        assert not feasible(CENTER, MODEL_QUANTUM_MIXED, FILTER_TRANSITIVE_ANY)
        assert feasible(CENTER, MODEL_QUANTUM_MIXED, FILTER_INTRANSITIVE_I)
        assert feasible(CENTER, MODEL_QUANTUM_MIXED, FILTER_INTRANSITIVE_II)


class TestFilterAlgebra:
    def test_class_filters_imply_any(self):
        for q in random_frequencies(600, seed=63):
            for model in MODELS:
                if not feasible(q, model, FILTER_ANY):
                    for class_filter in FILTERS[1:]:
                        assert not feasible(q, model, class_filter), (q, model, class_filter)

    def test_intransitive_any_is_the_union_of_cycles(self):
        for q in random_frequencies(400, seed=64):
            for model in MODELS:
                union = bool(feasible(q, model, FILTER_INTRANSITIVE_I)) or bool(
                    feasible(q, model, FILTER_INTRANSITIVE_II)
                )
                assert bool(feasible(q, model, FILTER_INTRANSITIVE_ANY)) == union

    def test_any_splits_into_strict_filters_or_boundary(self):
        strict = (FILTER_INTRANSITIVE_ANY, FILTER_TRANSITIVE_ANY)
        for q in random_frequencies(400, seed=65):
            for model in MODELS:
                res = feasible(q, model, FILTER_ANY)
                if res and not any(feasible(q, model, f) for f in strict):
                    # the region touches q only through tie hyperplanes
                    assert classify(res.witness).kind == BOUNDARY, (q, model)


class TestWitnessContracts:
    KINDS = {
        FILTER_INTRANSITIVE_I: (INTRANSITIVE_I,),
        FILTER_INTRANSITIVE_II: (INTRANSITIVE_II,),
        FILTER_INTRANSITIVE_ANY: (INTRANSITIVE_I, INTRANSITIVE_II),
        FILTER_TRANSITIVE_ANY: (TRANSITIVE,),
    }

    def test_witnesses_reverify(self):
        for q in random_frequencies(500, seed=66):
            for model in MODELS:
                for class_filter in FILTERS:
                    res = feasible(q, model, class_filter)
                    if not res:
                        assert res.witness is None
                        continue
                    w = res.witness
                    assert is_optimal(w, q, 1e-9), (q, model, class_filter)
                    for v in (w.p02, w.p01, w.p10):
                        assert 0.0 <= v <= 1.0
                    if model == MODEL_QUANTUM_PURE:
                        assert abs(sphere_norm(w) - 1.0) <= 1e-9
                    elif model == MODEL_QUANTUM_MIXED:
                        assert sphere_norm(w) <= 1.0 + 1e-9
                    if class_filter in self.KINDS:
                        assert classify(w).kind in self.KINDS[class_filter]


class TestSimplexEdges:
    def test_edge_midpoint_no_third_food(self):
        q = Frequencies(0.5, 0.5, 0.0)
        assert feasible(q, MODEL_CLASSICAL)
        assert feasible(q, MODEL_CLASSICAL, FILTER_TRANSITIVE_ANY)
        assert not feasible(q, MODEL_CLASSICAL, FILTER_INTRANSITIVE_I)
        assert not feasible(q, MODEL_CLASSICAL, FILTER_INTRANSITIVE_II)
        res = feasible(q, MODEL_QUANTUM_PURE)
        assert res and abs(sphere_norm(res.witness) - 1.0) <= 1e-9
        assert feasible(q, MODEL_QUANTUM_PURE, FILTER_TRANSITIVE_ANY)
        assert not feasible(q, MODEL_QUANTUM_PURE, FILTER_INTRANSITIVE_ANY)

    def test_edge_midpoint_no_first_food(self):
        q = Frequencies(0.0, 0.5, 0.5)
        assert feasible(q, MODEL_CLASSICAL)
        assert feasible(q, MODEL_QUANTUM_PURE)
        assert not feasible(q, MODEL_QUANTUM_PURE, FILTER_INTRANSITIVE_ANY)

    def test_unbalanced_edge_point_infeasible(self):
        assert not feasible(Frequencies(0.9, 0.1, 0.0), MODEL_CLASSICAL)
        assert not feasible(Frequencies(0.9, 0.1, 0.0), MODEL_QUANTUM_MIXED)

    def test_vertices_infeasible(self):
        for q in (Frequencies(1, 0, 0), Frequencies(0, 1, 0), Frequencies(0, 0, 1)):
            for model in MODELS:
                assert not feasible(q, model)

    def test_witnesses_on_edges_reverify(self):
        for q in (Frequencies(0.5, 0.5, 0.0), Frequencies(0.0, 0.5, 0.5), Frequencies(0.6, 0.0, 0.4)):
            for model in MODELS:
                res = feasible(q, model)
                if res:
                    assert is_optimal(res.witness, q, 1e-9)


class TestBruteForceAgreement:
    def test_pinned_examples_at_full_resolution(self):
        assert brute_force_feasible(CENTER, MODEL_CLASSICAL, resolution=1000)
        assert not brute_force_feasible(
            CENTER, MODEL_QUANTUM_PURE, FILTER_TRANSITIVE_ANY, resolution=1000
        )
        assert not brute_force_feasible(
            Frequencies(0.7, 0.15, 0.15), MODEL_CLASSICAL, resolution=1000
        )
        assert brute_force_feasible(Frequencies(0.6, 0.2, 0.2), MODEL_CLASSICAL, resolution=1000)
        assert not brute_force_feasible(
            Frequencies(0.68, 0.16, 0.16), MODEL_CLASSICAL, resolution=1000
        )
        # ball-only transitive point: the sphere scan finds nothing, the
        # ball scan produces an interior witness
        assert not brute_force_feasible(
            Frequencies(0.45, 0.35, 0.20), MODEL_QUANTUM_PURE, FILTER_TRANSITIVE_ANY,
            resolution=400,
        )
        res = brute_force_feasible(
            Frequencies(0.45, 0.35, 0.20), MODEL_QUANTUM_MIXED, FILTER_TRANSITIVE_ANY,
            resolution=200,
        )
        assert res and classify(res.witness).kind == TRANSITIVE
        assert sphere_norm(res.witness) < 1.0

    def test_brute_witness_tolerance(self):
        res = brute_force_feasible(Frequencies(0.6, 0.2, 0.2), MODEL_CLASSICAL, resolution=1000)
        assert is_optimal(res.witness, Frequencies(0.6, 0.2, 0.2), eps=2 / 1000)

    def _locally_constant(self, q, model, class_filter, delta=0.015):
        """True when the decision is the same on a small ring around q."""
        base = bool(feasible(q, model, class_filter))
        shifts = [(delta, -delta, 0), (-delta, delta, 0), (0, delta, -delta),
                  (0, -delta, delta), (delta, 0, -delta), (-delta, 0, delta)]
        for d0, d1, d2 in shifts:
            t = (q.q0 + d0, q.q1 + d1, q.q2 + d2)
            if min(t) <= 0:
                return False
            if bool(feasible(Frequencies(*t), model, class_filter)) != base:
                return False
        return True

    def test_random_deep_points(self):
        cases = [
            (MODEL_CLASSICAL, FILTER_ANY, 400),
            (MODEL_CLASSICAL, FILTER_INTRANSITIVE_ANY, 400),
            (MODEL_QUANTUM_PURE, FILTER_ANY, 400),
            (MODEL_QUANTUM_PURE, FILTER_TRANSITIVE_ANY, 400),
            (MODEL_QUANTUM_MIXED, FILTER_ANY, 150),
            (MODEL_QUANTUM_MIXED, FILTER_TRANSITIVE_ANY, 150),
        ]
        checked = 0
        for q in random_frequencies(30, seed=67, floor=0.03):
            for model, class_filter, resolution in cases:
                if not self._locally_constant(q, model, class_filter):
                    continue
                exact = bool(feasible(q, model, class_filter))
                brute = brute_force_feasible(q, model, class_filter, resolution=resolution)
                assert bool(brute) == exact, (q, model, class_filter)
                if brute:
                    assert is_optimal(brute.witness, q, eps=2 / resolution)
                checked += 1
        assert checked > 60

    def test_resolution_contract(self):
        with pytest.raises(AssertionError):
            brute_force_feasible(CENTER, MODEL_CLASSICAL, resolution=99)


class TestResultSemantics:
    def test_truthiness_and_witness_pairing(self):
        yes = feasible(CENTER, MODEL_CLASSICAL)
        no = feasible(Frequencies(0.9, 0.05, 0.05), MODEL_CLASSICAL)
        assert bool(yes) and yes.witness is not None
        assert not bool(no) and no.witness is None
