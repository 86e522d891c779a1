import math

import numpy as np
import pytest

from hilldraw.construct import BlowupPlan, blowup, seed_single
from hilldraw.drawing import (DrawingKind, add_apex, add_random_apex,
                              build_cocktail_party,
                              complete_drawing_from_points,
                              config_from_drawing, count_crossings,
                              count_crossings_by_circle_pairs, delete_vertex,
                              double, extend_partial_matching,
                              extend_to_complete, make_assignment,
                              random_assignment, strength, verify)
from hilldraw.formulas import hill_number
from hilldraw.geom import (DEFAULT_TOL, DegenerateConfigurationError,
                           HalfCircle, unit)

from .conftest import random_unit_points
from .oracles import brute_count

X = np.array([1.0, 0.0, 0.0])
Y = np.array([0.0, 1.0, 0.0])
Z = np.array([0.0, 0.0, 1.0])


def random_config(k, rng, tol=DEFAULT_TOL):
    while True:
        try:
            return double(random_unit_points(k, rng), tol)
        except DegenerateConfigurationError:
            continue


def hill_pairs(k, rng_seed=7, eps=0.2):
    rng = np.random.default_rng(rng_seed)
    return blowup(seed_single(), BlowupPlan(multiplicities=(k,), eps=eps),
                  rng)


class TestDouble:
    def test_orthonormal_frame(self):
        config = double([X, Y, Z])
        assert config.k == 3 and config.n == 6
        assert np.array_equal(config.doubled[3], -X)
        assert np.array_equal(config.doubled[4], -Y)
        assert np.array_equal(config.doubled[5], -Z)
        assert config.partner(1) == 4 and config.partner(4) == 1

    def test_coplanar_triple_rejected(self):
        with pytest.raises(DegenerateConfigurationError):
            double([X, Y, unit(X + Y)])

    def test_doubled_triples_inherit_general_position(self, rng):
        # negating one argument flips the determinant's sign only
        config = random_config(5, rng)
        d = config.doubled
        for _ in range(50):
            i, j, l = rng.choice(10, size=3, replace=False)
            if len({i % 5, j % 5, l % 5}) == 3:
                det = np.linalg.det(np.stack([d[i], d[j], d[l]]))
                assert abs(det) > DEFAULT_TOL.general_position

    def test_too_few_points(self):
        with pytest.raises(ValueError):
            double([X, Y])


class TestBuildCocktailParty:
    def test_octahedral_drawing(self):
        d = build_cocktail_party(double([X, Y, Z]))
        assert len(d.edges) == 12
        assert d.kind is DrawingKind.COCKTAIL_PARTY
        assert count_crossings(d).total == 0

    def test_edge_count_k4(self, rng):
        d = build_cocktail_party(random_config(4, rng))
        assert len(d.edges) == 24

    def test_all_edges_shorter_arcs(self, rng):
        d = build_cocktail_party(random_config(4, rng))
        assert all(e.curve.length() < math.pi for e in d.edges)


class TestCountCrossings:
    @pytest.mark.parametrize("k", [3, 4, 5, 6])
    def test_matching_free_count_formula(self, k, rng):
        for _ in range(10):
            d = build_cocktail_party(random_config(k, rng))
            expected = k * (k - 1) * (k - 2) * (k - 3) // 4
            assert count_crossings(d).total == expected

    @pytest.mark.parametrize("k", [11, 12])
    def test_matching_free_count_formula_larger(self, k, rng):
        for _ in range(3):
            d = build_cocktail_party(random_config(k, rng))
            expected = k * (k - 1) * (k - 2) * (k - 3) // 4
            assert count_crossings(d).total == expected
            assert count_crossings_by_circle_pairs(d) == expected

    def test_matches_brute_force_on_random_complete(self, rng):
        for n in (6, 9):
            pts = random_unit_points(n, rng)
            d = complete_drawing_from_points(pts)
            rep = count_crossings(d)
            total, pairs = brute_count(d)
            assert rep.total == total
            assert rep.pair_set() == frozenset(pairs)

    def test_matches_brute_force_with_half_circles(self):
        config, asg = hill_pairs(4)
        d = extend_to_complete(config, asg)
        rep = count_crossings(d)
        total, pairs = brute_count(d)
        assert rep.total == total == 18
        assert rep.pair_set() == frozenset(pairs)

    def test_report_invariants(self, rng):
        d = build_cocktail_party(random_config(5, rng))
        rep = count_crossings(d)
        assert rep.total == len(rep.pairs)
        assert sum(rep.per_edge) == 2 * rep.total
        assert sum(rep.per_vertex) == 4 * rep.total

    def test_workers_do_not_change_result(self):
        config, asg = hill_pairs(5)
        d = extend_to_complete(config, asg)
        serial = count_crossings(d, workers=1)
        parallel = count_crossings(d, workers=2)
        assert serial == parallel

    def test_no_counted_pair_is_adjacent_or_split(self, rng):
        config = random_config(5, rng)
        d = build_cocktail_party(config)
        rep = count_crossings(d)
        for i, j in rep.pairs.tolist():
            e1, e2 = d.edges[i], d.edges[j]
            ends1, ends2 = {e1.u, e1.v}, {e2.u, e2.v}
            assert not ends1 & ends2
            assert not any(d.pairing.get(w) in ends2 for w in ends1)

    def test_antipodal_symmetry_involution(self, rng):
        """v -> -v maps the crossing-pair set of arc edges to itself."""
        config = random_config(5, rng)
        d = build_cocktail_party(config)
        rep = count_crossings(d)
        index_of = {frozenset((e.u, e.v)): i for i, e in enumerate(d.edges)}

        def image(edge_idx):
            e = d.edges[edge_idx]
            return index_of[frozenset((d.pairing[e.u], d.pairing[e.v]))]

        pair_set = rep.pair_set()
        for i, j in rep.pairs.tolist():
            ii, jj = sorted((image(i), image(j)))
            assert (ii, jj) in pair_set


class TestAggregatedCounter:
    @pytest.mark.parametrize("k", [3, 4, 5, 6])
    def test_equals_pairwise_counter(self, k, rng):
        for _ in range(10):
            d = build_cocktail_party(random_config(k, rng))
            assert (count_crossings_by_circle_pairs(d)
                    == count_crossings(d).total)

    def test_rejects_other_kinds(self, rng):
        pts = random_unit_points(5, rng)
        with pytest.raises(ValueError):
            count_crossings_by_circle_pairs(complete_drawing_from_points(pts))


class TestStrength:
    def test_blowup_output_has_strength_zero(self):
        config, asg = hill_pairs(5)
        assert strength(config, asg) == 0

    def test_random_assignment_nonnegative(self, rng):
        config = random_config(4, rng)
        asg = random_assignment(config, rng)
        assert strength(config, asg) >= 0

    def test_flip_complements_pair_crossings(self, rng):
        """Replacing m by -m swaps the half for its complement, flipping
        every crossing with the other half-circles."""
        config, asg = hill_pairs(4)
        k = config.k
        halves = [asg.half_circle(config, i) for i in range(k)]
        from hilldraw.geom import half_circles_cross
        flipped = HalfCircle(config.base[0], -asg.midpoints[0])
        for j in range(1, k):
            before = half_circles_cross(halves[0], halves[j])
            after = half_circles_cross(flipped, halves[j])
            assert before != after


class TestExtensions:
    def test_full_extension_counts(self):
        for k in (3, 4):
            config, asg = hill_pairs(k)
            d = extend_to_complete(config, asg)
            assert count_crossings(d).total == hill_number(2 * k)
            assert d.kind is DrawingKind.COMPLETE
            assert len(d.edges) == (2 * k) * (2 * k - 1) // 2

    def test_partial_subsets(self):
        config, asg = hill_pairs(4)
        # all pairs: the complete drawing
        d_all = extend_partial_matching(config, asg, range(4))
        assert d_all.kind is DrawingKind.COMPLETE
        assert count_crossings(d_all).total == 18
        # no pairs: the matching-free drawing
        d_none = extend_partial_matching(config, asg, [])
        assert d_none.kind is DrawingKind.COCKTAIL_PARTY
        assert count_crossings(d_none).total == 6
        # three pairs: one matching edge removed
        d3 = extend_partial_matching(config, asg, [0, 1, 2])
        assert d3.kind is DrawingKind.PARTIAL_MATCHING
        assert d3.matching_size() == 1
        assert count_crossings(d3).total == 15

    def test_strength_s_adds_s(self, rng):
        config, _ = hill_pairs(4)
        for _ in range(5):
            asg = random_assignment(config, rng)
            s = strength(config, asg)
            d = extend_to_complete(config, asg)
            assert count_crossings(d).total == hill_number(8) + s


class TestDeleteVertex:
    def test_every_vertex_gives_smaller_hill_count(self):
        config, asg = hill_pairs(4)
        d = extend_to_complete(config, asg)
        for v in range(8):
            out = delete_vertex(d, v)
            assert out.kind is DrawingKind.COMPLETE_MINUS_VERTEX
            assert out.n == 7
            assert count_crossings(out).total == hill_number(7)

    def test_per_vertex_is_hill_difference(self):
        config, asg = hill_pairs(4)
        d = extend_to_complete(config, asg)
        rep = count_crossings(d)
        for v in range(8):
            assert rep.per_vertex[v] == hill_number(8) - hill_number(7)

    def test_invalid_index(self):
        config, asg = hill_pairs(3)
        d = extend_to_complete(config, asg)
        with pytest.raises(ValueError):
            delete_vertex(d, 6)

    def test_requires_complete_drawing(self, rng):
        d = build_cocktail_party(random_config(3, rng))
        with pytest.raises(ValueError):
            delete_vertex(d, 0)


class TestAddApex:
    def test_random_apexes_reach_next_hill_number(self, rng):
        config, asg = hill_pairs(3)
        for _ in range(5):
            out = add_random_apex(config, asg, rng)
            assert out.kind is DrawingKind.COMPLETE_PLUS_APEX
            assert out.n == 7
            assert count_crossings(out).total == hill_number(7)

    def test_k4(self, rng):
        config, asg = hill_pairs(4)
        out = add_random_apex(config, asg, rng)
        assert count_crossings(out).total == hill_number(9) == 36

    def test_antipode_of_vertex_rejected(self):
        config, asg = hill_pairs(3)
        with pytest.raises(DegenerateConfigurationError):
            add_apex(config, asg, -config.base[0])


class TestVerify:
    def test_complete_drawing_passes(self):
        config, asg = hill_pairs(4)
        report = verify(extend_to_complete(config, asg))
        assert report.passed
        assert report.crossings.total == 18
        names = {c.name for c in report.checks}
        assert {"hill_total", "per_vertex_participation",
                "per_vertex_sum"} <= names

    def test_flipped_midpoint_fails_with_observed_count(self):
        config, asg = hill_pairs(4)
        mids = asg.midpoints.copy()
        mids[0] = -mids[0]
        corrupted = make_assignment(config, mids)
        report = verify(extend_to_complete(config, corrupted))
        assert not report.passed
        check = {c.name: c for c in report.checks}["hill_total"]
        assert check.predicted == 18
        # the flipped half now crosses each of the other k-1 halves
        assert check.observed == 18 + 3
        assert strength(config, corrupted) == 3

    def test_matching_free_dispatch(self, rng):
        d = build_cocktail_party(random_config(4, rng))
        report = verify(d)
        assert report.passed
        names = [c.name for c in report.checks]
        assert "cocktail_party_total" in names
        assert "hill_total" not in names

    def test_partial_matching_dispatch(self):
        config, asg = hill_pairs(5)
        d = extend_partial_matching(config, asg, [0, 2])
        report = verify(d)
        assert report.passed
        assert any(c.name == "partial_matching_total" for c in report.checks)

    def test_report_document_shape(self):
        config, asg = hill_pairs(3)
        doc = verify(extend_to_complete(config, asg)).to_dict()
        assert doc["passed"] is True
        assert doc["kind"] == "complete"
        assert all({"name", "predicted", "observed", "passed"} <= set(c)
                   for c in doc["checks"])


class TestConfigFromDrawing:
    def test_roundtrip_through_drawing(self):
        config, asg = hill_pairs(4)
        d = extend_to_complete(config, asg)
        config2, asg2 = config_from_drawing(d)
        assert np.array_equal(config2.base, config.base)
        assert np.array_equal(asg2.midpoints, asg.midpoints)

    def test_rejects_random_complete(self, rng):
        pts = random_unit_points(6, rng)
        with pytest.raises(ValueError):
            config_from_drawing(complete_drawing_from_points(pts))
