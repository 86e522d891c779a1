import numpy as np
import pytest

from hilldraw.construct import (BlowupPlan, ConstructionError,
                                PerturbationError, blowup,
                                default_plan_chain, min_eps_for_multiplicity,
                                perturb, recursive_construct, seed_four,
                                seed_single, seed_two, validate_arrangement)
from hilldraw.drawing import (count_crossings, extend_to_complete, strength,
                              verify)
from hilldraw.formulas import hill_number
from hilldraw.geom import ToleranceConfig, is_general_position


class TestSeeds:
    def test_single(self):
        arr = seed_single()
        assert len(arr) == 1
        validate_arrangement(arr.halves)

    def test_two(self):
        arr = seed_two()
        assert len(arr) == 2
        validate_arrangement(arr.halves)
        # perturbed off the coordinate axes
        assert not np.array_equal(arr.halves[0].p, [1.0, 0.0, 0.0])

    def test_four(self):
        arr = seed_four()
        assert len(arr) == 4
        validate_arrangement(arr.halves)
        assert is_general_position(arr.endpoints())


class TestBlowup:
    def test_single_seed_multiplicities(self):
        for k in (3, 4, 6):
            config, asg = blowup(seed_single(),
                                 BlowupPlan(multiplicities=(k,)),
                                 np.random.default_rng(1))
            assert config.k == k
            assert strength(config, asg) == 0
            assert is_general_position(config.base)

    def test_containment_within_eps(self):
        eps = 0.15
        arr = seed_single()
        parent = arr.halves[0]
        config, asg = blowup(arr, BlowupPlan(multiplicities=(5,), eps=eps),
                             np.random.default_rng(3))
        for p, m in zip(config.base, asg.midpoints):
            assert parent.distance_to(p) <= eps
            assert parent.distance_to(-p) <= eps
            assert parent.distance_to(m) <= eps

    def test_full_pipeline_counts(self):
        cases = [(seed_single(), (5,)), (seed_two(), (2, 3)),
                 (seed_four(), (1, 2, 1, 1))]
        for arr, mults in cases:
            config, asg = blowup(arr, BlowupPlan(multiplicities=mults),
                                 np.random.default_rng(2))
            k = sum(mults)
            d = extend_to_complete(config, asg)
            assert count_crossings(d).total == hill_number(2 * k)

    def test_multiplicity_one_still_moves_inside_eps(self):
        arr = seed_four()
        config, asg = blowup(arr, BlowupPlan(multiplicities=(1, 1, 1, 1),
                                             eps=0.1),
                             np.random.default_rng(5))
        for parent, p in zip(arr.halves, config.base):
            assert not np.array_equal(parent.p, p)
            assert parent.distance_to(p) <= 0.1

    def test_deterministic_for_fixed_rng_seed(self):
        plan = BlowupPlan(multiplicities=(4,))
        c1, a1 = blowup(seed_single(), plan, np.random.default_rng(9))
        c2, a2 = blowup(seed_single(), plan, np.random.default_rng(9))
        assert np.array_equal(c1.base, c2.base)
        assert np.array_equal(a1.midpoints, a2.midpoints)
        c3, _ = blowup(seed_single(), plan, np.random.default_rng(10))
        assert not np.array_equal(c1.base, c3.base)

    def test_wrong_multiplicity_count(self):
        with pytest.raises(ValueError):
            blowup(seed_two(), BlowupPlan(multiplicities=(2,)),
                   np.random.default_rng(0))

    def test_plan_validation(self):
        with pytest.raises(ValueError):
            BlowupPlan(multiplicities=(0,))
        with pytest.raises(ValueError):
            BlowupPlan(multiplicities=(2,), eps=0.0)
        with pytest.raises(ValueError):
            BlowupPlan(multiplicities=(2,), sides=("sideways",))

    def test_too_few_total_pairs(self):
        with pytest.raises(ConstructionError):
            blowup(seed_single(), BlowupPlan(multiplicities=(2,)),
                   np.random.default_rng(0))


class TestRecursive:
    def test_depth_one_equals_blowup_shape(self):
        plans = default_plan_chain([[4]])
        config, asg = recursive_construct(seed_single(), plans,
                                          np.random.default_rng(4))
        assert config.k == 4
        assert strength(config, asg) == 0

    def test_depth_two_count(self):
        plans = default_plan_chain([[2], [2, 2]])
        config, asg = recursive_construct(seed_single(), plans,
                                          np.random.default_rng(4))
        assert config.k == 4
        d = extend_to_complete(config, asg)
        assert count_crossings(d).total == hill_number(8)

    def test_depth_two_with_mult3_groups(self):
        plans = default_plan_chain([[3], [3, 3, 3]])
        config, asg = recursive_construct(seed_single(), plans,
                                          np.random.default_rng(4))
        assert config.k == 9
        assert verify(extend_to_complete(config, asg)).passed

    def test_flags_give_distinct_drawings_with_equal_totals(self):
        """Far-apart nodes blown below vs above: totals agree, the
        crossing-pair sets do not."""
        vectors = [("below",) * 4, ("above", "below", "below", "below"),
                   ("below", "above", "below", "below")]
        seen = []
        for sides in vectors:
            plans = default_plan_chain(
                [[1, 1, 1, 1], [2, 2, 1, 1]],
                sides=[None, sides])
            config, asg = recursive_construct(seed_four(), plans,
                                              np.random.default_rng(6))
            rep = count_crossings(extend_to_complete(config, asg))
            assert rep.total == hill_number(12)
            seen.append(rep.pair_set())
        assert seen[0] != seen[1]
        assert seen[0] != seen[2]

    def test_error_reports_level(self):
        # level 1 has the wrong group count
        plans = [BlowupPlan(multiplicities=(2,)),
                 BlowupPlan(multiplicities=(2,), eps=0.02)]
        with pytest.raises(ConstructionError, match="level 1"):
            recursive_construct(seed_single(), plans,
                                np.random.default_rng(0))

    def test_loosened_tolerance_unlocks_depth_three(self):
        tol = ToleranceConfig(general_position=1e-11)
        plans = default_plan_chain([[2], [2, 2], [1, 2, 1, 2]], tol=tol)
        config, asg = recursive_construct(seed_single(tol), plans,
                                          np.random.default_rng(11), tol)
        assert config.k == 6
        assert verify(extend_to_complete(config, asg, tol), tol).passed


class TestDefaultPlanChain:
    def test_eps_floor_raises_with_multiplicity(self):
        assert min_eps_for_multiplicity(2) < min_eps_for_multiplicity(3)
        assert min_eps_for_multiplicity(3) < min_eps_for_multiplicity(10)

    def test_second_level_floored(self):
        plans = default_plan_chain([[3], [3, 3, 3]], eps0=0.2)
        assert plans[1].eps >= min_eps_for_multiplicity(3)
        assert plans[1].eps <= plans[0].eps / 2


class TestPerturb:
    def fixture_pairs(self):
        return blowup(seed_single(), BlowupPlan(multiplicities=(4,)),
                      np.random.default_rng(8))

    def test_zero_magnitude_identity(self):
        config, asg = self.fixture_pairs()
        c2, a2 = perturb(config, asg, 0.0, np.random.default_rng(0))
        assert np.array_equal(c2.base, config.base)
        assert np.array_equal(a2.midpoints, asg.midpoints)

    def test_tiny_magnitude_preserves_counts(self):
        config, asg = self.fixture_pairs()
        c2, a2 = perturb(config, asg, 1e-6, np.random.default_rng(1))
        d1 = extend_to_complete(config, asg)
        d2 = extend_to_complete(c2, a2)
        r1, r2 = count_crossings(d1), count_crossings(d2)
        assert r1.total == r2.total
        assert r1 == r2

    def test_large_magnitude_fails_validation(self):
        config, asg = self.fixture_pairs()
        with pytest.raises(PerturbationError):
            perturb(config, asg, 0.8, np.random.default_rng(2))

    def test_negative_magnitude_rejected(self):
        config, asg = self.fixture_pairs()
        with pytest.raises(ValueError):
            perturb(config, asg, -1.0, np.random.default_rng(0))
