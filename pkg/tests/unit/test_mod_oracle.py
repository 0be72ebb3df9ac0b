"""Unit tests for linear limits, colimits and the module oracle."""

import pytest

from frobenius_checker.core.builders import (
    arrow,
    discrete,
    from_group_cyclic,
    idempotent_monoid,
    left_zero_monoid,
)
from frobenius_checker.core.invariant_system import Slot
from frobenius_checker.core.linalg import MatrixFp
from frobenius_checker.core.mod_oracle import (
    NaturalityProblem,
    VectFunctor,
    augmentation,
    canonical_is_natural_vect,
    canonical_map_vect,
    colimit_vect,
    cyclic_subfunctor,
    free_functor,
    free_probe,
    free_probe_family,
    limit_vect,
    linearize,
    norm_splitting,
    random_vect_functor,
    random_vect_nat,
    regular_representation,
    sample_check_mod,
    solve_naturality,
    trivial_representation,
    vect_functor_problems,
    witness_mod,
    witness_not_strongly_connected_vect,
)
from frobenius_checker.core.prng import XorShift64Star
from frobenius_checker.core.set_oracle import representable
from frobenius_checker.exceptions import FunctorError, PreconditionError


class TestVectFunctors:
    def test_composition_checked(self):
        cat = from_group_cyclic(2)
        with pytest.raises(FunctorError):
            VectFunctor.on(cat, 5, [1], [MatrixFp.identity(5, 1), MatrixFp.scalar(5, 2)])

    def test_sign_representation(self):
        cat = from_group_cyclic(2)
        sign = VectFunctor.on(cat, 5, [1], [MatrixFp.identity(5, 1), MatrixFp.scalar(5, 4)])
        assert limit_vect(cat, sign).dim == 0
        assert colimit_vect(cat, sign).dim == 0

    def test_linearized_representable_is_free(self):
        cat = idempotent_monoid()
        assert linearize(representable(cat, 0), 3, cat) == free_functor(cat, 0, 3)

    def test_random_functors_are_functorial(self):
        cat = left_zero_monoid(2)
        rng = XorShift64Star(12)
        for _ in range(5):
            assert vect_functor_problems(cat, random_vect_functor(cat, 3, rng, 4)) == []


class TestRegularRepresentation:
    def test_comparison_vanishes_in_modular_case(self):
        cat = from_group_cyclic(2)
        regular = regular_representation(cat, 2)
        assert limit_vect(cat, regular).dim == 1
        assert colimit_vect(cat, regular).dim == 1
        assert canonical_map_vect(cat, regular).is_zero()

    def test_comparison_invertible_otherwise(self):
        cat = from_group_cyclic(2)
        assert canonical_map_vect(cat, regular_representation(cat, 3)).is_invertible()

    def test_augmentation_is_natural(self):
        cat = from_group_cyclic(3)
        regular, trivial = regular_representation(cat, 2), trivial_representation(cat, 2)
        assert canonical_is_natural_vect(cat, regular, trivial, augmentation(cat, 2))

    def test_norm_splitting(self):
        cat = from_group_cyclic(2)
        splitting = norm_splitting(cat, regular_representation(cat, 3))
        assert splitting.idempotent
        assert splitting.image_is_invariants
        assert splitting.two_sided

    def test_norm_splitting_needs_invertible_order(self):
        cat = from_group_cyclic(2)
        with pytest.raises(PreconditionError):
            norm_splitting(cat, regular_representation(cat, 2))

    def test_norm_splitting_needs_group(self):
        cat = idempotent_monoid()
        with pytest.raises(PreconditionError):
            norm_splitting(cat, free_functor(cat, 0, 3))


class TestNaturalitySolver:
    def test_no_functors(self):
        solution = solve_naturality(NaturalityProblem(category=discrete(1), functors=()))
        assert (solution.status, solution.tier) == ("feasible", "trivial")

    def test_unconstrained_is_feasible(self):
        cat = from_group_cyclic(2)
        problem = NaturalityProblem(category=cat, functors=(regular_representation(cat, 3),))
        solution = solve_naturality(problem)
        assert (solution.status, solution.tier) == ("feasible", "exhaustive")
        assert solution.psi[0].is_invertible()

    def test_zero_limits_are_honoured(self):
        cat = from_group_cyclic(2)
        problem = NaturalityProblem(category=cat, functors=(regular_representation(cat, 3),))
        solution = solve_naturality(problem, exhaustive_limit=0, trials=0)
        assert (solution.status, solution.tier) == ("inconclusive", "sampling")
        assert solve_naturality(problem, exhaustive_limit=0).tier == "sampling"

    def test_witness_is_forced_singular(self):
        witness = witness_mod(from_group_cyclic(2), 2)
        assert witness.group_order == 2
        assert witness.objects == (0,)
        assert (witness.solution.status, witness.solution.tier) == ("infeasible", "forced_singular")

    def test_witness_needs_negative_verdict(self):
        with pytest.raises(PreconditionError):
            witness_mod(from_group_cyclic(2), 3)

    def test_witness_only_for_cardinality_failures(self):
        assert witness_mod(arrow(), 2) is None


class TestWitnessesAndProbes:
    def test_not_strongly_connected(self):
        cat = arrow()
        functor = witness_not_strongly_connected_vect(cat, [0], [1], 3)
        assert limit_vect(cat, functor).dim == 0
        assert colimit_vect(cat, functor).dim == 1

    def test_free_functor_finds_idempotent(self):
        probe = free_probe(idempotent_monoid(), 0, 3)
        assert probe.dimension == 1
        assert probe.supports == (Slot(dom=0, cod=0, morphisms=(1,)),)

    def test_free_functor_without_system(self):
        probe = free_probe(left_zero_monoid(2), 0, 3)
        assert probe.dimension == 0
        assert probe.supports is None

    def test_family_recovers_system(self):
        assert free_probe_family(idempotent_monoid(), 2).recovers_system
        assert not free_probe_family(left_zero_monoid(2), 2).recovers_system

    def test_free_evidence_needs_strong_connectivity(self):
        with pytest.raises(PreconditionError):
            free_probe(arrow(), 0, 3)

    def test_random_transforms_are_natural(self):
        cat = idempotent_monoid()
        rng = XorShift64Star(4)
        source = random_vect_functor(cat, 3, rng, 3)
        target = random_vect_functor(cat, 3, rng, 3)
        eta = random_vect_nat(cat, source, target, rng)
        assert canonical_is_natural_vect(cat, source, target, eta)


class TestSampleCheck:
    def test_positive_group(self):
        report = sample_check_mod(from_group_cyclic(2), 3, n_samples=5, seed=1, max_dim=3)
        assert report.consistent
        assert report.verdict.answer
        assert report.invertible_samples == 5
        assert report.norm_checks == 5
        assert report.pullback_checks == 5

    def test_modular_group(self):
        report = sample_check_mod(from_group_cyclic(2), 2, n_samples=5, seed=1, max_dim=3)
        assert report.consistent
        assert report.witness_status == "infeasible"
        assert report.inconclusive == 0

    def test_no_invariant_system(self):
        report = sample_check_mod(left_zero_monoid(2), 3, n_samples=5, seed=2, max_dim=3)
        assert report.consistent
        assert report.probe is not None
        assert not report.probe.recovers_system

    def test_not_strongly_connected(self):
        report = sample_check_mod(arrow(), 2, n_samples=3, seed=2, max_dim=3)
        assert report.consistent
        assert report.witness.endswith("lim 0, colim 1")


class TestCyclicSubfunctors:
    def test_augmentation_ideal_of_c3(self):
        # e0 - e1 generates the augmentation ideal of F_3[C_3], a Jordan block of size 2
        cat = from_group_cyclic(3)
        ideal = cyclic_subfunctor(cat, regular_representation(cat, 3), 0, [1, 2, 0])
        assert ideal.dims == (2,)
        assert vect_functor_problems(cat, ideal) == []
        assert limit_vect(cat, ideal).dim == 1
        assert colimit_vect(cat, ideal).dim == 1
        assert canonical_map_vect(cat, ideal).is_zero()

    def test_invariant_vector_spans_trivial_line(self):
        cat = from_group_cyclic(3)
        line = cyclic_subfunctor(cat, regular_representation(cat, 5), 0, [1, 1, 1])
        assert line.dims == (1,)
        assert line.action[1] == MatrixFp.identity(5, 1)

    def test_empty_where_nothing_reaches(self):
        cat = arrow()
        both = VectFunctor.on(cat, 3, [1, 1], [MatrixFp.identity(3, 1)] * 3)
        target_only = cyclic_subfunctor(cat, both, 1, [2])
        assert target_only.dims == (0, 1)
        assert cyclic_subfunctor(cat, both, 0, [1]).dims == (1, 1)

    def test_vector_must_fit(self):
        cat = from_group_cyclic(2)
        with pytest.raises(PreconditionError):
            cyclic_subfunctor(cat, regular_representation(cat, 3), 0, [1])

    def test_sampled_functors_vary_and_stay_functorial(self):
        cat = from_group_cyclic(3)
        dims = {random_vect_functor(cat, 3, XorShift64Star(seed), 3).dims for seed in range(1, 40)}
        assert len(dims) > 1
        for seed in range(1, 10):
            assert vect_functor_problems(cat, random_vect_functor(cat, 3, XorShift64Star(seed), 3)) == []
