"""Unit tests for limits and colimits in finite sets and the Set oracle."""

import pytest

from frobenius_checker.core.builders import (
    arrow,
    codiscrete,
    discrete,
    from_group_cyclic,
    idempotent_monoid,
    left_zero_monoid,
)
from frobenius_checker.core.decision import decide_set
from frobenius_checker.core.prng import XorShift64Star
from frobenius_checker.core.set_oracle import (
    SetFunctor,
    SetNatTransform,
    canonical_is_natural,
    colimit_set,
    empty_functor,
    fixed_points,
    lim_colim,
    limit_set,
    nat_problems,
    orbit_count,
    random_nat_transform,
    random_set_functor,
    representable,
    sample_check_set,
    set_functor_problems,
    set_witness,
    witness_not_strongly_connected,
)
from frobenius_checker.exceptions import FunctorError, PreconditionError


def _terminal(cat):
    return SetFunctor(sizes=(1,) * cat.n_objects, action=((0,),) * cat.n_morphisms)


def _identity(functor):
    return SetNatTransform(component=tuple(tuple(range(n)) for n in functor.sizes))


class TestFunctors:
    def test_terminal_is_functorial(self):
        assert set_functor_problems(arrow(), _terminal(arrow())) == []

    def test_composition_checked(self):
        with pytest.raises(FunctorError, match="differs"):
            SetFunctor.on(from_group_cyclic(2), [2], [[0, 1], [0, 0]])

    def test_identity_checked(self):
        with pytest.raises(FunctorError, match="identity"):
            SetFunctor.on(idempotent_monoid(), [2], [[1, 0], [1, 1]])

    def test_shape_checked(self):
        assert set_functor_problems(arrow(), empty_functor())

    def test_naturality_checked(self):
        cat = from_group_cyclic(2)
        swap = SetFunctor.on(cat, [2], [[0, 1], [1, 0]])
        trivial = SetFunctor.on(cat, [2], [[0, 1], [0, 1]])
        eta = SetNatTransform(component=((0, 0),))
        assert nat_problems(cat, swap, trivial, eta) == []
        with pytest.raises(FunctorError, match="naturality"):
            SetNatTransform.on(cat, trivial, swap, [[0, 0]])


class TestLimitsAndColimits:
    def test_terminal_on_arrow(self):
        result = lim_colim(arrow(), _terminal(arrow()))
        assert result.limit == ((0, 0),)
        assert result.colimit.count == 1
        assert result.is_bijective

    def test_empty_diagram(self):
        cat = discrete(0)
        assert limit_set(cat, empty_functor()) == [()]
        assert colimit_set(cat, empty_functor()).count == 0

    def test_representable_of_group(self):
        cat = from_group_cyclic(3)
        functor = representable(cat, 0)
        assert functor.sizes == (3,)
        assert limit_set(cat, functor) == []
        assert colimit_set(cat, functor).count == 1

    def test_representable_of_idempotent_monoid(self):
        cat = idempotent_monoid()
        result = lim_colim(cat, representable(cat, 0))
        assert result.limit == ((1,),)
        assert result.colimit.count == 1
        assert result.is_bijective

    def test_discrete_is_product_and_coproduct(self):
        cat = discrete(2)
        functor = SetFunctor(sizes=(2, 3), action=((0, 1), (0, 1, 2)))
        result = lim_colim(cat, functor)
        assert len(result.limit) == 6
        assert result.colimit.count == 5
        assert [c.objects for c in result.canonical] == [(0,), (1,)]
        assert result.well_defined


class TestWitnesses:
    def test_not_strongly_connected(self):
        cat = arrow()
        functor = witness_not_strongly_connected(cat, [0], [1])
        assert limit_set(cat, functor) == []
        assert colimit_set(cat, functor).count == 1

    def test_partition_must_be_closed(self):
        with pytest.raises(PreconditionError):
            witness_not_strongly_connected(arrow(), [1], [0])

    def test_group_witness_is_representable(self):
        cat = from_group_cyclic(3)
        witness = set_witness(cat, decide_set(cat))
        assert witness.description == "representable hom(0, -)"
        assert (witness.limit_size, witness.colimit_size) == (0, 1)

    def test_empty_category(self):
        cat = discrete(0)
        witness = set_witness(cat, decide_set(cat))
        assert (witness.limit_size, witness.colimit_size) == (1, 0)

    def test_not_connected(self):
        cat = discrete(2)
        witness = set_witness(cat, decide_set(cat))
        assert (witness.limit_size, witness.colimit_size) == (0, 1)

    def test_none_for_positive_verdict(self):
        cat = idempotent_monoid()
        assert set_witness(cat, decide_set(cat)) is None


class TestSampling:
    @pytest.mark.parametrize("builder", [idempotent_monoid, arrow, lambda: from_group_cyclic(3), lambda: codiscrete(2)])
    def test_samples_are_functors(self, builder):
        cat = builder()
        rng = XorShift64Star(5)
        for _ in range(10):
            assert set_functor_problems(cat, random_set_functor(cat, rng, 3)) == []

    def test_isomorphic_objects_share_sizes(self):
        cat = codiscrete(3)
        functor = random_set_functor(cat, XorShift64Star(2), 3)
        assert len(set(functor.sizes)) == 1

    def test_identity_transform_is_found(self):
        cat = left_zero_monoid(2)
        functor = random_set_functor(cat, XorShift64Star(8), 3)
        eta = random_nat_transform(cat, functor, functor, XorShift64Star(1))
        assert eta is not None
        assert nat_problems(cat, functor, functor, eta) == []

    def test_canonical_map_natural_on_identity(self):
        cat = idempotent_monoid()
        functor = representable(cat, 0)
        assert canonical_is_natural(cat, functor, functor, _identity(functor))


class TestSampleCheck:
    def test_positive_verdict(self):
        report = sample_check_set(idempotent_monoid(), n_samples=20, seed=3, max_size=3)
        assert report.consistent
        assert report.verdict.answer
        assert report.bijective_samples == 20
        assert report.witness is None

    def test_negative_verdict_has_witness(self):
        report = sample_check_set(from_group_cyclic(3), n_samples=20, seed=7, max_size=3)
        assert report.consistent
        assert report.witness.description == "representable hom(0, -)"

    def test_seed_reproducible(self):
        first = sample_check_set(left_zero_monoid(2), n_samples=10, seed=4, max_size=3)
        second = sample_check_set(left_zero_monoid(2), n_samples=10, seed=4, max_size=3)
        assert first == second

    def test_zero_samples(self):
        report = sample_check_set(arrow(), n_samples=0, seed=1, max_size=3)
        assert report.consistent
        assert report.transforms_checked == 0


def _orbits_by_walking(functor, generator):
    seen, count = set(), 0
    for start in range(functor.sizes[0]):
        if start in seen:
            continue
        count += 1
        x = start
        while x not in seen:
            seen.add(x)
            x = functor.apply(generator, x)
    return count


class TestGroupActions:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    @pytest.mark.parametrize("seed", [1, 2, 3, 4])
    def test_limit_and_colimit_of_cyclic_action(self, n, seed):
        cat = from_group_cyclic(n)
        functor = random_set_functor(cat, XorShift64Star(seed * 31 + n), 5)
        # morphism 1 is the generator g
        fixed = [x for x in range(functor.sizes[0]) if functor.apply(1, x) == x]
        assert len(limit_set(cat, functor)) == len(fixed)
        assert colimit_set(cat, functor).count == _orbits_by_walking(functor, 1)
        assert list(fixed_points(cat, functor)) == fixed
        assert orbit_count(cat, functor) == _orbits_by_walking(functor, 1)

    def test_regular_action(self):
        cat = from_group_cyclic(4)
        functor = representable(cat, 0)
        assert fixed_points(cat, functor) == ()
        assert orbit_count(cat, functor) == 1

    def test_needs_one_object(self):
        cat = arrow()
        with pytest.raises(PreconditionError):
            fixed_points(cat, _terminal(cat))
        with pytest.raises(PreconditionError):
            orbit_count(cat, _terminal(cat))

    def test_sample_check_counts_group_samples(self):
        report = sample_check_set(from_group_cyclic(3), n_samples=12, seed=5, max_size=4)
        assert report.consistent
        assert report.group_action_checks == 12

    def test_monoid_samples_skip_group_check(self):
        report = sample_check_set(idempotent_monoid(), n_samples=5, seed=5, max_size=3)
        assert report.group_action_checks == 0
