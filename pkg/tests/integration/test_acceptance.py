"""Corpus-wide checks of both decision procedures against brute force and the oracles."""

import pytest

from frobenius_checker.core.category import connected_components, full_subcategory
from frobenius_checker.core.decision import decide_mod, decide_set, invertible
from frobenius_checker.core.invariant_system import brute_force_find_is, find_is, verify_is
from frobenius_checker.core.mod_oracle import free_probe, sample_check_mod
from frobenius_checker.core.set_oracle import sample_check_set
from frobenius_checker.models.verdict import RingSpec

RINGS = ["z", "q", "zmod:6", "fp:2", "fp:3", "fp:5"]

SET_FROBENIUS = {"cyclic:1", "discrete:1", "idmon", "zero-monoid", "adjoin-unit:idmon", "codiscrete:2", "codiscrete:3"}


def _brute_force_set(cat):
    if connected_components(cat).count != 1:
        return False
    return any(system.is_singleton() for system in brute_force_find_is(cat))


def _brute_force_mod(cat, ring):
    for objects in connected_components(cat).groups():
        local = full_subcategory(cat, objects).category
        if not any(invertible(ring, system.cardinality) for system in brute_force_find_is(local)):
            return False
    return True


class TestDecisionsAgainstBruteForce:
    """Both procedures agree with an exhaustive search for invariant systems."""

    def test_set(self, corpus):
        for name, cat in corpus.items():
            assert decide_set(cat).answer == _brute_force_set(cat), name

    def test_set_positives(self, corpus):
        assert {name for name, cat in corpus.items() if decide_set(cat).answer} == SET_FROBENIUS

    @pytest.mark.parametrize("text", RINGS)
    def test_mod(self, corpus, text):
        ring = RingSpec.parse(text)
        for name, cat in corpus.items():
            assert decide_mod(cat, ring).answer == _brute_force_mod(cat, ring), name

    @pytest.mark.parametrize("text", RINGS)
    def test_set_implies_mod(self, corpus, text):
        ring = RingSpec.parse(text)
        for name in SET_FROBENIUS:
            assert decide_mod(corpus[name], ring).answer, name


class TestOracleConsistency:
    """Sampled (co)limits never contradict a verdict."""

    def test_set_oracle(self, corpus):
        for name, cat in corpus.items():
            report = sample_check_set(cat, n_samples=10, seed=7, max_size=3)
            assert report.consistent, (name, report.inconsistencies)

    @pytest.mark.parametrize("p", [2, 3])
    def test_mod_oracle(self, corpus, p):
        for name, cat in corpus.items():
            report = sample_check_mod(cat, p, n_samples=3, seed=7, max_dim=3)
            assert report.consistent, (name, report.inconsistencies)
            assert report.inconclusive == 0, name

    @pytest.mark.slow
    def test_set_oracle_full(self, corpus):
        for name, cat in corpus.items():
            report = sample_check_set(cat, n_samples=100, seed=7, max_size=4)
            assert report.consistent, (name, report.inconsistencies)

    @pytest.mark.slow
    @pytest.mark.parametrize("p", [2, 3])
    def test_mod_oracle_full(self, corpus, p):
        for name, cat in corpus.items():
            report = sample_check_mod(cat, p, n_samples=100, seed=7, max_dim=6)
            assert report.consistent, (name, report.inconsistencies)
            assert report.inconclusive == 0, name

    def test_component_decomposition(self, corpus):
        for name in ["discrete:3", "union:cyclic:2+cyclic:3", "union:idmon+codiscrete:2+cyclic:2"]:
            assert sample_check_set(corpus[name], n_samples=20, seed=11, max_size=3).consistent, name
            assert sample_check_mod(corpus[name], 5, n_samples=5, seed=11, max_dim=3).consistent, name


class TestFreeProbe:
    """Limits of free functors recover the invariant system of positive categories."""

    def test_positive_categories(self, corpus):
        ring = RingSpec.prime_field(3)
        for name, cat in corpus.items():
            if connected_components(cat).count != 1 or not decide_mod(cat, ring).answer:
                continue
            for i in cat.objects:
                probe = free_probe(cat, i, 3)
                assert probe.dimension == 1, name
            family = {
                (s.dom, s.cod): s.morphisms for i in cat.objects for s in free_probe(cat, i, 3).supports
            }
            assert verify_is(cat, family).ok, name
            supports = {slot: set(morphisms) for slot, morphisms in family.items()}
            assert any(
                {slot: set(morphisms) for slot, morphisms in system.family().items()} == supports
                for system in find_is(cat).systems
            ), name

    def test_left_zero_fails(self, corpus):
        assert free_probe(corpus["left-zero:2"], 0, 3).dimension == 0
