"""Unit tests for finite categories, validation and connectivity."""

import hypothesis
import hypothesis.strategies as strat
import pytest

from frobenius_checker.core.builders import (
    arrow,
    codiscrete,
    discrete,
    from_group_cyclic,
    from_preorder,
    idempotent_monoid,
    standard_corpus,
    zero_monoid,
)
from frobenius_checker.core.category import (
    FinCategory,
    check_functor,
    connected_components,
    ensure_valid,
    full_subcategory,
    hom_index,
    hom_nonempty_everywhere,
    is_strongly_connected,
    strongly_connected_components,
    submonoid,
    validate,
)
from frobenius_checker.exceptions import InvalidCategoryError, NotConnectedError

CORPUS = standard_corpus()


def _replacements():
    """``(name, g, f, k)``: set ``g∘f`` to ``k`` where the change must break a law."""
    found = []
    for name, cat in CORPUS.items():
        for (g, f), h in sorted(cat.comp.items()):
            hom = cat.hom(cat.dom(f), cat.cod(g))
            touches_identity = cat.is_identity(g) or cat.is_identity(f)
            for k in range(cat.n_morphisms):
                if k != h and (k not in hom or touches_identity):
                    found.append((name, g, f, k))
    return found


REPLACEMENTS = _replacements()
ENTRIES = [(name, g, f) for name, cat in CORPUS.items() for (g, f) in sorted(cat.comp)]
NON_COMPOSABLE = [
    (name, g, f)
    for name, cat in CORPUS.items()
    for g in range(cat.n_morphisms)
    for f in range(cat.n_morphisms)
    if cat.cod(f) != cat.dom(g)
]

mutations = hypothesis.settings(max_examples=60, deadline=None)


def _with_table(cat, comp):
    return FinCategory(n_objects=cat.n_objects, morphisms=cat.morphisms, identity=cat.identity, comp=comp)


def _located(report, g, f):
    """Some violation names the pair, or the non-identity side of an identity law."""
    return any(
        v.indices == (g, f) or (v.kind == "identity_law" and v.indices[0] in (g, f)) for v in report.violations
    )


class TestValidate:
    """Each broken law is reported with its kind."""

    def test_builders_are_valid(self, corpus):
        for name, cat in corpus.items():
            assert validate(cat).is_valid, name

    def test_missing_composition(self):
        cat = FinCategory.build(1, [("1", 0, 0), ("a", 0, 0)], [0], {})
        report = validate(cat)
        assert report.kinds() == ["missing_composition"]
        assert report.violations[0].indices == (1, 1)

    def test_associativity(self):
        # a·a = b, a·b = a, b·a = b: (aa)a = b but a(aa) = a
        cat = FinCategory.build(
            1,
            [("1", 0, 0), ("a", 0, 0), ("b", 0, 0)],
            [0],
            {(1, 1): 2, (1, 2): 1, (2, 1): 2, (2, 2): 2},
        )
        report = validate(cat)
        assert report.kinds() == ["associativity", "associativity"]
        # located as (h, g, f): a∘(a∘a) vs (a∘a)∘a and a∘(b∘a) vs (a∘b)∘a
        assert [v.indices for v in report.violations] == [(1, 1, 1), (1, 2, 1)]
        assert report.violations[0].message == "associativity fails for (a, a, a)"

    def test_identity_law(self):
        cat = FinCategory.build(1, [("1", 0, 0), ("a", 0, 0)], [0], {(0, 1): 0, (1, 1): 1})
        assert "identity_law" in validate(cat).kinds()

    def test_spurious_composition(self):
        cat = FinCategory.build(2, [("id0", 0, 0), ("id1", 1, 1), ("a", 0, 1)], [0, 1], {(2, 2): 2})
        assert "spurious_composition" in validate(cat).kinds()

    def test_duplicate_name(self):
        cat = FinCategory.build(1, [("x", 0, 0), ("x", 0, 0)], [0], {(1, 1): 1})
        assert "duplicate_name" in validate(cat).kinds()

    def test_identity_mismatch(self):
        cat = FinCategory.build(2, [("id0", 0, 0), ("id1", 1, 1), ("a", 0, 1)], [2, 1], {})
        assert validate(cat).kinds() == ["identity_mismatch"]

    def test_out_of_range_object(self):
        cat = FinCategory.build(1, [("1", 0, 0), ("a", 0, 3)], [0], {})
        assert "index_out_of_range" in validate(cat).kinds()

    def test_ensure_valid_raises_with_report(self):
        cat = FinCategory.build(1, [("1", 0, 0), ("a", 0, 0)], [0], {})
        with pytest.raises(InvalidCategoryError) as info:
            ensure_valid(cat)
        assert info.value.report.kinds() == ["missing_composition"]


class TestSingleEntryMutations:
    """Changing one entry of a valid table is caught at the changed pair."""

    @mutations
    @hypothesis.given(strat.sampled_from(REPLACEMENTS))
    def test_replaced_entry(self, mutation):
        name, g, f, k = mutation
        cat = CORPUS[name]
        comp = dict(cat.comp)
        comp[(g, f)] = k
        report = validate(_with_table(cat, comp))
        assert not report.is_valid
        assert _located(report, g, f), (name, g, f, k, report.violations)

    @mutations
    @hypothesis.given(strat.sampled_from(ENTRIES))
    def test_removed_entry(self, entry):
        name, g, f = entry
        cat = CORPUS[name]
        comp = dict(cat.comp)
        del comp[(g, f)]
        report = validate(_with_table(cat, comp))
        assert ("missing_composition", (g, f)) in [(v.kind, v.indices) for v in report.violations]

    @mutations
    @hypothesis.given(strat.sampled_from(NON_COMPOSABLE), strat.integers(min_value=0))
    def test_added_entry(self, pair, pick):
        name, g, f = pair
        cat = CORPUS[name]
        comp = dict(cat.comp)
        comp[(g, f)] = pick % cat.n_morphisms
        report = validate(_with_table(cat, comp))
        assert ("spurious_composition", (g, f)) in [(v.kind, v.indices) for v in report.violations]

    def test_replacement_within_the_hom_set_can_stay_valid(self):
        # g∘g = 1 becomes g∘g = g: the table of C_2 turns into the idempotent monoid
        cat = from_group_cyclic(2)
        comp = dict(cat.comp)
        comp[(1, 1)] = 1
        mutated = _with_table(cat, comp)
        assert validate(mutated).is_valid
        assert mutated.is_idempotent(1)


class TestAccessors:
    def test_hom_and_names(self):
        cat = from_group_cyclic(3)
        assert cat.hom(0, 0) == (0, 1, 2)
        assert cat.index_of("g2") == 2
        assert cat.name(1) == "g"

    def test_inverse(self):
        cat = from_group_cyclic(3)
        assert cat.inverse(1) == 2
        assert cat.inverse(0) == 0
        assert idempotent_monoid().inverse(1) is None

    def test_identity_composites_are_inferred(self):
        cat = arrow()
        assert cat.compose(1, 2) == 2
        assert cat.compose(2, 0) == 2

    def test_label(self):
        assert arrow().label() == "<2 objects, 3 morphisms>"

    def test_hom_index(self):
        index = hom_index(arrow())
        assert index.hom == (((0,), (2,)), ((), (1,)))
        assert not hom_nonempty_everywhere(arrow())


class TestConnectivity:
    """Connected components and the strong-connectivity partition."""

    def test_components_numbered_by_smallest_member(self):
        partition = connected_components(discrete(3))
        assert partition.count == 3
        assert partition.groups() == [(0,), (1,), (2,)]

    def test_arrow_is_connected(self):
        assert connected_components(arrow()).count == 1

    def test_arrow_source_component(self):
        result = is_strongly_connected(arrow())
        assert not result.strongly_connected
        assert result.source == (0,)
        assert result.rest == (1,)

    def test_chain_source_component(self):
        chain = from_preorder(3, [(0, 1), (1, 2)])
        assert strongly_connected_components(chain) == [[0], [1], [2]]
        result = is_strongly_connected(chain)
        assert result.source == (0,)
        assert result.rest == (1, 2)

    def test_codiscrete_is_strongly_connected(self):
        cat = codiscrete(3)
        assert is_strongly_connected(cat).strongly_connected
        assert hom_nonempty_everywhere(cat)

    def test_requires_connected_input(self):
        with pytest.raises(NotConnectedError):
            is_strongly_connected(discrete(2))
        with pytest.raises(NotConnectedError):
            is_strongly_connected(discrete(0))

    def test_scc_agrees_with_hom_check(self, corpus):
        for name, cat in corpus.items():
            if connected_components(cat).count != 1:
                continue
            assert is_strongly_connected(cat).strongly_connected == hom_nonempty_everywhere(cat), name


class TestSubcategories:
    def test_full_subcategory(self):
        restriction = full_subcategory(codiscrete(3), [2, 0])
        assert restriction.objects == (0, 2)
        assert restriction.category.n_morphisms == 4
        assert validate(restriction.category).is_valid

    def test_submonoid_adds_identity(self):
        restriction = submonoid(zero_monoid(), 0, [2])
        assert restriction.morphisms == (0, 2)
        assert restriction.local_morphism(2) == 1

    def test_submonoid_must_be_closed(self):
        with pytest.raises(InvalidCategoryError):
            submonoid(zero_monoid(), 0, [1])


class TestCheckFunctor:
    def test_identity_functor(self):
        cat = from_group_cyclic(4)
        assert check_functor(cat, cat, [0], list(range(4))) == []

    def test_collapse_to_trivial_group(self):
        cat = from_group_cyclic(4)
        trivial = from_group_cyclic(1)
        assert check_functor(cat, trivial, [0], [0, 0, 0, 0]) == []

    def test_broken_composite(self):
        cat = from_group_cyclic(3)
        problems = check_functor(cat, cat, [0], [0, 1, 1])
        assert problems
        assert "not preserved" in problems[0]
