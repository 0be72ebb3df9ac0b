"""Invariant systems and the group, groupoid and retraction they carry."""

from collections import deque
from itertools import combinations, product
from typing import Dict, Iterable, List, Literal, Mapping, Optional, Tuple

import structlog
from pydantic import BaseModel, ConfigDict

from ..config import get_settings
from ..exceptions import BudgetExceededError, InvariantSystemError, NotConnectedError
from .builders import from_monoid_table
from .category import (
    FinCategory,
    Morphism,
    Restriction,
    check_functor,
    connected_components,
    ensure_valid,
    is_strongly_connected,
    validate,
)

logger = structlog.get_logger(__name__)

Family = Mapping[Tuple[int, int], Iterable[int]]
Axiom = Literal["nonempty", "subset", "left", "right"]


class Slot(BaseModel):
    """The set ``S_dom^cod`` of an invariant system."""

    model_config = ConfigDict(frozen=True)

    dom: int
    cod: int
    morphisms: Tuple[int, ...]


class InvariantSystem(BaseModel):
    """
    A family of nonempty sets ``S_i^j ⊆ hom(i, j)``, one per object pair,
    on which every left and right composition acts bijectively.
    """

    model_config = ConfigDict(frozen=True)

    slots: Tuple[Slot, ...]

    @classmethod
    def from_family(cls, family: Family) -> "InvariantSystem":
        return cls(
            slots=tuple(
                Slot(dom=i, cod=j, morphisms=tuple(sorted(set(members))))
                for (i, j), members in sorted(family.items())
            )
        )

    def slot(self, i: int, j: int) -> Tuple[int, ...]:
        for s in self.slots:
            if s.dom == i and s.cod == j:
                return s.morphisms
        return ()

    def family(self) -> Dict[Tuple[int, int], Tuple[int, ...]]:
        return {(s.dom, s.cod): s.morphisms for s in self.slots}

    @property
    def cardinality(self) -> int:
        """Common slot size (all slots of a verified IS have equal size)."""
        return len(self.slots[0].morphisms) if self.slots else 0

    def morphisms(self) -> Tuple[int, ...]:
        return tuple(sorted({f for s in self.slots for f in s.morphisms}))

    def is_singleton(self) -> bool:
        return all(len(s.morphisms) == 1 for s in self.slots)

    def describe(self, cat: FinCategory) -> str:
        return " ".join(
            f"S[{s.dom},{s.cod}]={{{','.join(cat.name(f) for f in s.morphisms)}}}"
            for s in self.slots
        )


class ISCheck(BaseModel):
    """Outcome of ``verify_is``: the first violated axiom, if any."""

    model_config = ConfigDict(frozen=True)

    ok: bool
    axiom: Optional[Axiom] = None
    message: Optional[str] = None


def verify_is(cat: FinCategory, family: Family) -> ISCheck:
    """
    Check the invariant-system axioms for a candidate family.

    Args:
        cat: A valid category
        family: Candidate sets keyed by ``(i, j)``

    Returns:
        ISCheck with the first violated axiom
    """
    sets = {key: tuple(members) for key, members in family.items()}
    for i in cat.objects:
        for j in cat.objects:
            if not sets.get((i, j)):
                return ISCheck(ok=False, axiom="nonempty", message=f"slot ({i}, {j}) is empty")
    for (i, j), members in sorted(sets.items()):
        allowed = set(cat.hom(i, j))
        stray = [f for f in members if f not in allowed]
        if stray or len(set(members)) != len(members):
            return ISCheck(ok=False, axiom="subset", message=f"slot ({i}, {j}) is not a subset of hom({i}, {j})")

    for (i, j), members in sorted(sets.items()):
        for f in cat.outgoing(j):
            k = cat.cod(f)
            image = [cat.compose(f, s) for s in members]
            if len(set(image)) != len(members) or set(image) != set(sets[(i, k)]):
                return ISCheck(
                    ok=False,
                    axiom="left",
                    message=f"{cat.name(f)}∘- does not map S[{i},{j}] bijectively onto S[{i},{k}]",
                )
        for f in cat.incoming(i):
            k = cat.dom(f)
            image = [cat.compose(s, f) for s in members]
            if len(set(image)) != len(members) or set(image) != set(sets[(k, j)]):
                return ISCheck(
                    ok=False,
                    axiom="right",
                    message=f"-∘{cat.name(f)} does not map S[{i},{j}] bijectively onto S[{k},{j}]",
                )
    return ISCheck(ok=True)


def closure(cat: FinCategory, seed: int) -> Dict[Tuple[int, int], Tuple[int, ...]]:
    """
    Smallest family containing ``seed`` and closed under composition on
    either side, computed with a worklist.

    Returns:
        Sorted members for every object pair; unreached slots are empty
    """
    sets: Dict[Tuple[int, int], set] = {(i, j): set() for i in cat.objects for j in cat.objects}
    sets[(cat.dom(seed), cat.cod(seed))].add(seed)
    worklist = deque([seed])
    while worklist:
        s = worklist.popleft()
        i, j = cat.dom(s), cat.cod(s)
        for f in cat.outgoing(j):
            t = cat.compose(f, s)
            if t not in sets[(i, cat.cod(f))]:
                sets[(i, cat.cod(f))].add(t)
                worklist.append(t)
        for f in cat.incoming(i):
            t = cat.compose(s, f)
            if t not in sets[(cat.dom(f), j)]:
                sets[(cat.dom(f), j)].add(t)
                worklist.append(t)
    return {key: tuple(sorted(members)) for key, members in sets.items()}


class SeedTrace(BaseModel):
    """What happened to one seed of the closure search."""

    model_config = ConfigDict(frozen=True)

    seed: int
    seed_name: str
    passed: bool
    cardinality: Optional[int] = None
    axiom: Optional[Axiom] = None
    message: Optional[str] = None


class ISSearchResult(BaseModel):
    """All distinct closure invariant systems, with the preferred one."""

    model_config = ConfigDict(frozen=True)

    strongly_connected: bool
    preferred: Optional[InvariantSystem] = None
    systems: Tuple[InvariantSystem, ...] = ()
    trace: Tuple[SeedTrace, ...] = ()

    @property
    def found(self) -> bool:
        return self.preferred is not None

    def cardinalities(self) -> List[int]:
        return sorted({s.cardinality for s in self.systems})


def find_is(cat: FinCategory) -> ISSearchResult:
    """
    Search invariant systems by closing every endomorphism of object 0.

    Raises:
        NotConnectedError: unless the category is connected and nonempty
    """
    if connected_components(cat).count != 1:
        raise NotConnectedError("find_is expects a connected category")
    if not is_strongly_connected(cat).strongly_connected:
        return ISSearchResult(strongly_connected=False)

    systems: List[InvariantSystem] = []
    trace: List[SeedTrace] = []
    for seed in cat.end(0):
        family = closure(cat, seed)
        check = verify_is(cat, family)
        if not check.ok:
            trace.append(
                SeedTrace(seed=seed, seed_name=cat.name(seed), passed=False, axiom=check.axiom, message=check.message)
            )
            continue
        system = InvariantSystem.from_family(family)
        trace.append(SeedTrace(seed=seed, seed_name=cat.name(seed), passed=True, cardinality=system.cardinality))
        if system not in systems:
            systems.append(system)

    preferred = min(systems, key=lambda s: s.cardinality) if systems else None
    logger.debug(
        "is_search_completed",
        seeds=len(trace),
        systems=len(systems),
        cardinality=preferred.cardinality if preferred else None,
    )
    return ISSearchResult(strongly_connected=True, preferred=preferred, systems=tuple(systems), trace=tuple(trace))


def brute_force_find_is(cat: FinCategory, budget: Optional[int] = None) -> List[InvariantSystem]:
    """
    Every invariant system, by exhaustive enumeration of slot subsets.

    Args:
        cat: A valid category
        budget: Largest morphism count accepted; defaults to
            ``Settings.brute_force_budget``

    Raises:
        BudgetExceededError: if the category has more than ``budget`` morphisms
    """
    budget = get_settings().brute_force_budget if budget is None else budget
    if cat.n_morphisms > budget:
        raise BudgetExceededError(
            f"brute-force IS search refused: {cat.n_morphisms} morphisms exceed the budget of {budget}"
        )
    keys = [(i, j) for i in cat.objects for j in cat.objects]
    if any(not cat.hom(i, j) for i, j in keys):
        return []
    choices = [
        [subset for size in range(1, len(cat.hom(i, j)) + 1) for subset in combinations(cat.hom(i, j), size)]
        for i, j in keys
    ]
    found = []
    for picked in product(*choices):
        family = dict(zip(keys, picked))
        if verify_is(cat, family).ok:
            found.append(InvariantSystem.from_family(family))
    return found


class GroupData(BaseModel):
    """The group ``S_base^base``; ``table`` indexes into ``elements``."""

    model_config = ConfigDict(frozen=True)

    base: int
    order: int
    elements: Tuple[int, ...]
    table: Tuple[Tuple[int, ...], ...]
    unit: int

    def position(self, morphism: int) -> int:
        return self.elements.index(morphism)


def group_of(cat: FinCategory, system: InvariantSystem, base: int = 0) -> GroupData:
    """
    The group carried by ``S_base^base`` under composition.

    Raises:
        InvariantSystemError: if the slot is not a group with a unique idempotent
    """
    elements = system.slot(base, base)
    position = {f: k for k, f in enumerate(elements)}
    table = []
    for a in elements:
        row = []
        for b in elements:
            ab = cat.compose(a, b)
            if ab not in position:
                raise InvariantSystemError(f"S[{base},{base}] is not closed under composition")
            row.append(position[ab])
        table.append(tuple(row))
    idempotent = [f for f in elements if cat.compose(f, f) == f]
    if len(idempotent) != 1:
        raise InvariantSystemError(f"S[{base},{base}] has {len(idempotent)} idempotents, expected exactly one")
    unit = position[idempotent[0]]
    n = len(elements)
    if any(table[unit][x] != x or table[x][unit] != x for x in range(n)):
        raise InvariantSystemError(f"idempotent of S[{base},{base}] is not a unit")
    if any(unit not in table[x] for x in range(n)):
        raise InvariantSystemError(f"S[{base},{base}] has a non-invertible element")
    return GroupData(base=base, order=n, elements=elements, table=tuple(table), unit=idempotent[0])


def idempotents(cat: FinCategory, system: InvariantSystem) -> Tuple[int, ...]:
    """The unique idempotent ``e_i`` of every ``S_i^i``."""
    result = []
    for i in cat.objects:
        found = [f for f in system.slot(i, i) if cat.compose(f, f) == f]
        if len(found) != 1:
            raise InvariantSystemError(f"S[{i},{i}] has {len(found)} idempotents, expected exactly one")
        result.append(found[0])
    return tuple(result)


def groupoid(cat: FinCategory, system: InvariantSystem) -> Restriction:
    """
    The groupoid ``𝒢_I`` on ``∪ S_i^j`` with identities ``e_i``.

    Raises:
        InvariantSystemError: if the result is not a valid category
    """
    kept = system.morphisms()
    local = {f: k for k, f in enumerate(kept)}
    units = idempotents(cat, system)
    comp = {}
    for g in kept:
        for f in kept:
            if cat.cod(f) != cat.dom(g):
                continue
            h = cat.compose(g, f)
            if h not in local:
                raise InvariantSystemError(f"{cat.name(g)}∘{cat.name(f)} leaves the invariant system")
            comp[(local[g], local[f])] = local[h]
    category = FinCategory(
        n_objects=cat.n_objects,
        morphisms=tuple(Morphism(name=cat.name(f), dom=cat.dom(f), cod=cat.cod(f)) for f in kept),
        identity=tuple(local[e] for e in units),
        comp=comp,
    )
    report = validate(category)
    if not report.is_valid:
        raise InvariantSystemError(f"groupoid is not a category: {report.violations[0].message}")
    return Restriction(category=category, objects=tuple(cat.objects), morphisms=kept)


class RetractionFunctor(BaseModel):
    """``τ: I -> 𝒢_I``, ``f ↦ e_j∘f∘e_i``; maps into groupoid-local indices."""

    model_config = ConfigDict(frozen=True)

    groupoid: Restriction
    morphism_map: Tuple[int, ...]

    def image(self, f: int) -> int:
        """Parent-category index of ``τ(f)``."""
        return self.groupoid.morphisms[self.morphism_map[f]]


def tau(cat: FinCategory, system: InvariantSystem) -> RetractionFunctor:
    """
    The retraction functor onto the groupoid of ``system``.

    Raises:
        InvariantSystemError: if ``τ`` is not a functor or moves a groupoid arrow
    """
    target = groupoid(cat, system)
    units = idempotents(cat, system)
    local = {f: k for k, f in enumerate(target.morphisms)}
    mapping = []
    for f, m in enumerate(cat.morphisms):
        image = cat.compose(units[m.cod], cat.compose(f, units[m.dom]))
        if image not in local:
            raise InvariantSystemError(f"τ({m.name}) is not in the invariant system")
        mapping.append(local[image])
    problems = check_functor(cat, target.category, list(cat.objects), mapping)
    if problems:
        raise InvariantSystemError(f"τ is not a functor: {problems[0]}")
    if any(target.morphisms[mapping[f]] != f for f in target.morphisms):
        raise InvariantSystemError("τ does not fix the groupoid")
    return RetractionFunctor(groupoid=target, morphism_map=tuple(mapping))


def group_category(cat: FinCategory, group: GroupData) -> FinCategory:
    """``G_I`` as a one-object category, elements named after their morphisms."""
    table = [list(row) for row in group.table]
    return from_monoid_table(table, [cat.name(f) for f in group.elements])


class GroupReduction(BaseModel):
    """
    The functor ``I -> G_I`` obtained from ``τ`` and the equivalence
    ``𝒢_I -> G_I`` given by transition arrows ``t_i ∈ S_base^i``.
    """

    model_config = ConfigDict(frozen=True)

    group: GroupData
    category: FinCategory
    transitions: Tuple[int, ...]
    inverse_transitions: Tuple[int, ...]
    morphism_map: Tuple[int, ...]


def group_reduction(cat: FinCategory, system: InvariantSystem, base: int = 0) -> GroupReduction:
    """
    Reduce ``I`` onto its group: ``f: i -> j`` goes to ``t_j⁻¹∘τ(f)∘t_i``.

    ``t_i`` is the first element of ``S_base^i`` in morphism order, with
    ``t_base = e_base``.

    Raises:
        InvariantSystemError: if the composite is not a functor
    """
    group = group_of(cat, system, base)
    retraction = tau(cat, system)
    units = idempotents(cat, system)
    transitions = []
    inverses = []
    for i in cat.objects:
        t = units[base] if i == base else system.slot(base, i)[0]
        inverse = next(
            (u for u in system.slot(i, base) if cat.compose(u, t) == units[base] and cat.compose(t, u) == units[i]),
            None,
        )
        if inverse is None:
            raise InvariantSystemError(f"transition arrow to object {i} has no inverse in the groupoid")
        transitions.append(t)
        inverses.append(inverse)
    mapping = []
    for f, m in enumerate(cat.morphisms):
        s = retraction.image(f)
        g = cat.compose(inverses[m.cod], cat.compose(s, transitions[m.dom]))
        if g not in group.elements:
            raise InvariantSystemError(f"image of {m.name} falls outside S[{base},{base}]")
        mapping.append(group.position(g))
    target = group_category(cat, group)
    problems = check_functor(cat, target, [0] * cat.n_objects, mapping)
    if problems:
        raise InvariantSystemError(f"reduction to G_I is not a functor: {problems[0]}")
    return GroupReduction(
        group=group,
        category=target,
        transitions=tuple(transitions),
        inverse_transitions=tuple(inverses),
        morphism_map=tuple(mapping),
    )


def check_is_structure(cat: FinCategory, system: InvariantSystem) -> List[str]:
    """
    Exhaustively check the structure an invariant system must carry.

    Equal slot sizes, a group on every ``S_i^i`` with one idempotent, ``e_i``
    acting as identity on neighbouring slots, an invertible groupoid and a
    functorial ``τ``.

    Returns:
        Problems found; empty when everything holds
    """
    problems: List[str] = []
    sizes = {len(s.morphisms) for s in system.slots}
    if len(sizes) != 1:
        problems.append(f"slot cardinalities differ: {sorted(sizes)}")
    try:
        for i in cat.objects:
            group_of(cat, system, base=i)
        units = idempotents(cat, system)
        for i in cat.objects:
            for j in cat.objects:
                if any(cat.compose(s, units[i]) != s for s in system.slot(i, j)):
                    problems.append(f"e_{i} is not a right identity on S[{i},{j}]")
                if any(cat.compose(units[i], s) != s for s in system.slot(j, i)):
                    problems.append(f"e_{i} is not a left identity on S[{j},{i}]")
        target = groupoid(cat, system).category
        if any(target.inverse(f) is None for f in range(target.n_morphisms)):
            problems.append("groupoid has a non-invertible arrow")
        tau(cat, system)
    except InvariantSystemError as exc:
        problems.append(str(exc))
    return problems


def zero_elements(cat: FinCategory) -> Tuple[int, ...]:
    """
    Elements ``a`` of a monoid with ``xa = ax = a`` for all ``x``.

    Raises:
        ValueError: for categories with more than one object
    """
    ensure_valid(cat)
    if cat.n_objects != 1:
        raise ValueError("zero elements are defined for one-object categories")
    return tuple(
        a
        for a in range(cat.n_morphisms)
        if all(cat.compose(x, a) == a and cat.compose(a, x) == a for x in range(cat.n_morphisms))
    )
