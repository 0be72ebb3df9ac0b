"""
Limits and colimits of functors into finite sets, the comparison map between
them, witness functors and the sampled consistency check.

Sets are ``{0, ..., n-1}``; a function is a tuple of images.
"""

from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import structlog
from pydantic import BaseModel, ConfigDict

from ..config import get_settings
from ..exceptions import FunctorError, PreconditionError, SamplingError
from ..models.verdict import Verdict
from .category import (
    ComponentPartition,
    FinCategory,
    Restriction,
    connected_components,
    ensure_valid,
    is_strongly_connected,
    submonoid,
)
from .decision import decide_set
from .invariant_system import find_is
from .prng import XorShift64Star, stream
from .union_find import UnionFind

logger = structlog.get_logger(__name__)

Table = Tuple[int, ...]


class SetFunctor(BaseModel):
    """A functor ``I -> FinSet``; ``action[f]`` is the function ``F(f)``."""

    model_config = ConfigDict(frozen=True)

    sizes: Tuple[int, ...]
    action: Tuple[Table, ...]

    @classmethod
    def on(cls, cat: FinCategory, sizes: Sequence[int], action: Sequence[Sequence[int]]) -> "SetFunctor":
        """
        Build and check functoriality against ``cat``.

        Raises:
            FunctorError: if the data is not a functor
        """
        functor = cls(sizes=tuple(sizes), action=tuple(tuple(t) for t in action))
        problems = set_functor_problems(cat, functor)
        if problems:
            raise FunctorError(problems[0])
        return functor

    def apply(self, f: int, x: int) -> int:
        return self.action[f][x]


def set_functor_problems(cat: FinCategory, functor: SetFunctor) -> List[str]:
    if len(functor.sizes) != cat.n_objects or len(functor.action) != cat.n_morphisms:
        return ["functor data does not match the category's shape"]
    problems: List[str] = []
    for f, m in enumerate(cat.morphisms):
        table = functor.action[f]
        if len(table) != functor.sizes[m.dom] or any(not 0 <= y < functor.sizes[m.cod] for y in table):
            problems.append(f"F({m.name}) is not a function F({m.dom}) -> F({m.cod})")
    if problems:
        return problems
    for i in cat.objects:
        if functor.action[cat.identity[i]] != tuple(range(functor.sizes[i])):
            problems.append(f"F(1_{i}) is not the identity")
    for (g, f), h in sorted(cat.comp.items()):
        if any(functor.action[g][functor.action[f][x]] != functor.action[h][x] for x in range(functor.sizes[cat.dom(f)])):
            problems.append(f"F({cat.name(g)}∘{cat.name(f)}) differs from F({cat.name(g)})∘F({cat.name(f)})")
    return problems


class SetNatTransform(BaseModel):
    """``component[i]`` is the function ``η_i: F(i) -> G(i)``."""

    model_config = ConfigDict(frozen=True)

    component: Tuple[Table, ...]

    @classmethod
    def on(
        cls, cat: FinCategory, source: SetFunctor, target: SetFunctor, component: Sequence[Sequence[int]]
    ) -> "SetNatTransform":
        """
        Raises:
            FunctorError: if a naturality square fails to commute
        """
        eta = cls(component=tuple(tuple(t) for t in component))
        problems = nat_problems(cat, source, target, eta)
        if problems:
            raise FunctorError(problems[0])
        return eta


def nat_problems(cat: FinCategory, source: SetFunctor, target: SetFunctor, eta: SetNatTransform) -> List[str]:
    if len(eta.component) != cat.n_objects:
        return ["transformation has the wrong number of components"]
    problems: List[str] = []
    for i in cat.objects:
        table = eta.component[i]
        if len(table) != source.sizes[i] or any(not 0 <= y < target.sizes[i] for y in table):
            problems.append(f"η_{i} is not a function F({i}) -> G({i})")
    if problems:
        return problems
    for f, m in enumerate(cat.morphisms):
        for x in range(source.sizes[m.dom]):
            if eta.component[m.cod][source.apply(f, x)] != target.apply(f, eta.component[m.dom][x]):
                problems.append(f"naturality square for {m.name} does not commute")
                break
    return problems


def _component_limit(cat: FinCategory, functor: SetFunctor, objects: Tuple[int, ...]) -> List[Table]:
    """Compatible families on one component, by backtracking with propagation."""
    results: List[Table] = []

    def propagate(assignment: Dict[int, int], i: int, x: int) -> Optional[Dict[int, int]]:
        extended = dict(assignment)
        pending = [(i, x)]
        while pending:
            k, v = pending.pop()
            if k in extended:
                if extended[k] != v:
                    return None
                continue
            extended[k] = v
            for f in cat.outgoing(k):
                pending.append((cat.cod(f), functor.apply(f, v)))
        return extended

    def extend(assignment: Dict[int, int]) -> None:
        free = next((i for i in objects if i not in assignment), None)
        if free is None:
            results.append(tuple(assignment[i] for i in objects))
            return
        for x in range(functor.sizes[free]):
            trial = propagate(assignment, free, x)
            if trial is not None:
                extend(trial)

    extend({})
    return results


def limit_set(cat: FinCategory, functor: SetFunctor) -> List[Table]:
    """
    All compatible families ``(x_i)`` with ``F(f)(x_i) = x_j`` for every
    ``f: i -> j``, in lexicographic order.
    """
    partition = connected_components(cat)
    per_component = [_component_limit(cat, functor, objects) for objects in partition.groups()]
    families = []
    for choice in product(*per_component):
        family = [0] * cat.n_objects
        for objects, values in zip(partition.groups(), choice):
            for i, x in zip(objects, values):
                family[i] = x
        families.append(tuple(family))
    return sorted(families)


class SetColimit(BaseModel):
    """Classes of ``⨿ F(i)``; element ``x`` of ``F(i)`` sits at ``offsets[i] + x``."""

    model_config = ConfigDict(frozen=True)

    offsets: Tuple[int, ...]
    classes: Tuple[int, ...]
    count: int

    def class_of(self, i: int, x: int) -> int:
        return self.classes[self.offsets[i] + x]


def colimit_set(cat: FinCategory, functor: SetFunctor) -> SetColimit:
    """Finest equivalence on the disjoint union with ``x ~ F(f)(x)``."""
    offsets = []
    total = 0
    for size in functor.sizes:
        offsets.append(total)
        total += size
    uf = UnionFind(total)
    for f, m in enumerate(cat.morphisms):
        for x in range(functor.sizes[m.dom]):
            uf.union(offsets[m.dom] + x, offsets[m.cod] + functor.apply(f, x))
    classes, count = uf.canonical_labels()
    return SetColimit(offsets=tuple(offsets), classes=classes, count=count)


class CanonicalComponentMap(BaseModel):
    """The comparison ``lim F|C -> colim F|C`` on one connected component ``C``."""

    model_config = ConfigDict(frozen=True)

    objects: Tuple[int, ...]
    limit: Tuple[Table, ...]
    image: Tuple[int, ...]
    classes: Tuple[int, ...]
    well_defined: bool

    @property
    def is_bijective(self) -> bool:
        return len(set(self.image)) == len(self.image) and set(self.image) == set(self.classes)


class LimColimResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    limit: Tuple[Table, ...]
    colimit: SetColimit
    canonical: Tuple[CanonicalComponentMap, ...]

    @property
    def is_bijective(self) -> bool:
        return all(c.is_bijective for c in self.canonical)

    @property
    def well_defined(self) -> bool:
        return all(c.well_defined for c in self.canonical)


def canonical_map(
    cat: FinCategory, functor: SetFunctor, colimit: Optional[SetColimit] = None
) -> Tuple[CanonicalComponentMap, ...]:
    """
    Per component, send a family to the class of its entry at the smallest
    object; the same class must come out of every other object.
    """
    colimit = colimit or colimit_set(cat, functor)
    maps = []
    for objects in connected_components(cat).groups():
        families = _component_limit(cat, functor, objects)
        families.sort()
        image = []
        well_defined = True
        for family in families:
            seen = {colimit.class_of(i, x) for i, x in zip(objects, family)}
            well_defined = well_defined and len(seen) == 1
            image.append(colimit.class_of(objects[0], family[0]))
        classes = sorted({colimit.class_of(i, x) for i in objects for x in range(functor.sizes[i])})
        maps.append(
            CanonicalComponentMap(
                objects=objects,
                limit=tuple(families),
                image=tuple(image),
                classes=tuple(classes),
                well_defined=well_defined,
            )
        )
    return tuple(maps)


def lim_colim(cat: FinCategory, functor: SetFunctor) -> LimColimResult:
    colimit = colimit_set(cat, functor)
    return LimColimResult(
        limit=tuple(limit_set(cat, functor)),
        colimit=colimit,
        canonical=canonical_map(cat, functor, colimit),
    )


def colimit_map(
    cat: FinCategory,
    source: SetFunctor,
    target: SetFunctor,
    eta: SetNatTransform,
    colim_f: Optional[SetColimit] = None,
    colim_g: Optional[SetColimit] = None,
) -> Optional[Table]:
    """``colim(η)`` on class ids, or ``None`` if representatives disagree."""
    colim_f = colim_f or colimit_set(cat, source)
    colim_g = colim_g or colimit_set(cat, target)
    mapping: List[Optional[int]] = [None] * colim_f.count
    for i in cat.objects:
        for x in range(source.sizes[i]):
            c = colim_f.class_of(i, x)
            image = colim_g.class_of(i, eta.component[i][x])
            if mapping[c] is not None and mapping[c] != image:
                return None
            mapping[c] = image
    return tuple(m for m in mapping if m is not None)


def canonical_is_natural(
    cat: FinCategory, source: SetFunctor, target: SetFunctor, eta: SetNatTransform
) -> bool:
    """``colim(η)∘ψ_F = ψ_G∘lim(η)`` on every component."""
    colim_f, colim_g = colimit_set(cat, source), colimit_set(cat, target)
    colim_eta = colimit_map(cat, source, target, eta, colim_f, colim_g)
    if colim_eta is None:
        return False
    maps_g = {m.objects: dict(zip(m.limit, m.image)) for m in canonical_map(cat, target, colim_g)}
    for component in canonical_map(cat, source, colim_f):
        for family, image in zip(component.limit, component.image):
            moved = tuple(eta.component[i][x] for i, x in zip(component.objects, family))
            if maps_g[component.objects].get(moved) != colim_eta[image]:
                return False
    return True


def restrict_set_functor(functor: SetFunctor, restriction: Restriction) -> SetFunctor:
    return SetFunctor(
        sizes=tuple(functor.sizes[i] for i in restriction.objects),
        action=tuple(functor.action[f] for f in restriction.morphisms),
    )


def empty_functor() -> SetFunctor:
    return SetFunctor(sizes=(), action=())


def witness_not_strongly_connected(
    cat: FinCategory, source: Sequence[int], rest: Sequence[int]
) -> SetFunctor:
    """
    ``∅`` on ``source`` and a singleton on ``rest``: the limit is empty
    while the colimit is not.

    Raises:
        PreconditionError: if some arrow runs from ``rest`` into ``source``
    """
    inside = set(source)
    if not inside or not rest:
        raise PreconditionError("both parts of the partition must be nonempty")
    sizes = [0 if i in inside else 1 for i in cat.objects]
    action = []
    for m in cat.morphisms:
        if m.cod in inside and m.dom not in inside:
            raise PreconditionError(f"arrow {m.name} enters the source part")
        action.append(() if m.dom in inside else (0,))
    return SetFunctor.on(cat, sizes, action)


def witness_not_connected(cat: FinCategory, partition: ComponentPartition) -> SetFunctor:
    """``∅`` on the first component and singletons elsewhere."""
    if partition.count < 2:
        raise PreconditionError("category is connected")
    sizes = [0 if partition.component[i] == 0 else 1 for i in cat.objects]
    action = [() if partition.component[m.dom] == 0 else (0,) for m in cat.morphisms]
    return SetFunctor.on(cat, sizes, action)


def representable(cat: FinCategory, i: int) -> SetFunctor:
    """``hom(i, -)`` with post-composition; elements indexed in hom order."""
    position = {f: k for j in cat.objects for k, f in enumerate(cat.hom(i, j))}
    sizes = [len(cat.hom(i, j)) for j in cat.objects]
    action = [
        tuple(position[cat.compose(f, s)] for s in cat.hom(i, m.dom)) for f, m in enumerate(cat.morphisms)
    ]
    return SetFunctor(sizes=tuple(sizes), action=tuple(action))


def representable_witness(cat: FinCategory) -> Optional[Tuple[int, SetFunctor]]:
    """The first object whose representable has a limit that is not a singleton."""
    for i in cat.objects:
        functor = representable(cat, i)
        if len(limit_set(cat, functor)) != 1:
            return i, functor
    return None


class SetWitness(BaseModel):
    model_config = ConfigDict(frozen=True)

    description: str
    functor: SetFunctor
    limit_size: int
    colimit_size: int


def set_witness(cat: FinCategory, verdict: Verdict) -> Optional[SetWitness]:
    """A functor with ``|lim| ≠ |colim|`` backing a negative Set verdict."""
    if verdict.answer:
        return None
    certificate = verdict.certificate
    if certificate.kind == "empty_category":
        functor, description = empty_functor(), "empty diagram: terminal limit, initial colimit"
    elif certificate.kind == "not_connected":
        functor = witness_not_connected(cat, certificate.partition)
        description = "∅ on the first component, {*} elsewhere"
    elif certificate.kind == "not_strongly_connected":
        functor = witness_not_strongly_connected(cat, certificate.source, certificate.rest)
        description = f"∅ on {list(certificate.source)}, {{*}} on {list(certificate.rest)}"
    else:
        found = representable_witness(cat)
        if found is None:
            return None
        i, functor = found
        description = f"representable hom({i}, -)"
    return SetWitness(
        description=description,
        functor=functor,
        limit_size=len(limit_set(cat, functor)),
        colimit_size=colimit_set(cat, functor).count,
    )


def _isomorphism_classes(cat: FinCategory) -> Tuple[Tuple[int, ...], int]:
    uf = UnionFind(cat.n_objects)
    for f, m in enumerate(cat.morphisms):
        if m.dom != m.cod and cat.inverse(f) is not None:
            uf.union(m.dom, m.cod)
    return uf.canonical_labels()


def _random_idempotent(rng: XorShift64Star, n: int) -> Table:
    if n == 0:
        return ()
    kept = [x for x in range(n) if rng.below(2)] or [rng.below(n)]
    return tuple(x if x in kept else rng.choice(kept) for x in range(n))


def _random_action(cat: FinCategory, f: int, sizes: Sequence[int], rng: XorShift64Star) -> Optional[Table]:
    m = cat.morphisms[f]
    n, k = sizes[m.dom], sizes[m.cod]
    if n > 0 and k == 0:
        return None
    if cat.inverse(f) is not None:
        return tuple(rng.permutation(n)) if n == k else None
    if cat.is_idempotent(f):
        return _random_idempotent(rng, n)
    return tuple(rng.below(k) for _ in range(n))


def random_set_functor(
    cat: FinCategory, rng: XorShift64Star, max_size: int, retries: Optional[int] = None
) -> SetFunctor:
    """
    Sample a functor: sizes uniform in ``[0, max_size]`` per isomorphism
    class, non-identity arrows filled in index order, composites of
    already-filled arrows forced through the composition table, and the
    result rejected unless fully functorial.

    Raises:
        SamplingError: after ``retries`` rejected attempts
    """
    retries = get_settings().sampling_retries if retries is None else retries
    iso_class, count = _isomorphism_classes(cat)
    decompositions: Dict[int, List[Tuple[int, int]]] = {}
    for (g, f), h in cat.comp.items():
        if not cat.is_identity(g) and not cat.is_identity(f):
            decompositions.setdefault(h, []).append((g, f))
    for attempt in range(retries):
        class_sizes = [rng.randint(0, max_size) for _ in range(count)]
        sizes = [class_sizes[iso_class[i]] for i in cat.objects]
        action: List[Optional[Table]] = [None] * cat.n_morphisms
        for i in cat.objects:
            action[cat.identity[i]] = tuple(range(sizes[i]))
        failed = False
        for f in range(cat.n_morphisms):
            if action[f] is not None:
                continue
            forced = next(
                ((g, h) for g, h in decompositions.get(f, []) if action[g] is not None and action[h] is not None),
                None,
            )
            if forced is not None:
                g, h = forced
                action[f] = tuple(action[g][y] for y in action[h])  # type: ignore[index]
            else:
                action[f] = _random_action(cat, f, sizes, rng)
            if action[f] is None:
                failed = True
                break
        if failed:
            continue
        functor = SetFunctor(sizes=tuple(sizes), action=tuple(action))  # type: ignore[arg-type]
        if not set_functor_problems(cat, functor):
            return functor
        logger.debug("oracle_sample_rejected", attempt=attempt)
    raise SamplingError(f"no functorial sample after {retries} attempts")


def random_nat_transform(
    cat: FinCategory,
    source: SetFunctor,
    target: SetFunctor,
    rng: XorShift64Star,
    budget: Optional[int] = None,
) -> Optional[SetNatTransform]:
    """
    A natural transformation found by randomized backtracking over the
    elements ``(i, x)``, or ``None`` when none exists or the node budget runs out.
    """
    budget = get_settings().nat_search_budget if budget is None else budget
    variables = [(i, x) for i in cat.objects for x in range(source.sizes[i])]
    preimages: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
    for f, m in enumerate(cat.morphisms):
        for x in range(source.sizes[m.dom]):
            preimages.setdefault((m.cod, source.apply(f, x)), []).append((f, x))
    assignment: Dict[Tuple[int, int], int] = {}
    nodes = 0

    def consistent(i: int, x: int, v: int) -> bool:
        for f in cat.outgoing(i):
            y = (cat.cod(f), source.apply(f, x))
            if y in assignment and assignment[y] != target.apply(f, v):
                return False
        for f, x0 in preimages.get((i, x), []):
            k = cat.dom(f)
            if (k, x0) in assignment and v != target.apply(f, assignment[(k, x0)]):
                return False
        return True

    def search(position: int) -> bool:
        nonlocal nodes
        if position == len(variables):
            return True
        i, x = variables[position]
        candidates = rng.permutation(target.sizes[i])
        for v in candidates:
            nodes += 1
            if nodes > budget:
                return False
            if consistent(i, x, v):
                assignment[(i, x)] = v
                if search(position + 1):
                    return True
                del assignment[(i, x)]
        return False

    if not search(0):
        return None
    component = [tuple(assignment[(i, x)] for x in range(source.sizes[i])) for i in cat.objects]
    return SetNatTransform(component=tuple(component))


class SetOracleReport(BaseModel):
    """Evidence gathered by ``sample_check_set``; consistent iff nothing was flagged."""

    model_config = ConfigDict(frozen=True)

    verdict: Verdict
    samples: int
    seed: int
    transforms_checked: int
    bijective_samples: int
    group_action_checks: int = 0
    witness: Optional[SetWitness] = None
    inconsistencies: Tuple[str, ...] = ()

    @property
    def consistent(self) -> bool:
        return not self.inconsistencies


def fixed_points(cat: FinCategory, functor: SetFunctor) -> Tuple[int, ...]:
    """Points of ``F(0)`` fixed by every arrow of a one-object category."""
    if cat.n_objects != 1:
        raise PreconditionError("fixed points are taken for one-object categories")
    return tuple(
        x for x in range(functor.sizes[0]) if all(functor.apply(f, x) == x for f in range(cat.n_morphisms))
    )


def orbit_count(cat: FinCategory, functor: SetFunctor) -> int:
    """Number of orbits of ``F(0)`` under a one-object category."""
    if cat.n_objects != 1:
        raise PreconditionError("orbits are taken for one-object categories")
    uf = UnionFind(functor.sizes[0])
    for f in range(cat.n_morphisms):
        for x in range(functor.sizes[0]):
            uf.union(x, functor.apply(f, x))
    return uf.canonical_labels()[1]


def _is_group(cat: FinCategory) -> bool:
    return cat.n_objects == 1 and all(cat.inverse(f) is not None for f in range(cat.n_morphisms))


def _restriction_targets(cat: FinCategory) -> List[Restriction]:
    """Submonoids ``S_i^i ∪ {1_i}`` of a connected category with an IS."""
    if connected_components(cat).count != 1 or not is_strongly_connected(cat).strongly_connected:
        return []
    search = find_is(cat)
    if search.preferred is None:
        return []
    return [submonoid(cat, i, search.preferred.slot(i, i)) for i in cat.objects]


def sample_check_set(
    cat: FinCategory,
    n_samples: Optional[int] = None,
    seed: Optional[int] = None,
    max_size: Optional[int] = None,
) -> SetOracleReport:
    """
    Compare ``decide_set`` with sampled evidence.

    Every sample is checked for the component decomposition of limits and
    colimits, a well-defined comparison map and, when an IS exists, the
    restriction of limits to ``S_i^i ∪ {1_i}``. Positive verdicts also need
    bijective comparison maps, natural along sampled transformations, and
    singleton limits of representables; negative verdicts need a witness
    with ``|lim| ≠ |colim|``.
    """
    settings = get_settings()
    n_samples = settings.samples if n_samples is None else n_samples
    seed = settings.seed if seed is None else seed
    max_size = settings.max_set_size if max_size is None else max_size

    ensure_valid(cat)
    verdict = decide_set(cat)
    problems: List[str] = []
    witness = None
    if verdict.answer:
        for i in cat.objects:
            size = len(limit_set(cat, representable(cat, i)))
            if size != 1:
                problems.append(f"representable hom({i}, -) has a limit of size {size}")
    else:
        witness = set_witness(cat, verdict)
        if witness is None:
            problems.append("negative verdict without a witness functor")
        elif witness.limit_size == witness.colimit_size:
            problems.append(f"witness has |lim| = |colim| = {witness.limit_size}")

    partition = connected_components(cat)
    restrictions = _restriction_targets(cat)
    group = _is_group(cat)
    previous: Optional[SetFunctor] = None
    transforms = bijective = group_checks = 0
    for k in range(n_samples):
        rng = stream(seed, k)
        functor = random_set_functor(cat, rng, max_size)
        result = lim_colim(cat, functor)
        if result.is_bijective:
            bijective += 1

        pieces = [_component_limit(cat, functor, objects) for objects in partition.groups()]
        expected = 1
        for piece in pieces:
            expected *= len(piece)
        if expected != len(result.limit):
            problems.append(f"sample {k}: limit is not the product over components")
        if sum(len(c.classes) for c in result.canonical) != result.colimit.count:
            problems.append(f"sample {k}: colimit is not the coproduct over components")
        if not result.well_defined:
            problems.append(f"sample {k}: comparison map depends on the chosen object")
        for restriction in restrictions:
            local = restrict_set_functor(functor, restriction)
            if len(limit_set(restriction.category, local)) != len(result.limit):
                problems.append(f"sample {k}: limit differs from the limit over the submonoid at {restriction.objects[0]}")
        if verdict.answer and not result.is_bijective:
            problems.append(f"sample {k}: comparison map is not bijective")
        if group:
            group_checks += 1
            if len(fixed_points(cat, functor)) != len(result.limit):
                problems.append(f"sample {k}: limit differs from the fixed points of the action")
            if orbit_count(cat, functor) != result.colimit.count:
                problems.append(f"sample {k}: colimit differs from the orbits of the action")

        if previous is not None:
            eta = random_nat_transform(cat, previous, functor, rng.split(1))
            if eta is not None:
                transforms += 1
                if verdict.answer and not canonical_is_natural(cat, previous, functor, eta):
                    problems.append(f"sample {k}: comparison map is not natural")
        previous = functor

    logger.info(
        "set_oracle_completed",
        answer=verdict.label,
        samples=n_samples,
        transforms=transforms,
        inconsistencies=len(problems),
    )
    return SetOracleReport(
        verdict=verdict,
        samples=n_samples,
        seed=seed,
        transforms_checked=transforms,
        bijective_samples=bijective,
        group_action_checks=group_checks,
        witness=witness,
        inconsistencies=tuple(problems),
    )
