"""Frobenius decision procedures for Set and for module categories."""

from math import gcd
from typing import List, Optional, Tuple

import structlog

from ..models.verdict import (
    CardinalityNotInvertibleCertificate,
    ComponentsCertificate,
    EmptyCategoryCertificate,
    InvariantSystemCertificate,
    NoInvariantSystemCertificate,
    NoSingletonSystemCertificate,
    NotConnectedCertificate,
    NotStronglyConnectedCertificate,
    RingSpec,
    Verdict,
)
from .category import (
    FinCategory,
    Restriction,
    connected_components,
    ensure_valid,
    full_subcategory,
    is_strongly_connected,
)
from .invariant_system import InvariantSystem, ISSearchResult, Slot, find_is

logger = structlog.get_logger(__name__)


def invertible(ring: RingSpec, m: int) -> bool:
    """
    Whether the integer ``m`` is a unit of ``ring``.

    Raises:
        ValueError: if ``m < 1``
    """
    if m < 1:
        raise ValueError("invertibility is only asked of positive integers")
    if ring.kind == "z":
        return m == 1
    if ring.kind == "q":
        return True
    assert ring.modulus is not None
    if ring.kind == "zmod":
        return gcd(m, ring.modulus) == 1
    return m % ring.modulus != 0


def decide_group(order: int, ring: RingSpec) -> bool:
    """A finite group is module-Frobenius over ``ring`` iff its order is a unit."""
    return invertible(ring, order)


def lift_system(restriction: Restriction, system: InvariantSystem) -> InvariantSystem:
    """Rewrite an IS of a subcategory in the parent's object and morphism indices."""
    return InvariantSystem(
        slots=tuple(
            Slot(
                dom=restriction.objects[s.dom],
                cod=restriction.objects[s.cod],
                morphisms=tuple(sorted(restriction.morphisms[f] for f in s.morphisms)),
            )
            for s in system.slots
        )
    )


def _finish(verdict: Verdict) -> Verdict:
    logger.info(
        "decision_completed",
        target=verdict.target,
        answer=verdict.label,
        certificate=verdict.certificate.kind,
    )
    return verdict


def decide_set(cat: FinCategory) -> Verdict:
    """
    Decide whether ``cat`` is Set-Frobenius.

    Yes exactly when the category is connected and carries an invariant
    system made of singletons.

    Raises:
        InvalidCategoryError: if ``cat`` is not a valid category
    """
    ensure_valid(cat)
    if cat.n_objects == 0:
        return _finish(
            Verdict(
                answer=False,
                target="set",
                certificate=EmptyCategoryCertificate(has_zero_object=False),
                reason="empty category; Set has no zero object",
            )
        )
    partition = connected_components(cat)
    if partition.count > 1:
        return _finish(
            Verdict(
                answer=False,
                target="set",
                certificate=NotConnectedCertificate(partition=partition),
                reason=f"{partition.count} connected components",
            )
        )
    objects = tuple(cat.objects)
    strong = is_strongly_connected(cat)
    if not strong.strongly_connected:
        return _finish(
            Verdict(
                answer=False,
                target="set",
                certificate=NotStronglyConnectedCertificate(objects=objects, source=strong.source, rest=strong.rest),
                reason=f"not strongly connected; objects {list(strong.source)} only map outwards",
            )
        )
    search = find_is(cat)
    singleton = next((s for s in search.systems if s.is_singleton()), None)
    if singleton is not None:
        return _finish(
            Verdict(
                answer=True,
                target="set",
                certificate=InvariantSystemCertificate(objects=objects, system=singleton, cardinality=1),
                reason="singleton invariant system",
            )
        )
    if search.systems:
        cardinalities = tuple(search.cardinalities())
        return _finish(
            Verdict(
                answer=False,
                target="set",
                certificate=NoSingletonSystemCertificate(objects=objects, cardinalities=cardinalities),
                reason=f"no singleton invariant system; cardinalities {list(cardinalities)}",
            )
        )
    return _finish(
        Verdict(
            answer=False,
            target="set",
            certificate=NoInvariantSystemCertificate(objects=objects, trace=search.trace),
            reason="no invariant system",
        )
    )


def _component_outcome(
    cat: FinCategory, objects: Tuple[int, ...], ring: RingSpec
) -> Tuple[Optional[InvariantSystemCertificate], Optional[Verdict]]:
    """Certificate for one component, or the negative verdict it forces."""
    restriction = full_subcategory(cat, objects)
    local = restriction.category
    strong = is_strongly_connected(local)
    target = str(ring)
    if not strong.strongly_connected:
        source = tuple(objects[i] for i in strong.source)
        rest = tuple(objects[i] for i in strong.rest)
        return None, Verdict(
            answer=False,
            target=target,
            certificate=NotStronglyConnectedCertificate(objects=objects, source=source, rest=rest),
            reason=f"component {list(objects)} is not strongly connected",
        )
    search: ISSearchResult = find_is(local)
    if not search.systems:
        trace = tuple(
            t.model_copy(update={"seed": restriction.morphisms[t.seed]}) for t in search.trace
        )
        return None, Verdict(
            answer=False,
            target=target,
            certificate=NoInvariantSystemCertificate(objects=objects, trace=trace),
            reason=f"component {list(objects)} has no invariant system",
        )
    usable = [s for s in search.systems if invertible(ring, s.cardinality)]
    if not usable:
        cardinality = min(s.cardinality for s in search.systems)
        return None, Verdict(
            answer=False,
            target=target,
            certificate=CardinalityNotInvertibleCertificate(
                objects=objects,
                cardinality=cardinality,
                cardinalities=tuple(search.cardinalities()),
                ring=target,
            ),
            reason=f"|G_I|={cardinality} not invertible in {target}",
        )
    chosen = min(usable, key=lambda s: s.cardinality)
    return (
        InvariantSystemCertificate(
            objects=objects,
            system=lift_system(restriction, chosen),
            cardinality=chosen.cardinality,
            ring=target,
            invertible=True,
        ),
        None,
    )


def decide_mod(cat: FinCategory, ring: RingSpec) -> Verdict:
    """
    Decide whether ``cat`` is Frobenius relative to ``ring``-modules.

    Every connected component needs an invariant system whose slot
    cardinality is a unit of ``ring``. The first failing component, in
    component order, supplies the negative certificate.

    Raises:
        InvalidCategoryError: if ``cat`` is not a valid category
    """
    ensure_valid(cat)
    target = str(ring)
    if cat.n_objects == 0:
        return _finish(
            Verdict(
                answer=True,
                target=target,
                certificate=EmptyCategoryCertificate(has_zero_object=True),
                reason="empty category; module categories have a zero object",
            )
        )
    components: List[InvariantSystemCertificate] = []
    for objects in connected_components(cat).groups():
        certificate, failure = _component_outcome(cat, objects, ring)
        if failure is not None:
            return _finish(failure)
        assert certificate is not None
        components.append(certificate)
    sizes = ", ".join(str(c.cardinality) for c in components)
    return _finish(
        Verdict(
            answer=True,
            target=target,
            certificate=ComponentsCertificate(components=tuple(components)),
            reason=f"every component has an invariant system of invertible cardinality ({sizes})",
        )
    )
