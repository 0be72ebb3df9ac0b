"""
Limits, colimits and comparison maps for functors into F_p-vector spaces,
the averaging splitting for groups, the naturality solver and the sampled
consistency check for module verdicts.

A functor is stored by its dimensions and one matrix per morphism; vectors
of ``⊕_i F(i)`` are laid out object by object.
"""

from dataclasses import dataclass
from itertools import product
from typing import List, Literal, Optional, Sequence, Tuple

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict

from ..config import get_settings
from ..exceptions import FunctorError, PreconditionError, SamplingError
from ..models.verdict import RingSpec, Verdict
from .category import FinCategory, connected_components, ensure_valid, full_subcategory, is_strongly_connected
from .decision import decide_mod
from .invariant_system import GroupReduction, ISCheck, Slot, find_is, group_reduction, verify_is
from .linalg import MatrixFp, block_diagonal, check_modulus, hstack, permutation_like, vstack
from .prng import XorShift64Star, stream
from .set_oracle import SetFunctor, random_set_functor

logger = structlog.get_logger(__name__)


def _offsets(dims: Sequence[int]) -> Tuple[int, ...]:
    offsets = []
    total = 0
    for d in dims:
        offsets.append(total)
        total += d
    return tuple(offsets)


@dataclass(frozen=True)
class VectFunctor:
    """A functor ``I -> Vect(F_p)``; ``action[f]`` is a ``dims[cod] × dims[dom]`` matrix."""

    p: int
    dims: Tuple[int, ...]
    action: Tuple[MatrixFp, ...]

    @classmethod
    def on(cls, cat: FinCategory, p: int, dims: Sequence[int], action: Sequence[MatrixFp]) -> "VectFunctor":
        """
        Raises:
            FunctorError: if identities or composites are not preserved
        """
        functor = cls(p=check_modulus(p), dims=tuple(dims), action=tuple(action))
        problems = vect_functor_problems(cat, functor)
        if problems:
            raise FunctorError(problems[0])
        return functor

    @property
    def total(self) -> int:
        return sum(self.dims)

    @property
    def offsets(self) -> Tuple[int, ...]:
        return _offsets(self.dims)


def vect_functor_problems(cat: FinCategory, functor: VectFunctor) -> List[str]:
    if len(functor.dims) != cat.n_objects or len(functor.action) != cat.n_morphisms:
        return ["functor data does not match the category's shape"]
    problems: List[str] = []
    for f, m in enumerate(cat.morphisms):
        if functor.action[f].shape != (functor.dims[m.cod], functor.dims[m.dom]):
            problems.append(f"F({m.name}) has shape {functor.action[f].shape}")
        elif functor.action[f].p != functor.p:
            problems.append(f"F({m.name}) lives over the wrong field")
    if problems:
        return problems
    for i in cat.objects:
        if functor.action[cat.identity[i]] != MatrixFp.identity(functor.p, functor.dims[i]):
            problems.append(f"F(1_{i}) is not the identity")
    for (g, f), h in sorted(cat.comp.items()):
        if functor.action[g] @ functor.action[f] != functor.action[h]:
            problems.append(f"F({cat.name(g)}∘{cat.name(f)}) differs from F({cat.name(g)})·F({cat.name(f)})")
    return problems


@dataclass(frozen=True)
class VectNatTransform:
    """``component[i]`` is the matrix of ``η_i: F(i) -> G(i)``."""

    component: Tuple[MatrixFp, ...]

    @classmethod
    def on(
        cls, cat: FinCategory, source: VectFunctor, target: VectFunctor, component: Sequence[MatrixFp]
    ) -> "VectNatTransform":
        """
        Raises:
            FunctorError: if a naturality square fails to commute
        """
        eta = cls(component=tuple(component))
        problems = vect_nat_problems(cat, source, target, eta)
        if problems:
            raise FunctorError(problems[0])
        return eta

    def matrix(self, p: int) -> MatrixFp:
        return block_diagonal(p, self.component)


def vect_nat_problems(cat: FinCategory, source: VectFunctor, target: VectFunctor, eta: VectNatTransform) -> List[str]:
    if len(eta.component) != cat.n_objects:
        return ["transformation has the wrong number of components"]
    for i in cat.objects:
        if eta.component[i].shape != (target.dims[i], source.dims[i]):
            return [f"η_{i} has shape {eta.component[i].shape}"]
    return [
        f"naturality square for {m.name} does not commute"
        for f, m in enumerate(cat.morphisms)
        if eta.component[m.cod] @ source.action[f] != target.action[f] @ eta.component[m.dom]
    ]


def constraint_matrix(cat: FinCategory, functor: VectFunctor) -> MatrixFp:
    """Stacked rows ``F(f)·x_i − x_j`` for every non-identity ``f: i -> j``."""
    offsets, total = functor.offsets, functor.total
    blocks = []
    for f, m in enumerate(cat.morphisms):
        if cat.is_identity(f):
            continue
        block = np.zeros((functor.dims[m.cod], total), dtype=np.int64)
        i, j = offsets[m.dom], offsets[m.cod]
        block[:, i : i + functor.dims[m.dom]] += functor.action[f].data
        block[:, j : j + functor.dims[m.cod]] -= np.eye(functor.dims[m.cod], dtype=np.int64)
        blocks.append(MatrixFp(functor.p, block))
    return vstack(blocks, cols=total, p=functor.p)


@dataclass(frozen=True)
class LimitSpace:
    """Columns of ``basis`` span the limit inside ``⊕_i F(i)``."""

    basis: MatrixFp
    offsets: Tuple[int, ...]
    dims: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.basis.cols

    def at(self, i: int) -> MatrixFp:
        """The projection of the basis onto ``F(i)``."""
        return self.basis.row_block(self.offsets[i], self.offsets[i] + self.dims[i])


def limit_vect(cat: FinCategory, functor: VectFunctor) -> LimitSpace:
    return LimitSpace(
        basis=constraint_matrix(cat, functor).nullspace(), offsets=functor.offsets, dims=functor.dims
    )


@dataclass(frozen=True)
class ColimitSpace:
    """
    ``projection`` maps ``⊕_i F(i)`` onto colimit coordinates with kernel
    ``relations``; ``section`` is a right inverse built from standard vectors.
    """

    projection: MatrixFp
    section: MatrixFp
    relations: MatrixFp
    offsets: Tuple[int, ...]
    dims: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.projection.rows

    def at(self, i: int) -> MatrixFp:
        """Colimit coordinates of the inclusion of ``F(i)``."""
        return self.projection.columns(range(self.offsets[i], self.offsets[i] + self.dims[i]))


def colimit_vect(cat: FinCategory, functor: VectFunctor) -> ColimitSpace:
    """Quotient of ``⊕_i F(i)`` by the span of ``ι_j F(f) v − ι_i v``."""
    p, offsets, total = functor.p, functor.offsets, functor.total
    columns = []
    for f, m in enumerate(cat.morphisms):
        if cat.is_identity(f):
            continue
        block = np.zeros((total, functor.dims[m.dom]), dtype=np.int64)
        i, j = offsets[m.dom], offsets[m.cod]
        block[j : j + functor.dims[m.cod], :] += functor.action[f].data
        block[i : i + functor.dims[m.dom], :] -= np.eye(functor.dims[m.dom], dtype=np.int64)
        columns.append(MatrixFp(p, block))
    relations = hstack(columns, rows=total, p=p).image()
    pivots = set(relations.T.rref().pivots)
    complement = [c for c in range(total) if c not in pivots]
    section = MatrixFp.identity(p, total).columns(complement)
    change = hstack([relations, section], rows=total, p=p).inverse()
    projection = change.row_block(relations.cols, total)
    return ColimitSpace(
        projection=projection, section=section, relations=relations, offsets=offsets, dims=functor.dims
    )


def canonical_map_vect(
    cat: FinCategory,
    functor: VectFunctor,
    limit: Optional[LimitSpace] = None,
    colimit: Optional[ColimitSpace] = None,
) -> MatrixFp:
    """``lim F -> colim F`` through the smallest object of every component."""
    limit = limit or limit_vect(cat, functor)
    colimit = colimit or colimit_vect(cat, functor)
    result = MatrixFp.zeros(functor.p, colimit.dim, limit.dim)
    for objects in connected_components(cat).groups():
        result = result + colimit.at(objects[0]) @ limit.at(objects[0])
    return result


def canonical_well_defined(
    cat: FinCategory, functor: VectFunctor, limit: LimitSpace, colimit: ColimitSpace
) -> bool:
    """Every object of a component yields the same comparison map."""
    for objects in connected_components(cat).groups():
        reference = colimit.at(objects[0]) @ limit.at(objects[0])
        if any(colimit.at(i) @ limit.at(i) != reference for i in objects[1:]):
            return False
    return True


def limit_map(
    source: VectFunctor, target: VectFunctor, eta: VectNatTransform, lim_f: LimitSpace, lim_g: LimitSpace
) -> MatrixFp:
    """
    Raises:
        FunctorError: if ``η`` does not carry limit vectors to limit vectors
    """
    solution = lim_g.basis.solve(eta.matrix(source.p) @ lim_f.basis)
    if solution is None:
        raise FunctorError("η does not preserve the limit")
    return solution


def colimit_map_vect(
    source: VectFunctor, eta: VectNatTransform, colim_f: ColimitSpace, colim_g: ColimitSpace
) -> MatrixFp:
    return colim_g.projection @ eta.matrix(source.p) @ colim_f.section


def canonical_is_natural_vect(
    cat: FinCategory, source: VectFunctor, target: VectFunctor, eta: VectNatTransform
) -> bool:
    """``colim(η)·ψ_F = ψ_G·lim(η)``."""
    lim_f, lim_g = limit_vect(cat, source), limit_vect(cat, target)
    colim_f, colim_g = colimit_vect(cat, source), colimit_vect(cat, target)
    left = colimit_map_vect(source, eta, colim_f, colim_g) @ canonical_map_vect(cat, source, lim_f, colim_f)
    right = canonical_map_vect(cat, target, lim_g, colim_g) @ limit_map(source, target, eta, lim_f, lim_g)
    return left == right


@dataclass(frozen=True)
class NormSplitting:
    """The averaging idempotent of a group action and the inverse it induces."""

    averaging: MatrixFp
    canonical: MatrixFp
    inverse: MatrixFp
    idempotent: bool
    image_is_invariants: bool
    two_sided: bool


def norm_splitting(cat: FinCategory, functor: VectFunctor) -> NormSplitting:
    """
    ``N = |G|⁻¹ Σ_g F(g)`` for a group ``G`` seen as a one-object category.

    Raises:
        PreconditionError: if ``cat`` is not a group or ``p`` divides ``|G|``
    """
    p = functor.p
    if cat.n_objects != 1 or any(cat.inverse(f) is None for f in range(cat.n_morphisms)):
        raise PreconditionError("norm splitting needs a group")
    order = cat.n_morphisms
    if order % p == 0:
        raise PreconditionError(f"|G|={order} is not invertible mod {p}")
    total = MatrixFp.zeros(p, functor.dims[0], functor.dims[0])
    for f in range(order):
        total = total + functor.action[f]
    averaging = total.scale(pow(order, -1, p))
    limit, colimit = limit_vect(cat, functor), colimit_vect(cat, functor)
    canonical = canonical_map_vect(cat, functor, limit, colimit)
    inverse = limit.basis.solve(averaging @ colimit.section)
    if inverse is None:
        raise FunctorError("averaging does not land in the invariants")
    return NormSplitting(
        averaging=averaging,
        canonical=canonical,
        inverse=inverse,
        idempotent=averaging @ averaging == averaging,
        image_is_invariants=averaging.rank() == limit.dim
        and hstack([limit.basis, averaging]).rank() == limit.dim,
        two_sided=canonical @ inverse == MatrixFp.identity(p, colimit.dim)
        and inverse @ canonical == MatrixFp.identity(p, limit.dim),
    )


@dataclass(frozen=True)
class NaturalityProblem:
    """
    Unknown comparison maps ``ψ_k: lim F_k -> colim F_k``, constrained by
    ``colim(η)·ψ_s = ψ_t·lim(η)`` for every ``(s, t, η)``.
    """

    category: FinCategory
    functors: Tuple[VectFunctor, ...]
    transforms: Tuple[Tuple[int, int, VectNatTransform], ...] = ()


NaturalityStatus = Literal["feasible", "infeasible", "inconclusive"]
NaturalityTier = Literal["trivial", "forced_singular", "exhaustive", "sampling"]


@dataclass(frozen=True)
class NaturalitySolution:
    status: NaturalityStatus
    tier: NaturalityTier
    reason: str
    solution_dim: int
    psi: Optional[Tuple[MatrixFp, ...]] = None


def _psi_at(kernel: MatrixFp, coefficients: Sequence[int], layout: Sequence[Tuple[int, int, int]]) -> List[MatrixFp]:
    vector = (kernel.data @ np.array(coefficients, dtype=np.int64).reshape(-1, 1)) % kernel.p
    return [
        MatrixFp(kernel.p, vector[start : start + rows * cols, 0].reshape(rows, cols))
        for start, rows, cols in layout
    ]


def solve_naturality(
    problem: NaturalityProblem,
    exhaustive_limit: Optional[int] = None,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
) -> NaturalitySolution:
    """
    Look for comparison maps that satisfy every constraint and are all
    invertible.

    The linear constraints are solved jointly. Invertibility is then searched
    in three tiers: detection of a forced singular ``ψ``, exhaustive
    enumeration when the solution space has at most ``exhaustive_limit``
    points, and ``trials`` random points otherwise. A failed random search
    is reported as inconclusive.
    """
    settings = get_settings()
    exhaustive_limit = settings.exhaustive_limit if exhaustive_limit is None else exhaustive_limit
    trials = settings.sampling_trials if trials is None else trials
    seed = settings.seed if seed is None else seed
    cat = problem.category
    if not problem.functors:
        return NaturalitySolution(status="feasible", tier="trivial", reason="no functors", solution_dim=0, psi=())
    p = problem.functors[0].p

    limits = [limit_vect(cat, F) for F in problem.functors]
    colimits = [colimit_vect(cat, F) for F in problem.functors]
    layout = []
    start = 0
    for lim, colim in zip(limits, colimits):
        layout.append((start, colim.dim, lim.dim))
        start += colim.dim * lim.dim
    unknowns = start

    rows = []
    for s, t, eta in problem.transforms:
        source, target = problem.functors[s], problem.functors[t]
        a = colimit_map_vect(source, eta, colimits[s], colimits[t])
        lam = limit_map(source, target, eta, limits[s], limits[t])
        block = np.zeros((colimits[t].dim * limits[s].dim, unknowns), dtype=np.int64)
        s_start, _, s_cols = layout[s]
        t_start, t_rows, t_cols = layout[t]
        block[:, s_start : s_start + colimits[s].dim * s_cols] += a.kron(MatrixFp.identity(p, s_cols)).data
        block[:, t_start : t_start + t_rows * t_cols] -= MatrixFp.identity(p, t_rows).kron(lam.T).data
        rows.append(MatrixFp(p, block))
    kernel = vstack(rows, cols=unknowns, p=p).nullspace()
    d = kernel.cols

    for k, (begin, n_rows, n_cols) in enumerate(layout):
        if n_rows != n_cols:
            return _verdict("infeasible", "forced_singular", f"ψ_{k} is {n_rows}×{n_cols}", d)
    if all(n == 0 for _, n, _ in layout):
        return _verdict("feasible", "trivial", "all comparison maps are 0×0", d, psi=())
    for k, (begin, n, _) in enumerate(layout):
        if n == 0:
            continue
        block = kernel.row_block(begin, begin + n * n)
        if block.is_zero():
            return _verdict("infeasible", "forced_singular", f"ψ_{k} is forced to 0", d)
        basis = [MatrixFp(p, block.data[:, c].reshape(n, n)) for c in range(d)]
        if hstack(basis).rank() < n or vstack(basis).rank() < n:
            return _verdict("infeasible", "forced_singular", f"every admissible ψ_{k} has rank below {n}", d)

    def all_invertible(coefficients: Sequence[int]) -> Optional[List[MatrixFp]]:
        psi = _psi_at(kernel, coefficients, layout)
        return psi if all(m.is_invertible() for m in psi) else None

    if p**d <= exhaustive_limit:
        for coefficients in product(range(p), repeat=d):
            psi = all_invertible(coefficients)
            if psi is not None:
                return _verdict("feasible", "exhaustive", "invertible comparison maps found", d, psi=tuple(psi))
        return _verdict("infeasible", "exhaustive", f"none of the {p**d} solutions is invertible", d)

    rng = XorShift64Star(seed)
    for _ in range(trials):
        psi = all_invertible([rng.below(p) for _ in range(d)])
        if psi is not None:
            return _verdict("feasible", "sampling", "invertible comparison maps found", d, psi=tuple(psi))
    return _verdict("inconclusive", "sampling", f"no invertible solution in {trials} random trials", d)


def _verdict(
    status: NaturalityStatus,
    tier: NaturalityTier,
    reason: str,
    solution_dim: int,
    psi: Optional[Tuple[MatrixFp, ...]] = None,
) -> NaturalitySolution:
    logger.debug("naturality_search_tier", status=status, tier=tier, solution_dim=solution_dim)
    return NaturalitySolution(status=status, tier=tier, reason=reason, solution_dim=solution_dim, psi=psi)


def regular_representation(group: FinCategory, p: int) -> VectFunctor:
    """``F_p[G]`` with ``g·e_h = e_{gh}``."""
    n = group.n_morphisms
    action = [permutation_like(p, [group.compose(g, h) for h in range(n)], n) for g in range(n)]
    return VectFunctor.on(group, p, [n], action)


def trivial_representation(group: FinCategory, p: int) -> VectFunctor:
    return VectFunctor.on(group, p, [1], [MatrixFp.identity(p, 1)] * group.n_morphisms)


def augmentation(group: FinCategory, p: int) -> VectNatTransform:
    n = group.n_morphisms
    return VectNatTransform.on(
        group,
        regular_representation(group, p),
        trivial_representation(group, p),
        [MatrixFp.from_rows(p, [[1] * n])],
    )


def pullback(cat: FinCategory, functor: VectFunctor, object_map: Sequence[int], morphism_map: Sequence[int]) -> VectFunctor:
    """``F∘π`` for a functor ``π: cat -> source of F`` given by its tables."""
    return VectFunctor.on(
        cat,
        functor.p,
        [functor.dims[object_map[i]] for i in cat.objects],
        [functor.action[morphism_map[f]] for f in range(cat.n_morphisms)],
    )


def pullback_transform(
    cat: FinCategory, eta: VectNatTransform, object_map: Sequence[int]
) -> VectNatTransform:
    return VectNatTransform(component=tuple(eta.component[object_map[i]] for i in cat.objects))


@dataclass(frozen=True)
class ModWitness:
    """A naturality problem on the component ``objects`` with its solver outcome."""

    objects: Tuple[int, ...]
    group_order: int
    problem: NaturalityProblem
    solution: NaturalitySolution


def witness_mod(cat: FinCategory, p: int) -> Optional[ModWitness]:
    """
    Regular representation and augmentation of ``G_I`` pulled back to the
    failing component; the solver should find the problem infeasible.

    Returns ``None`` when the negative verdict does not come from a
    non-invertible IS cardinality.

    Raises:
        PreconditionError: if the category is Frobenius over F_p
    """
    verdict = decide_mod(cat, RingSpec.prime_field(p))
    if verdict.answer:
        raise PreconditionError(f"category is Frobenius over fp:{p}; no witness exists")
    certificate = verdict.certificate
    if certificate.kind != "cardinality_not_invertible":
        return None
    restriction = full_subcategory(cat, certificate.objects)
    local = restriction.category
    system = find_is(local).preferred
    assert system is not None
    reduction = group_reduction(local, system)
    group = reduction.category
    object_map = [0] * local.n_objects
    regular = pullback(local, regular_representation(group, p), object_map, reduction.morphism_map)
    trivial = pullback(local, trivial_representation(group, p), object_map, reduction.morphism_map)
    epsilon = VectNatTransform.on(
        local, regular, trivial, pullback_transform(local, augmentation(group, p), object_map).component
    )
    problem = NaturalityProblem(category=local, functors=(regular, trivial), transforms=((0, 1, epsilon),))
    solution = solve_naturality(problem)
    logger.info("mod_witness_built", objects=list(certificate.objects), order=reduction.group.order, status=solution.status)
    return ModWitness(
        objects=certificate.objects, group_order=reduction.group.order, problem=problem, solution=solution
    )


def witness_not_strongly_connected_vect(
    cat: FinCategory, source: Sequence[int], rest: Sequence[int], p: int
) -> VectFunctor:
    """
    ``0`` on ``source`` and ``F_p`` on ``rest``.

    Raises:
        PreconditionError: if some arrow runs from ``rest`` into ``source``
    """
    inside = set(source)
    if not inside or not rest:
        raise PreconditionError("both parts of the partition must be nonempty")
    dims = [0 if i in inside else 1 for i in cat.objects]
    action = []
    for m in cat.morphisms:
        if m.cod in inside and m.dom not in inside:
            raise PreconditionError(f"arrow {m.name} enters the source part")
        action.append(MatrixFp.zeros(p, dims[m.cod], dims[m.dom]) if m.dom in inside else MatrixFp.identity(p, 1))
    return VectFunctor.on(cat, p, dims, action)


def free_functor(cat: FinCategory, i: int, p: int) -> VectFunctor:
    """``j ↦ F_p^{hom(i, j)}`` with post-composition."""
    position = {f: k for j in cat.objects for k, f in enumerate(cat.hom(i, j))}
    dims = [len(cat.hom(i, j)) for j in cat.objects]
    action = [
        permutation_like(p, [position[cat.compose(f, s)] for s in cat.hom(i, m.dom)], dims[m.cod])
        for f, m in enumerate(cat.morphisms)
    ]
    return VectFunctor(p=check_modulus(p), dims=tuple(dims), action=tuple(action))


class FreeProbe(BaseModel):
    """Limit dimension of a free functor, with supports when it is one."""

    model_config = ConfigDict(frozen=True)

    object: int
    dimension: int
    supports: Optional[Tuple[Slot, ...]] = None


def free_probe(cat: FinCategory, i: int, p: int) -> FreeProbe:
    """
    Raises:
        PreconditionError: unless the category is connected and strongly connected
    """
    if connected_components(cat).count != 1 or not is_strongly_connected(cat).strongly_connected:
        raise PreconditionError("free probes need a strongly connected category")
    functor = free_functor(cat, i, p)
    limit = limit_vect(cat, functor)
    supports = None
    if limit.dim == 1:
        supports = tuple(
            Slot(
                dom=i,
                cod=j,
                morphisms=tuple(
                    s for k, s in enumerate(cat.hom(i, j)) if limit.basis.data[limit.offsets[j] + k, 0] != 0
                ),
            )
            for j in cat.objects
        )
    return FreeProbe(object=i, dimension=limit.dim, supports=supports)


class FreeProbeFamily(BaseModel):
    model_config = ConfigDict(frozen=True)

    probes: Tuple[FreeProbe, ...]
    check: Optional[ISCheck] = None

    @property
    def recovers_system(self) -> bool:
        return self.check is not None and self.check.ok


def free_probe_family(cat: FinCategory, p: int) -> FreeProbeFamily:
    """Probe every object; when all limits are lines, test their supports as an IS."""
    probes = tuple(free_probe(cat, i, p) for i in cat.objects)
    check = None
    if all(probe.supports is not None for probe in probes):
        family = {(s.dom, s.cod): s.morphisms for probe in probes for s in probe.supports or ()}
        check = verify_is(cat, family)
    return FreeProbeFamily(probes=probes, check=check)


def linearize(functor: SetFunctor, p: int, cat: FinCategory) -> VectFunctor:
    """The free vector-space functor on a set-valued functor."""
    action = [
        permutation_like(p, functor.action[f], functor.sizes[m.cod]) for f, m in enumerate(cat.morphisms)
    ]
    return VectFunctor(p=check_modulus(p), dims=functor.sizes, action=tuple(action))


def direct_sum(p: int, functors: Sequence[VectFunctor], cat: FinCategory) -> VectFunctor:
    dims = [sum(F.dims[i] for F in functors) for i in cat.objects]
    action = [block_diagonal(p, [F.action[f] for F in functors]) for f in range(cat.n_morphisms)]
    return VectFunctor(p=p, dims=tuple(dims), action=tuple(action))


def random_invertible(p: int, n: int, rng: XorShift64Star, attempts: int = 200) -> MatrixFp:
    """
    Raises:
        SamplingError: if no invertible matrix turns up
    """
    for _ in range(attempts):
        candidate = MatrixFp(p, np.array([[rng.below(p) for _ in range(n)] for _ in range(n)], dtype=np.int64).reshape(n, n))
        if candidate.is_invertible():
            return candidate
    raise SamplingError(f"no invertible {n}×{n} matrix over F_{p} after {attempts} attempts")


def cyclic_subfunctor(cat: FinCategory, functor: VectFunctor, i: int, vector: Sequence[int]) -> VectFunctor:
    """
    The subfunctor generated by ``vector ∈ F(i)``: at ``j`` the span of
    ``F(f)·vector`` over ``f: i -> j``, written in a basis of that span.

    Raises:
        PreconditionError: if ``vector`` does not live in ``F(i)``
    """
    p = functor.p
    if len(vector) != functor.dims[i]:
        raise PreconditionError(f"vector has {len(vector)} entries, F({i}) has dimension {functor.dims[i]}")
    v = MatrixFp(p, np.array(vector, dtype=np.int64).reshape(functor.dims[i], 1))
    bases = [
        hstack([functor.action[f] @ v for f in cat.hom(i, j)], rows=functor.dims[j], p=p).image()
        for j in cat.objects
    ]
    action = []
    for f, m in enumerate(cat.morphisms):
        restricted = bases[m.cod].solve(functor.action[f] @ bases[m.dom])
        if restricted is None:
            raise FunctorError(f"span at object {m.dom} is not carried into the span at {m.cod}")
        action.append(restricted)
    return VectFunctor.on(cat, p, [b.cols for b in bases], action)


def random_vect_functor(cat: FinCategory, p: int, rng: XorShift64Star, max_dim: int) -> VectFunctor:
    """
    One or two linearized random set functors, summed, then conjugated by
    random changes of basis at every object. Half of the time the result is
    cut down to the subfunctor generated by a random nonzero vector, which
    need not be a permutation representation.
    """
    summands = 1 + rng.below(2)
    size = max_dim // summands
    parts = [linearize(random_set_functor(cat, rng, size), p, cat) for _ in range(summands)]
    total = direct_sum(p, parts, cat)
    bases = [random_invertible(p, d, rng) for d in total.dims]
    inverses = [b.inverse() for b in bases]
    action = [bases[m.cod] @ total.action[f] @ inverses[m.dom] for f, m in enumerate(cat.morphisms)]
    functor = VectFunctor.on(cat, p, total.dims, action)
    carriers = [i for i in cat.objects if functor.dims[i] > 0]
    if not carriers or rng.below(2) == 0:
        return functor
    i = carriers[rng.below(len(carriers))]
    vector = [rng.below(p) for _ in range(functor.dims[i])]
    if not any(vector):
        vector[rng.below(len(vector))] = 1
    return cyclic_subfunctor(cat, functor, i, vector)


def random_vect_nat(
    cat: FinCategory, source: VectFunctor, target: VectFunctor, rng: XorShift64Star
) -> VectNatTransform:
    """A uniformly random point of the space of natural transformations."""
    p = source.p
    layout = []
    start = 0
    for i in cat.objects:
        layout.append((start, target.dims[i], source.dims[i]))
        start += target.dims[i] * source.dims[i]
    rows = []
    for f, m in enumerate(cat.morphisms):
        if cat.is_identity(f):
            continue
        i_start, i_rows, i_cols = layout[m.dom]
        j_start, j_rows, j_cols = layout[m.cod]
        block = np.zeros((target.dims[m.cod] * source.dims[m.dom], start), dtype=np.int64)
        block[:, i_start : i_start + i_rows * i_cols] += target.action[f].kron(MatrixFp.identity(p, i_cols)).data
        block[:, j_start : j_start + j_rows * j_cols] -= MatrixFp.identity(p, j_rows).kron(source.action[f].T).data
        rows.append(MatrixFp(p, block))
    kernel = vstack(rows, cols=start, p=p).nullspace()
    components = _psi_at(kernel, [rng.below(p) for _ in range(kernel.cols)], layout)
    return VectNatTransform.on(cat, source, target, components)


class ModOracleReport(BaseModel):
    """Evidence gathered by ``sample_check_mod``; consistent iff nothing was flagged."""

    model_config = ConfigDict(frozen=True)

    verdict: Verdict
    p: int
    samples: int
    seed: int
    invertible_samples: int
    transforms_checked: int
    norm_checks: int
    pullback_checks: int
    witness: Optional[str] = None
    witness_status: Optional[NaturalityStatus] = None
    probe: Optional[FreeProbeFamily] = None
    inconclusive: int = 0
    inconsistencies: Tuple[str, ...] = ()

    @property
    def consistent(self) -> bool:
        return not self.inconsistencies


def _group_reductions(cat: FinCategory, verdict: Verdict) -> List[Tuple[Tuple[int, ...], FinCategory, GroupReduction]]:
    """``(objects, component, reduction)`` for every component of a positive verdict."""
    if verdict.certificate.kind != "components":
        return []
    result = []
    for component in verdict.certificate.components:
        local = full_subcategory(cat, component.objects).category
        systems = [s for s in find_is(local).systems if s.cardinality == component.cardinality]
        result.append((component.objects, local, group_reduction(local, systems[0])))
    return result


def sample_check_mod(
    cat: FinCategory,
    p: int,
    n_samples: Optional[int] = None,
    seed: Optional[int] = None,
    max_dim: Optional[int] = None,
) -> ModOracleReport:
    """
    Compare ``decide_mod`` over F_p with sampled evidence.

    Every sample is checked for rank-nullity of its limit, a well-defined
    and natural comparison map, and invertibility on discrete categories.
    Positive verdicts need invertible comparison maps on raw samples and on
    samples pulled back from ``G_I``, where the averaging map must invert
    them. Negative verdicts need an infeasible naturality problem, a
    dimension witness, or probe evidence, depending on the certificate.
    """
    settings = get_settings()
    n_samples = settings.samples if n_samples is None else n_samples
    seed = settings.seed if seed is None else seed
    max_dim = settings.max_vect_dim if max_dim is None else max_dim

    ensure_valid(cat)
    check_modulus(p)
    verdict = decide_mod(cat, RingSpec.prime_field(p))
    problems: List[str] = []
    witness = None
    witness_status: Optional[NaturalityStatus] = None
    probe = None
    inconclusive = 0

    certificate = verdict.certificate
    if certificate.kind == "cardinality_not_invertible":
        found = witness_mod(cat, p)
        assert found is not None
        witness_status = found.solution.status
        witness = f"regular representation of G_I (order {found.group_order}) with augmentation: {found.solution.reason}"
        if found.solution.status == "inconclusive":
            inconclusive += 1
        elif found.solution.status == "feasible":
            problems.append("regular/augmentation diagram admits invertible comparison maps")
    elif certificate.kind == "not_strongly_connected":
        restriction = full_subcategory(cat, certificate.objects)
        position = {obj: k for k, obj in enumerate(certificate.objects)}
        functor = witness_not_strongly_connected_vect(
            restriction.category,
            [position[i] for i in certificate.source],
            [position[i] for i in certificate.rest],
            p,
        )
        lim_dim = limit_vect(restriction.category, functor).dim
        colim_dim = colimit_vect(restriction.category, functor).dim
        witness = f"0 on {list(certificate.source)}, F_{p} on {list(certificate.rest)}: lim {lim_dim}, colim {colim_dim}"
        if lim_dim == colim_dim:
            problems.append("not-strongly-connected witness has equal limit and colimit dimensions")
    elif certificate.kind == "no_invariant_system":
        local = full_subcategory(cat, certificate.objects).category
        probe = free_probe_family(local, p)
        witness = "no invariant system on the component; free-probe evidence attached"
        if probe.recovers_system:
            problems.append("free probes recovered an invariant system")

    reductions = _group_reductions(cat, verdict)
    discrete = cat.n_morphisms == cat.n_objects
    previous: Optional[VectFunctor] = None
    invertible_count = transforms = norm_checks = pullback_checks = 0
    for k in range(n_samples):
        rng = stream(seed, k)
        functor = random_vect_functor(cat, p, rng, max_dim)
        limit, colimit = limit_vect(cat, functor), colimit_vect(cat, functor)
        if limit.dim + constraint_matrix(cat, functor).rank() != functor.total:
            problems.append(f"sample {k}: rank-nullity fails for the limit")
        if not canonical_well_defined(cat, functor, limit, colimit):
            problems.append(f"sample {k}: comparison map depends on the chosen object")
        canonical = canonical_map_vect(cat, functor, limit, colimit)
        if canonical.is_invertible():
            invertible_count += 1
        elif verdict.answer or discrete:
            problems.append(f"sample {k}: comparison map is not invertible")

        if previous is not None:
            eta = random_vect_nat(cat, previous, functor, rng.split(1))
            transforms += 1
            if not canonical_is_natural_vect(cat, previous, functor, eta):
                problems.append(f"sample {k}: comparison map is not natural")
        previous = functor

        for objects, local, reduction in reductions:
            group_rng = rng.split(2)
            on_group = random_vect_functor(reduction.category, p, group_rng, max_dim)
            splitting = norm_splitting(reduction.category, on_group)
            norm_checks += 1
            if not (splitting.idempotent and splitting.image_is_invariants and splitting.two_sided):
                problems.append(f"sample {k}: averaging map does not split the comparison map on {list(objects)}")
            pulled = pullback(local, on_group, [0] * local.n_objects, reduction.morphism_map)
            pullback_checks += 1
            if not canonical_map_vect(local, pulled).is_invertible():
                problems.append(f"sample {k}: comparison map of a pulled-back functor on {list(objects)} is not invertible")

    logger.info(
        "mod_oracle_completed",
        p=p,
        answer=verdict.label,
        samples=n_samples,
        inconclusive=inconclusive,
        inconsistencies=len(problems),
    )
    return ModOracleReport(
        verdict=verdict,
        p=p,
        samples=n_samples,
        seed=seed,
        invertible_samples=invertible_count,
        transforms_checked=transforms,
        norm_checks=norm_checks,
        pullback_checks=pullback_checks,
        witness=witness,
        witness_status=witness_status,
        probe=probe,
        inconclusive=inconclusive,
        inconsistencies=tuple(problems),
    )
