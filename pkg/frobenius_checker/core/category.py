"""Finite categories: representation, validation and graph-theoretic analysis."""

from typing import Dict, Iterable, List, Literal, Optional, Sequence, Tuple

import structlog
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr

from ..exceptions import InvalidCategoryError, NotConnectedError
from .union_find import UnionFind

logger = structlog.get_logger(__name__)

ViolationKind = Literal[
    "index_out_of_range",
    "duplicate_name",
    "identity_mismatch",
    "missing_composition",
    "spurious_composition",
    "dom_cod_mismatch",
    "identity_law",
    "associativity",
]


class Morphism(BaseModel):
    """A named arrow ``dom -> cod``."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(..., min_length=1)
    dom: int
    cod: int


class FinCategory(BaseModel):
    """
    A finite category given by tables.

    ``comp[(g, f)]`` is the index of ``g∘f`` and is defined exactly when
    ``cod(f) == dom(g)``. Nothing here enforces the axioms; see ``validate``.
    """

    model_config = ConfigDict(frozen=True)

    n_objects: int = Field(..., ge=0)
    morphisms: Tuple[Morphism, ...]
    identity: Tuple[int, ...]
    comp: Dict[Tuple[int, int], int]

    _hom: Dict[Tuple[int, int], Tuple[int, ...]] = PrivateAttr(default_factory=dict)
    _by_name: Dict[str, int] = PrivateAttr(default_factory=dict)

    def model_post_init(self, __context: object) -> None:
        hom: Dict[Tuple[int, int], List[int]] = {}
        for index, morphism in enumerate(self.morphisms):
            hom.setdefault((morphism.dom, morphism.cod), []).append(index)
            self._by_name.setdefault(morphism.name, index)
        self._hom = {key: tuple(value) for key, value in hom.items()}

    @classmethod
    def build(
        cls,
        n_objects: int,
        morphisms: Sequence[Tuple[str, int, int]],
        identity: Sequence[int],
        comp: Dict[Tuple[int, int], int],
    ) -> "FinCategory":
        """
        Build a category, inferring every composite that involves an identity.

        Explicit entries win over inferred ones so that a contradicting
        entry stays visible to ``validate``.
        """
        table = dict(comp)
        if len(identity) == n_objects:
            for index, (_, dom, cod) in enumerate(morphisms):
                if 0 <= dom < n_objects and 0 <= cod < n_objects:
                    table.setdefault((identity[cod], index), index)
                    table.setdefault((index, identity[dom]), index)
        return cls(
            n_objects=n_objects,
            morphisms=tuple(Morphism(name=n, dom=d, cod=c) for n, d, c in morphisms),
            identity=tuple(identity),
            comp=table,
        )

    @property
    def n_morphisms(self) -> int:
        return len(self.morphisms)

    @property
    def objects(self) -> range:
        return range(self.n_objects)

    def dom(self, f: int) -> int:
        return self.morphisms[f].dom

    def cod(self, f: int) -> int:
        return self.morphisms[f].cod

    def name(self, f: int) -> str:
        return self.morphisms[f].name

    def index_of(self, name: str) -> int:
        """Morphism index for a name; raises ``KeyError`` if unknown."""
        return self._by_name[name]

    def compose(self, g: int, f: int) -> int:
        """Index of ``g∘f``; raises ``KeyError`` when undefined."""
        return self.comp[(g, f)]

    def hom(self, i: int, j: int) -> Tuple[int, ...]:
        return self._hom.get((i, j), ())

    def end(self, i: int) -> Tuple[int, ...]:
        return self.hom(i, i)

    def outgoing(self, i: int) -> Tuple[int, ...]:
        """Morphisms with domain ``i`` in index order."""
        return tuple(f for f, m in enumerate(self.morphisms) if m.dom == i)

    def incoming(self, j: int) -> Tuple[int, ...]:
        """Morphisms with codomain ``j`` in index order."""
        return tuple(f for f, m in enumerate(self.morphisms) if m.cod == j)

    def is_identity(self, f: int) -> bool:
        return self.identity[self.dom(f)] == f

    def is_idempotent(self, f: int) -> bool:
        return self.dom(f) == self.cod(f) and self.comp.get((f, f)) == f

    def inverse(self, f: int) -> Optional[int]:
        """Two-sided inverse of ``f`` if there is one."""
        i, j = self.dom(f), self.cod(f)
        for g in self.hom(j, i):
            if self.comp.get((g, f)) == self.identity[i] and self.comp.get(
                (f, g)
            ) == self.identity[j]:
                return g
        return None

    def label(self) -> str:
        return f"<{self.n_objects} objects, {self.n_morphisms} morphisms>"


class HomIndex(BaseModel):
    """``hom[i][j]`` lists the morphisms ``i -> j`` in index order."""

    model_config = ConfigDict(frozen=True)

    hom: Tuple[Tuple[Tuple[int, ...], ...], ...]


def hom_index(cat: FinCategory) -> HomIndex:
    return HomIndex(
        hom=tuple(tuple(cat.hom(i, j) for j in cat.objects) for i in cat.objects)
    )


class Violation(BaseModel):
    """One broken category law, located by indices."""

    model_config = ConfigDict(frozen=True)

    kind: ViolationKind
    indices: Tuple[int, ...] = ()
    message: str


class ValidationReport(BaseModel):
    """Result of ``validate``; empty means the category is valid."""

    model_config = ConfigDict(frozen=True)

    violations: Tuple[Violation, ...] = ()

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def kinds(self) -> List[str]:
        return [v.kind for v in self.violations]


def validate(cat: FinCategory) -> ValidationReport:
    """
    Check every category axiom and report each violated law.

    Args:
        cat: Candidate category

    Returns:
        ValidationReport listing violations in a deterministic order
    """
    violations: List[Violation] = []
    n, m = cat.n_objects, cat.n_morphisms

    def add(kind: ViolationKind, indices: Tuple[int, ...], message: str) -> None:
        violations.append(Violation(kind=kind, indices=indices, message=message))

    names: Dict[str, int] = {}
    for f, morphism in enumerate(cat.morphisms):
        if morphism.name in names:
            add("duplicate_name", (names[morphism.name], f), f"duplicate name {morphism.name!r}")
        names.setdefault(morphism.name, f)
        if not (0 <= morphism.dom < n and 0 <= morphism.cod < n):
            add("index_out_of_range", (f,), f"morphism {morphism.name!r} has an object index out of range")
    if len(cat.identity) != n:
        add("index_out_of_range", (), f"identity table has {len(cat.identity)} entries for {n} objects")
    for (g, f), h in cat.comp.items():
        if not all(0 <= x < m for x in (g, f, h)):
            add("index_out_of_range", (g, f, h), f"composition entry ({g}, {f}) -> {h} out of range")
    if violations:
        return ValidationReport(violations=tuple(violations))

    for i, ident in enumerate(cat.identity):
        if not 0 <= ident < m or cat.dom(ident) != i or cat.cod(ident) != i:
            add("identity_mismatch", (i,), f"identity of object {i} is not an endomorphism of {i}")
    if violations:
        return ValidationReport(violations=tuple(violations))

    for (g, f), h in sorted(cat.comp.items()):
        if cat.cod(f) != cat.dom(g):
            add("spurious_composition", (g, f), f"composite {cat.name(g)}∘{cat.name(f)} given for a non-composable pair")
        elif cat.dom(h) != cat.dom(f) or cat.cod(h) != cat.cod(g):
            add("dom_cod_mismatch", (g, f), f"{cat.name(g)}∘{cat.name(f)} = {cat.name(h)} has the wrong domain or codomain")

    for f in range(m):
        for g in cat.outgoing(cat.cod(f)):
            if (g, f) not in cat.comp:
                add("missing_composition", (g, f), f"missing composition {cat.name(g)}∘{cat.name(f)}")

    for f in range(m):
        left = cat.comp.get((cat.identity[cat.cod(f)], f))
        right = cat.comp.get((f, cat.identity[cat.dom(f)]))
        if left is not None and left != f or right is not None and right != f:
            add("identity_law", (f,), f"identity law fails for {cat.name(f)}")

    for f in range(m):
        for g in cat.outgoing(cat.cod(f)):
            gf = cat.comp.get((g, f))
            for h in cat.outgoing(cat.cod(g)):
                hg = cat.comp.get((h, g))
                if gf is None or hg is None:
                    continue
                lhs = cat.comp.get((h, gf))
                rhs = cat.comp.get((hg, f))
                if lhs is not None and rhs is not None and lhs != rhs:
                    add(
                        "associativity",
                        (h, g, f),
                        f"associativity fails for ({cat.name(h)}, {cat.name(g)}, {cat.name(f)})",
                    )

    if violations:
        logger.debug("category_invalid", violations=len(violations))
    return ValidationReport(violations=tuple(violations))


def ensure_valid(cat: FinCategory) -> FinCategory:
    """Return ``cat`` unchanged or raise ``InvalidCategoryError``."""
    report = validate(cat)
    if not report.is_valid:
        raise InvalidCategoryError(report)
    return cat


class ComponentPartition(BaseModel):
    """Connected components; ids are numbered by smallest member object."""

    model_config = ConfigDict(frozen=True)

    component: Tuple[int, ...]
    count: int

    def members(self, c: int) -> Tuple[int, ...]:
        return tuple(i for i, comp in enumerate(self.component) if comp == c)

    def groups(self) -> List[Tuple[int, ...]]:
        return [self.members(c) for c in range(self.count)]


def connected_components(cat: FinCategory) -> ComponentPartition:
    uf = UnionFind(cat.n_objects)
    for morphism in cat.morphisms:
        uf.union(morphism.dom, morphism.cod)
    labels, count = uf.canonical_labels()
    return ComponentPartition(component=labels, count=count)


class StrongConnectivity(BaseModel):
    """
    Strong-connectivity verdict with its witness partition.

    When not strongly connected, ``source`` is a source strongly connected
    component: every arrow between ``source`` and ``rest`` points out of it.
    """

    model_config = ConfigDict(frozen=True)

    strongly_connected: bool
    source: Tuple[int, ...] = ()
    rest: Tuple[int, ...] = ()


def strongly_connected_components(cat: FinCategory) -> List[List[int]]:
    """
    Strongly connected components of the underlying digraph.

    Tarjan's algorithm with Nuutila's modifications, non-recursive. Each
    component is sorted and the list is ordered by smallest member.
    """
    successors = [sorted({cat.cod(f) for f in cat.outgoing(v)} - {v}) for v in cat.objects]
    preorder: Dict[int, int] = {}
    lowlink: Dict[int, int] = {}
    scc_found: Dict[int, bool] = {}
    scc_queue: List[int] = []
    scc_list: List[List[int]] = []
    counter = 0
    for source in cat.objects:
        if source in scc_found:
            continue
        queue = [source]
        while queue:
            v = queue[-1]
            if v not in preorder:
                counter += 1
                preorder[v] = counter
            done = True
            for w in successors[v]:
                if w not in preorder:
                    queue.append(w)
                    done = False
                    break
            if not done:
                continue
            lowlink[v] = preorder[v]
            for w in successors[v]:
                if w not in scc_found:
                    if preorder[w] > preorder[v]:
                        lowlink[v] = min(lowlink[v], lowlink[w])
                    else:
                        lowlink[v] = min(lowlink[v], preorder[w])
            queue.pop()
            if lowlink[v] == preorder[v]:
                scc_found[v] = True
                scc = [v]
                while scc_queue and preorder[scc_queue[-1]] > preorder[v]:
                    k = scc_queue.pop()
                    scc_found[k] = True
                    scc.append(k)
                scc_list.append(sorted(scc))
            else:
                scc_queue.append(v)
    scc_list.sort(key=lambda scc: scc[0])
    return scc_list


def is_strongly_connected(cat: FinCategory) -> StrongConnectivity:
    """
    Decide strong connectivity of a connected category via SCC condensation.

    Raises:
        NotConnectedError: if the category is empty or has several components
    """
    if connected_components(cat).count != 1:
        raise NotConnectedError("strong connectivity is only defined here for connected categories")
    sccs = strongly_connected_components(cat)
    if len(sccs) == 1:
        return StrongConnectivity(strongly_connected=True)

    scc_of = {v: k for k, scc in enumerate(sccs) for v in scc}
    has_incoming = [False] * len(sccs)
    for morphism in cat.morphisms:
        a, b = scc_of[morphism.dom], scc_of[morphism.cod]
        if a != b:
            has_incoming[b] = True
    # sccs are ordered by smallest member, so the first source wins
    source = next(scc for k, scc in enumerate(sccs) if not has_incoming[k])
    rest = tuple(i for i in cat.objects if i not in source)
    return StrongConnectivity(strongly_connected=False, source=tuple(source), rest=rest)


def hom_nonempty_everywhere(cat: FinCategory) -> bool:
    """Direct hom-set check: every ``hom(i, j)`` is nonempty."""
    return all(cell for row in hom_index(cat).hom for cell in row)


class Restriction(BaseModel):
    """A subcategory together with its embedding into the parent."""

    model_config = ConfigDict(frozen=True)

    category: FinCategory
    objects: Tuple[int, ...]
    morphisms: Tuple[int, ...]

    def local_morphism(self, parent_index: int) -> int:
        return self.morphisms.index(parent_index)


def full_subcategory(cat: FinCategory, objects: Iterable[int]) -> Restriction:
    """Full subcategory on ``objects`` (kept in increasing order)."""
    chosen = tuple(sorted(set(objects)))
    position = {obj: k for k, obj in enumerate(chosen)}
    kept = tuple(
        f for f, m in enumerate(cat.morphisms) if m.dom in position and m.cod in position
    )
    local = {f: k for k, f in enumerate(kept)}
    comp = {
        (local[g], local[f]): local[h]
        for (g, f), h in cat.comp.items()
        if g in local and f in local
    }
    sub = FinCategory(
        n_objects=len(chosen),
        morphisms=tuple(
            Morphism(name=cat.name(f), dom=position[cat.dom(f)], cod=position[cat.cod(f)])
            for f in kept
        ),
        identity=tuple(local[cat.identity[obj]] for obj in chosen),
        comp=comp,
    )
    return Restriction(category=sub, objects=chosen, morphisms=kept)


def submonoid(cat: FinCategory, obj: int, morphisms: Iterable[int]) -> Restriction:
    """
    One-object subcategory on ``morphisms ∪ {1_obj}``.

    Raises:
        InvalidCategoryError: if the set is not closed under composition
    """
    kept = tuple(sorted(set(morphisms) | {cat.identity[obj]}))
    local = {f: k for k, f in enumerate(kept)}
    comp: Dict[Tuple[int, int], int] = {}
    for g in kept:
        for f in kept:
            h = cat.comp.get((g, f))
            if h in local:
                comp[(local[g], local[f])] = local[h]
    sub = FinCategory(
        n_objects=1,
        morphisms=tuple(Morphism(name=cat.name(f), dom=0, cod=0) for f in kept),
        identity=(local[cat.identity[obj]],),
        comp=comp,
    )
    ensure_valid(sub)
    return Restriction(category=sub, objects=(obj,), morphisms=kept)


def check_functor(
    src: FinCategory,
    dst: FinCategory,
    object_map: Sequence[int],
    morphism_map: Sequence[int],
) -> List[str]:
    """
    List the ways the given maps fail to form a functor ``src -> dst``.

    Returns:
        Human-readable problems; empty when the maps are a functor
    """
    problems: List[str] = []
    for f, morphism in enumerate(src.morphisms):
        image = morphism_map[f]
        if dst.dom(image) != object_map[morphism.dom] or dst.cod(image) != object_map[morphism.cod]:
            problems.append(f"{morphism.name} is not sent to an arrow between the image objects")
    for i in src.objects:
        if morphism_map[src.identity[i]] != dst.identity[object_map[i]]:
            problems.append(f"identity of object {i} is not preserved")
    if problems:
        return problems
    for (g, f), h in src.comp.items():
        if dst.comp.get((morphism_map[g], morphism_map[f])) != morphism_map[h]:
            problems.append(f"composite {src.name(g)}∘{src.name(f)} is not preserved")
    return problems
