"""Constructors for the finite categories used throughout the package."""

from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from ..exceptions import InvalidCategoryError
from .category import FinCategory, ValidationReport, Violation, ensure_valid


def _fresh(name: str, taken: Set[str]) -> str:
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def from_monoid_table(
    table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None
) -> FinCategory:
    """
    One-object category from a multiplication table.

    Args:
        table: ``table[a][b]`` is the product ``a·b`` (``a`` after ``b``)
        names: Element names; defaults to ``m0, m1, ...``

    Raises:
        InvalidCategoryError: if the table is not a monoid
    """
    size = len(table)
    names = list(names) if names is not None else [f"m{k}" for k in range(size)]
    if len(names) != size or any(len(row) != size for row in table):
        raise InvalidCategoryError(
            ValidationReport(
                violations=(
                    Violation(kind="index_out_of_range", message="monoid table is not square"),
                )
            )
        )
    unit = next(
        (u for u in range(size) if all(table[u][x] == x and table[x][u] == x for x in range(size))),
        None,
    )
    if unit is None:
        raise InvalidCategoryError(
            ValidationReport(
                violations=(Violation(kind="identity_mismatch", indices=(0,), message="monoid table has no unit"),)
            )
        )
    cat = FinCategory.build(
        n_objects=1,
        morphisms=[(name, 0, 0) for name in names],
        identity=[unit],
        comp={(a, b): table[a][b] for a in range(size) for b in range(size)},
    )
    return ensure_valid(cat)


def from_group_table(table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None) -> FinCategory:
    """A group table is a monoid table whose elements are all invertible."""
    cat = from_monoid_table(table, names)
    if any(cat.inverse(f) is None for f in range(cat.n_morphisms)):
        raise InvalidCategoryError(
            ValidationReport(
                violations=(Violation(kind="identity_mismatch", message="group table has a non-invertible element"),)
            )
        )
    return cat


def from_group_cyclic(n: int) -> FinCategory:
    """Cyclic group ``C_n`` with elements ``1, g, g2, ..., g{n-1}``."""
    if n < 1:
        raise ValueError("group order must be at least 1")
    names = ["1", "g"] + [f"g{k}" for k in range(2, n)]
    return from_monoid_table(
        [[(a + b) % n for b in range(n)] for a in range(n)], names[:n]
    )


def discrete(n: int) -> FinCategory:
    """``n`` objects and only their identities."""
    if n < 0:
        raise ValueError("object count must be non-negative")
    return FinCategory.build(
        n_objects=n,
        morphisms=[(f"id{i}", i, i) for i in range(n)],
        identity=list(range(n)),
        comp={},
    )


def parallel(k: int) -> FinCategory:
    """Two objects with ``k`` parallel arrows ``0 -> 1``."""
    if k < 0:
        raise ValueError("arrow count must be non-negative")
    arrows = ["a"] if k == 1 else [f"a{t}" for t in range(k)]
    return FinCategory.build(
        n_objects=2,
        morphisms=[("id0", 0, 0), ("id1", 1, 1)] + [(name, 0, 1) for name in arrows],
        identity=[0, 1],
        comp={},
    )


def arrow() -> FinCategory:
    """The walking arrow ``0 -> 1``."""
    return parallel(1)


def idempotent_monoid() -> FinCategory:
    """The two-element monoid ``{1, e}`` with ``ee = e``."""
    return from_monoid_table([[0, 1], [1, 1]], ["1", "e"])


def left_zero_monoid(k: int = 2) -> FinCategory:
    """
    A unit adjoined to the ``k``-element left-zero semigroup.

    Elements ``1, e, f, ...`` with ``xy = x`` for non-units ``x, y``.
    """
    if k < 1:
        raise ValueError("semigroup size must be at least 1")
    letters = ["e", "f", "h", "k", "l", "m", "n", "q"]
    names = ["1"] + (letters[:k] if k <= len(letters) else [f"z{t}" for t in range(k)])
    size = k + 1
    table = [[b if a == 0 else a for b in range(size)] for a in range(size)]
    return from_monoid_table(table, names)


def adjoin_unit(monoid: FinCategory) -> FinCategory:
    """
    ``M⁺``: adjoin a new identity to a one-object category.

    The old unit becomes an ordinary idempotent. The new identity takes index
    0 and the name ``1``; the old unit is renamed ``e`` (primed on clashes).
    """
    ensure_valid(monoid)
    if monoid.n_objects != 1:
        raise ValueError("adjoin_unit expects a one-object category")
    old_unit = monoid.identity[0]
    taken: Set[str] = set()
    new_names = [_fresh("1", taken)]
    renamed = [
        "e" if f == old_unit else monoid.name(f) for f in range(monoid.n_morphisms)
    ]
    # names of non-units keep priority over the renamed old unit
    taken.update(name for f, name in enumerate(renamed) if f != old_unit)
    names: List[str] = []
    for f, name in enumerate(renamed):
        names.append(_fresh(name, taken) if f == old_unit else name)
    new_names += names
    size = monoid.n_morphisms + 1
    comp: Dict[Tuple[int, int], int] = {}
    for a in range(1, size):
        for b in range(1, size):
            comp[(a, b)] = monoid.compose(a - 1, b - 1) + 1
    cat = FinCategory.build(
        n_objects=1,
        morphisms=[(name, 0, 0) for name in new_names],
        identity=[0],
        comp=comp,
    )
    return ensure_valid(cat)


def disjoint_union(left: FinCategory, right: FinCategory) -> FinCategory:
    """Coproduct of categories; clashing names on the right are primed."""
    offset_obj, offset_mor = left.n_objects, left.n_morphisms
    taken = {m.name for m in left.morphisms}
    morphisms = [(m.name, m.dom, m.cod) for m in left.morphisms]
    morphisms += [
        (_fresh(m.name, taken), m.dom + offset_obj, m.cod + offset_obj)
        for m in right.morphisms
    ]
    comp = dict(left.comp)
    comp.update(
        {(g + offset_mor, f + offset_mor): h + offset_mor for (g, f), h in right.comp.items()}
    )
    cat = FinCategory.build(
        n_objects=left.n_objects + right.n_objects,
        morphisms=morphisms,
        identity=list(left.identity) + [i + offset_mor for i in right.identity],
        comp=comp,
    )
    return ensure_valid(cat)


def from_preorder(n: int, relation: Iterable[Tuple[int, int]]) -> FinCategory:
    """
    Thin category of the reflexive-transitive closure of ``relation``.

    Morphisms are named ``id{i}`` and ``{i}<{j}``.
    """
    reach = [[i == j for j in range(n)] for i in range(n)]
    for i, j in relation:
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"relation pair ({i}, {j}) out of range")
        reach[i][j] = True
    for k, i, j in product(range(n), repeat=3):
        if reach[i][k] and reach[k][j]:
            reach[i][j] = True
    morphisms: List[Tuple[str, int, int]] = []
    index: Dict[Tuple[int, int], int] = {}
    for i in range(n):
        index[(i, i)] = len(morphisms)
        morphisms.append((f"id{i}", i, i))
    for i in range(n):
        for j in range(n):
            if i != j and reach[i][j]:
                index[(i, j)] = len(morphisms)
                morphisms.append((f"{i}<{j}", i, j))
    comp = {
        (index[(j, k)], index[(i, j)]): index[(i, k)]
        for (i, j) in index
        for (j2, k) in index
        if j2 == j
    }
    return ensure_valid(
        FinCategory.build(n_objects=n, morphisms=morphisms, identity=[index[(i, i)] for i in range(n)], comp=comp)
    )


def codiscrete(n: int) -> FinCategory:
    """Indiscrete category: exactly one arrow between any two objects."""
    return from_preorder(n, [(i, j) for i in range(n) for j in range(n)])


def times_codiscrete(monoid: FinCategory, n: int) -> FinCategory:
    """
    ``M × codiscrete(n)``: ``n`` objects, a copy ``m_i_j: i -> j`` of every
    element ``m`` for each object pair, and ``m'_j_k ∘ m_i_j = (m'm)_i_k``.

    Morphism ``m_i_j`` has index ``(i·n + j)·|M| + m``.
    """
    ensure_valid(monoid)
    if monoid.n_objects != 1:
        raise ValueError("times_codiscrete expects a one-object category")
    if n < 1:
        raise ValueError("object count must be at least 1")
    size = monoid.n_morphisms

    def index(m: int, i: int, j: int) -> int:
        return (i * n + j) * size + m

    morphisms = [
        (f"{monoid.name(m)}_{i}_{j}", i, j) for i in range(n) for j in range(n) for m in range(size)
    ]
    comp = {
        (index(b, j, k), index(a, i, j)): index(monoid.compose(b, a), i, k)
        for i, j, k in product(range(n), repeat=3)
        for a in range(size)
        for b in range(size)
    }
    unit = monoid.identity[0]
    cat = FinCategory.build(
        n_objects=n,
        morphisms=morphisms,
        identity=[index(unit, i, i) for i in range(n)],
        comp=comp,
    )
    return ensure_valid(cat)


def zero_monoid() -> FinCategory:
    """``{1, a, 0}`` with ``a·a = 0`` and ``0`` absorbing."""
    return from_monoid_table([[0, 1, 2], [1, 2, 2], [2, 2, 2]], ["1", "a", "0"])


def standard_corpus() -> Dict[str, FinCategory]:
    """
    The named corpus of small categories (at most 12 morphisms each).

    Insertion order is stable and used by reports and tests.
    """
    corpus: Dict[str, FinCategory] = {}
    for n in range(1, 9):
        corpus[f"cyclic:{n}"] = from_group_cyclic(n)
    corpus["discrete:1"] = discrete(1)
    corpus["discrete:2"] = discrete(2)
    corpus["discrete:3"] = discrete(3)
    corpus["arrow"] = arrow()
    corpus["parallel:2"] = parallel(2)
    corpus["parallel:3"] = parallel(3)
    corpus["idmon"] = idempotent_monoid()
    corpus["left-zero:2"] = left_zero_monoid(2)
    corpus["zero-monoid"] = zero_monoid()
    corpus["adjoin-unit:cyclic:2"] = adjoin_unit(from_group_cyclic(2))
    corpus["adjoin-unit:cyclic:3"] = adjoin_unit(from_group_cyclic(3))
    corpus["adjoin-unit:idmon"] = adjoin_unit(idempotent_monoid())
    corpus["codiscrete:2"] = codiscrete(2)
    corpus["codiscrete:3"] = codiscrete(3)
    corpus["chain:3"] = from_preorder(3, [(0, 1), (1, 2)])
    corpus["times-codiscrete:2:cyclic:2"] = times_codiscrete(from_group_cyclic(2), 2)
    corpus["times-codiscrete:2:cyclic:3"] = times_codiscrete(from_group_cyclic(3), 2)
    corpus["times-codiscrete:2:adjoin-unit:cyclic:2"] = times_codiscrete(adjoin_unit(from_group_cyclic(2)), 2)
    corpus["union:arrow+cyclic:2"] = disjoint_union(arrow(), from_group_cyclic(2))
    corpus["union:idmon+idmon"] = disjoint_union(idempotent_monoid(), idempotent_monoid())
    corpus["union:cyclic:2+cyclic:3"] = disjoint_union(from_group_cyclic(2), from_group_cyclic(3))
    corpus["union:idmon+codiscrete:2+cyclic:2"] = disjoint_union(
        disjoint_union(idempotent_monoid(), codiscrete(2)), from_group_cyclic(2)
    )
    return corpus
