"""Resolution of ``--gen`` specifications into categories."""

from typing import Callable, Dict, Tuple

from ..exceptions import GeneratorSpecError
from .builders import (
    adjoin_unit,
    arrow,
    codiscrete,
    discrete,
    from_group_cyclic,
    from_preorder,
    idempotent_monoid,
    left_zero_monoid,
    parallel,
    standard_corpus,
    times_codiscrete,
    zero_monoid,
)
from .category import FinCategory
from .text_format import load_monoid_table

GENERATOR_HELP = (
    "cyclic:<n> | discrete:<n> | arrow | parallel:<k> | idmon | left-zero:<k> | zero-monoid | "
    "codiscrete:<n> | chain:<n> | adjoin-unit:<spec> | times-codiscrete:<n>:<spec> | monoid-table:<file> | "
    "corpus:<name>"
)


def _count(spec: str, text: str, minimum: int) -> int:
    try:
        value = int(text)
    except ValueError:
        raise GeneratorSpecError(f"{spec!r}: expected an integer parameter, got {text!r}") from None
    if value < minimum:
        raise GeneratorSpecError(f"{spec!r}: parameter must be at least {minimum}")
    return value


def _chain(n: int) -> FinCategory:
    return from_preorder(n, [(i, i + 1) for i in range(n - 1)])


_PARAMETRIC: Dict[str, Tuple[Callable[[int], FinCategory], int]] = {
    "cyclic": (from_group_cyclic, 1),
    "discrete": (discrete, 0),
    "parallel": (parallel, 0),
    "left-zero": (left_zero_monoid, 1),
    "codiscrete": (codiscrete, 1),
    "chain": (_chain, 1),
}

_CONSTANT: Dict[str, Callable[[], FinCategory]] = {
    "arrow": arrow,
    "idmon": idempotent_monoid,
    "zero-monoid": zero_monoid,
}


def generate(spec: str) -> FinCategory:
    """
    Build the category named by a generator spec.

    Raises:
        GeneratorSpecError: for unknown or malformed specs
    """
    spec = spec.strip()
    kind, _, rest = spec.partition(":")
    if kind in _CONSTANT:
        if rest:
            raise GeneratorSpecError(f"{spec!r}: generator {kind!r} takes no parameter")
        return _CONSTANT[kind]()
    if kind in _PARAMETRIC:
        builder, minimum = _PARAMETRIC[kind]
        return builder(_count(spec, rest, minimum))
    if kind == "adjoin-unit":
        inner = generate(rest)
        if inner.n_objects != 1:
            raise GeneratorSpecError(f"{spec!r}: adjoin-unit needs a one-object category")
        return adjoin_unit(inner)
    if kind == "times-codiscrete":
        count, _, inner_spec = rest.partition(":")
        n = _count(spec, count, 1)
        inner = generate(inner_spec)
        if inner.n_objects != 1:
            raise GeneratorSpecError(f"{spec!r}: times-codiscrete needs a one-object category")
        return times_codiscrete(inner, n)
    if kind == "monoid-table":
        if not rest:
            raise GeneratorSpecError("monoid-table needs a file path")
        return load_monoid_table(rest)
    if kind == "corpus":
        corpus = standard_corpus()
        if rest not in corpus:
            raise GeneratorSpecError(f"unknown corpus entry {rest!r}")
        return corpus[rest]
    raise GeneratorSpecError(f"unknown generator {spec!r}; expected {GENERATOR_HELP}")
