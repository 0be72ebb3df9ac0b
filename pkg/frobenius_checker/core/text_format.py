"""Line-based text formats for categories and monoid tables."""

from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from ..exceptions import CategoryParseError
from .builders import from_monoid_table
from .category import FinCategory


def _lines(text: str) -> List[Tuple[int, List[str]]]:
    """Non-empty lines with comments stripped, as (line number, tokens)."""
    result = []
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            result.append((number, tokens))
    return result


def _int(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise CategoryParseError(f"expected an integer, got {token!r}", line) from None


def parse_category(text: str) -> FinCategory:
    """
    Parse the category text format.

    Format::

        objects <n>
        mor <name> <dom> <cod>
        id <object> <name>
        comp <g> <f> <h>        # g∘f = h, omitted when g or f is an identity
        end

    The result is not validated; call ``validate`` on it.

    Raises:
        CategoryParseError: on syntax errors, duplicate names, out-of-range
            indices, unknown names or a missing ``end``
    """
    n_objects: Optional[int] = None
    morphisms: List[Tuple[str, int, int]] = []
    names: Dict[str, int] = {}
    identity: Dict[int, int] = {}
    comp: Dict[Tuple[int, int], int] = {}
    ended = False

    def lookup(name: str, line: int) -> int:
        if name not in names:
            raise CategoryParseError(f"unknown morphism {name!r}", line)
        return names[name]

    for line, tokens in _lines(text):
        keyword, args = tokens[0], tokens[1:]
        if ended:
            raise CategoryParseError("content after 'end'", line)
        if keyword == "end":
            if args:
                raise CategoryParseError("'end' takes no arguments", line)
            ended = True
            continue
        if keyword == "objects":
            if n_objects is not None:
                raise CategoryParseError("duplicate 'objects' line", line)
            if len(args) != 1:
                raise CategoryParseError("usage: objects <n>", line)
            n_objects = _int(args[0], line)
            if n_objects < 0:
                raise CategoryParseError("object count must be non-negative", line)
            continue
        if n_objects is None:
            raise CategoryParseError("'objects' must come first", line)
        if keyword == "mor":
            if len(args) != 3:
                raise CategoryParseError("usage: mor <name> <dom> <cod>", line)
            name, dom, cod = args[0], _int(args[1], line), _int(args[2], line)
            if name in names:
                raise CategoryParseError(f"duplicate morphism name {name!r}", line)
            if not (0 <= dom < n_objects and 0 <= cod < n_objects):
                raise CategoryParseError(f"object index out of range in {name!r}", line)
            names[name] = len(morphisms)
            morphisms.append((name, dom, cod))
        elif keyword == "id":
            if len(args) != 2:
                raise CategoryParseError("usage: id <object> <name>", line)
            obj = _int(args[0], line)
            if not 0 <= obj < n_objects:
                raise CategoryParseError(f"object index {obj} out of range", line)
            if obj in identity:
                raise CategoryParseError(f"duplicate identity for object {obj}", line)
            identity[obj] = lookup(args[1], line)
        elif keyword == "comp":
            if len(args) != 3:
                raise CategoryParseError("usage: comp <g> <f> <h>", line)
            g, f, h = (lookup(name, line) for name in args)
            if (g, f) in comp:
                raise CategoryParseError(f"duplicate composition for ({args[0]}, {args[1]})", line)
            comp[(g, f)] = h
        else:
            raise CategoryParseError(f"unknown keyword {keyword!r}", line)

    if not ended:
        raise CategoryParseError("missing 'end'")
    if n_objects is None:
        raise CategoryParseError("missing 'objects' line")
    missing = [obj for obj in range(n_objects) if obj not in identity]
    if missing:
        raise CategoryParseError(f"no identity given for object {missing[0]}")
    return FinCategory.build(
        n_objects=n_objects,
        morphisms=morphisms,
        identity=[identity[obj] for obj in range(n_objects)],
        comp=comp,
    )


def serialize_category(cat: FinCategory, title: Optional[str] = None) -> str:
    """Render ``cat`` in the text format accepted by ``parse_category``."""
    lines = [f"# {title}"] if title else []
    lines.append(f"objects {cat.n_objects}")
    lines.extend(f"mor {m.name} {m.dom} {m.cod}" for m in cat.morphisms)
    lines.extend(f"id {obj} {cat.name(cat.identity[obj])}" for obj in cat.objects)
    for (g, f), h in sorted(cat.comp.items()):
        if cat.is_identity(g) or cat.is_identity(f):
            continue
        lines.append(f"comp {cat.name(g)} {cat.name(f)} {cat.name(h)}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_monoid_table(text: str) -> FinCategory:
    """
    Parse a monoid multiplication table.

    Format: an ``elements <a> <b> ...`` header, then one row per element
    ``<x> <x·a> <x·b> ...`` in header order.

    Raises:
        CategoryParseError: on malformed tables
        InvalidCategoryError: when the table is not a monoid
    """
    rows = _lines(text)
    if not rows or rows[0][1][0] != "elements":
        raise CategoryParseError("monoid table must start with an 'elements' line", rows[0][0] if rows else None)
    header_line, header = rows[0]
    elements = header[1:]
    if not elements:
        raise CategoryParseError("no elements declared", header_line)
    if len(set(elements)) != len(elements):
        raise CategoryParseError("duplicate element name", header_line)
    position = {name: k for k, name in enumerate(elements)}
    table: Dict[int, List[int]] = {}
    for line, tokens in rows[1:]:
        if tokens[0] not in position:
            raise CategoryParseError(f"unknown element {tokens[0]!r}", line)
        if len(tokens) != len(elements) + 1:
            raise CategoryParseError(f"row must have {len(elements)} products", line)
        unknown = [t for t in tokens[1:] if t not in position]
        if unknown:
            raise CategoryParseError(f"unknown element {unknown[0]!r}", line)
        row = position[tokens[0]]
        if row in table:
            raise CategoryParseError(f"duplicate row for {tokens[0]!r}", line)
        table[row] = [position[t] for t in tokens[1:]]
    if len(table) != len(elements):
        raise CategoryParseError("table is missing rows")
    return from_monoid_table([table[k] for k in range(len(elements))], elements)


def load_category(path: Union[str, Path]) -> FinCategory:
    return parse_category(Path(path).read_text(encoding="utf-8"))


def load_monoid_table(path: Union[str, Path]) -> FinCategory:
    return parse_monoid_table(Path(path).read_text(encoding="utf-8"))
