"""Command-line entry point for the Frobenius checker.

Exit codes: 0 yes / valid / consistent, 1 no, 2 input error,
3 oracle inconsistency or internal failure.
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional

import structlog
from pydantic import ValidationError

from .config import Settings, get_settings
from .core.builders import standard_corpus
from .core.category import (
    FinCategory,
    connected_components,
    ensure_valid,
    full_subcategory,
    is_strongly_connected,
    validate,
)
from .core.decision import decide_mod, decide_set, lift_system
from .core.generators import GENERATOR_HELP, generate
from .core.invariant_system import find_is, group_of, idempotents, tau, zero_elements
from .core.mod_oracle import sample_check_mod
from .core.set_oracle import sample_check_set
from .core.text_format import load_category, serialize_category
from .exceptions import (
    CategoryParseError,
    FrobeniusError,
    GeneratorSpecError,
    InvalidCategoryError,
    ModulusError,
    OracleInconsistencyError,
    RingSpecError,
)
from .models.request import RunConfig
from .models.response import (
    AnalysisReport,
    ComponentAnalysis,
    CorpusEntry,
    DecisionReport,
    ErrorReport,
    ValidationOutcome,
)
from .models.verdict import RingSpec
from .reporting import (
    certificate_text,
    render_analysis,
    render_corpus,
    render_decision,
    render_error,
    render_oracle,
    render_validation,
)

logger = structlog.get_logger(__name__)

EXIT_YES = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_INCONSISTENT = 3

INPUT_ERRORS = (CategoryParseError, InvalidCategoryError, RingSpecError, GeneratorSpecError, ModulusError, OSError)


def configure_logging(settings: Settings) -> None:
    """Send structlog output to stderr so stdout carries only reports."""
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=getattr(logging, settings.log_level.upper(), logging.WARNING),
        force=True,
    )
    renderer = (
        structlog.processors.JSONRenderer()
        if settings.log_format == "json"
        else structlog.dev.ConsoleRenderer(colors=False)
    )
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            renderer,
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )


def _add_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input_path", nargs="?", help="category text file")
    parser.add_argument("--gen", dest="generator", help=f"generator spec: {GENERATOR_HELP}")


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", choices=["human", "machine", "json"], help="report format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frobenius",
        description="Decide whether a finite category is Frobenius relative to Set or to modules.",
        epilog="exit codes: 0 yes/valid/consistent, 1 no, 2 input error, 3 inconsistency or internal error",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    for name, text in (
        ("validate", "check the category axioms"),
        ("analyze", "components, strong connectivity, invariant systems, |G_I|, idempotents, tau"),
        ("export", "print the category in the text format"),
    ):
        sub = commands.add_parser(name, help=text)
        _add_source(sub)
        _add_output(sub)

    decide = commands.add_parser("decide", help="decide Frobenius-ness and print a certificate")
    decide.add_argument("target", choices=["set", "mod"])
    _add_source(decide)
    decide.add_argument("--ring", help="z | q | zmod:<n> | fp:<p>")
    _add_output(decide)

    oracle = commands.add_parser("oracle", help="check a verdict against sampled (co)limits")
    oracle.add_argument("target", choices=["set", "mod"])
    _add_source(oracle)
    oracle.add_argument("--p", type=int, help="prime for module sampling")
    oracle.add_argument("--samples", type=int)
    oracle.add_argument("--seed", type=int)
    oracle.add_argument("--max-size", dest="max_set_size", type=int)
    oracle.add_argument("--max-dim", dest="max_vect_dim", type=int)
    _add_output(oracle)

    corpus = commands.add_parser("corpus", help="list the built-in corpus")
    _add_output(corpus)
    return parser


def build_config(args: argparse.Namespace, settings: Settings) -> RunConfig:
    """Merge parsed flags over settings."""

    def pick(name: str, default: object) -> object:
        value = getattr(args, name, None)
        return default if value is None else value

    return RunConfig(
        command=args.command,
        target=getattr(args, "target", None),
        input_path=getattr(args, "input_path", None),
        generator=getattr(args, "generator", None),
        ring=getattr(args, "ring", None),
        p=getattr(args, "p", None),
        samples=pick("samples", settings.samples),
        seed=pick("seed", settings.seed),
        max_set_size=pick("max_set_size", settings.max_set_size),
        max_vect_dim=pick("max_vect_dim", settings.max_vect_dim),
        output=pick("output", settings.output_mode),
    )


def load(config: RunConfig) -> FinCategory:
    if config.generator is not None:
        return generate(config.generator)
    assert config.input_path is not None
    return load_category(config.input_path)


def run_validate(config: RunConfig) -> int:
    cat = load(config)
    report = validate(cat)
    outcome = ValidationOutcome(
        source=config.source_label,
        valid=report.is_valid,
        n_objects=cat.n_objects,
        n_morphisms=cat.n_morphisms,
        violations=report.violations,
    )
    print(render_validation(outcome, config.output))
    return EXIT_YES if report.is_valid else EXIT_INPUT


def analyze_component(cat: FinCategory, objects: List[int]) -> ComponentAnalysis:
    restriction = full_subcategory(cat, objects)
    local = restriction.category
    names = [cat.name(f) for f in restriction.morphisms]
    connectivity = is_strongly_connected(local)
    if not connectivity.strongly_connected:
        return ComponentAnalysis(
            objects=restriction.objects,
            strongly_connected=False,
            source=tuple(restriction.objects[i] for i in connectivity.source),
            rest=tuple(restriction.objects[i] for i in connectivity.rest),
        )
    search = find_is(local)
    fields: Dict[str, object] = {
        "systems": tuple(lift_system(restriction, s).describe(cat) for s in search.systems),
        "cardinalities": tuple(search.cardinalities()),
    }
    if search.preferred is not None:
        system = search.preferred
        retraction = tau(local, system)
        fields.update(
            group_order=group_of(local, system).order,
            idempotents=tuple(names[e] for e in idempotents(local, system)),
            tau=tuple((names[f], names[retraction.image(f)]) for f in range(local.n_morphisms)),
        )
    if local.n_objects == 1:
        fields["zero_elements"] = tuple(names[a] for a in zero_elements(local))
    return ComponentAnalysis(objects=restriction.objects, strongly_connected=True, **fields)


def run_analyze(config: RunConfig) -> int:
    cat = load(config)
    ensure_valid(cat)
    groups = connected_components(cat).groups()
    analysis = AnalysisReport(
        source=config.source_label,
        n_objects=cat.n_objects,
        n_morphisms=cat.n_morphisms,
        components=tuple(analyze_component(cat, list(g)) for g in groups),
    )
    print(render_analysis(analysis, config.output))
    return EXIT_YES


def run_decide(config: RunConfig) -> int:
    cat = load(config)
    if config.target == "set":
        verdict = decide_set(cat)
    else:
        assert config.ring is not None
        verdict = decide_mod(cat, RingSpec.parse(config.ring))
    report = DecisionReport(
        source=config.source_label, verdict=verdict, certificate_text=certificate_text(cat, verdict)
    )
    print(render_decision(cat, report, config.output))
    return EXIT_YES if verdict.answer else EXIT_NO


def run_oracle(config: RunConfig) -> int:
    cat = load(config)
    if config.target == "set":
        report = sample_check_set(cat, config.samples, config.seed, config.max_set_size)
    else:
        assert config.p is not None
        report = sample_check_mod(cat, config.p, config.samples, config.seed, config.max_vect_dim)
    print(render_oracle(report, config.source_label, config.output))
    if not report.consistent:
        raise OracleInconsistencyError(
            f"{len(report.inconsistencies)} inconsistencies; first: {report.inconsistencies[0]}"
        )
    return EXIT_YES


def run_export(config: RunConfig) -> int:
    cat = load(config)
    sys.stdout.write(serialize_category(cat, title=config.source_label))
    return EXIT_YES


def run_corpus(config: RunConfig) -> int:
    entries = [
        CorpusEntry(name=name, n_objects=cat.n_objects, n_morphisms=cat.n_morphisms)
        for name, cat in standard_corpus().items()
    ]
    print(render_corpus(entries, config.output))
    return EXIT_YES


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "validate": run_validate,
    "analyze": run_analyze,
    "decide": run_decide,
    "oracle": run_oracle,
    "export": run_export,
    "corpus": run_corpus,
}


def _fail(error: str, message: str, output: str, exit_code: int) -> int:
    report = ErrorReport(error=error, message=message, exit_code=exit_code)
    print(render_error(report, output))  # type: ignore[arg-type]
    return exit_code


def main(argv: Optional[List[str]] = None) -> int:
    settings = get_settings()
    configure_logging(settings)
    args = build_parser().parse_args(argv)
    output = args.output or settings.output_mode

    try:
        config = build_config(args, settings)
    except ValidationError as exc:
        return _fail("ValidationError", exc.errors()[0]["msg"], output, EXIT_INPUT)

    try:
        return COMMANDS[config.command](config)
    except InvalidCategoryError as exc:
        if config.output != "json":
            for violation in exc.report.violations:
                print(f"  {violation.kind}: {violation.message}")
        return _fail(type(exc).__name__, str(exc), output, EXIT_INPUT)
    except INPUT_ERRORS as exc:
        return _fail(type(exc).__name__, str(exc), output, EXIT_INPUT)
    except OracleInconsistencyError as exc:
        # the report with every inconsistency is already on stdout
        logger.error("oracle_inconsistent", source=config.source_label, error=str(exc))
        return EXIT_INCONSISTENT
    except FrobeniusError as exc:
        logger.error("command_failed", command=config.command, error=str(exc), exc_info=True)
        return _fail(type(exc).__name__, str(exc), output, EXIT_INCONSISTENT)
    except Exception as exc:
        logger.error("unexpected_error", command=config.command, error=str(exc), exc_info=True)
        return _fail("InternalError", str(exc), output, EXIT_INCONSISTENT)


if __name__ == "__main__":
    sys.exit(main())
