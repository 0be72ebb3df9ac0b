"""Rendering of CLI reports as human text, ``key: value`` lines or JSON."""

from typing import List, Sequence, Tuple, Union

import orjson
from pydantic import BaseModel

from .core.category import FinCategory
from .core.mod_oracle import ModOracleReport
from .core.set_oracle import SetOracleReport
from .models.request import OutputMode
from .models.response import AnalysisReport, CorpusEntry, DecisionReport, ErrorReport, ValidationOutcome
from .models.verdict import Verdict

Pairs = List[Tuple[str, str]]


def _objects(objects: Sequence[int]) -> str:
    return "{" + ",".join(str(i) for i in objects) + "}"


def certificate_pairs(cat: FinCategory, verdict: Verdict) -> Pairs:
    """Certificate data, enough to re-check the verdict independently."""
    c = verdict.certificate
    if c.kind == "invariant_system":
        return [("is", c.system.describe(cat)), ("cardinality", str(c.cardinality))]
    if c.kind == "components":
        pairs: Pairs = []
        for k, component in enumerate(c.components):
            pairs += [
                (f"component.{k}.objects", _objects(component.objects)),
                (f"component.{k}.is", component.system.describe(cat)),
                (f"component.{k}.cardinality", str(component.cardinality)),
            ]
        return pairs
    if c.kind == "not_connected":
        return [("components", " ".join(f"{k}:{_objects(g)}" for k, g in enumerate(c.partition.groups())))]
    if c.kind == "not_strongly_connected":
        return [("objects", _objects(c.objects)), ("source", _objects(c.source)), ("rest", _objects(c.rest))]
    if c.kind == "no_invariant_system":
        trace = " ".join(f"{t.seed_name}:{t.axiom or 'ok'}" for t in c.trace)
        return [("objects", _objects(c.objects)), ("trace", trace)]
    if c.kind == "no_singleton_system":
        return [("objects", _objects(c.objects)), ("cardinalities", ",".join(map(str, c.cardinalities)))]
    if c.kind == "cardinality_not_invertible":
        return [
            ("objects", _objects(c.objects)),
            ("cardinality", str(c.cardinality)),
            ("cardinalities", ",".join(map(str, c.cardinalities))),
            ("ring", c.ring),
        ]
    return [("zero_object", "yes" if c.has_zero_object else "no")]


def certificate_text(cat: FinCategory, verdict: Verdict) -> str:
    return "; ".join(f"{k}={v}" for k, v in certificate_pairs(cat, verdict))


def _lines(pairs: Pairs, mode: OutputMode, headline: str = "") -> str:
    if mode == "machine":
        return "\n".join(f"{k}: {v}" for k, v in pairs)
    body = [f"  {k}: {v}" for k, v in pairs]
    return "\n".join(([headline] if headline else []) + body)


def to_json(model: BaseModel) -> str:
    return orjson.dumps(model.model_dump(mode="json"), option=orjson.OPT_INDENT_2).decode()


def render_decision(cat: FinCategory, report: DecisionReport, mode: OutputMode) -> str:
    if mode == "json":
        return to_json(report)
    verdict = report.verdict
    pairs: Pairs = [
        ("source", report.source),
        ("target", verdict.target),
        ("answer", verdict.label),
        ("reason", verdict.reason),
        ("certificate", verdict.certificate.kind),
    ]
    pairs += certificate_pairs(cat, verdict)
    if mode == "machine":
        return _lines(pairs, mode)
    return _lines(pairs[3:], mode, headline=verdict.label)


def render_validation(outcome: ValidationOutcome, mode: OutputMode) -> str:
    if mode == "json":
        return to_json(outcome)
    pairs: Pairs = [
        ("source", outcome.source),
        ("valid", "yes" if outcome.valid else "no"),
        ("objects", str(outcome.n_objects)),
        ("morphisms", str(outcome.n_morphisms)),
        ("violations", str(len(outcome.violations))),
    ]
    pairs += [
        (f"violation.{k}", f"{v.kind} {list(v.indices)} {v.message}") for k, v in enumerate(outcome.violations)
    ]
    return _lines(pairs, mode, headline="valid" if outcome.valid else "invalid")


def render_analysis(report: AnalysisReport, mode: OutputMode) -> str:
    if mode == "json":
        return to_json(report)
    pairs: Pairs = [
        ("source", report.source),
        ("objects", str(report.n_objects)),
        ("morphisms", str(report.n_morphisms)),
        ("components", str(len(report.components))),
    ]
    for k, c in enumerate(report.components):
        prefix = f"component.{k}"
        pairs += [
            (f"{prefix}.objects", _objects(c.objects)),
            (f"{prefix}.strongly_connected", "yes" if c.strongly_connected else "no"),
        ]
        if not c.strongly_connected:
            pairs += [(f"{prefix}.source", _objects(c.source)), (f"{prefix}.rest", _objects(c.rest))]
            continue
        pairs += [(f"{prefix}.is.{n}", text) for n, text in enumerate(c.systems)]
        pairs.append((f"{prefix}.cardinalities", ",".join(map(str, c.cardinalities)) or "none"))
        if c.group_order is not None:
            pairs += [
                (f"{prefix}.group_order", str(c.group_order)),
                (f"{prefix}.idempotents", ",".join(c.idempotents)),
                (f"{prefix}.tau", " ".join(f"{f}->{g}" for f, g in c.tau)),
            ]
        if c.zero_elements:
            pairs.append((f"{prefix}.zero_elements", ",".join(c.zero_elements)))
    return _lines(pairs, mode, headline=report.source)


def render_oracle(report: Union[SetOracleReport, ModOracleReport], source: str, mode: OutputMode) -> str:
    if mode == "json":
        return to_json(report)
    verdict = report.verdict
    pairs: Pairs = [
        ("source", source),
        ("target", verdict.target),
        ("answer", verdict.label),
        ("samples", str(report.samples)),
        ("seed", str(report.seed)),
        ("transforms", str(report.transforms_checked)),
    ]
    if isinstance(report, SetOracleReport):
        pairs.append(("bijective_samples", str(report.bijective_samples)))
        pairs.append(("group_action_checks", str(report.group_action_checks)))
        if report.witness is not None:
            pairs += [
                ("witness", report.witness.description),
                ("witness.lim", str(report.witness.limit_size)),
                ("witness.colim", str(report.witness.colimit_size)),
            ]
    else:
        pairs += [
            ("invertible_samples", str(report.invertible_samples)),
            ("norm_checks", str(report.norm_checks)),
            ("pullback_checks", str(report.pullback_checks)),
            ("inconclusive", str(report.inconclusive)),
        ]
        if report.witness is not None:
            pairs.append(("witness", report.witness))
        if report.witness_status is not None:
            pairs.append(("witness.status", report.witness_status))
        if report.probe is not None:
            pairs.append(("probe.dims", ",".join(str(p.dimension) for p in report.probe.probes)))
    pairs.append(("consistent", "yes" if report.consistent else "no"))
    pairs += [(f"inconsistency.{k}", text) for k, text in enumerate(report.inconsistencies)]
    return _lines(pairs, mode, headline=f"{verdict.label} ({'consistent' if report.consistent else 'INCONSISTENT'})")


def render_corpus(entries: Sequence[CorpusEntry], mode: OutputMode) -> str:
    if mode == "json":
        return orjson.dumps([e.model_dump() for e in entries], option=orjson.OPT_INDENT_2).decode()
    if mode == "machine":
        return "\n".join(f"{e.name}: {e.n_objects} {e.n_morphisms}" for e in entries)
    return "\n".join(f"{e.name:<36} {e.n_objects} objects, {e.n_morphisms} morphisms" for e in entries)


def render_error(report: ErrorReport, mode: OutputMode) -> str:
    if mode == "json":
        return to_json(report)
    return f"error: {report.error}: {report.message}"
