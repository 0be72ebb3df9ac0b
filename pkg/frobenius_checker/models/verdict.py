"""Ring descriptors, certificates and verdicts."""

from typing import Annotated, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
from sympy import isprime

from ..core.category import ComponentPartition
from ..core.invariant_system import InvariantSystem, SeedTrace
from ..exceptions import RingSpecError


class RingSpec(BaseModel):
    """
    Symbolic ring: ``z`` (integers), ``q`` (rationals), ``zmod:<n>`` or
    ``fp:<p>``.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["z", "q", "zmod", "fp"]
    modulus: Optional[int] = None

    @model_validator(mode="after")
    def check_modulus(self) -> "RingSpec":
        if self.kind in ("z", "q"):
            if self.modulus is not None:
                raise ValueError(f"ring {self.kind!r} takes no modulus")
        elif self.modulus is None or self.modulus < 2:
            raise ValueError("modulus must be at least 2")
        elif self.kind == "fp" and not isprime(self.modulus):
            raise ValueError(f"{self.modulus} is not prime")
        return self

    @classmethod
    def make(cls, kind: str, modulus: Optional[int] = None) -> "RingSpec":
        try:
            return cls(kind=kind, modulus=modulus)
        except ValidationError as exc:
            raise RingSpecError(f"invalid ring {kind}:{modulus}: {exc.errors()[0]['msg']}") from None

    @classmethod
    def integers(cls) -> "RingSpec":
        return cls.make("z")

    @classmethod
    def rationals(cls) -> "RingSpec":
        return cls.make("q")

    @classmethod
    def integers_mod(cls, n: int) -> "RingSpec":
        return cls.make("zmod", n)

    @classmethod
    def prime_field(cls, p: int) -> "RingSpec":
        return cls.make("fp", p)

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        """
        Parse ``z``, ``q``, ``zmod:<n>`` or ``fp:<p>``.

        Raises:
            RingSpecError: on unknown kinds or bad moduli
        """
        kind, _, rest = text.strip().lower().partition(":")
        if kind in ("z", "q"):
            if rest:
                raise RingSpecError(f"ring {kind!r} takes no modulus")
            return cls.make(kind)
        if kind in ("zmod", "fp"):
            try:
                modulus = int(rest)
            except ValueError:
                raise RingSpecError(f"bad modulus in ring spec {text!r}") from None
            return cls.make(kind, modulus)
        raise RingSpecError(f"unknown ring spec {text!r}; expected z, q, zmod:<n> or fp:<p>")

    def __str__(self) -> str:
        return self.kind if self.modulus is None else f"{self.kind}:{self.modulus}"


class InvariantSystemCertificate(BaseModel):
    """A component's invariant system, in parent-category indices."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["invariant_system"] = "invariant_system"
    objects: Tuple[int, ...]
    system: InvariantSystem
    cardinality: int
    ring: Optional[str] = None
    invertible: Optional[bool] = None


class ComponentsCertificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["components"] = "components"
    components: Tuple[InvariantSystemCertificate, ...]


class NotConnectedCertificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["not_connected"] = "not_connected"
    partition: ComponentPartition


class NotStronglyConnectedCertificate(BaseModel):
    """``source`` only has arrows leaving it towards ``rest``."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["not_strongly_connected"] = "not_strongly_connected"
    objects: Tuple[int, ...]
    source: Tuple[int, ...]
    rest: Tuple[int, ...]


class NoInvariantSystemCertificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["no_invariant_system"] = "no_invariant_system"
    objects: Tuple[int, ...]
    trace: Tuple[SeedTrace, ...]


class NoSingletonSystemCertificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["no_singleton_system"] = "no_singleton_system"
    objects: Tuple[int, ...]
    cardinalities: Tuple[int, ...]


class CardinalityNotInvertibleCertificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["cardinality_not_invertible"] = "cardinality_not_invertible"
    objects: Tuple[int, ...]
    cardinality: int
    cardinalities: Tuple[int, ...]
    ring: str


class EmptyCategoryCertificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["empty_category"] = "empty_category"
    has_zero_object: bool


Certificate = Annotated[
    Union[
        InvariantSystemCertificate,
        ComponentsCertificate,
        NotConnectedCertificate,
        NotStronglyConnectedCertificate,
        NoInvariantSystemCertificate,
        NoSingletonSystemCertificate,
        CardinalityNotInvertibleCertificate,
        EmptyCategoryCertificate,
    ],
    Field(discriminator="kind"),
]

POSITIVE_KINDS = frozenset({"invariant_system", "components", "empty_category"})


class Verdict(BaseModel):
    """A yes/no answer with the certificate that justifies it."""

    model_config = ConfigDict(frozen=True)

    answer: bool
    target: str = Field(..., description="'set' or a ring spec")
    certificate: Certificate
    reason: str

    @model_validator(mode="after")
    def check_certificate_kind(self) -> "Verdict":
        kind = self.certificate.kind
        if kind == "empty_category":
            if self.answer != self.certificate.has_zero_object:
                raise ValueError("empty-category verdict must follow the zero-object fact")
        elif self.answer != (kind in POSITIVE_KINDS):
            raise ValueError(f"certificate {kind!r} does not fit answer {self.answer}")
        return self

    @property
    def label(self) -> str:
        return "yes" if self.answer else "no"
