"""Validated run configuration for CLI commands."""

from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Command = Literal["validate", "analyze", "decide", "oracle", "export", "corpus"]
Target = Literal["set", "mod"]
OutputMode = Literal["human", "machine", "json"]


class RunConfig(BaseModel):
    """
    One CLI invocation after merging flags over settings.

    Every command except ``corpus`` reads exactly one category, from a file
    or from a generator spec.
    """

    model_config = ConfigDict(frozen=True)

    command: Command
    target: Optional[Target] = None
    input_path: Optional[Path] = Field(None, description="Category text file")
    generator: Optional[str] = Field(None, description="Generator spec used instead of a file")
    ring: Optional[str] = Field(None, description="Ring spec for 'decide mod'")
    p: Optional[int] = Field(None, ge=2, description="Prime for 'oracle mod'")
    samples: int = Field(100, ge=0)
    seed: int = Field(7, ge=0)
    max_set_size: int = Field(4, ge=0)
    max_vect_dim: int = Field(6, ge=0)
    output: OutputMode = "human"

    @field_validator("generator")
    @classmethod
    def strip_generator(cls, v: Optional[str]) -> Optional[str]:
        if v is not None and not v.strip():
            raise ValueError("generator spec cannot be empty")
        return v.strip() if v is not None else None

    @model_validator(mode="after")
    def check_source(self) -> "RunConfig":
        if self.command == "corpus":
            return self
        if (self.input_path is None) == (self.generator is None):
            raise ValueError("give exactly one of an input file or --gen")
        if self.command in ("decide", "oracle") and self.target is None:
            raise ValueError(f"'{self.command}' needs a target: set or mod")
        if self.command == "decide" and self.target == "mod" and self.ring is None:
            raise ValueError("'decide mod' needs --ring")
        if self.command == "oracle" and self.target == "mod" and self.p is None:
            raise ValueError("'oracle mod' needs --p")
        return self

    @property
    def source_label(self) -> str:
        return f"gen:{self.generator}" if self.generator is not None else str(self.input_path)
