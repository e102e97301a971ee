"""Scenario files: versioned JSON, unknown fields rejected."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .errors import ConfigurationError

SCENARIO_VERSION = 1


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class CoefficientsRef(_Strict):
    """A builder with parameters, a JSON file, or an inline system."""

    builder: Optional[str] = None
    params: dict = Field(default_factory=dict)
    file: Optional[str] = None
    inline: Optional[dict] = None

    @model_validator(mode="after")
    def _one_source(self):
        given = sum(x is not None for x in (self.builder, self.file, self.inline))
        if given != 1:
            raise ValueError("give exactly one of builder, file, inline")
        return self

    def build(self, base: Path | None = None):
        from . import coeffs
        if self.file is not None:
            p = Path(self.file)
            if base is not None and not p.is_absolute():
                p = base / p
            return coeffs.load(p)
        if self.inline is not None:
            return coeffs.from_json(self.inline)
        obj = {"builder": self.builder, "params": dict(self.params)}
        if "lie" in obj["params"]:
            obj["lie"] = obj["params"].pop("lie")
        return coeffs.from_json(obj)


class DegreeRange(_Strict):
    start: int
    stop: int        # inclusive

    @model_validator(mode="after")
    def _order(self):
        if self.stop < self.start - 1:
            raise ValueError("range stop before start")
        return self


class SelectorSpec(_Strict):
    degree: Union[int, list[int], DegreeRange]
    color: Optional[list[int]] = None
    hodge: Optional[int] = None
    hodge_max: Optional[int] = None
    hodge_multi: Optional[list[int]] = None

    def degrees(self) -> list[int]:
        d = self.degree
        if isinstance(d, int):
            return [d]
        if isinstance(d, DegreeRange):
            return list(range(d.start, d.stop + 1))
        return list(d)

    def selectors(self):
        from .hochschild.complexes import SliceSelector
        return [SliceSelector(q, None if self.color is None else tuple(self.color), self.hodge,
                              self.hodge_max, None if self.hodge_multi is None else tuple(self.hodge_multi))
                for q in self.degrees()]


class Scenario(_Strict):
    version: Literal[1]
    name: str = "scenario"
    coefficients: Optional[CoefficientsRef] = None
    complex: Literal["wedge", "cobar", "gr", "suspension"] = "wedge"
    n: Optional[int] = None
    signature: Optional[list[tuple[str, int]]] = None
    selectors: list[SelectorSpec] = Field(default_factory=list)
    euler_colors: list[list[int]] = Field(default_factory=list)
    representatives: bool = True
    # action / factor-test
    endos: list[str] = Field(default_factory=list)
    pairs: list[tuple[str, str]] = Field(default_factory=list)
    inner: list[str] = Field(default_factory=list)
    filtration: bool = False
    # bead
    partitions: list[str] = Field(default_factory=list)
    window: Optional[list[int]] = None
    shuffle_seed: Optional[int] = None
    bead_degrees: Optional[list[int]] = None
    # induced map
    map: Optional[str] = None
    compare: Optional[Literal["star"]] = None
    verify: bool = True
    # euler projectors
    m_max: Optional[int] = None
    colors: list[list[int]] = Field(default_factory=list)
    csv: Optional[str] = None

    @field_validator("n")
    @classmethod
    def _n(cls, v):
        if v is not None and v < 0:
            raise ValueError("n must be >= 0")
        return v


def load_scenario(path) -> tuple[Scenario, Path]:
    p = Path(path)
    try:
        raw = json.loads(p.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read scenario {path}: {exc}") from exc
    return parse_scenario(raw), p.parent


def parse_scenario(raw) -> Scenario:
    try:
        return Scenario.model_validate(raw)
    except ValidationError as exc:
        msgs = "; ".join(f"{'.'.join(map(str, e['loc']))}: {e['msg']}" for e in exc.errors())
        raise ConfigurationError(f"invalid scenario: {msgs}") from None
