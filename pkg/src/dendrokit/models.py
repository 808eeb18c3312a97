"""Input documents and machine-readable result documents."""
from __future__ import annotations

import itertools
from pathlib import Path
from typing import Literal, Optional, TypeVar

import yaml
from pydantic import BaseModel, Field, field_validator, model_validator

Model = TypeVar("Model", bound=BaseModel)


def load_document(path: Path, model: type[Model]) -> Model:
    """Read a YAML (or JSON) file and validate it against ``model``."""
    with open(path) as f:
        data = yaml.safe_load(f) or {}
    return model.model_validate(data)


class Invocation(BaseModel):
    command: str
    expression: Optional[str] = None
    max_vertices: int = Field(default=3, ge=1)
    max_arity: int = Field(default=3, ge=1)
    arity_bound: Optional[int] = Field(default=None, ge=0)
    output_format: Literal["text", "json"] = "text"
    seed: int = 0


class GroupoidTable(BaseModel):
    """A permutative groupoid table file.

    With ``discrete: true`` only objects, unit and the tensor table are read;
    the groupoid has identities only and a trivial symmetry.
    """

    name: str = "table"
    objects: list[str] = Field(..., min_length=1)
    unit: str
    tensor: list[tuple[str, str, str]]
    discrete: bool = False
    morphisms: Optional[list[tuple[str, str, str]]] = None
    composition: Optional[list[tuple[str, str, str]]] = None
    identities: Optional[dict[str, str]] = None
    tensor_morphisms: Optional[list[tuple[str, str, str]]] = None
    symmetry: Optional[list[tuple[str, str, str]]] = None

    @field_validator("objects")
    @classmethod
    def unique_objects(cls, v: list[str]) -> list[str]:
        if len(set(v)) != len(v):
            raise ValueError("object names must be unique")
        return v

    @model_validator(mode="after")
    def complete_tables(self):
        if self.unit not in self.objects:
            raise ValueError(f"unit {self.unit!r} is not one of the objects")
        pairs = [(a, b) for a, b, _ in self.tensor]
        if len(set(pairs)) != len(pairs):
            raise ValueError("tensor table lists a pair twice")
        missing = [p for p in itertools.product(self.objects, repeat=2) if p not in set(pairs)]
        if missing:
            raise ValueError(f"partial tensor table: no entry for {missing[0]}")
        if not self.discrete:
            absent = [
                name
                for name in ("morphisms", "composition", "identities", "tensor_morphisms", "symmetry")
                if getattr(self, name) is None
            ]
            if absent:
                raise ValueError(f"partial table: {', '.join(absent)} required unless discrete is true")
        return self


class SimplicialListing(BaseModel):
    """Vertices, edges with endpoints and triangles with their (d0, d1, d2) faces."""

    name: str = "simplicial"
    vertices: list[str] = Field(..., min_length=1)
    edges: dict[str, tuple[str, str]] = Field(default_factory=dict)
    triangles: dict[str, tuple[str, str, str]] = Field(default_factory=dict)

    @model_validator(mode="after")
    def endpoints_are_vertices(self):
        verts = set(self.vertices)
        for name, (s, t) in self.edges.items():
            if s not in verts or t not in verts:
                raise ValueError(f"edge {name!r} has an endpoint that is not a listed vertex")
        return self


class HornMapChoice(BaseModel):
    """Attaching map file: the index of a horn map in the deterministic enumeration."""

    horn_map: int = Field(..., ge=0)


class GroupDocument(BaseModel):
    rank: int
    torsion: list[int]
    text: str


class RelationRow(BaseModel):
    row: list[int]
    provenance: str


class LambdaEntry(BaseModel):
    component: list[str]
    k0_class: list[int]


class K0Document(BaseModel):
    expression: str
    arity_bound: int
    group: GroupDocument
    generators: list[str]
    relations: list[RelationRow]
    lambda_table: list[LambdaEntry]


class HornTallyDocument(BaseModel):
    tree: str
    label: str
    maps: int
    fillers: int
    counterexample: Optional[str] = None


class KanReportDocument(BaseModel):
    expression: str
    mode: Literal["inner", "full"]
    max_vertices: int
    max_arity: int
    passed: bool
    counterexample: Optional[str] = None
    tallies: list[HornTallyDocument]


class HomListing(BaseModel):
    source: str
    target: str
    count: int
    maps: list[str]


class FaceEntry(BaseModel):
    label: str
    kind: Literal["inner", "outer"]
    map: str


class FaceListing(BaseModel):
    tree: str
    faces: list[FaceEntry]


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class VerifyDocument(BaseModel):
    suite: str
    seed: int
    passed: bool
    checks: list[CheckResult]
