"""Problem, witness and report files (JSON, ``"schema": "superq/1"``).

Polynomials are strings in the grammar of :mod:`superq.textio`. Explicit
coactions list each τ(x) as pairs ``[left, right]`` meaning left⊗right.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Annotated, Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from . import hopf as hopf_mod
from .algebra import AlgebraPresentation, SuperVariable, TensorAlgebra
from .coaction import (Coaction, CoactionError, OddDerivation, from_explicit, from_group_action,
                       from_odd_derivation)
from .field import FieldSpec
from .freeness import StabilizerWitness
from .groups import FiniteGroup, GroupTableError
from .textio import ParseError, parse_element, parse_tensor

SCHEMA = "superq/1"


class InputError(ValueError):
    """Unreadable or schema-invalid input (exit code 2)."""


class SemanticError(ValueError):
    """Well-formed input describing an invalid structure (exit code 1)."""


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class FieldModel(_Strict):
    kind: Literal["rationals", "prime"]
    characteristic: int = 0

    @model_validator(mode="after")
    def _check(self):
        if self.kind == "rationals" and self.characteristic != 0:
            raise ValueError("rationals have characteristic 0")
        if self.kind == "prime":
            p = self.characteristic
            if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
                raise ValueError(f"characteristic {p} is not prime")
        return self

    def build(self) -> FieldSpec:
        return FieldSpec.rationals() if self.kind == "rationals" else FieldSpec.prime(self.characteristic)


class GeneratorModel(_Strict):
    name: Annotated[str, Field(pattern=r"^[A-Za-z_][A-Za-z0-9_]*$")]
    parity: Literal["even", "odd"]
    degree: Annotated[int, Field(ge=1)] = 1
    nilpotent_order: Optional[Annotated[int, Field(ge=1)]] = None

    @model_validator(mode="after")
    def _odd_relation(self):
        if self.parity == "odd" and self.nilpotent_order is not None:
            raise ValueError(f"odd generator {self.name} cannot carry a power relation")
        return self


class AlgebraModel(_Strict):
    generators: list[GeneratorModel]

    @field_validator("generators")
    @classmethod
    def _unique(cls, gens):
        seen = set()
        for g in gens:
            if g.name in seen:
                raise ValueError(f"generator {g.name!r} is declared twice")
            seen.add(g.name)
        return gens

    def build(self, field: FieldSpec) -> AlgebraPresentation:
        variables = [SuperVariable(g.name, 0 if g.parity == "even" else 1, g.degree)
                     for g in self.generators]
        rel = {g.name: g.nilpotent_order for g in self.generators if g.nilpotent_order}
        return AlgebraPresentation(field, variables, rel)


class GroupModel(_Strict):
    kind: Literal["odd-additive", "frobenius-1", "constant", "product"]
    cyclic: Optional[Annotated[int, Field(ge=1)]] = None
    cyclic_product: Optional[list[Annotated[int, Field(ge=1)]]] = None
    elements: Optional[list[str]] = None
    table: Optional[list[list[str]]] = None
    factors: Optional[list[GroupModel]] = None

    @model_validator(mode="after")
    def _shape(self):
        given = [n for n in ("cyclic", "cyclic_product", "elements") if getattr(self, n) is not None]
        if self.kind == "constant":
            if len(given) != 1:
                raise ValueError("a constant group needs exactly one of cyclic, cyclic_product, elements")
            if (self.elements is None) != (self.table is None):
                raise ValueError("elements and table go together")
        elif given or self.table is not None:
            raise ValueError(f"group kind {self.kind} takes no table data")
        if (self.kind == "product") != (self.factors is not None):
            raise ValueError("factors are required for, and only for, kind product")
        return self

    def finite_group(self) -> FiniteGroup:
        if self.cyclic is not None:
            return FiniteGroup.cyclic(self.cyclic)
        if self.cyclic_product is not None:
            return FiniteGroup.direct_product([FiniteGroup.cyclic(n) for n in self.cyclic_product])
        return FiniteGroup.from_rows(self.elements, self.table)

    def spec(self) -> hopf_mod.SupergroupSpec:
        if self.kind == "constant":
            return hopf_mod.SupergroupSpec(hopf_mod.CONSTANT, group=self.finite_group())
        if self.kind == "product":
            return hopf_mod.SupergroupSpec(hopf_mod.PRODUCT,
                                           factors=tuple(f.spec() for f in self.factors))
        return hopf_mod.SupergroupSpec(self.kind)


class OddDerivationAction(_Strict):
    kind: Literal["odd-derivation"]
    images: dict[str, str]


class GroupActionAction(_Strict):
    kind: Literal["group-action"]
    images: dict[str, dict[str, str]]


class ExplicitAction(_Strict):
    kind: Literal["explicit"]
    tau: dict[str, list[Annotated[list[str], Field(min_length=2, max_length=2)]]]


ActionModel = Annotated[Union[OddDerivationAction, GroupActionAction, ExplicitAction],
                        Field(discriminator="kind")]


class WitnessModel(_Strict):
    algebra: AlgebraModel
    point: dict[str, str]
    element: dict[str, str]


class OptionsModel(_Strict):
    invariants_degree: Annotated[int, Field(ge=0)] = 8
    generators_degree: Annotated[int, Field(ge=0)] = 8
    freeness_bound: Annotated[int, Field(ge=0)] = 6
    quotient_degree: Annotated[int, Field(ge=0)] = 6
    check_degree: Annotated[int, Field(ge=0)] = 6
    basis_degree: Annotated[int, Field(ge=0)] = 6
    free_basis: Optional[list[str]] = None
    normal_subgroup: Optional[list[str]] = None
    witness: Optional[WitnessModel] = None


class ProblemFile(_Strict):
    schema_: Literal["superq/1"] = Field(alias="schema")
    name: Optional[str] = None
    description: Optional[str] = None
    field: FieldModel
    algebra: AlgebraModel
    group: GroupModel
    action: ActionModel
    options: OptionsModel = OptionsModel()


class WitnessFile(_Strict):
    schema_: Literal["superq/1"] = Field(alias="schema")
    witness: WitnessModel


class ReportFile(_Strict):
    """Envelope of every ``--format json`` report."""

    schema_: Literal["superq/1"] = Field(alias="schema")
    command: str
    exit_code: Literal[0, 1, 2, 3]
    result: dict[str, Any]


# loading ---------------------------------------------------------------

def _format_validation(err: ValidationError) -> str:
    lines = []
    for e in err.errors():
        loc = ".".join(str(p) for p in e["loc"]) or "<root>"
        lines.append(f"{loc}: {e['msg']}")
    return "; ".join(lines)


def read_json(path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc


def parse_problem_data(data: Any, origin: str = "<problem>") -> ProblemFile:
    try:
        return ProblemFile.model_validate(data)
    except ValidationError as exc:
        raise InputError(f"{origin}: {_format_validation(exc)}") from exc


def parse_problem(path) -> ProblemFile:
    return parse_problem_data(read_json(path), str(path))


def parse_witness(path) -> WitnessModel:
    try:
        return WitnessFile.model_validate(read_json(path)).witness
    except ValidationError as exc:
        raise InputError(f"{path}: {_format_validation(exc)}") from exc


# building --------------------------------------------------------------

@dataclass
class Built:
    problem: ProblemFile
    field: FieldSpec
    space: AlgebraPresentation
    group: hopf_mod.HopfSuperAlgebra
    coaction: Coaction


def _parse(text: str, algebra, where: str):
    try:
        return parse_element(text, algebra)
    except ParseError as exc:
        raise InputError(f"{where}: {exc}") from exc


def build_group(model: GroupModel, field: FieldSpec) -> hopf_mod.HopfSuperAlgebra:
    try:
        return hopf_mod.build(model.spec(), field)
    except GroupTableError as exc:
        raise SemanticError(f"group: {exc}") from exc
    except hopf_mod.HopfError as exc:
        raise SemanticError(f"group: {exc}") from exc


def build_coaction(problem: ProblemFile, field: FieldSpec, space: AlgebraPresentation,
                   group: hopf_mod.HopfSuperAlgebra, check_degree: int = 2) -> Coaction:
    act = problem.action
    names = set(space.generator_names)
    try:
        if act.kind == "odd-derivation":
            unknown = set(act.images) - names
            if unknown:
                raise InputError(f"action.images: unknown generators {sorted(unknown)}")
            imgs = {n: _parse(s, space, f"action.images.{n}") for n, s in act.images.items()}
            return from_odd_derivation(OddDerivation(space, imgs), group, check_degree)
        if act.kind == "group-action":
            if group.spec.kind != hopf_mod.CONSTANT:
                raise SemanticError("group-action needs a constant group")
            imgs = {}
            for g, m in act.images.items():
                if g not in group.group.elements:
                    raise InputError(f"action.images: {g!r} is not a group element")
                unknown = set(m) - names
                if unknown:
                    raise InputError(f"action.images.{g}: unknown generators {sorted(unknown)}")
                imgs[g] = {n: _parse(s, space, f"action.images.{g}.{n}") for n, s in m.items()}
            return from_group_action(space, group, imgs, check_degree)
        T = TensorAlgebra([space, group.algebra])
        unknown = set(act.tau) - names
        if unknown:
            raise InputError(f"action.tau: unknown generators {sorted(unknown)}")
        tau = {}
        for n in space.generator_names:
            pairs = act.tau.get(n)
            if pairs is None:
                raise InputError(f"action.tau: no image for generator {n}")
            try:
                tau[n] = parse_tensor(pairs, T)
            except ParseError as exc:
                raise InputError(f"action.tau.{n}: {exc}") from exc
        return from_explicit(space, group, tau, check_degree)
    except CoactionError as exc:
        raise SemanticError(f"action: {exc}") from exc


def build(problem: ProblemFile, check_degree: int = 2) -> Built:
    field = problem.field.build()
    try:
        space = problem.algebra.build(field)
    except ValueError as exc:
        raise InputError(f"algebra: {exc}") from exc
    group = build_group(problem.group, field)
    c = build_coaction(problem, field, space, group, check_degree)
    return Built(problem, field, space, group, c)


def build_witness(model: WitnessModel, built: Built) -> StabilizerWitness:
    try:
        A = model.algebra.build(built.field)
    except ValueError as exc:
        raise InputError(f"witness.algebra: {exc}") from exc
    point = {k: _parse(v, A, f"witness.point.{k}") for k, v in model.point.items()}
    element = {k: _parse(v, A, f"witness.element.{k}") for k, v in model.element.items()}
    return StabilizerWitness(A, point, element)


def load(path, check_degree: int = 2) -> Built:
    return build(parse_problem(path), check_degree)
