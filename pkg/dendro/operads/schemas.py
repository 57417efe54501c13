import json
import os
import re
from itertools import permutations
from typing import Dict, List, Optional

from pydantic import BaseModel, ValidationError

from ..errors import InputError
from ..trees.catalog import load_tree
from ..trees.schemas import TreeModel
from .operad import (
    CategoryOperad,
    Operation,
    OperadMap,
    TableOperad,
    commutative_operad,
    contractible_groupoid,
    groupoid_times_cyclic,
    trivial_operad,
)
from .tree_operad import TreeOperad


def _parse(cls, payload, what):
    try:
        return cls.model_validate(payload)
    except ValidationError as e:
        raise InputError(f"Malformed {what} JSON: {e}") from e


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"Cannot read {path}: {e}") from e


class OperationModel(BaseModel):
    inputs: List[str]
    output: str
    label: str


class CompositionModel(BaseModel):
    p: str
    i: int
    q: str
    result: str


class ActionModel(BaseModel):
    p: str
    perm: List[int]
    result: str


class OperadModel(BaseModel):
    """A finite operad: explicit tables, or one of the built-in families.

    ``kind`` is one of table, commutative, trivial, tree.
    """

    kind: str = "table"
    name: str = "table"
    colours: List[str] = []
    arity_cap: int = 2
    operations: List[OperationModel] = []
    compositions: List[CompositionModel] = []
    actions: List[ActionModel] = []
    tree: Optional[str] = None
    tree_json: Optional[TreeModel] = None
    nullary: bool = False

    @classmethod
    def parse_payload(cls, payload):
        return _parse(cls, payload, "operad")

    @classmethod
    def from_operad(cls, P, max_arity=None):
        ops = [p for p in P.all_operations(max_arity) if not P.is_identity(p)]
        label = {p: str(p.label) for p in ops}
        compositions, actions = [], []
        for p in ops:
            for perm in permutations(range(len(p.inputs))):
                if list(perm) != list(range(len(p.inputs))):
                    actions.append(ActionModel(p=label[p], perm=list(perm), result=label[P.act(p, perm)]))
            for i, c in enumerate(p.inputs):
                for q in ops:
                    if q.output != c:
                        continue
                    r = P.compose(p, i, q)
                    if r is not None and not P.is_identity(r):
                        compositions.append(CompositionModel(p=label[p], i=i, q=label[q], result=label[r]))
        return cls(
            name=P.name,
            colours=list(P.colours),
            arity_cap=P.arity_cap if max_arity is None else min(max_arity, P.arity_cap),
            operations=[OperationModel(inputs=list(p.inputs), output=p.output, label=label[p]) for p in ops],
            compositions=compositions,
            actions=actions,
        )

    def build(self):
        if self.kind == "commutative":
            return commutative_operad(self.arity_cap, self.colours[0] if self.colours else "x", self.nullary)
        if self.kind == "trivial":
            return trivial_operad(self.colours[0] if self.colours else "x")
        if self.kind == "tree":
            if self.tree_json is not None:
                return TreeOperad(self.tree_json.to_tree())
            if self.tree is None:
                raise InputError("A tree operad needs 'tree' or 'tree_json'")
            return TreeOperad(load_tree(self.tree))
        if self.kind != "table":
            raise InputError(f"Unknown operad kind {self.kind!r}")

        by_label = {}
        for m in self.operations:
            if m.label in by_label:
                raise InputError(f"Operation label {m.label!r} is used twice")
            by_label[m.label] = Operation(tuple(m.inputs), m.output, m.label)

        def lookup(label):
            try:
                return by_label[label]
            except KeyError:
                raise InputError(f"Unknown operation label {label!r}")

        compositions = {(lookup(c.p), c.i, lookup(c.q)): lookup(c.result) for c in self.compositions}
        actions = {(lookup(a.p), tuple(a.perm)): lookup(a.result) for a in self.actions}
        return TableOperad(
            self.colours, by_label.values(), compositions, actions, arity_cap=self.arity_cap, name=self.name
        )


class CategoryModel(BaseModel):
    """A finite category; ``kind`` contractible or cyclic builds E(objects) or E(objects) x Z/order."""

    kind: str = "table"
    name: Optional[str] = None
    objects: List[str]
    order: int = 2
    arrows: Dict[str, List[str]] = {}
    composition: List[List[str]] = []
    identities: Dict[str, str] = {}

    @classmethod
    def parse_payload(cls, payload):
        return _parse(cls, payload, "category")

    def build(self):
        if self.kind == "contractible":
            return contractible_groupoid(self.objects, name=self.name)
        if self.kind == "cyclic":
            return groupoid_times_cyclic(self.objects, self.order, name=self.name)
        if self.kind != "table":
            raise InputError(f"Unknown category kind {self.kind!r}")
        for a, ends in self.arrows.items():
            if len(ends) != 2 or any(o not in self.objects for o in ends):
                raise InputError(f"Arrow {a!r} must go between two known objects")
        composition = {}
        for entry in self.composition:
            if len(entry) != 3:
                raise InputError(f"Composition entries are [later, earlier, result], got {entry}")
            composition[(entry[0], entry[1])] = entry[2]
        return CategoryOperad(self.objects, {a: tuple(e) for a, e in self.arrows.items()}, composition,
                              self.identities, name=self.name or "category")


class FunctorModel(BaseModel):
    colour_map: Dict[str, str]
    arrow_map: Dict[str, str] = {}

    @classmethod
    def parse_payload(cls, payload):
        return _parse(cls, payload, "map")

    def build(self, source, target, name="map"):
        op_map = {}
        for a in source.all_operations(1):
            if source.is_identity(a):
                continue
            image_label = self.arrow_map.get(str(a.label))
            if image_label is None:
                raise InputError(f"Map {name} does not say where {a.label!r} goes")
            inputs = tuple(self.colour_map[c] for c in a.inputs)
            candidates = [q for q in target.operations(inputs, self.colour_map[a.output]) if str(q.label) == image_label]
            if not candidates:
                raise InputError(f"Map {name}: no operation {image_label!r} at {list(inputs)} -> {a.output}")
            op_map[a] = candidates[0]
        return OperadMap(source, target, self.colour_map, op_map, name=name)


class PushoutSpec(BaseModel):
    P: OperadModel
    K: CategoryModel
    H: CategoryModel
    f: FunctorModel
    u: FunctorModel

    @classmethod
    def parse_payload(cls, payload):
        return _parse(cls, payload, "pushout")

    def build(self):
        P, K, H = self.P.build(), self.K.build(), self.H.build()
        return P, self.f.build(K, P, name="f"), self.u.build(K, H, name="u")


class FreeCellSpec(BaseModel):
    P: OperadModel
    inputs: List[str]
    output: str

    @classmethod
    def parse_payload(cls, payload):
        return _parse(cls, payload, "free cell")


COMMUTATIVE = re.compile(r"^com(\d+)$")


def operad_from_ref(ref):
    """An operad from a JSON file, ``comN``, ``eta`` or ``tree:T``."""
    if os.path.exists(ref):
        return OperadModel.parse_payload(read_json(ref)).build()
    match = COMMUTATIVE.match(ref)
    if match:
        return commutative_operad(int(match.group(1)))
    if ref == "eta":
        return trivial_operad()
    if ref.startswith("tree:"):
        return TreeOperad(load_tree(ref[len("tree:"):]))
    raise InputError(f"Unknown operad {ref!r}")
