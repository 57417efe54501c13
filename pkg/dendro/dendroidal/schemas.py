import os
import re
from typing import List, Optional

from pydantic import BaseModel, ValidationError

from ..errors import InputError
from ..operads.schemas import OperadModel, operad_from_ref, read_json
from ..trees.catalog import load_tree
from ..trees.schemas import TreeModel
from .dset import build_dset

CALL = re.compile(r"^\s*(\w+)\s*\((.*)\)\s*$", re.S)


class DendroidalSpec(BaseModel):
    """Construction record of a dendroidal set, as written in JSON or as an expression."""

    kind: str
    tree: Optional[str] = None
    tree_json: Optional[TreeModel] = None
    edge: Optional[str] = None
    edges: List[str] = []
    operad: Optional[OperadModel] = None
    operad_ref: Optional[str] = None
    parts: List["DendroidalSpec"] = []
    max_arity: int = 2

    @classmethod
    def parse_payload(cls, payload):
        try:
            return cls.model_validate(payload)
        except ValidationError as e:
            raise InputError(f"Malformed dendroidal set JSON: {e}") from e

    def _tree(self):
        if self.tree_json is not None:
            return self.tree_json.to_tree()
        if self.tree is None:
            raise InputError(f"A {self.kind} needs a tree")
        return load_tree(self.tree)

    def _operad(self):
        if self.operad is not None:
            return self.operad.build()
        if self.operad_ref is None:
            raise InputError("A nerve needs an operad")
        return operad_from_ref(self.operad_ref)

    def build(self):
        tree = self._tree() if self.kind in TREE_KINDS else None
        operad = self._operad() if self.kind == "nerve" else None
        parts = [p.build() for p in self.parts]
        return build_dset(
            self.kind,
            tree=tree,
            edge=self.edge,
            edges=self.edges,
            operad=operad,
            parts=parts,
            max_arity=self.max_arity,
        )


DendroidalSpec.model_rebuild()

TREE_KINDS = {"representable", "boundary", "inner_horn", "generalized_horn", "segal_core"}

ALIASES = {
    "rep": "representable",
    "boundary": "boundary",
    "horn": "inner_horn",
    "ghorn": "generalized_horn",
    "core": "segal_core",
    "nerve": "nerve",
    "union": "union",
    "intersection": "intersection",
}


def split_args(args, sep):
    out, depth, current = [], 0, ""
    for ch in args:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append(current.strip())
            current = ""
        else:
            current += ch
    if current.strip():
        out.append(current.strip())
    return out


def parse_expression(text):
    """``rep(T)``, ``boundary(T)``, ``horn(T,e)``, ``ghorn(T,e+f)``, ``core(T)``,
    ``terminal``, ``nerve(P)``, ``union(X;Y)`` and ``intersection(X;Y)``."""
    text = text.strip()
    if text in ("terminal", "empty"):
        return DendroidalSpec(kind=text)
    match = CALL.match(text)
    if not match or match.group(1) not in ALIASES:
        raise InputError(f"Cannot parse dendroidal set expression {text!r}")
    kind = ALIASES[match.group(1)]
    body = match.group(2)
    if kind in ("union", "intersection"):
        return DendroidalSpec(kind=kind, parts=[parse_expression(p) for p in split_args(body, ";")])
    if kind == "nerve":
        return DendroidalSpec(kind=kind, operad_ref=body.strip())
    args = split_args(body, ",")
    if kind == "inner_horn":
        if len(args) != 2:
            raise InputError("horn takes a tree and an inner edge")
        return DendroidalSpec(kind=kind, tree=args[0], edge=args[1])
    if kind == "generalized_horn":
        if len(args) != 2:
            raise InputError("ghorn takes a tree and edges joined by +")
        return DendroidalSpec(kind=kind, tree=args[0], edges=[e for e in args[1].split("+") if e])
    if len(args) != 1:
        raise InputError(f"{match.group(1)} takes one tree")
    return DendroidalSpec(kind=kind, tree=args[0])


def load_dset(ref):
    """A dendroidal set from a JSON spec file or an expression."""
    if os.path.exists(ref):
        return DendroidalSpec.parse_payload(read_json(ref)).build()
    return parse_expression(ref).build()
