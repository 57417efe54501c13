import os
import re
from typing import Optional

from pydantic import BaseModel, ValidationError

from ..bv.w_construction import w_operad
from ..dendroidal.schemas import load_dset, split_args
from ..errors import InputError
from ..operads.schemas import operad_from_ref, read_json
from ..operads.simplicial_operad import corolla_operad, discrete
from ..simplicial.schemas import SimplicialSetSpec
from ..trees.catalog import load_tree
from .preoperad import Constant, GammaShriek, OmegaKT, Product, SimplicialNerve, sc_kt

CALL = re.compile(r"^\s*(\w+)\s*\((.*)\)\s*$", re.S)

KINDS = ("omega", "core", "nerve", "corolla", "wtree", "product", "constant", "gamma")


class PreoperadSpec(BaseModel):
    """Construction record of a preoperad: ``{"kind": "omega", "tree": "T2", "space": "delta:1"}``."""

    kind: str
    tree: Optional[str] = None
    space: Optional[str] = None
    operad_ref: Optional[str] = None
    arity: Optional[int] = None
    dset: Optional[str] = None
    base: Optional["PreoperadSpec"] = None
    level_bound: int = 1

    @classmethod
    def parse_payload(cls, payload):
        try:
            return cls.model_validate(payload)
        except ValidationError as e:
            raise InputError(f"Malformed preoperad JSON: {e}") from e

    def _space(self):
        if self.space is None:
            raise InputError(f"A {self.kind} preoperad needs a simplicial set")
        return SimplicialSetSpec.parse_text(self.space).build()

    def _tree(self):
        if self.tree is None:
            raise InputError(f"A {self.kind} preoperad needs a tree")
        return load_tree(self.tree)

    def build(self):
        if self.kind == "omega":
            return OmegaKT(self._space(), self._tree())
        if self.kind == "core":
            return sc_kt(self._space(), self._tree())
        if self.kind == "nerve":
            if self.operad_ref is None:
                raise InputError("A nerve needs an operad")
            return SimplicialNerve(discrete(operad_from_ref(self.operad_ref), self.level_bound))
        if self.kind == "corolla":
            if self.arity is None:
                raise InputError("corolla needs an arity")
            return SimplicialNerve(corolla_operad(self.arity, self._space()))
        if self.kind == "wtree":
            return SimplicialNerve(w_operad(self._tree()))
        if self.kind == "product":
            if self.dset is None:
                raise InputError("product needs a dendroidal set")
            return Product(self._space(), load_dset(self.dset))
        if self.kind == "constant":
            if self.dset is None:
                raise InputError("constant needs a dendroidal set")
            return Constant(load_dset(self.dset), self.level_bound)
        if self.kind == "gamma":
            if self.base is None:
                raise InputError("gamma needs a base")
            return GammaShriek(self.base.build())
        raise InputError(f"Unknown preoperad kind {self.kind!r}; expected one of {', '.join(KINDS)}")


PreoperadSpec.model_rebuild()


def parse_preoperad(text):
    """``omega(T;K)``, ``core(T;K)``, ``nerve(P)``, ``corolla(n;K)``, ``wtree(T)``,
    ``product(K;X)``, ``constant(X)`` and ``gamma(...)``; K is a short simplicial
    set such as ``delta:1`` and X a dendroidal set expression."""
    match = CALL.match(text.strip())
    if not match or match.group(1) not in KINDS:
        raise InputError(f"Cannot parse preoperad expression {text!r}")
    kind, args = match.group(1), split_args(match.group(2), ";")
    if kind in ("omega", "core"):
        if len(args) != 2:
            raise InputError(f"{kind} takes a tree and a simplicial set")
        return PreoperadSpec(kind=kind, tree=args[0], space=args[1])
    if kind == "nerve":
        return PreoperadSpec(kind=kind, operad_ref=args[0])
    if kind == "corolla":
        if len(args) != 2:
            raise InputError("corolla takes an arity and a simplicial set")
        try:
            arity = int(args[0])
        except ValueError as e:
            raise InputError(f"Bad arity {args[0]!r}") from e
        return PreoperadSpec(kind=kind, arity=arity, space=args[1])
    if kind == "wtree":
        return PreoperadSpec(kind=kind, tree=args[0])
    if kind == "product":
        if len(args) != 2:
            raise InputError("product takes a simplicial set and a dendroidal set")
        return PreoperadSpec(kind=kind, space=args[0], dset=args[1])
    if kind == "constant":
        return PreoperadSpec(kind=kind, dset=args[0])
    return PreoperadSpec(kind=kind, base=parse_preoperad(match.group(2)))


def load_preoperad(ref):
    """A preoperad from a JSON spec file or an expression."""
    if os.path.exists(ref):
        return PreoperadSpec.parse_payload(read_json(ref)).build()
    return parse_preoperad(ref).build()
