import json
from typing import Any, List, Optional

from pydantic import BaseModel, ValidationError

from ..errors import InputError
from .sset import build_sset


class SimplicialSetSpec(BaseModel):
    """JSON description of a finite simplicial set, e.g. ``{"kind": "horn", "n": 2, "k": 1}``."""

    kind: str
    n: Optional[int] = None
    k: Optional[int] = None
    m: Optional[int] = None
    elements: Optional[List[Any]] = None
    relations: Optional[List[List[Any]]] = None
    factors: Optional[List["SimplicialSetSpec"]] = None

    @classmethod
    def parse_payload(cls, payload):
        try:
            return cls.model_validate(payload)
        except ValidationError as e:
            raise InputError(f"Malformed simplicial set JSON: {e}") from e

    @classmethod
    def parse_text(cls, text):
        """Accepts JSON or the short forms ``delta:2``, ``horn:2:1``, ``cube:3``."""
        text = text.strip()
        if text.startswith("{"):
            try:
                return cls.parse_payload(json.loads(text))
            except json.JSONDecodeError as e:
                raise InputError(f"Malformed simplicial set JSON: {e}") from e
        kind, *args = text.split(":")
        try:
            numbers = [int(a) for a in args]
        except ValueError as e:
            raise InputError(f"Malformed simplicial set {text!r}") from e
        if kind in ("cube", "cube_boundary"):
            return cls(kind=kind, m=numbers[0] if numbers else None)
        return cls(kind=kind, n=numbers[0] if numbers else None, k=numbers[1] if len(numbers) > 1 else None)

    def build(self):
        factors = [f.build() for f in self.factors] if self.factors else None
        if self.kind in ("delta", "boundary", "horn") and self.n is None:
            raise InputError(f"{self.kind} needs n")
        if self.kind == "horn" and self.k is None:
            raise InputError("horn needs k")
        if self.kind in ("cube", "cube_boundary") and self.m is None:
            raise InputError(f"{self.kind} needs m")
        elements = [tuple(e) if isinstance(e, list) else e for e in (self.elements or [])]
        relations = [(tuple(a) if isinstance(a, list) else a, tuple(b) if isinstance(b, list) else b)
                     for a, b in (self.relations or [])]
        return build_sset(self.kind, n=self.n, k=self.k, m=self.m, elements=elements, relations=relations,
                          factors=factors)


SimplicialSetSpec.model_rebuild()
