from typing import List, Optional

from pydantic import BaseModel, ValidationError

from ..errors import InputError
from .tree import Tree, Vertex


class VertexModel(BaseModel):
    inputs: List[str]
    output: str


class TreeModel(BaseModel):
    edges: Optional[List[str]] = None
    vertices: List[VertexModel] = []
    root: str

    @classmethod
    def parse_payload(cls, payload):
        try:
            return cls.model_validate(payload)
        except ValidationError as e:
            raise InputError(f"Malformed tree JSON: {e}") from e

    @classmethod
    def from_tree(cls, tree):
        return cls(
            edges=sorted(tree.edges),
            vertices=[VertexModel(inputs=list(v.inputs), output=v.output) for v in tree.vertices],
            root=tree.root,
        )

    def to_tree(self):
        return Tree([Vertex(v.inputs, v.output) for v in self.vertices], self.root, self.edges)


class SubtreeModel(BaseModel):
    root: str
    vertices: List[str]
    leaves: List[str]

    @classmethod
    def from_subtree(cls, subtree):
        return cls(root=subtree.root, vertices=sorted(subtree.vertices), leaves=list(subtree.leaves))


class MorphismModel(BaseModel):
    source: TreeModel
    target: TreeModel
    edge_map: dict
    vertex_map: dict

    @classmethod
    def from_morphism(cls, phi):
        payload = phi.to_json()
        return cls(
            source=TreeModel.from_tree(phi.source),
            target=TreeModel.from_tree(phi.target),
            edge_map=payload["edge_map"],
            vertex_map=payload["vertex_map"],
        )
