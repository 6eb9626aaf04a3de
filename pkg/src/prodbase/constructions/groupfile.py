"""JSON generator files: {"name"?, "degree", "generators": [[images]...]}."""
from __future__ import annotations

import json
from pathlib import Path

from ..errors import DegreeMismatch, MalformedGenerator
from ..perm import Permutation, PermutationGroup


def group_from_document(doc: dict) -> PermutationGroup:
    if not isinstance(doc, dict) or "degree" not in doc or "generators" not in doc:
        raise MalformedGenerator("generator file needs 'degree' and 'generators'")
    n = doc["degree"]
    if not isinstance(n, int) or n < 1:
        raise MalformedGenerator("degree must be a positive integer")
    gens = []
    for g in doc["generators"]:
        if not isinstance(g, list) or not all(isinstance(x, int) for x in g):
            raise MalformedGenerator("each generator must be a list of integers")
        if len(g) != n:
            raise DegreeMismatch(f"generator of length {len(g)} in a degree-{n} file")
        gens.append(Permutation(g, n))
    return PermutationGroup(gens, degree=n, name=doc.get("name"))


def canonical_document(G: PermutationGroup) -> dict:
    doc = {}
    if G.name:
        doc["name"] = G.name
    doc["degree"] = G.degree
    doc["generators"] = sorted(list(g.images) for g in G.generators)
    return doc


def dumps(G: PermutationGroup) -> str:
    return json.dumps(canonical_document(G), separators=(",", ":")) + "\n"


def load_group_file(path) -> PermutationGroup:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MalformedGenerator(f"invalid JSON: {exc}") from exc
    return group_from_document(doc)


def save_group_file(G: PermutationGroup, path) -> None:
    Path(path).write_text(dumps(G))
