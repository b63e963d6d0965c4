"""JSON wire formats for spaces, subsets, relations, families, and reports.

Spaces:   {"kind": "matrix", "n": N, "d": [[...], ...]}
          {"kind": "points2d", "pts": [[x, y], ...], "labels": [...]?}
Subsets:  sorted index arrays.
Relation: {"pairs": [[i, j], ...]}.
Family:   {"label": "red", "members": [[i, ...], ...]}.
Cover:    {"kind": "cover", "space": ..., "families": [...], "r": ...,
           "strict": ..., "c": ...?, "target": ...?}

Floats pass through json untouched, so distances print in Python's
shortest round-trip form (e.g. 0.7071067811865476) and reload bit-exactly.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .correspondence import Correspondence, GhResult, Relation
from .covers import BoundResult, CoverCertificate, ModelSpaceDescriptor, SubsetFamily
from .metric import (
    EuclideanPointSet,
    FiniteMetricSpace,
    MetricLike,
    SubsetRef,
    as_subset,
    build_space,
)


def space_to_json(space: MetricLike) -> dict[str, Any]:
    if isinstance(space, EuclideanPointSet):
        obj: dict[str, Any] = {"kind": "points2d", "pts": space.points.tolist()}
        if space.labels is not None:
            obj["labels"] = list(space.labels)
        return obj
    return {"kind": "matrix", "n": space.n, "d": space.matrix.tolist()}


def space_from_json(obj: dict[str, Any]) -> MetricLike:
    kind = obj.get("kind")
    if kind == "points2d":
        labels = tuple(obj["labels"]) if obj.get("labels") is not None else None
        return EuclideanPointSet(np.asarray(obj["pts"], dtype=np.float64), labels)
    if kind == "matrix":
        return build_space(np.asarray(obj["d"], dtype=np.float64))
    raise ValueError(f"unknown space kind {kind!r}")


def subset_to_json(s: SubsetRef) -> list[int]:
    return list(s.indices)


def subset_from_json(obj: Sequence[int], n: int | None = None) -> SubsetRef:
    return as_subset(int(i) for i in obj) if n is None else as_subset((int(i) for i in obj), n)


def relation_to_json(rel: Relation | Correspondence) -> dict[str, Any]:
    return {"pairs": [[i, j] for i, j in rel.pairs]}


def relation_from_json(obj: dict[str, Any]) -> Relation:
    return Relation.of(obj["pairs"])


def family_to_json(fam: SubsetFamily) -> dict[str, Any]:
    return {"label": fam.label, "members": [subset_to_json(m) for m in fam.members]}


def family_from_json(obj: dict[str, Any], n: int | None = None) -> SubsetFamily:
    return SubsetFamily(str(obj["label"]),
                        tuple(subset_from_json(m, n) for m in obj["members"]))


def cover_to_json(space: MetricLike, families: Sequence[SubsetFamily], r: float,
                  strict: bool = False, c: float | None = None,
                  target: SubsetRef | None = None) -> dict[str, Any]:
    obj: dict[str, Any] = {
        "kind": "cover",
        "space": space_to_json(space),
        "families": [family_to_json(f) for f in families],
        "r": r,
        "strict": strict,
    }
    if c is not None:
        obj["c"] = c
    if target is not None:
        obj["target"] = subset_to_json(target)
    return obj


def cover_from_json(obj: dict[str, Any]) -> tuple[MetricLike, tuple[SubsetFamily, ...],
                                                  float, bool, SubsetRef | None]:
    if obj.get("kind") != "cover":
        raise ValueError(f"expected a cover file, got kind {obj.get('kind')!r}")
    space = space_from_json(obj["space"])
    families = tuple(family_from_json(f, space.n) for f in obj["families"])
    target = subset_from_json(obj["target"], space.n) if obj.get("target") is not None else None
    return space, families, float(obj["r"]), bool(obj.get("strict", False)), target


def gh_result_to_json(res: GhResult) -> dict[str, Any]:
    return {
        "dgh": res.value,
        "dis": res.dis,
        "optimal_pairs": [[i, j] for i, j in res.correspondence.pairs],
        "nodes": res.nodes,
        "optimal": res.optimal,
    }


def certificate_report_json(cert: CoverCertificate, model: ModelSpaceDescriptor | None = None,
                            bound: BoundResult | None = None) -> dict[str, Any]:
    obj: dict[str, Any] = {
        "k": cert.k,
        "r": cert.r,
        "C": cert.c,
        "strictness": "strict" if cert.strict else "non-strict",
        "min_gap": None if cert.min_gap == float("inf") else cert.min_gap,
        "families": [{"label": f.label, "members": len(f.members)} for f in cert.families],
        "target_size": len(cert.target),
    }
    if model is not None:
        obj["model"] = model.name
    if bound is not None:
        obj["bound"] = bound.bound
        obj["trace"] = list(bound.trace)
    return obj


def model_from_json(obj: dict[str, Any]) -> ModelSpaceDescriptor:
    return ModelSpaceDescriptor(
        name=str(obj["name"]),
        asdim_lower=int(obj["asdim_lower"]),
        stabilizer_nontrivial=bool(obj["stabilizer_nontrivial"]),
        provenance=str(obj.get("provenance", "user supplied")),
    )


def load_json(path: str | Path) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def dump_json(obj: Any, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")
