#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
JSON documents: problem instances in, results out
"""

import json
from numbers import Real
from typing import Any, Optional, Union

import numpy as np
from loguru import logger
from smart_open import smart_open

from cftw.core import DimensionError, ProblemInstance, Vector, as_vector
from cftw.sets import AutoConstraintSet, ConstraintTypes
from cftw.utils import compute_hexdigest, format_float

INSTANCE_FIELDS = ("dim", "anchors", "weights", "constraint", "tolerances")

TOLERANCE_FIELDS = ("epsilon", "eta_anchor", "max_iter", "delta_escape", "snap_radius")


class InstanceSchemaError(ValueError):
    """Malformed instance document"""

    def __init__(self, path: str, reason: str):
        self.path = path
        super().__init__(f"`{path}`: {reason}")


def _is_number(value: Any) -> bool:
    return isinstance(value, Real) and not isinstance(value, bool)


def _check_number(value: Any, path: str, positive: bool = False) -> float:
    if not _is_number(value) or not np.isfinite(value):
        raise InstanceSchemaError(path, f"expected a finite number, got {value!r}")

    if positive and not value > 0:
        raise InstanceSchemaError(path, f"must be positive, got {value!r}")

    return float(value)


def _check_list(value: Any, path: str, size: Optional[int] = None) -> list:
    if not isinstance(value, list):
        raise InstanceSchemaError(path, f"expected a list, got {type(value).__name__}")

    if size is not None and len(value) != size:
        raise InstanceSchemaError(path, f"expected {size} entries, got {len(value)}")

    return value


def _parse_constraint(spec: Any, dim: int):
    if not isinstance(spec, dict):
        raise InstanceSchemaError("constraint", "expected an object")

    if "type" not in spec:
        raise InstanceSchemaError("constraint.type", "missing")

    if spec["type"] not in ConstraintTypes:
        raise InstanceSchemaError(
            "constraint.type",
            f"unknown constraint {spec['type']!r}, choose one from {[str(t) for t in ConstraintTypes]}",
        )

    try:
        return AutoConstraintSet.from_dict(spec, dim=dim)
    except KeyError as error:
        raise InstanceSchemaError(f"constraint.{error.args[0]}", "missing") from error
    except (ValueError, TypeError, AssertionError) as error:
        raise InstanceSchemaError("constraint", str(error)) from error


def parse_tolerances(document: dict) -> dict:
    """
    Optional `tolerances` block as keyword overrides for `Tolerances`
    """

    block = document.get("tolerances")

    if block is None:
        return {}

    if not isinstance(block, dict):
        raise InstanceSchemaError("tolerances", "expected an object")

    overrides = {}
    for key, value in block.items():
        if key not in TOLERANCE_FIELDS:
            raise InstanceSchemaError(f"tolerances.{key}", f"unknown tolerance, choose one from {TOLERANCE_FIELDS}")
        if key == "max_iter":
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise InstanceSchemaError("tolerances.max_iter", f"expected a positive integer, got {value!r}")
            overrides[key] = value
        else:
            overrides[key] = _check_number(value, f"tolerances.{key}", positive=True)

    return overrides


def parse_document(document: Any) -> ProblemInstance:
    """
    Validate an instance document and build the problem (coincident anchors are
    merged)
    """

    if not isinstance(document, dict):
        raise InstanceSchemaError("$", "instance document must be a JSON object")

    for key in document:
        if key not in INSTANCE_FIELDS:
            raise InstanceSchemaError(key, f"unknown field, choose one from {INSTANCE_FIELDS}")

    for key in ("dim", "anchors", "weights", "constraint"):
        if key not in document:
            raise InstanceSchemaError(key, "missing")

    dim = document["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InstanceSchemaError("dim", f"expected a positive integer, got {dim!r}")

    anchors = _check_list(document["anchors"], "anchors")
    if len(anchors) < 2:
        raise InstanceSchemaError("anchors", f"need at least two anchors, got {len(anchors)}")

    for i, anchor in enumerate(anchors):
        for c, coordinate in enumerate(_check_list(anchor, f"anchors[{i}]", size=dim)):
            _check_number(coordinate, f"anchors[{i}][{c}]")

    weights = _check_list(document["weights"], "weights", size=len(anchors))
    for i, weight in enumerate(weights):
        _check_number(weight, f"weights[{i}]", positive=True)

    constraint = _parse_constraint(document["constraint"], dim=dim)

    parse_tolerances(document)

    try:
        instance = ProblemInstance.create(anchors, weights, constraint)
    except (ValueError, DimensionError) as error:
        raise InstanceSchemaError("$", str(error)) from error

    if instance.m < len(anchors):
        logger.info("Merged coincident anchors: {} -> {}", len(anchors), instance.m)

    return instance


def parse_instance(text: Union[bytes, str]) -> ProblemInstance:
    """
    Parse a UTF-8 JSON instance document
    """

    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as error:
            raise InstanceSchemaError("$", f"invalid UTF-8 ({error})") from error

    try:
        document = json.loads(text)
    except json.JSONDecodeError as error:
        raise InstanceSchemaError("$", f"invalid JSON ({error})") from error

    return parse_document(document)


def load_document(path: str) -> dict:
    """
    Read a (possibly compressed) JSON document
    """

    with smart_open(path, "r", encoding="utf-8") as infile:
        try:
            return json.load(infile)
        except json.JSONDecodeError as error:
            raise InstanceSchemaError("$", f"invalid JSON in {path} ({error})") from error
        except UnicodeDecodeError as error:
            raise InstanceSchemaError("$", f"invalid UTF-8 in {path} ({error})") from error


def save_document(path: str, document: dict):
    """
    Write a JSON document (UTF-8)
    """

    with smart_open(path, "w", encoding="utf-8") as outfile:
        outfile.write(dump_document(document))


def dump_document(document: dict) -> str:
    """
    Deterministic JSON text
    """
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def instance_to_document(instance: ProblemInstance) -> dict:
    """
    Inverse of `parse_document`
    """

    return {
        "dim": instance.dim,
        "anchors": instance.anchors.tolist(),
        "weights": instance.weights.tolist(),
        "constraint": instance.constraint.to_dict(),
    }


def serialize_instance(instance: ProblemInstance) -> str:
    """
    Canonical JSON text of an instance
    """
    return json.dumps(instance_to_document(instance), sort_keys=True, separators=(",", ":"))


def instance_digest(instance: ProblemInstance) -> str:
    """
    Fingerprint of the canonical instance document
    """
    return compute_hexdigest(serialize_instance(instance))


def parse_vector(text: str, dim: Optional[int] = None, name: str = "point") -> Vector:
    """
    Parse comma-separated decimals, e.g. `0.5,0.25`
    """

    try:
        values = [float(v) for v in text.split(",")]
    except ValueError as error:
        raise ValueError(f"`{name}` must be comma-separated numbers, got {text!r}") from error

    return as_vector(values, dim=dim, name=name)


def result_document(
    instance: ProblemInstance, result, certificate=None, membership_tol: Optional[float] = None
) -> dict:
    """
    Result of a solve with its certificate
    """

    kwargs = {} if membership_tol is None else {"tol": membership_tol}

    document = {
        "x": [format_float(v) for v in result.x_final],
        "f": format_float(result.objective),
        "status": str(result.status),
        "anchor_index": result.anchor_index,
        "iterations": int(result.iterations),
        "feasible": instance.constraint.contains(result.x_final, **kwargs),
        "certificate": None,
        "instance_digest": instance_digest(instance),
    }

    if certificate is not None:
        document["certificate"] = {
            k: format_float(v) if isinstance(v, float) else v for k, v in certificate.to_dict().items()
        }

    return document
