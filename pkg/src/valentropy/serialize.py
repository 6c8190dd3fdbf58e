"""JSON wire formats: elements, matrices, lattices, module descriptors, reports.

All numbers travel as exact rational strings ("p/q" or "p") or "inf"; field
elements travel in the element grammar.  Matrices are arrays of arrays of
element strings (row-major); lattices are {"ambient_dim": n, "generators":
[[...], ...]} with column vectors.
"""

from __future__ import annotations

import hashlib
import json

from .errors import SchemaError
from .field import FieldElement, format_element, parse_element
from .linalg import Lattice, MatrixQ, PolynomialQ
from .modules import (
    BernoulliModule,
    DirectSumModule,
    FreeCyclicModule,
    TorsionModule,
    VectorSpaceModule,
)
from .rationals import ExtRational, format_ext, parse_ext


def matrix_to_json(a: MatrixQ) -> list:
    return [[format_element(x) for x in row] for row in a.entries]


def matrix_from_json(data) -> MatrixQ:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise SchemaError("matrix must be an array of arrays of element strings")
    try:
        return MatrixQ([[parse_element(x) for x in row] for row in data])
    except Exception as exc:
        raise SchemaError(f"bad matrix entry: {exc}") from exc


def lattice_to_json(lat: Lattice) -> dict:
    return {
        "ambient_dim": lat.ambient_dim,
        "generators": [[format_element(x) for x in col] for col in lat.columns],
    }


def lattice_from_json(data) -> Lattice:
    if not isinstance(data, dict) or "ambient_dim" not in data or "generators" not in data:
        raise SchemaError('lattice must be {"ambient_dim": n, "generators": [[...], ...]}')
    try:
        cols = [[parse_element(x) for x in col] for col in data["generators"]]
        return Lattice.from_columns(int(data["ambient_dim"]), cols)
    except SchemaError:
        raise
    except Exception as exc:
        raise SchemaError(f"bad lattice: {exc}") from exc


def poly_to_json(p: PolynomialQ) -> list:
    return [format_element(c) for c in p.coeffs]


def module_to_descriptor(m) -> dict:
    if isinstance(m, VectorSpaceModule):
        out = {"kind": "vector_space", "dim": m.dim, "matrix": matrix_to_json(m.matrix)}
        if m.lattice is not None:
            out["lattice"] = lattice_to_json(m.lattice)
        return out
    if isinstance(m, TorsionModule):
        return {
            "kind": "torsion",
            "annihilators": [format_element(a) for a in m.annihilators],
            "matrix": matrix_to_json(m.matrix),
        }
    if isinstance(m, BernoulliModule):
        return {
            "kind": "bernoulli",
            "cell_annihilators": [format_element(a) for a in m.cell_annihilators],
        }
    if isinstance(m, DirectSumModule):
        return {
            "kind": "direct_sum",
            "summands": [module_to_descriptor(s) for s in m.summands],
        }
    if isinstance(m, FreeCyclicModule):
        return {"kind": "free_cyclic"}
    raise TypeError(f"no descriptor for {type(m).__name__}")


def module_from_descriptor(data):
    if not isinstance(data, dict) or "kind" not in data:
        raise SchemaError('module descriptor must be an object with a "kind"')
    kind = data["kind"]
    try:
        if kind == "vector_space":
            matrix = matrix_from_json(data["matrix"])
            dim = int(data.get("dim", matrix.rows))
            lattice = lattice_from_json(data["lattice"]) if "lattice" in data else None
            return VectorSpaceModule(dim, matrix, lattice)
        if kind == "torsion":
            anns = tuple(parse_element(a) for a in data["annihilators"])
            return TorsionModule(anns, matrix_from_json(data["matrix"]))
        if kind == "bernoulli":
            anns = tuple(parse_element(a) for a in data["cell_annihilators"])
            return BernoulliModule(anns)
        if kind == "direct_sum":
            return DirectSumModule(
                tuple(module_from_descriptor(s) for s in data["summands"])
            )
        if kind == "free_cyclic":
            return FreeCyclicModule()
    except SchemaError:
        raise
    except KeyError as exc:
        raise SchemaError(f"module descriptor missing field {exc}") from exc
    except Exception as exc:
        raise SchemaError(f"bad module descriptor: {exc}") from exc
    raise SchemaError(f"unknown module kind {kind!r}")


def report_to_json(report) -> dict:
    return {
        "value": format_ext(report.value),
        "method": report.method,
        "certificate": {
            "growth": [format_ext(d) for d in report.growth],
            "stabilized_at": report.stabilized_at,
            "horizon": report.horizon,
            "rank": report.rank,
        },
    }


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def descriptor_hash(descriptor: dict) -> str:
    return hashlib.sha256(canonical_dumps(descriptor).encode("utf-8")).hexdigest()
