"""JSON reports with a versioned schema; identical inputs give byte-identical text."""
import json
from typing import Any, Dict, List

from .config import SCHEMA_VERSION
from .core.classify import ClassificationReport, ComponentClass
from .core.coxeter import CoxeterMatrix, label_text
from .core.representation import Ball, FaithfulnessReport
from .core.scalar import FieldContext, Matrix, Scalar
from .core.search import Hit
from .core.tits_form import KernelBasis, Signature
from .dsl import render
from .utils import render_word


def _dumps(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False)


def scalar_json(a: Scalar) -> Dict[str, Any]:
    """Exact coefficients of 1, gamma, gamma^2, ... as rational strings, plus a decimal approximation."""
    return {"coeffs": [str(c) for c in a.coeffs], "approx": a.approx()}


def matrix_json(a: Matrix) -> List[List[Dict[str, Any]]]:
    return [[scalar_json(entry) for entry in row] for row in a]


def field_json(ctx: FieldContext) -> Dict[str, Any]:
    return {
        "N": ctx.N,
        "gamma": f"2cos(pi/{ctx.N})",
        "minpoly": [int(c) for c in ctx.minpoly.all_coeffs()],
        "degree": ctx.degree,
    }


def signature_json(sig: Signature) -> Dict[str, int]:
    return sig.as_dict()


def _header(command: str, matrix: CoxeterMatrix) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "generators": list(matrix.names),
        "labels": [[label_text(m) for m in row] for row in matrix.labels],
    }


def component_json(part: ComponentClass) -> Dict[str, Any]:
    embedding = part.embedding
    return {
        "vertices": list(part.names),
        "kind": part.kind.value,
        "name": str(part.name),
        "signature": signature_json(part.signature),
        "order": part.order,
        "centre_order": part.centre_order,
        "translation_rank": part.translation_rank,
        "embedding": {"group": embedding.group, "complex_simple": embedding.complex_simple} if embedding else None,
    }


def emit_classification(report: ClassificationReport) -> str:
    result = _header("classify", report.matrix)
    result.update({
        "signature": signature_json(report.signature) if report.signature else None,
        "components": [component_json(part) for part in report.components],
        "amenable_radical_factors": [str(part.name) for part in report.amenable_radical_factors],
        "cstar_simple": report.cstar_simple,
        "unique_trace": report.unique_trace,
        "primitive": {
            "verdict": "yes" if report.primitive.primitive else "no",
            "reason": report.primitive.reason,
        },
    })
    return _dumps(result)


def emit_signature(matrix: CoxeterMatrix, ctx: FieldContext, sig: Signature, kernel: KernelBasis) -> str:
    result = _header("signature", matrix)
    result.update({
        "field": field_json(ctx),
        "signature": signature_json(sig),
        "kernel": {
            "basis": [[scalar_json(entry) for entry in v] for v in kernel.vectors],
            "complement": [matrix.names[i] for i in kernel.complement_index],
        },
    })
    return _dumps(result)


def emit_repr(matrix: CoxeterMatrix, ctx: FieldContext, generators: List[Matrix], ball: Ball, relation_orders: List[Dict[str, Any]]) -> str:
    result = _header("repr", matrix)
    result.update({
        "field": field_json(ctx),
        "matrices": {name: matrix_json(g) for name, g in zip(matrix.names, generators)},
        "relation_orders": relation_orders,
        "ball": {
            "radius": ball.radius,
            "size": len(ball),
            "closed": ball.closed,
            "growth": ball.growth(),
        },
    })
    return _dumps(result)


def emit_faithfulness(matrix: CoxeterMatrix, report: FaithfulnessReport) -> str:
    result = _header("verify-faithful", matrix)
    result.update({
        "radius": report.radius,
        "dimension": report.dimension,
        "checked": report.checked,
        "closed": report.closed,
        "violations": [
            {
                "word": render_word(v.element.word, matrix.names),
                "length": v.element.length,
                "kind": v.kind,
            }
            for v in report.violations
        ],
    })
    return _dumps(result)


def emit_hit(hit: Hit) -> str:
    """One search hit as a single JSON line."""
    matrix = hit.matrix
    result = {
        "schema_version": SCHEMA_VERSION,
        "n": matrix.n,
        "upper": [label_text(m) for m in matrix.upper_triangle()],
        "kind": hit.component.kind.value,
        "name": str(hit.component.name),
        "signature": signature_json(hit.signature),
        "dsl": render(matrix, "matrix").strip().replace("\n", " ; "),
    }
    return json.dumps(result, ensure_ascii=False)

