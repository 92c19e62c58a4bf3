"""Deterministic report assembly and serialization.

Reports are plain nested dicts rendered to JSON by a custom serializer:
insertion-ordered keys, floats printed with 17 significant digits (enough
to round-trip doubles), and complex numbers as ``{"re": ..., "im": ...}``
objects.  Two runs with identical inputs produce byte-identical output;
for that reason wall time is reported on standard error by the CLI and
the report's ``meta.wall_time_s`` field is always null.
"""

from __future__ import annotations

import json
import math

import numpy as np

import jsonschema

from .cdsp import (
    agler_min_eig,
    build_truncation,
    cauchy_dual,
    closed_form_test,
    coupling_determinant,
    hyperexpansivity_max_eig,
    two_isometry_defect,
)
from .debranges import build_identification
from .dirichlet import build_model
from .measure import format_measure

__all__ = [
    "build_report",
    "render_json",
    "render_csv",
    "validate_report",
    "REPORT_SCHEMA",
    "SWEEP_CSV_HEADER",
]

SWEEP_CSV_HEADER = (
    "theta_deg,verdict,s_offdiag_re,s_offdiag_im,rootprod_re,rootprod_im,min_agler_n2"
)

TOLERANCES = {
    "root_residual": 1e-10,
    "boundary_root": 1e-8,
    "factorization_identity_rel": 1e-9,
    "gram_min_eig": 1e-10,
    "interpolation_residual": 1e-8,
    "psd_min_eig_rel": 1e-8,
    "cholesky_reconstruction_rel": 1e-9,
    "verdict_overlap_rel": 1e-8,
    "ray_band": 1e-10,
    "dual_contraction_gate": 1e-6,
}

_COMPLEX_SCHEMA = {
    "type": "object",
    "properties": {"re": {"type": "number"}, "im": {"type": "number"}},
    "required": ["re", "im"],
    "additionalProperties": False,
}

_COMPLEX_OR_NULL = {"oneOf": [{"$ref": "#/definitions/complex"}, {"type": "null"}]}
_NUMBER_OR_NULL = {"type": ["number", "null"]}
_COMPLEX_VECTOR = {"type": "array", "items": {"$ref": "#/definitions/complex"}}
_COMPLEX_MATRIX = {"type": "array", "items": _COMPLEX_VECTOR}
_CURVE = {
    "type": "object",
    "patternProperties": {"^[0-9]+$": {"type": "number"}},
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "definitions": {"complex": _COMPLEX_SCHEMA},
    "required": [
        "schema_version",
        "measure",
        "factorization",
        "dirichlet_model",
        "identification",
        "cdsp",
        "oracle",
        "meta",
    ],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": "1"},
        "measure": {
            "type": "object",
            "required": ["text", "atoms"],
            "additionalProperties": False,
            "properties": {
                "text": {"type": "string"},
                "atoms": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["point", "weight"],
                        "additionalProperties": False,
                        "properties": {
                            "point": {"$ref": "#/definitions/complex"},
                            "weight": {"type": "number"},
                        },
                    },
                },
            },
        },
        "factorization": {
            "type": "object",
            "required": ["outer_roots", "inner_roots", "q", "a", "b", "c", "d"],
            "additionalProperties": False,
            "properties": {
                "outer_roots": _COMPLEX_VECTOR,
                "inner_roots": _COMPLEX_VECTOR,
                "q": _COMPLEX_VECTOR,
                "a": _NUMBER_OR_NULL,
                "b": _NUMBER_OR_NULL,
                "c": _NUMBER_OR_NULL,
                "d": {"type": "number"},
            },
        },
        "dirichlet_model": {
            "type": "object",
            "required": ["o_prime", "gram_f", "b_inv", "s", "m"],
            "additionalProperties": False,
            "properties": {
                "o_prime": _COMPLEX_VECTOR,
                "gram_f": _COMPLEX_MATRIX,
                "b_inv": _COMPLEX_MATRIX,
                "s": _COMPLEX_OR_NULL,
                "m": _NUMBER_OR_NULL,
            },
        },
        "identification": {
            "type": "object",
            "required": ["A", "P", "p_polys"],
            "additionalProperties": False,
            "properties": {
                "A": _COMPLEX_MATRIX,
                "P": _COMPLEX_MATRIX,
                "p_polys": _COMPLEX_MATRIX,
            },
        },
        "cdsp": {
            "type": "object",
            "required": [
                "verdict",
                "s_offdiag",
                "root_products",
                "coupling_det",
                "citations",
            ],
            "additionalProperties": False,
            "properties": {
                "verdict": {
                    "enum": ["NotSubnormal", "KnownSubnormal", "Inconclusive"]
                },
                "s_offdiag": _COMPLEX_OR_NULL,
                "root_products": _COMPLEX_VECTOR,
                "coupling_det": _COMPLEX_OR_NULL,
                "citations": {"type": "array", "items": {"type": "string"}},
            },
        },
        "oracle": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["runs"],
                    "additionalProperties": False,
                    "properties": {
                        "runs": {
                            "type": "array",
                            "items": {
                                "type": "object",
                                "required": [
                                    "N",
                                    "shift_norm",
                                    "two_isometry_defect",
                                    "cauchy_dual_interior_norm",
                                    "agler_min_eig",
                                    "hyperexpansivity_max_eig",
                                ],
                                "additionalProperties": False,
                                "properties": {
                                    "N": {"type": "integer"},
                                    "shift_norm": {"type": "number"},
                                    "two_isometry_defect": {"type": "number"},
                                    "cauchy_dual_interior_norm": {"type": "number"},
                                    "agler_min_eig": _CURVE,
                                    "hyperexpansivity_max_eig": _CURVE,
                                },
                            },
                        }
                    },
                },
            ]
        },
        "meta": {
            "type": "object",
            "required": ["tolerances", "wall_time_s", "seed"],
            "additionalProperties": False,
            "properties": {
                "tolerances": {"type": "object"},
                "wall_time_s": {"type": "null"},
                "seed": {"type": "integer"},
            },
        },
    },
}


def _cpx(value):
    value = complex(value)
    return {"re": float(value.real), "im": float(value.imag)}


def _cvec(values):
    return [_cpx(v) for v in np.asarray(values, dtype=complex).ravel()]


def _cmat(matrix):
    matrix = np.asarray(matrix, dtype=complex)
    return [[_cpx(v) for v in row] for row in matrix]


def _canonical_form_constants(model):
    """Fit of q to the right-angle canonical form z^2 - a(1+i)z + b*i.

    Returns (a, b, c) or (None, None, None) when the form does not fit.
    The companion identities are b = 1/d and c = a*d.
    """
    q = model.fact.q
    d = model.fact.d
    if q.size != 3:
        return None, None, None
    a_cand = -q[1] / (1.0 + 1j)
    b = 1.0 / d
    if abs(a_cand.imag) > 1e-9 * (1.0 + abs(a_cand)):
        return None, None, None
    if abs(q[0] - 1j * b) > 1e-9 * max(1.0, abs(q[0])):
        return None, None, None
    a = float(a_cand.real)
    return a, float(b), float(a * d)


def build_report(mu, trunc=64, nmax=6, skip_oracle=False):
    """Assemble the full analysis report for a measure.

    Parameters
    ----------
    mu : MeasureSpec
    trunc : int, optional
        Extra truncation size to include in the oracle runs (the sizes
        48, 64, 96 always run so cross-size stability is visible).
    nmax : int, optional
        Largest defect order for the Agler curves.
    skip_oracle : bool, optional
        Skip the truncated-operator section entirely.

    Returns
    -------
    dict
        JSON-ready nested structure (validate with
        :func:`validate_report`).
    """
    model = build_model(mu)
    ident = build_identification(model)
    verdict = closed_form_test(mu)
    coupling = coupling_determinant(mu) if mu.k == 2 else None
    a, b, c = _canonical_form_constants(model)

    doc = {
        "schema_version": "1",
        "measure": {
            "text": format_measure(mu),
            "atoms": [
                {"point": _cpx(p), "weight": float(w)} for p, w in mu.atoms
            ],
        },
        "factorization": {
            "outer_roots": _cvec(model.fact.outer_roots),
            "inner_roots": _cvec(model.fact.inner_roots),
            "q": _cvec(model.fact.q),
            "a": a,
            "b": b,
            "c": c,
            "d": float(model.fact.d),
        },
        "dirichlet_model": {
            "o_prime": _cvec(model.o_prime),
            "gram_f": _cmat(model.gram_f),
            "b_inv": _cmat(model.b_inv),
            "s": _cpx(model.b_inv[0, 1]) if mu.k >= 2 else None,
            "m": float(model.gram_f[0, 0].real),
        },
        "identification": {
            "A": _cmat(ident.A),
            "P": _cmat(ident.P),
            "p_polys": [_cvec(pj) for pj in ident.p_polys],
        },
        "cdsp": {
            "verdict": verdict.verdict,
            "s_offdiag": _cpx(verdict.s_offdiag)
            if verdict.s_offdiag is not None
            else None,
            "root_products": _cvec(verdict.root_products),
            "coupling_det": _cpx(coupling) if coupling is not None else None,
            "citations": list(verdict.citations),
        },
        "oracle": None,
        "meta": {
            "tolerances": dict(TOLERANCES),
            "wall_time_s": None,
            "seed": 0,
        },
    }

    if not skip_oracle:
        runs = []
        for size in sorted({48, 64, 96, int(trunc)}):
            w = build_truncation(mu, size)
            dual = cauchy_dual(w)
            keep = w.N - w.margin
            runs.append(
                {
                    "N": size,
                    "shift_norm": w.norm_T,
                    "two_isometry_defect": two_isometry_defect(w),
                    "cauchy_dual_interior_norm": float(
                        np.linalg.norm(dual[:keep, :keep], 2)
                    ),
                    "agler_min_eig": {
                        str(n): agler_min_eig(dual, n, w.margin)
                        for n in range(1, int(nmax) + 1)
                    },
                    "hyperexpansivity_max_eig": {
                        str(n): hyperexpansivity_max_eig(w, n) for n in (2, 3, 4)
                    },
                }
            )
        doc["oracle"] = {"runs": runs}
    return doc


def _fmt_float(x):
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        raise ValueError("non-finite float in report")
    return format(x, ".17g")


def _render(value, level):
    pad = "  " * level
    inner = "  " * (level + 1)
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _fmt_float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return _render({"re": float(value.real), "im": float(value.imag)}, level)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        if set(value.keys()) == {"re", "im"}:
            return (
                "{"
                + f'"re": {_fmt_float(value["re"])}, "im": {_fmt_float(value["im"])}'
                + "}"
            )
        items = [
            f"{inner}{json.dumps(str(k))}: {_render(v, level + 1)}"
            for k, v in value.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple, np.ndarray)):
        seq = list(value)
        if not seq:
            return "[]"
        items = [f"{inner}{_render(v, level + 1)}" for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(value)!r}")


def render_json(doc):
    """Serialize a report to deterministic JSON text.

    Keys keep insertion order; floats use 17 significant digits; complex
    values become ``{"re": ..., "im": ...}``.  The result ends with a
    newline.

    Parameters
    ----------
    doc : dict

    Returns
    -------
    str
    """
    return _render(doc, 0) + "\n"


def validate_report(doc):
    """Validate a report dict against the embedded JSON schema.

    Runs on the parsed form of the rendered text so the check covers the
    serializer as well.

    Parameters
    ----------
    doc : dict

    Raises
    ------
    jsonschema.ValidationError
        If the document does not conform.
    """
    jsonschema.validate(json.loads(render_json(doc)), REPORT_SCHEMA)


def _csv_cell(value):
    if value is None:
        return ""
    return _fmt_float(value)


def render_csv(rows):
    """Serialize sweep rows to CSV text with the stable header.

    Error rows carry ``ERROR:<code>`` in the verdict column and empty
    numeric cells.

    Parameters
    ----------
    rows : list of SweepRow

    Returns
    -------
    str
    """
    lines = [SWEEP_CSV_HEADER]
    for row in rows:
        theta = _fmt_float(row.theta_deg)
        if row.error is not None:
            lines.append(f"{theta},ERROR:{row.error},,,,,")
            continue
        verdict = row.verdict
        if verdict.s_offdiag is not None:
            s_re = _fmt_float(verdict.s_offdiag.real)
            s_im = _fmt_float(verdict.s_offdiag.imag)
        else:
            s_re = s_im = ""
        if verdict.root_products:
            rp = verdict.root_products[0]
            rp_re, rp_im = _fmt_float(rp.real), _fmt_float(rp.imag)
        else:
            rp_re = rp_im = ""
        lines.append(
            f"{theta},{verdict.verdict},{s_re},{s_im},{rp_re},{rp_im},"
            f"{_csv_cell(row.min_agler_n2)}"
        )
    return "\n".join(lines) + "\n"
