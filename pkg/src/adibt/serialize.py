"""Stable JSON file formats.

One convention everywhere: complex scalars are two-element arrays
[re, im], real scalars may be plain numbers, matrices are row-major
nested arrays.  Floats round-trip bit-exactly (Python's shortest
repr, at most 17 significant digits).  Writers are atomic
(write-then-rename), so an interrupted or failed run never leaves a
partial file behind.
"""

import json
import os
import tempfile

import numpy as np

from .exceptions import ParseError
from .loewner import InterimROM
from .model import DescriptorSystem
from .sampling import SampleDataset, SamplePoint


def _encode_scalar(z):
    z = complex(z)
    if z.imag == 0.0:
        return z.real
    return [z.real, z.imag]


def _decode_scalar(obj, where):
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return complex(obj)
    if (
        isinstance(obj, list)
        and len(obj) == 2
        and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in obj)
    ):
        return complex(obj[0], obj[1])
    raise ParseError(f"{where}: expected a number or [re, im], got {obj!r}")


def _encode_matrix(M):
    M = np.atleast_2d(np.asarray(M))
    return [[_encode_scalar(z) for z in row] for row in M]


def _decode_matrix(obj, where):
    if not isinstance(obj, list) or not obj:
        raise ParseError(f"{where}: expected a non-empty nested array")
    rows = []
    width = None
    for i, row in enumerate(obj):
        if not isinstance(row, list):
            raise ParseError(f"{where} row {i}: expected an array")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"{where} row {i}: ragged row ({len(row)} vs {width} entries)")
        rows.append([_decode_scalar(z, f"{where}[{i}]") for z in row])
    M = np.array(rows, dtype=np.complex128)
    if np.all(M.imag == 0.0):
        return M.real
    return M


def _encode_scalar_list(values):
    return [_encode_scalar(z) for z in values]


def _decode_scalar_list(obj, where):
    if not isinstance(obj, list):
        raise ParseError(f"{where}: expected an array")
    return [_decode_scalar(z, f"{where}[{i}]") for i, z in enumerate(obj)]


def write_json_atomic(path, obj):
    """Serialize obj and atomically replace path."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    text = json.dumps(obj, indent=1)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _require_object(doc, path, keys):
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    for key in keys:
        if key not in doc:
            raise ParseError(f"{path}: missing key {key!r}")


# -- model files -------------------------------------------------------------

def system_to_json(sys):
    return {
        "E": _encode_matrix(sys.E),
        "A": _encode_matrix(sys.A),
        "B": _encode_matrix(sys.B),
        "C": _encode_matrix(sys.C),
    }


def save_system(sys, path):
    write_json_atomic(path, system_to_json(sys))


def load_system(path):
    doc = _read_json(path)
    _require_object(doc, path, ("E", "A", "B", "C"))
    E = _decode_matrix(doc["E"], f"{path}:E")
    A = _decode_matrix(doc["A"], f"{path}:A")
    B = _decode_matrix(doc["B"], f"{path}:B")
    C = _decode_matrix(doc["C"], f"{path}:C")
    n = A.shape[0]
    if A.shape != (n, n) or E.shape != (n, n) or B.shape[0] != n or C.shape[1] != n:
        raise ParseError(
            f"{path}: inconsistent dimensions E{E.shape} A{A.shape} B{B.shape} C{C.shape}"
        )
    return DescriptorSystem(E, A, B, C)


# -- interim models: model file plus a metadata block ------------------------

def save_interim_rom(interim, path):
    doc = system_to_json(interim.realization)
    doc["metadata"] = {
        "alphas": _encode_scalar_list(-np.asarray(interim.right_points)),
        "betas": _encode_scalar_list(-np.asarray(interim.left_points)),
        "ordering": interim.ordering,
    }
    write_json_atomic(path, doc)


def load_interim_rom(path):
    doc = _read_json(path)
    _require_object(doc, path, ("E", "A", "B", "C", "metadata"))
    realization = load_system(path)
    meta = doc["metadata"]
    _require_object(meta, f"{path}:metadata", ("alphas", "betas"))
    alphas = _decode_scalar_list(meta["alphas"], f"{path}:metadata.alphas")
    betas = _decode_scalar_list(meta["betas"], f"{path}:metadata.betas")
    return InterimROM(
        realization=realization,
        right_points=tuple(-a for a in alphas),
        left_points=tuple(-b for b in betas),
    )


# -- sample datasets ----------------------------------------------------------

def dataset_to_json(ds):
    points = []
    for pt in ds.points:
        points.append(
            {
                "s": [pt.s.real, pt.s.imag],
                "value": _encode_matrix(pt.value),
                "derivative": None if pt.derivative is None else _encode_matrix(pt.derivative),
            }
        )
    return {"p": ds.p, "m": ds.m, "points": points}


def save_dataset(ds, path):
    write_json_atomic(path, dataset_to_json(ds))


def load_dataset(path):
    doc = _read_json(path)
    _require_object(doc, path, ("p", "m", "points"))
    p, m = doc["p"], doc["m"]
    if not (isinstance(p, int) and isinstance(m, int) and p >= 1 and m >= 1):
        raise ParseError(f"{path}: p and m must be positive integers")
    if not isinstance(doc["points"], list):
        raise ParseError(f"{path}: points must be an array")
    points = []
    for i, rec in enumerate(doc["points"]):
        where = f"{path}:points[{i}]"
        _require_object(rec, where, ("s", "value"))
        s = _decode_scalar(rec["s"], f"{where}.s")
        value = _decode_matrix(rec["value"], f"{where}.value")
        if value.shape != (p, m):
            raise ParseError(f"{where}: value shape {value.shape} differs from ({p}, {m})")
        deriv = rec.get("derivative")
        if deriv is not None:
            deriv = _decode_matrix(deriv, f"{where}.derivative")
            if deriv.shape != (p, m):
                raise ParseError(f"{where}: derivative shape {deriv.shape} differs from ({p}, {m})")
        points.append(SamplePoint(s, value, deriv))
    return SampleDataset(p=p, m=m, points=tuple(points))


# -- shift files ---------------------------------------------------------------

def save_shifts(alphas, betas, path):
    write_json_atomic(
        path,
        {
            "alphas": [[complex(a).real, complex(a).imag] for a in alphas],
            "betas": [[complex(b).real, complex(b).imag] for b in betas],
        },
    )


def load_shifts(path):
    doc = _read_json(path)
    _require_object(doc, path, ("alphas", "betas"))
    alphas = _decode_scalar_list(doc["alphas"], f"{path}:alphas")
    betas = _decode_scalar_list(doc["betas"], f"{path}:betas")
    return alphas, betas


# -- singular value lists and comparison reports -------------------------------

def hsv_to_json(values):
    return {"hsv": [float(v) for v in values]}


def save_hsv(values, path):
    write_json_atomic(path, hsv_to_json(values))


def report_to_json(report):
    return {
        "grid": [[s.real, s.imag] for s in report.grid],
        "deviation": list(report.deviations),
        "max_deviation": report.max_deviation,
        "hsv_a": None if report.hsv_a is None else [float(v) for v in report.hsv_a],
        "hsv_b": None if report.hsv_b is None else [float(v) for v in report.hsv_b],
    }


def save_report(report, path):
    write_json_atomic(path, report_to_json(report))
