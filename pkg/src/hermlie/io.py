"""File format and machine-readable reports.

Algebra documents are JSON with either a real or a complex presentation:

    {"schema": "hermlie/1", "name": "...",
     "real": {"dim": 4, "basis_labels": [...],
              "brackets": [[a, b, c, value], ...],
              "J": [[...], ...], "metric": "identity" | [[...], ...]}}

    {"schema": "hermlie/1", "name": "...",
     "complex": {"n": 2, "C": [[j, i, k, re, im], ...],
                 "D": [[j, i, k, re, im], ...]}}

Indices in files are 1-based to match written conventions and are converted
at this boundary.  A bracket entry [a, b, c, v] contributes v to the
coefficient of basis vector c in [eps_a, eps_b]; the reversed orientation is
filled in automatically and, when supplied explicitly, must be consistent.

Reports are emitted with sorted keys so that equal inputs produce
byte-identical documents.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import __version__
from .core import (
    ComplexPresentation,
    Frame,
    HermitianStructure,
    RealLieAlgebra,
    build_unitary_frame,
    complexify,
    realify,
)
from .errors import ParseError, TypeMismatch, ValidationError
from .utils import DEFAULT_TOL

SCHEMA = "hermlie/1"
REPORT_SCHEMA = "hermlie-report/1"


@dataclass
class AlgebraDocument:
    """Validated content of an algebra file."""

    name: str
    tolerance: Optional[float]
    kind: str  # "real" or "complex"
    algebra: Optional[RealLieAlgebra] = None
    hermitian: Optional[HermitianStructure] = None
    presentation: Optional[ComplexPresentation] = None
    payload: Optional[dict] = None

    def instance(self) -> tuple[RealLieAlgebra, HermitianStructure, Frame]:
        """Real instance with a deterministic unitary frame."""
        if self.kind == "real":
            return self.algebra, self.hermitian, build_unitary_frame(self.hermitian)
        return realify(self.presentation)

    def as_presentation(self) -> ComplexPresentation:
        if self.kind == "complex":
            return self.presentation
        return complexify(self.algebra, self.hermitian, build_unitary_frame(self.hermitian))


def _require(cond, message, field):
    if not cond:
        raise ValidationError(message, field)


def _parse_real(body: dict) -> tuple[RealLieAlgebra, HermitianStructure]:
    _require(isinstance(body.get("dim"), int), "dim must be an integer", "real.dim")
    dim = body["dim"]
    _require(dim > 0 and dim % 2 == 0, f"dim must be positive even, got {dim}", "real.dim")
    labels = body.get("basis_labels") or [f"b{i + 1}" for i in range(dim)]
    _require(len(labels) == dim, f"{len(labels)} labels for dim {dim}", "real.basis_labels")

    f = np.zeros((dim, dim, dim))
    seen = {}
    for t, entry in enumerate(body.get("brackets", [])):
        loc = f"real.brackets[{t}]"
        _require(len(entry) == 4, "expected [a, b, c, value]", loc)
        a, b, c, value = entry
        for name, idx in (("a", a), ("b", b), ("c", c)):
            _require(isinstance(idx, int) and 1 <= idx <= dim, f"index {name}={idx} out of range 1..{dim}", loc)
        _require(a != b or value == 0, "bracket of a vector with itself must vanish", loc)
        key = (a, b, c)
        _require(key not in seen, f"duplicate bracket entry {key}", loc)
        seen[key] = float(value)
    for (a, b, c), value in seen.items():
        rev = seen.get((b, a, c))
        if rev is not None and abs(rev + value) > 1e-12:
            raise ValidationError(
                f"antisymmetry: entries for ({a},{b},{c}) and ({b},{a},{c}) must be opposite",
                "real.brackets",
            )
        f[c - 1, a - 1, b - 1] = value
        if rev is None:
            f[c - 1, b - 1, a - 1] = -value

    metric = body.get("metric", "identity")
    g = np.eye(dim) if metric == "identity" else np.asarray(metric, dtype=float)
    J = np.asarray(body.get("J"), dtype=float)
    if J.shape != (dim, dim) or g.shape != (dim, dim):
        raise ValidationError(f"J/metric must be {dim}x{dim} matrices", "real.J")
    alg = RealLieAlgebra(dim, list(labels), f)
    h = HermitianStructure(J, g)
    return alg, h


def _parse_sparse_complex(entries, n: int, loc: str) -> np.ndarray:
    t = np.zeros((n, n, n), dtype=complex)
    for m, entry in enumerate(entries or []):
        where = f"{loc}[{m}]"
        _require(len(entry) == 5, "expected [j, i, k, re, im]", where)
        j, i, k, re, im = entry
        for name, idx in (("j", j), ("i", i), ("k", k)):
            _require(isinstance(idx, int) and 1 <= idx <= n, f"index {name}={idx} out of range 1..{n}", where)
        t[j - 1, i - 1, k - 1] += complex(float(re), float(im))
    return t


def _parse_complex(body: dict) -> ComplexPresentation:
    _require(isinstance(body.get("n"), int) and body["n"] > 0, "n must be a positive integer", "complex.n")
    n = body["n"]
    C = _parse_sparse_complex(body.get("C"), n, "complex.C")
    D = _parse_sparse_complex(body.get("D"), n, "complex.D")
    try:
        return ComplexPresentation(n, C, D)
    except ValidationError as e:
        raise ValidationError(str(e), "complex.C") from None


def parse_algebra(source) -> AlgebraDocument:
    """Parse and validate an algebra document.

    ``source`` is a path, a JSON string, or an already-decoded dict.  All
    structural invariants are checked eagerly; errors carry the offending
    field.
    """
    if isinstance(source, dict):
        doc = source
    else:
        text = source
        if "\n" not in str(source) and str(source).lstrip()[:1] not in "{[":
            try:
                with open(source, "r", encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as e:
                raise ParseError(str(e), location=str(source)) from None
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, location=f"line {e.lineno}, column {e.colno}") from None
    if not isinstance(doc, dict):
        raise ValidationError("top-level document must be an object", "$")
    if "real" not in doc and "complex" not in doc and isinstance(doc.get("algebra"), dict):
        doc = doc["algebra"]  # accept report-wrapped payloads
    has_real, has_complex = "real" in doc, "complex" in doc
    _require(has_real != has_complex, "exactly one of 'real' or 'complex' must be present", "$")
    name = str(doc.get("name", ""))
    tolerance = doc.get("tolerance")
    if tolerance is not None:
        _require(isinstance(tolerance, (int, float)) and tolerance > 0, "tolerance must be positive", "tolerance")
        tolerance = float(tolerance)
    if has_real:
        alg, h = _parse_real(doc["real"])
        return AlgebraDocument(name, tolerance, "real", algebra=alg, hermitian=h, payload=_clean_payload(doc))
    pres = _parse_complex(doc["complex"])
    return AlgebraDocument(name, tolerance, "complex", presentation=pres, payload=_clean_payload(doc))


def _clean_payload(doc: dict) -> dict:
    keep = {k: doc[k] for k in ("schema", "name", "tolerance", "real", "complex") if k in doc}
    keep.setdefault("schema", SCHEMA)
    return keep


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------

def _sparse_real(f: np.ndarray) -> list:
    out = []
    dim = f.shape[0]
    for c in range(dim):
        for a in range(dim):
            for b in range(a + 1, dim):
                if f[c, a, b] != 0:
                    out.append([a + 1, b + 1, c + 1, float(f[c, a, b])])
    return out


def _sparse_complex(t: np.ndarray) -> list:
    out = []
    n = t.shape[0]
    for j in range(n):
        for i in range(n):
            for k in range(n):
                z = t[j, i, k]
                if z != 0:
                    out.append([j + 1, i + 1, k + 1, float(z.real), float(z.imag)])
    return out


def instance_payload(alg: RealLieAlgebra, h: HermitianStructure, name: str = "") -> dict:
    """Algebra document (dict form) for a real instance."""
    metric = "identity" if np.allclose(h.g, np.eye(alg.dim), atol=0) else [[float(x) for x in row] for row in h.g]
    return {
        "schema": SCHEMA,
        "name": name,
        "real": {
            "dim": alg.dim,
            "basis_labels": list(alg.basis_labels),
            "brackets": _sparse_real(alg.f),
            "J": [[float(x) for x in row] for row in h.J],
            "metric": metric,
        },
    }


def presentation_payload(pres: ComplexPresentation, name: str = "") -> dict:
    """Algebra document (dict form) for a complex presentation."""
    return {
        "schema": SCHEMA,
        "name": name,
        "complex": {
            "n": pres.n,
            "C": _sparse_complex(pres.C),
            "D": _sparse_complex(pres.D),
        },
    }


def emit_algebra(payload: dict) -> str:
    """Deterministic serialization of an algebra document."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def payload_hash(payload: dict) -> str:
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


def _jsonable(value):
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, float):
        return float(value)
    if isinstance(value, complex) or isinstance(value, np.complexfloating):
        return [float(np.real(value)), float(np.imag(value))]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set)):
        return [_jsonable(v) for v in sorted(value)] if isinstance(value, set) else [_jsonable(v) for v in value]
    return str(value)


def emit_report(results: dict, algebra_payload: Optional[dict] = None,
                tolerance: float = DEFAULT_TOL, seed: Optional[int] = None) -> str:
    """Deterministic, key-sorted report document.

    ``results`` holds per-check residuals, verdict and witness data; the
    algebra payload is embedded so that the input round-trips through the
    report.
    """
    doc = {
        "schema": REPORT_SCHEMA,
        "tool": {"name": "hermlie", "version": __version__},
        "tolerance": tolerance,
    }
    if seed is not None:
        doc["seed"] = seed
    doc.update({k: _jsonable(v) for k, v in results.items()})
    if algebra_payload is not None:
        doc["algebra"] = algebra_payload
        doc["input_hash"] = payload_hash(algebra_payload)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
