"""Machine-checkable span certificates.

A certificate lists, for every element of the group in index order, one
coefficient vector whose signed combination of the generators equals that
element and whose l1-norm is at most ``s``. Checking a certificate needs only
modular arithmetic, never the span engine.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .groups import GeneratorSet, GroupSpec, linear_combination
from .span import combination_indices, signed_coefficients


class NotSpanning(ValueError):
    pass


@dataclass(frozen=True)
class SpanCertificate:
    group: GroupSpec
    generators: GeneratorSet
    s: int
    assignments: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "group": str(self.group),
            "generators": self.generators.as_lists(),
            "s": self.s,
            "assignments": [list(a) for a in self.assignments],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json() + "\n")


def make_certificate(G: GroupSpec, A: GeneratorSet, s: int) -> SpanCertificate:
    """Pick, per element, the coefficient vector of least norm, then least lexicographically."""
    coeffs = signed_coefficients(len(A), s)
    idx = combination_indices(G, A, coeffs)
    # coefficient rows are already in tie-break order, so first hit wins
    hit, first = np.unique(idx, return_index=True)
    if hit.size != G.order():
        raise NotSpanning(f"{A} is not {s}-spanning in {G}: {hit.size}/{G.order()} covered")
    assignments = tuple(tuple(int(v) for v in coeffs[r]) for r in first)
    return SpanCertificate(G, A, s, assignments)


def certificate_problem(cert: SpanCertificate | dict | str) -> str | None:
    """Return ``None`` for a valid certificate, otherwise a short reason code."""
    try:
        data = cert.to_dict() if isinstance(cert, SpanCertificate) else (
            json.loads(cert) if isinstance(cert, str) else cert)
        G = GroupSpec.parse(str(data["group"]))
        s = data["s"]
        gens_raw = data["generators"]
        rows = data["assignments"]
    except (KeyError, TypeError, ValueError):
        return "malformed"
    if not isinstance(s, int) or isinstance(s, bool) or s < 0:
        return "bad_s"
    try:
        gens = [G.element(int(x), int(y)) for x, y in gens_raw]
    except (TypeError, ValueError):
        return "bad_generators"
    if not gens or any(e.x != x or e.y != y for e, (x, y) in zip(gens, gens_raw)):
        return "bad_generators"
    if not isinstance(rows, list) or len(rows) != G.order():
        return "wrong_length"
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != len(gens) or \
                not all(isinstance(v, int) and not isinstance(v, bool) for v in row):
            return f"bad_row:{i}"
        if sum(abs(v) for v in row) > s:
            return f"norm_exceeded:{i}"
        if linear_combination(G, row, gens) != G.element_from_index(i):
            return f"wrong_value:{i}"
    return None


def verify_certificate(cert: SpanCertificate | dict | str) -> bool:
    return certificate_problem(cert) is None


def load_certificate(path: str | Path) -> dict:
    return json.loads(Path(path).read_text())
