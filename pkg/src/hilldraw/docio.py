"""JSON document formats: drawings, verification reports, experiments.

Coordinates are serialized through Python's shortest round-trip float repr,
so parse(serialize(drawing)) restores every binary64 bit and therefore every
crossing count exactly.
"""

from __future__ import annotations

import json

import numpy as np

from .drawing import (Drawing, DrawingKind, Edge, VerificationReport,
                      validate_drawing)
from .geom import (DEFAULT_TOL, GeodesicArc, HalfCircle, ToleranceConfig)

DRAWING_FORMAT = "hilldraw/drawing/v1"
REPORT_FORMAT = "hilldraw/report/v1"
EXPERIMENT_FORMAT = "hilldraw/experiment/v1"


class DocumentError(ValueError):
    """A document violates the schema; the message names the field."""


def drawing_to_doc(d: Drawing) -> dict:
    pairs = sorted({tuple(sorted((a, b))) for a, b in d.pairing.items()})
    edges = []
    for e in d.edges:
        if isinstance(e.curve, HalfCircle):
            edges.append({"u": e.u, "v": e.v, "curve": "half_circle",
                          "midpoint": [float(c) for c in e.curve.m]})
        else:
            edges.append({"u": e.u, "v": e.v, "curve": "arc"})
    return {
        "format": DRAWING_FORMAT,
        "kind": d.kind.value,
        "vertices": [[float(c) for c in v] for v in d.vertices],
        "pairing": [list(p) for p in pairs] or None,
        "edges": edges,
        "provenance": d.provenance,
        "tolerances": d.tol.to_dict(),
    }


def doc_to_drawing(doc: dict, tol: ToleranceConfig | None = None) -> Drawing:
    """Parse and fully validate a drawing document.

    ``tol`` overrides the tolerances stored in the file.
    """
    if not isinstance(doc, dict):
        raise DocumentError("drawing document must be a JSON object")
    if doc.get("format") != DRAWING_FORMAT:
        raise DocumentError(f"format: expected {DRAWING_FORMAT!r}, got "
                            f"{doc.get('format')!r}")
    try:
        kind = DrawingKind(doc["kind"])
    except KeyError:
        raise DocumentError("kind: missing") from None
    except ValueError:
        raise DocumentError(f"kind: unknown value {doc['kind']!r}") from None

    if tol is None:
        try:
            tol = ToleranceConfig.from_dict(doc.get("tolerances") or {})
        except (KeyError, TypeError, ValueError):
            tol = DEFAULT_TOL

    raw_verts = doc.get("vertices")
    if not isinstance(raw_verts, list) or not raw_verts:
        raise DocumentError("vertices: expected a non-empty list")
    verts = np.empty((len(raw_verts), 3))
    for i, row in enumerate(raw_verts):
        if (not isinstance(row, list) or len(row) != 3
                or not all(isinstance(c, (int, float)) for c in row)):
            raise DocumentError(f"vertices[{i}]: expected [x, y, z]")
        verts[i] = row
        if abs(float(verts[i] @ verts[i]) - 1.0) > tol.norm:
            raise DocumentError(f"vertices[{i}]: not a unit vector within "
                                f"tolerance {tol.norm}")

    n = len(verts)
    pairing: dict[int, int] = {}
    raw_pairing = doc.get("pairing")
    if raw_pairing is not None:
        if not isinstance(raw_pairing, list):
            raise DocumentError("pairing: expected a list of [i, j] pairs")
        for idx, pair in enumerate(raw_pairing):
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(isinstance(x, int) for x in pair)):
                raise DocumentError(f"pairing[{idx}]: expected [i, j]")
            a, b = pair
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise DocumentError(f"pairing[{idx}]: invalid vertex indices")
            if a in pairing or b in pairing:
                raise DocumentError(f"pairing[{idx}]: vertex paired twice")
            pairing[a] = b
            pairing[b] = a
    if kind in (DrawingKind.COCKTAIL_PARTY, DrawingKind.PARTIAL_MATCHING) \
            and not pairing:
        raise DocumentError(f"pairing: required for kind {kind.value!r}")

    raw_edges = doc.get("edges")
    if not isinstance(raw_edges, list):
        raise DocumentError("edges: expected a list")
    edges = []
    for idx, rec in enumerate(raw_edges):
        if not isinstance(rec, dict):
            raise DocumentError(f"edges[{idx}]: expected an object")
        try:
            u, v = int(rec["u"]), int(rec["v"])
        except (KeyError, TypeError, ValueError):
            raise DocumentError(f"edges[{idx}]: bad endpoints") from None
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise DocumentError(f"edges[{idx}]: endpoint out of range")
        curve_kind = rec.get("curve")
        if curve_kind == "arc":
            curve = GeodesicArc(verts[u], verts[v], tol)
        elif curve_kind == "half_circle":
            mp = rec.get("midpoint")
            if (not isinstance(mp, list) or len(mp) != 3
                    or not all(isinstance(c, (int, float)) for c in mp)):
                raise DocumentError(f"edges[{idx}]: half_circle needs a "
                                    "[x, y, z] midpoint")
            if pairing.get(u) != v:
                raise DocumentError(f"edges[{idx}]: half_circle joins an "
                                    "unpaired couple")
            curve = HalfCircle(verts[u], np.array(mp, dtype=float), tol)
        else:
            raise DocumentError(f"edges[{idx}]: curve must be 'arc' or "
                                f"'half_circle', got {curve_kind!r}")
        edges.append(Edge(u, v, curve))

    prov = doc.get("provenance") or {}
    if not isinstance(prov, dict):
        raise DocumentError("provenance: expected an object")
    d = Drawing(vertices=verts, kind=kind, edges=tuple(edges),
                pairing=pairing, provenance=prov, tol=tol)
    try:
        validate_drawing(d)
    except ValueError as exc:
        raise DocumentError(f"drawing invalid: {exc}") from exc
    return d


def dump_drawing(d: Drawing, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(drawing_to_doc(d), fh, indent=1)
        fh.write("\n")


def load_drawing(path, tol: ToleranceConfig | None = None) -> Drawing:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"{path}: not valid JSON "
                                f"(line {exc.lineno}: {exc.msg})") from exc
    return doc_to_drawing(doc, tol)


def report_to_doc(report: VerificationReport,
                  include_pairs: bool = False) -> dict:
    doc = {"format": REPORT_FORMAT}
    doc.update(report.to_dict())
    if include_pairs:
        doc["crossing_pairs"] = report.crossings.pairs.tolist()
    return doc


def dump_report(report: VerificationReport, path,
                include_pairs: bool = False) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report_to_doc(report, include_pairs), fh, indent=1)
        fh.write("\n")


def experiment_to_doc(result) -> dict:
    doc = {"format": EXPERIMENT_FORMAT}
    doc.update(result.to_dict())
    return doc


def dump_experiment(result, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(experiment_to_doc(result), fh, indent=1)
        fh.write("\n")
