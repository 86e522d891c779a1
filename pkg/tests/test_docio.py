import json

import numpy as np
import pytest

from hilldraw.construct import BlowupPlan, blowup, seed_single
from hilldraw.docio import (DocumentError, doc_to_drawing, drawing_to_doc,
                            dump_drawing, load_drawing, report_to_doc)
from hilldraw.drawing import (complete_drawing_from_points, count_crossings,
                              extend_to_complete, verify)
from hilldraw.geom import ToleranceConfig


@pytest.fixture(scope="module")
def hill_k4():
    config, asg = blowup(seed_single(), BlowupPlan(multiplicities=(4,)),
                         np.random.default_rng(7))
    return extend_to_complete(config, asg, provenance={"rng_seed": 7})


class TestRoundTrip:
    def test_bit_exact_vertices_and_counts(self, hill_k4, tmp_path):
        path = tmp_path / "k8.json"
        dump_drawing(hill_k4, path)
        loaded = load_drawing(path)
        assert np.array_equal(loaded.vertices, hill_k4.vertices)
        r1 = count_crossings(hill_k4)
        r2 = count_crossings(loaded)
        assert r1 == r2

    def test_half_circle_witness_bits_survive(self, hill_k4):
        doc = drawing_to_doc(hill_k4)
        loaded = doc_to_drawing(doc)
        for e1, e2 in zip(hill_k4.edges, loaded.edges):
            if hasattr(e1.curve, "m"):
                assert np.array_equal(e1.curve.m, e2.curve.m)

    def test_json_text_roundtrip(self, hill_k4):
        text = json.dumps(drawing_to_doc(hill_k4))
        loaded = doc_to_drawing(json.loads(text))
        assert count_crossings(loaded).total == 18

    def test_provenance_and_kind_survive(self, hill_k4, tmp_path):
        path = tmp_path / "k8.json"
        dump_drawing(hill_k4, path)
        loaded = load_drawing(path)
        assert loaded.kind == hill_k4.kind
        assert loaded.provenance["rng_seed"] == 7

    def test_random_complete_roundtrip(self, rng, tmp_path):
        pts = rng.normal(size=(7, 3))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        d = complete_drawing_from_points(pts)
        path = tmp_path / "r.json"
        dump_drawing(d, path)
        assert count_crossings(load_drawing(path)) == count_crossings(d)


class TestValidation:
    def test_non_unit_vertex(self, hill_k4):
        doc = drawing_to_doc(hill_k4)
        doc["vertices"][0] = [1.0, 1.0, 0.0]
        with pytest.raises(DocumentError, match="unit"):
            doc_to_drawing(doc)

    def test_missing_pairing_for_matching_kind(self, hill_k4):
        doc = drawing_to_doc(hill_k4)
        doc["kind"] = "cocktail_party"
        doc["pairing"] = None
        with pytest.raises(DocumentError, match="pairing"):
            doc_to_drawing(doc)

    def test_unknown_kind(self, hill_k4):
        doc = drawing_to_doc(hill_k4)
        doc["kind"] = "triangular"
        with pytest.raises(DocumentError, match="kind"):
            doc_to_drawing(doc)

    def test_bad_format_header(self, hill_k4):
        doc = drawing_to_doc(hill_k4)
        doc["format"] = "something/else"
        with pytest.raises(DocumentError, match="format"):
            doc_to_drawing(doc)

    def test_half_circle_without_midpoint(self, hill_k4):
        doc = drawing_to_doc(hill_k4)
        for rec in doc["edges"]:
            if rec["curve"] == "half_circle":
                del rec["midpoint"]
                break
        with pytest.raises(DocumentError, match="midpoint"):
            doc_to_drawing(doc)

    def test_half_circle_on_unpaired_vertices(self, hill_k4):
        doc = drawing_to_doc(hill_k4)
        for rec in doc["edges"]:
            if rec["curve"] == "half_circle":
                rec["v"] = (rec["v"] + 1) % len(doc["vertices"])
                break
        with pytest.raises(DocumentError):
            doc_to_drawing(doc)

    def test_edge_census_enforced(self, hill_k4):
        doc = drawing_to_doc(hill_k4)
        doc["edges"] = doc["edges"][:-1]
        with pytest.raises(DocumentError, match="edges|invalid"):
            doc_to_drawing(doc)

    def test_garbage_json_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(DocumentError, match="JSON"):
            load_drawing(path)

    def test_tolerance_override(self, hill_k4):
        doc = drawing_to_doc(hill_k4)
        loose = ToleranceConfig(norm=1e-6)
        loaded = doc_to_drawing(doc, loose)
        assert loaded.tol.norm == 1e-6


class TestReportDoc:
    def test_shape_and_pairs(self, hill_k4):
        report = verify(hill_k4)
        doc = report_to_doc(report, include_pairs=True)
        assert doc["format"] == "hilldraw/report/v1"
        assert doc["passed"] is True
        assert len(doc["crossing_pairs"]) == 18
