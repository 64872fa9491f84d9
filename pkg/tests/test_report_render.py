import json
import math
from fractions import Fraction

import numpy as np
import pandas as pd
import pytest

from models.certificate import Verdict
from models.matrices import Graph
from models.srg import SrgParams
from utils.matrix_io import MatrixFileCodec
from utils.report_render import ReportRenderer


@pytest.mark.parametrize("value, expected", [
    (Fraction(1, 2), "1/2"),
    (Fraction(4), "4"),
    (1 / 3, 0.333333333333),
    (math.sqrt(2), 1.41421356237),
    (-0.0, 0.0),
    (float("nan"), "nan"),
    (float("-inf"), "-inf"),
    (np.int64(7), 7),
    (np.float64(2.5), 2.5),
    (np.bool_(True), True),
    (Verdict.MEMBER, Verdict.MEMBER.value),
])
def test_normalize_scalars(value, expected):
    assert ReportRenderer.normalize(value) == expected


def test_normalize_containers():
    assert ReportRenderer.normalize(Graph.complete(2)) == [[0, 1], [1, 0]]
    assert ReportRenderer.normalize(np.eye(2)) == [[1.0, 0.0], [0.0, 1.0]]
    assert ReportRenderer.normalize({1: (Fraction(1, 3), 0.5)}) == {"1": ["1/3", 0.5]}
    assert ReportRenderer.normalize(SrgParams(v=9, k=4, a=1, c=2)) == {"v": 9, "k": 4, "a": 1, "c": 2}
    df = pd.DataFrame([{"k": 2, "ok": True}])
    assert ReportRenderer.normalize(df) == [{"k": 2, "ok": True}]


def test_normalize_rejects_unknown_types():
    with pytest.raises(ValueError):
        ReportRenderer.normalize(object())


def test_render_json_is_valid_json():
    text = ReportRenderer.render_json({"value": Fraction(2, 9), "lower": 2 / 9})
    assert json.loads(text) == {"value": "2/9", "lower": 0.222222222222}


def test_manifest_path():
    assert ReportRenderer.manifest_path("out/b.pmm").name == "b.manifest.json"


def test_manifest_records_and_verifies_digests(tmp_path, h2):
    out = tmp_path / "h2.pmm"
    digest = MatrixFileCodec.write_pmm(out, h2)
    path = ReportRenderer.write_manifest(out, "construct", ["construct", "--out", str(out)], outputs=[out])
    assert path == tmp_path / "h2.manifest.json"

    recorded = json.loads(path.read_text())
    assert recorded["subcommand"] == "construct"
    assert recorded["output_digests"] == {str(out): digest}
    assert ReportRenderer.verify_manifest(path) == {str(out): True}

    out.write_text("PMM 1\n1\n1\n")
    assert ReportRenderer.verify_manifest(path) == {str(out): False}
