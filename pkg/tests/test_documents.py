import json
import math

import numpy as np
import pytest

from copos3.documents import (
    DocumentError,
    VerdictDocument,
    load_params,
    load_polynomial,
    load_tensor,
    params_from_document,
    plain,
    polynomial_from_document,
    read_json,
    save_params,
    save_tensor,
    tensor_from_document,
)
from copos3.general import is_copositive_general
from copos3.z3 import is_bfb

from conftest import random_params, random_tensor, tensor_a123

PARAMS = {
    "lambda1": 1, "lambda2": 1, "lambda3": 0, "lambda4": 0, "lambdaS": 1,
    "lambdaS1": 0, "lambdaS2": 0, "lambdaS12": -3, "rho": 0.5,
}


class TestTensorDocuments:
    def test_a123(self):
        t = tensor_from_document({"order": 3, "entries": {"111": 1, "222": 1, "333": 1, "123": -1}})
        assert np.array_equal(t.values, tensor_a123().values)

    def test_duplicate_after_sorting(self):
        with pytest.raises(DocumentError, match="duplicates"):
            tensor_from_document({"order": 3, "entries": {"132": -1, "123": -1}})

    def test_sparse_order4(self):
        t = tensor_from_document({"order": 4, "entries": {"1122": 0.5}})
        assert len(t.values) == 15 and np.count_nonzero(t.values) == 1

    @pytest.mark.parametrize(
        "doc",
        [
            {"entries": {}},
            {"order": 1, "entries": {}},
            {"order": True, "entries": {}},
            {"order": 3, "entries": []},
            {"order": 3, "entries": {"12": 1}},
            {"order": 3, "entries": {"111": "x"}},
            {"order": 3, "entries": {"111": True}},
        ],
    )
    def test_schema_errors(self, doc):
        with pytest.raises(DocumentError):
            tensor_from_document(doc)

    def test_round_trip(self, rng, tmp_path):
        for m in (2, 3, 4, 6):
            t = random_tensor(rng, m)
            save_tensor(t, tmp_path / "t.json")
            assert np.array_equal(load_tensor(tmp_path / "t.json").values, t.values)


class TestParamsDocuments:
    def test_parse(self):
        p = params_from_document(PARAMS)
        assert p.rho == 0.5 and p.cross == 1.5

    def test_rho_out_of_range(self):
        with pytest.raises(DocumentError):
            params_from_document(dict(PARAMS, rho=1.5))

    def test_missing_and_unknown(self):
        d = dict(PARAMS)
        del d["rho"]
        with pytest.raises(DocumentError, match="missing"):
            params_from_document(d)
        with pytest.raises(DocumentError, match="unknown"):
            params_from_document(dict(PARAMS, mu=1))

    def test_round_trip(self, rng, tmp_path):
        p = random_params(rng)
        save_params(p, tmp_path / "p.json")
        assert load_params(tmp_path / "p.json") == p


class TestPolynomialDocuments:
    def test_parse(self, tmp_path):
        (tmp_path / "p.json").write_text('{"coefficients": [-1, 0, 1]}')
        p = load_polynomial(tmp_path / "p.json")
        assert p.degree == 2 and p(1.0) == 0

    def test_errors(self):
        for doc in ({}, {"coefficients": []}, {"coefficients": [1, None]}):
            with pytest.raises(DocumentError):
                polynomial_from_document(doc)


def test_syntax_error_reports_position(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"order": 3,\n "entries": {')
    with pytest.raises(DocumentError, match="line 2"):
        read_json(f)


def test_plain_handles_numpy_and_non_finite():
    out = plain({"a": np.float64(1.5), "b": np.array([1, 2]), "c": math.inf, "d": (np.bool_(True),)})
    assert out == {"a": 1.5, "b": [1, 2], "c": "inf", "d": [True]}
    json.dumps(out, allow_nan=False)


class TestVerdictDocument:
    def test_round_trip_copositivity(self, rng):
        for _ in range(50):
            t = random_tensor(rng, 3)
            v = is_copositive_general(t)
            doc = VerdictDocument.from_verdict("copositivity", v, order=3)
            back = VerdictDocument.from_json(doc.to_json())
            assert back == doc
            w = back.to_verdict()
            assert (w.status, w.witness, w.value, w.marginal) == (v.status, v.witness, v.value, v.marginal)

    def test_round_trip_bfb(self, rng):
        for _ in range(50):
            p = random_params(rng)
            v = is_bfb(p)
            doc = VerdictDocument.from_verdict("bfb", v, params=p.to_dict())
            assert VerdictDocument.from_json(doc.to_json()) == doc
