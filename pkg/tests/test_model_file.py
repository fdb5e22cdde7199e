"""Tests for model ingestion."""

import json

import numpy as np
import pytest

from exceptions import ModelParseError
from model_file import ModelFile, load_model


def _write(tmp_path, document, name="model.json"):
    path = tmp_path / name
    text = document if isinstance(document, str) else json.dumps(document)
    path.write_text(text, encoding="utf-8")
    return path


SCALAR_DOC = {"F": [[0.9]], "G": [[1.0]], "H": [[1.0]], "L": [[1.0]]}


class TestBuiltins:
    def test_scalar(self):
        model = load_model("builtin:scalar")
        assert model.name == "scalar"
        assert model.F[0, 0] == 0.9

    def test_tracking_default(self):
        model_file = ModelFile.load("builtin:tracking")
        assert model_file.delta_t == 1.0
        np.testing.assert_array_equal(model_file.L, [[1.0, 1.0]])

    def test_tracking_delta_t(self):
        model = load_model("builtin:tracking?delta_t=0.5")
        np.testing.assert_array_equal(model.F, [[1.0, 0.5], [0.0, 1.0]])
        np.testing.assert_array_equal(model.G, [[0.0], [0.5]])

    def test_tracking_current_target(self):
        model = load_model("builtin:tracking?delta_t=0.5&target=current")
        assert model.name == "tracking_current"
        np.testing.assert_array_equal(model.L, [[1.0, 0.0]])
        np.testing.assert_array_equal(model.F, [[1.0, 0.5], [0.0, 1.0]])

    @pytest.mark.parametrize(
        "spec",
        [
            "builtin:pendulum",
            "builtin:scalar?delta_t=1",
            "builtin:tracking?dt=1",
            "builtin:tracking?delta_t=-1",
            "builtin:tracking?delta_t=abc",
            "builtin:tracking?delta_t=inf",
            "builtin:tracking?target=previous",
            "builtin:scalar?target=current",
        ],
    )
    def test_rejects(self, spec):
        with pytest.raises(ModelParseError):
            ModelFile.load(spec)


class TestJsonModels:
    def test_explicit_matrices(self, tmp_path):
        path = _write(tmp_path, {**SCALAR_DOC, "name": "mine"})
        model = load_model(path)
        assert model.name == "mine"
        assert model.dims == (1, 1, 1, 1)

    def test_name_defaults_to_stem(self, tmp_path):
        path = _write(tmp_path, SCALAR_DOC, name="plant_a.json")
        assert load_model(path).name == "plant_a"

    def test_template(self, tmp_path):
        path = _write(tmp_path, {"template": "tracking", "delta_t": 2.0})
        model_file = ModelFile.load(path)
        assert model_file.delta_t == 2.0
        np.testing.assert_array_equal(model_file.F, [[1.0, 2.0], [0.0, 1.0]])

    def test_template_target(self, tmp_path):
        path = _write(tmp_path, {"template": "tracking", "target": "current"})
        np.testing.assert_array_equal(ModelFile.load(path).L, [[1.0, 0.0]])

    def test_to_dict_keeps_delta_t(self, tmp_path):
        path = _write(tmp_path, {"template": "tracking", "delta_t": 0.5})
        data = ModelFile.load(path).to_dict()
        assert data["delta_t"] == 0.5
        assert set(data) >= {"F", "G", "H", "L", "name"}

    @pytest.mark.parametrize(
        "document, message",
        [
            ({**SCALAR_DOC, "F": [[1.0, 2.0], [3.0]]}, "ragged"),
            ({**SCALAR_DOC, "G": [[True]]}, "non-numeric"),
            ({**SCALAR_DOC, "H": [["1"]]}, "non-numeric"),
            ({k: v for k, v in SCALAR_DOC.items() if k != "L"}, "missing"),
            ({**SCALAR_DOC, "Q": [[1.0]]}, "Unknown keys"),
            ({**SCALAR_DOC, "F": []}, "empty"),
            ({**SCALAR_DOC, "name": 3}, "'name'"),
            ({"template": "pendulum"}, "Unknown template"),
            ({"template": "tracking", "F": [[1.0]]}, "cannot also give"),
            ({"template": "tracking", "target": "last"}, "Unknown tracking target"),
            ({**SCALAR_DOC, "target": "current"}, "only applies"),
            ([1, 2, 3], "JSON object"),
        ],
    )
    def test_invalid_documents(self, tmp_path, document, message):
        path = _write(tmp_path, document)
        with pytest.raises(ModelParseError, match=message):
            ModelFile.load(path)

    def test_nan_literal(self, tmp_path):
        path = _write(tmp_path, '{"F": [[NaN]], "G": [[1]], "H": [[1]], "L": [[1]]}')
        with pytest.raises(ModelParseError, match="Non-finite"):
            ModelFile.load(path)

    def test_invalid_json(self, tmp_path):
        path = _write(tmp_path, "{not json")
        with pytest.raises(ModelParseError, match="not valid JSON"):
            ModelFile.load(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ModelParseError, match="Cannot read"):
            ModelFile.load(tmp_path / "absent.json")

    def test_inconsistent_dimensions(self, tmp_path):
        path = _write(tmp_path, {**SCALAR_DOC, "F": [[0.5, 0.0], [0.0, 0.5]]})
        with pytest.raises(ModelParseError, match="invalid"):
            ModelFile.load(path)


class TestValidation:
    def test_suggestions_name_the_bad_matrix(self):
        model_file = ModelFile(
            name="bad",
            F=np.eye(2),
            G=np.ones((2, 1)),
            H=np.ones((1, 3)),
            L=np.ones((1, 2)),
        )
        ok, message = model_file.validate()
        assert not ok
        assert "bad" in message
        suggestions = model_file.get_error_suggestions()
        assert any(s.startswith("H needs 2 columns") for s in suggestions)

    def test_valid_model(self):
        m = load_model("builtin:scalar")
        model_file = ModelFile(name="ok", F=m.F, G=m.G, H=m.H, L=m.L)
        assert model_file.validate() == (True, "Model validation passed")
