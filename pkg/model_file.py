"""Plant model ingestion.

Models come from builtins or JSON documents:

    builtin:scalar                     F = 0.9, G = H = L = 1
    builtin:tracking                   double integrator, delta_t = 1
    builtin:tracking?delta_t=0.5       same with another sampling period
    builtin:tracking?target=current    estimate the current position instead of the next
    path/to/model.json                 {"F": [[...]], "G": ..., "H": ..., "L": ..., "name": ...}
                                       or {"template": "tracking", "delta_t": 0.5, "target": "next"}
"""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from urllib.parse import parse_qs

import numpy as np

from exceptions import ModelParseError, ValidationError
from state_space import StateSpaceModel

BUILTIN_PREFIX = "builtin:"
BUILTIN_MODELS = ("scalar", "tracking")
TRACKING_TARGETS = ("next", "current")
MATRIX_KEYS = ("F", "G", "H", "L")
_OPTIONAL_KEYS = ("name", "delta_t", "template", "target")


def scalar_model() -> StateSpaceModel:
    """Scalar plant F = 0.9, G = H = L = 1."""
    return StateSpaceModel(F=[[0.9]], G=[[1.0]], H=[[1.0]], L=[[1.0]], name="scalar")


def tracking_matrices(delta_t: float = 1.0, target: str = "next") -> dict[str, np.ndarray]:
    """Position/velocity double integrator driven by acceleration.

    target "next" estimates x_{i+1} = x_i + delta_t v_i, so L = [1, delta_t];
    "current" estimates the position itself, L = [1, 0].
    """
    return {
        "F": np.array([[1.0, delta_t], [0.0, 1.0]]),
        "G": np.array([[0.0], [delta_t]]),
        "H": np.array([[1.0, 0.0]]),
        "L": np.array([[1.0, delta_t if target == "next" else 0.0]]),
    }


def tracking_model(delta_t: float = 1.0, target: str = "next") -> StateSpaceModel:
    target = _check_target(target)
    return StateSpaceModel(
        **tracking_matrices(_check_delta_t(delta_t), target), name=_tracking_name(target)
    )


def _tracking_name(target: str) -> str:
    return "tracking" if target == "next" else f"tracking_{target}"


def _check_target(value) -> str:
    if value not in TRACKING_TARGETS:
        raise ModelParseError(
            f"Unknown tracking target {value!r}", f"use one of {TRACKING_TARGETS}"
        )
    return value


def _check_delta_t(value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ModelParseError("delta_t must be a number", f"got {value!r}")
    value = float(value)
    if not math.isfinite(value) or value <= 0:
        raise ModelParseError("delta_t must be positive and finite", f"got {value}")
    return value


def _reject_constant(token: str):
    raise ModelParseError(f"Non-finite number '{token}' in model file")


def _check_numeric(value, key: str) -> None:
    if isinstance(value, list):
        for item in value:
            _check_numeric(item, key)
    elif isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ModelParseError(f"'{key}' has a non-numeric entry", f"got {value!r}")


def _parse_matrix(value, key: str) -> np.ndarray:
    _check_numeric(value, key)
    try:
        arr = np.array(value, dtype=float)
    except ValueError as e:
        raise ModelParseError(f"'{key}' is a ragged array", str(e)) from e
    if arr.ndim > 2:
        raise ModelParseError(f"'{key}' must be a matrix", f"got {arr.ndim} dimensions")
    if arr.size == 0:
        raise ModelParseError(f"'{key}' is empty")
    if not np.all(np.isfinite(arr)):
        raise ModelParseError(f"'{key}' has non-finite entries")
    return arr


@dataclass
class ModelFile:
    """A parsed model document.

    Attributes:
        name: Model label.
        F: State matrix.
        G: Disturbance input.
        H: Observation map.
        L: Target map.
        delta_t: Sampling period of template models.
        source: Where the model came from (builtin spec or file path).
    """

    name: str
    F: np.ndarray
    G: np.ndarray
    H: np.ndarray
    L: np.ndarray
    delta_t: float | None = None
    source: str = ""
    _error: str | None = field(default=None, repr=False, compare=False)

    @classmethod
    def load(cls, spec: str | Path) -> "ModelFile":
        """Load a builtin or a JSON model file.

        Raises:
            ModelParseError: Unknown builtin, unreadable file or invalid content.
        """
        text = str(spec)
        if text.startswith(BUILTIN_PREFIX):
            return cls._load_builtin(text)
        path = Path(text)
        try:
            raw = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ModelParseError(f"Cannot read model file: {path}", str(e)) from e
        try:
            document = json.loads(raw, parse_constant=_reject_constant)
        except json.JSONDecodeError as e:
            raise ModelParseError(f"Model file is not valid JSON: {path}", str(e)) from e
        return cls.from_document(document, source=text)

    @classmethod
    def _load_builtin(cls, spec: str) -> "ModelFile":
        body = spec[len(BUILTIN_PREFIX) :]
        name, _, query = body.partition("?")
        if name not in BUILTIN_MODELS:
            raise ModelParseError(f"Unknown builtin model '{name}'", f"use one of {BUILTIN_MODELS}")
        params = parse_qs(query, keep_blank_values=True, strict_parsing=False) if query else {}
        unknown = set(params) - {"delta_t", "target"}
        if unknown or (name == "scalar" and params):
            raise ModelParseError(
                f"Unsupported parameters for builtin '{name}'", ", ".join(sorted(params))
            )
        if name == "scalar":
            m = scalar_model()
            return cls(name="scalar", F=m.F, G=m.G, H=m.H, L=m.L, source=spec)
        delta_t = 1.0
        if "delta_t" in params:
            try:
                delta_t = float(params["delta_t"][-1])
            except ValueError as e:
                raise ModelParseError("delta_t must be a number", params["delta_t"][-1]) from e
        delta_t = _check_delta_t(delta_t)
        target = _check_target(params["target"][-1] if "target" in params else "next")
        return cls(
            name=_tracking_name(target),
            delta_t=delta_t,
            source=spec,
            **tracking_matrices(delta_t, target),
        )

    @classmethod
    def from_document(cls, document, source: str = "<document>") -> "ModelFile":
        """Build from a decoded JSON object.

        Raises:
            ModelParseError: Missing keys, non-numeric or ragged arrays,
                inconsistent dimensions.
        """
        if not isinstance(document, dict):
            raise ModelParseError("Model document must be a JSON object", f"in {source}")
        unknown = set(document) - set(MATRIX_KEYS) - set(_OPTIONAL_KEYS)
        if unknown:
            raise ModelParseError("Unknown keys in model document", ", ".join(sorted(unknown)))
        name = document.get("name", Path(source).stem if source else "model")
        if not isinstance(name, str):
            raise ModelParseError("'name' must be a string")

        template = document.get("template")
        if template is not None:
            if template != "tracking":
                raise ModelParseError(f"Unknown template '{template}'", "only 'tracking'")
            present = [k for k in MATRIX_KEYS if k in document]
            if present:
                raise ModelParseError(
                    "Template documents cannot also give matrices", ", ".join(present)
                )
            delta_t = _check_delta_t(document.get("delta_t", 1.0))
            target = _check_target(document.get("target", "next"))
            model_file = cls(
                name=name, delta_t=delta_t, source=source, **tracking_matrices(delta_t, target)
            )
        else:
            if "target" in document:
                raise ModelParseError("'target' only applies to the tracking template")
            missing = [k for k in MATRIX_KEYS if k not in document]
            if missing:
                raise ModelParseError("Model document is missing keys", ", ".join(missing))
            delta_t = document.get("delta_t")
            model_file = cls(
                name=name,
                delta_t=None if delta_t is None else _check_delta_t(delta_t),
                source=source,
                **{k: _parse_matrix(document[k], k) for k in MATRIX_KEYS},
            )
        ok, message = model_file.validate()
        if not ok:
            raise ModelParseError(message, f"in {source}")
        return model_file

    def to_model(self) -> StateSpaceModel:
        """Build the plant.

        Raises:
            ModelParseError: Dimensions are inconsistent.
        """
        try:
            return StateSpaceModel(F=self.F, G=self.G, H=self.H, L=self.L, name=self.name)
        except ValidationError as e:
            raise ModelParseError(e.message, e.details) from e

    def validate(self) -> tuple[bool, str]:
        """Check the matrices form a plant; returns (is_valid, message)."""
        try:
            self.to_model()
        except ModelParseError as e:
            self._error = str(e)
            return False, f"Model '{self.name}' is invalid: {e}"
        self._error = None
        return True, "Model validation passed"

    def get_error_suggestions(self) -> list[str]:
        """Hints for fixing an invalid model."""
        suggestions = []
        F = np.atleast_2d(self.F)
        n = F.shape[0]
        if F.shape[0] != F.shape[1]:
            suggestions.append(f"F must be square; it is {F.shape[0]} x {F.shape[1]}")
        for key in ("H", "L"):
            M = np.atleast_2d(getattr(self, key))
            if M.shape[1] != n:
                suggestions.append(f"{key} needs {n} columns (one per state); it has {M.shape[1]}")
        G = np.atleast_2d(self.G)
        if G.shape[0] != n and G.T.shape[0] != n:
            suggestions.append(f"G needs {n} rows (one per state); it has {G.shape[0]}")
        if not suggestions and self._error:
            suggestions.append(self._error)
        suggestions.append("Matrices are row-major nested lists, e.g. \"F\": [[1, 1], [0, 1]]")
        return suggestions

    def to_dict(self) -> dict:
        data = {"name": self.name, **{k: getattr(self, k) for k in MATRIX_KEYS}}
        if self.delta_t is not None:
            data["delta_t"] = self.delta_t
        return data


def load_model(spec: str | Path) -> StateSpaceModel:
    """ModelFile.load(spec).to_model()."""
    return ModelFile.load(spec).to_model()
