"""Realization containers: the plant and causal LTI filters."""

from dataclasses import dataclass

import numpy as np

from exceptions import DimensionMismatch, ValidationError
from linalg_core import as_matrix, spectral_radius


@dataclass(frozen=True)
class StateSpaceModel:
    """Plant x+ = F x + G w, y = H x + v, s = L x.

    Attributes:
        F: n x n state matrix.
        G: n x q disturbance input.
        H: m x n observation map.
        L: p x n target-signal map.
        name: Label used in reports.
    """

    F: np.ndarray
    G: np.ndarray
    H: np.ndarray
    L: np.ndarray
    name: str = "model"

    def __post_init__(self):
        F = as_matrix(self.F, "F")
        n = F.shape[0]
        if F.shape[1] != n:
            raise DimensionMismatch("F must be square", f"got {F.shape}")
        G = as_matrix(self.G, "G", rows=n)
        H = as_matrix(self.H, "H", cols=n) if np.ndim(self.H) > 1 else as_matrix(
            self.H, "H", rows=1, cols=n
        )
        L = as_matrix(self.L, "L", cols=n) if np.ndim(self.L) > 1 else as_matrix(
            self.L, "L", rows=1, cols=n
        )
        for name, M in (("F", F), ("G", G), ("H", H), ("L", L)):
            if np.iscomplexobj(M):
                raise ValidationError(f"{name} must be real")
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "L", L)

    @property
    def n(self) -> int:
        return self.F.shape[0]

    @property
    def q(self) -> int:
        return self.G.shape[1]

    @property
    def m(self) -> int:
        return self.H.shape[0]

    @property
    def p(self) -> int:
        return self.L.shape[0]

    @property
    def dims(self) -> tuple[int, int, int, int]:
        """(n, q, m, p)"""
        return self.n, self.q, self.m, self.p

    @property
    def is_degenerate(self) -> bool:
        """Nothing to estimate: L = 0 or no disturbance enters the state."""
        return not np.any(self.L) or not np.any(self.G)

    def h_channel(self) -> "LtiFilter":
        """Strictly proper realization (F, G, H, 0) of H(z)."""
        return LtiFilter(self.F, self.G, self.H, np.zeros((self.m, self.q)), name="H")

    def l_channel(self) -> "LtiFilter":
        """Strictly proper realization (F, G, L, 0) of L(z)."""
        return LtiFilter(self.F, self.G, self.L, np.zeros((self.p, self.q)), name="L")

    def to_dict(self) -> dict:
        return {"name": self.name, "F": self.F, "G": self.G, "H": self.H, "L": self.L}


@dataclass(frozen=True)
class LtiFilter:
    """Discrete-time realization xi+ = A xi + B u, out = C xi + D u.

    A filter may have internal dimension 0 (a static gain).

    Attributes:
        A: d x d.
        B: d x m.
        C: p x d.
        D: p x m.
        name: Label used in reports.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    name: str = "filter"

    def __post_init__(self):
        D = np.atleast_2d(np.asarray(self.D))
        D = as_matrix(D, f"{self.name}.D")
        p, m = D.shape
        A = np.asarray(self.A)
        if A.size == 0:
            d = 0
            A = np.zeros((0, 0))
            B = np.zeros((0, m))
            C = np.zeros((p, 0))
        else:
            A = as_matrix(A, f"{self.name}.A")
            d = A.shape[0]
            if A.shape[1] != d:
                raise DimensionMismatch(f"{self.name}: A must be square", f"got {A.shape}")
            B = as_matrix(np.reshape(self.B, (d, m)) if np.size(self.B) == d * m else self.B,
                          f"{self.name}.B", rows=d, cols=m)
            C = as_matrix(np.reshape(self.C, (p, d)) if np.size(self.C) == p * d else self.C,
                          f"{self.name}.C", rows=p, cols=d)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "D", D)

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    @property
    def n_inputs(self) -> int:
        return self.D.shape[1]

    @property
    def n_outputs(self) -> int:
        return self.D.shape[0]

    @property
    def spectral_radius(self) -> float:
        return spectral_radius(self.A)

    def is_stable(self) -> bool:
        return self.spectral_radius < 1.0

    @classmethod
    def zero(cls, n_outputs: int, n_inputs: int, dim: int = 0, name: str = "zero") -> "LtiFilter":
        """Filter with identically zero output (A = 0 of the given dimension)."""
        return cls(
            np.zeros((dim, dim)),
            np.zeros((dim, n_inputs)),
            np.zeros((n_outputs, dim)),
            np.zeros((n_outputs, n_inputs)),
            name=name,
        )

    @classmethod
    def static(cls, D: np.ndarray, name: str = "static") -> "LtiFilter":
        D = np.atleast_2d(np.asarray(D, dtype=float))
        return cls.zero(D.shape[0], D.shape[1], name=name).with_feedthrough(D)

    def with_feedthrough(self, D: np.ndarray) -> "LtiFilter":
        return LtiFilter(self.A, self.B, self.C, D, name=self.name)

    def to_dict(self) -> dict:
        return {"name": self.name, "A": self.A, "B": self.B, "C": self.C, "D": self.D}

    @classmethod
    def from_dict(cls, data: dict) -> "LtiFilter":
        """Rebuild a filter from to_dict() output (after a JSON round trip)."""
        try:
            D = np.asarray(data["D"], dtype=float)
            A = np.asarray(data["A"], dtype=float)
            B = np.asarray(data["B"], dtype=float)
            C = np.asarray(data["C"], dtype=float)
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError("Malformed filter document", str(e)) from e
        return cls(A, B, C, D, name=data.get("name", "filter"))


@dataclass(frozen=True)
class TransferSample:
    """A transfer matrix evaluated at e^{jw}.

    Attributes:
        omega: Frequency in radians, reduced to [0, 2 pi).
        value: Complex matrix.
    """

    omega: float
    value: np.ndarray

    def __post_init__(self):
        value = np.atleast_2d(np.asarray(self.value, dtype=complex))
        if not np.all(np.isfinite(value)):
            raise ValidationError("Transfer sample is not finite", f"omega = {self.omega}")
        object.__setattr__(self, "omega", float(self.omega) % (2 * np.pi))
        object.__setattr__(self, "value", value)
