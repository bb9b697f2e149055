"""Scalar model parameters and the derived quantities used throughout.

``EconomyParams`` bundles the seven primitives: per-period separation
probability ``lam``, per-period investment-shock (vacancy) probability ``v``,
vacancy cost ``c``, sunk-cost fraction ``kappa``, productivity ``y``, labor
supply elasticity parameter ``b``, and worker population ``H``.  Derived:

* ``psi  = 1 - lam + v*lam``  — survival-adjusted hiring surplus weight,
* ``phi_cost = c*(v + kappa - v*kappa)`` — expected per-hire cost burden,
* ``theta(k) = 1 - (1-v)**k`` — probability at least one of k neighbors is open.

``lam`` and ``v`` are accepted on the closed interval [0, 1]; the analytic
steady state additionally requires both to be positive and raises where that
matters (simulation edge cases like ``lam=0`` remain representable).
"""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass

import numpy as np

#: JSON keys accepted in a parameter file, mapped to field names.
_JSON_KEYS = {
    "lambda": "lam",
    "v": "v",
    "c": "c",
    "kappa": "kappa",
    "y": "y",
    "b": "b",
    "H": "H",
}

#: Optional solver keys a parameter file may carry alongside the primitives.
OPTIONAL_KEYS = ("w", "tol", "max_iter", "damping")


@dataclass(frozen=True)
class EconomyParams:
    lam: float
    v: float
    c: float
    kappa: float
    y: float
    b: float
    H: int

    def __post_init__(self):
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"lambda must lie in [0, 1], got {self.lam}")
        if not 0.0 <= self.v <= 1.0:
            raise ValueError(f"v must lie in [0, 1], got {self.v}")
        if not 0.0 < self.c < 1.0:
            raise ValueError(f"c must lie in (0, 1), got {self.c}")
        if not 0.0 <= self.kappa <= 1.0:
            raise ValueError(f"kappa must lie in [0, 1], got {self.kappa}")
        if self.y <= 0.0:
            raise ValueError(f"y must be positive, got {self.y}")
        if self.b <= 0.0:
            raise ValueError(f"b must be positive, got {self.b}")
        if int(self.H) != self.H or self.H < 1:
            raise ValueError(f"H must be a positive integer, got {self.H}")
        object.__setattr__(self, "H", int(self.H))

    @property
    def psi(self) -> float:
        return 1.0 - self.lam + self.v * self.lam

    @property
    def phi_cost(self) -> float:
        return self.c * (self.v + self.kappa - self.v * self.kappa)

    def theta(self, k):
        """P(at least one of k neighbors is open); accepts scalar or array, real k > 0."""
        k = np.asarray(k, dtype=float)
        if np.any(k <= 0):
            raise ValueError("theta requires k > 0")
        if self.v >= 1.0:
            out = np.ones_like(k)
        elif self.v <= 0.0:
            out = np.zeros_like(k)
        else:
            # 1-(1-v)^k via expm1/log1p: accurate for small v and large real k
            out = -np.expm1(k * np.log1p(-self.v))
        return float(out) if out.ndim == 0 else out

    def replace(self, **changes) -> "EconomyParams":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "v": self.v,
            "c": self.c,
            "kappa": self.kappa,
            "y": self.y,
            "b": self.b,
            "H": self.H,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EconomyParams":
        missing = [k for k in _JSON_KEYS if k not in d]
        if missing:
            raise ValueError(f"parameter file missing keys: {', '.join(missing)}")
        kwargs = {field: d[key] for key, field in _JSON_KEYS.items()}
        return cls(**kwargs)


def load_params(path) -> tuple[EconomyParams, dict]:
    """Read a parameter JSON file.

    Returns the ``EconomyParams`` plus a dict of any optional entries present
    (``w``, ``tol``, ``max_iter``, ``damping``).
    """
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("parameter file must contain a JSON object")
    unknown = sorted(set(data) - set(_JSON_KEYS) - set(OPTIONAL_KEYS))
    if unknown:
        raise ValueError(f"unrecognized parameter keys: {', '.join(unknown)}")
    params = EconomyParams.from_dict(data)
    extras = {k: data[k] for k in OPTIONAL_KEYS if k in data}
    return params, extras


def save_params(params: EconomyParams, path, **extras) -> None:
    data = params.to_dict()
    for key, value in extras.items():
        if value is not None:
            data[key] = value
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
