"""JSON/CSV serialization of matrices and verification reports."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .numerics import PhasekitError


@dataclass
class MatrixFile:
    """A complex matrix plus the parameters it was built from.

    JSON layout: ``{"kind", "params", "rows", "cols", "data": [[re, im], ...]}``
    with ``data`` row-major.  Floats are written with ``repr``, the shortest
    string that parses back to the same double, so a round trip is bit-exact.
    """

    kind: str
    params: dict
    matrix: np.ndarray

    @property
    def rows(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def cols(self) -> int:
        return int(self.matrix.shape[1])

    def to_dict(self) -> dict:
        flat = np.asarray(self.matrix, dtype=np.complex128).reshape(-1)
        return {
            "kind": self.kind,
            "params": {k: _plain(v) for k, v in self.params.items()},
            "rows": self.rows,
            "cols": self.cols,
            "data": [[float(z.real), float(z.imag)] for z in flat],
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "MatrixFile":
        try:
            rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
            kind = str(obj["kind"])
        except (KeyError, TypeError, ValueError) as exc:
            raise PhasekitError(f"malformed matrix file: {exc}") from exc
        if len(data) != rows * cols:
            raise PhasekitError(f"data has {len(data)} entries, expected {rows * cols}")
        arr = np.array(data, dtype=np.float64).reshape(rows * cols, 2)
        # assign the parts separately: re + 1j*im would drop the sign of -0.0
        m = np.empty(rows * cols, dtype=np.complex128)
        m.real, m.imag = arr[:, 0], arr[:, 1]
        m = m.reshape(rows, cols)
        return cls(kind, dict(obj.get("params", {})), m)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_csv(self) -> str:
        return "\n".join(",".join(format_complex(z) for z in row) for row in self.matrix) + "\n"


def _plain(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


def format_complex(z: complex) -> str:
    """``re+imi`` with shortest round-trip floats, e.g. ``0.5-0.25i``."""
    re, im = float(z.real), float(z.imag)
    im_s = repr(im)
    if not im_s.startswith("-"):
        im_s = "+" + im_s
    return f"{re!r}{im_s}i"


def parse_complex(s: str) -> complex:
    s = s.strip()
    if not s.endswith("i"):
        raise PhasekitError(f"not a complex cell: {s!r}")
    body = s[:-1]
    # split at the sign that starts the imaginary part (skip exponent signs)
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "eE":
            return complex(float(body[:k]), float(body[k:]))
    raise PhasekitError(f"not a complex cell: {s!r}")


def read_csv(text: str) -> np.ndarray:
    rows = [line.split(",") for line in text.strip().splitlines() if line and not line.startswith("#")]
    return np.array([[parse_complex(c) for c in row] for row in rows], dtype=np.complex128)


def write_matrices(path: str, files: list[MatrixFile], fmt: str = "json"):
    """One matrix -> a single JSON object; several -> a JSON array.

    CSV output concatenates the blocks, each headed by a ``# kind`` line.
    """
    with open(path, "w") as fh:
        fh.write(dumps_matrices(files, fmt))


def dumps_matrices(files: list[MatrixFile], fmt: str = "json") -> str:
    if fmt == "json":
        if len(files) == 1:
            return files[0].to_json() + "\n"
        return json.dumps([f.to_dict() for f in files]) + "\n"
    if fmt == "csv":
        if len(files) == 1:
            return files[0].to_csv()
        return "".join(f"# {f.kind}\n{f.to_csv()}" for f in files)
    raise PhasekitError(f"unknown format {fmt!r}")


def read_matrices(path: str) -> list[MatrixFile]:
    with open(path) as fh:
        obj = json.load(fh)
    if isinstance(obj, list):
        return [MatrixFile.from_dict(o) for o in obj]
    return [MatrixFile.from_dict(obj)]


# ------------------------------------------------------------------ reports


@dataclass
class Check:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        # NaN residuals fail
        return bool(self.residual < self.tolerance)

    def to_dict(self) -> dict:
        res = self.residual
        return {
            "name": self.name,
            "residual": res if math.isfinite(res) else str(res),
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


@dataclass
class VerifyReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, residual: float, tolerance: float) -> Check:
        c = Check(name, float(residual), float(tolerance))
        self.checks.append(c)
        return c

    def add_flag(self, name: str, ok: bool) -> Check:
        """A boolean condition, recorded as residual 0 (true) or 1 (false) against 0.5."""
        return self.add(name, 0.0 if ok else 1.0, 0.5)

    def extend(self, other: "VerifyReport", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.residual, c.tolerance))

    @property
    def overall_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "checks": [c.to_dict() for c in self.checks],
            "overall_pass": self.overall_pass,
        }
