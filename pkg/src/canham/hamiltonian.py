"""Piecewise-constant and sampled 2x2 Hamiltonians, with their CSV formats.

A canonical system is determined by a symmetric positive matrix function
``H(t) = [[h11, h12], [h12, h22]]``.  The periodic inverse solver emits
piecewise-constant blocks (CSV header ``t_lo,t_hi,h11,h12,h22``); the
soliton solver emits samples on a grid (header ``t,h11,h12,h22``).  Floats
are written with 17 significant digits so files round-trip exactly.
"""

from __future__ import annotations

import csv
import io
import os
import tempfile
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

__all__ = [
    "HamiltonianBlock",
    "PiecewiseHamiltonian",
    "SampledHamiltonian",
    "read_hamiltonian_csv",
    "write_text_atomic",
]

_FMT = "%.17g"


@dataclass(frozen=True)
class HamiltonianBlock:
    t_lo: float
    t_hi: float
    h11: float
    h12: float
    h22: float

    def __post_init__(self):
        if not self.t_hi > self.t_lo:
            raise ValidationError(
                f"block ({self.t_lo}, {self.t_hi}) has nonpositive length"
            )
        if self.h11 <= 0.0 or self.h22 <= 0.0 or self.det <= 0.0:
            raise ValidationError(
                f"block on ({self.t_lo}, {self.t_hi}) is not positive definite: "
                f"h11={self.h11}, h12={self.h12}, h22={self.h22}"
            )

    @property
    def det(self) -> float:
        return self.h11 * self.h22 - self.h12**2

    @property
    def length(self) -> float:
        return self.t_hi - self.t_lo

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.h11, self.h12], [self.h12, self.h22]])


@dataclass(frozen=True)
class PiecewiseHamiltonian:
    """Contiguous positive-definite blocks starting at t = 0."""

    blocks: tuple[HamiltonianBlock, ...]

    def __post_init__(self):
        blocks = tuple(
            b if isinstance(b, HamiltonianBlock) else HamiltonianBlock(*b)
            for b in self.blocks
        )
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            raise ValidationError("Hamiltonian needs at least one block")
        if abs(blocks[0].t_lo) > 1e-12:
            raise ValidationError("first block must start at t = 0")
        for prev, nxt in zip(blocks, blocks[1:]):
            if abs(nxt.t_lo - prev.t_hi) > 1e-12:
                raise ValidationError(
                    f"gap between blocks at t = {prev.t_hi} vs {nxt.t_lo}"
                )

    @property
    def total_time(self) -> float:
        return self.blocks[-1].t_hi

    def is_det_normalized(self, tol: float = 1e-12) -> bool:
        return all(abs(b.det - 1.0) <= tol for b in self.blocks)

    def block_at(self, t: float) -> HamiltonianBlock:
        """Block whose half-open interval contains ``t`` (endpoint-tolerant)."""
        if t < -1e-12 or t > self.total_time + 1e-12:
            raise ValidationError(
                f"time {t} outside Hamiltonian coverage [0, {self.total_time}]"
            )
        for b in self.blocks:
            if t < b.t_hi:
                return b
        return self.blocks[-1]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t_lo", "t_hi", "h11", "h12", "h22"])
        for b in self.blocks:
            w.writerow(_FMT % v for v in (b.t_lo, b.t_hi, b.h11, b.h12, b.h22))
        return buf.getvalue()

    def write_csv(self, path: str) -> None:
        write_text_atomic(path, self.to_csv())

    @classmethod
    def from_csv(cls, text_or_path: str) -> "PiecewiseHamiltonian":
        text = _slurp(text_or_path)
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0] != ["t_lo", "t_hi", "h11", "h12", "h22"]:
            raise ValidationError(
                "expected CSV header 't_lo,t_hi,h11,h12,h22'"
            )
        blocks = []
        for i, row in enumerate(rows[1:], start=2):
            if not row:
                continue
            if len(row) != 5:
                raise ValidationError(f"line {i}: expected 5 fields, got {len(row)}")
            try:
                vals = [float(v) for v in row]
            except ValueError as exc:
                raise ValidationError(f"line {i}: {exc}") from None
            blocks.append(HamiltonianBlock(*vals))
        return cls(tuple(blocks))


@dataclass(frozen=True)
class SampledHamiltonian:
    """Hamiltonian entries sampled on a strictly increasing time grid."""

    t: np.ndarray
    h11: np.ndarray
    h12: np.ndarray
    h22: np.ndarray

    def __post_init__(self):
        for name in ("t", "h11", "h12", "h22"):
            object.__setattr__(
                self, name, np.asarray(getattr(self, name), dtype=float)
            )
        n = self.t.size
        if any(getattr(self, k).size != n for k in ("h11", "h12", "h22")):
            raise ValidationError("sample columns have mismatched lengths")
        if n and np.any(np.diff(self.t) <= 0):
            raise ValidationError("sample times must be strictly increasing")
        if np.any(self.h11 <= 0) or np.any(self.h11 * self.h22 - self.h12**2 <= 0):
            raise ValidationError("sampled Hamiltonian must be positive definite")

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "h11", "h12", "h22"])
        for row in zip(self.t, self.h11, self.h12, self.h22):
            w.writerow(_FMT % v for v in row)
        return buf.getvalue()

    def write_csv(self, path: str) -> None:
        write_text_atomic(path, self.to_csv())

    def as_piecewise(self) -> "PiecewiseHamiltonian":
        """Step approximation suitable for transfer-matrix propagation.

        Each interval between consecutive samples becomes a constant block
        with trapezoid-averaged ``h11`` and ``h12``; ``h22`` is recomputed as
        ``(1 + h12^2)/h11`` so every block keeps determinant one, matching
        the gauge in which sampled chains are produced.  A grid that starts
        after 0 is extended to 0 with its first sample.
        """
        if self.t.size < 2:
            raise ValidationError("need at least two samples to form blocks")
        blocks = []
        if self.t[0] > 1e-12:
            h11, h12 = self.h11[0], self.h12[0]
            blocks.append(
                HamiltonianBlock(0.0, self.t[0], h11, h12, (1.0 + h12**2) / h11)
            )
        elif self.t[0] < -1e-12:
            raise ValidationError("sample times must not be negative")
        for i in range(self.t.size - 1):
            h11 = 0.5 * (self.h11[i] + self.h11[i + 1])
            h12 = 0.5 * (self.h12[i] + self.h12[i + 1])
            blocks.append(
                HamiltonianBlock(
                    self.t[i] if i or blocks else 0.0,
                    self.t[i + 1],
                    h11,
                    h12,
                    (1.0 + h12**2) / h11,
                )
            )
        return PiecewiseHamiltonian(tuple(blocks))

    @classmethod
    def from_csv(cls, text_or_path: str) -> "SampledHamiltonian":
        text = _slurp(text_or_path)
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0] != ["t", "h11", "h12", "h22"]:
            raise ValidationError("expected CSV header 't,h11,h12,h22'")
        data = []
        for i, row in enumerate(rows[1:], start=2):
            if not row:
                continue
            if len(row) != 4:
                raise ValidationError(f"line {i}: expected 4 fields, got {len(row)}")
            try:
                data.append([float(v) for v in row])
            except ValueError as exc:
                raise ValidationError(f"line {i}: {exc}") from None
        arr = np.array(data, dtype=float).reshape(-1, 4)
        return cls(arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3])


def _slurp(text_or_path: str) -> str:
    if "\n" in text_or_path:
        return text_or_path
    if os.path.exists(text_or_path):
        with open(text_or_path, encoding="utf-8") as fh:
            return fh.read()
    raise ValidationError(f"no such file: {text_or_path}")


def read_hamiltonian_csv(text_or_path: str):
    """Load either Hamiltonian CSV flavour, dispatching on the header row."""
    text = _slurp(text_or_path)
    first = text.split("\n", 1)[0].strip()
    if first == "t_lo,t_hi,h11,h12,h22":
        return PiecewiseHamiltonian.from_csv(text)
    if first == "t,h11,h12,h22":
        return SampledHamiltonian.from_csv(text)
    raise ValidationError(
        f"unrecognised Hamiltonian CSV header {first!r}; expected "
        "'t_lo,t_hi,h11,h12,h22' (piecewise) or 't,h11,h12,h22' (sampled)"
    )


def write_text_atomic(path: str, text: str) -> None:
    """Write via a temporary file and rename, so readers never see partials."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
