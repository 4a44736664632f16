"""Matplotlib figure rendering for CLI report paths.

Figures are written straight to files (Agg backend, no display) so the CLI
can drop a plot next to each delimited output.  Date-bearing metadata is
stripped where the format supports it, keeping repeated runs byte-stable.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .hamiltonian import PiecewiseHamiltonian, SampledHamiltonian

__all__ = [
    "save_figure",
    "hamiltonian_figure",
    "density_figure",
    "matrizant_figure",
    "residual_figure",
    "opuc_figure",
]


def save_figure(fig, path: str) -> None:
    """Write ``fig`` to ``path``, stripping run-dependent metadata."""
    lower = path.lower()
    metadata = None
    if lower.endswith(".svg"):
        metadata = {"Date": None}
    elif lower.endswith(".pdf"):
        metadata = {"CreationDate": None}
    fig.savefig(path, dpi=130, metadata=metadata)
    plt.close(fig)


def hamiltonian_figure(ham, path: str, title: str | None = None) -> None:
    """Plot the entries of a Hamiltonian (steps for piecewise, lines for sampled)."""
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    if isinstance(ham, PiecewiseHamiltonian):
        edges = [ham.blocks[0].t_lo] + [b.t_hi for b in ham.blocks]
        for key, style in (("h11", "-"), ("h12", "--"), ("h22", "-.")):
            vals = [getattr(b, key) for b in ham.blocks]
            ax.stairs(vals, edges, baseline=None, linestyle=style, label=key)
    elif isinstance(ham, SampledHamiltonian):
        t = np.asarray(ham.t)
        for key, style in (("h11", "-"), ("h12", "--"), ("h22", "-.")):
            ax.plot(t, np.asarray(getattr(ham, key)), style, label=key)
    else:
        raise TypeError(f"cannot plot {type(ham).__name__}")
    ax.set_xlabel("t")
    ax.set_ylabel("entry value")
    ax.legend(loc="best")
    ax.grid(True, alpha=0.3)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    save_figure(fig, path)


def density_figure(x, values, path: str, title: str | None = None) -> None:
    x = np.asarray(x, dtype=float)
    values = np.asarray(values, dtype=float)
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    ax.plot(x, values, "-")
    ax.set_xlabel("x")
    ax.set_ylabel("density")
    ax.grid(True, alpha=0.3)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    save_figure(fig, path)


def matrizant_figure(x, columns: dict, path: str, title: str | None = None) -> None:
    """Plot real parts of matrizant entries over a real sweep."""
    x = np.asarray(x, dtype=float)
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    for name, vals in columns.items():
        ax.plot(x, np.real(np.asarray(vals)), label=name)
    ax.set_xlabel("z (real axis)")
    ax.set_ylabel("entry value")
    ax.legend(loc="best")
    ax.grid(True, alpha=0.3)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    save_figure(fig, path)


def residual_figure(indices, residuals, tolerance: float, path: str) -> None:
    """Bar chart of moment residuals from a verification run."""
    indices = list(indices)
    residuals = np.asarray(residuals, dtype=float)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    floor = 1e-18
    ax.bar([str(k) for k in indices], np.maximum(residuals, floor), color="#4878a8")
    ax.axhline(tolerance, color="#b04030", linestyle="--", label="tolerance")
    ax.set_yscale("log")
    ax.set_xlabel("moment index")
    ax.set_ylabel("|estimate - reference|")
    ax.legend(loc="best")
    fig.tight_layout()
    save_figure(fig, path)


def opuc_figure(h_values, g_values, path: str) -> None:
    """Step-index plot of recovered diagonal and off-diagonal sequences."""
    n = np.arange(len(h_values))
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(n, np.asarray(h_values, dtype=float), "o-", label="h")
    if g_values is not None:
        ax.plot(n, np.asarray(g_values, dtype=float), "s--", label="g")
    ax.set_xlabel("step index")
    ax.set_ylabel("sequence value")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best")
    fig.tight_layout()
    save_figure(fig, path)
