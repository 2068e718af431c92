"""Figure rendering for the CLI report path.

Figures are written next to the JSON output when a directory is supplied;
everything uses the Agg backend so headless runs work.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .polymat import PolyMatrix  # noqa: E402
from .ybe import SetSolution  # noqa: E402


def solution_tables(sol: SetSolution, outdir: str, stem: str = "solution") -> str:
    """Render the sigma and tau lookup tables as annotated heatmaps."""
    os.makedirs(outdir, exist_ok=True)
    fig, axes = plt.subplots(1, 2, figsize=(7, 3.2))
    for ax, table, title in ((axes[0], sol.sigma, "sigma_x(y)"),
                             (axes[1], sol.tau, "tau_y(x)")):
        ax.imshow(table, cmap="viridis", vmin=0, vmax=sol.n - 1)
        for i in range(sol.n):
            for j in range(sol.n):
                ax.text(j, i, str(table[i][j]), ha="center", va="center",
                        color="white", fontsize=8)
        ax.set_title(title)
        ax.set_xticks(range(sol.n))
        ax.set_yticks(range(sol.n))
    fig.tight_layout()
    path = os.path.join(outdir, f"{stem}_tables.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def matrix_sparsity(m: PolyMatrix, outdir: str, stem: str = "matrix") -> str:
    """Nonzero pattern of an exact matrix (marker size fixed, no values)."""
    os.makedirs(outdir, exist_ok=True)
    rows = [r for r, _ in m.entries]
    cols = [c for _, c in m.entries]
    fig, ax = plt.subplots(figsize=(4, 4))
    ax.scatter(cols, rows, marker="s", s=max(4, 400 // m.dim), c="black")
    ax.set_xlim(-0.5, m.dim - 0.5)
    ax.set_ylim(m.dim - 0.5, -0.5)
    ax.set_aspect("equal")
    ax.set_title(f"support ({len(m.entries)} of {m.dim}^2)")
    fig.tight_layout()
    path = os.path.join(outdir, f"{stem}_sparsity.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def brace_tables(add, mul, outdir: str, stem: str = "structure") -> str:
    """Addition and multiplication Cayley tables side by side."""
    os.makedirs(outdir, exist_ok=True)
    n = len(add)
    fig, axes = plt.subplots(1, 2, figsize=(7, 3.2))
    for ax, table, title in ((axes[0], add, "a + b"), (axes[1], mul, "a o b")):
        ax.imshow(table, cmap="magma", vmin=0, vmax=n - 1)
        for i in range(n):
            for j in range(n):
                ax.text(j, i, str(table[i][j]), ha="center", va="center",
                        color="white", fontsize=8)
        ax.set_title(title)
        ax.set_xticks(range(n))
        ax.set_yticks(range(n))
    fig.tight_layout()
    path = os.path.join(outdir, f"{stem}_tables.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
