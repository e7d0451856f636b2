"""Report figures written next to the CSV output."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_theta_chain(n: int, thetas: Sequence[int], sizes: Sequence[int], lengths: Sequence[int],
                     path: str | Path) -> Path:
    """Lattice size (log scale) and maximal chain length against theta."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
    ax1.semilogy(thetas, sizes, "o-", color="C0")
    ax1.set_xlabel(r"$\theta$")
    ax1.set_ylabel(r"$|L(n,\theta)|$")
    ax1.invert_xaxis()
    ax2.plot(thetas, lengths, "s-", color="C1")
    ax2.set_xlabel(r"$\theta$")
    ax2.set_ylabel("maximal chain length")
    ax2.invert_xaxis()
    fig.suptitle(f"n = {n}")
    return _save(fig, path)


def plot_class_sizes(n: int, labels: Sequence[str], sizes: Sequence[int], path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(max(4, 0.6 * len(labels) + 2), 3.5))
    ax.bar(range(len(sizes)), sizes, color="C2")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=60, ha="right", fontsize=8)
    ax.set_ylabel("class size")
    ax.set_title(f"partitions of {n} grouped by SPM fixed point")
    return _save(fig, path)


def plot_verify_summary(suites: Sequence[str], passed: Sequence[int], failed: Sequence[int],
                        path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(max(4, 0.5 * len(suites) + 2), 3.5))
    x = range(len(suites))
    ax.bar(x, passed, color="C2", label="pass")
    ax.bar(x, failed, bottom=passed, color="C3", label="fail")
    ax.set_xticks(list(x))
    ax.set_xticklabels(suites, rotation=45, ha="right")
    ax.set_ylabel("checks")
    ax.legend()
    return _save(fig, path)
