"""Figures written next to CLI reports (Agg backend, PNG or any matplotlib format)."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_comparison(labels, computed, oracle, title, path, ylabel="value", log=False):
    """Computed values as bars, oracle values as markers, one slot per label."""
    fig, ax = plt.subplots(figsize=(max(4.0, 0.45 * len(labels) + 2), 3.2))
    pos = range(len(labels))
    ax.bar(pos, computed, color="#4c72b0", label="computed")
    ax.plot(pos, oracle, "o", color="#dd8452", label="oracle")
    ax.set_xticks(list(pos))
    ax.set_xticklabels(labels, rotation=60, ha="right", fontsize=8)
    ax.set_ylabel(ylabel)
    if log:
        ax.set_yscale("log")
    ax.set_title(title, fontsize=10)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_check_summary(results, path):
    """Checks per suite, split into passing and failing."""
    suites = sorted({r.suite for r in results})
    passed = [sum(1 for r in results if r.suite == s and r.ok) for s in suites]
    failed = [sum(1 for r in results if r.suite == s and not r.ok) for s in suites]
    fig, ax = plt.subplots(figsize=(5.5, 0.5 * len(suites) + 1.5))
    ax.barh(suites, passed, color="#55a868", label="pass")
    ax.barh(suites, failed, left=passed, color="#c44e52", label="fail")
    ax.set_xlabel("checks")
    ax.invert_yaxis()
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
