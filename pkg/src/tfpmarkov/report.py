"""Tab-separated acceptance table and figures for ``tfpm repro``.

Only deterministic quantities go into the files (no timings), so repeated
runs give identical bytes.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from . import reference, tfp  # noqa: E402


def format_table(results) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="\t", lineterminator="\n")
    w.writerow(["criterion", "quantity", "expected", "computed", "status"])
    for r in results:
        for name, want, got in r.rows:
            w.writerow([r.number, name, want, got, "ok" if want == got or got == "True" else "FAIL"])
        for note in r.notes:
            w.writerow([r.number, "note", "", note, ""])
    return buf.getvalue()


def write_table(path, results) -> str:
    text = format_table(results)
    Path(path).write_text(text)
    return text


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def write_figures(out: Path, Ns=(1, 2, 3, 4)) -> list[Path]:
    out = Path(out)
    paths = []
    # degree distribution of glues (|g+| + |xi| over lift tuples) against the bound
    fig, axes = plt.subplots(1, len(Ns), figsize=(3.2 * len(Ns), 3), sharey=False)
    for ax, N in zip(axes, Ns):
        stats = tfp.glue_degree_stats(N)
        ax.bar(list(stats), list(stats.values()), color="tab:blue")
        ax.axvline(tfp.degree_bound(N), color="tab:red", ls="--", label="min(4+2N, 12)")
        ax.set_title(f"N = {N}")
        ax.set_xlabel("glue degree bound")
        ax.set_yscale("log")
    axes[0].set_ylabel("lift tuples")
    axes[0].legend(fontsize=7)
    paths.append(_save(fig, out / "glue_degrees.png"))

    # Markov degree per N: computed values against the general bound
    fig, ax = plt.subplots(figsize=(4, 3))
    xs = list(range(1, 9))
    ax.plot(xs, [tfp.degree_bound(n) for n in xs], "o-", color="tab:red", label="bound min(4+2N, 12)")
    known = sorted(reference.MARKOV_DEGREES_K3N.items())
    ax.plot([n for n, _ in known], [d for _, d in known], "s-", color="tab:blue", label="Markov degree")
    ax.set_xlabel("N")
    ax.set_ylabel("degree")
    ax.legend(fontsize=7)
    paths.append(_save(fig, out / "markov_degrees.png"))

    # lift counts and degrees per listed projected move
    fig, ax = plt.subplots(figsize=(5, 3))
    labels, counts = [], {}
    for k, g in enumerate(reference.LIFTS):
        labels.append(f"g{k + 1}")
        for l in tfp.lifts(g):
            counts.setdefault(l.degree, [0] * len(reference.LIFTS))[k] += 1
    bottom = [0] * len(labels)
    for d in sorted(counts):
        ax.bar(labels, counts[d], bottom=bottom, label=f"degree {d}")
        bottom = [a + b for a, b in zip(bottom, counts[d])]
    ax.set_ylabel("lifts")
    ax.legend(fontsize=7)
    paths.append(_save(fig, out / "lift_counts.png"))
    return paths
