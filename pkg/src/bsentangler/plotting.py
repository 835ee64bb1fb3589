"""SVG line plots of sweep outputs, drawn only from the CSV data."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .sweep import OUTPUT_COLUMNS, read_csv  # noqa: E402

_LABELS = {
    "concurrence_closed_form": "concurrence (closed form)",
    "concurrence_analytic": "concurrence (branch formula)",
    "concurrence_exact": "concurrence (exact, oracle)",
    "success_probability": "success probability",
    "success_probability_over_R2": r"success probability / $R^2$",
    "infidelity": "infidelity exact vs analytic",
    "collapse_infidelity": "infidelity of operator collapse",
}


def _float(s: str) -> float:
    return float(s) if s not in ("", "nan") else float("nan")


def plot_csv(csv_path: str | Path, svg_path: str | Path | None = None) -> Path:
    """Plot every output column of a sweep CSV against the swept parameter.

    One panel per output. The SVG is written with fixed metadata and hash salt
    so identical data gives identical bytes.
    """
    csv_path = Path(csv_path)
    svg_path = Path(svg_path) if svg_path is not None else csv_path.with_suffix(".svg")
    _, rows = read_csv(csv_path)
    if not rows:
        raise ValueError(f"{csv_path}: no data rows")
    param = rows[0]["sweep_parameter"] or "point"
    x = [_float(r["sweep_value"]) if r["sweep_value"] else i for i, r in enumerate(rows)]
    outputs = [c for c in OUTPUT_COLUMNS if c in rows[0]]

    with plt.rc_context({"svg.hashsalt": "bsentangler", "font.size": 9}):
        fig, axes = plt.subplots(len(outputs), 1, figsize=(5.5, 1.9 * len(outputs) + 0.6),
                                 sharex=True, squeeze=False)
        for ax, col in zip(axes[:, 0], outputs):
            y = [_float(r[col]) for r in rows]
            ax.plot(x, y, marker="o", ms=3, lw=1.2)
            ax.set_ylabel(_LABELS[col], fontsize=8)
            if "infidelity" in col and all(v > 0 for v in y):
                ax.set_yscale("log")
            ax.grid(alpha=0.3)
        axes[-1, 0].set_xlabel(param)
        fig.suptitle(f"{rows[0]['example']} sweep over {param}")
        fig.tight_layout()
        fig.savefig(svg_path, format="svg", metadata={"Date": None})
        plt.close(fig)
    return svg_path
