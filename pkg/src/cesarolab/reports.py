"""Report files for the CLI: one JSON document per run, a CSV companion
per table, and a rendered figure.

Reports embed the artifact version, the fully resolved configuration and
all error estimates, and contain no timestamps or machine state, so a
run with identical configuration and seed produces byte-identical files.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

ARTIFACT_NAME = "cesarolab"
ARTIFACT_VERSION = "0.1.0"


def jsonable(obj):
    """Coerce numpy scalars/arrays, tuples and dataclass-like maps to JSON types."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return jsonable(obj.item())
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, float) and not np.isfinite(obj):
        return repr(obj)
    return obj


def make_table(columns, rows) -> dict:
    return {"columns": list(columns), "rows": [list(map(jsonable, row)) for row in rows]}


def report_document(command: str, config: dict, results: dict, tables: dict | None = None,
                    policy: dict | None = None) -> dict:
    doc = {
        "artifact": {"name": ARTIFACT_NAME, "version": ARTIFACT_VERSION},
        "command": command,
        "config": jsonable(config),
        "results": jsonable(results),
        "tables": jsonable(tables or {}),
    }
    if policy:
        doc["policy"] = jsonable(policy)
    return doc


def write_report(doc: dict, out_path, figure: bool = True) -> list[Path]:
    """Write <out>.json, one <out>.<table>.csv per table and <out>.png."""
    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    paths = [out]
    out.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    stem = out.with_suffix("")
    for name, table in sorted(doc.get("tables", {}).items()):
        csv_path = stem.parent / f"{stem.name}.{name}.csv"
        with open(csv_path, "w", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(table["columns"])
            writer.writerows(table["rows"])
        paths.append(csv_path)
    if figure:
        fig = build_figure(doc)
        if fig is not None:
            png_path = stem.parent / f"{stem.name}.png"
            fig.savefig(png_path, dpi=150)
            plt.close(fig)
            paths.append(png_path)
    return paths


def _maybe_logy(ax, values):
    finite = [v for v in values if isinstance(v, (int, float)) and v > 0]
    if finite and max(finite) / min(finite) > 50.0:
        ax.set_yscale("log")


def build_figure(doc: dict):
    """Render the report's tables; returns None when there is nothing to plot."""
    command = doc.get("command")
    tables = doc.get("tables", {})

    if command in ("criterion", "compactness") and "statistic" in tables:
        n_axes = 2 if "probe" in tables else 1
        fig, axes = plt.subplots(1, n_axes, figsize=(5.5 * n_axes, 4.0))
        axes = np.atleast_1d(axes)
        rows = tables["statistic"]["rows"]
        radii = [r[0] for r in rows]
        values = [r[1] for r in rows]
        axes[0].plot(radii, values, "o-")
        axes[0].set_xlabel("radius")
        axes[0].set_ylabel("boundary statistic")
        trend = doc.get("results", {}).get("trend", "")
        axes[0].set_title(f"trend: {trend}" if trend else "boundary statistic")
        _maybe_logy(axes[0], values)
        axes[0].grid(True, alpha=0.3)
        if "probe" in tables:
            probe = tables["probe"]
            cols = probe["columns"]
            rows = probe["rows"]
            moduli = [r[cols.index("w_modulus")] for r in rows]
            for name in ("operator_norm", "lower_bound", "ratio"):
                if name in cols:
                    axes[1].plot(moduli, [r[cols.index(name)] for r in rows], "o-", label=name)
            axes[1].set_xlabel("|w|")
            axes[1].legend()
            axes[1].grid(True, alpha=0.3)
            _maybe_logy(axes[1], [r[cols.index("operator_norm")] for r in rows])
        fig.tight_layout()
        return fig

    if command == "norm" and "trace" in tables:
        fig, ax = plt.subplots(figsize=(5.5, 4.0))
        rows = tables["trace"]["rows"]
        ax.plot([r[0] for r in rows], [r[1] for r in rows], "o-")
        ax.set_xlabel("refinement level")
        ax.set_ylabel("sampled supremum")
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        return fig

    if command == "verify" and "checks" in tables:
        table = tables["checks"]
        cols = table["columns"]
        rows = table["rows"]
        fig, ax = plt.subplots(figsize=(6.5, 4.0))
        labels = [" ".join(str(v) for v in r[:-1]) for r in rows]
        values = [r[-1] for r in rows]
        ax.barh(range(len(rows)), values)
        ax.set_yticks(range(len(rows)))
        ax.set_yticklabels(labels, fontsize=7)
        ax.set_xlabel(cols[-1])
        if values and max(v for v in values if isinstance(v, (int, float))) > 0:
            ax.set_xscale("log")
        fig.tight_layout()
        return fig

    if command == "oracle" and "comparison" in tables:
        table = tables["comparison"]
        cols = table["columns"]
        rows = table["rows"]
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        rel = [r[cols.index("rel_deviation")] for r in rows]
        ax.plot(range(len(rel)), rel, "o")
        ax.set_xlabel("case index")
        ax.set_ylabel("relative deviation from closed form")
        if any(v > 0 for v in rel):
            ax.set_yscale("log")
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        return fig

    return None
