"""Batch report output: a CSV table plus matplotlib web figures.

One row per input record; characteristic tensors additionally get a PNG
figure of their web (solid and dashed foliations, grey singular
boundaries, light-grey singular regions, mirroring the SVG renderer).
"""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import PathPatch
from matplotlib.path import Path as MplPath

from .classify import classify
from .core import KTParams
from .invariants import EuclideanInvariants
from .webs import NonCharacteristicError, WebRenderConfig, trace_web

CSV_COLUMNS = [
    "id", "metric", "A", "B", "C", "alpha", "beta", "gamma",
    "class", "web_name", "sc_labels", "gamma_inv", "delta",
    "z_plus", "z_minus", "rank", "characteristic", "is_zero",
    "singular_variant", "figure", "error",
]


def web_figure(doc, cfg: WebRenderConfig, title: str):
    fig, ax = plt.subplots(figsize=(5, 5))
    u0, u1, v0, v1 = cfg.box
    if doc.singular_regions:
        vertices = []
        codes = []
        for poly in doc.singular_regions:
            vertices.extend(poly + [poly[0]])
            codes.extend([MplPath.MOVETO] + [MplPath.LINETO] * (len(poly) - 1) + [MplPath.CLOSEPOLY])
        patch = PathPatch(
            MplPath(vertices, codes), facecolor="#d9d9d9", edgecolor="none", zorder=0
        )
        ax.add_patch(patch)
    for poly in doc.singular_boundaries:
        ax.plot(*zip(*poly), color="#808080", linewidth=1.6, zorder=1)
    for poly in doc.foliation_solid:
        ax.plot(*zip(*poly), color="#1f3b70", linewidth=0.9, zorder=2)
    for poly in doc.foliation_dashed:
        ax.plot(*zip(*poly), color="#8c2d2d", linewidth=0.9, linestyle="--", zorder=2)
    ax.set_xlim(u0, u1)
    ax.set_ylim(v0, v1)
    ax.set_aspect("equal")
    ax.set_title(title)
    fig.tight_layout()
    return fig


def write_report_files(
    records: list[tuple[str | None, KTParams | None]],
    outdir: str,
    cfg: WebRenderConfig | None = None,
) -> list[str]:
    """Write reports.csv and one PNG per characteristic record.

    ``records`` holds (id, tensor) pairs; a None tensor marks a record
    that failed to parse (its id carries the error text).  Returns the
    paths written.
    """
    cfg = cfg or WebRenderConfig()
    os.makedirs(outdir, exist_ok=True)
    csv_path = os.path.join(outdir, "reports.csv")
    written = [csv_path]
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for index, (rid, k) in enumerate(records):
            name = rid if rid else f"record{index}"
            if k is None:
                writer.writerow({"id": name, "error": rid or "parse error"})
                continue
            rep = classify(k)
            inv = rep.invariants
            row = {
                "id": name,
                "metric": k.signature.value,
                "A": str(k.A), "B": str(k.B), "C": str(k.C),
                "alpha": str(k.alpha), "beta": str(k.beta), "gamma": str(k.gamma),
                "class": rep.orbit.label,
                "web_name": rep.orbit.web_name,
                "sc_labels": ";".join(rep.orbit.sc_labels),
                "gamma_inv": str(inv.gamma),
                "rank": rep.rank,
                "characteristic": rep.orbit.characteristic,
                "is_zero": rep.is_zero,
                "singular_variant": rep.singular_set.variant.value,
                "figure": "",
                "error": "",
            }
            if isinstance(inv, EuclideanInvariants):
                row["delta"] = str(inv.delta)
            else:
                row["z_plus"] = str(inv.z_plus)
                row["z_minus"] = str(inv.z_minus)
            if rep.orbit.characteristic:
                try:
                    doc = trace_web(k, cfg)
                except NonCharacteristicError:
                    doc = None
                if doc is not None:
                    fig = web_figure(
                        doc, cfg, f"{rep.orbit.label}: {rep.orbit.web_name}"
                    )
                    png_path = os.path.join(outdir, f"{name}_web.png")
                    fig.savefig(png_path, dpi=150)
                    plt.close(fig)
                    row["figure"] = os.path.basename(png_path)
                    written.append(png_path)
            writer.writerow(row)
    return written
