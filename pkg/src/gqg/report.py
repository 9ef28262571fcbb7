"""Report rendering: Dynkin-diagram figures and verification summaries as
PNG files next to tab-delimited tables of the underlying data."""
from __future__ import annotations

import csv
import json
import os
from math import cos, pi, sin

from .bihom import BiHom, FamilySpec, dynkin_diagram
from .groupoid import root_system


def _positions(diagram):
    """Vertices on a line when the graph is a path, otherwise on a circle."""
    n = diagram.rank
    if diagram.is_path() or n == 1:
        if n == 1:
            return {0: (0.0, 0.0)}
        start = next(i for i in range(n) if len(diagram.neighbors(i)) <= 1)
        order = [start]
        while len(order) < n:
            nxt = [j for j in diagram.neighbors(order[-1]) if j not in order]
            if not nxt:
                break
            order.append(nxt[0])
        if len(order) == n:
            return {v: (float(k), 0.0) for k, v in enumerate(order)}
    return {v: (cos(2 * pi * v / n), sin(2 * pi * v / n)) for v in range(n)}


def render_dynkin(chi: BiHom, path: str, title: str = "") -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    diagram = dynkin_diagram(chi)
    pos = _positions(diagram)
    fig, ax = plt.subplots(figsize=(1.8 * max(2, diagram.rank), 2.4))
    for a, b, lab in diagram.edges:
        (xa, ya), (xb, yb) = pos[a], pos[b]
        ax.plot([xa, xb], [ya, yb], color="black", lw=1.2, zorder=1)
        ax.annotate(lab.to_text(), ((xa + xb) / 2, (ya + yb) / 2 + 0.08),
                    ha="center", fontsize=9, color="dimgray")
    for v, (x, y) in pos.items():
        ax.scatter([x], [y], s=420, facecolor="white", edgecolor="black", zorder=2)
        ax.annotate(diagram.vertex_labels[v].to_text(), (x, y),
                    ha="center", va="center", fontsize=8, zorder=3)
        ax.annotate(f"$\\alpha_{{{v + 1}}}$", (x, y - 0.28),
                    ha="center", fontsize=9)
    ax.set_axis_off()
    if title:
        ax.set_title(title)
    ax.margins(0.25)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_verification(report, path: str, title: str = "") -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    non_members = report.evaluated - report.members
    labels = ["members", "non-members", "mismatches"]
    values = [report.members, non_members, len(report.mismatches)]
    colors = ["#4c72b0", "#999999", "#c44e52"]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    bars = ax.bar(labels, values, color=colors)
    for bar, v in zip(bars, values):
        ax.annotate(str(v), (bar.get_x() + bar.get_width() / 2, bar.get_height()),
                    ha="center", va="bottom", fontsize=9)
    ax.set_ylabel("weights")
    ax.set_title(title or "closed form vs reflection algorithm")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_roots_tsv(chi: BiHom, path: str) -> None:
    rs = root_system(chi)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(["position", "letter"]
                   + [f"coeff_alpha_{i + 1}" for i in range(chi.rank)])
        for t, (letter, root) in enumerate(zip(rs.word.letters,
                                               rs.positive_roots), start=1):
            w.writerow([t, letter + 1] + list(root))


def write_verification_tsv(results, path: str) -> None:
    """One row per evaluated weight: the kappa-vector, both verdicts, branch."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(["lambda", "in_s_prime", "z", "branch",
                    "closed_form", "algorithm", "agree"])
        for lam, rep, fd in results:
            w.writerow([";".join(x.to_text() for x in lam),
                        int(rep.in_s_prime),
                        "" if rep.z is None else rep.z,
                        rep.branch or "",
                        int(rep.member), int(fd), int(rep.member == fd)])


def run_report(spec: FamilySpec, chi: BiHom, bound: int, outdir: str,
               jobs: int = 1) -> dict:
    """Render the family's diagram and verification artifacts into outdir."""
    from .classify import run_grid, summarize_grid

    os.makedirs(outdir, exist_ok=True)
    tag = f"family{spec.family}"
    if spec.m is not None:
        tag += f"_N{spec.rank}_m{spec.m}"
    elif spec.family in (2, 3, 4, 5):
        tag += f"_N{spec.rank}"

    files = {}
    dyn_png = os.path.join(outdir, f"dynkin_{tag}.png")
    render_dynkin(chi, dyn_png, title=f"family {spec.family}")
    files["dynkin_png"] = dyn_png

    roots_tsv = os.path.join(outdir, f"roots_{tag}.tsv")
    write_roots_tsv(chi, roots_tsv)
    files["roots_tsv"] = roots_tsv

    results = run_grid(spec, bound, jobs=jobs)
    verify_tsv = os.path.join(outdir, f"verify_{tag}.tsv")
    write_verification_tsv(results, verify_tsv)
    files["verify_tsv"] = verify_tsv

    report = summarize_grid(spec, bound, results)
    verify_png = os.path.join(outdir, f"verify_{tag}.png")
    render_verification(report, verify_png,
                        title=f"family {spec.family}, bound {bound}")
    files["verify_png"] = verify_png

    summary = {"files": files, "verification": report.to_json()}
    with open(os.path.join(outdir, f"report_{tag}.json"), "w") as fh:
        json.dump(summary, fh, sort_keys=True, indent=2)
        fh.write("\n")
    files["summary_json"] = os.path.join(outdir, f"report_{tag}.json")
    return summary
