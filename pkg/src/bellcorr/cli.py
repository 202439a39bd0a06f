"""Command-line front end: figure tables as CSV or SVG, and the verify suite."""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from . import sweeps, verify

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

U64_MAX = 2**64 - 1


@dataclass(frozen=True)
class SweepConfig:
    samples: int = 200
    t: float = sweeps.T_MAX
    theta_steps: int = 181
    n_copies: tuple[int, ...] = (1, 5, 10, 100)
    output_path: str | None = None
    format: str = "csv"
    seed: int = verify.DEFAULT_SEED


# ----------------------------------------------------------------- writers


def format_csv(table: sweeps.Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([f"{v:.12g}" for v in row])
    return buf.getvalue()


PANEL_W, PANEL_H = 560, 360
MARGIN = 60
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _panel_svg(x_name, x, series, origin_y) -> list[str]:
    ys = np.concatenate([y for _, y in series])
    x0, x1 = float(x.min()), float(x.max())
    y0, y1 = float(ys.min()), float(ys.max())
    if y1 - y0 < 1e-12:
        y0, y1 = y0 - 0.5, y1 + 0.5
    left, top = MARGIN, origin_y + 20
    w, h = PANEL_W - 2 * MARGIN, PANEL_H - 2 * MARGIN

    def px(v):
        return left + (v - x0) / (x1 - x0) * w

    def py(v):
        return top + h - (v - y0) / (y1 - y0) * h

    out = [f'<rect x="{left}" y="{top}" width="{w}" height="{h}" fill="none" stroke="black"/>']
    for val, anchor in ((x0, "start"), (x1, "end")):
        out.append(f'<text x="{px(val):.2f}" y="{top + h + 16}" font-size="11" text-anchor="{anchor}">{val:.4g}</text>')
    for val in (y0, y1):
        out.append(f'<text x="{left - 6}" y="{py(val) + 4:.2f}" font-size="11" text-anchor="end">{val:.4g}</text>')
    out.append(f'<text class="x-label" x="{left + w / 2}" y="{top + h + 36}" font-size="13" text-anchor="middle">{escape(x_name)}</text>')
    y_label = ", ".join(name for name, _ in series)
    out.append(
        f'<text class="y-label" x="{left - 44}" y="{top + h / 2}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 {left - 44} {top + h / 2})">{escape(y_label)}</text>'
    )
    for k, (name, y) in enumerate(series):
        color = COLORS[k % len(COLORS)]
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, y))
        out.append(f'<polyline data-series="{escape(name)}" fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        out.append(f'<text x="{left + w - 8}" y="{top + 16 + 14 * k}" font-size="11" text-anchor="end" fill="{color}">{escape(name)}</text>')
    return out


def format_svg(table: sweeps.Table, panels: list[list[str]] | None = None) -> str:
    """One polyline per series; ``panels`` groups series columns into stacked plots."""
    x_name = table.columns[0]
    panels = panels or [list(table.columns[1:])]
    height = PANEL_H * len(panels)
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{PANEL_W}" height="{height}" viewBox="0 0 {PANEL_W} {height}">']
    parts.append(f'<rect width="{PANEL_W}" height="{height}" fill="white"/>')
    for i, cols in enumerate(panels):
        series = [(c, table.column(c)) for c in cols]
        parts += _panel_svg(x_name, table.column(x_name), series, i * PANEL_H)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


# ---------------------------------------------------------------- commands


def _write_table(cfg: SweepConfig, table: sweeps.Table, panels=None) -> int:
    text = format_csv(table) if cfg.format == "csv" else format_svg(table, panels)
    emit(text, cfg.output_path)
    return EXIT_OK


def cmd_lqu_curve(cfg: SweepConfig) -> int:
    return _write_table(cfg, sweeps.lqu_curve(cfg.samples))


def cmd_fidelity_alignment(cfg: SweepConfig) -> int:
    return _write_table(cfg, sweeps.fidelity_alignment(cfg.t, cfg.theta_steps))


def cmd_optnot_compare(cfg: SweepConfig) -> int:
    return _write_table(cfg, sweeps.optnot_compare(cfg.t, cfg.theta_steps, cfg.n_copies))


def cmd_entanglement_distribution(cfg: SweepConfig) -> int:
    return _write_table(cfg, sweeps.entanglement_distribution(cfg.samples))


def cmd_noise_robustness(cfg: SweepConfig) -> int:
    panels = [["lqu_parallel", "lqu_antiparallel"], ["fidelity_parallel", "fidelity_antiparallel"]]
    return _write_table(cfg, sweeps.noise_robustness(cfg.t, cfg.samples), panels)


def cmd_verify(cfg: SweepConfig) -> int:
    start = time.perf_counter()
    results = verify.run_checks(cfg.seed)
    emit(verify.report(results, cfg.seed), cfg.output_path)
    print(f"elapsed {time.perf_counter() - start:.1f} s", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


COMMANDS = {
    "lqu-curve": cmd_lqu_curve,
    "fidelity-alignment": cmd_fidelity_alignment,
    "optnot-compare": cmd_optnot_compare,
    "entanglement-distribution": cmd_entanglement_distribution,
    "noise-robustness": cmd_noise_robustness,
    "verify": cmd_verify,
}


# ------------------------------------------------------------------ parsing


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def _grid_size(text: str) -> int:
    v = _positive_int(text)
    if v < 2:
        raise argparse.ArgumentTypeError(f"need at least 2 points, got {v}")
    return v


def _werner_t(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= v <= sweeps.T_MAX + 1e-9:
        raise argparse.ArgumentTypeError(f"t must lie in [0, 1/3], got {v}")
    return min(v, sweeps.T_MAX)


def _copies(text: str) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("need at least one copy count")
    return tuple(_positive_int(p) for p in parts)


def _seed(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v <= U64_MAX:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--t", type=_werner_t, default=sweeps.T_MAX, help="Werner parameter in [0, 1/3] (default 1/3)")
    common.add_argument("--samples", type=_grid_size, default=200, help="points on t or p sweeps (default 200)")
    common.add_argument("--theta-steps", type=_grid_size, default=181, help="points on theta in [0, pi] (default 181)")
    common.add_argument("--n-copies", type=_copies, default=(1, 5, 10, 100), help="comma-separated N values (default 1,5,10,100)")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--format", choices=("csv", "svg"), default="csv")
    common.add_argument("--seed", type=_seed, default=verify.DEFAULT_SEED, help="seed for randomized checks")

    parser = argparse.ArgumentParser(prog="bellcorr", description="Parallel versus anti-parallel Bell-diagonal states.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "lqu-curve": "LQU of both Werner classes over t",
        "fidelity-alignment": "misalignment fidelity of both classes over theta",
        "optnot-compare": "method A versus optimal-NOT method B over theta",
        "entanglement-distribution": "concurrence after the mediator protocol over t",
        "noise-robustness": "LQU and fidelity under one-sided depolarizing noise over p",
        "verify": "run every cross-check; exit 1 on any failure",
    }
    for name, text in helps.items():
        sub.add_parser(name, parents=[common], help=text, description=text)
    return parser


def config_from_args(args: argparse.Namespace) -> SweepConfig:
    return SweepConfig(
        samples=args.samples,
        t=args.t,
        theta_steps=args.theta_steps,
        n_copies=args.n_copies,
        output_path=args.out,
        format=args.format,
        seed=args.seed,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = config_from_args(args)
    if args.command == "verify" and cfg.format != "csv":
        parser.error("verify writes a text report; --format does not apply")
    if cfg.output_path not in (None, "-") and not Path(cfg.output_path).parent.exists():
        parser.error(f"cannot write {cfg.output_path}: directory does not exist")
    try:
        return COMMANDS[args.command](cfg)
    except OSError as exc:
        print(f"bellcorr: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"bellcorr: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
