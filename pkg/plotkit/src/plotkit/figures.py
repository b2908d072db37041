"""Figure rendering from simulation run directories.

Input files are the CSV outputs of a `gspulse run` directory: histogram.csv
(bin_left, bin_right, count, density), optionally histogram_filtered.csv,
and pulse.csv (time_ps, power_mW, phase_rad, detuning_GHz).  Renders are
deterministic: fixed figure geometry, no timestamps in the output, text kept
as text in SVG.
"""

import os
from dataclasses import dataclass, field

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

# deterministic SVG output: stable element ids, no creation date, real text
matplotlib.rcParams["svg.hashsalt"] = "plotkit"
matplotlib.rcParams["svg.fonttype"] = "none"

SVG_METADATA = {"Date": None}


class FigureInputError(Exception):
    """Missing or malformed input data."""


@dataclass(frozen=True)
class FigureSpec:
    """What to render and where to put it."""

    inputs: dict                 # role -> file path
    output: str                  # image file path (suffix picks the format)
    labels: dict = field(default_factory=dict)   # role -> legend label
    title: str = ""


def _read_csv(path, expected_header):
    if not os.path.exists(path):
        raise FigureInputError(f"input file not found: {path}")
    with open(path) as fh:
        header = fh.readline().strip()
        if header != expected_header:
            raise FigureInputError(
                f"{path}: expected header {expected_header!r}, "
                f"got {header!r}")
        try:
            data = np.loadtxt(fh, delimiter=",", ndmin=2)
        except ValueError as exc:
            raise FigureInputError(f"{path}: {exc}") from None
    if data.size == 0:
        raise FigureInputError(f"{path}: no data rows")
    return data


def read_histogram(path):
    """Histogram CSV -> (bin_edges, density)."""
    data = _read_csv(path, "bin_left,bin_right,count,density")
    edges = np.append(data[:, 0], data[-1, 1])
    return edges, data[:, 3]


def read_pulse(path):
    """Pulse CSV -> (time_ps, power_mW, detuning_GHz)."""
    data = _read_csv(path, "time_ps,power_mW,phase_rad,detuning_GHz")
    return data[:, 0], data[:, 1], data[:, 3]


def _step_density(ax, edges, density, label=None):
    ax.stairs(density, edges, label=label, linewidth=1.2)


def render_pdf_figure(spec: FigureSpec):
    """Probability-density figure: one histogram, or an overlay of several.

    inputs maps role names (e.g. "unfiltered", "filtered") to histogram CSV
    paths; with more than one input a legend is drawn.
    """
    if not spec.inputs:
        raise FigureInputError("no histogram inputs given")
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for role, path in spec.inputs.items():
        edges, density = read_histogram(path)
        _step_density(ax, edges, density, spec.labels.get(role, role))
    ax.set_xlabel("normalized integral signal")
    ax.set_ylabel("probability density")
    if spec.title:
        ax.set_title(spec.title)
    if len(spec.inputs) > 1:
        ax.legend()
    fig.tight_layout()
    _save(fig, spec.output)
    return spec.output


def render_triptych(spec: FigureSpec):
    """Three stacked panels: pulse power, instantaneous detuning, PDF.

    inputs needs "pulse" (pulse CSV) and "histogram" (histogram CSV).
    """
    for role in ("pulse", "histogram"):
        if role not in spec.inputs:
            raise FigureInputError(f"triptych needs an input named {role!r}")
    t_ps, power_mw, detuning_ghz = read_pulse(spec.inputs["pulse"])
    edges, density = read_histogram(spec.inputs["histogram"])

    fig, (ax_p, ax_c, ax_h) = plt.subplots(3, 1, figsize=(6.0, 8.0))
    ax_p.plot(t_ps, power_mw, linewidth=1.2)
    ax_p.set_xlabel("time (ps)")
    ax_p.set_ylabel("power (mW)")

    # detuning is meaningless where the pulse is off; show the bright part
    bright = power_mw >= 0.01 * power_mw.max()
    ax_c.plot(t_ps[bright], detuning_ghz[bright], linewidth=1.2)
    ax_c.set_xlabel("time (ps)")
    ax_c.set_ylabel("detuning (GHz)")
    ax_c.set_xlim(ax_p.get_xlim())

    _step_density(ax_h, edges, density)
    ax_h.set_xlabel("normalized integral signal")
    ax_h.set_ylabel("probability density")

    if spec.title:
        fig.suptitle(spec.title)
    fig.tight_layout()
    _save(fig, spec.output)
    return spec.output


def _save(fig, output):
    out_dir = os.path.dirname(os.path.abspath(output))
    os.makedirs(out_dir, exist_ok=True)
    if output.lower().endswith(".svg"):
        fig.savefig(output, metadata=SVG_METADATA)
    else:
        fig.savefig(output)
    plt.close(fig)
