"""Command line entry points.

    plotkit triptych RUN_DIR [-o FILE]   pulse / detuning / PDF panels
    plotkit pdf RUN_DIR [RUN_DIR2] [-o FILE] [--filtered]

`pdf` plots the run's histogram; with --filtered (or a second run
directory) it overlays histogram_filtered.csv (or the second run's
histogram) against the first.  Exit code 0 on success, 1 with a message on
missing or malformed inputs.
"""

import argparse
import os
import sys

from .figures import FigureInputError, FigureSpec, render_pdf_figure, \
    render_triptych


def _cmd_triptych(args):
    spec = FigureSpec(
        inputs={"pulse": os.path.join(args.run_dir, "pulse.csv"),
                "histogram": os.path.join(args.run_dir, "histogram.csv")},
        output=args.output or os.path.join(args.run_dir, "triptych.svg"),
        title=args.title)
    path = render_triptych(spec)
    print(path)
    return 0


def _cmd_pdf(args):
    first = os.path.join(args.run_dir, "histogram.csv")
    inputs = {"histogram": first}
    labels = {}
    if args.filtered:
        inputs = {"unfiltered": first,
                  "filtered": os.path.join(args.run_dir,
                                           "histogram_filtered.csv")}
        labels = {"unfiltered": "unfiltered", "filtered": "filtered"}
    elif args.run_dir2:
        inputs = {os.path.basename(os.path.normpath(args.run_dir)): first,
                  os.path.basename(os.path.normpath(args.run_dir2)):
                      os.path.join(args.run_dir2, "histogram.csv")}
    spec = FigureSpec(
        inputs=inputs,
        labels=labels,
        output=args.output or os.path.join(args.run_dir, "pdf.svg"),
        title=args.title)
    path = render_pdf_figure(spec)
    print(path)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="plotkit",
        description="Figures from simulation run directories")
    sub = parser.add_subparsers(dest="command", required=True)

    p_tri = sub.add_parser("triptych",
                           help="pulse, detuning, and PDF panels")
    p_tri.add_argument("run_dir")
    p_tri.add_argument("-o", "--output", default=None)
    p_tri.add_argument("--title", default="")
    p_tri.set_defaults(func=_cmd_triptych)

    p_pdf = sub.add_parser("pdf", help="PDF figure, optionally an overlay")
    p_pdf.add_argument("run_dir")
    p_pdf.add_argument("run_dir2", nargs="?", default=None)
    p_pdf.add_argument("--filtered", action="store_true",
                       help="overlay the run's filtered histogram")
    p_pdf.add_argument("-o", "--output", default=None)
    p_pdf.add_argument("--title", default="")
    p_pdf.set_defaults(func=_cmd_pdf)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FigureInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
