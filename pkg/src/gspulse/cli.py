"""Command line interface.

Subcommands:
    run       integrate, simulate interference, and write CSV/JSON outputs
    verify    run the closed-form verification suite and report pass/fail
    spectrum  integrate and write the pulse and its spectrum only

Numeric options take engineering units (mA, ps, GHz); see the configuration
grammar in config.py.  Exit codes: 0 success, one distinct code per error
class (see errors.EXIT_CODES), 1 for anything else.
"""

import argparse
import math
import os
import sys
import numpy as np

from . import analytic
from .config import config_from_mapping, parse_config
from .errors import GsPulseError, exit_code_for
from .interference import DrawSample
from .params import InterferometerParams
from .presets import load_preset, preset_names
from .scenario import run_scenario, write_report
from .spectrum import field_from_pulse, power_spectrum
from .dynamics import extract_pulse, integrate_trajectory


def _load_configs(args):
    """Resolve --preset/--config (plus overrides) into (label, config) pairs."""
    overrides = {}
    if args.seed is not None:
        overrides["mc.seed"] = args.seed
    if getattr(args, "iterations", None) is not None:
        overrides["mc.iterations"] = args.iterations
    if getattr(args, "emit_samples", False):
        overrides["output.emit_samples"] = True

    if args.preset:
        return load_preset(args.preset, overrides)
    with open(args.config) as fh:
        text = fh.read()
    base = parse_config(text)
    if overrides:
        from .config import parse_config_text
        mapping = parse_config_text(text)
        mapping.update(overrides)
        base = config_from_mapping(mapping)
    label = os.path.splitext(os.path.basename(args.config))[0]
    return [(label, base)]


def _cmd_run(args):
    pairs = _load_configs(args)
    multi = len(pairs) > 1
    for label, config in pairs:
        report = run_scenario(config, label=label, n_workers=args.threads)
        out_dir = os.path.join(args.out_dir, label) if multi else args.out_dir
        write_report(report, out_dir,
                     emit_samples=config.outputs.emit_samples,
                     emit_pulse=config.outputs.emit_pulse)
        peaks = ", ".join(f"{loc:.3f}" for loc, _ in report.peaks)
        print(f"{label}: {len(report.peaks)} peak(s) at [{peaks}] "
              f"-> {out_dir}", file=sys.stderr)
        for stage, secs in report.timings.items():
            print(f"  {stage}: {secs:.2f} s", file=sys.stderr)
    return 0


def _cmd_spectrum(args):
    pairs = _load_configs(args)
    multi = len(pairs) > 1
    for label, config in pairs:
        trajectory = integrate_trajectory(config.laser, config.pump,
                                          config.grid)
        pulse = extract_pulse(trajectory, config.laser, config.grid)
        spec = power_spectrum(field_from_pulse(pulse))
        out_dir = os.path.join(args.out_dir, label) if multi else args.out_dir
        os.makedirs(out_dir, exist_ok=True)
        from .scenario import _write_pulse, _write_spectrum
        _write_pulse(os.path.join(out_dir, "pulse.csv"), pulse)
        _write_spectrum(os.path.join(out_dir, "spectrum.csv"), spec)
        print(f"{label}: pulse + spectrum -> {out_dir}", file=sys.stderr)
    return 0


def _cmd_verify(args):
    """Closed-form verification: the numerical pipeline against the Gaussian
    interference formulas and the arcsine limit."""
    failures = 0

    def check(name, ok, detail):
        nonlocal failures
        status = "PASS" if ok else "FAIL"
        print(f"{status}  {name}: {detail}")
        failures += 0 if ok else 1

    delta = 20e-12
    iface = InterferometerParams()
    pulse = analytic.GaussianPulse(rms_width=delta, peak_power=1e-3)

    worst = 0.0
    for dphi in np.linspace(0, 2 * math.pi, 32, endpoint=False):
        draw = DrawSample(time_shift=0.0, phase1=0.0, phase2=dphi,
                          scale1=1.0, scale2=1.0, detector_noise=0.0)
        _, _, rel = analytic.closed_form_check(pulse, draw, iface)
        worst = max(worst, rel)
    check("fringe formula, chirp-free", worst <= 1e-3,
          f"max rel err {worst:.2e} (tol 1e-3)")

    alpha = 6.0
    chirped = analytic.GaussianPulse(
        rms_width=delta, peak_power=1e-3,
        chirp_rate=analytic.chirp_rate(alpha, delta))
    worst = 0.0
    for shift in (0.0, delta / 2, delta):
        sweep = []
        for dphi in np.linspace(0, 2 * math.pi, 256, endpoint=False):
            draw = DrawSample(time_shift=shift, phase1=0.0, phase2=dphi,
                              scale1=1.0, scale2=1.0, detector_noise=0.0)
            num, _, _ = analytic.closed_form_check(chirped, draw, iface)
            sweep.append(num)
        eta_num = (max(sweep) - min(sweep)) / 4
        eta_ana = analytic.visibility_chirped(shift, delta, alpha)
        worst = max(worst, abs(eta_num - eta_ana))
    check("visibility law, chirped", worst <= 0.01,
          f"max abs err {worst:.2e} (tol 0.01)")

    from scipy.integrate import quad
    integral, _ = quad(analytic.arcsine_density, 1e-12, 4 - 1e-12)
    check("arcsine density normalization", abs(integral - 1) <= 1e-6,
          f"integral {integral:.8f}")

    print("verification " + ("passed" if failures == 0 else
                             f"FAILED ({failures} check(s))"))
    return 0 if failures == 0 else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gspulse",
        description="Interference statistics of gain-switched laser pulses")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--preset", choices=preset_names(),
                           help="named scenario preset")
        group.add_argument("--config", help="configuration file path")
        p.add_argument("--seed", type=int, default=None,
                       help="override the Monte-Carlo seed")
        p.add_argument("--out-dir", required=True, help="output directory")

    p_run = sub.add_parser("run", help="full simulation run")
    add_common(p_run)
    p_run.add_argument("--threads", type=int, default=1,
                       help="Monte-Carlo worker threads (results identical "
                            "for any value)")
    p_run.add_argument("--iterations", type=int, default=None,
                       help="override the Monte-Carlo iteration count")
    p_run.add_argument("--emit-samples", action="store_true",
                       help="also write the raw sample values")
    p_run.set_defaults(func=_cmd_run)

    p_spec = sub.add_parser("spectrum", help="dynamics and spectrum only")
    add_common(p_spec)
    p_spec.set_defaults(func=_cmd_spectrum)

    p_ver = sub.add_parser("verify", help="closed-form verification suite")
    p_ver.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GsPulseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
