"""Acceptance: render the bundled scenarios' figures from real run output.

Generates the fig2c and fig4 run directories with the simulator CLI at full
default settings, then renders the triptych and the filtered-vs-unfiltered
overlay through the plotkit CLI and checks the figures structurally.
"""

import subprocess
import sys

import pytest

from plotkit.cli import main


def run_simulator(args):
    proc = subprocess.run([sys.executable, "-m", "gspulse.cli"] + args,
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="module")
def scenario_dirs(tmp_path_factory):
    base = tmp_path_factory.mktemp("acceptance")
    run_simulator(["run", "--preset", "fig2c",
                   "--out-dir", str(base / "fig2c")])
    run_simulator(["run", "--preset", "fig4",
                   "--out-dir", str(base / "fig4")])
    return base


def verdict(ok, detail):
    state = "PASS" if ok else "FAIL"
    print(f"\n[ACCEPTANCE] criterion 9 (figure rendering): {state} -- "
          f"{detail}")
    assert ok, detail


def test_criterion_9_triptych_and_overlay(scenario_dirs, tmp_path):
    triptych = tmp_path / "fig2c_triptych.svg"
    overlay = tmp_path / "fig4_overlay.svg"
    code_t = main(["triptych", str(scenario_dirs / "fig2c"),
                   "-o", str(triptych)])
    code_o = main(["pdf", str(scenario_dirs / "fig4"), "--filtered",
                   "-o", str(overlay)])
    tri_text = triptych.read_text() if triptych.exists() else ""
    over_text = overlay.read_text() if overlay.exists() else ""
    structural = (triptych.stat().st_size > 0 and overlay.stat().st_size > 0
                  and "power (mW)" in tri_text
                  and "detuning (GHz)" in tri_text
                  and "probability density" in tri_text
                  and "unfiltered" in over_text
                  and "filtered" in over_text)
    verdict(code_t == 0 and code_o == 0 and structural,
            f"triptych exit {code_t}, overlay exit {code_o}, "
            f"panels and legend present: {structural}")
