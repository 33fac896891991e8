"""Fixtures: pregenerate CSV inputs through the simulator's public CLI.

The renderer is exercised strictly through external interfaces: the CSVs
come from ``plaquette figdata`` subprocess calls, never from importing
the simulator.
"""

import shutil
import subprocess

import pytest


@pytest.fixture(scope="session")
def csv_dir(tmp_path_factory):
    exe = shutil.which("plaquette")
    if exe is None:
        pytest.skip("plaquette CLI not installed; cannot pregenerate CSVs")
    outdir = tmp_path_factory.mktemp("csv")
    for name in ("fig2a", "fig2bc", "fig4a"):
        subprocess.run([exe, "figdata", name, "--outdir", str(outdir)], check=True)
    return outdir
