import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parents[1] / "scripts"


@pytest.mark.parametrize(
    "argv",
    [
        ["spherical_pipeline.py", "--case", "5", "--n", "4", "--lam", "1,1,0,0"],
        ["orthogonality_report.py", "--system", "C", "--rank", "1", "--mult", "1", "--degree", "2"],
    ],
    ids=lambda a: a[0],
)
def test_script_runs(argv):
    res = subprocess.run([sys.executable, str(SCRIPTS / argv[0]), *argv[1:]], capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    assert res.stdout
