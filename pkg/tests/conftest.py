import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from museq import _pykernels  # noqa: E402

try:
    from museq import _kernels as _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None


@pytest.fixture(params=["python", "cython"])
def kernels(request):
    if request.param == "python":
        return _pykernels
    if _ckernels is None:
        pytest.skip("compiled kernels not built")
    return _ckernels


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed", "xfailed"):
        for rep in terminalreporter.stats.get(key, []):
            if "test_acceptance.py" in rep.nodeid and rep.when == "call":
                name = rep.nodeid.split("::")[-1]
                if rep.passed:
                    status = "PASS"
                elif hasattr(rep, "wasxfail"):
                    status = "FAIL"
                    name += f"  (known shortfall: {rep.wasxfail})"
                else:
                    status = "FAIL"
                lines.append((name, status))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, status in sorted(lines):
            terminalreporter.write_line(f"{status}  {name}")
