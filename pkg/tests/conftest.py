import pytest

from phi3forms import _pykernels

BACKENDS = {"python": _pykernels}
try:
    from phi3forms import _kernels
except ImportError:  # extension not built
    pass
else:
    BACKENDS["cython"] = _kernels


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return BACKENDS[request.param]


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: s.split(":")[0].split()[-1].zfill(2)):
            terminalreporter.write_line(line)
