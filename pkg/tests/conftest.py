import pytest

from swtlg.compiler import compile_netlist
from swtlg.materials import load_preset
from swtlg.netlist import builtin_full_adder

F35 = 35e9


@pytest.fixture(scope="session")
def stack():
    return load_preset("cofeb-paper")


@pytest.fixture(scope="session")
def fa():
    return builtin_full_adder()


@pytest.fixture(scope="session")
def fa_circuit(fa, stack):
    return compile_netlist(fa, F35, 0.0, stack, unit_phase_deg=10.0, shifter_length=100e-9)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for an acceptance criterion; details are appended by the test."""
    entry = {"name": request.node.name, "details": []}
    ACCEPTANCE_LINES.append(entry)
    yield entry["details"]
    entry["done"] = True


def pytest_runtest_makereport(item, call):
    if call.when == "call":
        for entry in ACCEPTANCE_LINES:
            if entry["name"] == item.name:
                entry["passed"] = call.excinfo is None


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for entry in ACCEPTANCE_LINES:
        status = "PASS" if entry.get("passed") else "FAIL"
        detail = "; ".join(entry["details"])
        terminalreporter.write_line(f"{status}  {entry['name']}  {detail}")
