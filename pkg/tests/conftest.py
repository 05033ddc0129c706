import csv
import pathlib

import pytest

DATA = pathlib.Path(__file__).parent / "data"
GOLDEN = pathlib.Path(__file__).parent / "golden"


def load_reference_overlaps():
    """Printed overlap values keyed by (mass_kg, sep_um); kept as strings so the digit count survives."""
    with open(DATA / "reference_overlaps.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    seps = [float(s) for s in rows[0][1:]]
    return {(float(r[0]), s): v for r in rows[1:] for s, v in zip(seps, r[1:])}


def printed_tolerance(text: str) -> float:
    decimals = len(text.split(".")[1]) if "." in text else 0
    return 0.5 * 10.0 ** (-decimals)


@pytest.fixture(scope="session")
def reference_overlaps():
    return load_reference_overlaps()


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
