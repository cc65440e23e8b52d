import pytest

from coxgrow import fixture_path
from coxgrow.polyhedron import count_vector, load_polyhedron

# fixtures that are valid polyhedra (bad_237 has a vertex no Coxeter polyhedron can have)
VALID_FIXTURES = [
    "octahedron",
    "cube_compact",
    "simplex_336",
    "h2_elongated",
    "h23_elongated",
    "h23_cube333",
    "h236_elongated",
    "h25_elongated",
    "h2356_elongated",
    "h23456_elongated",
    "h23456_244",
    "m7_elongated",
]
NONCOMPACT_FIXTURES = [n for n in VALID_FIXTURES if n != "cube_compact"]


def load(name):
    return load_polyhedron(fixture_path(name))


def counts_of(name):
    return count_vector(load(name))


@pytest.fixture
def octahedron():
    return load("octahedron")


# --- one PASS/FAIL line per acceptance criterion ---------------------------------------

_criteria: dict[str, list[str]] = {}


def _criterion_of(nodeid: str) -> str | None:
    if "test_acceptance.py::test_criterion_" not in nodeid:
        return None
    name = nodeid.split("::test_criterion_", 1)[1]
    return name.split("_", 1)[0].split("[", 1)[0]


def pytest_runtest_logreport(report):
    key = _criterion_of(report.nodeid)
    if key is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        outcome = "xfail" if hasattr(report, "wasxfail") else report.outcome
        _criteria.setdefault(key, []).append(outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria, key=int):
        outcomes = _criteria[key]
        ok = all(o == "passed" for o in outcomes)
        detail = ", ".join(f"{outcomes.count(o)} {o}" for o in ("passed", "failed", "xfail", "skipped") if o in outcomes)
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'} ({detail})")
