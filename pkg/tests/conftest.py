import pytest

# Published tire-model rows: (name, mean CA, std CA, f, f_a, f_v, percent error) as printed
TIRE_TABLE = [
    ("Rigid Cylindrical", 44.334, 1.866, "1.82E-04", "3.50E-04", "0.519", "7.085"),
    ("Rigid Coarse Mesh", 42.760, 2.607, "9.30E-09", "3.77E-08", "0.246", "10.385"),
    ("Rigid Fine Mesh", 44.910, 2.205, "1.56E-03", "0.004", "0.373", "5.878"),
    ("Fiala", 53.145, 0.949, "1.21E-09", "1.22E-09", "0.987", "11.379"),
    ("Pacejka 89", 46.191, 0.982, "0.194", "0.199", "0.978", "3.193"),
    ("Random Forest", 47.708, 0.328, "0.380", "1.000", "0.380", "0.014"),
    ("Pacejka 02", 47.715, 0.847, "1.000", "1.000", "1.000", "0.000"),
]
REFERENT = (47.715, 0.847)


@pytest.fixture
def tire_table():
    return TIRE_TABLE


ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def record(criterion: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE_RESULTS[criterion] = (bool(ok), detail)
    print(f"[{'PASS' if ok else 'FAIL'}] {criterion} {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in sorted(ACCEPTANCE_RESULTS.items(), key=lambda kv: int(kv[0].split(".")[0])):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
