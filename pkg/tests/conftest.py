import pytest
from hypothesis import settings

# the numpy kernel path is slower; timing is not what these tests check
settings.register_profile("aokr", deadline=None)
settings.load_profile("aokr")

from aokr.wavepacket import SpatialGrid

# (criterion number, passed, detail) filled in by test_acceptance
ACCEPTANCE = []


@pytest.fixture(scope="session")
def small_grid():
    # 0.125 p_rec bins, cutoff +-256 p_rec: enough for weak kicks
    return SpatialGrid(2**12, 16)


@pytest.fixture(scope="session")
def grid():
    return SpatialGrid()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
