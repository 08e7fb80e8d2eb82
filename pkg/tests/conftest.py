import numpy as np
import pytest

TRIDIAG_5 = np.array(
    [
        [1, 9, 0, 0, 0],
        [6, 2, 8, 0, 0],
        [0, 7, 3, 7, 0],
        [0, 0, 8, 4, 6],
        [0, 0, 0, 9, 5],
    ],
    dtype=float,
)
LOWER_5 = np.array(
    [
        [1, 0, 0, 0, 0],
        [2, 6, 0, 0, 0],
        [3, 7, 1, 0, 0],
        [4, 8, 2, 4, 0],
        [5, 9, 3, 5, 6],
    ],
    dtype=float,
)
SYMPD_5 = np.array(
    [
        [9, 1, 2, 3, 4],
        [1, 8, 1, 2, 3],
        [2, 1, 7, 1, 2],
        [3, 2, 1, 6, 1],
        [4, 3, 2, 1, 5],
    ],
    dtype=float,
)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def record_criterion(number: int, passed: bool, detail: str) -> None:
    ACCEPTANCE_RESULTS[number] = (passed, detail)
    print(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
