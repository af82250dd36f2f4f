import pytest

from polylab import constructors as C

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for text in ACCEPTANCE_LINES:
            terminalreporter.write_line(text)


@pytest.fixture(scope="session")
def pg2():
    return C.projective_plane(2)


@pytest.fixture(scope="session")
def pg3():
    return C.projective_plane(3)


@pytest.fixture(scope="session")
def w2():
    return C.w2()


@pytest.fixture(scope="session")
def h2():
    return C.split_cayley_hexagon(2)


@pytest.fixture(scope="session")
def triangle():
    return C.ordinary_polygon(3)
