import pytest

from anncat.examples import AbelianGroup, BimoduleData, f2t, from_bimodule, from_ring, pic_from_cocycle, zmod


@pytest.fixture(scope="session")
def dz2():
    return from_ring(zmod(2))


@pytest.fixture(scope="session")
def dz6():
    return from_ring(zmod(6))


@pytest.fixture(scope="session")
def bz2():
    return from_bimodule(BimoduleData.regular(zmod(2)))


@pytest.fixture(scope="session")
def bz4():
    return from_bimodule(BimoduleData.regular(zmod(4)))


@pytest.fixture(scope="session")
def df2t():
    return from_ring(f2t())


@pytest.fixture(scope="session")
def pic_xy():
    z2 = AbelianGroup.cyclic(2)
    return pic_from_cocycle(z2, z2, None, lambda x, y: x * y)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
