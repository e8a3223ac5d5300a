import pytest

from relmod import corpus


@pytest.fixture(scope="session")
def sl2():
    return corpus.builtin("sl2")


@pytest.fixture(scope="session")
def z2():
    return corpus.builtin("z2")


@pytest.fixture(scope="session")
def l2():
    return corpus.builtin("l2")


@pytest.fixture(scope="session")
def z2xz2():
    return corpus.builtin("z2xz2")


@pytest.fixture(scope="session")
def sl3():
    return corpus.builtin("sl3")


@pytest.fixture(scope="session")
def m3():
    return corpus.builtin("m3")
