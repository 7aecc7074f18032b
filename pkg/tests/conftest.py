import pytest

from diagdom.graphs import ordinary_label, VertexLabel, IDENTITY


@pytest.fixture(scope="session")
def l3():
    return ordinary_label(3)


@pytest.fixture(scope="session")
def l1():
    return ordinary_label(1)


@pytest.fixture(scope="session")
def a3():
    return VertexLabel("a3", 3, IDENTITY)


@pytest.fixture(scope="session")
def groups():
    from diagdom.dw import catalog

    return catalog()
