import pytest

from imcdse import (DEFAULT_CONSTANTS, default_space, load_default_workloads,
                    tiny_space)


@pytest.fixture(scope="session")
def constants():
    return DEFAULT_CONSTANTS


@pytest.fixture(scope="session")
def space():
    return default_space()


@pytest.fixture(scope="session")
def small_space():
    return tiny_space()


@pytest.fixture(scope="session")
def workloads():
    return load_default_workloads()


@pytest.fixture(scope="session")
def vgg16(workloads):
    return workloads[0]


@pytest.fixture(scope="session")
def mobilenet(workloads):
    return workloads[3]
