import pytest

from mhopf.algebras import Corner, group_algebra_plain, subgroup_average_idempotent
from mhopf.groups import alternating_elements, cyclic_group, symmetric_group
from mhopf.mha import instance_for


@pytest.fixture(scope="session")
def S3():
    return symmetric_group(3)


@pytest.fixture(scope="session")
def C2():
    return cyclic_group(2)


@pytest.fixture(scope="session")
def C4():
    return cyclic_group(4)


@pytest.fixture(scope="session")
def AG_S3(S3):
    return instance_for("A_G", S3)


@pytest.fixture(scope="session")
def kG_S3(S3):
    return instance_for("kG", S3)


@pytest.fixture(scope="session")
def corner_A3(S3):
    kS3 = group_algebra_plain(S3)
    fN = subgroup_average_idempotent(kS3, alternating_elements(3))
    return Corner(kS3, fN, name="cornerA3")
