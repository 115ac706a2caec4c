import pytest

from nilcomm import (
    FULL,
    UPPER,
    V_TYPE,
    MatrixShape,
    make_product_module,
    make_zn,
    matrix_module,
    regular_module,
)


def zn_module(n):
    return regular_module(make_zn(n))


def mat_mod(kind, n, base_n):
    base = make_zn(base_n)
    return matrix_module(MatrixShape(kind, n), base, regular_module(base))


@pytest.fixture(scope="session")
def z4_module():
    return zn_module(4)


@pytest.fixture(scope="session")
def z6_module():
    return zn_module(6)


@pytest.fixture(scope="session")
def z12_module():
    return zn_module(12)


@pytest.fixture(scope="session")
def m2z2_module():
    return mat_mod(FULL, 2, 2)


@pytest.fixture(scope="session")
def t2z2_module():
    return mat_mod(UPPER, 2, 2)


@pytest.fixture(scope="session")
def t2z4_module():
    return mat_mod(UPPER, 2, 4)


@pytest.fixture(scope="session")
def v2z2_module():
    return mat_mod(V_TYPE, 2, 2)


@pytest.fixture(scope="session")
def m4z2_module():
    return mat_mod(FULL, 4, 2)


@pytest.fixture(scope="session")
def hierarchy_zoo(m2z2_module, t2z2_module, t2z4_module, v2z2_module):
    """Small and medium modules the property suites sweep across."""
    from nilcomm import cyclic_submodule, induced_module, zn_reduction_hom

    modules = [zn_module(n) for n in range(2, 17)]
    modules += [m2z2_module, t2z2_module, t2z4_module, v2z2_module]
    modules.append(make_product_module([zn_module(3), zn_module(3)]))
    modules.append(make_product_module([zn_module(2), zn_module(2)]))
    modules.append(cyclic_submodule(zn_module(12), 2))
    modules.append(induced_module(zn_reduction_hom(8, 4), zn_module(4)))
    return modules
