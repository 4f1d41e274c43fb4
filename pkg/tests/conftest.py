import pytest

from linepack import (
    FieldContext,
    GroupContext,
    RepContext,
    build_character_table,
    group_scheme,
)


@pytest.fixture(scope="session")
def field3():
    return FieldContext(3)


@pytest.fixture(scope="session")
def field5():
    return FieldContext(5)


@pytest.fixture(scope="session")
def field7():
    return FieldContext(7)


@pytest.fixture(scope="session")
def group3(field3):
    return GroupContext(field3)


@pytest.fixture(scope="session")
def group5(field5):
    return GroupContext(field5)


@pytest.fixture(scope="session")
def group7(field7):
    return GroupContext(field7)


@pytest.fixture(scope="session")
def rep3(group3):
    return RepContext(group3)


@pytest.fixture(scope="session")
def rep5(group5):
    return RepContext(group5)


@pytest.fixture(scope="session")
def rep7(group7):
    return RepContext(group7)


@pytest.fixture(scope="session")
def table3(group3, rep3):
    return build_character_table(group3, rep3)


@pytest.fixture(scope="session")
def table5(group5, rep5):
    return build_character_table(group5, rep5)


@pytest.fixture(scope="session")
def table7(group7, rep7):
    return build_character_table(group7, rep7)


@pytest.fixture(scope="session")
def scheme3(group3, table3):
    return group_scheme(group3, table3)
