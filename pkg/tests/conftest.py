import sys

import pytest

from oracles import dihedral_perms, perm_table, symmetric_perms
from towerlab.groups import validate_group


@pytest.fixture(scope="session")
def s3():
    table, _ = perm_table(symmetric_perms(3))
    return validate_group(table, "S3")


@pytest.fixture(scope="session")
def s4():
    table, _ = perm_table(symmetric_perms(4))
    return validate_group(table, "S4")


@pytest.fixture(scope="session")
def d5():
    table, _ = perm_table(dihedral_perms(5))
    return validate_group(table, "D5")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
