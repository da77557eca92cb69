import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from hoinv.fields import GF, QQ
from hoinv.groupalg import enumerate_group
from hoinv.linalg import Matrix
from hoinv.words import GroupPresentation

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def z3():
    return enumerate_group([(1, 2, 0)], ["a"])


@pytest.fixture(scope="session")
def z4():
    return enumerate_group([(1, 2, 3, 0)], ["a"])


@pytest.fixture(scope="session")
def z5():
    return enumerate_group([(1, 2, 3, 4, 0)], ["a"])


@pytest.fixture(scope="session")
def z2z2():
    return enumerate_group([(1, 0, 3, 2), (2, 3, 0, 1)], ["x", "y"])


@pytest.fixture(scope="session")
def s3():
    return enumerate_group([(1, 0, 2), (1, 2, 0)], ["s", "t"])


@pytest.fixture(scope="session")
def free2():
    return GroupPresentation(["a", "b"])


@pytest.fixture(scope="session")
def commutator2():
    return GroupPresentation(["a", "b"], ["[a,b]"])


def jordan_matrix(k: int) -> Matrix:
    return Matrix.from_values(
        QQ, [[1 if j in (i, i + 1) else 0 for j in range(k)] for i in range(k)])


@pytest.fixture(scope="session")
def fields():
    return {"Q": QQ, "F2": GF(2), "F3": GF(3), "F5": GF(5)}
