import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from symquandle.algebra import make_dihedral, make_trivial, point_action, self_action  # noqa: E402
from symquandle.diagram import parse_pd  # noqa: E402

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow], derandomize=True)
settings.load_profile("default")

PD = {
    "trefoil": "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)",
    "trefoil_kink": "X(1,4,2,5) X(3,8,4,1) X(5,2,6,3) X(6,8,7,7)",
    "trefoil_mirror": "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)",
    "figure8": "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)",
    "hopf": "X(1,3,2,4) X(3,1,4,2)",
    "hopf_kink": "X(1,3,2,4) X(3,1,4,6) X(2,6,5,5)",
    "unknot": "O(1)",
    "unlink2": "O(1) O(2)",
    "unlink3": "O(1) O(2) O(3)",
}


@pytest.fixture(scope="session")
def diagrams():
    return {k: parse_pd(v) for k, v in PD.items()}


@pytest.fixture(scope="session")
def r3():
    return make_dihedral(3)


@pytest.fixture(scope="session")
def t2():
    return make_trivial(2)


def xset(q, kind):
    return point_action(q) if kind == "pt" else self_action(q)
