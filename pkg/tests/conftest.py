import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fusionnet.algebra import full_algebra  # noqa: E402
from fusionnet.latticenet import IdentityDefect, build_defect, build_orbifold_net, build_tensor_net, product_net  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures" / "cli"

# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])


@pytest.fixture(scope="session")
def tensor_net():
    return build_tensor_net(8, full_algebra(2))


@pytest.fixture(scope="session")
def orbifold_net(tensor_net):
    return build_orbifold_net(tensor_net, [np.diag([1.0, -1.0])])


@pytest.fixture(scope="session")
def product_of_nets(tensor_net, orbifold_net):
    return product_net(tensor_net, orbifold_net)


@pytest.fixture(scope="session")
def trivial_net():
    return build_tensor_net(8, full_algebra(1), name="trivial")


@pytest.fixture(scope="session")
def identity_defect(tensor_net):
    return IdentityDefect(tensor_net)


@pytest.fixture(scope="session")
def junctions(tensor_net):
    return {k: build_defect("junction", {"left": tensor_net, "right": tensor_net, "Q": full_algebra(k), "name": f"J_M{k}"}) for k in (2, 3, 6)}
