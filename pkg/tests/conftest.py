import pytest
from click.testing import CliRunner

from quantum_clifford.clifford import build_context
from quantum_clifford.modules import seed_module
from quantum_clifford.roots import build_root_system
from quantum_clifford.scalars import ScalarContext


@pytest.fixture
def scalars():
    return ScalarContext()


@pytest.fixture
def sl2():
    return build_root_system("A", 1)


@pytest.fixture
def sl3():
    return build_root_system("A", 2)


@pytest.fixture
def sl2_vector(sl2):
    """The two-dimensional module V(omega_1) of U_q(sl2), over u = q^(1/2)."""
    return seed_module(sl2)


@pytest.fixture
def sl3_vector(sl3):
    return seed_module(sl3)


@pytest.fixture(scope="session")
def cp2():
    """The cominuscule context of sl3 at the first node (projective plane)."""
    return build_context("A", 2, 0)


@pytest.fixture
def cache_dir(tmp_path):
    path = tmp_path / "cache"
    path.mkdir()
    return path


@pytest.fixture
def runner():
    return CliRunner()
