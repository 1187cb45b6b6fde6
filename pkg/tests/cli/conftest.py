import pytest

from src.utils.logging import setup_logging

SMALL_RUN = """
crystal:
  length_nm: 2.0e+6
target:
  kind: hermite_gauss
  order: 2
grid:
  size: 64
  span_nm: 240.0
  pmf_points: 512
hom:
  step_fs: 50.0
tolerance:
  resolutions_nm: [0, 100]
  repetitions: 2
  offsets_nm: [20, 0, -20]
"""


@pytest.fixture(autouse=True)
def restore_logging():
    """``main`` rebinds the console handler to the captured stream; rebind it afterwards."""
    yield
    setup_logging(log_level="INFO")


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "small.yaml"
    path.write_text(SMALL_RUN)
    return str(path)
