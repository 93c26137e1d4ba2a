import json
from pathlib import Path

import pytest

from vacuumcf.numerics import QuadratureConfig

_GOLDEN = json.loads((Path(__file__).parent / "data" / "golden.json").read_text())


def golden(name: str) -> complex:
    """Frozen oracle value (computed with mpmath at 25 digits, see header)."""
    re, im = _GOLDEN[name]
    return complex(re, im)


@pytest.fixture(scope="session")
def tight_cfg() -> QuadratureConfig:
    return QuadratureConfig(abs_tol=1e-12, rel_tol=1e-11)
