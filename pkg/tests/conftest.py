import sys
from pathlib import Path

import numpy as np
import pytest

_HERE = Path(__file__).parent
sys.path.insert(0, str(_HERE))
# allow running the suite from a fresh checkout without installing
_SRC = _HERE.parent / "src"
if str(_SRC) not in sys.path:
    sys.path.insert(0, str(_SRC))


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
