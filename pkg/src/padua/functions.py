"""Built-in test functions on the square, shared by the CLI and the studies."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TestFunction:
    """A named scalar function on the square with a smoothness note."""

    __test__ = False  # not a pytest class despite the name

    name: str
    evaluator: object
    smoothness_note: str

    def __call__(self, x1, x2):
        return self.evaluator(x1, x2)


def _const(x1, x2):
    return np.ones_like(np.asarray(x1, dtype=float) * np.asarray(x2, dtype=float))


def _coord1(x1, x2):
    return np.asarray(x1, dtype=float) + 0.0 * np.asarray(x2, dtype=float)


def _exp_sum(x1, x2):
    return np.exp(np.asarray(x1, dtype=float) + np.asarray(x2, dtype=float))


def _franke(x1, x2):
    # classic four-Gaussian benchmark, mapped from the unit square onto [-1,1]^2
    u = 4.5 * (np.asarray(x1, dtype=float) + 1.0)
    v = 4.5 * (np.asarray(x2, dtype=float) + 1.0)
    return (
        0.75 * np.exp(-((u - 2.0) ** 2 + (v - 2.0) ** 2) / 4.0)
        + 0.75 * np.exp(-((u + 1.0) ** 2) / 49.0 - (v + 1.0) / 10.0)
        + 0.5 * np.exp(-((u - 7.0) ** 2 + (v - 3.0) ** 2) / 4.0)
        - 0.2 * np.exp(-((u - 4.0) ** 2) - (v - 7.0) ** 2)
    )


def _abs_diag(x1, x2):
    return np.abs(np.asarray(x1, dtype=float) - np.asarray(x2, dtype=float))


def _runge2d(x1, x2):
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    return 1.0 / (1.0 + 16.0 * (x1**2 + x2**2))


BUILTIN_FUNCTIONS = {
    f.name: f
    for f in (
        TestFunction("const", _const, "constant"),
        TestFunction("coord1", _coord1, "degree-1 polynomial"),
        TestFunction("franke", _franke, "smooth, four Gaussian bumps"),
        TestFunction("exp_sum", _exp_sum, "entire, super-geometric convergence"),
        TestFunction("abs_diag", _abs_diag, "Lipschitz, kink along the diagonal"),
        TestFunction("runge2d", _runge2d, "analytic, steep radial gradient"),
    )
}


def get(name):
    """Look up a built-in by name; raises KeyError with the known names."""
    try:
        return BUILTIN_FUNCTIONS[name]
    except KeyError:
        known = ", ".join(sorted(BUILTIN_FUNCTIONS))
        raise KeyError(f"unknown function {name!r}; builtins: {known}") from None
