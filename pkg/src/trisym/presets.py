"""Built-in parametrized cycles.

``flat-embed``
    A linear subtorus written as a map ``u -> sum_i u_i v_i``. Quadrature on
    it must reproduce the exact linear-cycle areas.

``wavy-torus``
    The coordinate 2-torus ``span{e0, e1}`` with a transverse ripple
    ``eps*sin(2 pi k s) e2 + eps*cos(2 pi k t) e3``. Its integrands are
    genuinely non-constant.
"""

import math

import numpy as np

from .cycle_geom import LinearCycle, ParametrizedCycle
from .errors import InvalidArgumentError

PRESETS = ("flat-embed", "wavy-torus")


def flat_embed(vectors, grid=16, name="flat-embed") -> ParametrizedCycle:
    lin = LinearCycle(vectors)
    V = lin.vectors

    def position(u):
        return np.asarray(u) @ V

    def jacobian(u):
        return np.broadcast_to(V.T, (len(u),) + V.T.shape).copy()

    return ParametrizedCycle(lin.n, lin.dim, position, jacobian, (grid,), name)


def wavy_torus(m=1, epsilon=0.01, frequency=4, grid=32, name="wavy-torus") -> ParametrizedCycle:
    if m < 1:
        raise InvalidArgumentError("wavy-torus needs m >= 1")
    if int(frequency) != frequency or frequency < 1:
        raise InvalidArgumentError("frequency must be a positive integer")
    dim = 4 * m
    w = 2.0 * math.pi * frequency
    eps = float(epsilon)

    def position(u):
        u = np.asarray(u, dtype=float)
        x = np.zeros((len(u), dim))
        x[:, 0] = u[:, 0]
        x[:, 1] = u[:, 1]
        x[:, 2] = eps * np.sin(w * u[:, 0])
        x[:, 3] = eps * np.cos(w * u[:, 1])
        return x

    def jacobian(u):
        u = np.asarray(u, dtype=float)
        jac = np.zeros((len(u), dim, 2))
        jac[:, 0, 0] = 1.0
        jac[:, 1, 1] = 1.0
        jac[:, 2, 0] = eps * w * np.cos(w * u[:, 0])
        jac[:, 3, 1] = -eps * w * np.sin(w * u[:, 1])
        return jac

    return ParametrizedCycle(1, dim, position, jacobian, (grid,), name)


def build_preset(preset: str, m: int, params: dict) -> ParametrizedCycle:
    params = dict(params or {})
    if preset == "flat-embed":
        if "vectors" not in params:
            raise InvalidArgumentError("flat-embed needs 'vectors'")
        return flat_embed(params.pop("vectors"), **params)
    if preset == "wavy-torus":
        return wavy_torus(m=m, **params)
    raise InvalidArgumentError(f"unknown preset {preset!r}; known: {', '.join(PRESETS)}")
