"""Scenario files: a YAML document describing the model, cycles and tolerances.

Example::

    model:
      m: 2
      metric: identity          # or an explicit symmetric 4m x 4m matrix
      lattice: standard
      rotation: [[1,0,0],[0,1,0],[0,0,1]]   # optional, acts on (I, J, K)
    cycles:
      - id: Q
        kind: linear
        vectors: [[1,0,0,0,0,0,0,0], [0,1,0,0,0,0,0,0],
                  [0,0,1,0,0,0,0,0], [0,0,0,1,0,0,0,0]]
      - id: W
        kind: parametrized-preset
        preset: wavy-torus
        params: {epsilon: 0.01, frequency: 4, grid: 32}
    tolerances: {tangent: 1.0e-8}
    scan: {grid_points: 256}

Numbers inside vectors and matrices may be integers, decimals or strings
such as ``"1/3"``; they are parsed exactly before conversion to floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np
import yaml

from .cycle_geom import LinearCycle, riemannian_area
from .errors import ConfigError, TrisymError
from .genericity import Tolerances
from .hk_core import QuaternionicFrame, rotate_frame, standard_frame
from .presets import build_preset

DEFAULT_SCAN_POINTS = 256


@dataclass
class Scenario:
    frame: QuaternionicFrame
    cycles: dict
    kinds: dict
    tolerances: Tolerances = field(default_factory=Tolerances)
    scan_points: int = DEFAULT_SCAN_POINTS

    @property
    def m(self) -> int:
        return self.frame.m

    def cycle(self, cycle_id: str):
        try:
            return self.cycles[cycle_id]
        except KeyError:
            raise ConfigError(f"unknown cycle id {cycle_id!r}; known: {', '.join(self.cycles)}") from None


def parse_rational(value) -> Fraction:
    if isinstance(value, bool) or value is None:
        raise ConfigError(f"not a number: {value!r}")
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a rational number: {value!r}") from None


def _matrix(data, shape, what) -> np.ndarray:
    try:
        rows = [[float(parse_rational(x)) for x in row] for row in data]
    except TypeError:
        raise ConfigError(f"{what} must be a list of rows") from None
    arr = np.array(rows, dtype=float) if rows else np.zeros((0, 0))
    if arr.shape != shape:
        raise ConfigError(f"{what} must have shape {shape}, got {arr.shape}")
    return arr


def _build_frame(model) -> QuaternionicFrame:
    if not isinstance(model, dict):
        raise ConfigError("'model' must be a mapping")
    m = model.get("m")
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ConfigError(f"model.m must be a positive integer, got {m!r}")
    lattice = model.get("lattice", "standard")
    if lattice != "standard":
        raise ConfigError(f"unsupported lattice {lattice!r}")
    frame = standard_frame(m)
    metric = model.get("metric", "identity")
    if metric != "identity":
        g = _matrix(metric, (4 * m, 4 * m), "model.metric")
        if np.max(np.abs(g - g.T)) > 0:
            raise ConfigError("model.metric must be symmetric")
        if np.linalg.eigvalsh(g)[0] <= 0:
            raise ConfigError("model.metric must be positive definite")
        frame = QuaternionicFrame(g=g, I=frame.I, J=frame.J, K=frame.K)
    if "rotation" in model:
        R = _matrix(model["rotation"], (3, 3), "model.rotation")
        try:
            frame = rotate_frame(frame, R)
        except TrisymError as exc:
            raise ConfigError(f"model.rotation: {exc}") from None
    return frame


def _build_cycle(entry, m):
    kind = entry.get("kind")
    if kind == "linear":
        vecs = entry.get("vectors")
        if not isinstance(vecs, list) or not vecs:
            raise ConfigError(f"cycle {entry.get('id')!r}: 'vectors' must be a non-empty list")
        arr = _matrix(vecs, (len(vecs), 4 * m), f"cycle {entry['id']!r} vectors")
        return LinearCycle(arr, name=entry["id"])
    if kind == "parametrized-preset":
        params = dict(entry.get("params") or {})
        if "vectors" in params:
            vecs = params["vectors"]
            params["vectors"] = _matrix(vecs, (len(vecs), 4 * m), f"cycle {entry['id']!r} vectors")
        try:
            cyc = build_preset(entry.get("preset"), m, params | {"name": entry["id"]})
        except TypeError as exc:
            raise ConfigError(f"cycle {entry['id']!r}: bad preset parameters ({exc})") from None
        if cyc.dim != 4 * m:
            raise ConfigError(f"cycle {entry['id']!r} lives in R^{cyc.dim}, model is R^{4 * m}")
        cyc.check_seam()
        return cyc
    raise ConfigError(f"cycle {entry.get('id')!r}: unknown kind {kind!r}")


def load_scenario(data) -> Scenario:
    """Build a :class:`Scenario` from a parsed document."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a mapping")
    try:
        frame = _build_frame(data.get("model"))
        entries = data.get("cycles") or []
        if not isinstance(entries, list):
            raise ConfigError("'cycles' must be a list")
        cycles, kinds = {}, {}
        for entry in entries:
            if not isinstance(entry, dict) or not isinstance(entry.get("id"), str) or not entry["id"]:
                raise ConfigError(f"every cycle needs a string id: {entry!r}")
            cid = entry["id"]
            if cid in cycles:
                raise ConfigError(f"duplicate cycle id {cid!r}")
            cyc = _build_cycle(entry, frame.m)
            riemannian_area(cyc, frame)  # rejects degenerate cycles early
            cycles[cid] = cyc
            kinds[cid] = entry["kind"] if entry["kind"] == "linear" else entry.get("preset")
        tols = Tolerances.from_mapping(data.get("tolerances"))
        scan = data.get("scan") or {}
        points = scan.get("grid_points", DEFAULT_SCAN_POINTS)
        if not isinstance(points, int) or isinstance(points, bool):
            raise ConfigError("scan.grid_points must be an integer")
    except ConfigError:
        raise
    except TrisymError as exc:
        raise ConfigError(str(exc)) from None
    return Scenario(frame=frame, cycles=cycles, kinds=kinds, tolerances=tols, scan_points=points)


def read_scenario(path) -> Scenario:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config: {exc}") from None
    return load_scenario(data)
