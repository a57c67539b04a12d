"""Registry of deterministic chaotic maps and the orbit iterator.

Each entry stores the update rule, canonical parameters, a default starting
point (or a box to draw one from), the invariant bounds used as a sanity
check on emitted orbits, and a jitter half-width for replicate runs. New
maps can be added at runtime with :func:`register_map`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .series import DEFAULT_TRANSIENT, SystemDescriptor, TimeSeries

#: Any coordinate beyond this magnitude counts as an escaped orbit.
ESCAPE_RADIUS = 1e9

_TWO_PI = 2.0 * math.pi


class OrbitEscape(RuntimeError):
    """Raised when an orbit leaves the finite region; carries the step index."""

    def __init__(self, system: str, iteration: int):
        super().__init__(f"{system}: orbit escaped at iteration {iteration}")
        self.system = system
        self.iteration = iteration


@dataclass(frozen=True)
class MapDef:
    """Update rule plus canonical parameters and starting-point policy."""

    name: str
    dim: int
    make_step: Callable[[dict], Callable]
    params: dict = field(default_factory=dict)
    start: Optional[tuple] = None        # None: must be supplied or drawn
    start_box: Optional[tuple] = None    # ((lo, hi), ...) for seeded draws
    jitter: float = 0.0                  # half-width of seeded perturbation
    degenerate: tuple = ()               # starts rejected when drawing
    bounds: Optional[tuple] = None       # ((lo, hi), ...) invariant box
    coordinate_names: tuple = ("X",)
    validate: Optional[Callable[[dict, tuple], None]] = None
    note: str = ""


_REGISTRY: dict[str, MapDef] = {}

_IC_KEYS = ("x0", "y0", "z0")


def register_map(mapdef: MapDef) -> MapDef:
    if mapdef.name in _REGISTRY:
        raise ValueError(f"map {mapdef.name!r} already registered")
    _REGISTRY[mapdef.name] = mapdef
    return mapdef


def get_map(name: str) -> MapDef:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise ValueError(f"unknown map id {name!r}") from None


def registered_maps() -> tuple:
    return tuple(sorted(_REGISTRY))


def is_registered_map(name: str) -> bool:
    return name in _REGISTRY


def _is_degenerate(mapdef: MapDef, cand: tuple) -> bool:
    for bad in mapdef.degenerate:
        ref = bad if isinstance(bad, tuple) else (bad,)
        if all(abs(c - r) < 1e-9 for c, r in zip(cand, ref)):
            return True
    return False


def _resolve_start(mapdef: MapDef, params: dict, seed) -> tuple:
    names = _IC_KEYS[: mapdef.dim]
    given = [params.get(nm) for nm in names]
    if all(v is not None for v in given):
        return tuple(float(v) for v in given)
    if any(v is not None for v in given):
        missing = [nm for nm, v in zip(names, given) if v is None]
        raise ValueError(f"{mapdef.name}: incomplete start, missing {missing}")
    if seed is not None:
        box = mapdef.start_box
        if box is None:
            if mapdef.start is None:
                raise ValueError(f"{mapdef.name} needs an explicit start")
            box = tuple((s - mapdef.jitter, s + mapdef.jitter) for s in mapdef.start)
        rng = np.random.default_rng(seed)
        for _ in range(128):
            cand = tuple(float(rng.uniform(lo, hi)) for lo, hi in box)
            if not _is_degenerate(mapdef, cand):
                return cand
        raise RuntimeError(f"{mapdef.name}: could not draw a usable start")
    if mapdef.start is None:
        raise ValueError(f"{mapdef.name} needs an explicit start (x0) or a seed")
    return mapdef.start


def iterate_map(desc: SystemDescriptor, n: int, transient: int = DEFAULT_TRANSIENT) -> TimeSeries:
    """Selected coordinate of ``n`` post-transient iterates of a registered map.

    Parameter overrides and explicit starting points come through
    ``desc.params``; a seed randomizes the start inside the map's safe box.
    Escaped orbits raise :class:`OrbitEscape` with the failing step index.
    """
    mapdef = get_map(desc.system)
    if n < 2:
        raise ValueError("n must be >= 2")
    if transient < 0:
        raise ValueError("transient must be >= 0")
    if not 0 <= desc.coordinate < mapdef.dim:
        raise ValueError(
            f"coordinate {desc.coordinate} out of range for {mapdef.name} (dim {mapdef.dim})"
        )
    params = dict(mapdef.params)
    ics = {}
    for key, value in desc.params.items():
        if key in _IC_KEYS:
            ics[key] = value
        elif key in params:
            params[key] = float(value)
        else:
            raise ValueError(f"{mapdef.name}: unknown parameter {key!r}")
    state = _resolve_start(mapdef, ics, desc.seed)
    if mapdef.validate is not None:
        mapdef.validate(params, state)
    step = mapdef.make_step(params)

    out = np.empty(n, dtype=np.float64)
    coord = desc.coordinate
    limit = ESCAPE_RADIUS
    total = transient + n
    for i in range(total):
        state = step(state)
        for comp in state:
            if not (-limit < comp < limit):  # also catches NaN
                raise OrbitEscape(mapdef.name, i)
        if i >= transient:
            out[i - transient] = state[coord]

    if mapdef.bounds is not None:
        lo, hi = mapdef.bounds[coord]
        if out.min() < lo or out.max() > hi:
            raise OrbitEscape(mapdef.name, int(np.argmax((out < lo) | (out > hi))))
    return TimeSeries(out, desc, transient)


def schuster(z: float, n: int, transient: int = DEFAULT_TRANSIENT,
             x0: Optional[float] = None, seed: Optional[int] = None) -> TimeSeries:
    """Intermittent map x -> (x + x**z) mod 1; x0 is drawn from the seed when absent."""
    params = {"z": float(z)}
    if x0 is not None:
        params["x0"] = float(x0)
    return iterate_map(SystemDescriptor("schuster", params, seed=seed), n, transient)


# ---------------------------------------------------------------------------
# registry entries
# ---------------------------------------------------------------------------


def _logistic_step(p):
    a = p["a"]

    def step(s):
        x = s[0]
        return (a * x * (1.0 - x),)

    return step


def _sine_step(p):
    a = p["a"]

    def step(s):
        return (a * math.sin(math.pi * s[0]),)

    return step


def _tent_step(p):
    a = p["a"]

    def step(s):
        x = s[0]
        return (a * (x if x < 0.5 else 1.0 - x),)

    return step


def _lcg_step(p):
    a, c, m = p["a"], p["c"], p["m"]

    def step(s):
        return ((a * s[0] + c) % m,)

    return step


def _cusp_step(p):
    a = p["a"]

    def step(s):
        return (1.0 - a * math.sqrt(abs(s[0])),)

    return step


def _schuster_step(p):
    z = p["z"]

    def step(s):
        x = s[0]
        return ((x + x ** z) % 1.0,)

    return step


def _schuster_validate(params, start):
    if params["z"] <= 1.0:
        raise ValueError("schuster requires z > 1")
    if not 0.0 < start[0] < 1.0:
        raise ValueError("schuster requires x0 in (0, 1)")


def _henon_step(p):
    a, b = p["a"], p["b"]

    def step(s):
        x, y = s
        return (1.0 - a * x * x + b * y, x)

    return step


def _lozi_step(p):
    a, b = p["a"], p["b"]

    def step(s):
        x, y = s
        return (1.0 - a * abs(x) + b * y, x)

    return step


def _delayed_logistic_step(p):
    a = p["a"]

    def step(s):
        x, y = s
        return (a * x * (1.0 - y), x)

    return step


def _tinkerbell_step(p):
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]

    def step(s):
        x, y = s
        return (x * x - y * y + a * x + b * y, 2.0 * x * y + c * x + d * y)

    return step


def _burgers_step(p):
    a, b = p["a"], p["b"]

    def step(s):
        x, y = s
        return (a * x - y * y, b * y + x * y)

    return step


def _holmes_step(p):
    b, d = p["b"], p["d"]

    def step(s):
        x, y = s
        return (y, -b * x + d * y - y ** 3)

    return step


def _ikeda_step(p):
    a, b, g, mu = p["alpha"], p["beta"], p["gamma"], p["mu"]

    def step(s):
        x, y = s
        phi = b - a / (1.0 + x * x + y * y)
        c, sn = math.cos(phi), math.sin(phi)
        return (g + mu * (x * c - y * sn), mu * (x * sn + y * c))

    return step


def _sinai_step(p):
    delta = p["delta"]

    def step(s):
        x, y = s
        return ((x + y + delta * math.cos(_TWO_PI * y)) % 1.0, (x + 2.0 * y) % 1.0)

    return step


def _dissipative_standard_step(p):
    b, k = p["b"], p["k"]

    def step(s):
        x, y = s
        yn = (b * y + k * math.sin(x)) % _TWO_PI
        return ((x + yn) % _TWO_PI, yn)

    return step


def _arnold_cat_step(p):
    def step(s):
        x, y = s
        return ((x + y) % 1.0, (x + 2.0 * y) % 1.0)

    return step


_XY = ("X", "Y")

register_map(MapDef(
    "logistic", 1, _logistic_step, {"a": 4.0},
    start=(0.1,), start_box=((0.05, 0.95),),
    degenerate=(0.0, 0.5, 1.0),
    bounds=((0.0, 1.0),),
))

register_map(MapDef(
    "sine", 1, _sine_step, {"a": 1.0},
    start=(0.1,), start_box=((0.05, 0.95),),
    degenerate=(0.0, 1.0),
    bounds=((0.0, 1.0),),
))

register_map(MapDef(
    "tent", 1, _tent_step, {"a": 1.9999},
    start=(0.1,), start_box=((0.05, 0.95),),
    degenerate=(0.0,),
    bounds=((0.0, 1.0),),
    note="slope kept just under 2: the exact value collapses double-precision orbits to 0",
))

register_map(MapDef(
    "lcg", 1, _lcg_step, {"a": 7141.0, "c": 54773.0, "m": 259200.0},
    start=(0.0,), start_box=((0.0, 259200.0),),
    bounds=((0.0, 259200.0),),
    note="full-period generator; all values within one period are distinct",
))

register_map(MapDef(
    "cusp", 1, _cusp_step, {"a": 2.0},
    start=(0.5,), start_box=((-0.9, 0.9),),
    bounds=((-1.0, 1.0),),
))

register_map(MapDef(
    "schuster", 1, _schuster_step, {"z": 2.0},
    start=None, start_box=((1e-12, 1.0),),
    degenerate=(0.0,),
    bounds=((0.0, 1.0),),
    validate=_schuster_validate,
))

register_map(MapDef(
    "henon", 2, _henon_step, {"a": 1.4, "b": 0.3},
    start=(0.0, 0.9), jitter=0.05,
    bounds=((-1.5, 1.5), (-1.5, 1.5)),
    coordinate_names=_XY,
))

register_map(MapDef(
    "lozi", 2, _lozi_step, {"a": 1.7, "b": 0.5},
    start=(-0.1, 0.1), jitter=0.05,
    bounds=((-2.0, 2.0), (-2.0, 2.0)),
    coordinate_names=_XY,
))

register_map(MapDef(
    "delayed_logistic", 2, _delayed_logistic_step, {"a": 2.27},
    start=(0.001, 0.001), jitter=0.0005,
    bounds=((0.0, 1.3), (0.0, 1.3)),
    coordinate_names=_XY,
))

register_map(MapDef(
    "tinkerbell", 2, _tinkerbell_step, {"a": 0.9, "b": -0.6013, "c": 2.0, "d": 0.5},
    start=(-0.72, -0.64), jitter=0.05,
    bounds=((-2.0, 2.0), (-2.0, 2.0)),
    coordinate_names=_XY,
))

register_map(MapDef(
    "burgers", 2, _burgers_step, {"a": 0.75, "b": 1.75},
    start=(-0.1, 0.1), jitter=0.02,
    bounds=((-4.0, 0.5), (-1.8, 1.8)),
    coordinate_names=_XY,
))

register_map(MapDef(
    "holmes", 2, _holmes_step, {"b": 0.2, "d": 2.77},
    start=(1.6, 0.0), jitter=0.1,
    bounds=((-3.0, 3.0), (-3.0, 3.0)),
    coordinate_names=_XY,
))

register_map(MapDef(
    "ikeda", 2, _ikeda_step, {"alpha": 6.0, "beta": 0.4, "gamma": 1.0, "mu": 0.9},
    start=(0.0, 0.0), jitter=0.1,
    bounds=((-1.0, 2.0), (-2.5, 1.5)),
    coordinate_names=_XY,
))

register_map(MapDef(
    "sinai", 2, _sinai_step, {"delta": 0.1},
    start=(0.5, 0.5), start_box=((0.0, 1.0), (0.0, 1.0)),
    bounds=((0.0, 1.0), (0.0, 1.0)),
    coordinate_names=_XY,
))

register_map(MapDef(
    "dissipative_standard", 2, _dissipative_standard_step, {"b": 0.1, "k": 8.8},
    start=(0.1, 0.1), start_box=((0.0, _TWO_PI), (0.0, _TWO_PI)),
    degenerate=((0.0, 0.0),),
    bounds=((0.0, _TWO_PI), (0.0, _TWO_PI)),
    coordinate_names=_XY,
))

register_map(MapDef(
    "arnold_cat", 2, _arnold_cat_step, {},
    start=(0.0, 0.7071067811865476), start_box=((0.0, 1.0), (0.0, 1.0)),
    degenerate=((0.0, 0.0),),
    bounds=((0.0, 1.0), (0.0, 1.0)),
    coordinate_names=_XY,
))
