"""Instance configuration: parsing, validation, round-trip."""

from __future__ import annotations

import json
from typing import Dict, List, Optional, Tuple

from .laxalg import Flavor, TyurinData
from .linalg import ExactMatrix
from .matfun import Cycle
from .ratfun import MarkedSphere
from .scalars import Scalar, parse_scalar

__all__ = ["InstanceConfig", "ConfigError"]


class ConfigError(ValueError):
    pass


class InstanceConfig:
    """A fully validated problem instance.

    JSON shape:
        {
          "flavor": {"kind": "sl", "n": 2},
          "weak_points": [{"gamma": "1", "alpha": ["1", "0"]}, ...],
          "degree_window": [-4, 4],
          "jet_window": 6,
          "pole_budget": 1,
          "cycle": {"enclosed": ["P+", "g0", "g1"]},
          "seed": 0
        }
    All scalars are strings in the exact format; nothing is ever parsed as
    a float.
    """

    def __init__(self, flavor: Flavor, tyurin: TyurinData,
                 degree_window: Tuple[int, int], jet_window: int,
                 pole_budget: int, cycle: Cycle, seed: int,
                 raw: Optional[Dict] = None):
        self.flavor = flavor
        self.tyurin = tyurin
        self.degree_window = degree_window
        self.jet_window = jet_window
        self.pole_budget = pole_budget
        self.cycle = cycle
        self.seed = seed
        self.raw = raw if raw is not None else self.as_dict()

    @staticmethod
    def from_dict(data: Dict) -> "InstanceConfig":
        try:
            fl = data["flavor"]
            flavor = Flavor(fl["kind"], int(fl["n"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad flavor section: {exc}") from exc
        wps = data.get("weak_points", [])
        gammas: List[Scalar] = []
        alphas: List[ExactMatrix] = []
        for i, wp in enumerate(wps):
            try:
                g = parse_scalar(wp["gamma"])
            except (KeyError, ValueError) as exc:
                raise ConfigError(f"weak point {i}: bad gamma: {exc}") from exc
            if any(g == h for h in gammas):
                raise ConfigError(f"duplicate weak point {wp['gamma']}")
            gammas.append(g)
            alpha_strs = wp.get("alpha")
            if alpha_strs is None:
                raise ConfigError(f"weak point {i}: missing alpha")
            if len(alpha_strs) != flavor.size:
                raise ConfigError(
                    f"weak point {i}: alpha must have {flavor.size} entries")
            try:
                alphas.append(ExactMatrix.column(
                    [parse_scalar(x) for x in alpha_strs]))
            except ValueError as exc:
                raise ConfigError(f"weak point {i}: bad alpha: {exc}") from exc
        try:
            sphere = MarkedSphere(gammas)
            tyurin = TyurinData(sphere, alphas, flavor)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        window = tuple(data.get("degree_window", [-4, 4]))
        if len(window) != 2 or window[0] > window[1]:
            raise ConfigError("degree_window must be [lo, hi] with lo <= hi")
        jet_window = int(data.get("jet_window", 6))
        if jet_window < 1:
            raise ConfigError("jet_window must be >= 1")
        pole_budget = int(data.get("pole_budget", 1))
        if pole_budget < 0:
            raise ConfigError("pole_budget must be >= 0")
        cyc = data.get("cycle")
        if cyc is None:
            cycle = Cycle.separating(sphere)
        else:
            try:
                cycle = Cycle.from_labels(cyc["enclosed"], sphere)
            except (KeyError, ValueError) as exc:
                raise ConfigError(f"bad cycle: {exc}") from exc
        seed = int(data.get("seed", 0))
        return InstanceConfig(flavor, tyurin, (window[0], window[1]),
                              jet_window, pole_budget, cycle, seed, data)

    @staticmethod
    def from_json(text: str) -> "InstanceConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}") from exc
        return InstanceConfig.from_dict(data)

    @staticmethod
    def load(path: str) -> "InstanceConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return InstanceConfig.from_json(fh.read())

    def as_dict(self) -> Dict:
        return {
            "flavor": {"kind": self.flavor.kind, "n": self.flavor.n},
            "weak_points": [
                {
                    "gamma": str(g),
                    "alpha": [str(self.tyurin.alphas[s][i, 0])
                              for i in range(self.flavor.size)],
                }
                for s, g in enumerate(self.tyurin.sphere.weak_points)
            ],
            "degree_window": list(self.degree_window),
            "jet_window": self.jet_window,
            "pole_budget": self.pole_budget,
            "cycle": {"enclosed": self.cycle.labels()},
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)
