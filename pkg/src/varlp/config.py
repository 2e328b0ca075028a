"""Experiment configuration: JSON round-trip, named specs, builtin shortcuts.

A config names exponents and functions by kind-dictionaries mirroring the
catalogs, fixes every grid the harness sweeps, and centralizes the
tolerance policy per statement.  Parsing is strict: an unknown kind or a
malformed field raises ConfigError naming the offender, which the CLI maps
to exit code 1.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

from . import funcs
from .exponents import (Exponent, constant_exponent, piecewise_exponent,
                        smooth_exponent)
from .funcs import Func


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# spec dictionaries -> objects
# ---------------------------------------------------------------------------

def make_exponent(spec: dict, dim: int = 1) -> Exponent:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError(f"exponent spec must be a dict with a 'kind': {spec!r}")
    kind = spec["kind"]
    try:
        if kind == "constant":
            return constant_exponent(spec["p"], dim=dim)
        if kind == "piecewise":
            return piecewise_exponent(spec["breaks"], spec["values"], dim=dim)
        if kind == "smooth":
            return smooth_exponent(spec["formula_id"], spec.get("params", {}), dim=dim)
    except KeyError as exc:
        raise ConfigError(f"exponent spec {spec!r} is missing field {exc}") from exc
    except ValueError as exc:
        raise ConfigError(f"bad exponent spec {spec!r}: {exc}") from exc
    raise ConfigError(f"unknown exponent kind {kind!r}")


def make_func(spec: dict) -> Func:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError(f"function spec must be a dict with a 'kind': {spec!r}")
    kind = spec["kind"]
    try:
        if kind == "zero":
            return funcs.zero()
        if kind == "constant":
            return funcs.constant(spec["c"])
        if kind == "chi_interval":
            return funcs.chi_interval(spec["a"], spec["b"])
        if kind == "chi_ball":
            return funcs.chi_ball(spec["radius"])
        if kind == "chi_ring":
            return funcs.chi_ring(spec["k"])
        if kind == "power":
            return funcs.power(spec["a"])
        if kind == "sign":
            return funcs.sign_func()
        if kind == "dyadic_step":
            return funcs.dyadic_step(spec.get("k_max", 40))
        if kind == "scaled_ball":
            return funcs.scaled_ball(spec["radius"], spec.get("dim", 1))
        if kind == "lincomb":
            terms = [make_func(t) for t in spec["terms"]]
            return funcs.lincomb(terms, spec["coeffs"])
        if kind == "with_sign":
            return funcs.with_sign(make_func(spec["base"]))
        if kind == "abs_power":
            return funcs.abs_power(make_func(spec["base"]), spec.get("power", 1.0))
    except KeyError as exc:
        raise ConfigError(f"function spec {spec!r} is missing field {exc}") from exc
    except ValueError as exc:
        raise ConfigError(f"bad function spec {spec!r}: {exc}") from exc
    raise ConfigError(f"unknown function kind {kind!r}")


BUILTIN_EXPONENTS: dict[str, dict] = {
    "const1.5": {"kind": "constant", "p": 1.5},
    "const2": {"kind": "constant", "p": 2.0},
    "const3": {"kind": "constant", "p": 3.0},
    "const4": {"kind": "constant", "p": 4.0},
    "const10": {"kind": "constant", "p": 10.0},
    # piecewise exponents vary on a compact band and hold a constant value on
    # both tails, so the central-ball product and subset ratios stay bounded
    "pw23": {"kind": "piecewise", "breaks": [1.0, 2.0], "values": [2.0, 3.0, 2.0]},
    "pw32": {"kind": "piecewise", "breaks": [-2.0, 2.0], "values": [3.0, 2.0, 3.0]},
    "smooth21": {"kind": "smooth", "formula_id": "inv_one_plus_abs",
                 "params": {"base": 2.0, "amp": 1.0}},
}

BUILTIN_FUNCS: dict[str, dict] = {
    "zero": {"kind": "zero"},
    "chi01": {"kind": "chi_interval", "a": 0.0, "b": 1.0},
    "chi02": {"kind": "chi_interval", "a": 0.0, "b": 2.0},
    "chi_pm1": {"kind": "chi_ball", "radius": 1.0},
    "ring0": {"kind": "chi_ring", "k": 0},
    "ring1": {"kind": "chi_ring", "k": 1},
    "ring2": {"kind": "chi_ring", "k": 2},
    "sign": {"kind": "sign"},
    "absx": {"kind": "power", "a": 1.0},
    "dyadic_step": {"kind": "dyadic_step"},
    "f0_r1": {"kind": "scaled_ball", "radius": 1.0},
    "f0_r2": {"kind": "scaled_ball", "radius": 2.0},
}


@dataclass
class ExperimentConfig:
    """Everything a reproducible harness run depends on."""

    seed: int = 7
    dim: int = 1
    tol: float = 1e-9
    exponents: dict[str, dict] = field(default_factory=dict)
    functions: dict[str, dict] = field(default_factory=dict)
    grids: dict[str, Any] = field(default_factory=dict)
    tolerances: dict[str, dict[str, float]] = field(default_factory=dict)
    outputs: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        known = {"seed", "dim", "tol", "exponents", "functions", "grids",
                 "tolerances", "outputs"}
        bad = set(d) - known
        if bad:
            raise ConfigError(f"unknown config fields: {sorted(bad)}")
        return cls(**d)

    @classmethod
    def from_json_file(cls, path: str) -> "ExperimentConfig":
        try:
            with open(path) as fh:
                raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed JSON in {path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError(f"config root in {path} must be a JSON object")
        return cls.from_dict(raw)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    # -- lookups ---------------------------------------------------------------

    def exponent(self, name: str) -> Exponent:
        spec = self.exponents.get(name) or BUILTIN_EXPONENTS.get(name)
        if spec is None:
            raise ConfigError(f"unknown exponent name {name!r}")
        return make_exponent(spec, dim=self.dim)

    def func(self, name: str) -> Func:
        spec = self.functions.get(name) or BUILTIN_FUNCS.get(name)
        if spec is None:
            raise ConfigError(f"unknown function name {name!r}")
        return make_func(spec)

    def grid(self, name: str):
        merged = {**DEFAULT_GRIDS, **self.grids}
        if name not in merged:
            raise ConfigError(f"unknown grid name {name!r}")
        return merged[name]

    def stmt_tol(self, statement_id: str, key: str) -> float:
        merged_default = {**DEFAULT_TOLERANCES["default"],
                          **self.tolerances.get("default", {})}
        per_stmt = {**DEFAULT_TOLERANCES.get(statement_id, {}),
                    **self.tolerances.get(statement_id, {})}
        if key in per_stmt:
            return per_stmt[key]
        if key in merged_default:
            return merged_default[key]
        raise ConfigError(f"no tolerance {key!r} for statement {statement_id!r}")


DEFAULT_GRIDS: dict[str, Any] = {
    # radius grids are [k_lo, k_hi] dyadic exponent ranges
    "radius_k": [-10, 20],
    "chi_product_radius_k": [-5, 10],
    "cbmo_radius_k": [-4, 8],
    "equiv_radius_k": [-3, 6],
    "counterexample_radius_k": [-10, 20],
    "herz_k": [-20, 20],
    "vv_herz_k": [-6, 6],
    "p0_grid": [1.25, 1.5],
    "counterexample_p0": [2.0, 4.0],
    "delta_grid": [0.25, 0.5, 0.75],
    "embedding_q": [2.0, 4.0],
    "q_values": [0.5, 1.0, 2.0],
    "r_values": [1.5, 2.0, 3.0],
    "alpha": 0.0,
    "lr_index": 2.0,
    "subset_pair_count": 50,
    "minkowski_list_count": 50,
    "commutator_scale_m": [-4, 8],
    "commutator_converse_m": [1, 10],
    "identity_balls": [0.5, 1.0, 2.0, 4.0, 8.0],
    "identity_points_per_ball": 20,
}

DEFAULT_TOLERANCES: dict[str, dict[str, float]] = {
    "default": {"abs_tol": 1e-8, "rel_tol": 1e-6, "slope_tol": 0.05},
    "eq1.1": {"ratio_tol": 1e-4},
    "lemma2.2": {"cap": 100.0},
    "prop3.1": {"mean_tol": 1e-9, "fit_r2": 0.9},
    "prop3.2": {"cap": 1e6},
    "prop3.4": {"cap": 1e6},
    "thm4.1-converse-identity": {"abs_tol": 1e-6},
    "lemma5.1": {"abs_tol": 1e-8},
    "thm5.1": {"boundary_tol": 1e-9},
}
