from __future__ import annotations
import os
import json
from enum import Enum
from pathlib import Path
from typing import Optional, Any

from .util import user_data_dir, logger as log
from .util import encode_json, read_json_with_comments


class OutputFormat(Enum):
    text = "Human readable digit expansion"
    json = "Machine readable JSON (schema 1)"


class Setting:
    def __init__(self, name: str, default, desc=""):
        self.name = name
        self.desc = desc
        self.default = default

    def str_to_enum(self, s: str):
        assert isinstance(self.default, Enum)
        EnumType = type(self.default)
        try:
            return EnumType[s]
        except KeyError:
            return self.default


class Settings:
    default_path = user_data_dir / "settings.json"

    prime: int
    _prime = Setting("Prime", 5, "Default odd prime p")

    precision: int
    _precision = Setting(
        "Precision", 20, "Target absolute precision M, results are known modulo p^M"
    )

    guard_digits: int
    _guard_digits = Setting(
        "Guard Digits",
        10,
        "Extra digits carried internally, evaluation runs at precision M + G and is truncated",
    )

    term_budget: int
    _term_budget = Setting(
        "Term Budget",
        1_000_000,
        "Maximum number of series evaluations p^(kN) a distribution reduction may use",
    )

    numeric_budget: int
    _numeric_budget = Setting(
        "Numeric Budget",
        100_000_000,
        "Maximum number of integrand evaluations made by the numeric fermionic integral",
    )

    reduction_cap: int
    _reduction_cap = Setting(
        "Reduction Cap", 4, "Largest k accepted for a p^k distribution reduction"
    )

    kmax_cap: int
    _kmax_cap = Setting("Euler Table Cap", 512, "Highest degree an Euler table may be built to")

    output_format: OutputFormat
    _output_format = Setting("Output Format", OutputFormat.text, "Text or JSON output")

    seed: int
    _seed = Setting("Seed", 0, "Seed for randomized identity instances")

    _values: dict[str, Any]

    def __init__(self):
        self.restore()

    def __getattr__(self, name: str):
        if name in self._values:
            return self._values[name]
        return object.__getattribute__(self, name)

    def __setattr__(self, name: str, value):
        if name in self._values:
            self._values[name] = value
        else:
            object.__setattr__(self, name, value)

    def restore(self):
        self.__dict__["_values"] = {
            k[1:]: v.default for k, v in Settings.__dict__.items() if isinstance(v, Setting)
        }
        self.apply_environment()

    def apply_environment(self):
        if budget := os.environ.get("PADIC_EULER_BUDGET"):
            try:
                self._values["term_budget"] = int(budget)
            except ValueError:
                log.error(f"PADIC_EULER_BUDGET: {budget} is not a valid term budget")

    def save(self, path: Optional[Path] = None):
        path = path or self.default_path
        with open(path, "w") as file:
            file.write(json.dumps(self._values, default=encode_json, indent=4))

    def load(self, path: Optional[Path] = None):
        path = path or self.default_path
        if not path.exists():
            self.save(path)  # create new file with defaults
            return

        log.info(f"Loading settings from {path}")
        try:
            contents = read_json_with_comments(path)
            for k, v in contents.items():
                setting: Setting | None = getattr(Settings, f"_{k}", None)
                if setting is not None:
                    if isinstance(setting.default, Enum):
                        self._values[k] = setting.str_to_enum(v)
                    elif isinstance(setting.default, type(v)) and not isinstance(v, bool):
                        self._values[k] = v
                    else:
                        log.error(f"{path}: {v} is not a valid value for '{k}'")
                        self._values[k] = setting.default
        except Exception as e:
            log.error(f"Failed to load settings: {e}")
        self.apply_environment()


settings = Settings()
