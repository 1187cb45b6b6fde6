"""Configuration utilities for loading and validating run settings."""

import dataclasses
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import yaml
from dotenv import load_dotenv

from src.utils.exceptions import ConfigError


class ConfigManager:
    """Manage configuration settings from environment variables and YAML/JSON files."""

    def __init__(self, config_path: Optional[str] = None):
        """
        Initialize the configuration manager.

        Args:
            config_path (str, optional): Path to the YAML or JSON run configuration.
                If None, the CONFIG_PATH env variable is used; when that is unset
                too, only environment settings are available.
        """
        # Load environment variables
        load_dotenv()

        self.config_path = config_path or os.getenv("CONFIG_PATH")
        self._config: Optional[Dict[str, Any]] = None

    @property
    def config(self) -> Dict[str, Any]:
        """Parsed config file, loaded on first access (empty without a path)."""
        if self._config is None:
            self._config = self._load_config_file() if self.config_path else {}
        return self._config

    def _load_config_file(self) -> Dict[str, Any]:
        """
        Load configuration from a YAML file (JSON is accepted as a YAML subset).

        Returns:
            Dict[str, Any]: Configuration dictionary

        Raises:
            ConfigError: If the file is missing, unparsable or not a mapping
        """
        config_file = Path(self.config_path)

        if not config_file.exists():
            raise ConfigError(f"config file not found: {self.config_path}")

        with open(config_file, "r") as f:
            try:
                loaded = yaml.safe_load(f)
            except yaml.YAMLError as e:
                mark = getattr(e, "problem_mark", None)
                where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
                raise ConfigError(f"error parsing {config_file.name}{where}: {e}")

        if loaded is None:
            return {}
        if not isinstance(loaded, dict):
            raise ConfigError("top level of the config file must be a mapping")
        return loaded

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get configuration value by key with dot notation support.

        Examples:
            config.get("target.tooth_pairs")

        Args:
            key (str): Configuration key with dot notation for nested keys
            default (Any, optional): Default value if key not found

        Returns:
            Any: Configuration value or default
        """
        keys = key.split(".")
        value = self.config

        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        return value

    def get_env(self, key: str, default: Any = None) -> Any:
        """
        Get environment variable.

        Args:
            key (str): Environment variable name
            default (Any, optional): Default value if environment variable not found

        Returns:
            Any: Environment variable value or default
        """
        return os.getenv(key, default)

    @property
    def output_dir(self) -> str:
        """Get the output directory, environment first."""
        return self.get_env("OUTPUT_DIRECTORY") or self.get("output.directory", "data/output")


# Singleton instance
_config_manager = None


def get_config() -> ConfigManager:
    """
    Get the singleton ConfigManager instance.

    Returns:
        ConfigManager: Configuration manager instance
    """
    global _config_manager
    if _config_manager is None:
        _config_manager = ConfigManager()
    return _config_manager


def reset_config() -> None:
    """Forget the singleton so the next ``get_config`` re-reads the environment."""
    global _config_manager
    _config_manager = None


# ---------------------------------------------------------------------------
# Typed run configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DispersionSettings:
    model: str = "ln_schlarb_1994"
    temperature_k: float = 298.15


@dataclass(frozen=True)
class PumpSettings:
    center_nm: float = 1603.8
    fwhm_nm: float = 2.5


@dataclass(frozen=True)
class CrystalSettings:
    length_nm: float = 3.0e7
    # None: solved from the dispersion model
    poling_period_nm: Optional[float] = None


@dataclass(frozen=True)
class TargetSettings:
    """Declarative target PMF. Fields not used by ``kind`` are ignored."""

    kind: str = "comb"
    # hermite_gauss
    order: int = 2
    width_nm: Optional[float] = None
    sign_window_rad_per_nm: Optional[float] = None
    # comb
    tooth_pairs: int = 5
    spacing_rad_per_nm: Optional[float] = None
    tooth_width_nm: Optional[float] = None
    layout: str = "half_integer"
    # tabulated
    path: Optional[str] = None
    coefficient: Optional[float] = None


@dataclass(frozen=True)
class GridSettings:
    size: int = 1024
    # None: degenerate wavelength, twice the pump centre
    center_nm: Optional[float] = None
    # room for the ten-tooth comb (outer teeth about 85 nm out) moved by a 100 nm width offset
    span_nm: float = 480.0
    pmf_points: int = 4096


@dataclass(frozen=True)
class HomSettings:
    # None: 2.5 crystal walk-off times
    tau_max_fs: Optional[float] = None
    step_fs: float = 10.0


@dataclass(frozen=True)
class RateSettings:
    pump_power_w: float = 1.0e-3
    pump_waist_um: float = 50.0
    biphoton_waist_um: float = 50.0
    # None: Miller-scaled from d_ref_pm_per_v at the reference triple
    d_eff_pm_per_v: Optional[float] = -3.26
    d_ref_pm_per_v: float = -4.6
    reference_wavelengths_nm: Tuple[float, float, float] = (532.0, 1064.0, 1064.0)
    # False: indices from the dispersion model
    footnote_indices: bool = True
    n_pump: float = 2.2026
    n_signal: float = 2.1302
    n_idler: float = 2.0612
    ng_signal: float = 2.3276
    ng_idler: float = 2.2335


@dataclass(frozen=True)
class ToleranceSettings:
    resolutions_nm: Tuple[float, ...] = (0.0, 50.0, 100.0, 200.0, 400.0)
    repetitions: int = 100
    seed: int = 0
    offsets_nm: Tuple[float, ...] = (100.0, 0.0, -100.0)


@dataclass(frozen=True)
class OutputSettings:
    directory: str = "data/output"


@dataclass(frozen=True)
class RunConfig:
    """All physical and numerical parameters of one design/analysis run."""

    dispersion: DispersionSettings = field(default_factory=DispersionSettings)
    pump: PumpSettings = field(default_factory=PumpSettings)
    crystal: CrystalSettings = field(default_factory=CrystalSettings)
    target: TargetSettings = field(default_factory=TargetSettings)
    grid: GridSettings = field(default_factory=GridSettings)
    hom: HomSettings = field(default_factory=HomSettings)
    rate: RateSettings = field(default_factory=RateSettings)
    tolerance: ToleranceSettings = field(default_factory=ToleranceSettings)
    output: OutputSettings = field(default_factory=OutputSettings)
    source: Optional[str] = None

    @property
    def degenerate_nm(self) -> float:
        return self.grid.center_nm or 2.0 * self.pump.center_nm

    def with_overrides(self, **sections: Any) -> "RunConfig":
        """Return a copy with individual section fields replaced.

        Args:
            **sections: Mapping of section name to a dict of field overrides

        Returns:
            RunConfig: Updated configuration (validated again)
        """
        updated = {
            name: dataclasses.replace(getattr(self, name), **values)
            for name, values in sections.items()
        }
        config = dataclasses.replace(self, **updated)
        validate_run_config(config)
        return config


_SECTIONS = {
    "dispersion": DispersionSettings,
    "pump": PumpSettings,
    "crystal": CrystalSettings,
    "target": TargetSettings,
    "grid": GridSettings,
    "hom": HomSettings,
    "rate": RateSettings,
    "tolerance": ToleranceSettings,
    "output": OutputSettings,
}


def _coerce(value: Any, annotation: Any, path: str) -> Any:
    """Coerce a raw config value to the field's declared type."""
    text = str(annotation)
    if value is None:
        if "Optional" in text or "None" in text:
            return None
        raise ConfigError("value may not be null", path)

    if "Tuple" in text or "tuple" in text:
        if not isinstance(value, (list, tuple)):
            raise ConfigError(f"expected a list, got {value!r}", path)
        return tuple(_as_float(item, f"{path}[{i}]") for i, item in enumerate(value))
    if "bool" in text:
        if not isinstance(value, bool):
            raise ConfigError(f"expected true/false, got {value!r}", path)
        return value
    if "int" in text and "float" not in text:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"expected an integer, got {value!r}", path)
        return value
    if "float" in text:
        return _as_float(value, path)
    if "str" in text:
        if not isinstance(value, str):
            raise ConfigError(f"expected a string, got {value!r}", path)
        return value
    return value


def _as_float(value: Any, path: str) -> float:
    if isinstance(value, bool):
        raise ConfigError(f"expected a number, got {value!r}", path)
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"malformed number {value!r}", path)


def _build_section(name: str, raw: Any) -> Any:
    section_cls = _SECTIONS[name]
    if raw is None:
        return section_cls()
    if not isinstance(raw, dict):
        raise ConfigError("section must be a mapping", name)

    fields = {f.name: f for f in dataclasses.fields(section_cls)}
    unknown = sorted(set(raw) - set(fields))
    if unknown:
        raise ConfigError(
            f"unknown key(s) {', '.join(unknown)}; allowed: {', '.join(fields)}",
            f"{name}.{unknown[0]}",
        )

    values = {
        key: _coerce(value, fields[key].type, f"{name}.{key}") for key, value in raw.items()
    }
    return section_cls(**values)


def validate_run_config(config: RunConfig) -> None:
    """
    Enforce the module-level invariants on a run configuration.

    Args:
        config (RunConfig): Configuration to check

    Raises:
        ConfigError: Naming the first violating field
    """
    positive = {
        "dispersion.temperature_k": config.dispersion.temperature_k,
        "pump.center_nm": config.pump.center_nm,
        "pump.fwhm_nm": config.pump.fwhm_nm,
        "crystal.length_nm": config.crystal.length_nm,
        "grid.span_nm": config.grid.span_nm,
        "hom.step_fs": config.hom.step_fs,
        "rate.pump_power_w": config.rate.pump_power_w,
        "rate.pump_waist_um": config.rate.pump_waist_um,
        "rate.biphoton_waist_um": config.rate.biphoton_waist_um,
    }
    optional_positive = {
        "crystal.poling_period_nm": config.crystal.poling_period_nm,
        "target.width_nm": config.target.width_nm,
        "target.spacing_rad_per_nm": config.target.spacing_rad_per_nm,
        "target.tooth_width_nm": config.target.tooth_width_nm,
        "target.sign_window_rad_per_nm": config.target.sign_window_rad_per_nm,
        "grid.center_nm": config.grid.center_nm,
        "hom.tau_max_fs": config.hom.tau_max_fs,
    }
    for path, value in positive.items():
        if not value > 0:
            raise ConfigError(f"must be > 0, got {value}", path)
    for path, value in optional_positive.items():
        if value is not None and not value > 0:
            raise ConfigError(f"must be > 0, got {value}", path)

    size = config.grid.size
    if size < 4 or size & (size - 1):
        raise ConfigError(f"must be a power of two >= 4, got {size}", "grid.size")
    if config.grid.pmf_points < 16:
        raise ConfigError("must be >= 16", "grid.pmf_points")

    target = config.target
    if target.kind not in ("hermite_gauss", "comb", "tabulated"):
        raise ConfigError(
            f"unknown target kind '{target.kind}'; allowed: hermite_gauss, comb, tabulated",
            "target.kind",
        )
    if target.order < 0:
        raise ConfigError("must be >= 0", "target.order")
    if target.tooth_pairs < 1:
        raise ConfigError("must be >= 1", "target.tooth_pairs")
    if target.layout not in ("half_integer", "integer"):
        raise ConfigError("must be 'half_integer' or 'integer'", "target.layout")
    if target.kind == "tabulated":
        if not target.path:
            raise ConfigError("tabulated target requires a CSV path", "target.path")
        if not Path(target.path).exists():
            raise ConfigError(f"file not found: {target.path}", "target.path")

    if config.tolerance.repetitions < 2:
        raise ConfigError("must be >= 2", "tolerance.repetitions")
    if any(r < 0 for r in config.tolerance.resolutions_nm):
        raise ConfigError("resolutions must be >= 0", "tolerance.resolutions_nm")
    if config.tolerance.seed < 0:
        raise ConfigError("must be >= 0", "tolerance.seed")


def parse_config(path: Optional[str] = None) -> RunConfig:
    """
    Load and validate a run configuration file.

    Missing sections and keys take the defaults of the reference design
    (30 mm crystal, 1603.8 nm pump of 2.50 nm FWHM, ten-tooth comb target).

    Args:
        path (str, optional): YAML or JSON file. If None, CONFIG_PATH is used and
            an unset CONFIG_PATH yields the defaults.

    Returns:
        RunConfig: Fully validated configuration

    Raises:
        ConfigError: On unknown keys, malformed values or violated invariants
    """
    manager = ConfigManager(path)
    raw = manager.config

    unknown = sorted(set(raw) - set(_SECTIONS))
    if unknown:
        raise ConfigError(
            f"unknown section(s) {', '.join(unknown)}; allowed: {', '.join(_SECTIONS)}",
            unknown[0],
        )

    sections = {name: _build_section(name, raw.get(name)) for name in _SECTIONS}
    config = RunConfig(**sections, source=manager.config_path)
    validate_run_config(config)
    return config
