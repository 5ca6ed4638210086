import logging
import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import numpy as np
from numpy.typing import NDArray

from rindler_corr.exception import ConfigError, InvalidParameterError
from rindler_corr.model._parameters import AccelerationSpec, TruncationPolicy
from rindler_corr.model._settings import NumericsConfig, OptimizerSettings, Tolerances
from rindler_corr.utils.const import (
    DEFAULT_ALPHA_MAX,
    DEFAULT_ALPHA_MIN,
    DEFAULT_N_MAX_CAP,
    DEFAULT_STEPS,
    DEFAULT_TAIL_EPS,
    WORKERS_ENV_VAR,
    EigenSolver,
    TruncationMode,
)

logger = logging.getLogger("rindler_corr")

CONFIG_KEYS = (
    "axis",
    "alpha_min",
    "alpha_max",
    "steps",
    "omega",
    "accel_min",
    "accel_max",
    "nmax",
    "tail_eps",
    "nmax_cap",
    "out",
    "plots",
    "workers",
    "eigensolver",
    "tau_norm",
    "tau_psd",
    "optimizer_xatol",
    "optimizer_fatol",
)

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


class SweepConfig:
    """
    Represents the configuration of a batch sweep over the squeezing parameter.
    """

    _axis: "AxisConfig"
    _truncation: TruncationPolicy
    _numerics: NumericsConfig
    _out: Path
    _plots: bool = False
    _workers: Optional[int] = None

    def __init__(
        self,
        axis: Optional["AxisConfig"] = None,
        truncation: Optional[TruncationPolicy] = None,
        numerics: Optional[NumericsConfig] = None,
        out: Path | str = Path("out"),
        plots: bool = False,
        workers: Optional[int] = None,
    ):
        """
        Initializes a new SweepConfig instance.

        Args:
            axis (Optional[AxisConfig], optional): The grid the sweep runs over.
                Defaults to the squeezing axis [0, 3] with 121 points.
            truncation (Optional[TruncationPolicy], optional): How N is chosen per point.
                Defaults to the adaptive policy.
            numerics (Optional[NumericsConfig], optional): Tolerances, optimizer
                schedule and eigensolver. Defaults to NumericsConfig().
            out (Path | str, optional): Output directory. Defaults to "out".
            plots (bool, optional): Whether to write SVG charts. Defaults to False.
            workers (Optional[int], optional): Worker processes. Defaults to None,
                meaning the environment or the CPU count decides.
        """
        if workers is not None and workers < 1:
            raise InvalidParameterError(f"workers must be >= 1, got {workers!r}")
        self._axis = axis or SqueezingAxisConfig()
        self._truncation = truncation or TruncationPolicy.adaptive()
        self._numerics = numerics or NumericsConfig()
        self._out = Path(out)
        self._plots = plots
        self._workers = workers

    @property
    def axis(self) -> "AxisConfig":
        return self._axis

    @property
    def truncation(self) -> TruncationPolicy:
        return self._truncation

    @property
    def numerics(self) -> NumericsConfig:
        return self._numerics

    @property
    def out(self) -> Path:
        return self._out

    @property
    def plots(self) -> bool:
        return self._plots

    @property
    def workers(self) -> Optional[int]:
        """
        Returns the worker count as configured, or None if unset.

        Returns:
            Optional[int]: The configured worker count.
        """
        return self._workers

    @property
    def effective_workers(self) -> int:
        """
        Returns the worker count after applying the fallbacks.

        The configured value wins, then the ``RINDLER_CORR_WORKERS``
        environment variable, then the number of CPUs.

        Returns:
            int: The number of worker processes to use.

        Raises:
            ConfigError: If the environment variable is not a positive integer.
        """
        if self._workers is not None:
            return self._workers
        env = os.environ.get(WORKERS_ENV_VAR)
        if env:
            try:
                workers = int(env)
            except ValueError as e:
                raise ConfigError(f"{WORKERS_ENV_VAR}={env!r} is not an integer") from e
            if workers < 1:
                raise ConfigError(f"{WORKERS_ENV_VAR} must be >= 1, got {workers}")
            return workers
        return os.cpu_count() or 1

    def to_mapping(self) -> Dict[str, str]:
        """
        Serializes the configuration to the flat key/value form.

        Returns:
            Dict[str, str]: One entry per set key, in file order.
        """
        values: Dict[str, Any] = {"axis": self._axis.axis_type}
        values.update(self._axis.config_params)
        if self._truncation.mode is TruncationMode.FIXED:
            values["nmax"] = self._truncation.n
        else:
            values["tail_eps"] = self._truncation.tail_eps
            values["nmax_cap"] = self._truncation.n_max_cap
        values["out"] = str(self._out)
        values["plots"] = "true" if self._plots else "false"
        if self._workers is not None:
            values["workers"] = self._workers
        tolerances = self._numerics.tolerances
        optimizer = self._numerics.optimizer
        values["eigensolver"] = self._numerics.eigensolver.value
        values["tau_norm"] = tolerances.norm
        values["tau_psd"] = tolerances.psd
        values["optimizer_xatol"] = optimizer.xatol
        values["optimizer_fatol"] = optimizer.fatol
        return {key: _format(value) for key, value in values.items()}

    def to_text(self) -> str:
        """
        Serializes the configuration to the ``key=value`` file format.

        Returns:
            str: The file content, LF terminated.
        """
        return "".join(f"{k}={v}\n" for k, v in self.to_mapping().items())

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> "SweepConfig":
        """
        Builds a configuration from flat key/value pairs.

        Values may be strings, as read from a file, or already typed, as
        supplied by the command line. Absent keys take their defaults.

        Args:
            values (Mapping[str, Any]): The settings.

        Returns:
            SweepConfig: The configuration.

        Raises:
            ConfigError: If a key is unknown or a value is invalid.
        """
        unknown = set(values) - set(CONFIG_KEYS)
        if unknown:
            raise ConfigError(f"unknown configuration key(s): {', '.join(sorted(unknown))}")

        def get(key: str, kind: type, default: Any = None) -> Any:
            raw = values.get(key)
            if raw is None:
                return default
            try:
                if kind is bool:
                    return _parse_bool(raw)
                return kind(raw)
            except ValueError as e:
                raise ConfigError(f"invalid value for {key}: {raw!r}") from e

        try:
            axis_type = get("axis", str, SqueezingAxisConfig.TYPE)
            steps = get("steps", int, DEFAULT_STEPS)
            axis: AxisConfig
            if axis_type == SqueezingAxisConfig.TYPE:
                axis = SqueezingAxisConfig(
                    alpha_min=get("alpha_min", float, DEFAULT_ALPHA_MIN),
                    alpha_max=get("alpha_max", float, DEFAULT_ALPHA_MAX),
                    steps=steps,
                )
            elif axis_type == AccelerationAxisConfig.TYPE:
                for key in ("omega", "accel_min", "accel_max"):
                    if values.get(key) is None:
                        raise ConfigError(f"acceleration axis needs {key}")
                axis = AccelerationAxisConfig(
                    omega=get("omega", float),
                    accel_min=get("accel_min", float),
                    accel_max=get("accel_max", float),
                    steps=steps,
                )
            else:
                raise ConfigError(f"unknown axis type {axis_type!r}")

            nmax = get("nmax", int)
            if nmax is not None:
                truncation = TruncationPolicy.fixed(nmax)
            else:
                truncation = TruncationPolicy.adaptive(
                    tail_eps=get("tail_eps", float, DEFAULT_TAIL_EPS),
                    n_max_cap=get("nmax_cap", int, DEFAULT_N_MAX_CAP),
                )

            defaults = Tolerances()
            optimizer_defaults = OptimizerSettings()
            numerics = NumericsConfig(
                tolerances=Tolerances(
                    norm=get("tau_norm", float, defaults.norm),
                    psd=get("tau_psd", float, defaults.psd),
                ),
                optimizer=OptimizerSettings(
                    xatol=get("optimizer_xatol", float, optimizer_defaults.xatol),
                    fatol=get("optimizer_fatol", float, optimizer_defaults.fatol),
                ),
                eigensolver=EigenSolver(get("eigensolver", str, EigenSolver.LAPACK.value)),
            )
            return cls(
                axis=axis,
                truncation=truncation,
                numerics=numerics,
                out=get("out", str, "out"),
                plots=get("plots", bool, False),
                workers=get("workers", int),
            )
        except (InvalidParameterError, ValueError) as e:
            raise ConfigError(str(e)) from e

    @classmethod
    def parse_text(cls, text: str) -> Dict[str, str]:
        """
        Parses the ``key=value`` file format without interpreting values.

        Blank lines and lines starting with ``#`` are skipped.

        Args:
            text (str): The file content.

        Returns:
            Dict[str, str]: The settings in file order.

        Raises:
            ConfigError: On a malformed line, an unknown key or a repeated key.
        """
        values: Dict[str, str] = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            key, sep, value = stripped.partition("=")
            key = key.strip()
            if not sep or not key:
                raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
            if key not in CONFIG_KEYS:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
            if key in values:
                raise ConfigError(f"line {lineno}: key {key!r} set twice")
            values[key] = value.strip()
        return values

    @classmethod
    def from_text(cls, text: str) -> "SweepConfig":
        return cls.from_mapping(cls.parse_text(text))

    @classmethod
    def from_file(cls, path: Path | str) -> "SweepConfig":
        """
        Loads a configuration file.

        Raises:
            ConfigError: If the file cannot be read or is invalid.
        """
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read config file {path}: {e}") from e
        logger.debug("Loaded sweep config from %s", path)
        return cls.from_text(text)


class AxisConfig:
    """
    Base class for the grid a sweep runs over.
    """

    def __init__(self, axis_type: str, steps: int):
        if steps < 2:
            raise InvalidParameterError(f"a sweep needs at least 2 steps, got {steps}")
        self.axis_type = axis_type
        self.config_params: Dict[str, Any] = {}

    @property
    def steps(self) -> int:
        return self.config_params["steps"]

    def grid(self) -> NDArray[np.float64]:
        """
        Returns the uniformly spaced values of the axis variable.

        Returns:
            NDArray[np.float64]: ``steps`` values, endpoints included.
        """
        raise NotImplementedError


class SqueezingAxisConfig(AxisConfig):
    """
    Configuration for a uniform grid in the squeezing parameter α.
    """

    TYPE = "squeezing"

    def __init__(
        self,
        alpha_min: float = DEFAULT_ALPHA_MIN,
        alpha_max: float = DEFAULT_ALPHA_MAX,
        steps: int = DEFAULT_STEPS,
    ):
        """
        Initializes a new SqueezingAxisConfig instance.

        Args:
            alpha_min (float, optional): First α, >= 0. Defaults to 0.
            alpha_max (float, optional): Last α, > alpha_min. Defaults to 3.
            steps (int, optional): Number of grid points, >= 2. Defaults to 121.
        """
        super().__init__(axis_type=SqueezingAxisConfig.TYPE, steps=steps)
        if alpha_min < 0.0:
            raise InvalidParameterError(f"alpha_min must be >= 0, got {alpha_min!r}")
        if not alpha_max > alpha_min:
            raise InvalidParameterError(
                f"alpha_max={alpha_max!r} must exceed alpha_min={alpha_min!r}"
            )
        self.config_params["alpha_min"] = float(alpha_min)
        self.config_params["alpha_max"] = float(alpha_max)
        self.config_params["steps"] = int(steps)

    def grid(self) -> NDArray[np.float64]:
        return np.linspace(
            self.config_params["alpha_min"],
            self.config_params["alpha_max"],
            self.steps,
        )


class AccelerationAxisConfig(AxisConfig):
    """
    Configuration for a uniform grid in the proper acceleration at a fixed
    mode frequency. Each acceleration maps to a squeezing value.
    """

    TYPE = "acceleration"

    def __init__(
        self, omega: float, accel_min: float, accel_max: float, steps: int = DEFAULT_STEPS
    ):
        super().__init__(axis_type=AccelerationAxisConfig.TYPE, steps=steps)
        # validates omega and both accelerations
        AccelerationSpec(omega, accel_min)
        AccelerationSpec(omega, accel_max)
        if not accel_max > accel_min:
            raise InvalidParameterError(
                f"accel_max={accel_max!r} must exceed accel_min={accel_min!r}"
            )
        self.config_params["omega"] = float(omega)
        self.config_params["accel_min"] = float(accel_min)
        self.config_params["accel_max"] = float(accel_max)
        self.config_params["steps"] = int(steps)

    def grid(self) -> NDArray[np.float64]:
        return np.linspace(
            self.config_params["accel_min"],
            self.config_params["accel_max"],
            self.steps,
        )

    def specs(self) -> list[AccelerationSpec]:
        omega = self.config_params["omega"]
        return [AccelerationSpec(omega, float(a)) for a in self.grid()]


def _parse_bool(raw: Any) -> bool:
    if isinstance(raw, bool):
        return raw
    text = str(raw).strip().lower()
    if text in _TRUE:
        return True
    if text in _FALSE:
        return False
    raise ValueError(f"not a boolean: {raw!r}")


def _format(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)
