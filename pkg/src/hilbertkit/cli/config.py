import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from ..exceptions import DomainError, InvalidConfigError
from ..reporting import FORMATS
from ..special import to_rational


def _to_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, str) and value.lower() in ("true", "1", "yes"):
        return True
    if isinstance(value, str) and value.lower() in ("false", "0", "no"):
        return False
    if isinstance(value, int):
        return bool(value)
    raise ValueError(f"{value!r} is not a boolean")


def _to_int(value: Any) -> int:
    if isinstance(value, bool):
        raise ValueError("booleans are not integers")
    if isinstance(value, float):
        if not value.is_integer():
            raise ValueError(f"{value!r} is not an integer")
        return int(value)
    return int(value)


def _to_float(value: Any) -> float:
    if isinstance(value, bool):
        raise ValueError("booleans are not reals")
    if isinstance(value, str) and "/" in value:
        return float(_to_rational(value))
    return float(value)


def _to_rational(value: Any) -> Fraction:
    try:
        return to_rational(value)
    except DomainError as e:
        raise ValueError(str(e))


CONVERTERS: dict[str, Callable[[Any], Any]] = {
    "alpha": _to_float,
    "beta": _to_float,
    "p": _to_float,
    "N": _to_int,
    "tol": _to_float,
    "max_iter": _to_int,
    "lambda": _to_float,
    "s": _to_float,
    "n": _to_int,
    "n_max": _to_int,
    "budget": _to_int,
    "step": _to_rational,
    "ratio_max": _to_int,
    "exploratory": _to_bool,
    "limit": _to_int,
    "rectangle": _to_bool,
    "quad_points": _to_int,
    "constant": _to_rational,
    "j_max": _to_int,
}


class RunConfig:
    _command: str
    _params: dict[str, Any]
    output_path: str | None
    output_format: str
    threads: int
    timing: bool

    def __init__(self, command: str, output_path: str | None = None, output_format: str = "json",
                 threads: int = 1, timing: bool = False, **kwargs):
        """Parameters of one CLI run.

        Keyword parameters are merged over the command's defaults and converted to their
        types. Rational keys (step, constant) accept "a/b", integers and decimal strings.

        Raises:
            InvalidConfigError: unknown command, unknown key, malformed value or bad format
        """
        if command not in self.commands():
            raise InvalidConfigError(f"unknown command '{command}', expected one of {sorted(self.commands())}")
        if output_format not in FORMATS:
            raise InvalidConfigError(f"unknown format '{output_format}', expected one of {FORMATS}")
        if threads < 0:
            raise InvalidConfigError(f"threads must be >= 0, got {threads}")
        self._command = command
        self.output_path = output_path
        self.output_format = output_format
        self.threads = threads
        self.timing = timing

        defaults = self.default_config
        unknown = sorted(set(kwargs) - set(defaults))
        if unknown:
            raise InvalidConfigError(f"unknown parameter(s) for '{command}': {', '.join(unknown)}")
        cfg = defaults | kwargs
        self._params = dict()
        for k, v in cfg.items():
            try:
                self._params[k] = CONVERTERS[k](v)
            except (TypeError, ValueError) as e:
                raise InvalidConfigError(f"invalid value for '{k}': {v!r} ({e})")

    @staticmethod
    def commands() -> dict[str, dict[str, Any]]:
        """Default parameters of every command.

        Returns:
            dict[str, dict[str, Any]]: key = command, value = its default parameters
        """
        return {
            "norms": dict(alpha=0.0, beta=1.0, p=2.0, N=1024, tol=1e-10, max_iter=10_000),
            "series": {"lambda": 1.0, "s": 3.0, "n": 1, "n_max": 0, "budget": 1024},
            "region": dict(step="1/64"),
            "monotone": dict(alpha=2.0, n_max=10_000, ratio_max=1000, exploratory=False),
            "compare": dict(alpha=-1.0, beta=-1.0, limit=1_000_000, rectangle=False),
            "em-check": {"lambda": 1.5, "s": 4.0, "n": 3, "quad_points": 20, "constant": "1/6"},
            "schur": dict(alpha=0.0, beta=0.0, p=2.0, j_max=50),
        }

    @property
    def command(self) -> str:
        return self._command

    @property
    def default_config(self) -> dict[str, Any]:
        """
        Returns:
            dict: key/value pairs with the default parameters of this command
        """
        return self.commands()[self._command]

    @property
    def params(self) -> dict[str, Any]:
        """
        Returns:
            dict[str, Any]: merged and converted parameters
        """
        return self._params.copy()

    @property
    def config(self) -> dict[str, Any]:
        """run configuration in dictionary form

        Returns:
            dict[str, Any]: command, parameters and output settings
        """
        return dict(
            command=self._command,
            params=self.params,
            output_path=self.output_path,
            format=self.output_format,
            threads=self.threads,
            timing=self.timing,
        )

    def __repr__(self):
        return str(self.config)


def load_params_json(value: str) -> dict[str, Any]:
    """Parse --params-json, an inline JSON object or the path of a file holding one.

    Raises:
        InvalidConfigError: unreadable file, malformed JSON or not an object
    """
    text = value
    if not value.lstrip().startswith("{"):
        try:
            text = Path(value).read_text(encoding="utf-8")
        except OSError as e:
            raise InvalidConfigError(f"cannot read params file {value}: {e}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidConfigError(f"--params-json is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise InvalidConfigError("--params-json must be a JSON object")
    return data
