"""Material stacks and the bundled presets."""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, fields, replace
from importlib import resources
from pathlib import Path

from .errors import ConfigError, InvalidArgumentError

MU0 = 4e-7 * math.pi
DEFAULT_PRESET = "cofeb-paper"


@dataclass(frozen=True)
class MaterialStack:
    """Magnetic film plus waveguide geometry.

    ``damping`` is carried for completeness; the dispersion model is lossless.
    When ``theta_k_from_geometry`` is set, the wave-vector angle is taken as
    ``atan(n*pi/(k*w))`` instead of ``theta_k``.
    """

    saturation_magnetization: float
    exchange_constant: float
    damping: float
    gyromagnetic_ratio: float
    waveguide_width: float
    waveguide_thickness: float
    mode_number: int = 1
    theta_k: float = 0.0
    theta_m: float = 0.0
    vacuum_permeability: float = MU0
    theta_k_from_geometry: bool = False

    def __post_init__(self):
        positive = ("saturation_magnetization", "exchange_constant", "gyromagnetic_ratio",
                    "waveguide_width", "waveguide_thickness", "vacuum_permeability")
        for name in positive:
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidArgumentError(f"{name} must be finite and > 0, got {value!r}")
        if int(self.mode_number) != self.mode_number or self.mode_number < 1:
            raise InvalidArgumentError(f"mode_number must be a positive integer, got {self.mode_number!r}")
        for name in ("damping", "theta_k", "theta_m"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidArgumentError(f"{name} must be finite")

    @property
    def lambda_ex(self) -> float:
        """Exchange length squared, 2*Aex/(mu0*Ms^2), in m^2."""
        return 2.0 * self.exchange_constant / (self.vacuum_permeability * self.saturation_magnetization ** 2)

    @property
    def omega_m(self) -> float:
        return self.gyromagnetic_ratio * self.vacuum_permeability * self.saturation_magnetization

    @property
    def kn2(self) -> float:
        """Squared transverse wavenumber (n*pi/w)^2."""
        return (self.mode_number * math.pi / self.waveguide_width) ** 2

    def kernel_args(self):
        return (self.gyromagnetic_ratio, self.omega_m, self.lambda_ex, self.waveguide_thickness,
                self.kn2, self.theta_k, self.theta_m, self.theta_k_from_geometry)

    def with_(self, **changes) -> "MaterialStack":
        return replace(self, **changes)


_FLOAT_KEYS = {f.name for f in fields(MaterialStack)} - {"mode_number", "theta_k_from_geometry"}


def _stack_from_section(section, where) -> MaterialStack:
    kwargs = {}
    try:
        for key, raw in section.items():
            if key in _FLOAT_KEYS:
                kwargs[key] = float(raw)
            elif key == "mode_number":
                kwargs[key] = int(raw)
            elif key == "theta_k_from_geometry":
                kwargs[key] = section.getboolean(key)
            else:
                raise ConfigError(f"{where}: unknown key {key!r}")
        return MaterialStack(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def _read(text: str, where: str) -> configparser.ConfigParser:
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text, source=where)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc
    return parser


def _bundled() -> configparser.ConfigParser:
    text = resources.files("swtlg").joinpath("data/materials.ini").read_text()
    return _read(text, "materials.ini")


def preset_names() -> list[str]:
    return _bundled().sections()


def load_preset(name: str = DEFAULT_PRESET) -> MaterialStack:
    parser = _bundled()
    if name not in parser:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(parser.sections())}")
    return _stack_from_section(parser[name], f"preset {name!r}")


def load_material_file(path, section: str | None = None) -> MaterialStack:
    """Load a stack from an INI-style key-value file.

    With one section the name may be omitted.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    parser = _read(text, str(path))
    sections = parser.sections()
    if section is None:
        if len(sections) != 1:
            raise ConfigError(f"{path}: expected exactly one section, found {sections}")
        section = sections[0]
    if section not in parser:
        raise ConfigError(f"{path}: no section {section!r}")
    return _stack_from_section(parser[section], f"{path}[{section}]")


def resolve_material(spec: str) -> MaterialStack:
    """Preset name, or ``path`` / ``path:section`` of a material file."""
    if spec in preset_names():
        return load_preset(spec)
    path, _, section = spec.partition(":") if not Path(spec).exists() else (spec, "", "")
    return load_material_file(path, section or None)
