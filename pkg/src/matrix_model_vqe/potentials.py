"""One-loop effective potentials for the SU(2) and SU(3) Wilson-line models.

All series are summed directly up to a cutoff; ``truncation_error`` gives a
certified bound on what the cutoff drops. Every function accepts scalars or
numpy arrays for the Wilson-line arguments.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    InvalidParameterError,
    SpecMismatchError,
    UnsupportedChemicalPotentialError,
)

TWO_PI = 2.0 * np.pi


class Group(str, enum.Enum):
    SU2 = "su2"
    SU3 = "su3"


class Scenario(str, enum.Enum):
    VACUUM = "vacuum"
    THERMAL = "thermal"
    DENSITY = "density"


class ThermalForm(str, enum.Enum):
    DOUBLE_SUM = "double_sum"
    HIGH_T = "high_T"


class DensityDomain(str, enum.Enum):
    MOD_2PI = "mod_2pi"
    RAW = "raw"


@dataclass(frozen=True)
class ModelSpec:
    """Gauge group, scenario and physical parameters of an effective matrix model.

    ``radius`` is the circle radius L, ``volume`` the spatial volume factor V,
    ``beta`` the inverse temperature and ``mu`` the chemical potential.
    ``lmax`` bounds every winding sum and ``mcut`` the Matsubara sum of the
    thermal correction.
    """

    group: Group = Group.SU2
    scenario: Scenario = Scenario.VACUUM
    n_flavors: int = 1
    radius: float = 1.0
    volume: float = 1.0
    beta: float | None = None
    mu: float | None = None
    lmax: int = 1000
    mcut: int = 200
    thermal_form: ThermalForm = ThermalForm.DOUBLE_SUM
    include_m_zero: bool = False
    include_constant_terms: bool = False
    density_domain: DensityDomain = DensityDomain.MOD_2PI

    def __post_init__(self):
        # normalise string inputs to enums
        for name, kind in (
            ("group", Group),
            ("scenario", Scenario),
            ("thermal_form", ThermalForm),
            ("density_domain", DensityDomain),
        ):
            try:
                object.__setattr__(self, name, kind(getattr(self, name)))
            except ValueError:
                raise InvalidParameterError(
                    f"{name}={getattr(self, name)!r}; choose from {[k.value for k in kind]}"
                ) from None
        if int(self.n_flavors) != self.n_flavors or self.n_flavors < 0:
            raise InvalidParameterError(f"n_flavors must be a non-negative integer, got {self.n_flavors}")
        if not self.radius > 0 or not math.isfinite(self.radius):
            raise InvalidParameterError(f"radius must be positive, got {self.radius}")
        if not self.volume > 0 or not math.isfinite(self.volume):
            raise InvalidParameterError(f"volume must be positive, got {self.volume}")
        if self.lmax < 1 or self.mcut < 1:
            raise InvalidParameterError("lmax and mcut must be >= 1")
        if self.beta is not None and not (self.beta > 0 and math.isfinite(self.beta)):
            raise InvalidParameterError(f"beta must be positive, got {self.beta}")
        if self.mu is not None and not (self.mu >= 0 and math.isfinite(self.mu)):
            raise InvalidParameterError(f"mu must be non-negative, got {self.mu}")
        if self.scenario is Scenario.THERMAL and self.beta is None:
            raise InvalidParameterError("thermal scenario requires beta")
        if self.scenario is Scenario.DENSITY:
            if self.mu is None:
                raise InvalidParameterError("density scenario requires mu")
            if self.mu * self.radius > np.pi:
                raise UnsupportedChemicalPotentialError(
                    f"mu*L = {self.mu * self.radius:.6g} exceeds pi; the piecewise form is undefined"
                )
        if self.group is Group.SU3 and self.scenario is not Scenario.VACUUM:
            raise SpecMismatchError("SU(3) is only available in the vacuum scenario")

    def replace(self, **changes) -> ModelSpec:
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        out = dataclasses.asdict(self)
        for k, v in out.items():
            if isinstance(v, enum.Enum):
                out[k] = v.value
        return out


@dataclass(frozen=True)
class SeriesTail:
    """Certified absolute error of a truncated series."""

    cutoff: int
    tail_bound: float


def series_tail_bound(cutoff: int, power: int) -> float:
    """Upper bound on ``sum_{l > cutoff} l**-power`` from the integral test."""
    if cutoff < 1 or power < 2:
        raise InvalidParameterError("need cutoff >= 1 and power >= 2")
    return float(cutoff) ** (1 - power) / (power - 1)


def _cos_series(x, lmax: int, power: int = 4, chunk: int = 256) -> np.ndarray:
    """``sum_{l=1}^{lmax} cos(l x) / l**power`` for an array of arguments."""
    x = np.asarray(x, dtype=float)
    flat = x.reshape(-1)
    out = np.zeros_like(flat)
    ell = np.arange(1, lmax + 1, dtype=float)
    weights = ell**-power
    for start in range(0, flat.size, chunk):
        block = flat[start:start + chunk]
        out[start:start + chunk] = np.cos(np.outer(block, ell)) @ weights
    return out.reshape(x.shape)


def _zeta_partial(lmax: int, power: int) -> float:
    return float(np.sum(np.arange(1, lmax + 1, dtype=float) ** -power))


def _require(spec: ModelSpec, group: Group, scenario: Scenario | None = None):
    if spec.group is not group:
        raise SpecMismatchError(f"expected group {group.value}, spec has {spec.group.value}")
    if scenario is not None and spec.scenario is not scenario:
        raise SpecMismatchError(
            f"expected scenario {scenario.value}, spec has {spec.scenario.value}"
        )


def _su2_vacuum(phi, spec: ModelSpec):
    L4 = spec.radius**4
    gauge = -(2.0 / (L4 * np.pi**2)) * (
        2.0 * _cos_series(phi, spec.lmax) + _zeta_partial(spec.lmax, 4)
    )
    fermion = spec.n_flavors * (4.0 / (L4 * np.pi**2)) * 2.0 * _cos_series(
        np.asarray(phi, dtype=float) / 2.0, spec.lmax
    )
    return gauge + fermion


def su2_vacuum(phi, spec: ModelSpec):
    """Zero-temperature SU(2) potential: gauge bosons plus ``n_flavors`` fundamental fermions."""
    _require(spec, Group.SU2, Scenario.VACUUM)
    return _su2_vacuum(phi, spec)


def _thermal_double_sum(phi, spec: ModelSpec):
    # Even in m: the two-sided sum is twice the m >= 1 sum plus the m = 0 term.
    phi = np.asarray(phi, dtype=float)
    L, beta = spec.radius, spec.beta
    gauge_amp = -2.0 / np.pi**2
    ferm_amp = spec.n_flavors * 4.0 / (L**4 * np.pi**2)
    ell = np.arange(1, spec.lmax + 1, dtype=float)
    cos_l = np.cos(np.multiply.outer(phi, ell))
    cos_2l = np.cos(np.multiply.outer(phi, 2.0 * ell))
    total = np.zeros(phi.shape)
    ms = range(0 if spec.include_m_zero else 1, spec.mcut + 1)
    for m in ms:
        w = 1.0 / (L**2 * ell**2 + beta**2 * m**2) ** 2
        mult = 1.0 if m == 0 else 2.0
        sign = -1.0 if m % 2 else 1.0
        total += mult * (gauge_amp * (cos_2l @ w) + ferm_amp * sign * (cos_l @ w))
    return total


def _thermal_high_t(phi, spec: ModelSpec):
    V, L, beta = spec.volume, spec.radius, spec.beta
    series = 2.0 * _cos_series(2.0 * np.asarray(phi, dtype=float), spec.lmax, power=3)
    if spec.include_constant_terms:
        series = series + _zeta_partial(spec.lmax, 3)
    out = -(2.0 * V / L**3) * (L / beta) * series
    if spec.include_constant_terms:
        dof = 2 * 3 + 7.0 / 8.0 * 4 * spec.n_flavors
        out = out - V * L * np.pi**2 / 90.0 * dof / beta**4
    return out


def su2_thermal(phi, spec: ModelSpec):
    """Finite-temperature SU(2) potential.

    ``thermal_form='double_sum'`` adds the Matsubara double sum to the vacuum
    potential. ``'high_T'`` is the small-beta approximation on its own.
    """
    _require(spec, Group.SU2, Scenario.THERMAL)
    if spec.beta is None or not spec.beta > 0:
        raise InvalidParameterError(f"beta must be positive, got {spec.beta}")
    if spec.thermal_form is ThermalForm.HIGH_T:
        return _thermal_high_t(phi, spec)
    return _su2_vacuum(phi, spec) + _thermal_double_sum(phi, spec)


def _density_branches(x, muL):
    pi = np.pi
    base = (2 * pi**2 * (x - pi) ** 2 - (x - pi) ** 4 - 7.0 / 15.0 * pi**4) / 6.0
    low = base - pi / 3.0 * (x - muL) ** 2 * (2 * x + muL)
    high = base - pi / 3.0 * (2 * pi - x - muL) ** 2 * (4 * pi - 2 * x + muL)
    return low, base, high


def su2_density(phi, spec: ModelSpec):
    """Zero-temperature, finite-density fermion potential (piecewise quartic).

    With ``density_domain='mod_2pi'`` the argument is reduced into ``(0, 2pi]``
    first, which makes the result exactly 2pi-periodic. ``'raw'`` applies the
    branch conditions to the argument as given; the outer branches then
    extend below ``mu L`` and above ``2pi - mu L``.
    """
    _require(spec, Group.SU2, Scenario.DENSITY)
    muL = spec.mu * spec.radius
    if muL > np.pi:
        raise UnsupportedChemicalPotentialError(f"mu*L = {muL:.6g} exceeds pi")
    x = np.asarray(phi, dtype=float)
    if spec.density_domain is DensityDomain.MOD_2PI:
        x = np.mod(x, TWO_PI)
        x = np.where(x <= 0.0, TWO_PI, x)
    low, mid, high = _density_branches(x, muL)
    value = np.where(x <= muL, low, np.where(x <= TWO_PI - muL, mid, high))
    prefactor = spec.n_flavors * spec.volume * spec.radius / (spec.radius**4 * np.pi**2)
    return prefactor * value


def su3_vacuum(phi1, phi2, spec: ModelSpec):
    """SU(3) potential of the two Wilson lines, with ``phi3 = -phi1 - phi2``.

    Both sums run over all index pairs including ``j == k``, and the fermion
    term carries a negative sign.
    """
    _require(spec, Group.SU3)
    phi1, phi2 = np.broadcast_arrays(np.asarray(phi1, float), np.asarray(phi2, float))
    phases = (phi1, phi2, -phi1 - phi2)
    # cos(phi_j - phi_k) is symmetric in (j, k); diagonal terms are cos(0)
    zeta4 = _zeta_partial(spec.lmax, 4)
    gauge = 3.0 * zeta4 + sum(
        2.0 * _cos_series(phases[j] - phases[k], spec.lmax)
        for j in range(3) for k in range(j + 1, 3)
    )
    fermion = sum(_cos_series(p, spec.lmax) for p in phases)
    amp = -2.0 / (np.pi**2 * spec.radius**4)
    return amp * gauge + amp * fermion


def potential(spec: ModelSpec):
    """Return the potential selected by ``spec`` as a vectorized callable."""
    if spec.group is Group.SU3:
        return lambda phi1, phi2: su3_vacuum(phi1, phi2, spec)
    func = {
        Scenario.VACUUM: su2_vacuum,
        Scenario.THERMAL: su2_thermal,
        Scenario.DENSITY: su2_density,
    }[spec.scenario]
    return lambda phi: func(phi, spec)


def truncation_error(spec: ModelSpec) -> SeriesTail:
    """Bound the error the ``lmax`` cutoff introduces into the selected potential.

    The bound is the series tail times the summed cosine amplitudes. The
    Matsubara sum of the thermal double sum is bounded by ``mcut`` as well.
    The piecewise density potential is a closed form and has no tail.
    """
    L4 = spec.radius**4
    if spec.group is Group.SU3:
        amp = 2.0 / (np.pi**2 * L4) * (9 + 3)
        return SeriesTail(spec.lmax, amp * series_tail_bound(spec.lmax, 4))
    if spec.scenario is Scenario.DENSITY:
        return SeriesTail(spec.lmax, 0.0)
    vac_amp = 2.0 / (L4 * np.pi**2) * 3 + spec.n_flavors * 4.0 / (L4 * np.pi**2) * 2
    bound = vac_amp * series_tail_bound(spec.lmax, 4)
    if spec.scenario is Scenario.THERMAL:
        if spec.thermal_form is ThermalForm.HIGH_T:
            amp = 2.0 * spec.volume / spec.radius**3 * spec.radius / spec.beta
            factor = 3.0 if spec.include_constant_terms else 2.0
            return SeriesTail(spec.lmax, amp * factor * series_tail_bound(spec.lmax, 3))
        L, beta = spec.radius, spec.beta
        amp = 2.0 / np.pi**2 + spec.n_flavors * 4.0 / (L4 * np.pi**2)
        # terms are bounded by (L l)^-4, (beta m)^-4 and, jointly, (L l)^-2 (beta m)^-2
        tail_l = (2 * spec.mcut + 1) * series_tail_bound(spec.lmax, 4) / L**4
        tail_m = 2 * series_tail_bound(spec.mcut, 2) * (np.pi**2 / 6) / (L**2 * beta**2)
        bound += amp * (tail_l + tail_m)
    return SeriesTail(spec.lmax, float(bound))
