"""Reference configurations and the convention sweep behind the default flags.

The published reference energies depend on conventions the model leaves
open (thermal form, whether the Matsubara zero mode is kept, how the
piecewise density potential is extended past ``(0, 2pi]``). ``calibrate``
diagonalizes every combination and reports how close each gets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .hamiltonian import build_hamiltonian, ground_energy
from .oscillator import DEFAULT_LEVELS
from .pauli import DEFAULT_THRESHOLD, decompose
from .potentials import DensityDomain, ModelSpec, ThermalForm


@dataclass(frozen=True)
class Reference:
    name: str
    spec: ModelSpec
    qubits: int
    paulis: int
    exact: float
    vqe: float


# beta = 1 gives V L / (L^3 beta) = 1 at L = V = 1
REFERENCES = {
    "su2_vacuum": Reference("su2_vacuum", ModelSpec(), 4, 71, 0.4425673, 0.4426310),
    "su2_thermal": Reference(
        "su2_thermal", ModelSpec(scenario="thermal", beta=1.0), 4, 55, 0.46617183, 0.46617228
    ),
    "su2_density": Reference(
        "su2_density", ModelSpec(scenario="density", mu=np.pi / 2), 4, 55, -7.32051788, -7.32051782
    ),
    "su3_vacuum": Reference(
        "su3_vacuum", ModelSpec(group="su3"), 8, 9137, -21.98808168, -21.793084965
    ),
}


@dataclass(frozen=True)
class CalibrationRow:
    reference: str
    flags: dict
    exact: float
    paulis: int

    def error(self, ref: Reference) -> float:
        return self.exact - ref.exact


def _variants(ref: Reference):
    spec = ref.spec
    if spec.scenario.value == "thermal":
        for form, m0, const in itertools.product(ThermalForm, (False, True), (False, True)):
            if form is ThermalForm.DOUBLE_SUM and const:
                continue  # constants only exist in the high-temperature form
            if form is ThermalForm.HIGH_T and m0:
                continue  # no Matsubara sum in the high-temperature form
            yield {"thermal_form": form.value, "include_m_zero": m0,
                   "include_constant_terms": const}
    elif spec.scenario.value == "density":
        for domain in DensityDomain:
            yield {"density_domain": domain.value}
    else:
        yield {}


def calibrate(name: str, levels: int = DEFAULT_LEVELS,
              threshold: float = DEFAULT_THRESHOLD) -> list[CalibrationRow]:
    """Exact energy and Pauli count for every convention variant, closest first."""
    ref = REFERENCES[name]
    rows = []
    for flags in _variants(ref):
        h = build_hamiltonian(ref.spec.replace(**flags), levels)
        rows.append(CalibrationRow(name, flags, ground_energy(h)[0],
                                   len(decompose(h.operator, threshold))))
    rows.sort(key=lambda r: abs(r.error(ref)))
    return rows


def render_report(results: dict[str, list[CalibrationRow]],
                  sensitivity: dict[str, dict[float, int]] | None = None) -> str:
    lines = ["# Convention calibration", ""]
    for name, rows in results.items():
        ref = REFERENCES[name]
        lines += [
            f"## {name}",
            "",
            f"Reference: exact {ref.exact!r}, {ref.paulis} Pauli terms, {ref.qubits} qubits.",
            "",
            "| flags | exact energy | error | Pauli terms |",
            "|---|---|---|---|",
        ]
        for r in rows:
            flags = ", ".join(f"{k}={v}" for k, v in r.flags.items()) or "(defaults)"
            lines.append(f"| {flags} | {r.exact:.10f} | {r.error(ref):+.3e} | {r.paulis} |")
        best = rows[0]
        status = "matches" if abs(best.error(ref)) <= 1e-6 else "does NOT match"
        lines += ["", f"Closest variant {status} the reference within 1e-6.", ""]
        if sensitivity and name in sensitivity:
            counts = ", ".join(f"{t:g}: {c}" for t, c in sorted(sensitivity[name].items()))
            lines += [f"Pauli-term count by threshold (default spec): {counts}", ""]
    return "\n".join(lines)


def threshold_sensitivity(name: str, thresholds=(1e-8, 1e-10, 1e-12),
                          levels: int = DEFAULT_LEVELS) -> dict[float, int]:
    h = build_hamiltonian(REFERENCES[name].spec, levels)
    return {t: len(decompose(h.operator, t)) for t in thresholds}
