"""Polarization entanglement of biexciton-cascade photon pairs.

Simulates the joint polarization state of the photon pair emitted by a
quantum-dot biexciton cascade: Lindblad dynamics over the four-level
system with phonon-assisted exciton spin scattering, two-time dipole
correlators under a detection time gate, mixing with the spectrally
distinguishable and background components, and entanglement measures
(concurrence, Bell-state fidelity) including sudden-death analysis
against temperature and fine-structure splitting.
"""

__version__ = "0.1.0"

from .config import Config, config_from_mapping, load_config
from .correlator import (
    BASIS_LABELS,
    GateWindow,
    RawPolarizationMatrix,
    analytic_coherence,
    analytic_raw_matrix,
    assemble_raw_matrix,
    lowering_operator,
    two_time_element,
)
from .errors import (
    CascadeError,
    DegenerateGateError,
    NumericalError,
    ParameterError,
    XFormError,
)
from .experiments import (
    PRESET_NAMES,
    PresetArtifact,
    RunPointResult,
    SweepAxis,
    SweepResult,
    SweepSpec,
    run_point,
    run_preset,
    run_sweep,
)
from .metrics import (
    EntanglementReport,
    EsdResult,
    concurrence,
    concurrence_x_oracle,
    detected_state,
    esd_temperature,
    fidelity_bell,
    purity,
    spin_flip_roots,
)
from .model import (
    BIEXCITON,
    EXCITON_H,
    EXCITON_V,
    GROUND,
    HBAR,
    KB,
    CascadeParams,
    PhononRates,
    bose_occupation,
    build_liouvillian,
    exciton_coherence_decay,
    initial_biexciton_state,
    phonon_rates,
)
from .tomography import make_noc, mix_total, overlap_eta_lorentzian
from .validation import CheckResult, run_validation

__all__ = [
    "__version__",
    "BASIS_LABELS",
    "BIEXCITON",
    "CascadeError",
    "CascadeParams",
    "CheckResult",
    "Config",
    "DegenerateGateError",
    "EntanglementReport",
    "EsdResult",
    "EXCITON_H",
    "EXCITON_V",
    "GateWindow",
    "GROUND",
    "HBAR",
    "KB",
    "NumericalError",
    "ParameterError",
    "PhononRates",
    "PresetArtifact",
    "PRESET_NAMES",
    "RawPolarizationMatrix",
    "RunPointResult",
    "SweepAxis",
    "SweepResult",
    "SweepSpec",
    "XFormError",
    "analytic_coherence",
    "analytic_raw_matrix",
    "assemble_raw_matrix",
    "bose_occupation",
    "build_liouvillian",
    "concurrence",
    "concurrence_x_oracle",
    "config_from_mapping",
    "detected_state",
    "esd_temperature",
    "exciton_coherence_decay",
    "fidelity_bell",
    "initial_biexciton_state",
    "load_config",
    "lowering_operator",
    "make_noc",
    "mix_total",
    "overlap_eta_lorentzian",
    "phonon_rates",
    "purity",
    "run_point",
    "run_preset",
    "run_sweep",
    "run_validation",
    "spin_flip_roots",
    "two_time_element",
]
