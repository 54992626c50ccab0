"""Unitary time evolution and oscillation-frequency extraction.

Propagation uses the spectral decomposition e^{-iHt} = V e^{-i Lambda t} V^H,
which is exact up to the eigensolve tolerance and free of time-step error.
System sizes here are small enough that this is also the fastest option.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, FlatTraceError
from .hamiltonian import HermitianOperator
from .hilbert import BasisState, HilbertSpace
from .spectra import eigensystem

#: Peak-to-peak population variation below which a trace counts as flat.
FLAT_TOL = 1e-6


@dataclass(frozen=True)
class EvolutionSpec:
    """Initial state, horizon and sampling for one evolution run."""

    initial: BasisState
    total_time: float
    samples: int
    targets: tuple[BasisState, ...]

    def __post_init__(self):
        errors = []
        if not self.total_time > 0:
            errors.append(f"total time must be > 0, got {self.total_time}")
        if self.samples < 16:
            errors.append(f"need at least 16 samples, got {self.samples}")
        if not self.targets:
            errors.append("at least one target state is required")
        if errors:
            raise ConfigError(errors)
        object.__setattr__(self, "targets", tuple(self.targets))


@dataclass
class PopulationTrace:
    """Sampled populations |<f|psi(t)>|^2 plus norm and energy diagnostics."""

    spec: EvolutionSpec
    times: np.ndarray
    populations: dict  # BasisState -> array over times
    norms: np.ndarray
    energies: np.ndarray  # <psi|H|psi> at each sample

    def population(self, target: BasisState) -> np.ndarray:
        return self.populations[target]


def evolve(space: HilbertSpace, h: HermitianOperator, spec: EvolutionSpec) -> PopulationTrace:
    """Evolve the bare initial state under H and sample target populations."""
    vals, vecs = eigensystem(h)
    psi0 = vecs.conj().T @ space.basis_vector(spec.initial)  # eigenbasis amplitudes
    times = np.linspace(0.0, spec.total_time, spec.samples)
    phases = np.exp(-1j * np.outer(times, vals))  # (samples, dim)
    amps = phases * psi0  # eigenbasis amplitudes at each time
    states = amps @ vecs.T  # back to the bare basis: psi(t) = V (phases * psi0)

    populations = {}
    for f in spec.targets:
        k = space.index(f)
        populations[f] = np.abs(states[:, k]) ** 2
    norms = np.linalg.norm(states, axis=1)
    energies = np.real(np.sum((np.abs(amps) ** 2) * vals, axis=1))
    return PopulationTrace(spec, times, populations, norms, energies)


def extract_oscillation(trace: PopulationTrace, target: BasisState | None = None):
    """Dominant angular frequency and maximum of a population trace.

    The frequency comes from the largest peak of the discrete spectrum of
    P(t) after mean removal, refined by parabolic interpolation of the three
    surrounding spectral magnitudes; the maximum population is likewise
    parabola-refined around the best sample. A trace flat within
    :data:`FLAT_TOL` raises :class:`FlatTraceError`.
    """
    if target is None:
        target = trace.spec.targets[0]
    p = trace.population(target)
    if np.ptp(p) < FLAT_TOL:
        raise FlatTraceError(
            f"population of {target} varies by {np.ptp(p):.3g} < {FLAT_TOL}; "
            "no oscillation to extract"
        )
    dt = trace.times[1] - trace.times[0]
    y = p - p.mean()
    spectrum = np.abs(np.fft.rfft(y))
    k = int(np.argmax(spectrum[1:])) + 1
    # parabolic refinement of the peak bin
    if 1 <= k < len(spectrum) - 1:
        a, b, c = spectrum[k - 1], spectrum[k], spectrum[k + 1]
        denom = a - 2 * b + c
        shift = 0.0 if denom == 0 else 0.5 * (a - c) / denom
    else:
        shift = 0.0
    freq = 2.0 * np.pi * (k + shift) / (len(p) * dt)

    m = int(np.argmax(p))
    if 1 <= m < len(p) - 1:
        a, b, c = p[m - 1], p[m], p[m + 1]
        denom = a - 2 * b + c
        if denom < 0:
            shift = 0.5 * (a - c) / denom
            pmax = b - 0.25 * (a - c) * shift
        else:
            pmax = b
    else:
        pmax = p[m]
    return float(freq), float(min(pmax, 1.0))


def write_trace_csv(trace: PopulationTrace, path, target: BasisState | None = None) -> None:
    """Emit ``t,P_f,norm`` per sample at 17 significant digits."""
    if target is None:
        target = trace.spec.targets[0]
    p = trace.population(target)
    lines = ["t,P_f,norm"]
    for t, pf, n in zip(trace.times, p, trace.norms):
        lines.append(f"{t:.17g},{pf:.17g},{n:.17g}")
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
