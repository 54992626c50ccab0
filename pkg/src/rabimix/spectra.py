"""Exact diagonalization, parameter sweeps and avoided-crossing analysis.

Level curves are followed by eigenvector overlap (adiabatic continuation)
rather than by energy order, since diabatic labels cross. The gap at an
avoided crossing is measured between the two eigenvalues whose eigenvectors
have the largest weight in the two-dimensional bare subspace of interest.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.optimize
import scipy.sparse.linalg

from .errors import BracketingError, CapacityError, ConfigError, DomainError
from .hamiltonian import HermitianOperator, build_hamiltonian
from .hilbert import BasisState, HilbertSpace, build_space
from .perturbation import effective_coupling
from .system import SystemSpec

#: Largest dimension handled by the dense solver.
DENSE_CAP = 4096

#: Two tracking candidates with overlaps this close are flagged as ambiguous.
OVERLAP_AMBIGUITY = 1e-3


@dataclass(frozen=True)
class SweepSpec:
    """One-parameter sweep of a system spec with levels to follow.

    ``parameter`` names what is swept: ``"mode:<label>"`` or
    ``"qubit:<label>"`` for a frequency, ``"coupling:<mode label>"`` for the
    strength of every coupling attached to that mode.
    """

    base: SystemSpec
    parameter: str
    lo: float
    hi: float
    points: int
    tracked: tuple[BasisState, ...]

    def __post_init__(self):
        errors = []
        if not self.lo < self.hi:
            errors.append(f"sweep range must satisfy lo < hi, got [{self.lo}, {self.hi}]")
        if self.points < 3:
            errors.append(f"sweep needs at least 3 points, got {self.points}")
        if len(self.tracked) < 2:
            errors.append("sweep must track at least 2 bare states")
        if errors:
            raise ConfigError(errors)
        object.__setattr__(self, "tracked", tuple(self.tracked))

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.points)

    def spec_at(self, value: float) -> SystemSpec:
        return apply_parameter(self.base, self.parameter, value)


@dataclass
class SweepResult:
    """Tracked eigenvalues and bare-state overlaps along a sweep."""

    sweep: SweepSpec
    parameters: np.ndarray
    levels: np.ndarray    # shape (points, n_tracked)
    overlaps: np.ndarray  # shape (points, n_tracked), against the bare target
    ambiguous: np.ndarray  # bool, shape (points, n_tracked)

    def level(self, state: BasisState) -> np.ndarray:
        k = self.sweep.tracked.index(state)
        return self.levels[:, k]

    def gap(self, a: BasisState, b: BasisState) -> np.ndarray:
        return np.abs(self.level(a) - self.level(b))


@dataclass(frozen=True)
class CrossingReport:
    """Located gap minimum and its comparison with 2|g_eff|."""

    parameter: float
    gap: float
    predicted: float  # 2|g_eff| at the bare resonance
    g_eff: complex

    @property
    def relative_deviation(self) -> float:
        return abs(self.gap - self.predicted) / abs(self.predicted)


def apply_parameter(spec: SystemSpec, parameter: str, value: float) -> SystemSpec:
    kind, _, label = parameter.partition(":")
    if kind == "mode":
        return spec.with_mode_frequency(label, value)
    if kind == "qubit":
        return spec.with_qubit_frequency(label, value)
    if kind == "coupling":
        return spec.with_coupling_strength(label, value)
    raise ConfigError(
        f"unknown sweep parameter {parameter!r}; expected 'mode:<label>', "
        f"'qubit:<label>' or 'coupling:<mode label>'"
    )


def eigensystem(h: HermitianOperator, k: int | None = None):
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian
    operator. Dense below :data:`DENSE_CAP`; lowest-k Krylov above, where
    ``k`` must then be given (or defaults to 16).
    """
    dim = h.dimension
    if dim <= DENSE_CAP:
        vals, vecs = scipy.linalg.eigh(h.to_dense())
        return vals, vecs
    if k is None:
        k = 16
    if k >= dim:
        raise CapacityError(f"requested {k} eigenpairs of a dimension-{dim} operator")
    vals, vecs = scipy.sparse.linalg.eigsh(h.matrix, k=k, which="SA")
    order = np.argsort(vals)
    return vals[order], vecs[:, order]


def _solver_k(sweep: SweepSpec) -> int:
    return 2 * len(sweep.tracked) + 8


def track_levels(sweep: SweepSpec) -> SweepResult:
    """Follow the tracked bare states through the sweep by eigenvector overlap.

    At the first point each level anchors to its bare basis vector; from the
    second point on, to the previous point's eigenvector (adiabatic
    re-anchoring). The reported overlap is always against the bare target,
    which decays toward 1/2 inside an avoided crossing.
    """
    values = sweep.values()
    nt = len(sweep.tracked)
    levels = np.zeros((len(values), nt))
    overlaps = np.zeros((len(values), nt))
    ambiguous = np.zeros((len(values), nt), dtype=bool)
    anchors = None
    for p, v in enumerate(values):
        spec = sweep.spec_at(v)
        space = build_space(spec)
        h = build_hamiltonian(space)
        vals, vecs = eigensystem(h, k=_solver_k(sweep))
        bare = np.stack([space.basis_vector(s) for s in sweep.tracked], axis=1)
        ref = bare if anchors is None else anchors
        w = np.abs(vecs.conj().T @ ref) ** 2  # (n_eigs, n_tracked)
        new_anchors = np.zeros((vecs.shape[0], nt))
        for t in range(nt):
            order = np.argsort(w[:, t])[::-1]
            best = int(order[0])
            if len(order) > 1 and w[order[0], t] - w[order[1], t] < OVERLAP_AMBIGUITY:
                ambiguous[p, t] = True
            levels[p, t] = vals[best]
            overlaps[p, t] = float(np.abs(vecs[:, best].conj() @ bare[:, t]) ** 2)
            new_anchors[:, t] = np.real(vecs[:, best])
        anchors = new_anchors
    return SweepResult(sweep, values, levels, overlaps, ambiguous)


def subspace_gap(spec: SystemSpec, a: BasisState, b: BasisState) -> float:
    """Distance between the two eigenvalues with the largest weight in the
    span of the two bare states."""
    space = build_space(spec)
    h = build_hamiltonian(space)
    vals, vecs = eigensystem(h, k=12)
    bare = np.stack([space.basis_vector(a), space.basis_vector(b)], axis=1)
    weight = (np.abs(vecs.conj().T @ bare) ** 2).sum(axis=1)
    top2 = np.argsort(weight)[::-1][:2]
    return float(abs(vals[top2[0]] - vals[top2[1]]))


def bare_resonance_parameter(sweep: SweepSpec, a: BasisState, b: BasisState) -> float:
    """Parameter value where the bare energies of ``a`` and ``b`` coincide,
    found by bisection over the sweep range."""

    def de(v):
        space = build_space(sweep.spec_at(v))
        return space.bare_energy(a) - space.bare_energy(b)

    lo, hi = sweep.lo, sweep.hi
    flo, fhi = de(lo), de(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise BracketingError(
            f"bare energies of {a} and {b} do not cross in [{lo}, {hi}]"
        )
    return float(scipy.optimize.brentq(de, lo, hi, xtol=1e-14, rtol=1e-15))


def find_avoided_crossing(
    sweep: SweepSpec, level_a: BasisState, level_b: BasisState
) -> CrossingReport:
    """Locate the minimum gap between two tracked levels and compare it with
    the perturbative prediction 2|g_eff|.

    A coarse scan over the sweep grid brackets the minimum; golden-section
    refinement then pins the parameter to relative tolerance 1e-10. The
    prediction is the path-sum g_eff evaluated at the bare-resonance point.
    """
    values = sweep.values()
    gaps = np.array([subspace_gap(sweep.spec_at(v), level_a, level_b) for v in values])
    k = int(np.argmin(gaps))
    if k == 0 or k == len(values) - 1:
        raise BracketingError(
            f"gap minimum between {level_a} and {level_b} sits at the edge of "
            f"[{sweep.lo}, {sweep.hi}]; widen the sweep"
        )

    def f(v):
        return subspace_gap(sweep.spec_at(v), level_a, level_b)

    res = scipy.optimize.minimize_scalar(
        f,
        bracket=(values[k - 1], values[k], values[k + 1]),
        method="golden",
        options={"xtol": 1e-10},
    )
    v_min = float(res.x)
    gap = float(res.fun)

    v_res = bare_resonance_parameter(sweep, level_a, level_b)
    spec_res = sweep.spec_at(v_res)
    from .perturbation import interaction_for

    space, hint = interaction_for(spec_res)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        g = effective_coupling(space, hint, level_a, level_b).value
    return CrossingReport(parameter=v_min, gap=gap, predicted=2.0 * abs(g), g_eff=g)


def convergence_check(spec: SystemSpec, observable, n_max_step: int = 2, repeats: int = 3):
    """Evaluate ``observable(spec)`` at successively larger truncations.

    Returns (n_max tuples, values, successive relative changes).
    """
    specs = [spec]
    for _ in range(repeats - 1):
        specs.append(specs[-1].with_nmax_increment(n_max_step))
    values = [float(observable(s)) for s in specs]
    nmaxes = [tuple(m.n_max for m in s.modes) for s in specs]
    changes = []
    for prev, cur in zip(values, values[1:]):
        scale = max(abs(prev), abs(cur), 1e-300)
        changes.append(abs(cur - prev) / scale)
    return nmaxes, values, changes


def kerr_shift_numeric(spec: SystemSpec) -> float:
    """Photon-number curvature of the qubit-ground branch from the exact
    spectrum: half the second difference of E(n) over n = 0..3.

    Valid in the dispersive regime; a warning is issued when any coupling
    exceeds a fifth of its detuning from the qubit.
    """
    space = build_space(spec)
    for c in spec.couplings:
        det = abs(spec.mode(c.mode_label).frequency - spec.qubit(c.qubit_label).frequency)
        if det == 0 or c.strength / det > 0.2:
            warnings.warn(
                f"coupling {c.mode_label!r}-{c.qubit_label!r} is not dispersive "
                f"(g/|detuning| = {c.strength / det if det else float('inf'):.3g} > 0.2); "
                "the Kerr estimate is unreliable",
                stacklevel=2,
            )
    if len(spec.modes) != 1 or len(spec.qubits) != 1:
        raise DomainError("kerr_shift_numeric expects one mode and one qubit")
    if spec.modes[0].n_max < 3:
        raise CapacityError("kerr_shift_numeric needs n_max >= 3")
    h = build_hamiltonian(space)
    vals, vecs = eigensystem(h)
    energies = []
    for n in range(4):
        bare = space.basis_vector(BasisState((n,), ("g",)))
        k = int(np.argmax(np.abs(vecs.conj().T @ bare) ** 2))
        energies.append(vals[k])
    d1 = energies[2] - 2 * energies[1] + energies[0]
    d2 = energies[3] - 2 * energies[2] + energies[1]
    return 0.25 * (d1 + d2)


def _csv_name(state: BasisState) -> str:
    return state.label().replace(",", "_")


def write_sweep_csv(result: SweepResult, path) -> None:
    """Emit ``param,level_<name>...,overlap_<name>...`` at 17 significant digits."""
    names = [_csv_name(s) for s in result.sweep.tracked]
    header = "param," + ",".join(f"level_{n}" for n in names) + "," + ",".join(
        f"overlap_{n}" for n in names
    )
    lines = [header]
    for p in range(len(result.parameters)):
        cells = [f"{result.parameters[p]:.17g}"]
        cells += [f"{x:.17g}" for x in result.levels[p]]
        cells += [f"{x:.17g}" for x in result.overlaps[p]]
        lines.append(",".join(cells))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
