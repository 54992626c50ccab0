"""Sparse Hermitian operators on a truncated qubit-resonator space.

Interaction matrices are assembled term by term from the ladder operators of
each coupled mode and the raising/lowering/sigma_z operators of each coupled
qubit, so that every stored entry appears together with its transpose partner
and Hermiticity holds exactly (not just to rounding).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import ConfigError
from .hilbert import HilbertSpace
from .system import CouplingSpec, InteractionModel


@dataclass(frozen=True)
class HermitianOperator:
    """Sparse Hermitian matrix tied to the Hilbert space it acts on.

    Entries are stored in canonical CSR form with duplicates summed at build
    time, so equal operators compare equal entrywise.
    """

    space: HilbertSpace
    matrix: sp.csr_matrix  # complex128, canonical

    @property
    def dimension(self) -> int:
        return self.space.dimension

    def element(self, row, col) -> complex:
        """<row|H|col> for basis states or integer indices."""
        i = row if isinstance(row, (int, np.integer)) else self.space.index(row)
        j = col if isinstance(col, (int, np.integer)) else self.space.index(col)
        return complex(self.matrix[i, j])

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def hermiticity_defect(self) -> float:
        """max |H - H^dag| over stored entries; exactly 0 for built operators."""
        d = self.matrix - self.matrix.getH()
        return 0.0 if d.nnz == 0 else float(np.abs(d.data).max())

    def __add__(self, other: "HermitianOperator") -> "HermitianOperator":
        if other.space is not self.space:
            raise ConfigError("cannot add operators on different Hilbert spaces")
        return HermitianOperator(self.space, _canonical(self.matrix + other.matrix))

    def scaled(self, factor: float) -> "HermitianOperator":
        return HermitianOperator(self.space, _canonical(self.matrix * factor))

    def dump_coo(self, path) -> None:
        """Write sorted 'row col re im' lines for cross-tool diffing."""
        coo = self.matrix.tocoo()
        order = np.lexsort((coo.col, coo.row))
        with open(path, "w") as fh:
            for k in order:
                v = coo.data[k]
                fh.write(f"{coo.row[k]} {coo.col[k]} {v.real:.17g} {v.imag:.17g}\n")


def _canonical(m) -> sp.csr_matrix:
    m = sp.csr_matrix(m, dtype=np.complex128)
    m.sum_duplicates()
    m.eliminate_zeros()
    m.sort_indices()
    return m


def _from_triplets(space: HilbertSpace, rows, cols, vals) -> HermitianOperator:
    m = sp.coo_matrix(
        (np.asarray(vals, dtype=np.complex128), (rows, cols)),
        shape=(space.dimension, space.dimension),
    )
    return HermitianOperator(space, _canonical(m))


def _diagonal(space: HilbertSpace, values) -> HermitianOperator:
    return HermitianOperator(
        space, _canonical(sp.diags(np.asarray(values, dtype=np.complex128)))
    )


def build_h0(space: HilbertSpace) -> HermitianOperator:
    """Bare Hamiltonian: diagonal of bare energies."""
    return _diagonal(space, space.energies)


def total_number_operator(space: HilbertSpace) -> HermitianOperator:
    """Total excitation number: photons plus excited qubits."""
    return _diagonal(space, space.excitation_numbers)


def parity_operator(space: HilbertSpace) -> HermitianOperator:
    """Excitation-number parity (-1)^N."""
    return _diagonal(space, 1.0 - 2.0 * (space.excitation_numbers % 2))


def build_hint(
    space: HilbertSpace,
    couplings: tuple[CouplingSpec, ...],
    model: InteractionModel,
) -> HermitianOperator:
    """Interaction Hamiltonian for the given couplings and model.

    Per coupling of strength g between mode m and qubit q:

    * JC:               g (a sigma+ + a^dag sigma-)
    * Rabi:             g (a + a^dag)(sigma+ + sigma-)
    * generalized Rabi: g (a + a^dag)(cos(theta) sigma_x + sin(theta) sigma_z)

    with sigma_z|e> = +|e>. Raising past n_max maps to zero (hard cutoff).
    """
    model = InteractionModel.parse(model)
    rows, cols, vals = [], [], []
    occ = space.occupation_table
    qub = space.qubit_table
    mode_weights = space._weights[: len(space.modes)]
    qubit_weights = space._weights[len(space.modes):]

    for c in couplings:
        mk = space.mode_index(c.mode_label)
        qk = space.qubit_index(c.qubit_label)
        n_max = space.modes[mk].n_max
        mw = mode_weights[mk]
        qw = qubit_weights[qk]
        g = c.strength
        if g == 0.0:
            continue
        if model is InteractionModel.GENERALIZED_RABI:
            g_x = g * math.cos(c.mixing_angle)
            g_z = g * math.sin(c.mixing_angle)
        else:
            g_x, g_z = g, 0.0

        n = occ[:, mk]
        e = qub[:, qk]  # 0 = g, 1 = e

        def add(mask, dcol_to_row, amp):
            idx = np.nonzero(mask)[0]
            if idx.size:
                rows.extend(idx + dcol_to_row)
                cols.extend(idx)
                vals.extend(amp[idx])

        sq_up = np.sqrt(n + 1.0)   # a^dag on column state
        sq_dn = np.sqrt(np.maximum(n, 0))  # a on column state

        # transversal part: (a + a^dag)(sigma+ + sigma-), with JC keeping
        # only the excitation-conserving combinations
        if g_x != 0.0:
            # a sigma+ : n -> n-1, g -> e
            add((n >= 1) & (e == 0), -mw + qw, g_x * sq_dn)
            # a^dag sigma- : n -> n+1, e -> g
            add((n < n_max) & (e == 1), mw - qw, g_x * sq_up)
            if model is not InteractionModel.JC:
                # a sigma- : n -> n-1, e -> g
                add((n >= 1) & (e == 1), -mw - qw, g_x * sq_dn)
                # a^dag sigma+ : n -> n+1, g -> e
                add((n < n_max) & (e == 0), mw + qw, g_x * sq_up)

        # longitudinal part: (a + a^dag) sigma_z, qubit state unchanged
        if g_z != 0.0:
            sz = np.where(e == 1, 1.0, -1.0)
            add(n >= 1, -mw, g_z * sq_dn * sz)
            add(n < n_max, mw, g_z * sq_up * sz)

    return _from_triplets(space, rows, cols, vals)


def build_hamiltonian(space: HilbertSpace) -> HermitianOperator:
    """Full Hamiltonian H0 + Hint of the space's system spec."""
    return build_h0(space) + build_hint(space, space.spec.couplings, space.spec.model)


def commutator_norm(a: HermitianOperator, b: HermitianOperator) -> float:
    """max-entry norm of [A, B]."""
    d = a.matrix @ b.matrix - b.matrix @ a.matrix
    d = _canonical(d)
    return 0.0 if d.nnz == 0 else float(np.abs(d.data).max())
