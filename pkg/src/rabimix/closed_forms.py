"""Analytic effective-coupling formulas for the cataloged processes.

Each formula is the hand-resummed version of the lowest-order path sum for
one process, written with the shorthand

    D_nm = omega_n - omega_m      (difference)
    S_nm = omega_n + omega_m      (sum)

and evaluated in the same convention as the numerical path sum (sigma_z
diagonal with |e> at +1, denominators measured from the initial state).
Formulas marked on-resonance-only are valid exactly at their resonance
condition; the others hold in a neighborhood of it and are used for
detuned cross-checks as well.
"""

from __future__ import annotations

import math

from .errors import DomainError

#: Relative scale below which a denominator counts as a pole.
POLE_TOL = 1e-12


def _guard(process_id: str, **denominators: float) -> None:
    scale = max(abs(v) for v in denominators.values()) or 1.0
    bad = [name for name, v in denominators.items() if abs(v) <= POLE_TOL * scale]
    if bad:
        raise DomainError(
            f"closed form {process_id!r} has a vanishing denominator: {', '.join(bad)}"
        )


def two_photon_qubit(omega_a: float, omega_q: float, g: float, theta: float) -> float:
    """|2,g> <-> |0,e> via two photons on one qubit (resonance 2*omega_a = omega_q).

    Needs the longitudinal coupling: one sigma_z hop and one flipping hop.
    """
    d_aq = omega_a - omega_q
    _guard("two_photon_qubit", d_aq=d_aq, omega_a=omega_a)
    return math.sqrt(2.0) * g * g * math.sin(theta) * math.cos(theta) * (
        1.0 / d_aq - 1.0 / omega_a
    )


def three_photon_qubit(omega_a: float, omega_q: float, g: float) -> float:
    """|3,g> <-> |0,e> via three photons (resonance 3*omega_a = omega_q).

    Counter-rotating terms suffice; no longitudinal coupling involved.
    """
    d_aq = omega_a - omega_q
    _guard("three_photon_qubit", omega_a=omega_a, d_aq=d_aq)
    return math.sqrt(6.0) * g**3 / (2.0 * omega_a * d_aq)


def shg_two_mode(
    omega_a: float,
    omega_b: float,
    omega_q: float,
    g_a: float,
    g_b: float,
    theta: float,
) -> float:
    """|0,2,g> <-> |1,0,g>: two b photons convert to one a photon
    (resonance omega_a = 2*omega_b). Sum of a purely longitudinal 3-path
    family and a 9-path family with two qubit flips.
    """
    d_ba = omega_b - omega_a
    d_ab = -d_ba
    d_bq = omega_b - omega_q
    s_aq = omega_a + omega_q
    sin_t, cos_t = math.sin(theta), math.cos(theta)
    _guard(
        "shg_two_mode",
        omega_a=omega_a,
        omega_b=omega_b,
        d_ab=d_ab,
        d_bq=d_bq,
        s_aq=s_aq,
        d_ab_plus_q=d_ab + omega_q,
        two_b_minus_q=2.0 * omega_b - omega_q,
    )
    z_part = (
        1.0 / (omega_a * d_ba) - 1.0 / (omega_b * d_ba) - 1.0 / (2.0 * omega_b**2)
    )
    x_part = (
        1.0 / ((d_ab + omega_q) * s_aq)
        - 1.0 / (omega_a * (d_ab + omega_q))
        - 1.0 / ((d_ab + omega_q) * d_bq)
        + 1.0 / (omega_b * (d_ab + omega_q))
        - 1.0 / (d_ab * s_aq)
        + 1.0 / (d_ab * d_bq)
        + 1.0 / (d_bq * (2.0 * omega_b - omega_q))
        - 1.0 / (omega_b * (2.0 * omega_b - omega_q))
        - 1.0 / (2.0 * omega_b * d_bq)
    )
    pref = math.sqrt(2.0) * g_a * g_b**2 * sin_t
    return pref * (sin_t**2 * z_part + cos_t**2 * x_part)


def shg_two_mode_resonant(omega_b: float, omega_q: float, g_a: float, g_b: float, theta: float) -> float:
    """shg_two_mode evaluated exactly at omega_a = 2*omega_b."""
    den = 4.0 * omega_b**4 - 5.0 * omega_b**2 * omega_q**2 + omega_q**4
    _guard("shg_two_mode_resonant", den=den)
    return (
        3.0
        * math.sqrt(2.0)
        * g_a
        * g_b**2
        * omega_q**2
        * math.sin(2.0 * theta)
        * math.cos(theta)
        / den
    )


def thg_two_mode(
    omega_a: float, omega_b: float, omega_q: float, g_a: float, g_b: float
) -> float:
    """|0,3,g> <-> |1,0,g>: three b photons convert to one a photon
    (resonance omega_a = 3*omega_b). Four paths, counter-rotating terms only.
    """
    d_ab = omega_a - omega_b
    d_bq = omega_b - omega_q
    s_aq = omega_a + omega_q
    k = s_aq - 2.0 * omega_b
    _guard(
        "thg_two_mode",
        d_ab=d_ab,
        d_bq=d_bq,
        s_aq=s_aq,
        k=k,
        omega_b=omega_b,
        three_b_minus_q=3.0 * omega_b - omega_q,
    )
    return math.sqrt(6.0) * g_a * g_b**3 * (
        -1.0 / (k * d_ab * s_aq)
        + 1.0 / (k * d_ab * d_bq)
        - 1.0 / (2.0 * omega_b * k * d_bq)
        + 1.0 / (2.0 * omega_b * (3.0 * omega_b - omega_q) * d_bq)
    )


def raman_stokes(
    omega_a: float, omega_b: float, omega_q: float, g_a: float, g_b: float, theta: float
) -> float:
    """|1,0,g> <-> |0,1,e>: pump photon to Stokes photon plus qubit flip
    (resonance omega_a = omega_b + omega_q). One sigma_z hop per path.
    """
    d_qa = omega_q - omega_a
    s_bq = omega_b + omega_q
    _guard("raman_stokes", omega_a=omega_a, omega_b=omega_b, d_qa=d_qa, s_bq=s_bq)
    return g_a * g_b * math.sin(theta) * math.cos(theta) * (
        -1.0 / omega_a - 1.0 / d_qa + 1.0 / omega_b - 1.0 / s_bq
    )


def photon_two_qubits(omega_q: float, g: float, theta: float) -> float:
    """|1,g,g> <-> |0,e,e>: one photon excites two identical qubits.

    On-resonance-only form, valid at omega_a = 2*omega_q.
    """
    _guard("photon_two_qubits", omega_q=omega_q)
    return -(8.0 / 3.0) * math.sin(theta) * math.cos(theta) ** 2 * g**3 / omega_q**2


def three_qubit_thg(omega_a: float, omega_q: float, g: float) -> float:
    """|0,e,e,e> <-> |1,g,g,g>: three identical excited qubits emit one photon
    (resonance omega_a = 3*omega_q). Vanishes identically at omega_a = 3*omega_q:
    the six paths interfere destructively on resonance.
    """
    d_qa = omega_q - omega_a
    _guard("three_qubit_thg", omega_q=omega_q, d_qa=d_qa)
    return -3.0 * g**3 * (omega_a - 3.0 * omega_q) / (omega_q * d_qa**2)


def hyper_raman_one_stokes(
    omega_a: float, omega_b: float, omega_q: float, g_a: float, g_b: float
) -> float:
    """|0,2,g> <-> |1,0,e>: two pump photons to one photon plus a qubit flip
    (resonance omega_q = 2*omega_b - omega_a). Counter-rotating terms only.
    """
    d_qb = omega_q - omega_b
    d_ab = omega_a - omega_b
    s_aq = omega_a + omega_q
    _guard(
        "hyper_raman_one_stokes", omega_b=omega_b, d_qb=d_qb, d_ab=d_ab, s_aq=s_aq
    )
    return math.sqrt(2.0) * g_a * g_b**2 * (
        -1.0 / (2.0 * omega_b * d_qb) + 1.0 / (d_ab * d_qb) + 1.0 / (d_ab * s_aq)
    )


def hyper_raman_one_anti_stokes(
    omega_a: float, omega_b: float, omega_q: float, g_a: float, g_b: float
) -> float:
    """|0,2,e> <-> |1,0,g>: two pump photons plus the qubit energy combine
    into one photon (resonance omega_a = 2*omega_b + omega_q)."""
    s_qb = omega_q + omega_b
    d_ab = omega_a - omega_b
    d_aq = omega_a - omega_q
    _guard(
        "hyper_raman_one_anti_stokes", omega_b=omega_b, s_qb=s_qb, d_ab=d_ab, d_aq=d_aq
    )
    return math.sqrt(2.0) * g_a * g_b**2 * (
        1.0 / (2.0 * omega_b * s_qb) - 1.0 / (d_ab * s_qb) + 1.0 / (d_ab * d_aq)
    )


def hyper_raman_one_jc(
    omega_a: float, omega_b: float, omega_q: float, g_a: float, g_b: float
) -> float:
    """Stokes hyper-Raman restricted to excitation-conserving terms:
    a single path survives."""
    d_ab = omega_a - omega_b
    d_qb = omega_q - omega_b
    _guard("hyper_raman_one_jc", d_ab=d_ab, d_qb=d_qb)
    return math.sqrt(2.0) * g_a * g_b**2 / (d_ab * d_qb)


def hyper_raman_two(
    omega_a: float, omega_b: float, omega_q: float, g_a: float, g_b: float
) -> float:
    """|1,0,g,g> <-> |0,1,e,e>: pump photon to Stokes photon plus two qubit
    flips (resonance omega_a = omega_b + 2*omega_q). Vanishes identically at
    omega_a = omega_b + 2*omega_q by destructive interference.
    """
    d_aq = omega_a - omega_q
    s_bq = omega_b + omega_q
    _guard("hyper_raman_two", d_aq=d_aq, s_bq=s_bq)
    return 2.0 * g_a * g_b * (1.0 / d_aq - 1.0 / s_bq)


def kerr_dispersive(omega_a: float, omega_q: float, g: float) -> float:
    """Photon-number curvature of the qubit-ground branch in the dispersive
    regime: chi_K = -g^4 / (omega_a - omega_q)^3."""
    d = omega_a - omega_q
    _guard("kerr_dispersive", d=d)
    return -(g**4) / d**3


def parametric_coupling(
    omega_a: float, omega_b: float, omega_q: float, g_a: float, g_b: float, theta: float
) -> float:
    """Photon-pair creation rate in mode b conditioned on a pump photon in
    mode a (resonance omega_a = 2*omega_b). Closed form only; the matching
    path sum is a fourth-order two-body process outside the pairwise scheme.
    """
    d_qb = omega_q - omega_b
    _guard("parametric_coupling", omega_a=omega_a, d_qb=d_qb)
    return g_a**2 * g_b**2 * math.sin(theta) * math.sin(2.0 * theta) / (omega_a * d_qb)


#: process-id -> callable registry used by the catalog and the CLI.
REGISTRY = {
    "two_photon_qubit": two_photon_qubit,
    "three_photon_qubit": three_photon_qubit,
    "shg_two_mode": shg_two_mode,
    "shg_two_mode_resonant": shg_two_mode_resonant,
    "thg_two_mode": thg_two_mode,
    "raman_stokes": raman_stokes,
    "photon_two_qubits": photon_two_qubits,
    "three_qubit_thg": three_qubit_thg,
    "hyper_raman_one_stokes": hyper_raman_one_stokes,
    "hyper_raman_one_anti_stokes": hyper_raman_one_anti_stokes,
    "hyper_raman_one_jc": hyper_raman_one_jc,
    "hyper_raman_two": hyper_raman_two,
    "kerr_dispersive": kerr_dispersive,
    "parametric_coupling": parametric_coupling,
}


def closed_form_geff(process_id: str, **params) -> float:
    """Evaluate the registered analytic formula for ``process_id``."""
    try:
        fn = REGISTRY[process_id]
    except KeyError:
        raise DomainError(
            f"no closed form registered under {process_id!r}; "
            f"known ids: {sorted(REGISTRY)}"
        ) from None
    return fn(**params)
