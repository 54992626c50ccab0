"""Classical nonlinear polarization spectra next to their quantum analogues.

A medium with chi2 and chi3 driven by cosine tones generates sum,
difference and harmonic frequencies; the same frequency bookkeeping governs
which qubit-resonator processes can be resonant. The script prints the exact
component tables for single- and two-tone drives and the bias-field induced
effective linear susceptibilities (Pockels and Kerr).

Run:  python3 demos/classical_mixing_analogy.py
"""

from rabimix import (
    Susceptibilities,
    Tone,
    direct_polarization,
    effective_linear_susceptibility,
    evaluate_polarization,
    polarization_spectrum,
)


def show(title, tones, chi):
    comps = polarization_spectrum(tones, chi)
    print(title)
    for f, a in comps:
        print(f"  w = {float(f):6.3f}   amplitude = {a:+.6f}")
    # spot check against direct evaluation of eps0 (chi1 E + chi2 E^2 + chi3 E^3)
    worst = max(
        abs(evaluate_polarization(comps, t) - direct_polarization(tones, chi, t))
        for t in (0.0, 0.7, 2.3, 9.1)
    )
    print(f"  pointwise check against direct evaluation: {worst:.1e}")
    print()


def main():
    show("chi2, single tone (rectification + second harmonic):",
         [Tone(1.0, 1.0)], Susceptibilities(chi2=1.0))
    show("chi3, single tone (self term + third harmonic):",
         [Tone(1.0, 1.0)], Susceptibilities(chi3=1.0))
    show("chi2, two tones (sum and difference frequencies):",
         [Tone(1.0, 1.0), Tone(1.0, 0.3)], Susceptibilities(chi2=1.0))

    chi = Susceptibilities(chi2=0.4, chi3=1.2)
    for bias in (0.5, 1.0):
        p = effective_linear_susceptibility("pockels", chi, bias)
        k = effective_linear_susceptibility("kerr", chi, bias)
        print(f"bias E = {bias}: Pockels delta-chi = {p:.4f}, Kerr delta-chi = {k:.4f}")


if __name__ == "__main__":
    main()
