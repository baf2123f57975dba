"""Writes au_lorentz_drude.csv: n, k of gold from a Lorentz-Drude fit.

Parameters are the published Lorentz-Drude set for Au (plasma energy 9.03 eV).
The table spans 0.05-100 eV at 40 points per decade; outside the fit's
0.2-5 eV window the values are the model's own extrapolation.
"""
import numpy as np

WP = 9.03
F0, G0 = 0.760, 0.053
OSC = [  # (f, gamma, omega) in eV
    (0.024, 0.241, 0.415),
    (0.010, 0.345, 0.830),
    (0.071, 0.870, 2.969),
    (0.601, 2.494, 4.304),
    (4.384, 2.214, 13.32),
]


def eps(e):
    out = 1.0 - F0 * WP**2 / (e * (e + 1j * G0))
    for f, g, w in OSC:
        out += f * WP**2 / (w**2 - e**2 - 1j * e * g)
    return out


def main():
    energies = np.logspace(np.log10(0.05), 2.0, 4 * 40 + 1)
    nk = np.sqrt(eps(energies))
    with open("optical/au_lorentz_drude.csv", "w") as fh:
        fh.write("# source: Lorentz-Drude model for Au, generated by generate_gold_table.py\n")
        fh.write("frequency,unit,n,k\n")
        for e, z in zip(energies, nk):
            fh.write(f"{e:.6e},eV,{abs(z.real):.6e},{abs(z.imag):.6e}\n")


if __name__ == "__main__":
    main()
