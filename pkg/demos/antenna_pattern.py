"""Walk through the antenna gain model used by the detection scheduler.

The receiving antenna is a circular aperture.  Its boresight gain grows
with the dish diameter and shrinks with the wavelength; off boresight
the gain rolls off following a two-term Bessel-function pattern.  This
script sweeps the off-axis angle for one antenna, locates the
half-power point, and shows how task importance degrees map onto the
four receiver bandwidth levels.
"""

import math

from satsched import edssp

DIAMETER_M = 3.0
WAVELENGTH_M = 0.1
EFFICIENCY = 0.6
LEVELS = (32.0, 16.0, 8.0, 4.0)


def sweep_gain():
    peak = edssp.peak_gain(DIAMETER_M, WAVELENGTH_M, EFFICIENCY)
    beamwidth = edssp.half_power_beamwidth_rad(DIAMETER_M, WAVELENGTH_M)
    print(f"aperture: D = {DIAMETER_M} m, lambda = {WAVELENGTH_M} m, eta = {EFFICIENCY}")
    print(f"peak (boresight) gain : {peak:.1f}  ({10 * math.log10(peak):.2f} dBi)")
    print(f"half-power beamwidth  : {math.degrees(beamwidth):.3f} deg")
    print()
    print(f"{'angle/beamwidth':>16} {'gain':>10} {'relative':>9}")
    for fraction in (0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0):
        angle = fraction * beamwidth
        gain = edssp.signal_gain(DIAMETER_M, WAVELENGTH_M, EFFICIENCY, angle)
        print(f"{fraction:>16.2f} {gain:>10.1f} {gain / peak:>9.4f}")
    half = edssp.signal_gain(DIAMETER_M, WAVELENGTH_M, EFFICIENCY, beamwidth) / peak
    print(f"\nat one beamwidth off boresight the gain is {half:.6f} of peak -- "
          "the pattern's -3 dB point.")


def bandwidth_brackets():
    print("\nimportance degree -> receiver bandwidth (MHz) and objective weight")
    for degree in (100, 76, 75, 51, 50, 26, 25, 1):
        bw = edssp.bandwidth_for_degree(LEVELS, degree)
        weight = edssp.bandwidth_weight(LEVELS, degree)
        print(f"  degree {degree:>3} -> {bw:>5.1f} MHz  weight {weight:.3f}")


def main():
    sweep_gain()
    bandwidth_brackets()


if __name__ == "__main__":
    main()
