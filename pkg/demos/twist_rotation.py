"""Rotation number of the twist on the level sets of k.

For -2 < k < 2 the twist acts on the ellipse {k = const} like a rotation;
the estimate from a long orbit is compared with acos(k/2)/pi.

    python demos/twist_rotation.py
"""
import numpy as np

from charvar.dynamics import omega_point_on, rotation_angle_exact, rotation_number_estimate, twist34_orbit

for k in np.linspace(-1.8, 1.8, 7):
    ests = [rotation_number_estimate(twist34_orbit(omega_point_on(k, t), 5000)) for t in (0.2, 1.7, 4.0)]
    print(f"k = {k:+.2f}   estimate {np.mean(ests):.6f}   spread {np.ptp(ests):.1e}"
          f"   predicted {rotation_angle_exact(k):.6f}")
