"""Gallery of the built-in mean-shear profiles and their gradients.

Each profile is plotted with its slope; the dotted line marks the shear
strength S = sup |U'|.  Run from the repository root:

    python demos/01_shear_profiles.py
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from shearcascade import GaussJet, MixingLayer, Sech2Jet, Wake

profiles = {
    "mixing layer": MixingLayer(U1=1.0, U2=-1.0, delta=0.5),
    "sech$^2$ jet": Sech2Jet(U0=1.0, delta=0.5),
    "Gaussian jet": GaussJet(U0=1.0, delta=0.5),
    "wake": Wake(Uinf=1.0, Ud=0.6, delta=0.5),
}

z = np.linspace(-2.5, 2.5, 600)
fig, axes = plt.subplots(2, len(profiles), figsize=(13, 5), sharey="row")
for col, (name, profile) in enumerate(profiles.items()):
    u, du, _ = profile.evaluate(z)
    s = profile.shear_strength()
    axes[0, col].plot(u, z)
    axes[0, col].set_title(name)
    axes[1, col].plot(du, z)
    axes[1, col].axvline(s, color="k", ls=":", lw=0.8)
    axes[1, col].axvline(-s, color="k", ls=":", lw=0.8)
axes[0, 0].set_ylabel("z")
axes[1, 0].set_ylabel("z")
axes[0, 0].set_xlabel("U")
for ax in axes[1]:
    ax.set_xlabel("U'")
fig.tight_layout()
fig.savefig("demo_profiles.png", dpi=130)
print("wrote demo_profiles.png; shear strengths:")
for name, profile in profiles.items():
    print(f"  {name:>14}: S = {profile.shear_strength():.4f}")
