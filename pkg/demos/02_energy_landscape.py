"""
The Kuramoto energy landscape
=============================

The energy ``E = sum over edges of 1 - cos(theta_u - theta_v)`` is zero
exactly at the synchronous states. Here we classify a few equilibria by
their gradient and Hessian.
"""

import numpy as np

from threshsync import classify, complete, cycle, hessian, star

splay3 = 2 * np.pi * np.arange(3) / 3
splay5 = 2 * np.pi * np.arange(5) / 5

cases = [
    ("K3, synchronous", complete(3), np.zeros(3)),
    ("K3, splay", complete(3), splay3),
    ("C5, splay", cycle(5), splay5),
    ("star, one leaf flipped", star(3), np.array([0.0, 0.0, np.pi, 0.0])),
    ("K2, not an equilibrium", complete(2), np.array([0.0, 1.0])),
]

for name, g, theta in cases:
    rep = classify(g, theta)
    print(f"{name:26s} {rep.classification.value:18s} "
          f"E={rep.energy:.4f} |grad|={rep.gradient_norm:.1e} "
          f"min eig={rep.min_hessian_eigenvalue:+.4f}")
    if rep.witness is not None:
        x = np.asarray(rep.witness)
        print(f"{'':26s} descent direction x with x.H.x = {x @ hessian(g, theta) @ x:+.4f}")

# The twisted state of the 5-cycle is a genuine local minimum that is not
# synchronous; on threshold graphs no such state exists.
