"""
Pictures and a Monte Carlo cross-check
======================================
"""

import math

from walkident.render import render_walk, scene_for
from walkident.walks import count_paths, simulate

print(render_walk(scene_for("LRRLLLRL")))

# the tail after the last visit to 4 mirrored in the barrier
print(render_walk(scene_for("LLRLLLLRRRLR", barrier=4, reflect=True)))

# simulated end positions of 8-step walks against the exact distribution
res = simulate(8, 10**6, seed=1)
for x in range(-8, 9, 2):
    p = count_paths(8, x) / 2**8
    sigma = math.sqrt(p * (1 - p) / res.samples)
    print(f"{x:3d}  exact {p:.5f}  simulated {res.frequency(x):.5f}  z={(res.frequency(x) - p) / sigma:+.2f}")
