"""One-step majority-logic decoding on AG(2, q) with every direction.

Each bit of D is checked by |K| orthogonal lines and each bit of C by q
points, so up to floor(|K|/2) and floor(q/2) errors are always corrected.
Past that radius decoding starts to fail on some patterns.
"""
import sys

from fingeo import GeomConfig, build_kset, field_create
from fingeo.decoder import channel_trials, guaranteed_radius, write_csv

summaries = []
for p, e in ((2, 2), (5, 1)):
    cfg = GeomConfig(field_create(p, e), 2)
    K = build_kset(cfg, "full")
    for code in ("D", "C"):
        radius = guaranteed_radius(cfg, K, code)
        for t in range(radius + 3):
            summaries.append(channel_trials(cfg, K, code, t, trials=500, seed=t))
write_csv(summaries, sys.stdout)
