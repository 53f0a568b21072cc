"""Singular points of the monodromy cubic and the exceptional line above one.

    python demos/cubic_surface.py
"""

from degpv.monodromy import cubic_singular_points, rplus_blowdown, rplus_fiber, rplus_residuals

for s0, s1 in [(0, 0), (3, 2), (2, 2), (-2, -2)]:
    pts = [(p.x1, p.x2, p.x3) for p in cubic_singular_points(s0, s1)]
    print(f"s0 = {s0:2}, s1 = {s1:2}: {pts or 'smooth'}")

print("\nabove (0, -1, 3) with s1 = 2:")
for pt in rplus_fiber(3, 5):
    print(f"  y1 = {pt.y1:5.2f}  relations {rplus_residuals(pt, 3)}  -> {rplus_blowdown(pt)}")
