"""Freehand lasso selection: points inside a polygon become a cluster.

Run with: python3 demos/03_lasso_selection.py
"""

import numpy as np

from linkplot.analytics import Polygon, lasso_select, point_in_polygon

rng = np.random.default_rng(1)
points = rng.uniform(-5, 5, size=(20, 2))
row_ids = list(range(20))

# a rough freehand loop around the upper-right quadrant
lasso = Polygon(vertices=(
    (-0.2, -0.2), (5.5, -0.3), (5.4, 5.5), (-0.3, 5.4),
))
inside = lasso_select(points, row_ids, lasso)
print(f"{len(inside)} of {len(row_ids)} points captured: {sorted(inside)}")

# the test is even-odd ray casting; boundary points count as inside
print("corner on the boundary:",
      point_in_polygon((-0.2, -0.2), lasso))

# consecutive duplicate vertices (common in freehand input) are dropped
messy = Polygon(vertices=((0, 0), (0, 0), (4, 0), (4, 4), (4, 4), (0, 0)))
print("deduplicated vertex count:", len(messy.vertices))
