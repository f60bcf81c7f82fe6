"""Cluster rows with k-means, project with PCA, and color a scatter.

Run with: python3 demos/02_clustering_and_embedding.py
"""

import numpy as np

from linkplot.analytics import kmeans, pca2
from linkplot.plots import InteractionState, PlotConfig, build_plot_spec
from linkplot.table import attach_aux, cluster_column, numeric_matrix, parse_csv

rng = np.random.default_rng(5)
rows = ["a,b"]
for center in ((0.0, 0.0), (8.0, 8.0), (0.0, 8.0)):
    for _ in range(10):
        x, y = rng.normal(loc=center, scale=0.6)
        rows.append(f"{x:.3f},{y:.3f}")
table = parse_csv("\n".join(rows).encode())

matrix, kept = numeric_matrix(table, ("a", "b"))
result = kmeans(matrix, k=3, seed=42)
print(f"k-means converged in {result.iterations} iterations, "
      f"inertia {result.inertia:.2f}")
print("inertia per iteration:",
      [round(v, 1) for v in result.inertia_history])

# attach labels as an aux column; untouched rows get the reserved "all"
labels = {rid: f"c{a + 1}" for rid, a in zip(kept, result.assignments)}
table = attach_aux(table, cluster_column(table, labels))
print("cluster sizes:",
      {lab: table.column("clusters").values.count(lab)
       for lab in table.column("clusters").categories})

embedding = pca2(matrix)
print("explained variance:",
      tuple(round(v, 3) for v in embedding.explained_variance))

state = InteractionState(cluster_column="clusters")
spec = build_plot_spec(
    table, PlotConfig("scatter", {"x_column": "a", "y_column": "b"}),
    state, "p1",
)
print("palette indices in use:",
      sorted({c for c in spec.series["color_index"] if c is not None}))
print("legend:", spec.encodings["color_legend"])
