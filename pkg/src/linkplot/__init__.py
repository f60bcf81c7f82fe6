"""linkplot: linked-view exploration engine for multidimensional data.

Library layout:

- ``linkplot.table``     — immutable columnar table store (CSV ingestion,
  aux columns, numeric matrix extraction)
- ``linkplot.analytics`` — k-means, 2-component PCA, lasso selection
- ``linkplot.smiles``    — SMILES parsing, 2D layout, stick-structure SVG
- ``linkplot.plots``     — declarative plot specs for the six built-in kinds
- ``linkplot.session``   — deterministic session save/load
- ``linkplot.engine``    — event dispatch, plugin registry, protocol,
  HTTP server and the ``linkplot`` CLI
"""

__version__ = "0.1.0"
