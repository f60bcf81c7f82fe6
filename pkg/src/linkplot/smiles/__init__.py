"""SMILES parsing, 2D coordinate generation, and stick-structure SVG."""

from linkplot.smiles.parse import (
    Atom,
    Bond,
    MolGraph,
    SmilesError,
    UnmatchedParenthesis,
    UnclosedRingBond,
    DuplicateRingBond,
    InvalidToken,
    UnsupportedFeature,
    parse_smiles,
)
from linkplot.smiles.layout import Layout2D, layout2d
from linkplot.smiles.depict import DepictStyle, LayoutMismatch, depict_svg

__all__ = [
    "Atom",
    "Bond",
    "MolGraph",
    "SmilesError",
    "UnmatchedParenthesis",
    "UnclosedRingBond",
    "DuplicateRingBond",
    "InvalidToken",
    "UnsupportedFeature",
    "parse_smiles",
    "Layout2D",
    "layout2d",
    "DepictStyle",
    "LayoutMismatch",
    "depict_svg",
]
