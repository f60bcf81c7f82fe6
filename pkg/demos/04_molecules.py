"""Parse SMILES strings, lay out 2D coordinates, and render SVG.

Run with: python3 demos/04_molecules.py
"""

from pathlib import Path

from linkplot.smiles import SmilesError, depict_svg, layout2d, parse_smiles

for smiles in ("CCO", "c1ccccc1", "CC(=O)Oc1ccccc1C(=O)O"):
    mol = parse_smiles(smiles)
    hydrogens = sum(a.hydrogen_count for a in mol.atoms)
    print(f"{smiles}: {len(mol.atoms)} heavy atoms, "
          f"{len(mol.bonds)} bonds, {hydrogens} hydrogens")

# errors carry the offending position
for bad in ("C1CC", "CC.CC", "C==C"):
    try:
        parse_smiles(bad)
    except SmilesError as e:
        print(f"{bad!r}: {type(e).__name__} at {e.position}: {e}")

# layout is deterministic; rings come out as regular polygons
mol = parse_smiles("c1ccccc1O")  # phenol
layout = layout2d(mol)
print("phenol coordinates:")
for atom, (x, y) in zip(mol.atoms, layout.coords):
    print(f"  {atom.element:>2} ({x:+.2f}, {y:+.2f})")

out = Path("phenol.svg")
out.write_text(depict_svg(mol, layout))
print(f"wrote {out} ({out.stat().st_size} bytes)")
