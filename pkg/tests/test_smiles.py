import json
import math
import random
from pathlib import Path

import pytest

from linkplot.smiles import (
    DuplicateRingBond,
    InvalidToken,
    MolGraph,
    SmilesError,
    UnclosedRingBond,
    UnmatchedParenthesis,
    UnsupportedFeature,
    parse_smiles,
)

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = json.loads((FIXTURES / "smiles_golden.json").read_text())

_VALENCE = {"B": 3, "C": 4, "N": 3, "O": 2, "P": 3, "S": 2,
            "F": 1, "Cl": 1, "Br": 1, "I": 1}
_ORDER = {"single": 1.0, "double": 2.0, "triple": 3.0, "aromatic": 1.5}


def _oracle_implicit_h(graph: MolGraph, idx: int) -> int:
    # independent valence-table computation in float arithmetic
    atom = graph.atoms[idx]
    if atom.explicit_h is not None:
        return 0
    total = sum(_ORDER[b.order] for b in graph.bonds_of(idx))
    return max(0, math.floor(_VALENCE[atom.element] - total))


@pytest.mark.parametrize(
    "entry", GOLDEN["molecules"], ids=[m["smiles"] for m in GOLDEN["molecules"]]
)
def test_corpus_counts(entry):
    g = parse_smiles(entry["smiles"])
    assert len(g.atoms) == entry["atoms"]
    assert len(g.bonds) == entry["bonds"]
    assert [a.implicit_h for a in g.atoms] == entry["implicit_h"]
    if "explicit_h" in entry:
        assert [a.explicit_h or 0 for a in g.atoms] == entry["explicit_h"]
    if "charge" in entry:
        assert sum(a.formal_charge for a in g.atoms) == entry["charge"]
    total = sum(a.implicit_h + (a.explicit_h or 0) for a in g.atoms)
    assert total == entry["total_h"]
    # cross-check the parser against the independent valence oracle
    for atom in g.atoms:
        assert atom.implicit_h == _oracle_implicit_h(g, atom.index)


@pytest.mark.parametrize(
    "entry", GOLDEN["invalid"], ids=[m["smiles"] for m in GOLDEN["invalid"]]
)
def test_invalid_corpus(entry):
    expected = {
        "UnclosedRingBond": UnclosedRingBond,
        "UnmatchedParenthesis": UnmatchedParenthesis,
        "DuplicateRingBond": DuplicateRingBond,
        "InvalidToken": InvalidToken,
        "UnsupportedFeature": UnsupportedFeature,
    }[entry["error"]]
    with pytest.raises(expected):
        parse_smiles(entry["smiles"])


def test_methane():
    g = parse_smiles("C")
    assert len(g.atoms) == 1 and len(g.bonds) == 0
    assert g.atoms[0].implicit_h == 4


def test_cyclohexane_structure():
    g = parse_smiles("C1CCCCC1")
    assert len(g.atoms) == 6
    assert len(g.bonds) == 6  # 5 chain + 1 ring closure
    degrees = [len(g.neighbors(i)) for i in range(6)]
    assert degrees == [2] * 6


def test_acetic_acid():
    g = parse_smiles("CC(=O)O")
    assert len(g.atoms) == 4 and len(g.bonds) == 3
    assert sum(1 for b in g.bonds if b.order == "double") == 1
    assert [a.implicit_h for a in g.atoms] == [3, 0, 0, 1]


def test_benzene():
    g = parse_smiles("c1ccccc1")
    assert all(a.aromatic for a in g.atoms)
    assert all(b.order == "aromatic" for b in g.bonds)
    assert [a.implicit_h for a in g.atoms] == [1] * 6


def test_bracket_atoms():
    g = parse_smiles("[13CH4]")
    atom = g.atoms[0]
    assert atom.isotope == 13
    assert atom.explicit_h == 4
    assert atom.implicit_h == 0  # bracket atoms never get implicit H
    g2 = parse_smiles("[NH4+]")
    assert g2.atoms[0].formal_charge == 1
    g3 = parse_smiles("[O-2]")
    assert g3.atoms[0].formal_charge == -2


def test_explicit_bond_symbols():
    g = parse_smiles("C-C=C#C")
    assert [b.order for b in g.bonds] == ["single", "double", "triple"]


def test_percent_ring_closure():
    g = parse_smiles("C%12CCCCC%12")
    assert len(g.bonds) == 6


def test_two_char_elements():
    g = parse_smiles("BrCCl")
    assert [a.element for a in g.atoms] == ["Br", "C", "Cl"]


def test_error_positions():
    with pytest.raises(InvalidToken) as e:
        parse_smiles("CCQ")
    assert e.value.position == 2
    with pytest.raises(UnsupportedFeature) as e:
        parse_smiles("CC.C")
    assert e.value.position == 2


def test_empty_string():
    with pytest.raises(SmilesError):
        parse_smiles("")


def test_duplicate_ring_digit_same_atom():
    with pytest.raises(DuplicateRingBond):
        parse_smiles("C11")


def test_ring_closure_duplicate_bond():
    # closure between already-bonded adjacent atoms
    with pytest.raises(DuplicateRingBond):
        parse_smiles("C1C1")


def test_fuzz_never_crashes():
    # arbitrary byte strings either parse or raise a structured error
    rng = random.Random(1234)
    alphabet = "CcNnOoSs()[]=#-:123456789%+.@/\\*BrClIFPbp Hx\x00\xff"
    for _ in range(100_000):
        length = rng.randint(1, 24)
        s = "".join(rng.choice(alphabet) for _ in range(length))
        try:
            g = parse_smiles(s)
            assert g.atoms
        except SmilesError:
            pass


def _random_even_valence_smiles(rng: random.Random) -> str:
    # trees of C, O, S with single/double bonds, never exceeding valence:
    # every atom's (bond orders + implicit H) equals its even valence, so
    # the total-valence handshake sum must be even

    def atom(incoming: int, depth: int) -> str:
        elem = rng.choice(["C", "C", "C", "O", "S"])
        cap = (4 if elem == "C" else 2) - incoming
        children = []
        while cap > 0 and depth < 5 and rng.random() < 0.55:
            order = 2 if cap >= 2 and rng.random() < 0.3 else 1
            children.append(
                ("=" if order == 2 else "") + atom(order, depth + 1)
            )
            cap -= order
        if not children:
            return elem
        return (
            elem + "".join(f"({c})" for c in children[:-1]) + children[-1]
        )

    return atom(0, 0)


def test_handshake_parity_even_valence_molecules():
    rng = random.Random(99)
    for _ in range(300):
        s = _random_even_valence_smiles(rng)
        try:
            g = parse_smiles(s)
        except SmilesError:
            continue
        total = 0
        for atom in g.atoms:
            degree = sum(
                1 if b.order == "aromatic" else int(_ORDER[b.order])
                for b in g.bonds_of(atom.index)
            )
            total += degree + atom.implicit_h + (atom.explicit_h or 0)
        assert total % 2 == 0, s


def test_at_most_one_bond_per_pair():
    for entry in GOLDEN["molecules"]:
        g = parse_smiles(entry["smiles"])
        pairs = [b.pair() for b in g.bonds]
        assert len(pairs) == len(set(pairs))
        assert all(a != b for a, b in pairs)


def test_connected():
    import networkx as nx

    for entry in GOLDEN["molecules"]:
        g = parse_smiles(entry["smiles"])
        G = nx.Graph()
        G.add_nodes_from(range(len(g.atoms)))
        G.add_edges_from((b.a, b.b) for b in g.bonds)
        assert nx.is_connected(G)
