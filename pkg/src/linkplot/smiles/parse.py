"""SMILES string parser producing a molecular graph.

Supported subset: organic-subset atoms B, C, N, O, P, S, F, Cl, Br, I;
aromatic lowercase b, c, n, o, p, s; bracket atoms with optional isotope,
explicit hydrogen count and formal charge; bond symbols - = # : ;
parenthesised branches; ring closures 1-9 and %nn.

Stereochemistry markers, the dot disconnect, and wildcards are rejected
with UnsupportedFeature rather than being silently dropped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

#: Lowest standard valence used for implicit hydrogen counting.
DEFAULT_VALENCE = {
    "B": 3, "C": 4, "N": 3, "O": 2, "P": 3, "S": 2,
    "F": 1, "Cl": 1, "Br": 1, "I": 1,
}

AROMATIC_ELEMENTS = {"B", "C", "N", "O", "P", "S"}

SINGLE = "single"
DOUBLE = "double"
TRIPLE = "triple"
AROMATIC = "aromatic"

#: Bond order in half-units, so aromatic (1.5) stays exact in integers.
HALF_ORDER = {SINGLE: 2, DOUBLE: 4, TRIPLE: 6, AROMATIC: 3}

BOND_SYMBOLS = {"-": SINGLE, "=": DOUBLE, "#": TRIPLE, ":": AROMATIC}

UNSUPPORTED_CHARS = {".", "/", "\\", "@", "*"}

_BRACKET_RE = re.compile(
    r"\[(?P<isotope>\d+)?"
    r"(?P<symbol>Cl|Br|B|C|N|O|P|S|F|I|b|c|n|o|p|s)"
    r"(?P<mods>[^\]]*)\]"
)
_HCOUNT_RE = re.compile(r"H(\d*)")
_CHARGE_RE = re.compile(r"(\+|-)(\d*)")


class SmilesError(Exception):
    """Base class for parse errors; carries the 0-based input position."""

    def __init__(self, position: int, message: str):
        self.position = position
        super().__init__(f"position {position}: {message}")


class UnmatchedParenthesis(SmilesError):
    pass


class UnclosedRingBond(SmilesError):
    pass


class DuplicateRingBond(SmilesError):
    pass


class InvalidToken(SmilesError):
    pass


class UnsupportedFeature(SmilesError):
    pass


@dataclass
class Atom:
    element: str
    aromatic: bool = False
    formal_charge: int = 0
    isotope: int | None = None
    explicit_h: int | None = None
    implicit_h: int = 0
    index: int = 0

    @property
    def hydrogen_count(self) -> int:
        return self.implicit_h + (self.explicit_h or 0)


@dataclass(frozen=True)
class Bond:
    a: int
    b: int
    order: str

    def pair(self) -> tuple[int, int]:
        return (self.a, self.b) if self.a < self.b else (self.b, self.a)

    def other(self, idx: int) -> int:
        return self.b if idx == self.a else self.a


@dataclass
class MolGraph:
    atoms: list[Atom] = field(default_factory=list)
    bonds: list[Bond] = field(default_factory=list)
    source: str = ""

    def neighbors(self, idx: int) -> list[int]:
        return [b.other(idx) for b in self.bonds if idx in (b.a, b.b)]

    def bonds_of(self, idx: int) -> list[Bond]:
        return [b for b in self.bonds if idx in (b.a, b.b)]


def _implicit_h(element: str, half_order_sum: int) -> int:
    # valence minus bond orders (aromatic = 1.5), rounded down, floor at 0
    valence = DEFAULT_VALENCE[element]
    return max(0, (2 * valence - half_order_sum) // 2)


def _parse_bracket(match: re.Match, pos: int) -> Atom:
    symbol = match.group("symbol")
    aromatic = symbol.islower()
    element = symbol.capitalize() if aromatic else symbol
    if aromatic and element not in AROMATIC_ELEMENTS:
        raise InvalidToken(pos, f"element {element} cannot be aromatic")
    isotope = int(match.group("isotope")) if match.group("isotope") else None

    mods = match.group("mods")
    explicit_h = 0
    charge = 0
    i = 0
    seen_h = seen_charge = False
    while i < len(mods):
        if mods[i] in UNSUPPORTED_CHARS:
            raise UnsupportedFeature(
                pos, f"unsupported bracket feature {mods[i]!r}"
            )
        m = _HCOUNT_RE.match(mods, i)
        if m and not seen_h:
            explicit_h = int(m.group(1)) if m.group(1) else 1
            seen_h = True
            i = m.end()
            continue
        m = _CHARGE_RE.match(mods, i)
        if m and not seen_charge:
            magnitude = int(m.group(2)) if m.group(2) else 1
            charge = magnitude if m.group(1) == "+" else -magnitude
            seen_charge = True
            i = m.end()
            continue
        raise InvalidToken(pos, f"bad bracket atom content {mods[i:]!r}")

    return Atom(
        element=element, aromatic=aromatic, formal_charge=charge,
        isotope=isotope, explicit_h=explicit_h,
    )


def parse_smiles(s: str) -> MolGraph:
    """Parse a SMILES string; raises a SmilesError subclass on bad input."""
    if not isinstance(s, str) or not s:
        raise InvalidToken(0, "empty SMILES string")

    graph = MolGraph(source=s)
    prev_atom: int | None = None
    branch_stack: list[int] = []
    pending_bond: str | None = None
    pending_bond_pos = 0
    # ring digit -> (atom index, explicit bond or None, position)
    open_rings: dict[str, tuple[int, str | None, int]] = {}
    bonded_pairs: set[tuple[int, int]] = set()

    def add_atom(atom: Atom, pos: int):
        nonlocal prev_atom, pending_bond
        atom.index = len(graph.atoms)
        graph.atoms.append(atom)
        if prev_atom is not None:
            order = pending_bond
            if order is None:
                both_aromatic = (
                    graph.atoms[prev_atom].aromatic and atom.aromatic
                )
                order = AROMATIC if both_aromatic else SINGLE
            _add_bond(prev_atom, atom.index, order, pos)
        elif pending_bond is not None:
            raise InvalidToken(pending_bond_pos, "bond with no preceding atom")
        pending_bond = None
        prev_atom = atom.index

    def _add_bond(a: int, b: int, order: str, pos: int):
        pair = (a, b) if a < b else (b, a)
        if pair in bonded_pairs:
            raise DuplicateRingBond(pos, "atoms are already bonded")
        bonded_pairs.add(pair)
        graph.bonds.append(Bond(a=a, b=b, order=order))

    def ring_closure(digit: str, pos: int):
        nonlocal pending_bond
        if prev_atom is None:
            raise InvalidToken(pos, "ring closure with no preceding atom")
        if digit in open_rings:
            other, other_bond, other_pos = open_rings[digit]
            if other == prev_atom:
                raise DuplicateRingBond(
                    pos, f"ring bond {digit} reopened on the same atom"
                )
            order = pending_bond or other_bond
            if (
                pending_bond is not None
                and other_bond is not None
                and pending_bond != other_bond
            ):
                raise InvalidToken(
                    pos, f"conflicting bond orders on ring closure {digit}"
                )
            if order is None:
                both_aromatic = (
                    graph.atoms[other].aromatic
                    and graph.atoms[prev_atom].aromatic
                )
                order = AROMATIC if both_aromatic else SINGLE
            _add_bond(other, prev_atom, order, pos)
            del open_rings[digit]
        else:
            open_rings[digit] = (prev_atom, pending_bond, pos)
        pending_bond = None

    i = 0
    n = len(s)
    while i < n:
        ch = s[i]
        if ch in UNSUPPORTED_CHARS:
            raise UnsupportedFeature(i, f"unsupported feature {ch!r}")
        if ch == "(":
            if prev_atom is None:
                raise InvalidToken(i, "branch with no preceding atom")
            if pending_bond is not None:
                raise InvalidToken(i, "bond before branch open")
            branch_stack.append(prev_atom)
            i += 1
            continue
        if ch == ")":
            if not branch_stack:
                raise UnmatchedParenthesis(i, "unopened ')'")
            if pending_bond is not None:
                raise InvalidToken(pending_bond_pos, "dangling bond symbol")
            prev_atom = branch_stack.pop()
            i += 1
            continue
        if ch in BOND_SYMBOLS:
            if pending_bond is not None:
                raise InvalidToken(i, "two bond symbols in a row")
            pending_bond = BOND_SYMBOLS[ch]
            pending_bond_pos = i
            i += 1
            continue
        if ch.isdigit():
            ring_closure(ch, i)
            i += 1
            continue
        if ch == "%":
            if i + 3 > n or not s[i + 1 : i + 3].isdigit():
                raise InvalidToken(i, "'%' needs two digits")
            ring_closure(s[i + 1 : i + 3], i)
            i += 3
            continue
        if ch == "[":
            m = _BRACKET_RE.match(s, i)
            if not m:
                end = s.find("]", i)
                inner = s[i : end + 1 if end >= 0 else n]
                if any(c in UNSUPPORTED_CHARS for c in inner):
                    raise UnsupportedFeature(
                        i, f"unsupported bracket atom {inner!r}"
                    )
                raise InvalidToken(i, f"bad bracket atom {inner!r}")
            add_atom(_parse_bracket(m, i), i)
            i = m.end()
            continue
        if s[i : i + 2] in ("Cl", "Br"):
            add_atom(Atom(element=s[i : i + 2]), i)
            i += 2
            continue
        if ch in "BCNOPSFI":
            add_atom(Atom(element=ch), i)
            i += 1
            continue
        if ch in "bcnops":
            add_atom(Atom(element=ch.upper(), aromatic=True), i)
            i += 1
            continue
        raise InvalidToken(i, f"unexpected character {ch!r}")

    if pending_bond is not None:
        raise InvalidToken(pending_bond_pos, "dangling bond symbol")
    if branch_stack:
        raise UnmatchedParenthesis(n - 1, "unclosed '('")
    if open_rings:
        digit, (_, _, pos) = sorted(open_rings.items())[0]
        raise UnclosedRingBond(pos, f"ring bond {digit} never closed")
    if not graph.atoms:
        raise InvalidToken(0, "no atoms in SMILES string")

    # implicit hydrogens: only organic-subset (non-bracket) atoms get them
    half_sums = [0] * len(graph.atoms)
    for b in graph.bonds:
        half_sums[b.a] += HALF_ORDER[b.order]
        half_sums[b.b] += HALF_ORDER[b.order]
    for atom in graph.atoms:
        if atom.explicit_h is None:
            atom.implicit_h = _implicit_h(atom.element, half_sums[atom.index])
        else:
            atom.implicit_h = 0

    return graph
