"""Face colorings of L_n by nonzero vectors of F_2^3.

Colors are the integers 1..7 read as bit vectors (bit 0 = e1).  A coloring
is valid when the three faces at every vertex carry linearly independent
colors; it is orientable when every color is e1, e2, e3 or e1+e2+e3.
"""

from __future__ import annotations

from dataclasses import dataclass

from flint import arb

from .errors import DomainError, IncompleteColoring, ParseError
from .family import FaceLattice, systole_candidate

ORIENTABLE_COLORS = (1, 2, 4, 7)


@dataclass(frozen=True)
class CoverReport:
    valid: bool
    orientable: bool
    top_equals_bottom: bool
    geodesic_candidate_length: arb | None = None


def independent(a: int, b: int, c: int) -> bool:
    return a != 0 and b != 0 and a != b and c not in (0, a, b, a ^ b)


def _check_complete(fl: FaceLattice, coloring: dict[int, int]):
    missing = [f.index for f in fl.faces if f.index not in coloring]
    if missing:
        raise IncompleteColoring(f"faces without a color: {missing}")
    extra = sorted(set(coloring) - {f.index for f in fl.faces})
    if extra:
        raise IncompleteColoring(f"colors given for unknown faces: {extra}")
    for f, c in coloring.items():
        if not 1 <= c <= 7:
            raise DomainError(f"face {f} has color {c}; colors are nonzero vectors 1..7")


def verify_coloring(fl: FaceLattice, coloring: dict[int, int], digits: int = 30) -> CoverReport:
    _check_complete(fl, coloring)
    valid = all(independent(*(coloring[f] for f in v)) for v in fl.vertices)
    orientable = all(c in ORIENTABLE_COLORS for c in coloring.values())
    teb = coloring[fl.top] == coloring[fl.bottom]
    length = systole_candidate(fl.n, digits) if valid and teb else None
    return CoverReport(valid, orientable, teb, length)


def find_coloring(fl: FaceLattice, require_top_eq_bottom: bool = False) -> dict[int, int] | None:
    """Backtracking search for a valid orientable coloring.

    With colors restricted to the orientable 4-set, validity is the same
    as a proper coloring of the face adjacency graph.  The next face is
    the one seeing the most distinct colors (ties: most uncolored
    neighbours, then lowest index).  The first face gets color 1 since
    colors can be permuted freely.
    """
    nbrs = {f.index: set(fl.neighbours(f.index)) for f in fl.faces}
    if require_top_eq_bottom:
        if fl.bottom in nbrs[fl.top]:
            return None
        # merge the bottom into the top
        nbrs[fl.top] |= nbrs.pop(fl.bottom)
        for s in nbrs.values():
            if fl.bottom in s:
                s.discard(fl.bottom)
                s.add(fl.top)
    color: dict[int, int] = {}

    def pick():
        best, key = None, None
        for f in nbrs:
            if f in color:
                continue
            seen = {color[g] for g in nbrs[f] if g in color}
            k = (len(seen), sum(1 for g in nbrs[f] if g not in color), -f)
            if key is None or k > key:
                best, key = f, k
        return best

    def solve() -> bool:
        f = pick()
        if f is None:
            return True
        used = {color[g] for g in nbrs[f] if g in color}
        options = ORIENTABLE_COLORS[:1] if not color else ORIENTABLE_COLORS
        for c in options:
            if c in used:
                continue
            color[f] = c
            if solve():
                return True
            del color[f]
        return False

    if not solve():
        return None
    if require_top_eq_bottom:
        color[fl.bottom] = color[fl.top]
    return dict(sorted(color.items()))


def format_coloring(coloring: dict[int, int]) -> str:
    lines = [f"face {f} {c & 1}{c >> 1 & 1}{c >> 2 & 1}" for f, c in sorted(coloring.items())]
    return "\n".join(lines) + "\n"


def parse_coloring(text: str) -> dict[int, int]:
    out: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] != "face":
            raise ParseError("expected 'face <index> <c1><c2><c3>'", lineno, 1)
        try:
            f = int(parts[1])
        except ValueError:
            raise ParseError(f"face index must be an integer, got {parts[1]!r}", lineno) from None
        bits = parts[2]
        if len(bits) != 3 or set(bits) - {"0", "1"}:
            raise ParseError(f"color must be three bits, got {bits!r}", lineno)
        c = int(bits[0]) | int(bits[1]) << 1 | int(bits[2]) << 2
        if c == 0:
            raise ParseError("color must be a nonzero vector", lineno)
        if f in out:
            raise ParseError(f"face {f} colored twice", lineno)
        out[f] = c
    return out
