"""The torus algebra over GF(2).

Basis elements are encoded as small integers.  The algebra has two
idempotents (one per alpha arc of the parametrized torus boundary) and six
Reeb elements, named by the boundary intervals they traverse.  There is one
extra symbol, ``E``, used as the label on a boundary whose generator
occupies zero or two arcs: no Reeb chords exist there, so ``E`` acts as a
formal identity distinct from both idempotents.

Zero is represented by ``None`` throughout: products that vanish return
``None`` and callers drop the corresponding terms.
"""

from __future__ import annotations

from typing import Optional

# Basis element codes.
I0 = 0
I1 = 1
R1 = 2
R2 = 3
R3 = 4
R12 = 5
R23 = 6
R123 = 7
# Formal identity for occupancy-0/2 boundary slots.
E = 8

ELEMENTS = (I0, I1, R1, R2, R3, R12, R23, R123)
IDEMPOTENTS = (I0, I1)
CHORDS = (R1, R2, R3, R12, R23, R123)

NAMES = {
    I0: "i0",
    I1: "i1",
    R1: "r1",
    R2: "r2",
    R3: "r3",
    R12: "r12",
    R23: "r23",
    R123: "r123",
    E: "e",
}
_BY_NAME = {v: k for k, v in NAMES.items()}

# Interval endpoints of each chord on the boundary circle, as (start, end).
# Points 0 and 2 lie on one alpha arc, points 1 and 3 on the other; the
# idempotent of an element is determined by the arc its endpoints sit on.
_SPAN = {R1: (0, 1), R2: (1, 2), R3: (2, 3), R12: (0, 2), R23: (1, 3), R123: (0, 3)}

# left_idem[a] * a = a = a * right_idem[a]
LEFT_IDEM = {
    I0: I0,
    I1: I1,
    R1: I0,
    R2: I1,
    R3: I0,
    R12: I0,
    R23: I1,
    R123: I0,
}
RIGHT_IDEM = {
    I0: I0,
    I1: I1,
    R1: I1,
    R2: I0,
    R3: I1,
    R12: I0,
    R23: I1,
    R123: I1,
}


def _build_mul() -> dict:
    table = {}
    # Idempotents.
    for a in ELEMENTS:
        for i in IDEMPOTENTS:
            table[(i, a)] = a if LEFT_IDEM[a] == i else None
            table[(a, i)] = a if RIGHT_IDEM[a] == i else None
    # Chord concatenation: nonzero iff the intervals abut head-to-tail.
    for a in CHORDS:
        for b in CHORDS:
            sa, ea = _SPAN[a]
            sb, eb = _SPAN[b]
            if ea == sb and (sa, eb) in _SPAN.values():
                prod = next(c for c, sp in _SPAN.items() if sp == (sa, eb))
                table[(a, b)] = prod
            else:
                table[(a, b)] = None
    # E multiplies only with itself.
    for a in ELEMENTS:
        table[(E, a)] = None
        table[(a, E)] = None
    table[(E, E)] = E
    return table


MUL = _build_mul()

# Mirror: the arc-exchange relabeling, interval k <-> 4-k reversed; on basis
# elements it swaps 1 <-> 3 and 12 <-> 23 and the two idempotents.
MIRROR = {
    I0: I1,
    I1: I0,
    R1: R3,
    R2: R2,
    R3: R1,
    R12: R23,
    R23: R12,
    R123: R123,
    E: E,
}


def mul(a: Optional[int], b: Optional[int]) -> Optional[int]:
    """Multiply two basis elements; ``None`` is zero."""
    if a is None or b is None:
        return None
    return MUL[(a, b)]


def mul_seq(elems) -> Optional[int]:
    """Ordered product of a sequence of basis elements."""
    out: Optional[int] = None
    first = True
    for a in elems:
        if first:
            out = a
            first = False
        else:
            out = mul(out, a)
        if out is None:
            return None
    return out


def mirror_elem(a: Optional[int]) -> Optional[int]:
    if a is None:
        return None
    return MIRROR[a]


def left_idem(a: int) -> int:
    return LEFT_IDEM[a]


def right_idem(a: int) -> int:
    return RIGHT_IDEM[a]


def complement(i: int) -> int:
    """The opposite idempotent."""
    if i == I0:
        return I1
    if i == I1:
        return I0
    raise ValueError(f"not an idempotent: {i}")


def is_idempotent(a: int) -> bool:
    return a in (I0, I1)


def name(a: Optional[int]) -> str:
    return "0" if a is None else NAMES[a]


def from_name(s: str) -> int:
    return _BY_NAME[s]
