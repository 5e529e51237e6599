"""Building-block type-D multimodules for plumbed manifolds.

Every block is returned as a fresh :class:`~plumbhf.dstruct.DModule` and is
already validated.  The catalog covers:

* ``identity_dd`` -- the type-DD bimodule of the identity cobordism;
* ``cap`` -- the two solid-torus modules (0-framed fillings of a torus
  boundary, distinguished by which arc the meridian matches);
* ``twist`` -- the bimodules effecting a positive or negative boundary
  Dehn twist about the fiber arc;
* ``pants`` / ``mirror_pants`` -- the trimodule of the pair-of-pants times
  the circle and its orientation reversal;
* ``self_gluer`` -- the bimodule inserted before identifying two torus
  boundaries of a single module;
* ``genus_piece`` -- one-boundary-handle building block, assembled from
  pants and self-gluer.
"""

from __future__ import annotations

from typing import Dict, Iterable, Optional, Sequence, Tuple

from . import algebra as alg
from .algebra import (E, I0, I1, R1, R2, R3, R12, R23, R123)
from .dstruct import DModule

__all__ = [
    "identity_dd", "cap", "twist", "pants", "mirror_pants",
    "self_gluer", "genus_piece",
]


def _add_arrows(m: DModule, triples: Iterable[Tuple[str, str, Sequence[int]]]) -> None:
    for src, dst, labels in triples:
        m.add_arrow(src, dst, labels)


def identity_dd() -> DModule:
    """Type-DD bimodule of the identity cobordism of the torus."""
    m = DModule(2, [1, 2])
    m.add_generator("p", (1, 1), (I0, I0))
    m.add_generator("q", (1, 1), (I1, I1))
    _add_arrows(m, [
        ("q", "p", (R2, R2)),
        ("p", "q", (R1, R3)),
        ("p", "q", (R3, R1)),
        ("p", "q", (R123, R123)),
    ])
    m.add_generator("u", (2, 0), (None, None))
    m.add_generator("v", (0, 2), (None, None))
    m.validate()
    return m


def cap(variant: str) -> DModule:
    """Solid-torus module: variant "A" fills along arc 1, "B" along arc 2."""
    if variant == "A":
        m = DModule(1, [1])
        m.add_generator("x", (1,), (I0,))
        m.add_arrow("x", "x", (R12,))
    elif variant == "B":
        m = DModule(1, [2])
        m.add_generator("x", (1,), (I1,))
        m.add_arrow("x", "x", (R23,))
    else:
        raise ValueError(f"unknown cap variant {variant!r}")
    m.validate()
    return m


def pants() -> DModule:
    """Trimodule of the pair of pants times S^1.

    Boundary order (rho, sigma, tau); the fiber matches arc 2 on the rho
    and tau sides and arc 1 on the sigma side.
    """
    m = DModule(3, [2, 1, 2])
    mid = {
        "v": (I0, I0, I0), "w": (I0, I0, I0), "x": (I1, I0, I0),
        "y": (I1, I1, I1), "z": (I0, I0, I1),
    }
    for name, idem in mid.items():
        m.add_generator(name, (1, 1, 1), idem)

    def lab(src, dst, rho=None, sigma=None, tau=None):
        parts = []
        for b, part in enumerate((rho, sigma, tau)):
            parts.append(part if part is not None else mid[src][b])
        return (src, dst, tuple(parts))

    _add_arrows(m, [
        lab("v", "y", rho=R1, sigma=R3, tau=R123),
        lab("v", "y", rho=R123, sigma=R123, tau=R123),
        lab("v", "x", rho=R3),
        lab("x", "v", rho=R2, sigma=R12),
        lab("w", "y", rho=R1, sigma=R3, tau=R1),
        lab("w", "y", rho=R123, sigma=R123, tau=R1),
        lab("w", "x", rho=R3, sigma=R12),
        lab("x", "w", rho=R2),
        lab("y", "x", sigma=R2, tau=R2),
        lab("x", "y", sigma=R1, tau=R3),
        lab("z", "y", rho=R3, sigma=R1),
        lab("y", "z", rho=R2, sigma=R2),
        lab("v", "z", tau=R3),
        lab("z", "w", tau=R2),
    ])

    # extremal summands
    m.add_generator("agi", (1, 2, 0), (I1, None, None))
    m.add_generator("afi", (2, 1, 0), (None, I0, None))
    m.add_generator("afh", (2, 0, 1), (None, None, I1))
    m.add_generator("bfh", (1, 0, 2), (I0, None, None))
    m.add_generator("aeh", (1, 0, 2), (I1, None, None))
    m.add_generator("dfh", (1, 0, 2), (I0, None, None))
    m.add_generator("bgi", (0, 2, 1), (None, None, I0))
    m.add_generator("cgi", (0, 2, 1), (None, None, I1))
    m.add_generator("dgi", (0, 2, 1), (None, None, I0))
    m.add_generator("dgh", (0, 1, 2), (None, I1, None))
    m.add_generator("cei", (0, 1, 2), (None, I0, None))
    m.add_generator("bgh", (0, 1, 2), (None, I1, None))
    _add_arrows(m, [
        ("bfh", "aeh", (R3, E, E)),
        ("aeh", "dfh", (R2, E, E)),
        ("bgi", "cgi", (E, E, R3)),
        ("cgi", "dgi", (E, E, R2)),
        ("dgh", "cei", (E, R2, E)),
        ("cei", "bgh", (E, R1, E)),
    ])
    m.validate()
    return m


def mirror_pants() -> DModule:
    """Orientation reversal of the pants trimodule."""
    return pants().mirror()


def self_gluer() -> DModule:
    """Bimodule inserted before self-identifying two torus boundaries.

    Two boundaries (rho, sigma), both fiber-matched to arc 2.  The middle
    summand has 20 generators: a 4x4 grid plus four satellites; both
    extremal summands are empty.
    """
    m = DModule(2, [2, 2])
    rows = [("eb", I0), ("af", I1), ("ed", I0), ("ah", I1)]
    cols = [("i", I1), ("j", I0), ("k", I1), ("l", I0)]
    for rname, ridem in rows:
        for cname, cidem in cols:
            m.add_generator(rname + cname, (1, 1), (ridem, cidem))
    for name, idem in [("enc", (I0, I0)), ("ang", (I1, I1)),
                       ("amg", (I1, I1)), ("emc", (I0, I0))]:
        m.add_generator(name, (1, 1), idem)

    arrows = []
    row_chords = [("eb", "af", R3), ("af", "ed", R2), ("ed", "ah", R1)]
    for cname, cidem in cols:
        for r1, r2, chord in row_chords:
            arrows.append((r1 + cname, r2 + cname, (chord, cidem)))
    col_chords = [("l", "k", R3), ("k", "j", R2), ("j", "i", R1),
                  ("l", "i", R123)]
    for rname, ridem in rows:
        for c1, c2, chord in col_chords:
            arrows.append((rname + c1, rname + c2, (ridem, chord)))
    arrows += [
        ("ebl", "enc", (I0, I0)),
        ("ebj", "enc", (R12, I0)),
        ("edl", "enc", (I0, R12)),
        ("ebi", "ang", (R123, I1)),
        ("ebk", "ang", (R1, I1)),
        ("afl", "ang", (I1, R1)),
        ("ahl", "ang", (I1, R123)),
        ("amg", "ahi", (I1, I1)),
        ("amg", "ahk", (R23, I1)),
        ("amg", "afi", (I1, R23)),
        ("emc", "ahl", (R123, I0)),
        ("emc", "ahj", (R3, I0)),
        ("emc", "edi", (I0, R3)),
        ("emc", "ebi", (I0, R123)),
        ("ang", "enc", (R2, R2)),
        ("enc", "ang", (R1, R3)),
        ("enc", "ang", (R3, R1)),
        ("enc", "ang", (R123, R123)),
        ("amg", "emc", (R2, R2)),
        ("emc", "amg", (R1, R3)),
        ("emc", "amg", (R3, R1)),
        ("emc", "amg", (R123, R123)),
    ]
    _add_arrows(m, arrows)
    m.validate()
    return m
