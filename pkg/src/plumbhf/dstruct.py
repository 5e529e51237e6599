"""Type-D multimodules as labeled directed graphs.

A module has an ordered list of torus boundaries, each carrying a fiber
marker (which alpha arc, 1 or 2, is the S^1 fiber of the block it came
from).  Generators record, per boundary, how many alpha arcs they occupy
(0, 1 or 2) and - when the occupancy is 1 - which idempotent.  Arrows carry
one label per boundary; coefficients live in GF(2), so arrows are stored as
a set and adding an arrow twice cancels it.

The structure relation is the type-D analogue of d^2 = 0: for every pair of
generators and every label tuple, the number of length-two arrow paths
whose componentwise label product equals that tuple must be even.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from . import algebra as alg
from .algebra import E

Label = Tuple[int, ...]
Arrow = Tuple[str, str, Label]


@dataclass(frozen=True)
class Generator:
    name: str
    occupancy: Tuple[int, ...]
    # idempotent per boundary; None where occupancy != 1
    idem: Tuple[Optional[int], ...]


class DModule:
    """A type-D multimodule over copies of the torus algebra."""

    def __init__(self, num_boundaries: int, fibers: Sequence[int]):
        if len(fibers) != num_boundaries:
            raise ValueError("one fiber marker per boundary")
        if any(f not in (1, 2) for f in fibers):
            raise ValueError("fiber markers are alpha-arc indices 1 or 2")
        self.num_boundaries = num_boundaries
        self.fibers: List[int] = list(fibers)
        self.generators: Dict[str, Generator] = {}
        self.arrows: Set[Arrow] = set()

    # -- construction -------------------------------------------------

    def add_generator(self, name: str, occupancy: Sequence[int],
                      idem: Sequence[Optional[int]]) -> Generator:
        if name in self.generators:
            raise ValueError(f"duplicate generator {name!r}")
        occupancy = tuple(occupancy)
        idem = tuple(idem)
        if len(occupancy) != self.num_boundaries or len(idem) != self.num_boundaries:
            raise ValueError("occupancy/idempotent arity mismatch")
        for occ, i in zip(occupancy, idem):
            if occ == 1:
                if i not in (alg.I0, alg.I1):
                    raise ValueError("occupancy-1 slot needs an idempotent")
            elif occ in (0, 2):
                if i is not None:
                    raise ValueError("idempotent only at occupancy 1")
            else:
                raise ValueError("occupancy must be 0, 1 or 2")
        g = Generator(name, occupancy, idem)
        self.generators[name] = g
        return g

    def add_arrow(self, src: str, dst: str, labels: Sequence[Optional[int]]) -> None:
        """Toggle an arrow (GF(2) coefficients)."""
        labels = tuple(labels)
        if len(labels) != self.num_boundaries:
            raise ValueError("label arity mismatch")
        arrow = (src, dst, labels)
        if arrow in self.arrows:
            self.arrows.remove(arrow)
        else:
            self.arrows.add(arrow)

    def copy(self) -> "DModule":
        m = DModule(self.num_boundaries, self.fibers)
        m.generators = dict(self.generators)
        m.arrows = set(self.arrows)
        return m

    # -- queries -------------------------------------------------------

    def arrow_label_ok(self, arrow: Arrow) -> Optional[str]:
        """Check one arrow against endpoint data; return an error or None."""
        src, dst, labels = arrow
        if src not in self.generators or dst not in self.generators:
            return f"arrow {arrow} references unknown generator"
        gs, gd = self.generators[src], self.generators[dst]
        if gs.occupancy != gd.occupancy:
            return f"arrow {arrow} crosses occupancy summands"
        for b in range(self.num_boundaries):
            lab = labels[b]
            occ = gs.occupancy[b]
            if occ in (0, 2):
                if lab != E:
                    return f"arrow {arrow}: boundary {b} needs formal identity"
            else:
                if lab is None or lab == E:
                    return f"arrow {arrow}: boundary {b} missing algebra label"
                if alg.left_idem(lab) != gs.idem[b]:
                    return f"arrow {arrow}: left idempotent clash at boundary {b}"
                if alg.right_idem(lab) != gd.idem[b]:
                    return f"arrow {arrow}: right idempotent clash at boundary {b}"
        return None

    def validate(self) -> None:
        """Raise ValueError unless the structure relation holds."""
        for arrow in self.arrows:
            err = self.arrow_label_ok(arrow)
            if err:
                raise ValueError(err)
        out: Dict[str, List[Arrow]] = {}
        for arrow in self.arrows:
            out.setdefault(arrow[0], []).append(arrow)
        counts: Dict[Tuple[str, str, Label], int] = {}
        for (x, y, lab1) in self.arrows:
            for (_, z, lab2) in out.get(y, ()):
                prod = tuple(alg.mul(a, b) for a, b in zip(lab1, lab2))
                if any(p is None for p in prod):
                    continue
                key = (x, z, prod)
                counts[key] = counts.get(key, 0) + 1
        for key, n in counts.items():
            if n % 2:
                raise ValueError(f"structure relation fails at {key}")

    def summand_split(self) -> Dict[Tuple[int, ...], "DModule"]:
        """Partition by occupancy vector; arrows never cross summands."""
        parts: Dict[Tuple[int, ...], DModule] = {}
        for g in self.generators.values():
            parts.setdefault(g.occupancy, DModule(self.num_boundaries, self.fibers))
            sub = parts[g.occupancy]
            sub.generators[g.name] = g
        for arrow in self.arrows:
            occ = self.generators[arrow[0]].occupancy
            parts[occ].arrows.add(arrow)
        return parts

    # -- symmetries ----------------------------------------------------

    def mirror(self) -> "DModule":
        """Orientation reversal: swap 1<->3 in labels, reverse arrows,
        complement idempotents, occupancy n -> 2-n, swap fiber arcs."""
        m = DModule(self.num_boundaries, [3 - f for f in self.fibers])
        for g in self.generators.values():
            occ = tuple(2 - o for o in g.occupancy)
            idem = tuple(None if i is None else alg.complement(i) for i in g.idem)
            m.add_generator(g.name, occ, idem)
        for (src, dst, labels) in self.arrows:
            m.add_arrow(dst, src, tuple(alg.mirror_elem(a) for a in labels))
        return m

    # -- serialization -------------------------------------------------

    def dumps(self) -> str:
        lines = [f"boundaries {self.num_boundaries} fibers " +
                 " ".join(str(f) for f in self.fibers)]
        for gname in sorted(self.generators):
            g = self.generators[gname]
            occ = ",".join(str(o) for o in g.occupancy)
            idem = ",".join("-" if i is None else alg.name(i) for i in g.idem)
            lines.append(f"gen {gname} occ={occ} idem={idem}")
        for (src, dst, labels) in sorted(self.arrows):
            lab = ",".join(alg.name(a) for a in labels)
            lines.append(f"arrow {src} -> {dst} [{lab}]")
        return "\n".join(lines) + "\n"


def derive_idempotents(module: DModule,
                       known: Dict[str, Sequence[Optional[int]]]) -> Dict[str, Tuple]:
    """Recover occupancy-1 idempotents from arrow labels.

    ``known`` seeds some generators.  Chord labels force the idempotents of
    both endpoints; a no-chord slot (stored as an idempotent label) forces
    the two endpoints to agree.  Raises ValueError when the constraints are
    inconsistent or leave a slot undetermined.
    """
    idem: Dict[Tuple[str, int], Optional[int]] = {}
    slots = [(g.name, b) for g in module.generators.values()
             for b in range(module.num_boundaries) if g.occupancy[b] == 1]
    for s in slots:
        idem[s] = None
    for gname, vals in known.items():
        for b, v in enumerate(vals):
            if v is not None:
                idem[(gname, b)] = v

    def assign(slot, value, ctx):
        if idem.get(slot) is None:
            idem[slot] = value
            return True
        if idem[slot] != value:
            raise ValueError(f"inconsistent idempotents at {slot} via {ctx}")
        return False

    # Union classes for slots tied by no-chord labels.
    ties: List[Tuple[Tuple[str, int], Tuple[str, int]]] = []
    changed = True
    while changed:
        changed = False
        for (src, dst, labels) in module.arrows:
            occ = module.generators[src].occupancy
            for b in range(module.num_boundaries):
                if occ[b] != 1:
                    continue
                lab = labels[b]
                if lab in (alg.I0, alg.I1):
                    ties.append(((src, b), (dst, b)))
                    for a, c in (((src, b), (dst, b)), ((dst, b), (src, b))):
                        if idem.get(a) is not None and idem.get(c) is None:
                            changed |= assign(c, idem[a], (src, dst, labels))
                else:
                    changed |= assign((src, b), alg.left_idem(lab), (src, dst, labels))
                    changed |= assign((dst, b), alg.right_idem(lab), (src, dst, labels))
    undetermined = [s for s, v in idem.items() if v is None]
    if undetermined:
        raise ValueError(f"underdetermined idempotents: {sorted(undetermined)}")
    out: Dict[str, Tuple] = {}
    for g in module.generators.values():
        out[g.name] = tuple(idem.get((g.name, b)) for b in range(module.num_boundaries))
    return out


def is_isomorphic(m1: DModule, m2: DModule) -> bool:
    """Label-preserving isomorphism of the underlying labeled graphs."""
    if m1.num_boundaries != m2.num_boundaries:
        return False
    if sorted((g.occupancy, g.idem) for g in m1.generators.values()) != \
       sorted((g.occupancy, g.idem) for g in m2.generators.values()):
        return False
    if len(m1.arrows) != len(m2.arrows):
        return False

    def signature(m: DModule) -> Dict[str, Tuple]:
        sig = {g: (m.generators[g].occupancy, m.generators[g].idem, (), ())
               for g in m.generators}
        for _ in range(len(m.generators)):
            outs: Dict[str, List] = {g: [] for g in m.generators}
            ins: Dict[str, List] = {g: [] for g in m.generators}
            for (s, d, lab) in m.arrows:
                outs[s].append((lab, sig[d][:2]))
                ins[d].append((lab, sig[s][:2]))
            new = {g: (sig[g][0], sig[g][1],
                       tuple(sorted(outs[g])), tuple(sorted(ins[g])))
                   for g in m.generators}
            if new == sig:
                break
            sig = new
        return sig

    sig1, sig2 = signature(m1), signature(m2)
    if sorted(sig1.values()) != sorted(sig2.values()):
        return False

    by_sig: Dict[Tuple, List[str]] = {}
    for g, s in sig2.items():
        by_sig.setdefault(s, []).append(g)
    order = sorted(m1.generators, key=lambda g: (len(by_sig[sig1[g]]), g))
    arrows2 = m2.arrows
    out1: Dict[str, List[Arrow]] = {}
    for a in m1.arrows:
        out1.setdefault(a[0], []).append(a)

    assignment: Dict[str, str] = {}
    used: Set[str] = set()

    def consistent(g1: str, g2: str) -> bool:
        for (s, d, lab) in m1.arrows:
            ms = assignment.get(s) if s != g1 else g2
            md = assignment.get(d) if d != g1 else g2
            if ms is not None and md is not None and (ms, md, lab) not in arrows2:
                return False
        return True

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        g1 = order[i]
        for g2 in by_sig[sig1[g1]]:
            if g2 in used:
                continue
            if consistent(g1, g2):
                assignment[g1] = g2
                used.add(g2)
                if rec(i + 1):
                    return True
                del assignment[g1]
                used.remove(g2)
        return False

    return rec(0)
