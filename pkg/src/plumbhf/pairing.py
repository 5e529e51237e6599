"""Gluing of type-D multimodules along torus boundaries.

All gluing is mediated by one fixed type-AA bimodule, the *AA identity*.
It has six generators -- one for each diagonal idempotent pair and an
acyclic pair in each mixed sector -- and a finite operation table of
sixteen higher actions with at most three chord inputs.  The table is the
unique-up-to-gauge solution of the A-infinity relation together with the
gluing laws it must satisfy: gluing the identity bimodule onto any
boundary of any built-in block is the identity, and capping boundaries
with solid tori yields the correct homology ranks.

``glue`` forms the complex whose generators are triples ``(x, f, y)`` of a
generator of each module with a matching AA generator, and whose
differential pairs operations of the table against paths of arrows read
along the glued boundaries; ``self_glue`` wraps the table around two
boundaries of a single module, reading both chord sequences off the same
path.  Both reduce their inputs first and their output afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from . import algebra as alg
from .algebra import E
from .dstruct import DModule, Generator
from .reduction import reduce_module

__all__ = [
    "AAGen", "AAIdentity", "aa_identity", "validate_aa", "glue", "self_glue",
    "BoundaryTypeMismatch", "SameBoundary", "NonTermination",
    "pairing_term_bound",
]


class BoundaryTypeMismatch(ValueError):
    """Raised when a gluing request names an invalid boundary."""


class SameBoundary(ValueError):
    """Raised when self_glue is asked to glue a boundary to itself."""


class NonTermination(RuntimeError):
    """Defensive: a contributing path exceeded the termination bound."""


@dataclass(frozen=True)
class AAGen:
    """Generator of the AA identity table."""
    name: str
    i1: int
    i2: int

    def key(self) -> str:
        return self.name


Chords = Tuple[int, ...]
OpEntry = Tuple[Chords, Chords, FrozenSet[AAGen]]

# The six generators.  P and Q span the homology of the table; each mixed
# idempotent sector carries one acyclic pair (R -> S, T -> U) killed by
# the differential.
_P = AAGen("P", alg.I0, alg.I0)
_Q = AAGen("Q", alg.I1, alg.I1)
_R = AAGen("R", alg.I0, alg.I1)
_S = AAGen("S", alg.I0, alg.I1)
_T = AAGen("T", alg.I1, alg.I0)
_U = AAGen("U", alg.I1, alg.I0)

_AA_GENS: Tuple[AAGen, ...] = (_P, _Q, _R, _S, _T, _U)

# Differential (arity-zero operations).
_AA_M1: Tuple[Tuple[AAGen, AAGen], ...] = ((_R, _S), (_T, _U))

# Higher operations m(f; s1; s2) = g as (f, s1, s2, g).  Each chord
# sequence is consumed along the corresponding glued boundary.
_AA_OPS: Tuple[Tuple[AAGen, Chords, Chords, AAGen], ...] = (
    (_P, (alg.R3,), (), _U),
    (_T, (), (alg.R1,), _Q),
    (_P, (alg.R1,), (alg.R3,), _Q),
    (_Q, (alg.R2,), (alg.R2,), _P),
    (_Q, (alg.R23,), (alg.R2,), _U),
    (_R, (alg.R12,), (alg.R23,), _S),
    (_T, (alg.R2,), (alg.R12,), _P),
    (_T, (alg.R23,), (alg.R12,), _U),
    (_P, (), (alg.R3, alg.R2, alg.R1), _S),
    (_P, (alg.R12,), (alg.R3, alg.R2), _P),
    (_P, (alg.R123,), (alg.R3, alg.R2), _U),
    (_Q, (alg.R2, alg.R1), (alg.R23,), _Q),
    (_R, (alg.R3, alg.R2, alg.R1), (), _Q),
    (_S, (alg.R1, alg.R2), (alg.R23,), _S),
    (_S, (alg.R12,), (alg.R2, alg.R3), _S),
    (_T, (alg.R2, alg.R1), (alg.R123,), _Q),
)


class AAIdentity:
    """The AA identity bimodule: generators, idempotents and operations.

    Operations are stored explicitly as a finite table mapping
    ``(generator, chord-sequence-1, chord-sequence-2)`` to a set of output
    generators (GF(2) coefficients).  The maximal total number of chord
    inputs of any operation is ``a_max``.
    """

    def __init__(self) -> None:
        self.generators: Tuple[AAGen, ...] = _AA_GENS
        self.a_max = max(len(s1) + len(s2) for (_, s1, s2, _g) in _AA_OPS)
        self.ops: Dict[Tuple[AAGen, Chords, Chords], FrozenSet[AAGen]] = {}
        for (f, g) in _AA_M1:
            self.ops[(f, (), ())] = frozenset({g})
        for (f, s1, s2, g) in _AA_OPS:
            key = (f, s1, s2)
            self.ops[key] = self.ops.get(key, frozenset()) ^ frozenset({g})
        self.ops_by_gen: Dict[AAGen, List[OpEntry]] = {g: [] for g in _AA_GENS}
        for (f, s1, s2), outs in self.ops.items():
            self.ops_by_gen[f].append((s1, s2, outs))

    # -- idempotents ----------------------------------------------------

    @staticmethod
    def idem1(f: AAGen) -> int:
        """Idempotent matched against the first glued boundary."""
        return f.i1

    @staticmethod
    def idem2(f: AAGen) -> int:
        """Idempotent matched against the second glued boundary."""
        return f.i2

    # -- operations -----------------------------------------------------

    def apply(self, f: AAGen, s1: Sequence[int], s2: Sequence[int]) -> FrozenSet[AAGen]:
        return self.ops.get((f, tuple(s1), tuple(s2)), frozenset())

    def shapes(self) -> Tuple[Set[Chords], Set[Chords]]:
        """Chord-sequence shapes appearing on each side of the table."""
        return ({s1 for (_, s1, _s2) in self.ops},
                {s2 for (_, _s1, s2) in self.ops})


_TABLE: Optional[AAIdentity] = None


def aa_identity() -> AAIdentity:
    global _TABLE
    if _TABLE is None:
        t = AAIdentity()
        validate_aa(t)
        _TABLE = t
    return _TABLE


def validate_aa(table: AAIdentity) -> None:
    """Check strict unitality and the A-infinity relation of the table.

    The relation is verified for every generator and every pair of chord
    sequences of total length up to ``a_max + 1``: the sum over all ways of
    combining the inputs in two steps (an inner operation on a prefix pair
    followed by an outer operation on the remainder) plus the sum over all
    ways of multiplying two adjacent chords of one input sequence must
    vanish.  Raises ValueError with the offending input tuple otherwise.
    """
    for (f, s1, s2) in table.ops:
        if any(alg.is_idempotent(c) for c in s1 + s2):
            raise ValueError(f"operation on {f} consumes an idempotent input")
        if len(s1) + len(s2) > table.a_max:
            raise ValueError(f"operation arity exceeds a_max at {f}")

    max_len = table.a_max + 1
    for f in table.generators:
        for l1 in range(max_len + 1):
            for l2 in range(max_len + 1 - l1):
                for s1 in _chord_tuples(l1):
                    for s2 in _chord_tuples(l2):
                        acc: Set[AAGen] = set()
                        for i in range(l1 + 1):
                            for j in range(l2 + 1):
                                for g in table.apply(f, s1[:i], s2[:j]):
                                    acc ^= set(table.apply(g, s1[i:], s2[j:]))
                        for k in range(l1 - 1):
                            prod = alg.mul(s1[k], s1[k + 1])
                            if prod is not None:
                                acc ^= set(table.apply(
                                    f, s1[:k] + (prod,) + s1[k + 2:], s2))
                        for k in range(l2 - 1):
                            prod = alg.mul(s2[k], s2[k + 1])
                            if prod is not None:
                                acc ^= set(table.apply(
                                    f, s1, s2[:k] + (prod,) + s2[k + 2:]))
                        if acc:
                            raise ValueError(
                                f"A-infinity relation fails at {f}, {s1}, {s2}")


def _chord_tuples(length: int) -> List[Chords]:
    if length == 0:
        return [()]
    return [t + (c,) for t in _chord_tuples(length - 1) for c in alg.CHORDS]


def pairing_term_bound(table: AAIdentity, surviving: int) -> int:
    """Maximal length of a contributing path (termination certificate)."""
    return 2 * table.a_max + 3 * surviving


def _surviving_idems(g: Generator, skip: Sequence[int]) -> Tuple[int, ...]:
    """Identity label tuple on a generator's surviving boundaries."""
    out = []
    for bnd in range(len(g.occupancy)):
        if bnd in skip:
            continue
        out.append(g.idem[bnd] if g.occupancy[bnd] == 1 else E)
    return tuple(out)


def _mul_label(x: int, y: int) -> Optional[int]:
    if x == E or y == E:
        if x == E and y == E:
            return E
        return None  # formal identity only multiplies with itself
    return alg.mul(x, y)


def _paths(module: DModule, starts: Sequence[str], glued: Sequence[int],
           want: Sequence[Chords], bound: int
           ) -> Dict[str, List[Tuple[str, Tuple[int, ...]]]]:
    """Paths whose chord sequences along ``glued`` boundaries equal ``want``.

    Every arrow on a contributing path must feed at least one pending chord
    slot; arrows that are idempotent-labeled on every glued boundary enter
    the differential through the separate carry terms instead.  Returns,
    per start generator, the endpoints with the componentwise product of
    the path labels over surviving boundaries (with multiplicity; the
    caller sums mod 2).
    """
    surv = [bnd for bnd in range(module.num_boundaries) if bnd not in glued]
    out_arrows: Dict[str, List[Tuple[str, Tuple[int, ...]]]] = {}
    for (s, d, lab) in module.arrows:
        out_arrows.setdefault(s, []).append((d, lab))
    results: Dict[str, List[Tuple[str, Tuple[int, ...]]]] = {}

    def rec(at: str, pos: List[int], carried: Tuple[int, ...],
            depth: int, sink: List) -> None:
        if all(pos[k] == len(want[k]) for k in range(len(glued))):
            sink.append((at, carried))
            return
        if depth >= bound:
            raise NonTermination(f"path bound exceeded at {at}")
        for (d, lab) in out_arrows.get(at, ()):
            fed = False
            ok = True
            npos = list(pos)
            for k, bnd in enumerate(glued):
                c = lab[bnd]
                if c == E or alg.is_idempotent(c):
                    continue
                if npos[k] < len(want[k]) and want[k][npos[k]] == c:
                    npos[k] += 1
                    fed = True
                else:
                    ok = False
                    break
            if not ok or not fed:
                continue
            ncar = []
            for i, bnd in enumerate(surv):
                prod = _mul_label(carried[i], lab[bnd])
                if prod is None:
                    break
                ncar.append(prod)
            else:
                rec(d, npos, tuple(ncar), depth + 1, sink)

    for start in starts:
        sink: List[Tuple[str, Tuple[int, ...]]] = []
        start_car = _surviving_idems(module.generators[start], glued)
        rec(start, [0] * len(glued), start_car, 0, sink)
        results[start] = sink
    return results


def glue(m: DModule, b1: int, n: DModule, b2: int) -> DModule:
    """Glue boundary ``b1`` of ``m`` to boundary ``b2`` of ``n``.

    Both inputs are reduced first; the output is reduced.  Use
    :func:`self_glue` to pair two boundaries of the same module.
    """
    if m is n:
        raise ValueError("use self_glue for two boundaries of one module")
    if not (0 <= b1 < m.num_boundaries):
        raise BoundaryTypeMismatch(f"no boundary {b1} on first module")
    if not (0 <= b2 < n.num_boundaries):
        raise BoundaryTypeMismatch(f"no boundary {b2} on second module")
    m = reduce_module(m)
    n = reduce_module(n)
    table = aa_identity()
    fibers = [f for i, f in enumerate(m.fibers) if i != b1] + \
             [f for i, f in enumerate(n.fibers) if i != b2]
    out = DModule(m.num_boundaries - 1 + n.num_boundaries - 1, fibers)
    bound = pairing_term_bound(table, out.num_boundaries)

    def mid_key(x: str, f: AAGen, y: str) -> str:
        return f"({x}|{f.key()}|{y})"

    def ext_key(x: str, y: str) -> str:
        return f"({x}*{y})"

    def survm(lab: Sequence[int]) -> Tuple[int, ...]:
        return tuple(v for i, v in enumerate(lab) if i != b1)

    def survn(lab: Sequence[int]) -> Tuple[int, ...]:
        return tuple(v for i, v in enumerate(lab) if i != b2)

    m_mid = [g for g in m.generators.values() if g.occupancy[b1] == 1]
    n_mid = [g for g in n.generators.values() if g.occupancy[b2] == 1]
    pairs: List[Tuple[Generator, AAGen, Generator]] = []
    for gx in m_mid:
        for f in table.generators:
            if table.idem1(f) != gx.idem[b1]:
                continue
            for gy in n_mid:
                if table.idem2(f) == gy.idem[b2]:
                    pairs.append((gx, f, gy))
    for (gx, f, gy) in pairs:
        occ = tuple(o for i, o in enumerate(gx.occupancy) if i != b1) + \
              tuple(o for i, o in enumerate(gy.occupancy) if i != b2)
        idem = tuple(v for i, v in enumerate(gx.idem) if i != b1) + \
               tuple(v for i, v in enumerate(gy.idem) if i != b2)
        out.add_generator(mid_key(gx.name, f, gy.name), occ, idem)

    m_ext = [g for g in m.generators.values() if g.occupancy[b1] in (0, 2)]
    n_ext = [g for g in n.generators.values() if g.occupancy[b2] in (0, 2)]
    ext_pairs = [(gx, gy) for gx in m_ext for gy in n_ext
                 if gx.occupancy[b1] + gy.occupancy[b2] == 2]
    for (gx, gy) in ext_pairs:
        occ = tuple(o for i, o in enumerate(gx.occupancy) if i != b1) + \
              tuple(o for i, o in enumerate(gy.occupancy) if i != b2)
        idem = tuple(v for i, v in enumerate(gx.idem) if i != b1) + \
               tuple(v for i, v in enumerate(gy.idem) if i != b2)
        out.add_generator(ext_key(gx.name, gy.name), occ, idem)

    # precompute path tables per needed input shape
    shapes1, shapes2 = table.shapes()
    paths_m = {s1: _paths(m, [g.name for g in m_mid], (b1,), (s1,), bound)
               for s1 in shapes1}
    paths_n = {s2: _paths(n, [g.name for g in n_mid], (b2,), (s2,), bound)
               for s2 in shapes2}
    carry_m: Dict[str, List[Tuple[str, Tuple[int, ...]]]] = {}
    carry_n: Dict[str, List[Tuple[str, Tuple[int, ...]]]] = {}
    for (s, d, lab) in m.arrows:
        g = m.generators[s]
        if g.occupancy[b1] == 1 and lab[b1] == g.idem[b1]:
            carry_m.setdefault(s, []).append((d, survm(lab)))
    for (s, d, lab) in n.arrows:
        g = n.generators[s]
        if g.occupancy[b2] == 1 and lab[b2] == g.idem[b2]:
            carry_n.setdefault(s, []).append((d, survn(lab)))

    for (gx, f, gy) in pairs:
        src = mid_key(gx.name, f, gy.name)
        xmark = _surviving_idems(gx, (b1,))
        ymark = _surviving_idems(gy, (b2,))
        for (d, lab) in carry_m.get(gx.name, ()):
            out.add_arrow(src, mid_key(d, f, gy.name), lab + ymark)
        for (d, lab) in carry_n.get(gy.name, ()):
            out.add_arrow(src, mid_key(gx.name, f, d), xmark + lab)
        for (s1, s2, outs) in table.ops_by_gen[f]:
            for (xe, labx) in paths_m[s1][gx.name]:
                for (ye, laby) in paths_n[s2][gy.name]:
                    for g2 in outs:
                        out.add_arrow(src, mid_key(xe, g2, ye), labx + laby)

    ext_keys = {(gx.name, gy.name) for (gx, gy) in ext_pairs}
    for (gx, gy) in ext_pairs:
        src = ext_key(gx.name, gy.name)
        for (s, d, lab) in m.arrows:
            if s == gx.name and (d, gy.name) in ext_keys:
                out.add_arrow(src, ext_key(d, gy.name),
                              survm(lab) + _surviving_idems(gy, (b2,)))
        for (s, d, lab) in n.arrows:
            if s == gy.name and (gx.name, d) in ext_keys:
                out.add_arrow(src, ext_key(gx.name, d),
                              _surviving_idems(gx, (b1,)) + survn(lab))
    return reduce_module(out)


def self_glue(m: DModule, b1: int, b2: int) -> DModule:
    """Glue two boundaries of the same module to each other.

    The AA identity is wrapped around both boundaries: each operation of
    the table pairs with a single path whose chord sequences along ``b1``
    and ``b2`` equal the operation's two inputs, read off the same path in
    path order.
    """
    if b1 == b2:
        raise SameBoundary("self_glue needs two distinct boundaries")
    if not (0 <= b1 < m.num_boundaries and 0 <= b2 < m.num_boundaries):
        raise BoundaryTypeMismatch("boundary index out of range")
    m = reduce_module(m)
    table = aa_identity()
    keep = [i for i in range(m.num_boundaries) if i not in (b1, b2)]
    out = DModule(len(keep), [m.fibers[i] for i in keep])
    bound = pairing_term_bound(table, out.num_boundaries)

    def mid_key(f: AAGen, x: str) -> str:
        return f"({f.key()}|{x})"

    mid = [g for g in m.generators.values()
           if g.occupancy[b1] == 1 and g.occupancy[b2] == 1]
    ext = [g for g in m.generators.values()
           if (g.occupancy[b1], g.occupancy[b2]) in ((0, 2), (2, 0))]
    pairs: List[Tuple[AAGen, Generator]] = []
    for gx in mid:
        for f in table.generators:
            if table.idem1(f) == gx.idem[b1] and table.idem2(f) == gx.idem[b2]:
                pairs.append((f, gx))
    for (f, gx) in pairs:
        out.add_generator(mid_key(f, gx.name),
                          tuple(gx.occupancy[i] for i in keep),
                          tuple(gx.idem[i] for i in keep))
    for gx in ext:
        out.add_generator(gx.name, tuple(gx.occupancy[i] for i in keep),
                          tuple(gx.idem[i] for i in keep))

    shape_pairs = {(s1, s2) for (_, s1, s2) in table.ops}
    path_tab = {(s1, s2): _paths(m, [g.name for g in mid], (b1, b2),
                                 (s1, s2), bound)
                for (s1, s2) in shape_pairs}
    carry: Dict[str, List[Tuple[str, Tuple[int, ...]]]] = {}
    for (s, d, lab) in m.arrows:
        g = m.generators[s]
        if g.occupancy[b1] == 1 and g.occupancy[b2] == 1 and \
                lab[b1] == g.idem[b1] and lab[b2] == g.idem[b2]:
            carry.setdefault(s, []).append((d, tuple(lab[i] for i in keep)))

    for (f, gx) in pairs:
        src = mid_key(f, gx.name)
        for (d, lab) in carry.get(gx.name, ()):
            out.add_arrow(src, mid_key(f, d), lab)
        for (s1, s2, outs) in table.ops_by_gen[f]:
            for (xe, labx) in path_tab[(s1, s2)][gx.name]:
                for g2 in outs:
                    out.add_arrow(src, mid_key(g2, xe), labx)
    ext_names = {g.name for g in ext}
    for (s, d, lab) in m.arrows:
        if s in ext_names and d in ext_names:
            out.add_arrow(s, d, tuple(lab[i] for i in keep))
    return reduce_module(out)
