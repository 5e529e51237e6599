"""Cancellation of identity-labeled arrows.

Cancelling an arrow x -> y whose label is an identity in every slot removes
both generators and, for every zig-zag k -> y, x -> l, toggles a composite
arrow k -> l labeled by the componentwise product.  This preserves the
quasi-isomorphism type; iterating until no identity arrow remains yields
the reduced model.  For a closed complex (no boundaries) the reduced model
has no arrows at all and its generator count is the homology rank.
"""

from __future__ import annotations

import heapq
from typing import Dict, List, Optional, Set, Tuple

from . import algebra as alg
from .algebra import E
from .dstruct import DModule

Label = Tuple[int, ...]
Arrowish = Tuple[str, str, Label]

_IDENTITY_PARTS = (alg.I0, alg.I1, E)


def is_identity_label(labels: Label) -> bool:
    return all(a in _IDENTITY_PARTS for a in labels)


class _Work:
    """Mutable adjacency view used during reduction."""

    def __init__(self, module: DModule):
        self.module = module
        self.out: Dict[str, Dict[str, Set[Label]]] = {g: {} for g in module.generators}
        self.inc: Dict[str, Dict[str, Set[Label]]] = {g: {} for g in module.generators}
        for (s, d, lab) in module.arrows:
            self.out[s].setdefault(d, set()).add(lab)
            self.inc[d].setdefault(s, set()).add(lab)

    def toggle(self, s: str, d: str, lab: Label) -> bool:
        """Toggle an arrow; return True when it was switched on."""
        bucket = self.out[s].setdefault(d, set())
        if lab in bucket:
            bucket.remove(lab)
            self.inc[d][s].remove(lab)
            if not bucket:
                del self.out[s][d]
                del self.inc[d][s]
            return False
        bucket.add(lab)
        self.inc[d].setdefault(s, set()).add(lab)
        return True

    def drop_generator(self, g: str) -> None:
        for d in list(self.out[g]):
            del self.inc[d][g]
        for s in list(self.inc[g]):
            del self.out[s][g]
        del self.out[g]
        del self.inc[g]

    def identity_arrows(self):
        for s, targets in self.out.items():
            for d, labs in targets.items():
                if s == d:
                    continue
                for lab in labs:
                    if is_identity_label(lab):
                        yield (s, d, lab)


def cancel(work: _Work, s: str, d: str, lab: Label) -> List[Arrowish]:
    """Cancel one identity arrow s -> d; return arrows toggled on."""
    into_d = [(k, l) for k, labs in work.inc[d].items() if k not in (s, d)
              for l in labs]
    out_s = [(l2, m) for m, labs in work.out[s].items() if m not in (s, d)
             for l2 in labs]
    work.drop_generator(s)
    work.drop_generator(d)
    created: List[Arrowish] = []
    for (k, l1) in into_d:
        for (l2, m) in out_s:
            prod = tuple(alg.mul(a, b) for a, b in zip(l1, l2))
            if any(p is None for p in prod):
                continue
            if work.toggle(k, m, prod):
                created.append((k, m, prod))
    return created


def reduce_module(module: DModule) -> DModule:
    """Cancel identity arrows until none remain.

    Candidates are kept in a lazy min-heap keyed by the fill-in bound
    (in-degree of the head times out-degree of the tail), so cheap
    cancellations happen first and stale entries are re-keyed on pop.
    """
    work = _Work(module)

    def cost(s: str, d: str) -> int:
        return (len(work.inc[d]) - 1) * (len(work.out[s]) - 1)

    heap: List[Tuple[int, str, str, Label]] = []
    for (s, d, lab) in work.identity_arrows():
        heapq.heappush(heap, (cost(s, d), s, d, lab))
    while heap:
        c, s, d, lab = heapq.heappop(heap)
        if s not in work.out or d not in work.out:
            continue
        if lab not in work.out[s].get(d, ()):
            continue
        now = cost(s, d)
        if now > c:
            heapq.heappush(heap, (now, s, d, lab))
            continue
        created = cancel(work, s, d, lab)
        for (k, m, l2) in created:
            if is_identity_label(l2):
                heapq.heappush(heap, (cost(k, m), k, m, l2))
    out = DModule(module.num_boundaries, module.fibers)
    for g in work.out:
        gen = module.generators[g]
        out.add_generator(gen.name, gen.occupancy, gen.idem)
    for s, targets in work.out.items():
        for d, labs in targets.items():
            for lab in labs:
                out.arrows.add((s, d, lab))
    return out


def gf2_rank(rows: List[int]) -> int:
    """Rank of a GF(2) matrix given as int bitsets."""
    pivots: List[int] = []
    rank = 0
    for row in rows:
        for p in pivots:
            low = p & -p
            if row & low:
                row ^= p
        if row:
            pivots.append(row)
            rank += 1
    return rank


def homology_rank_gaussian(module: DModule) -> int:
    """Homology rank of a closed complex by GF(2) Gaussian elimination."""
    if module.num_boundaries != 0:
        raise ValueError("Gaussian rank needs a closed complex")
    index = {g: i for i, g in enumerate(sorted(module.generators))}
    rows: Dict[str, int] = {}
    for (s, d, _lab) in module.arrows:
        rows[s] = rows.get(s, 0) ^ (1 << index[d])
    r = gf2_rank([v for v in rows.values() if v])
    return len(module.generators) - 2 * r


def homology_rank(module: DModule) -> int:
    """Homology rank of a closed complex via reduction."""
    if module.num_boundaries != 0:
        raise ValueError("homology rank needs a closed complex")
    reduced = reduce_module(module)
    if reduced.arrows:
        raise AssertionError("closed complex failed to reduce fully")
    return len(reduced.generators)
