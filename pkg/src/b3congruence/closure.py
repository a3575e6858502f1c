"""Breadth-first enumeration of a finitely generated matrix group."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DimensionMismatch
from .linalg import CycMatrix, mat_inverse

DEFAULT_CLOSURE_CAP = 200_000


@dataclass
class ClosureResult:
    finite: bool
    order: int | None
    elements_explored: int
    cap_hit: bool
    elements: list[CycMatrix] | None = field(default=None, repr=False)


def common_conductor(mats: Sequence[CycMatrix]) -> list[CycMatrix]:
    n = math.lcm(*(m.n for m in mats))
    return [m.promote(n) for m in mats]


def enumerate_group(gens: Sequence[CycMatrix], cap: int = DEFAULT_CLOSURE_CAP,
                    keep_elements: bool = False) -> ClosureResult:
    """Close the identity under right multiplication by gens and their inverses.

    Stops with cap_hit=True once more than cap distinct elements are found.
    """
    if not gens:
        raise ValueError("need at least one generator")
    dims = {g.dim for g in gens}
    if len(dims) != 1:
        raise DimensionMismatch("generators must share a dimension")
    gens = common_conductor(gens)
    steps: list[CycMatrix] = []
    seen_steps = set()
    for g in gens + [mat_inverse(g) for g in gens]:
        if g.key() not in seen_steps:
            seen_steps.add(g.key())
            steps.append(g)
    ident = CycMatrix.identity(gens[0].dim, gens[0].n)
    seen = {ident.key()}
    found = [ident]
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in steps:
            h = g @ s
            k = h.key()
            if k in seen:
                continue
            seen.add(k)
            found.append(h)
            if len(found) > cap:
                return ClosureResult(False, None, len(found), True, found if keep_elements else None)
            queue.append(h)
    return ClosureResult(True, len(found), len(found), False, found if keep_elements else None)


def is_closed(elements: Sequence[CycMatrix], gens: Sequence[CycMatrix]) -> bool:
    """Every element times every generator lands back in the set."""
    n = math.lcm(*(m.n for m in list(elements) + list(gens)))
    elements = [e.promote(n) for e in elements]
    keys = {e.key() for e in elements}
    gens = [g.promote(n) for g in gens]
    return all((e @ g).key() in keys for e in elements for g in gens)
