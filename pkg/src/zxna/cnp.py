"""Multi-controlled phase gates as phase-gadget structures.

An m-qubit controlled phase ``NCP(m, phi)`` is equivalent to a graph-like
diagram where each of the m anchor spiders carries ``alpha = phi / 2^(m-1)``
and every subset of anchors of size k >= 2 carries a phase gadget with
phase ``(-1)^(k+1) * alpha``.  This module generates those structures,
pattern-matches them on a frontier (optionally completing partial matches
by inserting opposite-phase gadget pairs), and provides the combinatorial
oracles used to cross-check the construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Literal, Optional

from .diagram import GadgetView, ZxDiagram
from .phase import Phase

__all__ = [
    "CnpTemplate",
    "MatchPlan",
    "theorem1_template",
    "instantiate_template",
    "match_cnp",
    "split_gadget",
    "split_output_phase",
    "insert_identity_pair",
    "lemma2_sum",
    "phase_accumulation",
]


@dataclass(frozen=True)
class CnpTemplate:
    """Gadget structure of an n-qubit controlled phase gate.

    ``required`` lists the gadget leg-subsets (as index tuples into
    ``target_set``) of size >= 2 together with their phases; each anchor
    additionally receives ``alpha``.
    """

    n: int
    alpha: Phase
    required: tuple[tuple[tuple[int, ...], Phase], ...]
    target_set: Optional[tuple[int, ...]] = None

    def bind(self, anchors: tuple[int, ...]) -> "CnpTemplate":
        if len(anchors) != self.n:
            raise ValueError("anchor count does not match template size")
        return CnpTemplate(self.n, self.alpha, self.required, tuple(anchors))

    @property
    def phi(self) -> Phase:
        return self.alpha * (1 << (self.n - 1))


def theorem1_template(n: int, phi: Phase) -> CnpTemplate:
    """Gadget structure of the n-qubit controlled phase gate with phase phi."""
    if n < 2:
        raise ValueError("controlled phase structure needs n >= 2")
    alpha = phi.div_pow2(n - 1)
    required = []
    for k in range(2, n + 1):
        p = alpha if k % 2 == 1 else -alpha
        for s in combinations(range(n), k):
            required.append((s, p))
    assert len(required) == (1 << n) - n - 1
    return CnpTemplate(n, alpha, tuple(required))


def _add_gadget(d: ZxDiagram, legs, phase: Phase) -> tuple[int, int]:
    root = d.add_spider(Phase(0))
    top = d.add_spider(phase)
    d.toggle_edge(root, top)
    for a in legs:
        d.toggle_edge(root, a)
    return root, top


def instantiate_template(d: ZxDiagram, t: CnpTemplate) -> None:
    """Splice a bound template onto its anchor spiders."""
    if t.target_set is None:
        raise ValueError("template is not bound to anchors")
    anchors = t.target_set
    for a in anchors:
        if not d.contains(a):
            raise ValueError(f"unknown anchor spider {a}")
    for subset, p in t.required:
        _add_gadget(d, [anchors[i] for i in subset], p)
    for a in anchors:
        d.add_phase(a, t.alpha)


@dataclass
class MatchPlan:
    """Executable plan turning frontier gadgets into one exact C_nP structure.

    ``matched`` maps each required leg-set to the gadget that will supply it
    (after the listed splits); ``insertions`` lists leg-sets that need a
    fresh opposite-phase gadget pair first.
    """

    target_set: tuple[int, ...]
    alpha: Phase
    seed: GadgetView
    matched: dict[frozenset[int], GadgetView] = field(default_factory=dict)
    splits: list[tuple[GadgetView, Phase]] = field(default_factory=list)
    insertions: list[tuple[frozenset[int], Phase]] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.target_set)

    @property
    def phi(self) -> Phase:
        return self.alpha * (1 << (self.n - 1))


def _required_phase(k: int, alpha: Phase) -> Phase:
    return alpha if k % 2 == 1 else -alpha


def match_cnp(
    d: ZxDiagram,
    frontier: set[int],
    mode: Literal["no-insert", "with-insert"],
    max_size: Optional[int] = None,
    no_extend: frozenset[int] = frozenset(),
) -> Optional[MatchPlan]:
    """Find a C_nP structure among the gadgets attached only to the frontier.

    Seeds are tried from the gadget with the most legs downwards (ties by
    smallest top id).  In ``no-insert`` mode a seed fails as soon as a
    required sub-gadget is missing; in ``with-insert`` mode the plan records
    an identity-pair insertion instead, and the seed's anchor set may first
    grow to nearby frontier spiders (see :func:`_extend_anchors`) unless the
    seed's top is listed in ``no_extend``.  Callers put the leftover
    partners of earlier insertions there, otherwise partner extraction and
    re-extension would chase each other forever.  Returns None if no seed
    works.
    """
    gadgets = [g for g in d.find_gadgets() if g.legs <= frontier and len(g.legs) >= 2]
    by_legs: dict[frozenset[int], list[GadgetView]] = {}
    for g in gadgets:
        by_legs.setdefault(g.legs, []).append(g)
    for legs in by_legs:
        by_legs[legs].sort(key=lambda g: g.top)

    seeds = [g for g in gadgets if not g.phase.is_zero()]
    if max_size is not None:
        seeds = [g for g in seeds if len(g.legs) <= max_size]
    seeds.sort(key=lambda g: (-len(g.legs), g.top))

    for seed in seeds:
        n = len(seed.legs)
        alpha = seed.phase if n % 2 == 1 else -seed.phase
        target = set(seed.legs)
        if mode == "with-insert" and seed.top not in no_extend:
            target |= _extend_anchors(target, frontier, by_legs, max_size)
        plan = MatchPlan(tuple(sorted(target)), alpha, seed)
        plan.matched[seed.legs] = seed
        ok = True
        for k in range(2, len(target) + 1):
            p = _required_phase(k, alpha)
            for subset in combinations(plan.target_set, k):
                legs = frozenset(subset)
                if legs == seed.legs:
                    continue
                cand = next((g for g in by_legs.get(legs, []) if g.legs not in plan.matched), None)
                if cand is not None:
                    plan.matched[legs] = cand
                    if cand.phase != p:
                        plan.splits.append((cand, p))
                elif mode == "with-insert":
                    plan.insertions.append((legs, p))
                else:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return plan
    return None


def _extend_anchors(
    target: set[int],
    frontier: set[int],
    by_legs: dict[frozenset[int], list[GadgetView]],
    max_size: Optional[int],
) -> set[int]:
    """Grow a seed's anchor set toward a larger controlled-phase target.

    A frontier spider joins when pair gadgets tie it to at least half the
    current anchors, so the extra structure is mostly already present and
    only a minority of gadgets has to be inserted.  The gadget spanning the
    grown set itself is always missing and gets inserted as an identity
    pair, whose leftover partner is extracted in a later match.
    """
    extra: set[int] = set()
    candidates = sorted(frontier - target)
    progress = True
    while progress:
        if max_size is not None and len(target) + len(extra) >= max_size:
            break
        progress = False
        cur = target | extra
        for x in candidates:
            if x in cur:
                continue
            cover = sum(1 for t in cur if frozenset((x, t)) in by_legs)
            if 2 * cover >= len(cur):
                extra.add(x)
                progress = True
                break
    return extra


def split_gadget(d: ZxDiagram, gadget: GadgetView, desired: Phase) -> Optional[GadgetView]:
    """Split a gadget into the desired phase plus a residue gadget on the same legs.

    The original top keeps ``desired``; the residue carries the difference.
    No-op (returns None) when the phase already matches.
    """
    if not d.contains(gadget.top) or not d.contains(gadget.root):
        raise ValueError("stale gadget view")
    if gadget.phase == desired:
        return None
    residue = gadget.phase - desired
    d.set_phase(gadget.top, desired)
    root, top = _add_gadget(d, sorted(gadget.legs), residue)
    return GadgetView(top, root, gadget.legs, residue)


def split_output_phase(d: ZxDiagram, anchor: int, desired: Phase) -> Phase:
    """Set an anchor's phase to the desired value, returning the Rz residue."""
    residue = d.phase(anchor) - desired
    d.set_phase(anchor, desired)
    return residue


def insert_identity_pair(
    d: ZxDiagram, legs: frozenset[int], phase: Phase
) -> tuple[GadgetView, GadgetView]:
    """Insert two gadgets with opposite phases on the same legs.

    The pair multiplies to the identity, so the diagram tensor is unchanged.
    Returns (kept, residual) where kept carries ``phase``.
    """
    frontier = set(d.outputs)
    if not legs <= frontier:
        raise ValueError("identity-pair legs must lie on the frontier")
    legs_sorted = sorted(legs)
    r1, t1 = _add_gadget(d, legs_sorted, phase)
    r2, t2 = _add_gadget(d, legs_sorted, -phase)
    return (
        GadgetView(t1, r1, legs, phase),
        GadgetView(t2, r2, legs, -phase),
    )


def lemma2_sum(n: int, l: int) -> int:
    """Signed count of odd-parity leg subsets over all gadget sizes.

    Equals ``2^(n-1)`` when every variable is one (l == n) and 0 otherwise,
    which is exactly why the gadget structure acts as a controlled phase.
    """
    if not 0 <= l <= n or n < 1:
        raise ValueError("need 0 <= l <= n, n >= 1")
    total = 0
    for k in range(1, n + 1):
        inner = 0
        for j in range(0, min(k, l) + 1):
            if j % 2 == 1:
                inner += math.comb(l, j) * math.comb(n - l, k - j)
        total += inner if k % 2 == 1 else -inner
    return total


def phase_accumulation(t: CnpTemplate, basis: tuple[int, ...]) -> Phase:
    """Exact diagonal phase the template applies to one computational basis state."""
    if len(basis) != t.n:
        raise ValueError("basis length does not match template size")
    total = Phase(0)
    for i, b in enumerate(basis):
        if b:
            total = total + t.alpha
    for subset, p in t.required:
        parity = 0
        for i in subset:
            parity ^= basis[i] & 1
        if parity:
            total = total + p
    return total
