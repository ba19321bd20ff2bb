"""Brute-force test oracles, independent of the composition engine.

brute_plays enumerates plays by direct recursion over legal extensions;
brute_compose filters brute-enumerated interaction plays by the
extensional projection and thread conditions (deletion and hereditary
justification only), then hides the shared arena.  No next-move machinery
is consulted beyond strategy membership.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .arena import Arena, Move, arrow, split_arrow
from .nominal import canonicalize
from .play import (MoveOccurrence, append_canonical, delete,
                   legal_extensions, thread)
from .strategy import (ArenaMismatch, NextMoveStrategy, Strategy,
                       o_extensions, play_key)


def brute_plays(arena: Arena, depth: int) -> frozenset:
    """All plays of the arena with at most `depth` occurrences (canonical)."""
    out = {()}
    level = [()]
    for _ in range(depth):
        nxt = []
        for p in level:
            for m, j in legal_extensions(arena, p):
                nxt.append(append_canonical(arena, p, m, j))
        out.update(nxt)
        level = nxt
    return frozenset(out)


def brute_compose(sigma: Strategy, tau: Strategy, depth: int,
                  guard_factor=3, guard_min=64) -> frozenset:
    """Extensional composition: interaction plays are enumerated over the
    combined arena, filtered by the two deletion conditions and the
    per-thread iteration condition, and projected by hiding the shared
    moves."""
    a, b = split_arrow(sigma.arena)
    b2, c = split_arrow(tau.arena)
    if b != b2:
        raise ArenaMismatch("shared arenas of the composition do not agree")
    z = arrow(arrow(a, b), c)
    a_moves = frozenset(m for m in z.moves if m.tag.startswith("LL"))
    hidden = frozenset(m for m in z.moves if m.tag.startswith("LR"))
    b_initials = frozenset(Move(m.base, "LR" + m.tag) for m in b.initial)
    z2sig = {m: Move(m.base, ("L" if m.tag.startswith("LL") else "R") + m.tag[2:])
             for m in z.moves if not m.tag.startswith("R")}
    z2tau = {m: (Move(m.base, "L" + m.tag[2:]) if m.tag.startswith("LR") else m)
             for m in z.moves if not m.tag.startswith("LL")}
    z2out = {m: (Move(m.base, "L" + m.tag[2:]) if m.tag.startswith("LL") else m)
             for m in z.moves if not m.tag.startswith("LR")}
    guard = max(guard_min, guard_factor * (depth + 1))

    def retag(seq, table):
        return tuple(MoveOccurrence(table[o.move], o.justifier, o.binder)
                     for o in seq)

    def admissible(u) -> bool:
        view, _ = delete(u, a_moves)
        if not tau.accepts(retag(view, z2tau)):
            return False
        for i, occ in enumerate(u):
            if occ.move in b_initials:
                if not sigma.accepts(retag(thread(u, i, rebase=True), z2sig)):
                    return False
        return True

    results = {()}
    level = [()]
    while level:
        nxt = []
        for u in level:
            visible = sum(1 for o in u if o.move not in hidden)
            if visible >= depth:
                continue
            for m, j in legal_extensions(z, u):
                u2 = append_canonical(z, u, m, j)
                if sum(1 for o in u2 if o.move in hidden) > guard:
                    continue
                if not admissible(u2):
                    continue
                nxt.append(u2)
                proj, _ = delete(u2, hidden)
                results.add(canonicalize(retag(proj, z2out)))
        level = nxt
    return frozenset(p for p in results
                     if len(p) <= depth)


@dataclass(frozen=True)
class RandomStrategySpec:
    """Seeded description of a random finite strategy (same spec, same strategy)."""

    arena: Arena
    depth: int = 4
    seed: int = 0
    branching: int = 2


def random_strategy(spec: RandomStrategySpec) -> Strategy:
    """A valid strategy built by randomly keeping legal P-offers up to the
    spec depth; prefix and O closure hold by construction, equivariance by
    canonical forms."""
    rng = random.Random(spec.seed)
    offers = {}
    level = [()]
    for _ in range(spec.depth):
        nxt = set()
        for p in sorted(level, key=play_key):
            chosen = []
            for cand in legal_extensions(spec.arena, p, side="P"):
                if len(chosen) >= spec.branching:
                    break
                if rng.random() < 0.5:
                    chosen.append(cand)
            if chosen:
                offers[p] = tuple(chosen)
            for m, j in chosen + o_extensions(spec.arena, p):
                nxt.add(append_canonical(spec.arena, p, m, j))
        level = nxt
    return NextMoveStrategy(spec.arena, lambda p: offers.get(p, ()))
