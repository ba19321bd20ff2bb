"""Copy-cat, saturation, and the Cartesian-closed category of saturated strategies.

Copy-cat style strategies are driven by a mirror bijection between two
(possibly renamed) halves of an arena: every uncopied O-move is pending,
and the strategy offers its mirror image, justified by the partner of the
original's justifier.  Matching a copy to its original can be ambiguous,
so acceptance keeps the set of all consistent pairings.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arena import EMPTY, Arena, Move, arrow, product, split_arrow, split_product
from .composition import compose
from .nominal import canonicalize
from .play import ROOT, is_play
from .strategy import (ArenaMismatch, RelabeledStrategy, Strategy,
                       UnionStrategy, strat)


class SourceMismatch(ArenaMismatch):
    pass


def mirror_pairs(pairs) -> dict:
    """Symmetric move dictionary from (move, move) pairs."""
    out = {}
    for a, b in pairs:
        out[a] = b
        out[b] = a
    return out


class CopycatStrategy(Strategy):
    """Replicates O-moves across a mirror bijection, preserving pointers.

    The initial occurrence is copied with the original's own binder as
    justifier; any other move is copied with the partner of its justifier.
    Pending moves may be copied in any order (the saturated reading), so
    the relation offers one response per pending occurrence.
    """

    def __init__(self, arena: Arena, mirror: dict):
        super().__init__(arena)
        self.mirror = dict(mirror)
        self._states = {(): frozenset([(frozenset(), frozenset())])}

    def _expected(self, occ, partner):
        if occ.justifier == ROOT:
            return occ.binder
        return partner.get(occ.justifier)

    def states(self, seq):
        got = self._states.get(seq)
        if got is not None:
            return got
        prev = self.states(seq[:-1])
        occ = seq[-1]
        idx = len(seq) - 1
        nxt = set()
        if occ.move in self.arena.o_moves:
            for pending, partner_fs in prev:
                nxt.add((pending | {idx}, partner_fs))
        else:
            for pending, partner_fs in prev:
                partner = dict(partner_fs)
                for uidx in pending:
                    uocc = seq[uidx]
                    if self.mirror.get(uocc.move) != occ.move:
                        continue
                    if self._expected(uocc, partner) != occ.justifier:
                        continue
                    links = partner_fs
                    if uocc.binder is not None:
                        links = links | {(uocc.binder, occ.binder),
                                         (occ.binder, uocc.binder)}
                    nxt.add((pending - {uidx}, links))
        got = frozenset(nxt)
        self._states[seq] = got
        return got

    def p_offers(self, seq):
        out = set()
        for pending, partner_fs in self.states(seq):
            partner = dict(partner_fs)
            for uidx in pending:
                uocc = seq[uidx]
                mm = self.mirror.get(uocc.move)
                if mm is None:
                    continue
                ej = self._expected(uocc, partner)
                if ej is not None:
                    out.add((mm, ej))
        return out

    def accepts(self, seq) -> bool:
        if not is_play(self.arena, seq):
            return False
        return bool(self.states(canonicalize(seq)))


def copycat(a: Arena) -> CopycatStrategy:
    """The copy-cat strategy on arrow(a, a)."""
    pairs = [(Move(m.base, "L" + m.tag), Move(m.base, "R" + m.tag)) for m in a.moves]
    return CopycatStrategy(arrow(a, a), mirror_pairs(pairs))


@dataclass(frozen=True)
class Morphism:
    """A saturated strategy on arrow(source, target)."""

    source: Arena
    target: Arena
    strategy: Strategy


def identity(a: Arena) -> Morphism:
    return Morphism(a, a, copycat(a))


def compose_m(m1: Morphism, m2: Morphism, **kwargs) -> Morphism:
    if m1.target != m2.source:
        raise ArenaMismatch("codomain does not match domain")
    return Morphism(m1.source, m2.target, compose(m1.strategy, m2.strategy, **kwargs))


def saturate(sigma: Strategy, **kwargs) -> Morphism:
    """Close a strategy under asynchronous reordering: kappa ; sigma ; kappa."""
    a, b = split_arrow(sigma.arena)
    closed = compose(compose(copycat(a), sigma, **kwargs), copycat(b), **kwargs)
    return Morphism(a, b, closed)


def permutation_closure(sigma: Strategy, depth: int) -> frozenset:
    """Closure of the enumeration under swapping adjacent moves m.n whenever
    m is a P-move or n is an O-move, and n is not justified by m.

    Independent restatement of saturation; cross-checked against
    enumerate(saturate(sigma), depth).
    """
    arena = sigma.arena
    done = set(sigma.enumerate(depth))
    frontier = list(done)
    while frontier:
        p = frontier.pop()
        for i in range(len(p) - 1):
            m, n = p[i], p[i + 1]
            if m.move in arena.o_moves and n.move not in arena.o_moves:
                continue
            if m.binder is not None and n.justifier == m.binder:
                continue
            q = canonicalize(p[:i] + (n, m) + p[i + 2:])
            for j in range(len(q) + 1):
                pref = q[:j]
                if pref not in done:
                    done.add(pref)
                    frontier.append(pref)
    return frozenset(done)


def equivalent(m1: Morphism, m2: Morphism, depth: int) -> bool:
    """Morphism equality in the saturated category: equal play sets at depth."""
    if m1.source != m2.source or m1.target != m2.target:
        raise ArenaMismatch("morphisms have different hom-sets")
    return m1.strategy.enumerate(depth) == m2.strategy.enumerate(depth)


def terminal(a: Arena) -> Morphism:
    """The unique morphism into the empty arena: only the empty play."""
    return Morphism(a, EMPTY, strat(arrow(a, EMPTY), []))


def pair(m1: Morphism, m0: Morphism) -> Morphism:
    """Pairing ⟨m1, m0⟩ : B -> A1 x A0 as the union of the retagged legs."""
    if m1.source != m0.source:
        raise SourceMismatch("pairing requires a common source")
    target = product(m1.target, m0.target)
    arena = arrow(m1.source, target)

    def leg(m: Morphism, prefix: str) -> RelabeledStrategy:
        mm = {}
        for mv in m.strategy.arena.moves:
            if mv.tag.startswith("L"):
                mm[mv] = mv
            else:
                mm[mv] = Move(mv.base, "R" + prefix + mv.tag[1:])
        return RelabeledStrategy(m.strategy, arena, mm)

    return Morphism(m1.source, target,
                    UnionStrategy(arena, [leg(m1, "L"), leg(m0, "R")]))


def proj(i: int, a1: Arena, a0: Arena) -> Morphism:
    """Projection A1 x A0 -> Ai, a copy-cat on the chosen component."""
    src = product(a1, a0)
    comp = a1 if i == 1 else a0
    prefix = "LL" if i == 1 else "LR"
    pairs = [(Move(m.base, prefix + m.tag), Move(m.base, "R" + m.tag))
             for m in comp.moves]
    return Morphism(src, comp,
                    CopycatStrategy(arrow(src, comp), mirror_pairs(pairs)))


def eval_strategy(a: Arena, b: Arena) -> CopycatStrategy:
    """The raw evaluation strategy on (A=>B) x A => B: copy-cats between the
    two A components and between the two B components."""
    e = arrow(product(arrow(a, b), a), b)
    pairs = [(Move(m.base, "LLL" + m.tag), Move(m.base, "LR" + m.tag))
             for m in a.moves]
    pairs += [(Move(m.base, "LLR" + m.tag), Move(m.base, "R" + m.tag))
              for m in b.moves]
    return CopycatStrategy(e, mirror_pairs(pairs))


def eval_morphism(a: Arena, b: Arena, saturated=True, **kwargs) -> Morphism:
    ev = eval_strategy(a, b)
    if not saturated:
        return Morphism(product(arrow(a, b), a), b, ev)
    return saturate(ev, **kwargs)


def _retag_strategy(m: Morphism, arena: Arena, rules) -> RelabeledStrategy:
    mm = {}
    for mv in m.strategy.arena.moves:
        for old, new in rules:
            if mv.tag.startswith(old):
                mm[mv] = Move(mv.base, new + mv.tag[len(old):])
                break
        else:
            raise ValueError(f"unmatched move {mv}")
    return RelabeledStrategy(m.strategy, arena, mm)


def transpose(m: Morphism) -> Morphism:
    """Currying: A x B -> C becomes A -> (B => C) by re-tagging moves."""
    a, b = split_product(m.source)
    arena = arrow(a, arrow(b, m.target))
    strategy = _retag_strategy(m, arena, [("LL", "L"), ("LR", "RL"), ("R", "RR")])
    return Morphism(a, arrow(b, m.target), strategy)


def transpose_inv(m: Morphism) -> Morphism:
    """Inverse of transpose: A -> (B => C) becomes A x B -> C."""
    b, c = split_arrow(m.target)
    arena = arrow(product(m.source, b), c)
    strategy = _retag_strategy(m, arena, [("L", "LL"), ("RL", "LR"), ("RR", "R")])
    return Morphism(product(m.source, b), c, strategy)


def transpose_head(m: Morphism) -> Morphism:
    """Abstract the left product component: X x G -> T becomes G -> (X => T)."""
    x, g = split_product(m.source)
    arena = arrow(g, arrow(x, m.target))
    strategy = _retag_strategy(m, arena, [("LL", "RL"), ("LR", "L"), ("R", "RR")])
    return Morphism(g, arrow(x, m.target), strategy)
