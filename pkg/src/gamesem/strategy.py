"""Strategies: prefix-closed, O-closed, equivariant play sets.

Two kernels are supported: generator sets (closed under prefixes and
O-extensions) and next-move relations.  Equivariance is enforced by
keeping every stored play in canonical form, so set equality of canonical
forms decides equality of equivariant sets.

Enumeration is memoized per length level.  Strategies are immutable apart
from these caches, so concurrent readers are safe as long as cache fills
are not interleaved.
"""

from __future__ import annotations

from .arena import Arena, Move
from .nominal import canonicalize, canonicalize_with_map
from .play import (ROOT, append_canonical, format_play, is_play,
                   legal_extensions)


class NotAPlay(ValueError):
    pass


class IllegalNextMove(ValueError):
    pass


class ArenaMismatch(ValueError):
    pass


def play_key(seq):
    return (len(seq), format_play(seq))


def o_extensions(arena: Arena, seq):
    """All single-O-move extensions of a play, as (move, justifier) pairs."""
    return legal_extensions(arena, seq, side="O")


def extension_ok(arena: Arena, seq, move: Move, justifier) -> bool:
    if not seq:
        return move in arena.initial and justifier == ROOT
    for occ in seq:
        if occ.binder == justifier and move in arena.enabled(occ.move):
            return True
    return False


class Strategy:
    """Base class; subclasses provide `p_offers` on canonical member plays."""

    def __init__(self, arena: Arena):
        self.arena = arena
        self._levels = [frozenset([()])]

    def p_offers(self, seq):
        raise NotImplementedError

    def _grow(self, depth: int):
        while len(self._levels) <= depth:
            nxt = set()
            for p in self._levels[-1]:
                for m, j in o_extensions(self.arena, p):
                    nxt.add(append_canonical(self.arena, p, m, j))
                for m, j in self.p_offers(p):
                    nxt.add(append_canonical(self.arena, p, m, j))
            self._levels.append(frozenset(nxt))

    def enumerate(self, depth: int) -> frozenset:
        """All members with at most `depth` occurrences, in canonical form."""
        self._grow(depth)
        out = set()
        for level in self._levels[:depth + 1]:
            out |= level
        return frozenset(out)

    def accepts(self, seq) -> bool:
        """Membership: a play belongs iff each of its P-moves is offered after
        the preceding prefix (equivalent to membership in the enumeration,
        without materializing it)."""
        if not is_play(self.arena, seq):
            return False
        canon = canonicalize(seq)
        for i, occ in enumerate(canon):
            if occ.move not in self.arena.o_moves:
                if (occ.move, occ.justifier) not in set(self.p_offers(canon[:i])):
                    return False
        return True

    def next_moves(self, seq):
        """P-offers for a play in arbitrary naming, justifiers translated back."""
        canon, ren = canonicalize_with_map(seq)
        back = {v: k for k, v in ren.items()}
        return {(m, ROOT if j == ROOT else back[j])
                for m, j in self.p_offers(canon)}

    def sorted_plays(self, depth: int):
        return sorted(self.enumerate(depth), key=play_key)


def equal_at_depth(s1: Strategy, s2: Strategy, depth: int) -> bool:
    if s1.arena != s2.arena:
        raise ArenaMismatch("strategies live on different arenas")
    return s1.enumerate(depth) == s2.enumerate(depth)


class GeneratorStrategy(Strategy):
    """Least strategy containing a finite set of generator plays."""

    def __init__(self, arena: Arena, generators):
        super().__init__(arena)
        self._succ = {}
        for g in generators:
            c = canonicalize(g)
            for i, occ in enumerate(c):
                if occ.move not in arena.o_moves:
                    self._succ.setdefault(c[:i], set()).add(
                        (occ.move, occ.justifier))

    def p_offers(self, seq):
        return self._succ.get(seq, ())


def strat(arena: Arena, generators) -> GeneratorStrategy:
    """Closure of the generators under prefixes, O-extensions, and renaming."""
    for g in generators:
        if not is_play(arena, g):
            raise NotAPlay(format_play(g))
    return GeneratorStrategy(arena, generators)


class NextMoveStrategy(Strategy):
    """Strategy given by a next-move relation: play -> set of (P-move, justifier)."""

    def __init__(self, arena: Arena, fn):
        super().__init__(arena)
        self._fn = fn

    def p_offers(self, seq):
        out = set()
        for m, j in self._fn(seq):
            if m in self.arena.o_moves or not extension_ok(self.arena, seq, m, j):
                raise IllegalNextMove(
                    f"offer {m}({j}) after {format_play(seq) or 'ε'}")
            out.add((m, j))
        return out


def strat_from_next(arena: Arena, fn) -> NextMoveStrategy:
    return NextMoveStrategy(arena, fn)


class GeneratorFamilyStrategy(Strategy):
    """Generators produced per length bound (for star-shaped play families).

    `gens_fn(limit)` must yield every generator, truncated to `limit`
    occurrences, so successor information below the limit is complete.
    """

    def __init__(self, arena: Arena, gens_fn):
        super().__init__(arena)
        self._gens_fn = gens_fn
        self._succ_limit = -1
        self._succ = {}

    def _ensure(self, limit: int):
        if limit <= self._succ_limit:
            return
        self._succ = {}
        for g in self._gens_fn(limit):
            c = canonicalize(g)
            for i, occ in enumerate(c):
                if occ.move not in self.arena.o_moves:
                    self._succ.setdefault(c[:i], set()).add(
                        (occ.move, occ.justifier))
        self._succ_limit = limit

    def p_offers(self, seq):
        self._ensure(len(seq) + 1)
        return self._succ.get(seq, ())


class RelabeledStrategy(Strategy):
    """Image of a strategy under an injective move relabeling."""

    def __init__(self, inner: Strategy, arena: Arena, move_map: dict):
        super().__init__(arena)
        self.inner = inner
        self.move_map = dict(move_map)
        self.inv = {v: k for k, v in self.move_map.items()}
        if len(self.inv) != len(self.move_map):
            raise ValueError("relabeling is not injective")

    def _pull(self, seq):
        out = []
        for occ in seq:
            m = self.inv.get(occ.move)
            if m is None:
                return None
            out.append(occ.__class__(m, occ.justifier, occ.binder))
        return tuple(out)

    def p_offers(self, seq):
        pulled = self._pull(seq)
        if pulled is None:
            return ()
        return {(self.move_map[m], j) for m, j in self.inner.p_offers(pulled)}

    def accepts(self, seq) -> bool:
        if not is_play(self.arena, seq):
            return False
        pulled = self._pull(canonicalize(seq))
        return pulled is not None and self.inner.accepts(pulled)


class UnionStrategy(Strategy):
    """Union of strategies on a shared arena that only overlap on ε."""

    def __init__(self, arena: Arena, branches):
        super().__init__(arena)
        self.branches = list(branches)

    def p_offers(self, seq):
        out = set()
        for b in self.branches:
            out |= set(b.p_offers(seq))
        return out

    def accepts(self, seq) -> bool:
        return any(b.accepts(seq) for b in self.branches)


def to_json(strategy: Strategy, depth: int):
    """Deterministic JSON value for an enumeration (length-lex ordered)."""
    plays = []
    for p in strategy.sorted_plays(depth):
        plays.append([
            {"move": occ.move.base, "tag": occ.move.tag,
             "just": occ.justifier, "bind": occ.binder}
            for occ in p
        ])
    return plays
