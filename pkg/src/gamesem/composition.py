"""Interaction, iteration, hiding, and composition of strategies.

Composition of sigma : A=>B with tau : B=>C explores interaction plays over
the arena (A=>B)=>C.  At each interaction play, tau may move on its view
(the play with A-moves deleted) and sigma may move on each of its threads
(the hereditary justification of each B-initial occurrence).  Hiding the
B-moves, with justification chains extended through them, yields the
composite plays over A=>C.

The engine keeps, per composite play, the set of interaction witnesses
that project onto it; witness sets are closed under hidden moves up to a
configurable runaway guard (the closure normally exhausts on its own,
since hidden moves only arise as component offers).
"""

from __future__ import annotations

from .arena import Arena, Move, arrow, split_arrow
from .nominal import canonicalize, canonicalize_with_map
from .play import (ROOT, MoveOccurrence, append_canonical, delete,
                   format_play, is_play, legal_extensions, thread)
from .strategy import ArenaMismatch, Strategy

DEFAULT_GUARD_FACTOR = 3
DEFAULT_GUARD_MIN = 64


class InteractionBudgetExceeded(RuntimeError):
    """The hidden-move closure outgrew the runaway guard."""


def in_interaction(seq, sigma_plays, sigma_only, tau_plays, tau_only) -> bool:
    """Membership in the interaction of two sequence sets over a shared alphabet.

    Deleting sigma's private moves must land in tau's set and vice versa.
    The play sets are consulted up to renaming (canonical forms).
    """
    to_tau, _ = delete(seq, sigma_only)
    to_sigma, _ = delete(seq, tau_only)
    return (canonicalize(to_tau) in tau_plays
            and canonicalize(to_sigma) in sigma_plays)


def interaction(candidates, sigma_plays, sigma_only, tau_plays, tau_only):
    """Filter candidate sequences by the interaction conditions."""
    return {p for p in candidates
            if in_interaction(p, sigma_plays, sigma_only, tau_plays, tau_only)}


def in_iteration(seq, strategy_plays, n_moves) -> bool:
    """Every thread rooted at an occurrence of an N-move lies in the strategy."""
    for i, occ in enumerate(seq):
        if occ.move in n_moves:
            if canonicalize(thread(seq, i, rebase=True)) not in strategy_plays:
                return False
    return True


def iterate(strategy_plays, n_moves, candidates):
    """Filter candidate sequences by the iteration condition on N."""
    return {p for p in candidates if in_iteration(p, strategy_plays, n_moves)}


class ComposedStrategy(Strategy):
    """compose(sigma, tau): hidden-interaction engine with witness tracking."""

    def __init__(self, sigma: Strategy, tau: Strategy,
                 guard_factor=DEFAULT_GUARD_FACTOR, guard_min=DEFAULT_GUARD_MIN):
        a, b = split_arrow(sigma.arena)
        b2, c = split_arrow(tau.arena)
        if b != b2:
            raise ArenaMismatch("shared arenas of the composition do not agree")
        super().__init__(arrow(a, c))
        self.sigma = sigma
        self.tau = tau
        self.guard_factor = guard_factor
        self.guard_min = guard_min
        self.z = arrow(arrow(a, b), c)

        self.sig2z = {m: Move(m.base, ("LL" if m.tag.startswith("L") else "LR") + m.tag[1:])
                      for m in sigma.arena.moves}
        self.z2sig = {v: k for k, v in self.sig2z.items()}
        self.tau2z = {m: (Move(m.base, "LR" + m.tag[1:]) if m.tag.startswith("L") else m)
                      for m in tau.arena.moves}
        self.z2tau = {v: k for k, v in self.tau2z.items()}

        self.a_moves_z = frozenset(m for m in self.z.moves if m.tag.startswith("LL"))
        self.hidden = frozenset(m for m in self.z.moves if m.tag.startswith("LR"))
        self.b_initials_z = frozenset(Move(m.base, "LR" + m.tag) for m in b.initial)

        self.z2out = {}
        for m in self.z.moves:
            if m.tag.startswith("LL"):
                self.z2out[m] = Move(m.base, "L" + m.tag[2:])
            elif m.tag.startswith("R"):
                self.z2out[m] = m
        self.out2z = {v: k for k, v in self.z2out.items()}
        self.external = frozenset(self.out2z[m] for m in self.arena.o_moves)

        self._wit = {(): frozenset([()])}
        self._ext = {}
        self._proj = {}
        self._offers = {}

    # -- per-witness bookkeeping ------------------------------------------

    def _projection(self, u):
        got = self._proj.get(u)
        if got is None:
            got = delete(u, self.hidden)
            self._proj[u] = got
        return got

    def interaction_offers(self, u):
        """The interaction next-move relation: tau on its view plus sigma on
        each B-initial thread (hidden and visible offers alike)."""
        out = set()
        view, _ = delete(u, self.a_moves_z)
        pulled = tuple(MoveOccurrence(self.z2tau[o.move], o.justifier, o.binder)
                       for o in view)
        for m, j in self.tau.next_moves(pulled):
            out.add((self.tau2z[m], j))
        for i, occ in enumerate(u):
            if occ.move in self.b_initials_z:
                t = thread(u, i, rebase=True)
                pulled = tuple(MoveOccurrence(self.z2sig[o.move], o.justifier, o.binder)
                               for o in t)
                for m, j in self.sigma.next_moves(pulled):
                    out.add((self.sig2z[m], j))
        return out

    def _extensions(self, u):
        got = self._ext.get(u)
        if got is None:
            got = self.interaction_offers(u)
            for m, j in legal_extensions(self.z, u):
                if m in self.external:
                    got.add((m, j))
            self._ext[u] = got
        return got

    def _close_hidden(self, seeds, visible_len):
        guard = max(self.guard_min, self.guard_factor * (visible_len + 1))
        done = set(seeds)
        frontier = list(seeds)
        while frontier:
            u = frontier.pop()
            for m, j in self._extensions(u):
                if m not in self.hidden:
                    continue
                u2 = append_canonical(self.z, u, m, j)
                if u2 in done:
                    continue
                if sum(1 for o in u2 if o.move in self.hidden) > guard:
                    raise InteractionBudgetExceeded(
                        f"more than {guard} hidden moves while extending "
                        f"{format_play(self._projection(u)[0]) or 'ε'}")
                done.add(u2)
                frontier.append(u2)
        return frozenset(done)

    def _witnesses(self, p):
        got = self._wit.get(p)
        if got is not None:
            return got
        prev = self._witnesses(p[:-1])
        last = p[-1]
        mz = self.out2z[last.move]
        seeds = set()
        for u in prev:
            if last.justifier == ROOT:
                ju = ROOT
            else:
                view, _ = self._projection(u)
                ju = view[last.justifier - 1].binder
            if (mz, ju) in self._extensions(u):
                seeds.add(append_canonical(self.z, u, mz, ju))
        got = self._close_hidden(seeds, len(p))
        self._wit[p] = got
        return got

    # -- strategy interface ------------------------------------------------

    def p_offers(self, seq):
        got = self._offers.get(seq)
        if got is not None:
            return got
        out = set()
        for u in self._witnesses(seq):
            view, chain = self._projection(u)
            _, ren = canonicalize_with_map(view)
            for m, j in self._extensions(u):
                if m in self.hidden or m in self.external:
                    continue
                jj = chain.get(j, j)
                out.add((self.z2out[m], ROOT if jj == ROOT else ren[jj]))
        self._offers[seq] = out
        return out

    def accepts(self, seq) -> bool:
        if not is_play(self.arena, seq):
            return False
        return bool(self._witnesses(canonicalize(seq)))


def compose(sigma: Strategy, tau: Strategy, **kwargs) -> ComposedStrategy:
    """sigma ; tau, a strategy on A=>C."""
    return ComposedStrategy(sigma, tau, **kwargs)


def interaction_next(sigma: Strategy, tau: Strategy):
    """The interaction next-move relation as a standalone function on
    interaction plays (any consistent naming)."""
    engine = ComposedStrategy(sigma, tau)
    return engine.interaction_offers


def format_trace(u, engine: ComposedStrategy) -> str:
    """Three-column rendering of an interaction play (A | B | C, time downward)."""
    cols = []
    for occ in u:
        if occ.move in engine.a_moves_z:
            col = 0
        elif occ.move in engine.hidden:
            col = 1
        else:
            col = 2
        cols.append((col, str(occ)))
    width = max([len(s) for _, s in cols], default=4)
    header = " | ".join(h.center(width) for h in ("A", "B", "C"))
    lines = [header, "-" * len(header)]
    for col, s in cols:
        cells = [" " * width] * 3
        cells[col] = s.ljust(width)
        lines.append(" | ".join(cells))
    return "\n".join(lines)
