"""Justified sequences and plays.

A sequence element is a move occurrence `m j<b>`: the move, the name of its
justifier, and (for questions) a freshly bound name.  The distinguished
root name ``*`` justifies the opening occurrence and collapses all dangling
justifiers of multi-threaded sequences.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .arena import Arena, Move

ROOT = "*"
# A Name is either ROOT or a positive int.


class UnknownMove(ValueError):
    pass


class NotAQuestion(ValueError):
    pass


class NameClash(ValueError):
    pass


@dataclass(frozen=True)
class MoveOccurrence:
    move: Move
    justifier: object  # Name
    binder: object = None  # Name for questions, None for answers

    def __str__(self) -> str:
        if self.binder is None:
            return f"{self.move}({self.justifier})"
        return f"{self.move}({self.justifier}>{self.binder})"


EMPTY_SEQ = ()

_OCC_RE = re.compile(r"^\((\*|\d+)(?:>(\d+))?\)$")


def format_play(seq) -> str:
    return "·".join(str(occ) for occ in seq)


def parse_play(text: str):
    """Parse the textual play format, e.g. ``q#(*>1)·0#(1)``."""
    text = text.strip()
    if not text:
        return EMPTY_SEQ
    occs = []
    for chunk in text.split("·"):
        cut = chunk.rfind("#")
        if cut < 0:
            raise ValueError(f"bad occurrence {chunk!r}: missing '#'")
        base = chunk[:cut]
        rest = chunk[cut + 1:]
        par = rest.find("(")
        if par < 0:
            raise ValueError(f"bad occurrence {chunk!r}: missing pointer")
        tag, pointer = rest[:par], rest[par:]
        m = _OCC_RE.match(pointer)
        if not m:
            raise ValueError(f"bad pointer {pointer!r} in {chunk!r}")
        just = ROOT if m.group(1) == ROOT else int(m.group(1))
        binder = int(m.group(2)) if m.group(2) else None
        occs.append(MoveOccurrence(Move(base, tag), just, binder))
    return tuple(occs)


def names_of(seq) -> set:
    out = set()
    for occ in seq:
        out.add(occ.justifier)
        if occ.binder is not None:
            out.add(occ.binder)
    out.discard(ROOT)
    return out


def binders_of(seq) -> set:
    return {occ.binder for occ in seq if occ.binder is not None}


def is_justified_sequence(seq) -> bool:
    """Freshness: each binder differs from every earlier name and is never ROOT."""
    seen = set()
    for occ in seq:
        if occ.binder is not None:
            if occ.binder == ROOT or occ.binder in seen or occ.binder == occ.justifier:
                return False
        seen.add(occ.justifier)
        if occ.binder is not None:
            seen.add(occ.binder)
    return True


def is_play(arena: Arena, seq) -> bool:
    """Play predicate: opens with an initial O-question justified by ROOT, and
    every later occurrence is justified by the binder of an earlier enabling
    question."""
    for occ in seq:
        if occ.move not in arena.moves:
            raise UnknownMove(str(occ.move))
    if not is_justified_sequence(seq):
        return False
    binder_move = {}
    for i, occ in enumerate(seq):
        is_q = arena.is_question(occ.move)
        if is_q != (occ.binder is not None):
            return False
        if i == 0:
            if occ.move not in arena.initial or occ.justifier != ROOT:
                return False
        else:
            if occ.justifier == ROOT:
                return False
            enabler = binder_move.get(occ.justifier)
            if enabler is None or occ.move not in arena.enabled(enabler):
                return False
        if occ.binder is not None:
            binder_move[occ.binder] = occ.move
    return True


def legal_extensions(arena: Arena, seq, side=None):
    """Single-move extensions of a play; side is None, "O", or "P".

    Initial moves can only open (they are never enabled, so a play has
    exactly one initial occurrence, in position 1).
    """
    out = []
    if not seq:
        if side != "P":
            out.extend((q, ROOT) for q in sorted(arena.initial))
        return out
    for occ in seq:
        if occ.binder is None:
            continue
        for m in sorted(arena.enabled(occ.move)):
            is_o = m in arena.o_moves
            if side == "O" and not is_o:
                continue
            if side == "P" and is_o:
                continue
            out.append((m, occ.binder))
    return out


def append_canonical(arena: Arena, seq, move: Move, justifier):
    """Extend a canonical play by one move, binding the next position."""
    binder = len(seq) + 1 if arena.is_question(move) else None
    return seq + (MoveOccurrence(move, justifier, binder),)


def delete(seq, hidden):
    """Remove occurrences whose move is in `hidden`, extending justification
    chains through the removed occurrences.

    Returns the surviving sequence and the chain map carrying each deleted
    binder to the (surviving) image of its justifier.
    """
    chain = {}
    out = []
    for occ in seq:
        if occ.move in hidden:
            if occ.binder is not None:
                chain[occ.binder] = chain.get(occ.justifier, occ.justifier)
        else:
            out.append(MoveOccurrence(
                occ.move, chain.get(occ.justifier, occ.justifier), occ.binder))
    return tuple(out), chain


def thread(seq, index: int, rebase=True):
    """Hereditarily justified sub-sequence seeded at the question at `index`.

    The seed occurrence is included; with rebase=True its justifier is
    rewritten to ROOT so the result can stand alone as a play.
    """
    seed = seq[index]
    if seed.binder is None:
        raise NotAQuestion(str(seed))
    reach = {seed.binder}
    first = MoveOccurrence(seed.move, ROOT, seed.binder) if rebase else seed
    out = [first]
    for occ in seq[index + 1:]:
        if occ.justifier in reach:
            out.append(occ)
            if occ.binder is not None:
                reach.add(occ.binder)
    return tuple(out)


def interleavings(p, q):
    """All order-preserving merges of two binder-disjoint sequences."""
    if binders_of(p) & binders_of(q):
        raise NameClash("sequences share binder names")

    def merge(a, b):
        if not a:
            return [b]
        if not b:
            return [a]
        return [(a[0],) + rest for rest in merge(a[1:], b)] + \
               [(b[0],) + rest for rest in merge(a, b[1:])]

    return set(merge(tuple(p), tuple(q)))
