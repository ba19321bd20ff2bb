"""Arenas: finite move sets with question/answer and O/P polarity, an enabling DAG.

An arena interprets a type.  Moves carry an injection tag (a path over
{L, R}) so that product and arrow constructions never merge moves.  All
values here are immutable; constructors are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class UnsupportedKind(ValueError):
    """Unknown base arena kind."""


BASE_KINDS = ("unit", "com", "bool", "nat", "optnat", "var", "sem")

OPT_ERR = "⦶"  # the extra answer of the option-nat arena


@dataclass(frozen=True, order=True)
class Move:
    """A move label plus its injection tag (outermost injection first)."""

    base: str
    tag: str = ""

    def tagged(self, prefix: str) -> "Move":
        return Move(self.base, prefix + self.tag)

    def untagged(self, prefix: str) -> "Move":
        if not self.tag.startswith(prefix):
            raise ValueError(f"move {self} does not carry tag prefix {prefix!r}")
        return Move(self.base, self.tag[len(prefix):])

    def __str__(self) -> str:
        return f"{self.base}#{self.tag}"


@dataclass(frozen=True)
class Arena:
    """Moves, questions, O-moves, initial moves, and the enabling relation.

    Invariants (checked by :func:`validate`):
      (e1) enablers are questions,
      (e2) enabling flips O/P polarity,
      (e3) enabled moves are not initial,
    plus I subset of Q and O, and reachability of every move from I.
    """

    moves: frozenset
    questions: frozenset
    o_moves: frozenset
    initial: frozenset
    enabling: frozenset
    _enabled_by: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        table = {}
        for q, m in self.enabling:
            table.setdefault(q, set()).add(m)
        object.__setattr__(self, "_enabled_by", table)

    @property
    def answers(self):
        return self.moves - self.questions

    @property
    def p_moves(self):
        return self.moves - self.o_moves

    def enabled(self, q: Move) -> set:
        return self._enabled_by.get(q, set())

    def is_question(self, m: Move) -> bool:
        return m in self.questions

    def polarity_label(self, m: Move) -> str:
        side = "O" if m in self.o_moves else "P"
        kind = "Q" if m in self.questions else "A"
        return side + kind

    def tagged(self, prefix: str) -> "Arena":
        return Arena(
            frozenset(m.tagged(prefix) for m in self.moves),
            frozenset(m.tagged(prefix) for m in self.questions),
            frozenset(m.tagged(prefix) for m in self.o_moves),
            frozenset(m.tagged(prefix) for m in self.initial),
            frozenset((a.tagged(prefix), b.tagged(prefix)) for a, b in self.enabling),
        )


EMPTY = Arena(frozenset(), frozenset(), frozenset(), frozenset(), frozenset())


def _scalar_arena(answer_bases) -> Arena:
    q = Move("q")
    answers = [Move(a) for a in answer_bases]
    return Arena(
        moves=frozenset([q, *answers]),
        questions=frozenset([q]),
        o_moves=frozenset([q]),
        initial=frozenset([q]),
        enabling=frozenset((q, a) for a in answers),
    )


def base_values(kind: str, k: int = 3):
    """Answer labels of a scalar base kind, as base strings."""
    if kind in ("unit", "com"):
        return ["a"]
    if kind == "bool":
        return ["tt", "ff"]
    if kind == "nat":
        return [str(n) for n in range(k + 1)]
    if kind == "optnat":
        return [str(n) for n in range(k + 1)] + [OPT_ERR]
    raise UnsupportedKind(kind)


def _var_arena(k: int) -> Arena:
    """The assignable-variable arena: nat x (nat => nat) with read/write aliases.

    Reader component (tag L): rd with answers val(n).  Writer component
    (tag R, itself an arrow): session question q#RR answered by ok(n),
    value question q#RL answered by wr(n).  Structurally identical to
    product(nat, arrow(nat, nat)); see var_structure_map.
    """
    rd = Move("rd", "L")
    vals = [Move(f"val({n})", "L") for n in range(k + 1)]
    wq = Move("q", "RL")
    wrs = [Move(f"wr({n})", "RL") for n in range(k + 1)]
    sq = Move("q", "RR")
    oks = [Move(f"ok({n})", "RR") for n in range(k + 1)]
    enabling = set()
    enabling.update((rd, v) for v in vals)
    enabling.update((wq, w) for w in wrs)
    enabling.update((sq, o) for o in oks)
    enabling.add((sq, wq))
    return Arena(
        moves=frozenset([rd, sq, wq, *vals, *wrs, *oks]),
        questions=frozenset([rd, sq, wq]),
        o_moves=frozenset([rd, sq, *wrs]),
        initial=frozenset([rd, sq]),
        enabling=frozenset(enabling),
    )


def var_structure_map(k: int) -> dict:
    """Bijection from the var arena onto product(nat, arrow(nat, nat))."""
    out = {Move("rd", "L"): Move("q", "L"), Move("q", "RL"): Move("q", "RL"),
           Move("q", "RR"): Move("q", "RR")}
    for n in range(k + 1):
        out[Move(f"val({n})", "L")] = Move(str(n), "L")
        out[Move(f"wr({n})", "RL")] = Move(str(n), "RL")
        out[Move(f"ok({n})", "RR")] = Move(str(n), "RR")
    return out


def base_arena(kind: str, k: int = 3) -> Arena:
    """Base arena of a ground type; nat-like kinds are bounded by k."""
    if kind in ("unit", "com", "bool", "nat", "optnat"):
        return _scalar_arena(base_values(kind, k))
    if kind == "var":
        return _var_arena(k)
    if kind == "sem":
        return product(_scalar_arena(["a"]), _scalar_arena(["a"]))
    raise UnsupportedKind(kind)


def product(a: Arena, b: Arena) -> Arena:
    """Disjoint (tag-separated) union of two arenas."""
    ta, tb = a.tagged("L"), b.tagged("R")
    return Arena(
        ta.moves | tb.moves,
        ta.questions | tb.questions,
        ta.o_moves | tb.o_moves,
        ta.initial | tb.initial,
        ta.enabling | tb.enabling,
    )


def arrow(a: Arena, b: Arena) -> Arena:
    """Function arena: domain polarity reversed, target initials enable domain initials."""
    ta, tb = a.tagged("L"), b.tagged("R")
    cross = frozenset((ib, ia) for ib in tb.initial for ia in ta.initial)
    return Arena(
        ta.moves | tb.moves,
        ta.questions | tb.questions,
        (ta.moves - ta.o_moves) | tb.o_moves,
        tb.initial,
        ta.enabling | tb.enabling | cross,
    )


def transport(a: Arena, bij: dict) -> Arena:
    """Relabel an arena through a move bijection."""
    return Arena(
        frozenset(bij[m] for m in a.moves),
        frozenset(bij[m] for m in a.questions),
        frozenset(bij[m] for m in a.o_moves),
        frozenset(bij[m] for m in a.initial),
        frozenset((bij[p], bij[q]) for p, q in a.enabling),
    )


def _retag_map(arena: Arena, rules) -> dict:
    """Move bijection replacing tag prefixes; rules are (old_prefix, new_prefix) pairs,
    tried in order, first match wins."""
    out = {}
    for m in arena.moves:
        for old, new in rules:
            if m.tag.startswith(old):
                out[m] = Move(m.base, new + m.tag[len(old):])
                break
        else:
            raise ValueError(f"move {m} matches no retag rule")
    return out


def curry_iso(a: Arena, b: Arena, c: Arena) -> dict:
    """Move bijection from arrow(product(a, b), c) onto arrow(a, arrow(b, c))."""
    src = arrow(product(a, b), c)
    return _retag_map(src, [("LL", "L"), ("LR", "RL"), ("R", "RR")])


def unit_isos(a: Arena):
    """Bijections witnessing A x I == A, I x A == A, and I => A == A."""
    right = _retag_map(product(a, EMPTY), [("L", "")])
    left = _retag_map(product(EMPTY, a), [("R", "")])
    arr = _retag_map(arrow(EMPTY, a), [("R", "")])
    return right, left, arr


def split_arrow(z: Arena):
    """Recover the components (A, B) of an arrow-shaped arena."""
    l_moves = {m for m in z.moves if m.tag.startswith("L")}
    r_moves = z.moves - l_moves

    def _strip(side, prefix):
        return frozenset(Move(m.base, m.tag[1:]) for m in side if m.tag.startswith(prefix))

    b = Arena(
        _strip(r_moves, "R"),
        _strip(z.questions & r_moves, "R"),
        _strip(z.o_moves & r_moves, "R"),
        _strip(z.initial, "R"),
        frozenset((Move(p.base, p.tag[1:]), Move(q.base, q.tag[1:]))
                  for p, q in z.enabling
                  if p.tag.startswith("R") and q.tag.startswith("R")),
    )
    cross_targets = frozenset(
        Move(q.base, q.tag[1:])
        for p, q in z.enabling
        if p in z.initial and q.tag.startswith("L")
    )
    a_o = frozenset(Move(m.base, m.tag[1:]) for m in l_moves if m not in z.o_moves)
    a_enabling = frozenset((Move(p.base, p.tag[1:]), Move(q.base, q.tag[1:]))
                           for p, q in z.enabling
                           if p.tag.startswith("L") and q.tag.startswith("L"))
    if cross_targets:
        a_init = cross_targets
    else:
        # degenerate target (no initials): fall back to sources of the domain DAG
        enabled = {q for _, q in a_enabling}
        a_init = frozenset(
            m for m in _strip(z.questions & l_moves, "L")
            if m in a_o and m not in enabled
        )
    a = Arena(
        _strip(l_moves, "L"),
        _strip(z.questions & l_moves, "L"),
        a_o,
        a_init,
        a_enabling,
    )
    return a, b


def split_product(p: Arena):
    """Recover the components (A, B) of a product-shaped arena."""
    def _part(prefix):
        sel = lambda s: frozenset(Move(m.base, m.tag[1:]) for m in s if m.tag.startswith(prefix))
        return Arena(
            sel(p.moves), sel(p.questions), sel(p.o_moves), sel(p.initial),
            frozenset((Move(a.base, a.tag[1:]), Move(b.base, b.tag[1:]))
                      for a, b in p.enabling
                      if a.tag.startswith(prefix) and b.tag.startswith(prefix)),
        )
    return _part("L"), _part("R")


def validate(a: Arena):
    """Check the arena invariants; returns "ok" or the list of violations."""
    problems = []
    for q, m in sorted(a.enabling):
        if q not in a.questions:
            problems.append(f"e1: enabler {q} is not a question")
        if (q in a.o_moves) == (m in a.o_moves):
            problems.append(f"e2: {q} -> {m} does not flip polarity")
        if m in a.initial:
            problems.append(f"e3: initial move {m} is enabled by {q}")
    for m in sorted(a.initial):
        if m not in a.questions or m not in a.o_moves:
            problems.append(f"initial move {m} is not an O-question")
    for s in (a.questions, a.o_moves, a.initial):
        for m in sorted(s - a.moves):
            problems.append(f"unknown move {m} in arena structure")
    # reachability from I along the enabling DAG
    seen = set(a.initial)
    frontier = list(a.initial)
    while frontier:
        q = frontier.pop()
        for m in a.enabled(q):
            if m not in seen:
                seen.add(m)
                frontier.append(m)
    for m in sorted(a.moves - seen):
        problems.append(f"unreachable move {m}")
    # cycle check
    color = {}

    def visit(n):
        color[n] = 1
        for m in a.enabled(n):
            if color.get(m) == 1:
                problems.append(f"enabling cycle through {m}")
                return
            if m not in color:
                visit(m)
        color[n] = 2

    for m in sorted(a.moves):
        if m not in color:
            visit(m)
    return "ok" if not problems else problems


def to_dot(a: Arena) -> str:
    """Enabling DAG in DOT form; nodes labeled `base#tag [OQ|PQ|OA|PA]`."""
    lines = ["digraph arena {"]
    for m in sorted(a.moves):
        shape = ", shape=doublecircle" if m in a.initial else ""
        lines.append(f'  "{m}" [label="{m} [{a.polarity_label(m)}]"{shape}];')
    for q, m in sorted(a.enabling):
        lines.append(f'  "{q}" -> "{m}";')
    lines.append("}")
    return "\n".join(lines)
