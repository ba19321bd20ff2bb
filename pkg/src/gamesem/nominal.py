"""Names, permutations, and the canonical-form discipline.

Binder names are immaterial (plays are identified up to permutation), so
play sets are kept closed under renaming by storing one canonical
representative per orbit: the binder introduced at position i is i.
"""

from __future__ import annotations

from .play import ROOT, MoveOccurrence


class MalformedSequence(ValueError):
    """A justifier was neither ROOT nor a previously bound name."""


def fresh(used) -> int:
    """Smallest positive name not in `used` (deterministic by policy)."""
    n = 1
    while n in used:
        n += 1
    return n


class Permutation:
    """Finite-support bijection on numeric names; fixes ROOT."""

    def __init__(self, mapping=None):
        mapping = dict(mapping or {})
        mapping = {k: v for k, v in mapping.items() if k != v}
        if ROOT in mapping or ROOT in mapping.values():
            raise ValueError("permutations fix the root name")
        values = set(mapping.values())
        if len(values) != len(mapping) or set(mapping) != values:
            raise ValueError("mapping is not a bijection on its support")
        self.mapping = mapping

    def __call__(self, name):
        if name == ROOT:
            return ROOT
        return self.mapping.get(name, name)

    def inverse(self) -> "Permutation":
        return Permutation({v: k for k, v in self.mapping.items()})

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.mapping == other.mapping

    def __repr__(self):
        return f"Permutation({self.mapping!r})"

    @staticmethod
    def swap(a: int, b: int) -> "Permutation":
        return Permutation({a: b, b: a})


def apply_permutation(pi: Permutation, seq):
    return tuple(
        MoveOccurrence(occ.move, pi(occ.justifier),
                       None if occ.binder is None else pi(occ.binder))
        for occ in seq
    )


def canonicalize_with_map(seq):
    """Canonical form plus the renaming (old binder -> position) applied."""
    ren = {}
    out = []
    for i, occ in enumerate(seq, start=1):
        if occ.justifier == ROOT:
            j = ROOT
        elif occ.justifier in ren:
            j = ren[occ.justifier]
        else:
            raise MalformedSequence(
                f"occurrence {occ} justified by unbound name {occ.justifier}")
        b = None
        if occ.binder is not None:
            ren[occ.binder] = i
            b = i
        out.append(MoveOccurrence(occ.move, j, b))
    return tuple(out), ren


def canonicalize(seq):
    """Unique permutation image in which the binder at position i equals i."""
    return canonicalize_with_map(seq)[0]


def is_canonical(seq) -> bool:
    return all(occ.binder is None or occ.binder == i
               for i, occ in enumerate(seq, start=1))
