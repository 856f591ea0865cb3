"""Sequents: canonically ordered, duplicate-free finite sets of formulas.

A sequent holds closed formulas only.  The canonical order is the total
order on syntax trees given by kernel.sort_key (constructor tag, then
children), so equal sets always have identical printed and serialized
forms.
"""

from __future__ import annotations

from mucut.kernel import (
    has_free_var,
    is_l0,
    level,
    max_nubar_level,
    replace_subterm,
    sort_key,
    validate,
)
from mucut.syntax import print_form


class Sequent:
    """Immutable canonical set of closed formulas."""

    __slots__ = ("forms", "_set")

    def __init__(self, forms=()):
        canon = sorted(set(forms), key=sort_key)
        for f in canon:
            validate(f)
            if has_free_var(f):
                raise ValueError(
                    "sequent formula has a free variable: %s" % print_form(f)
                )
        object.__setattr__(self, "forms", tuple(canon))
        object.__setattr__(self, "_set", frozenset(canon))

    def __setattr__(self, name, value):
        raise AttributeError("Sequent is immutable")

    def __contains__(self, f):
        return f in self._set

    def __iter__(self):
        return iter(self.forms)

    def __len__(self):
        return len(self.forms)

    def __eq__(self, other):
        return isinstance(other, Sequent) and self.forms == other.forms

    def __hash__(self):
        return hash(self.forms)

    def __repr__(self):
        return "{%s}" % ", ".join(print_form(f) for f in self.forms)

    def union(self, other):
        """Union with another sequent or any iterable of formulas."""
        return Sequent(self.forms + tuple(other))

    def add(self, f):
        return self if f in self._set else Sequent(self.forms + (f,))

    def without(self, f):
        """Remove f if present (no error when absent)."""
        if f not in self._set:
            return self
        return Sequent(g for g in self.forms if g != f)

    def difference(self, other):
        drop = frozenset(other)
        return Sequent(g for g in self.forms if g not in drop)

    def issubset(self, other):
        return self._set <= frozenset(other)

    def dia(self):
        """The sequent {<>A : A in self}."""
        return Sequent(("dia", f) for f in self.forms)

    def level(self):
        return max((level(f) for f in self.forms), default=0)

    def is_l0(self):
        return all(is_l0(f) for f in self.forms)

    def max_nubar_level(self):
        return max((max_nubar_level(f) for f in self.forms), default=-1)


def seq(*forms):
    return Sequent(forms)


def is_k_positive(s, k):
    """True when every nub-rooted subformula (of a formula or of every
    formula in a sequent) has level strictly below k."""
    if isinstance(s, Sequent):
        return s.max_nubar_level() < k
    return max_nubar_level(s) < k


def replace_fixpoint(s, target, b):
    """Replace every occurrence of the subformula target by b, in every
    formula of s (descending under binders), renormalizing as a set."""
    return Sequent(replace_subterm(f, target, b) for f in s)
