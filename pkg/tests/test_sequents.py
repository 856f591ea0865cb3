"""Sequents: canonical ordering, set operations, and fixpoint rewriting."""

from __future__ import annotations

import pytest

from mucut.kernel import TOP, atom, natom, prime
from mucut.sequents import Sequent, is_k_positive, replace_fixpoint, seq
from mucut.syntax import parse_formula as pf


def test_canonical_order_and_dedup():
    s = Sequent((pf("p1"), pf("~p0"), pf("p0"), pf("mu X . X"), pf("p1")))
    assert repr(s) == "{p0, p1, ~p0, mu X . X}"
    assert s.forms == (atom(0), atom(1), natom(0), ("mu", ("var",)))
    assert len(s) == 4
    # equal sets are equal sequents regardless of input order
    assert s == Sequent(reversed(s.forms))
    assert hash(s) == hash(Sequent(reversed(s.forms)))


def test_membership_and_iteration():
    s = seq(atom(1), natom(2))
    assert atom(1) in s
    assert atom(2) not in s
    assert list(s) == [atom(1), natom(2)]


def test_empty_sequent():
    s = Sequent()
    assert len(s) == 0
    assert s.level() == 0
    assert s.max_nubar_level() == -1
    assert s.is_l0()


def test_immutability():
    s = seq(atom(1))
    with pytest.raises(AttributeError):
        s.forms = ()


def test_rejects_free_variables():
    with pytest.raises(ValueError):
        Sequent((("var",),))
    with pytest.raises(ValueError):
        Sequent((("or", ("atom", 1), ("var",)),))


def test_set_operations():
    s = seq(atom(1), atom(2))
    assert s.add(atom(1)) is s
    assert s.add(atom(3)) == seq(atom(1), atom(2), atom(3))
    assert s.without(atom(1)) == seq(atom(2))
    assert s.without(atom(9)) is s
    assert s.union((atom(3), atom(1))) == seq(atom(1), atom(2), atom(3))
    assert s.difference((atom(1),)) == seq(atom(2))
    assert seq(atom(1)).issubset(s)
    assert not s.issubset(seq(atom(1)))
    assert s.dia() == seq(("dia", atom(1)), ("dia", atom(2)))


def test_levels():
    s = seq(atom(1), pf("mu X . X"), pf("nu X . mu X . X"))
    assert s.level() == 2
    assert s.max_nubar_level() == -1
    t = seq(prime(pf("nu X . (p1 & X)")), atom(0))
    assert t.max_nubar_level() == 1
    assert not t.is_l0()


def test_is_k_positive():
    n = prime(pf("nu X . (p1 & X)"))  # one nub at level 1
    assert is_k_positive(n, 2)
    assert not is_k_positive(n, 1)
    assert is_k_positive(seq(n, atom(1)), 2)
    assert not is_k_positive(seq(n, atom(1)), 1)
    assert is_k_positive(seq(atom(1)), 1)
    assert is_k_positive(Sequent(), 1)


def test_replace_fixpoint():
    m = pf("mu X . X")
    s = seq(pf("(p1 | mu X . X)"), m)
    out = replace_fixpoint(s, m, TOP)
    assert out == seq(TOP, ("or", atom(1), TOP))
    # replacement descends under binders
    t = seq(pf("nu X . (X & mu X . X)"))
    assert replace_fixpoint(t, m, atom(2)) == seq(
        ("nu", ("and", ("var",), atom(2)))
    )
    # sets renormalize: collapsing two formulas to one is fine
    u = seq(m, TOP)
    assert replace_fixpoint(u, m, TOP) == seq(TOP)
