"""Embedding finite proofs into the intermediate systems: identity laws,
monotonicity, un-priming, induction conversion, and the full translation."""

from __future__ import annotations

import pytest

from mucut.checker import check_bounded, level_bound, omega_system
from mucut.corpus import CORPUS, lemma_suite
from mucut.embed import (
    apply_sigma,
    deprime,
    embed,
    identity_mu,
    identity_mu_primed,
    ind_to_omega,
    monotone,
    monotone_primed,
)
from mucut.errors import InternalInvariantError
from mucut.kernel import TOP, atom, level, negate, prime, substitute
from mucut.proofs import (
    AxiomMu,
    Ind,
    Nu,
    Omega,
    is_cut_free_observed,
    observation_rules,
    observe,
    omega_phi,
    top_intro,
)
from mucut.sequents import Sequent, seq
from mucut.syntax import parse_formula as pf

M1 = pf("mu X . (p1 | X)")


def _sys(m):
    return omega_system(max(1, level(m)))


def test_apply_sigma():
    n = pf("nu X . (p1 & X)")
    s = seq(n, atom(2))
    assert apply_sigma(s, frozenset()) == s
    assert apply_sigma(s, frozenset((n,))) == seq(prime(n), atom(2))
    assert apply_sigma(s, frozenset(s)) == seq(prime(n), atom(2))


def test_identity_mu():
    p = identity_mu(M1, 1)
    assert p.conclusion == seq(M1, negate(M1))
    assert isinstance(p.rule, Nu)
    assert is_cut_free_observed(p, 6)
    assert check_bounded(p, _sys(M1), 6).ok


def test_identity_mu_rejects_bad_input():
    with pytest.raises(InternalInvariantError):
        identity_mu(TOP, 1)
    with pytest.raises(InternalInvariantError):
        identity_mu(pf("mu X . mu X . X"), 0)  # level above the index


def test_identity_mu_primed():
    p = identity_mu_primed(M1, 1)
    assert p.conclusion == seq(M1, prime(negate(M1)))
    tag = p.rule
    assert isinstance(tag, Omega)
    assert tag.h == 1
    assert tag.target == prime(M1)
    assert is_cut_free_observed(p, 6)
    assert check_bounded(p, _sys(M1), 6).ok


def test_monotone():
    d = identity_mu(M1, 1)
    a = M1[1]  # the operator p1 | X
    p = monotone(d, a, negate(M1), M1, 1)
    assert p.conclusion == seq(
        substitute(negate(a), negate(M1)), substitute(a, M1)
    )
    assert check_bounded(p, _sys(M1), 6).ok
    with pytest.raises(InternalInvariantError):
        monotone(top_intro(()), a, negate(M1), M1, 1)


def test_monotone_primed():
    d = identity_mu_primed(M1, 1)
    nbody = negate(M1)[1]
    p = monotone_primed(d, nbody, M1, negate(M1), 1)
    assert p.conclusion == seq(
        substitute(negate(nbody), M1),
        prime(substitute(nbody, negate(M1))),
    )
    assert check_bounded(p, _sys(M1), 6).ok


def test_deprime():
    d = identity_mu_primed(M1, 1)
    n = negate(M1)
    out = deprime(d, n, 1)
    assert out.conclusion == seq(M1, n)
    assert check_bounded(out, _sys(M1), 6).ok
    assert is_cut_free_observed(out, 6)
    # no-ops: target not primed in the conclusion, or priming is identity
    assert deprime(d, M1, 1) is d
    d2 = top_intro(())
    assert deprime(d2, TOP, 1) is d2


def test_ind_to_omega():
    m = M1
    b = TOP
    cf = substitute(m[1], b)
    ncf_p = prime(negate(cf))
    asm1 = top_intro((ncf_p,))  # proves ~(A(top))', top
    asm2 = top_intro((ncf_p,))  # prime(top) == top
    o1, o2 = ind_to_omega(asm1, asm2, m, b, 1)
    phi = omega_phi(prime(m))
    assert o1.conclusion == Sequent((phi, b))
    assert o2.conclusion == Sequent((phi, prime(b)))
    assert isinstance(o1.rule, Omega)
    assert check_bounded(o1, omega_system(1), 4).ok
    assert check_bounded(o2, omega_system(1), 4).ok


def test_embed_rejects_stray_selection():
    e1 = CORPUS["ind-top"]()
    with pytest.raises(ValueError):
        embed(e1, sel=(atom(9),))


def test_embed_endsequents_and_rules():
    for name, build in CORPUS.items():
        p = build()
        k = max(1, level_bound(p))
        emb = embed(p, (), k)
        assert emb.conclusion == p.conclusion
        o = observe(emb, 6)
        tags = observation_rules(o)
        assert not any(isinstance(t, (Ind, AxiomMu)) for t in tags), name
        assert check_bounded(emb, omega_system(k), 6).ok, name


def test_embed_with_selection():
    p = CORPUS["axmu"]()
    m = pf("mu X . (p1 | X)")
    emb = embed(p, (m,), 1)
    assert emb.conclusion == apply_sigma(p.conclusion, frozenset((m,)))
    assert prime(m) in emb.conclusion
    assert check_bounded(emb, omega_system(1), 6).ok


def test_lemma_suite_is_well_formed():
    suite = lemma_suite()
    assert len(suite) == 12
    assert all(m[0] == "mu" for m in suite)
    assert {level(m) for m in suite} == {1, 2}
