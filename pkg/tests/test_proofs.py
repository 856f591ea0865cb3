"""Proof values: builders, laziness, families, and observation."""

from __future__ import annotations

import pytest

from mucut.errors import FuelExhausted, InternalInvariantError
from mucut.kernel import TOP, atom, natom, negate, prime
from mucut.proofs import (
    Axiom,
    Cut,
    DeltaFam,
    Nu,
    Omega,
    OmegaBarPrem,
    OmegaFam,
    Or,
    Proof,
    ax,
    axmu_node,
    and_node,
    box_node,
    canonical_probe,
    clo_node,
    cut_node,
    ind_node,
    is_cut_free_observed,
    make_node,
    nu_node,
    observation_errors,
    observation_rules,
    observation_sequents,
    observe,
    omega_node,
    omega_phi,
    omegabar_node,
    or_node,
    standard_admits,
    top_intro,
)
from mucut.sequents import Sequent, seq
from mucut.syntax import parse_formula as pf


def test_top_intro_shape():
    p = top_intro(())
    assert p.conclusion == seq(TOP)
    assert isinstance(p.rule, Or)
    leaf = p.premises[0]
    assert leaf.conclusion == seq(atom(0), natom(0))
    assert isinstance(leaf.rule, Axiom)
    q = top_intro((atom(5),))
    assert q.conclusion == seq(TOP, atom(5))


def test_omega_phi():
    m = pf("mu X . (p1 | X)")
    assert omega_phi(prime(m)) == prime(negate(m))


def test_ax_normalizes_negative_atoms():
    p = ax(seq(atom(1), natom(1)), natom(1))
    assert p.rule == Axiom(atom(1))


def test_builders_reject_bad_nodes():
    with pytest.raises(InternalInvariantError):
        ax(seq(atom(1)), atom(1))  # missing the negated twin
    with pytest.raises(InternalInvariantError):
        ax(seq(TOP, negate(TOP)), TOP)  # not atomic
    with pytest.raises(InternalInvariantError):
        axmu_node(seq(TOP, negate(TOP)), TOP)  # not mu-rooted
    with pytest.raises(InternalInvariantError):
        or_node(seq(atom(1)), atom(1), top_intro(()))  # not a disjunction
    with pytest.raises(InternalInvariantError):
        or_node(seq(atom(1)), TOP, top_intro(()))  # principal absent
    with pytest.raises(InternalInvariantError):
        clo_node(seq(TOP), TOP, top_intro(()))  # principal not mu-rooted
    m = pf("mu X . (p1 | X)")
    with pytest.raises(InternalInvariantError):
        # induction admits no context beyond ~mu, b
        ind_node(seq(negate(m), TOP, atom(2)), m, TOP, top_intro(()))
    with pytest.raises(InternalInvariantError):
        box_node(
            seq(("box", atom(1)), atom(2)),
            ("box", atom(1)),
            seq(atom(9)),  # side not inside the conclusion
            ax(seq(atom(1), natom(1)), atom(1)),
        )


def test_make_node_arity_and_containers():
    p = top_intro(())
    with pytest.raises(ValueError):
        make_node(seq(TOP), Or(TOP), (p, p))  # one premise expected
    with pytest.raises(ValueError):
        make_node(seq(TOP), Cut(TOP), (p,))  # two premises expected
    with pytest.raises(ValueError):
        make_node(seq(TOP), Or(TOP), ("nope",))
    n = pf("nu X . X")
    with pytest.raises(ValueError):
        make_node(seq(n), Nu(n), (p,))  # needs an omega-indexed family
    t = prime(pf("mu X . (p1 | X)"))
    with pytest.raises(ValueError):
        make_node(seq(omega_phi(t)), Omega(1, t), (p,))
    with pytest.raises(ValueError):
        make_node(seq(TOP), object(), ())


def test_proof_conclusion_must_be_sequent():
    with pytest.raises(InternalInvariantError):
        Proof.make((TOP,), Axiom(atom(0)), ())


def test_defer_is_lazy_and_checked():
    forced = []

    def thunk():
        forced.append(1)
        return top_intro(())

    p = Proof.defer(seq(TOP), thunk)
    assert not forced  # building does not force
    assert isinstance(p.rule, Or)
    assert forced == [1]
    p.premises
    assert forced == [1]  # memoized

    lying = Proof.defer(seq(atom(3)), top_intro)
    with pytest.raises(TypeError):
        lying.rule  # top_intro needs its argument; failure surfaces on force

    wrong = Proof.defer(seq(atom(3), negate(atom(3))), lambda: top_intro(()))
    with pytest.raises(InternalInvariantError):
        wrong.rule  # deferred conclusion must match the inner proof


def test_observe_finite_and_truncation():
    p = top_intro(())
    o = observe(p, 2)
    assert o.conclusion == seq(TOP)
    assert isinstance(o.rule, Or)
    assert len(o.children) == 1
    assert not o.truncated
    o0 = observe(p, 0)
    assert o0.truncated
    assert o0.children == ()
    assert observation_rules(o) == [p.rule, p.premises[0].rule]
    assert observation_sequents(o) == [seq(TOP), seq(atom(0), natom(0))]
    assert observation_errors(o) == []


def test_nu_node_sampling():
    n = pf("nu X . X")
    # nu X . X unfolds to approximant top at every index
    calls = []

    def fn(i):
        calls.append(i)
        return top_intro((n,))

    p = nu_node(seq(n), n, fn)
    o = observe(p, 2, samples=(0, 2))
    assert o.truncated
    assert o.sampled == (0, 2)
    assert len(o.children) == 2
    assert calls == [0, 2]
    # the family is memoized: sampling again does not recompute
    observe(p, 2, samples=(0, 2))
    assert calls == [0, 2]


def test_canonical_probe_and_standard_admits():
    t = prime(pf("mu X . (p1 | X)"))
    delta, witness = canonical_probe(t)
    assert delta == seq(TOP)
    assert witness.conclusion == seq(TOP, t)
    admits = standard_admits(1, t)
    assert admits(delta, witness)
    # wrong conclusion
    assert not admits(delta, top_intro(()))
    # delta must be h-positive: a level-1 nub formula is not 1-positive
    bad = Sequent((t,))
    assert not admits(bad, top_intro((t, t)))
    # witness must look cut-free
    c = cut_node(
        seq(TOP, t),
        TOP,
        top_intro((t, prime(TOP))),
        Proof.defer(seq(TOP, t, prime(negate(TOP))), lambda: 1 / 0 and None),
    )
    assert not admits(delta, c)
    assert not admits("delta", witness)


def test_omega_node_observation_and_errors():
    t = prime(pf("mu X . (p1 | X)"))
    phi = omega_phi(t)

    def fn(delta, w):
        return top_intro(delta.union((phi,)).difference((TOP,)))

    p = omega_node(seq(phi), 1, t, standard_admits(1, t), fn)
    o = observe(p, 3)
    assert o.truncated
    assert o.probes == (seq(TOP),)
    assert len(o.children) == 1
    assert observation_errors(o) == []
    # a family that raises becomes an error leaf...
    boom = omega_node(
        seq(phi), 1, t, standard_admits(1, t),
        lambda d, w: (_ for _ in ()).throw(ValueError("boom")),
    )
    ob = observe(boom, 3)
    assert observation_errors(ob) == ["boom"]
    # ...except fuel exhaustion, which propagates
    tired = omega_node(
        seq(phi), 1, t, standard_admits(1, t),
        lambda d, w: (_ for _ in ()).throw(FuelExhausted("empty")),
    )
    with pytest.raises(FuelExhausted):
        observe(tired, 3)
    # probe budget zero skips the family entirely
    oz = observe(boom, 3, probe_budget=0)
    assert oz.children == ()
    assert oz.probes == ()


def test_delta_fam_gate_and_memo():
    t = prime(pf("mu X . (p1 | X)"))
    calls = []
    fam = DeltaFam(
        standard_admits(1, t),
        lambda d, w: calls.append(1) or top_intro(()),
    )
    delta, witness = canonical_probe(t)
    fam(delta, witness)
    fam(delta, witness)
    assert len(calls) == 1
    with pytest.raises(InternalInvariantError):
        fam(Sequent((t,)), witness)  # rejected argument


def test_omegabar_first_premise():
    t = prime(pf("mu X . (p1 | X)"))
    first = top_intro((t,))
    p = omegabar_node(
        seq(TOP), 1, t, first, standard_admits(1, t),
        lambda d, w: top_intro(d.difference((TOP,))),
    )
    o = observe(p, 2)
    # first premise comes before the probe child
    assert o.children[0].conclusion == seq(TOP, t)
    assert len(o.children) == 2
    assert isinstance(p.premises, OmegaBarPrem)
    with pytest.raises(InternalInvariantError):
        omegabar_node(
            seq(TOP), 1, t, top_intro(()), standard_admits(1, t),
            lambda d, w: top_intro(()),
        )


def test_is_cut_free_observed():
    assert is_cut_free_observed(top_intro(()), 4)
    c = cut_node(seq(TOP), TOP, top_intro((negate(TOP),)),
                 top_intro((negate(TOP),)))
    # the cut premises here are nonsense, but the scan only looks for tags
    assert not is_cut_free_observed(c, 4)


def test_and_node_builder():
    a = ("and", atom(1), atom(2))
    p = and_node(
        seq(a, natom(1), natom(2)),
        a,
        ax(seq(atom(1), natom(1), natom(2)), atom(1)),
        ax(seq(atom(2), natom(1), natom(2)), atom(2)),
    )
    assert len(p.premises) == 2
    o = observe(p, 2)
    assert [type(r).__name__ for r in observation_rules(o)] == [
        "And", "Axiom", "Axiom"
    ]
