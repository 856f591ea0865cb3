"""Built-in example proofs and formula suites.

Four small finitary proofs exercise every interesting embedding path:

  * ind-top: an induction step whose invariant is the trivial truth,
    proving the greatest fixed point of the identity operator;
  * top-cut: a cut on an atom between two truth introductions;
  * axmu: the fixed-point axiom on a guarded formula;
  * nested: a cut on a level-2 mu formula against an induction step whose
    invariant is the negated formula itself, so elimination has to
    replace rules at level 2 and, inside the synthesized families, at
    level 1.

The monotonicity suite is a fixed list of mu formulas of levels 1 and 2
used by the identity-law tests.
"""

from __future__ import annotations

from mucut.kernel import TOP, atom, natom, negate, or_
from mucut.proofs import (
    and_node,
    ax,
    axmu_node,
    cut_node,
    ind_node,
    or_node,
    top_intro,
)
from mucut.sequents import Sequent
from mucut.syntax import parse_formula


def example_ind_top():
    """Induction with the trivial invariant: concludes nu X . X, top."""
    mu = parse_formula("mu X . X")
    nu = negate(mu)
    ntop = negate(TOP)  # (~p0 & p0)
    leaf = ax(Sequent((atom(0), natom(0))), atom(0))
    left = or_node(Sequent((ntop[1], TOP)), TOP, leaf)
    right = or_node(Sequent((ntop[2], TOP)), TOP, leaf)
    body = and_node(Sequent((ntop, TOP)), ntop, left, right)
    return ind_node(Sequent((nu, TOP)), mu, TOP, body)


def example_top_cut():
    """A cut on the atom p1 between two truth introductions."""
    return cut_node(
        Sequent((TOP,)),
        atom(1),
        top_intro((atom(1),)),
        top_intro((natom(1),)),
    )


def example_axmu():
    """The fixed-point axiom on a guarded level-1 formula."""
    mu = parse_formula("mu X . (p1 | X)")
    return axmu_node(Sequent((mu, negate(mu))), mu)


def example_nested():
    """Nested cuts at two levels over a level-2 mu formula.

    With F1 = mu X . ((p3 & ~p3) | X) and C = mu X . (X & F1), one branch
    cuts on C (level 2) between the fixed-point axiom on C and an
    induction on C whose invariant is F1; the root then cuts on F1
    (level 1) against an induction on F1 whose invariant is ~C, closing
    through the axiom on C again.  Elimination replaces a rule at level 2
    for the inner cut and at level 1 for the root cut, so the recorded
    reduction steps witness replacements at both levels.
    """
    f1 = parse_formula("mu X . ((p3 & ~p3) | X)")
    c = ("mu", ("and", ("var",), f1))
    n = negate(c)
    nf1 = negate(f1)

    # Induction on C with invariant F1; the premise reduces the negated
    # unfolding ~(F1 & F1) = ~F1 | ~F1 to the fixed-point axiom on F1.
    axmu_f = axmu_node(Sequent((f1, nf1)), f1)
    fo3 = or_(nf1, nf1)
    orn3 = or_node(Sequent((fo3, f1)), fo3, axmu_f)
    ind3 = ind_node(Sequent((n, f1)), c, f1, orn3)

    # The level-2 cut on C.
    axmu_c = axmu_node(Sequent((n, f1, c)), c)
    cut_c = cut_node(Sequent((n, f1)), c, axmu_c, ind3)

    # Induction on F1 with invariant ~C; its premise decomposes the
    # negated unfolding (~p3 | p3) & C and closes with the axiom on C.
    to3 = or_(natom(3), atom(3))
    orl = or_node(
        Sequent((to3, n)), to3, ax(Sequent((natom(3), atom(3), n)), atom(3))
    )
    acf = ("and", to3, c)
    and_f = and_node(Sequent((acf, n)), acf, orl, axmu_node(Sequent((c, n)), c))
    ind_f = ind_node(Sequent((nf1, n)), f1, n, and_f)

    # The level-1 cut on F1.
    return cut_node(Sequent((n,)), f1, cut_c, ind_f)


CORPUS = {
    "ind-top": example_ind_top,
    "top-cut": example_top_cut,
    "axmu": example_axmu,
    "nested": example_nested,
}


LEMMA_SUITE = (
    "mu X . X",
    "mu X . (p1 | X)",
    "mu X . (p1 & X)",
    "mu X . [] X",
    "mu X . <> (p2 | X)",
    "mu X . (p1 | (p2 & X))",
    "mu X . ([] X | <> p1)",
    "mu X . (mu X . (p1 | X) | X)",
    "mu X . ([] mu X . (p1 & X) | X)",
    "mu X . (nu X . (p1 | X) & X)",
    "mu X . <> (nu X . (p2 & X) | X)",
    "mu X . (p1 | nu X . [] X)",
)


def lemma_suite():
    """The fixed identity/monotonicity formula suite, parsed."""
    return tuple(parse_formula(s) for s in LEMMA_SUITE)
