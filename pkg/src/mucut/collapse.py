"""Collapsing replacement rules out of a cut-free proof.

A bar-replacement node of level l concludes Gamma from a first premise
Gamma, t together with a family over (Delta, witness) pairs.  Feeding the
family Delta = Gamma with the node's own first premise as witness yields
another proof of Gamma that no longer starts with that node; repeating
this until the root is an ordinary rule, and recursing into premises,
removes every replacement rule above the chosen level.  Witnesses are
collapsed one level down first, so each family sees an argument from the
system below it.

collapse(p, 0) on a cut-free proof leaves only the plain infinitary
rules; to_sinf then checks exactly that and hands back the proof as a
plain infinitary derivation.
"""

from __future__ import annotations

from mucut.cutelim import DEFAULT_FUEL, eliminate
from mucut.checker import level_bound
from mucut.embed import embed
from mucut.errors import FuelExhausted, InternalInvariantError
from mucut.proofs import (
    And,
    Axiom,
    AxiomMu,
    Box,
    Clo,
    Cut,
    DeltaFam,
    Ind,
    Nu,
    Omega,
    OmegaBar,
    OmegaBarPrem,
    OmegaFam,
    Or,
    Proof,
    make_node,
)
from mucut.sequents import is_k_positive

_MAX_PLUGS = 100_000


def collapse(p, h=0):
    """Remove every replacement rule of level above h from the cut-free
    proof p, lazily, preserving the conclusion."""
    return Proof.defer(p.conclusion, lambda: _collapse_now(p, h))


def _collapse_now(p, h):
    d = p
    for _ in range(_MAX_PLUGS):
        tag = d.rule
        if not (isinstance(tag, OmegaBar) and tag.h > h):
            break
        prem = d.premises
        if not is_k_positive(d.conclusion, tag.h):
            raise InternalInvariantError(
                "conclusion is not positive enough to collapse the "
                "replacement rule"
            )
        witness = collapse(prem.first, tag.h - 1)
        d = prem.fam(d.conclusion, witness)
        if d.conclusion != p.conclusion:
            raise InternalInvariantError(
                "collapse plug changed the conclusion"
            )
    else:
        raise FuelExhausted("collapse plug budget exhausted")

    tag = d.rule
    prem = d.premises
    if isinstance(tag, Cut):
        raise InternalInvariantError("collapse requires a cut-free proof")
    if isinstance(tag, (Omega, OmegaBar)) and tag.h > h:
        raise InternalInvariantError(
            "replacement rule above the collapse level at the root"
        )
    if isinstance(tag, (Axiom, AxiomMu)):
        return d
    if isinstance(tag, (Or, And, Box, Clo, Ind)):
        kids = tuple(collapse(q, h) for q in prem)
        return make_node(d.conclusion, tag, kids)
    if isinstance(tag, Nu):
        return make_node(
            d.conclusion, tag, OmegaFam(lambda i: collapse(prem(i), h))
        )
    if isinstance(tag, Omega):
        return make_node(
            d.conclusion,
            tag,
            DeltaFam(prem.admits, lambda dl, w: collapse(prem(dl, w), h)),
        )
    if isinstance(tag, OmegaBar):
        fam = prem.fam
        return make_node(
            d.conclusion,
            tag,
            OmegaBarPrem(
                collapse(prem.first, h),
                DeltaFam(fam.admits, lambda dl, w: collapse(fam(dl, w), h)),
            ),
        )
    raise InternalInvariantError("unknown rule tag: %r" % (tag,))


_SINF_TAGS = (Axiom, Or, And, Box, Clo, Nu)


def to_sinf(p):
    """Read a fully collapsed proof as a plain infinitary derivation,
    validating every forced node: only the plain rules may appear and
    every conclusion must be a base-language sequent."""
    return Proof.defer(p.conclusion, lambda: _to_sinf_now(p))


def _to_sinf_now(p):
    tag = p.rule
    prem = p.premises
    if not isinstance(tag, _SINF_TAGS):
        raise InternalInvariantError(
            "rule outside the plain infinitary system: %r" % (tag,)
        )
    if not p.conclusion.is_l0():
        raise InternalInvariantError(
            "conclusion outside the base language: %r" % (p.conclusion,)
        )
    if isinstance(tag, Nu):
        return make_node(p.conclusion, tag, OmegaFam(lambda i: to_sinf(prem(i))))
    if isinstance(tag, Axiom):
        return p
    kids = tuple(to_sinf(q) for q in prem)
    return make_node(p.conclusion, tag, kids)


def pipeline(p, fuel=DEFAULT_FUEL, trace=None):
    """The full transformation: embed (no formulas primed), eliminate
    cuts, collapse the replacement rules, and read off the plain
    infinitary proof.  Returns the four stages, all lazy and sharing one
    fuel budget."""
    k = level_bound(p)
    embedded = embed(p, frozenset(), k)
    eliminated = eliminate(embedded, fuel=fuel, trace=trace)
    collapsed = collapse(eliminated, 0)
    return {
        "embedded": embedded,
        "eliminated": eliminated,
        "collapsed": collapsed,
        "sinf": to_sinf(collapsed),
    }
