"""Proof trees with finite and countably branching rules.

A Proof pairs a strict conclusion (a Sequent) with a lazily computed node:
the rule tag plus its premises.  Laziness lets rules with infinitely many
premises (the omega-indexed nu rule and the sequent-indexed replacement
rules) exist as ordinary values: premises are functions, forced on demand
and memoized so repeated exploration is deterministic.

Observation is the finite window onto such a proof: explore to a depth
bound, sample omega premises at chosen indices, and feed replacement-rule
families a bounded number of probe arguments.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from mucut.errors import FuelExhausted, InternalInvariantError
from mucut.kernel import (
    TOP,
    atom,
    is_fully_primed,
    natom,
    negate,
    prime,
    substitute,
    validate,
)
from mucut.sequents import Sequent, is_k_positive

# ---------------------------------------------------------------------------
# rule tags


@dataclass(frozen=True)
class Axiom:
    """Gamma, P, ~P for atomic P (stored positive)."""

    p: tuple


@dataclass(frozen=True)
class AxiomMu:
    """Gamma, mu X . A, ~(mu X . A)."""

    mu: tuple


@dataclass(frozen=True)
class Or:
    principal: tuple


@dataclass(frozen=True)
class And:
    principal: tuple


@dataclass(frozen=True)
class Box:
    """<>Gamma, []A, Sigma from Gamma, A; side is the Sigma used."""

    principal: tuple
    side: Sequent


@dataclass(frozen=True)
class Clo:
    """Gamma, mu X . A from Gamma, A(mu X . A)."""

    principal: tuple


@dataclass(frozen=True)
class Ind:
    """~(mu X . A), B from ~A(B), B (no extra context)."""

    mu: tuple
    b: tuple


@dataclass(frozen=True)
class Cut:
    """Gamma from Gamma, A and Gamma, ~A (primed on both sides in the
    intermediate systems)."""

    formula: tuple


@dataclass(frozen=True)
class Nu:
    """Gamma, nu X . A from Gamma, A^i(top) for every i."""

    principal: tuple


@dataclass(frozen=True)
class Omega:
    """Gamma, phi from the family over (Delta, witness) pairs, where the
    target is a fully primed mu formula of level h and phi is the primed
    negation of the target."""

    h: int
    target: tuple


@dataclass(frozen=True)
class OmegaBar:
    """Gamma from Gamma, target and the same family as Omega."""

    h: int
    target: tuple


FINITE_TAGS = (Axiom, AxiomMu, Or, And, Box, Clo, Ind, Cut)


def omega_phi(target):
    """The formula introduced by an Omega rule with the given target."""
    return prime(negate(target))


# ---------------------------------------------------------------------------
# premise containers


class OmegaFam:
    """Omega-indexed premises: fn(i) -> Proof, memoized."""

    __slots__ = ("fn", "_memo")

    def __init__(self, fn):
        self.fn = fn
        self._memo = {}

    def __call__(self, i):
        if i not in self._memo:
            self._memo[i] = self.fn(i)
        return self._memo[i]


class DeltaFam:
    """Sequent-indexed premises: fn(delta, witness) -> Proof.

    admits(delta, witness) is the domain predicate, checked on every entry
    (boundedly for the witness); results are memoized per (delta, witness
    identity) with the witness pinned so memo keys stay valid.
    """

    __slots__ = ("admits", "fn", "_memo")

    def __init__(self, admits, fn):
        self.admits = admits
        self.fn = fn
        self._memo = {}

    def __call__(self, delta, witness):
        key = (delta, id(witness))
        hit = self._memo.get(key)
        if hit is not None:
            return hit[1]
        if not self.admits(delta, witness):
            raise InternalInvariantError(
                "replacement-rule family argument rejected: delta=%r" % (delta,)
            )
        out = self.fn(delta, witness)
        self._memo[key] = (witness, out)
        return out


class OmegaBarPrem:
    """First premise plus the replacement family."""

    __slots__ = ("first", "fam")

    def __init__(self, first, fam):
        self.first = first
        self.fam = fam


# ---------------------------------------------------------------------------
# proofs


class Proof:
    """Strict conclusion, lazy (rule, premises) node."""

    __slots__ = ("conclusion", "_node", "_thunk")

    def __init__(self, conclusion, node, thunk):
        if not isinstance(conclusion, Sequent):
            raise InternalInvariantError("proof conclusion must be a Sequent")
        self.conclusion = conclusion
        self._node = node
        self._thunk = thunk

    @staticmethod
    def make(conclusion, tag, premises):
        return Proof(conclusion, (tag, premises), None)

    @staticmethod
    def defer(conclusion, thunk):
        """A proof of the given conclusion computed on demand; thunk()
        must return a Proof with the same conclusion."""
        return Proof(conclusion, None, thunk)

    def _force(self):
        node = self._node
        if node is None:
            inner = self._thunk()
            if inner.conclusion != self.conclusion:
                raise InternalInvariantError(
                    "deferred proof concluded %r, expected %r"
                    % (inner.conclusion, self.conclusion)
                )
            node = inner._force()
            self._node = node
            self._thunk = None
        return node

    @property
    def rule(self):
        return self._force()[0]

    @property
    def premises(self):
        return self._force()[1]


def make_node(conclusion, tag, premises):
    """Build a proof node, validating tag/premise-container coherence."""
    if isinstance(tag, (Axiom, AxiomMu)):
        want = 0
    elif isinstance(tag, (Or, Box, Clo, Ind)):
        want = 1
    elif isinstance(tag, (And, Cut)):
        want = 2
    elif isinstance(tag, Nu):
        if not isinstance(premises, OmegaFam):
            raise ValueError("nu rule needs omega-indexed premises")
        return Proof.make(conclusion, tag, premises)
    elif isinstance(tag, Omega):
        if not isinstance(premises, DeltaFam):
            raise ValueError("omega rule needs a sequent-indexed family")
        return Proof.make(conclusion, tag, premises)
    elif isinstance(tag, OmegaBar):
        if not isinstance(premises, OmegaBarPrem):
            raise ValueError("omegabar rule needs a first premise plus family")
        return Proof.make(conclusion, tag, premises)
    else:
        raise ValueError("unknown rule tag: %r" % (tag,))
    premises = tuple(premises)
    if len(premises) != want:
        raise ValueError(
            "%s rule takes %d premise(s), got %d"
            % (type(tag).__name__.lower(), want, len(premises))
        )
    for p in premises:
        if not isinstance(p, Proof):
            raise ValueError("premises must be Proof values")
    return Proof.make(conclusion, tag, premises)


# ---------------------------------------------------------------------------
# node builders (cheap structural sanity only; legality is the checker's job)


def _require(cond, msg):
    if not cond:
        raise InternalInvariantError(msg)


def ax(conclusion, p):
    if p[0] == "natom":
        p = atom(p[1])
    _require(p[0] == "atom", "axiom formula must be atomic")
    _require(
        p in conclusion and negate(p) in conclusion,
        "axiom pair not in conclusion: %r" % (conclusion,),
    )
    return make_node(conclusion, Axiom(p), ())


def axmu_node(conclusion, mu):
    _require(mu[0] == "mu", "axmu formula must be mu-rooted")
    _require(
        mu in conclusion and negate(mu) in conclusion,
        "axmu pair not in conclusion: %r" % (conclusion,),
    )
    return make_node(conclusion, AxiomMu(mu), ())


def or_node(conclusion, principal, prem):
    _require(principal[0] == "or", "or principal must be a disjunction")
    _require(principal in conclusion, "or principal not in conclusion")
    return make_node(conclusion, Or(principal), (prem,))


def and_node(conclusion, principal, left, right):
    _require(principal[0] == "and", "and principal must be a conjunction")
    _require(principal in conclusion, "and principal not in conclusion")
    return make_node(conclusion, And(principal), (left, right))


def box_node(conclusion, principal, side, prem):
    _require(principal[0] == "box", "box principal must be box-rooted")
    _require(principal in conclusion, "box principal not in conclusion")
    _require(side.issubset(conclusion), "box side not in conclusion")
    return make_node(conclusion, Box(principal, side), (prem,))


def clo_node(conclusion, principal, prem):
    _require(principal[0] == "mu", "clo principal must be mu-rooted")
    _require(principal in conclusion, "clo principal not in conclusion")
    return make_node(conclusion, Clo(principal), (prem,))


def ind_node(conclusion, mu, b, prem):
    _require(mu[0] == "mu", "ind formula must be mu-rooted")
    unfold_b = substitute(mu[1], b)
    _require(
        conclusion == Sequent((negate(mu), b)),
        "ind conclusion must be exactly the negated mu with b",
    )
    _require(
        prem.conclusion == Sequent((negate(unfold_b), b)),
        "ind premise must be exactly ~A(B), B",
    )
    return make_node(conclusion, Ind(mu, b), (prem,))


def cut_node(conclusion, formula, left, right):
    validate(formula)
    return make_node(conclusion, Cut(formula), (left, right))


def nu_node(conclusion, principal, fn):
    _require(principal[0] == "nu", "nu principal must be nu-rooted")
    _require(principal in conclusion, "nu principal not in conclusion")
    return make_node(conclusion, Nu(principal), OmegaFam(fn))


def _check_replacement_target(h, target):
    _require(target[0] == "mu", "replacement target must be mu-rooted")
    _require(is_fully_primed(target), "replacement target must be fully primed")
    _require(h >= 1, "replacement level must be at least 1")


def omega_node(conclusion, h, target, admits, fn):
    _check_replacement_target(h, target)
    _require(omega_phi(target) in conclusion, "omega formula not in conclusion")
    return make_node(conclusion, Omega(h, target), DeltaFam(admits, fn))


def omegabar_node(conclusion, h, target, first, admits, fn):
    _check_replacement_target(h, target)
    _require(
        first.conclusion == conclusion.add(target),
        "omegabar first premise must be the conclusion plus the target",
    )
    return make_node(
        conclusion, OmegaBar(h, target), OmegaBarPrem(first, DeltaFam(admits, fn))
    )


# ---------------------------------------------------------------------------
# small standard derivations


def top_intro(extra):
    """A two-node proof of {top} union extra."""
    extra = Sequent(extra)
    p0 = atom(0)
    leaf = ax(extra.union((p0, natom(0))), p0)
    return or_node(extra.add(TOP), TOP, leaf)


def canonical_probe(target, k=None):
    """The standard probe for a replacement family targeting a fully
    primed mu formula: delta = {top} with its two-node witness.  The
    witness is cut-free and valid in every system, in particular in the
    index-(k-1) intermediate system for any ambient k."""
    delta = Sequent((TOP,))
    return delta, top_intro((target,))


ADMIT_DEPTH = 2


def standard_admits(h, target):
    """Domain predicate for replacement families: delta is h-positive and
    the witness concludes delta plus the target, cut-free as far as a
    bounded look can see (trusted beyond that bound)."""

    def admits(delta, witness):
        if not isinstance(delta, Sequent) or not isinstance(witness, Proof):
            return False
        if not is_k_positive(delta, h):
            return False
        if witness.conclusion != delta.add(target):
            return False
        return is_cut_free_observed(witness, ADMIT_DEPTH, (0,), 0)

    return admits


# ---------------------------------------------------------------------------
# observation


@dataclass(frozen=True)
class Observation:
    """A finite window onto a proof."""

    conclusion: object
    rule: object
    children: tuple = ()
    truncated: bool = False
    sampled: tuple = None
    probes: tuple = None
    error: str = None


def _error_leaf(exc):
    return Observation(
        conclusion=Sequent(), rule=None, truncated=False, error=str(exc)
    )


def observe(p, depth, samples=(0, 1, 2), probe_budget=1):
    """Explore p to the given depth.  Omega-indexed premises are sampled
    at the given indices; replacement families are fed up to probe_budget
    canonical probes.  Family evaluation failures become error leaves;
    fuel exhaustion propagates."""
    try:
        tag = p.rule
        prem = p.premises
    except FuelExhausted:
        raise
    except Exception as exc:  # noqa: BLE001 - failures become leaves
        return _error_leaf(exc)
    if isinstance(tag, FINITE_TAGS):
        if depth == 0:
            return Observation(p.conclusion, tag, (), truncated=bool(prem))
        kids = tuple(observe(q, depth - 1, samples, probe_budget) for q in prem)
        return Observation(p.conclusion, tag, kids, truncated=False)
    if isinstance(tag, Nu):
        idx = tuple(sorted(set(samples)))
        if depth == 0:
            return Observation(p.conclusion, tag, (), truncated=True, sampled=())
        kids = []
        for i in idx:
            try:
                q = prem(i)
            except FuelExhausted:
                raise
            except Exception as exc:  # noqa: BLE001
                kids.append(_error_leaf(exc))
                continue
            kids.append(observe(q, depth - 1, samples, probe_budget))
        return Observation(
            p.conclusion, tag, tuple(kids), truncated=True, sampled=idx
        )
    if isinstance(tag, (Omega, OmegaBar)):
        if depth == 0:
            return Observation(p.conclusion, tag, (), truncated=True, probes=())
        kids = []
        probes = []
        fam = prem.fam if isinstance(tag, OmegaBar) else prem
        if isinstance(tag, OmegaBar):
            kids.append(observe(prem.first, depth - 1, samples, probe_budget))
        if probe_budget >= 1:
            delta, witness = canonical_probe(tag.target)
            probes.append(delta)
            try:
                q = fam(delta, witness)
            except FuelExhausted:
                raise
            except Exception as exc:  # noqa: BLE001
                kids.append(_error_leaf(exc))
            else:
                kids.append(observe(q, depth - 1, samples, probe_budget))
        return Observation(
            p.conclusion, tag, tuple(kids), truncated=True, probes=tuple(probes)
        )
    raise InternalInvariantError("unknown rule tag in observation: %r" % (tag,))


def observation_rules(o):
    """All rule tags in an observation, preorder."""
    out = [o.rule]
    for c in o.children:
        out.extend(observation_rules(c))
    return out


def observation_sequents(o):
    """All conclusions in an observation, preorder (error leaves skipped)."""
    out = []
    if o.error is None:
        out.append(o.conclusion)
    for c in o.children:
        out.extend(observation_sequents(c))
    return out


def observation_errors(o):
    out = []
    if o.error is not None:
        out.append(o.error)
    for c in o.children:
        out.extend(observation_errors(c))
    return out


def is_cut_free_observed(p, depth, samples=(0, 1, 2), probe_budget=1):
    """True when no Cut node and no family failure shows up within the
    observation window."""
    o = observe(p, depth, samples, probe_budget)
    if observation_errors(o):
        return False
    return not any(isinstance(r, Cut) for r in observation_rules(o) if r)
