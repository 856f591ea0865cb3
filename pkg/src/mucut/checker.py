"""Proof checking.

check_finite validates a finite proof exhaustively; check_bounded
validates any proof as far as a finite observation window reaches,
feeding canonical probes to replacement-rule families.

Premise shapes are read liberally: a node concluding C with principal
phi may present its context as C or as C minus phi (sequents are sets,
so both describe the same judgment; the wider reading is absorbed by
admissible weakening).  The box rule instead follows its recorded side
sequent exactly, and the induction rule allows no context at all.
"""

from __future__ import annotations

from dataclasses import dataclass

from mucut.errors import FuelExhausted
from mucut.kernel import (
    TOP,
    is_fully_primed,
    is_l0,
    iterate,
    level,
    max_nubar_level,
    negate,
    prime,
    substitute,
)
from mucut.proofs import (
    And,
    Axiom,
    AxiomMu,
    Box,
    Clo,
    Cut,
    Ind,
    Nu,
    Omega,
    OmegaBar,
    Or,
    canonical_probe,
    omega_phi,
)
from mucut.sequents import Sequent, is_k_positive
from mucut.syntax import print_form

SYSTEM_S = ("s",)
SYSTEM_SINF = ("sinf",)


def omega_system(k):
    if k < 0:
        raise ValueError("system index must be at least 0")
    return ("omega", k)


def system_name(system):
    if system == SYSTEM_S:
        return "s"
    if system == SYSTEM_SINF:
        return "sinf"
    if system[0] == "omega":
        return "omega:%d" % system[1]
    raise ValueError("unknown system: %r" % (system,))


def parse_system(text):
    t = text.strip().lower()
    if t == "s":
        return SYSTEM_S
    if t == "sinf":
        return SYSTEM_SINF
    for prefix in ("omega:", "omega-k="):
        if t.startswith(prefix):
            return omega_system(int(t[len(prefix) :]))
    raise ValueError("unknown system %r (want s, sinf, or omega:K)" % (text,))


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    violations: tuple
    nodes_checked: int
    truncation_points: int


class _State:
    __slots__ = ("violations", "nodes", "truncs", "samples", "probe_budget")

    def __init__(self, samples, probe_budget):
        self.violations = []
        self.nodes = 0
        self.truncs = 0
        self.samples = tuple(sorted(set(samples)))
        self.probe_budget = probe_budget

    def flag(self, path, msg):
        self.violations.append((path, msg))

    def report(self):
        return CheckReport(
            ok=not self.violations,
            violations=tuple(self.violations),
            nodes_checked=self.nodes,
            truncation_points=self.truncs,
        )


def _fmt(f):
    return print_form(f)


_S_TAGS = (Axiom, AxiomMu, Or, And, Box, Clo, Ind, Cut)
_SINF_TAGS = (Axiom, Or, And, Box, Clo, Nu)
_OMEGA_TAGS = (Axiom, Or, And, Box, Clo, Nu, Cut, Omega, OmegaBar)


def _tag_allowed(tag, system):
    if system == SYSTEM_S:
        return isinstance(tag, _S_TAGS)
    if system == SYSTEM_SINF:
        return isinstance(tag, _SINF_TAGS)
    if not isinstance(tag, _OMEGA_TAGS):
        return False
    if isinstance(tag, (Omega, OmegaBar)) and system[1] < 1:
        return False
    return True


def _one_premise_shapes(conclusion, principal, parts):
    """Accepted premise conclusions for a one-step decomposition rule."""
    strict = conclusion.without(principal).union(parts)
    kept = conclusion.union(parts)
    return (strict, kept)


def _check_shapes(state, path, got, shapes, what):
    if got not in shapes:
        state.flag(
            path,
            "%s concludes %r, expected one of %s"
            % (what, got, " / ".join(repr(s) for s in shapes)),
        )
        return False
    return True


def _node_checks(state, path, p, tag, system):
    """Conclusion-level checks; returns premise expectations for the walk."""
    c = p.conclusion
    if not _tag_allowed(tag, system):
        state.flag(
            path,
            "rule %s is not part of system %s"
            % (type(tag).__name__.lower(), system_name(system)),
        )
        return
    if system in (SYSTEM_S, SYSTEM_SINF) and not c.is_l0():
        state.flag(path, "conclusion uses the primed language outside omega systems")

    if isinstance(tag, Axiom):
        f = tag.p
        if f[0] != "atom":
            state.flag(path, "axiom formula %s is not atomic" % _fmt(f))
        elif f not in c or negate(f) not in c:
            state.flag(
                path,
                "axiom pair %s, %s not in conclusion" % (_fmt(f), _fmt(negate(f))),
            )
    elif isinstance(tag, AxiomMu):
        m = tag.mu
        if m[0] != "mu":
            state.flag(path, "axmu formula %s is not mu-rooted" % _fmt(m))
        elif m not in c or negate(m) not in c:
            state.flag(
                path,
                "axmu pair %s, %s not in conclusion" % (_fmt(m), _fmt(negate(m))),
            )
    elif isinstance(tag, (Or, And)):
        f = tag.principal
        want = "or" if isinstance(tag, Or) else "and"
        if f[0] != want:
            state.flag(path, "principal %s is not %s-rooted" % (_fmt(f), want))
        elif f not in c:
            state.flag(path, "principal %s not in conclusion" % _fmt(f))
    elif isinstance(tag, Box):
        f = tag.principal
        if f[0] != "box":
            state.flag(path, "principal %s is not box-rooted" % _fmt(f))
        elif f not in c:
            state.flag(path, "principal %s not in conclusion" % _fmt(f))
        if not tag.side.issubset(c):
            state.flag(path, "box side sequent is not part of the conclusion")
    elif isinstance(tag, Clo):
        f = tag.principal
        if f[0] != "mu":
            state.flag(path, "clo principal %s is not mu-rooted" % _fmt(f))
        elif f not in c:
            state.flag(path, "clo principal %s not in conclusion" % _fmt(f))
    elif isinstance(tag, Ind):
        m = tag.mu
        if m[0] != "mu":
            state.flag(path, "ind formula %s is not mu-rooted" % _fmt(m))
        elif c != Sequent((negate(m), tag.b)):
            state.flag(
                path,
                "ind admits no context: conclusion must be exactly %s, %s"
                % (_fmt(negate(m)), _fmt(tag.b)),
            )
    elif isinstance(tag, Cut):
        f = tag.formula
        if not is_l0(f):
            state.flag(path, "cut formula %s is not in the base language" % _fmt(f))
        if system[0] == "omega" and level(f) > system[1]:
            state.flag(
                path,
                "cut formula %s has level %d, above the system bound %d"
                % (_fmt(f), level(f), system[1]),
            )
    elif isinstance(tag, Nu):
        f = tag.principal
        if f[0] != "nu":
            state.flag(path, "nu principal %s is not nu-rooted" % _fmt(f))
        elif f not in c:
            state.flag(path, "nu principal %s not in conclusion" % _fmt(f))
    elif isinstance(tag, (Omega, OmegaBar)):
        t = tag.target
        if t[0] != "mu" or not is_fully_primed(t):
            state.flag(
                path, "replacement target %s must be a fully primed mu formula"
                % _fmt(t)
            )
        if level(t) != tag.h:
            state.flag(
                path,
                "replacement target %s has level %d, rule says %d"
                % (_fmt(t), level(t), tag.h),
            )
        if not 1 <= tag.h <= system[1]:
            state.flag(
                path,
                "replacement level %d outside 1..%d" % (tag.h, system[1]),
            )
        if isinstance(tag, Omega) and omega_phi(t) not in c:
            state.flag(
                path,
                "introduced formula %s not in conclusion" % _fmt(omega_phi(t)),
            )


def _finite_premise_shapes(p, tag):
    """Accepted conclusion tuples for the finite premises of tag, or None
    when the premise shape is not positional (box handled separately)."""
    c = p.conclusion
    if isinstance(tag, Or):
        f = tag.principal
        return (_one_premise_shapes(c, f, (f[1], f[2])),)
    if isinstance(tag, And):
        f = tag.principal
        return (
            _one_premise_shapes(c, f, (f[1],)),
            _one_premise_shapes(c, f, (f[2],)),
        )
    if isinstance(tag, Clo):
        f = tag.principal
        return (_one_premise_shapes(c, f, (substitute(f[1], f),)),)
    if isinstance(tag, Ind):
        return ((Sequent((negate(substitute(tag.mu[1], tag.b)), tag.b)),),)
    return None


def _check_box_premise(state, path, p, tag, system, q):
    a = tag.principal[1]
    if a not in q.conclusion:
        state.flag(path, "box premise lacks the body %s" % _fmt(a))
        return
    for gam in (q.conclusion.without(a), q.conclusion):
        if p.conclusion == gam.dia().union((tag.principal,)).union(tag.side):
            return
    state.flag(
        path,
        "box conclusion %r does not match the diamond image of its premise %r"
        % (p.conclusion, q.conclusion),
    )


def _check_cut_premises(state, path, p, tag, system, left, right):
    f = tag.formula
    if system[0] == "omega":
        pair = (prime(f), prime(negate(f)))
    else:
        pair = (f, negate(f))
    want = {p.conclusion.add(pair[0]), p.conclusion.add(pair[1])}
    got = {left.conclusion, right.conclusion}
    if got != want:
        state.flag(
            path,
            "cut premises conclude %s, expected %s (either order)"
            % (sorted(map(repr, got)), sorted(map(repr, want))),
        )


def _walk(state, path, p, system, depth):
    if depth == 0:
        state.truncs += 1
        return
    try:
        tag = p.rule
        prem = p.premises
    except FuelExhausted:
        raise
    except Exception as exc:  # noqa: BLE001
        state.flag(path, "node evaluation failed: %s" % exc)
        return
    state.nodes += 1
    try:
        _node_checks(state, path, p, tag, system)
    except FuelExhausted:
        raise
    except Exception as exc:  # noqa: BLE001 - malformed tags must reject
        state.flag(path, "malformed rule tag: %s" % exc)
        return

    if isinstance(tag, (Axiom, AxiomMu)):
        return
    if isinstance(tag, Box):
        try:
            _check_box_premise(state, path, p, tag, system, prem[0])
        except FuelExhausted:
            raise
        except Exception as exc:  # noqa: BLE001
            state.flag(path, "malformed box rule: %s" % exc)
        _walk(state, path + ".0", prem[0], system, depth - 1)
        return
    if isinstance(tag, Cut):
        try:
            _check_cut_premises(state, path, p, tag, system, prem[0], prem[1])
        except FuelExhausted:
            raise
        except Exception as exc:  # noqa: BLE001
            state.flag(path, "malformed cut rule: %s" % exc)
        for j, q in enumerate(prem):
            _walk(state, "%s.%d" % (path, j), q, system, depth - 1)
        return
    if isinstance(tag, (Or, And, Clo, Ind)):
        try:
            shapes = _finite_premise_shapes(p, tag)
        except FuelExhausted:
            raise
        except Exception as exc:  # noqa: BLE001 - undefined premise shapes
            state.flag(path, "premise shapes undefined: %s" % exc)
            shapes = None
        for j, q in enumerate(prem):
            if shapes is not None and j < len(shapes):
                _check_shapes(
                    state, path, q.conclusion, shapes[j], "premise %d" % j
                )
            _walk(state, "%s.%d" % (path, j), q, system, depth - 1)
        return
    if isinstance(tag, Nu):
        state.truncs += 1
        body = tag.principal[1]
        for i in state.samples:
            cpath = "%s.w%d" % (path, i)
            try:
                q = prem(i)
            except FuelExhausted:
                raise
            except Exception as exc:  # noqa: BLE001
                state.flag(cpath, "premise evaluation failed: %s" % exc)
                continue
            shapes = _one_premise_shapes(
                p.conclusion, tag.principal, (iterate(body, TOP, i),)
            )
            _check_shapes(state, cpath, q.conclusion, shapes, "premise")
            _walk(state, cpath, q, system, depth - 1)
        return
    if isinstance(tag, (Omega, OmegaBar)):
        state.truncs += 1
        if isinstance(tag, OmegaBar):
            fam = prem.fam
            first = prem.first
            want = p.conclusion.add(tag.target)
            if first.conclusion != want:
                state.flag(
                    path,
                    "first premise concludes %r, expected %r"
                    % (first.conclusion, want),
                )
            _walk(state, path + ".first", first, system, depth - 1)
        else:
            fam = prem
        if state.probe_budget >= 1:
            delta, witness = canonical_probe(tag.target)
            cpath = path + ".p0"
            if not fam.admits(delta, witness):
                state.flag(cpath, "family rejected the canonical probe")
                return
            try:
                q = fam(delta, witness)
            except FuelExhausted:
                raise
            except Exception as exc:  # noqa: BLE001
                state.flag(cpath, "family evaluation failed: %s" % exc)
                return
            if isinstance(tag, Omega):
                shapes = (
                    delta.union(p.conclusion.without(omega_phi(tag.target))),
                    delta.union(p.conclusion),
                )
            else:
                shapes = (delta.union(p.conclusion),)
            _check_shapes(state, cpath, q.conclusion, shapes, "family output")
            _walk(state, cpath, q, system, depth - 1)
        return
    state.flag(path, "unknown rule tag: %r" % (tag,))


def check_bounded(p, system, depth, samples=(0, 1, 2), probe_budget=1):
    """Check every node reachable within the observation window."""
    state = _State(samples, probe_budget)
    _walk(state, "root", p, system, depth)
    return state.report()


def _walk_finite(state, path, p, system):
    try:
        tag = p.rule
    except Exception as exc:  # noqa: BLE001
        state.flag(path, "node evaluation failed: %s" % exc)
        return
    if isinstance(tag, (Nu, Omega, OmegaBar)):
        state.nodes += 1
        state.flag(
            path,
            "rule %s has infinitely many premises and cannot occur in a "
            "finite proof" % type(tag).__name__.lower(),
        )
        return
    _walk(state, path, p, system, 1)
    for j, q in enumerate(p.premises):
        _walk_finite(state, "%s.%d" % (path, j), q, system)


def check_finite(p, system=SYSTEM_S):
    """Exhaustively check a finite proof (no sampling, no truncation)."""
    state = _State((), 0)
    _walk_finite(state, "root", p, system)
    state.truncs = 0
    return state.report()


def level_bound(p):
    """Max formula level over all sequents of a finite proof: the index of
    the intermediate system its embedding lands in."""
    best = p.conclusion.level()
    for q in p.premises:
        best = max(best, level_bound(q))
    return best


# ---------------------------------------------------------------------------
# approximant closure


def approximant_closure(s, max_index):
    """Least set containing the sequent's formulas, closed under immediate
    subformulas, mu unfolding, and nu approximants up to max_index."""
    todo = list(s)
    seen = set(todo)
    while todo:
        f = todo.pop()
        t = f[0]
        if t in ("and", "or"):
            new = (f[1], f[2])
        elif t in ("box", "dia"):
            new = (f[1],)
        elif t == "mu":
            new = (substitute(f[1], f),)
        elif t == "nu":
            new = tuple(iterate(f[1], TOP, i) for i in range(max_index + 1))
        else:
            new = ()
        for g in new:
            if g not in seen:
                seen.add(g)
                todo.append(g)
    return seen


def subformula_report(p, depth, samples=(0, 1, 2), probe_budget=1):
    """Verify every observed sequent stays inside the approximant closure
    of the endsequent and mentions no nub anywhere."""
    from mucut.proofs import observe

    max_index = max(samples, default=0)
    closure = approximant_closure(p.conclusion, max_index)
    o = observe(p, depth, samples, probe_budget)
    violations = []
    nodes = 0

    def scan(ob, path):
        nonlocal nodes
        if ob.error is not None:
            violations.append((path, "family evaluation failed: %s" % ob.error))
            return
        nodes += 1
        for f in ob.conclusion:
            if max_nubar_level(f) >= 0:
                violations.append(
                    (path, "formula %s mentions nub" % _fmt(f))
                )
            if f not in closure:
                violations.append(
                    (path, "formula %s outside the approximant closure" % _fmt(f))
                )
        for j, child in enumerate(ob.children):
            scan(child, "%s.%d" % (path, j))

    scan(o, "root")
    return CheckReport(
        ok=not violations,
        violations=tuple(violations),
        nodes_checked=nodes,
        truncation_points=0,
    )
