"""Embedding finite proofs into the intermediate systems.

embed turns a finite proof (with cuts and induction) into a proof of the
same sequent, with chosen formulas primed, in the intermediate system
whose index bounds every formula level of the input.  The pieces:

  * identity laws: cut-free derivations of A, ~A for mu formulas, in the
    plain form (a nu rule whose approximant premises grow by closure
    steps) and the half-primed form (a replacement rule whose family
    un-primes each witness);
  * monotonicity: from B, C conclude (~A)(B), A(C), by recursion on the
    operator A, with a primed variant targeting A'(C');
  * un-priming: rewrite a cut-free derivation of Gamma, A' into one of
    Gamma, A (the replacement-rule case rebuilds the plain nu rule from
    the family, synthesizing the witness chain it feeds);
  * context substitution: rewrite a cut-free derivation whose conclusion
    mentions a primed mu formula t so that chosen occurrences become B or
    B', cutting against the two induction-premise embeddings whenever a
    closure step unfolds t itself;
  * induction conversion: package context substitution as the family of a
    replacement rule, turning an induction step into an Omega inference.

Selections are sets of conclusion formulas to prime; they propagate to
premises part-dominantly (a principal's selection decides its immediate
parts) and every premise is fitted by weakening, so incidental formula
collisions never block the construction.
"""

from __future__ import annotations

from mucut.checker import level_bound
from mucut.cutelim import fit, weaken
from mucut.errors import InternalInvariantError
from mucut.kernel import (
    TOP,
    box as boxf,
    has_free_var,
    is_fully_primed,
    is_l0,
    iterate,
    level,
    negate,
    occurs,
    prime,
    replace_subterm,
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
    Proof,
    and_node,
    ax,
    box_node,
    clo_node,
    cut_node,
    nu_node,
    omega_node,
    omega_phi,
    omegabar_node,
    or_node,
    standard_admits,
    top_intro,
)
from mucut.sequents import Sequent


def _require(cond, msg):
    if not cond:
        raise InternalInvariantError(msg)


def _fit_sk(p, strict, kept):
    """Fit p to the strict premise reading when possible, otherwise to the
    context-keeping reading."""
    if p.conclusion.issubset(strict):
        return fit(p, strict)
    return fit(p, kept)


# ---------------------------------------------------------------------------
# selections


def apply_sigma(s, sel):
    """The sequent with the selected formulas primed."""
    sel = frozenset(sel)
    stray = sel - frozenset(s)
    if stray:
        raise ValueError("selection outside the sequent: %r" % (sorted(stray),))
    return Sequent(prime(f) if f in sel else f for f in s)


# ---------------------------------------------------------------------------
# identity laws


def identity_mu(mu, k):
    """Cut-free derivation of mu, ~mu (mu closed and mu-rooted, its level
    within k): the nu rule on ~mu, each approximant premise obtained from
    the previous one by monotonicity plus a closure step."""
    _require(mu[0] == "mu", "identity law needs a mu-rooted formula")
    _require(not has_free_var(mu), "identity law needs a closed formula")
    _require(level(mu) <= k, "identity law level exceeds the system index")
    n = negate(mu)
    nbody = n[1]
    concl = Sequent((mu, n))
    chain = {}

    def step(i):
        if i not in chain:
            if i == 0:
                chain[i] = top_intro((mu,))
            else:
                prev = step(i - 1)
                mono = monotone(prev, nbody, mu, iterate(nbody, TOP, i - 1), k)
                chain[i] = clo_node(
                    Sequent((mu, iterate(nbody, TOP, i))), mu, mono
                )
        return chain[i]

    def fn(i):
        it_i = iterate(nbody, TOP, i)
        return _fit_sk(step(i), Sequent((mu, it_i)), concl.add(it_i))

    return nu_node(concl, n, fn)


def identity_mu_primed(mu, k):
    """Cut-free derivation of mu, (~mu)' by the replacement rule on mu's
    prime: each family output un-primes its witness.  When mu is already
    fully primed the witness is returned as is."""
    _require(mu[0] == "mu", "identity law needs a mu-rooted formula")
    _require(not has_free_var(mu), "identity law needs a closed formula")
    h = level(mu)
    _require(1 <= h <= k, "replacement level out of range for the system")
    t = prime(mu)
    concl = Sequent((mu, omega_phi(t)))

    def fn(delta, w):
        out = deprime(w, mu, k - 1)
        return _fit_sk(out, delta.add(mu), delta.union(concl))

    return omega_node(concl, h, t, standard_admits(h, t), fn)


# ---------------------------------------------------------------------------
# monotonicity


def monotone(d, a, b, c, k):
    """From d proving b, c: a derivation of (~a)(b), a(c), by recursion on
    the operator a (one free variable at most; closed binder subterms are
    discharged by the identity laws)."""
    _require(
        d.conclusion == Sequent((b, c)),
        "monotonicity input must conclude exactly the two formulas",
    )
    out = Sequent((substitute(negate(a), b), substitute(a, c)))
    t = a[0]
    if t == "var":
        return d
    if t == "atom" or t == "natom":
        return ax(out, a if t == "atom" else negate(a))
    if t == "and" or t == "or":
        g, e = a[1], a[2]
        ih1 = monotone(d, g, b, c, k)
        ih2 = monotone(d, e, b, c, k)
        ng_b = substitute(negate(g), b)
        ne_b = substitute(negate(e), b)
        g_c = substitute(g, c)
        e_c = substitute(e, c)
        na_b = substitute(negate(a), b)
        a_c = substitute(a, c)
        if t == "and":
            o1 = or_node(Sequent((na_b, g_c)), na_b, weaken(ih1, (ne_b,)))
            o2 = or_node(Sequent((na_b, e_c)), na_b, weaken(ih2, (ng_b,)))
            return and_node(out, a_c, o1, o2)
        s1 = or_node(Sequent((ng_b, a_c)), a_c, weaken(ih1, (e_c,)))
        s2 = or_node(Sequent((ne_b, a_c)), a_c, weaken(ih2, (g_c,)))
        return and_node(out, na_b, s1, s2)
    if t == "box" or t == "dia":
        ih = monotone(d, a[1], b, c, k)
        if t == "box":
            principal = substitute(a, c)
        else:
            principal = substitute(negate(a), b)
        return box_node(out, principal, Sequent(), ih)
    if t == "mu":
        _require(not has_free_var(a), "binder subterm must be closed")
        return identity_mu(a, k)
    if t == "nu":
        _require(not has_free_var(a), "binder subterm must be closed")
        return identity_mu(negate(a), k)
    if t == "nub":
        _require(not has_free_var(a), "binder subterm must be closed")
        _require(
            is_fully_primed(a),
            "annotated binder subterm must be fully primed",
        )
        return identity_mu_primed(negate(a), k)
    raise InternalInvariantError("unknown operator tag: %r" % (t,))


def monotone_primed(d, a, b, c, k):
    """From d proving b, c': a derivation of (~a)(b), a'(c'), the primed
    twin of monotonicity."""
    _require(
        d.conclusion == Sequent((b, prime(c))),
        "primed monotonicity input must conclude the formula and the prime",
    )
    out = Sequent((substitute(negate(a), b), prime(substitute(a, c))))
    t = a[0]
    if t == "var":
        return d
    if t == "atom" or t == "natom":
        return ax(out, a if t == "atom" else negate(a))
    if t == "and" or t == "or":
        g, e = a[1], a[2]
        ih1 = monotone_primed(d, g, b, c, k)
        ih2 = monotone_primed(d, e, b, c, k)
        ng_b = substitute(negate(g), b)
        ne_b = substitute(negate(e), b)
        pg_c = prime(substitute(g, c))
        pe_c = prime(substitute(e, c))
        na_b = substitute(negate(a), b)
        pa_c = prime(substitute(a, c))
        if t == "and":
            o1 = or_node(Sequent((na_b, pg_c)), na_b, weaken(ih1, (ne_b,)))
            o2 = or_node(Sequent((na_b, pe_c)), na_b, weaken(ih2, (ng_b,)))
            return and_node(out, pa_c, o1, o2)
        s1 = or_node(Sequent((ng_b, pa_c)), pa_c, weaken(ih1, (pe_c,)))
        s2 = or_node(Sequent((ne_b, pa_c)), pa_c, weaken(ih2, (pg_c,)))
        return and_node(out, na_b, s1, s2)
    if t == "box" or t == "dia":
        ih = monotone_primed(d, a[1], b, c, k)
        if t == "box":
            principal = prime(substitute(a, c))
        else:
            principal = substitute(negate(a), b)
        return box_node(out, principal, Sequent(), ih)
    if t == "mu":
        _require(not has_free_var(a), "binder subterm must be closed")
        return identity_mu(prime(a), k)
    if t == "nu" or t == "nub":
        _require(not has_free_var(a), "binder subterm must be closed")
        return identity_mu_primed(negate(a), k)
    raise InternalInvariantError("unknown operator tag: %r" % (t,))


# ---------------------------------------------------------------------------
# un-priming


def deprime(d, a, k):
    """Rewrite the cut-free derivation d, whose conclusion may contain the
    prime of a, into one concluding with a instead."""
    ap = prime(a)
    if ap == a or ap not in d.conclusion:
        return d
    _require(is_l0(a), "un-priming target must be a base-language formula")
    new_c = d.conclusion.without(ap).add(a)
    return Proof.defer(new_c, lambda: _deprime_now(d, a, ap, new_c, k))


def _deprime_now(d, a, ap, new_c, k):
    tag = d.rule
    prem = d.premises

    if isinstance(tag, Axiom):
        return ax(new_c, tag.p)
    if isinstance(tag, (AxiomMu, Ind)):
        raise InternalInvariantError(
            "finitary-only rule inside an intermediate-system derivation"
        )
    if isinstance(tag, Cut):
        raise InternalInvariantError("un-priming requires a cut-free derivation")

    if isinstance(tag, Or) and tag.principal == ap:
        g, e = a[1], a[2]
        s = deprime(deprime(deprime(prem[0], g, k), e, k), a, k)
        p2 = _fit_sk(s, new_c.without(a).union((g, e)), new_c.union((g, e)))
        return or_node(new_c, a, p2)
    if isinstance(tag, And) and tag.principal == ap:
        g, e = a[1], a[2]
        s1 = deprime(deprime(prem[0], g, k), a, k)
        s2 = deprime(deprime(prem[1], e, k), a, k)
        return and_node(
            new_c,
            a,
            _fit_sk(s1, new_c.without(a).add(g), new_c.add(g)),
            _fit_sk(s2, new_c.without(a).add(e), new_c.add(e)),
        )
    if isinstance(tag, Clo) and tag.principal == ap:
        u = substitute(a[1], a)
        s = deprime(deprime(prem[0], u, k), a, k)
        p2 = _fit_sk(s, new_c.without(a).add(u), new_c.add(u))
        return clo_node(new_c, a, p2)
    if isinstance(tag, Box):
        p1 = prem[0]
        if ap == tag.principal:
            s = deprime(p1, a[1], k)
            principal = a
        elif ap[0] == "dia" and ap[1] in p1.conclusion:
            s = deprime(p1, a[1], k)
            principal = tag.principal
        else:
            s = p1
            principal = tag.principal
        packet = s.conclusion.without(principal[1]).dia().add(principal)
        _require(packet.issubset(new_c), "box packet escapes after un-priming")
        return box_node(new_c, principal, new_c.difference(packet), s)

    if isinstance(tag, Omega) and omega_phi(tag.target) == ap:
        _require(a[0] == "nu", "replacement formula must prime a nu formula")
        _require(
            tag.target == prime(negate(a)),
            "replacement target disagrees with the un-priming target",
        )
        a0 = a[1]
        t2 = tag.target
        fam = prem
        gamma = d.conclusion.without(ap)
        chain = {}

        def wit(j):
            if j not in chain:
                if j == 0:
                    chain[j] = top_intro((t2,))
                else:
                    mono = monotone_primed(
                        wit(j - 1),
                        negate(a0),
                        iterate(a0, TOP, j - 1),
                        negate(a),
                        k - 1,
                    )
                    chain[j] = clo_node(
                        Sequent((iterate(a0, TOP, j), t2)), t2, mono
                    )
            return chain[j]

        def fn(i):
            it_i = iterate(a0, TOP, i)
            if i == 0:
                out = top_intro(gamma)
            else:
                out = deprime(fam(Sequent((it_i,)), wit(i)), a, k)
            return _fit_sk(out, new_c.without(a).add(it_i), new_c.add(it_i))

        return nu_node(new_c, a, fn)

    # context cases: the primed element rides along into the premises
    if isinstance(tag, Or):
        phi = tag.principal
        parts = (phi[1], phi[2])
        s = deprime(prem[0], a, k)
        p2 = _fit_sk(s, new_c.without(phi).union(parts), new_c.union(parts))
        return or_node(new_c, phi, p2)
    if isinstance(tag, And):
        phi = tag.principal
        s1 = deprime(prem[0], a, k)
        s2 = deprime(prem[1], a, k)
        return and_node(
            new_c,
            phi,
            _fit_sk(s1, new_c.without(phi).add(phi[1]), new_c.add(phi[1])),
            _fit_sk(s2, new_c.without(phi).add(phi[2]), new_c.add(phi[2])),
        )
    if isinstance(tag, Clo):
        phi = tag.principal
        u = substitute(phi[1], phi)
        s = deprime(prem[0], a, k)
        p2 = _fit_sk(s, new_c.without(phi).add(u), new_c.add(u))
        return clo_node(new_c, phi, p2)
    if isinstance(tag, Nu):
        phi = tag.principal

        def fn(i, phi=phi):
            it_i = iterate(phi[1], TOP, i)
            s = deprime(prem(i), a, k)
            return _fit_sk(s, new_c.without(phi).add(it_i), new_c.add(it_i))

        return nu_node(new_c, phi, fn)
    if isinstance(tag, Omega):
        phi2 = omega_phi(tag.target)

        def fn(dl, w):
            s = deprime(prem(dl, w), a, k)
            return _fit_sk(s, dl.union(new_c.without(phi2)), dl.union(new_c))

        return omega_node(new_c, tag.h, tag.target, prem.admits, fn)
    if isinstance(tag, OmegaBar):
        fam = prem.fam
        first = fit(deprime(prem.first, a, k), new_c.add(tag.target))

        def fn(dl, w):
            return fit(deprime(fam(dl, w), a, k), dl.union(new_c))

        return omegabar_node(new_c, tag.h, tag.target, first, fam.admits, fn)
    raise InternalInvariantError("unknown rule tag: %r" % (tag,))


# ---------------------------------------------------------------------------
# context substitution

MODE_DELTA = "d"
MODE_S1 = "s1"
MODE_S2 = "s2"
_D = frozenset((MODE_DELTA,))
_SIGS = frozenset((MODE_S1, MODE_S2))


def _eff(modes, f, t):
    """Effective mode set: substitution modes only matter on formulas that
    actually contain the target."""
    if not occurs(f, t):
        return _D
    return modes


def _images(f, modes, t, b):
    out = []
    if MODE_DELTA in modes:
        out.append(f)
    if MODE_S1 in modes:
        out.append(replace_subterm(f, t, b))
    if MODE_S2 in modes:
        out.append(replace_subterm(f, t, prime(b)))
    return tuple(out)


def _merge(*mode_sets):
    acc = frozenset()
    for m in mode_sets:
        acc = acc | m
    return acc if acc else _D


class _Subst:
    """One context-substitution pass: replace chosen occurrences of the
    primed mu formula t (per-formula mode sets) by b or b', cutting
    against the induction-premise embeddings at every closure step that
    unfolds t itself."""

    def __init__(self, asm1, asm2, mu, b, k):
        self.asm1 = asm1
        self.asm2 = asm2
        self.mu = mu
        self.b = b
        self.k = k
        self.t = prime(mu)
        self.cf = substitute(mu[1], b)

    def images(self, f, modes):
        return _images(f, _eff(modes, f, self.t), self.t, self.b)

    def img_sequent(self, s, rho):
        acc = []
        for f in s:
            acc.extend(self.images(f, rho.get(f, _D)))
        return Sequent(acc)

    def _principal_image(self, phi, rho):
        imgs = self.images(phi, rho.get(phi, _D))
        if len(imgs) != 1:
            raise InternalInvariantError(
                "principal formula with several substitution images"
            )
        return imgs[0]

    def _child_rho(self, premise_concl, rho, parent_concl, parts, part_modes):
        out = {}
        for x in premise_concl:
            sets = []
            if x in parent_concl:
                sets.append(_eff(rho.get(x, _D), x, self.t))
            if x in parts:
                sets.append(_eff(part_modes, x, self.t))
            out[x] = _merge(*sets)
        return out

    def run(self, d, rho):
        rho = {f: _eff(rho.get(f, _D), f, self.t) for f in d.conclusion}
        if all(m == _D for m in rho.values()):
            return d
        return self._run(d, rho)

    def _run(self, d, rho):
        tag = d.rule
        prem = d.premises
        c = d.conclusion
        new_c = self.img_sequent(c, rho)

        if isinstance(tag, Axiom):
            return ax(new_c, tag.p)
        if isinstance(tag, (AxiomMu, Ind)):
            raise InternalInvariantError(
                "finitary-only rule inside an intermediate-system derivation"
            )
        if isinstance(tag, Cut):
            raise InternalInvariantError(
                "context substitution requires a cut-free derivation"
            )

        if isinstance(tag, Clo) and tag.principal == self.t:
            modes = _eff(rho.get(self.t, _D), self.t, self.t)
            if modes & _SIGS:
                return self._clo_on_target(d, rho, modes)

        if isinstance(tag, (Or, And, Clo, Nu)):
            phi = tag.principal
            if phi != self.t and (rho.get(phi, _D) & _SIGS) and occurs(
                phi, self.t
            ) and phi[0] in ("mu", "nu", "nub"):
                raise InternalInvariantError(
                    "binder-rooted substitution image other than the target"
                )
            phi_img = self._principal_image(phi, rho)
            part_modes = _eff(rho.get(phi, _D), phi, self.t)
            if isinstance(tag, Or):
                parts = (phi[1], phi[2])
                rho2 = self._child_rho(
                    prem[0].conclusion, rho, c, parts, part_modes
                )
                part_imgs = self.images(phi[1], part_modes) + self.images(
                    phi[2], part_modes
                )
                p2 = fit(self._sub(prem[0], rho2), new_c.union(part_imgs))
                return or_node(new_c, phi_img, p2)
            if isinstance(tag, And):
                kids = []
                for j, part in enumerate((phi[1], phi[2])):
                    rho2 = self._child_rho(
                        prem[j].conclusion, rho, c, (part,), part_modes
                    )
                    imgs = self.images(part, part_modes)
                    kids.append(
                        fit(self._sub(prem[j], rho2), new_c.union(imgs))
                    )
                return and_node(new_c, phi_img, kids[0], kids[1])
            if isinstance(tag, Clo):
                u = substitute(phi[1], phi)
                rho2 = self._child_rho(
                    prem[0].conclusion, rho, c, (u,), part_modes
                )
                imgs = self.images(u, part_modes)
                p2 = fit(self._sub(prem[0], rho2), new_c.union(imgs))
                return clo_node(new_c, phi_img, p2)
            # Nu
            body = phi[1]

            def fn(i, body=body, phi=phi, part_modes=part_modes):
                it_i = iterate(body, TOP, i)
                rho2 = self._child_rho(
                    prem(i).conclusion, rho, c, (it_i,), part_modes
                )
                imgs = self.images(it_i, part_modes)
                return fit(self._sub(prem(i), rho2), new_c.union(imgs))

            return nu_node(new_c, self._principal_image(phi, rho), fn)

        if isinstance(tag, Box):
            phi = tag.principal
            body = phi[1]
            phi_img = self._principal_image(phi, rho)
            body_modes = _eff(rho.get(phi, _D), phi, self.t)
            p1 = prem[0]
            rho2 = {}
            for x in p1.conclusion:
                sets = []
                if x == body:
                    sets.append(_eff(body_modes, x, self.t))
                dx = ("dia", x)
                if dx in c:
                    sets.append(_eff(rho.get(dx, _D), dx, self.t))
                rho2[x] = _merge(*sets)
            r = self._sub(p1, rho2)
            body_img = phi_img[1]
            packet = r.conclusion.without(body_img).dia().add(phi_img)
            _require(
                packet.issubset(new_c),
                "box packet escapes after context substitution",
            )
            return box_node(new_c, phi_img, new_c.difference(packet), r)

        if isinstance(tag, Omega) or isinstance(tag, OmegaBar):
            phi2 = omega_phi(tag.target)
            if (rho.get(phi2, _D) & _SIGS) and occurs(phi2, self.t):
                raise InternalInvariantError(
                    "replacement formula carries a substitution mode"
                )
            if isinstance(tag, Omega):
                fam = prem
            else:
                fam = prem.fam

            def fn(dl, w):
                rho2 = dict(rho)
                for x in dl:
                    rho2[x] = _merge(
                        rho2.get(x, frozenset()), _D
                    )
                return fit(
                    self._sub_top(fam(dl, w), rho2), dl.union(new_c)
                )

            if isinstance(tag, Omega):
                return omega_node(
                    new_c, tag.h, tag.target, fam.admits, fn
                )
            rho_first = dict(rho)
            rho_first[tag.target] = _merge(
                rho_first.get(tag.target, frozenset()), _D
            )
            first = fit(
                self._sub_top(prem.first, rho_first), new_c.add(tag.target)
            )
            return omegabar_node(
                new_c, tag.h, tag.target, first, fam.admits, fn
            )
        raise InternalInvariantError("unknown rule tag: %r" % (tag,))

    def _sub(self, d, rho):
        rho = {f: _eff(rho.get(f, _D), f, self.t) for f in d.conclusion}
        if all(m == _D for m in rho.values()):
            return d
        new_c = self.img_sequent(d.conclusion, rho)
        return Proof.defer(new_c, lambda: self._run(d, rho))

    def _sub_top(self, d, rho):
        """Like _sub but with an externally assembled mode map (family and
        first-premise entries already merged)."""
        rho = {f: _eff(rho.get(f, _D), f, self.t) for f in d.conclusion}
        if all(m == _D for m in rho.values()):
            return d
        new_c = self.img_sequent(d.conclusion, rho)
        return Proof.defer(new_c, lambda: self._run(d, rho))

    def _clo_on_target(self, d, rho, modes):
        c = d.conclusion
        t = self.t
        new_c = self.img_sequent(c, rho)
        u = substitute(t[1], t)
        f_star = prime(self.cf)
        u_modes = frozenset()
        if MODE_DELTA in modes:
            u_modes = u_modes | _D
        if modes & _SIGS:
            u_modes = u_modes | frozenset((MODE_S2,))
        prem = d.premises[0]
        rho2 = self._child_rho(prem.conclusion, rho, c, (u,), u_modes)
        cur = self._sub(prem, rho2)
        if MODE_DELTA in modes:
            cur = clo_node(cur.conclusion.without(u).add(t), t, cur)
        ncf_p = prime(negate(self.cf))
        if MODE_S1 in modes:
            gcut = cur.conclusion.add(self.b)
            if MODE_S2 not in modes:
                gcut = gcut.without(f_star)
            cur = cut_node(
                gcut,
                self.cf,
                fit(cur, gcut.add(f_star)),
                fit(self.asm1, gcut.add(ncf_p)),
            )
        if MODE_S2 in modes:
            gcut = cur.conclusion.add(prime(self.b)).without(f_star)
            cur = cut_node(
                gcut,
                self.cf,
                fit(cur, gcut.add(f_star)),
                fit(self.asm2, gcut.add(ncf_p)),
            )
        _require(
            cur.conclusion == new_c,
            "substitution stack does not reach the image sequent",
        )
        return cur


def subst_context(d, rho, asm1, asm2, mu, b, k):
    """Rewrite the cut-free derivation d according to the mode map rho
    (formula -> set of modes): delta keeps a formula, s1 replaces the
    primed mu target by b in it, s2 by b'.  asm1 and asm2 prove the primed
    negated unfolding alongside b and b' respectively; they are cut in at
    every closure step on the target itself."""
    cf = substitute(mu[1], b)
    _require(level(cf) <= k, "cut formula level exceeds the system index")
    return _Subst(asm1, asm2, mu, b, k).run(d, rho)


# ---------------------------------------------------------------------------
# induction conversion


def ind_to_omega(asm1, asm2, mu, b, k):
    """From embeddings of the induction premise (asm1 proving the primed
    negated unfolding with b, asm2 with b'), the pair of replacement-rule
    derivations concluding phi, b and phi, b' where phi is the primed
    negation of mu."""
    t = prime(mu)
    h = level(mu)
    _require(1 <= h <= k, "replacement level out of range for the system")
    cf = substitute(mu[1], b)
    ncf_p = prime(negate(cf))
    _require(
        asm1.conclusion == Sequent((ncf_p, b)),
        "first induction embedding has the wrong conclusion",
    )
    _require(
        asm2.conclusion == Sequent((ncf_p, prime(b))),
        "second induction embedding has the wrong conclusion",
    )
    phi = omega_phi(t)
    admits = standard_admits(h, t)

    def mk(sig_mode, b_img):
        concl = Sequent((phi, b_img))

        def fn(delta, w):
            rho = {x: _D for x in delta}
            modes = frozenset((sig_mode,))
            if t in delta:
                modes = modes | _D
            rho[t] = modes
            out = subst_context(w, rho, asm1, asm2, mu, b, k)
            return _fit_sk(
                out, delta.union(concl.without(phi)), delta.union(concl)
            )

        return omega_node(concl, h, t, admits, fn)

    return mk(MODE_S1, b), mk(MODE_S2, prime(b))


# ---------------------------------------------------------------------------
# the embedding


def embed(p, sel=(), k=None):
    """Embed the finite proof p into the intermediate system of index k
    (defaulting to the proof's level bound), priming the selected
    conclusion formulas."""
    if k is None:
        k = level_bound(p)
    sel = frozenset(sel)
    stray = sel - frozenset(p.conclusion)
    if stray:
        raise ValueError("selection outside the end sequent")
    return _embed(p, sel, k)


def _embed(p, sel, k):
    cs = apply_sigma(p.conclusion, sel)
    return Proof.defer(cs, lambda: _embed_now(p, sel, k, cs))


def _embed_now(p, sel, k, cs):
    tag = p.rule
    prem = p.premises

    if isinstance(tag, Axiom):
        return ax(cs, tag.p)

    if isinstance(tag, AxiomMu):
        m = tag.mu
        n = negate(m)
        mp = m in sel
        np = n in sel
        if not mp and not np:
            core = identity_mu(m, k)
        elif np and not mp:
            core = identity_mu_primed(m, k)
        elif mp and not np:
            core = identity_mu(prime(m), k)
        else:
            core = identity_mu_primed(prime(m), k)
        return fit(core, cs)

    if isinstance(tag, Or):
        phi = tag.principal
        phis = phi in sel
        pc = prem[0].conclusion
        parts = (phi[1], phi[2])
        sp = frozenset(
            x
            for x in pc
            if (phis if x in parts else x in sel)
        )
        e = _embed(prem[0], sp, k)
        phi_img = prime(phi) if phis else phi
        part_imgs = tuple(prime(x) if phis else x for x in parts)
        p2 = _fit_sk(
            e, cs.without(phi_img).union(part_imgs), cs.union(part_imgs)
        )
        return or_node(cs, phi_img, p2)

    if isinstance(tag, And):
        phi = tag.principal
        phis = phi in sel
        kids = []
        for j, part in enumerate((phi[1], phi[2])):
            pc = prem[j].conclusion
            sp = frozenset(
                x for x in pc if (phis if x == part else x in sel)
            )
            e = _embed(prem[j], sp, k)
            part_img = prime(part) if phis else part
            phi_img = prime(phi) if phis else phi
            kids.append(
                _fit_sk(e, cs.without(phi_img).add(part_img), cs.add(part_img))
            )
        return and_node(cs, prime(phi) if phis else phi, kids[0], kids[1])

    if isinstance(tag, Box):
        phi = tag.principal
        body = phi[1]
        phis = phi in sel
        pc = prem[0].conclusion
        sp = frozenset(
            x
            for x in pc
            if (phis if x == body else ("dia", x) in sel)
        )
        e = _embed(prem[0], sp, k)
        body_img = prime(body) if phis else body
        phi_img = boxf(body_img)
        packet = e.conclusion.without(body_img).dia().add(phi_img)
        _require(packet.issubset(cs), "box packet escapes the embedding")
        return box_node(cs, phi_img, cs.difference(packet), e)

    if isinstance(tag, Clo):
        phi = tag.principal
        phis = phi in sel
        u = substitute(phi[1], phi)
        pc = prem[0].conclusion
        sp = frozenset(
            x for x in pc if (phis if x == u else x in sel)
        )
        e = _embed(prem[0], sp, k)
        phi_img = prime(phi) if phis else phi
        u_img = prime(u) if phis else u
        p2 = _fit_sk(e, cs.without(phi_img).add(u_img), cs.add(u_img))
        return clo_node(cs, phi_img, p2)

    if isinstance(tag, Cut):
        cf = tag.formula
        _require(
            level(cf) <= k, "cut formula level exceeds the system index"
        )
        q1, q2 = prem
        if q1.conclusion != p.conclusion.add(cf):
            q1, q2 = q2, q1
        _require(
            q1.conclusion == p.conclusion.add(cf)
            and q2.conclusion == p.conclusion.add(negate(cf)),
            "cut premises do not match the cut formula",
        )
        s1 = frozenset(x for x in q1.conclusion if x == cf or x in sel)
        s2 = frozenset(
            x for x in q2.conclusion if x == negate(cf) or x in sel
        )
        e1 = _embed(q1, s1, k)
        e2 = _embed(q2, s2, k)
        return cut_node(
            cs,
            cf,
            fit(e1, cs.add(prime(cf))),
            fit(e2, cs.add(prime(negate(cf)))),
        )

    if isinstance(tag, Ind):
        return _embed_ind(p, tag, sel, k, cs)

    raise InternalInvariantError(
        "rule not part of the finitary system: %r" % (tag,)
    )


def _embed_ind(p, tag, sel, k, cs):
    m = tag.mu
    bb = tag.b
    n = negate(m)
    aop = m[1]
    cf = substitute(aop, bb)
    ncf = negate(cf)
    _require(level(cf) <= k, "cut formula level exceeds the system index")
    prem = p.premises[0]

    if n in sel:
        asm1 = _embed(prem, frozenset((ncf,)), k)
        asm2 = _embed(prem, frozenset((ncf, bb)), k)
        o1, o2 = ind_to_omega(asm1, asm2, m, bb, k)
        return fit(o2 if bb in sel else o1, cs)

    bsel = bb in sel
    b_img = prime(bb) if bsel else bb
    naop = negate(aop)
    ih1 = _embed(
        prem, frozenset((ncf,)) | (frozenset((bb,)) if bsel else frozenset()), k
    )
    ih2 = _embed(prem, frozenset((ncf, bb)), k)
    pb = prime(bb)
    pcf = prime(cf)
    pncf = prime(ncf)
    chain = {}
    monos = {}

    def c_step(j):
        if j not in chain:
            if j == 0:
                chain[j] = top_intro((pb,))
            else:
                target = Sequent((iterate(naop, TOP, j), pb))
                chain[j] = cut_node(
                    target,
                    cf,
                    fit(mono(j), target.add(pcf)),
                    fit(ih2, target.add(pncf)),
                )
        return chain[j]

    def mono(j):
        if j not in monos:
            monos[j] = monotone_primed(
                c_step(j - 1), aop, iterate(naop, TOP, j - 1), bb, k
            )
        return monos[j]

    def fn(i):
        it_i = iterate(naop, TOP, i)
        if i == 0:
            out = top_intro((b_img,))
        else:
            target = Sequent((it_i, b_img))
            out = cut_node(
                target,
                cf,
                fit(mono(i), target.add(pcf)),
                fit(ih1, target.add(pncf)),
            )
        return _fit_sk(out, cs.without(n).add(it_i), cs.add(it_i))

    return nu_node(cs, n, fn)
