"""Canonical s-expression serialization.

Finite proofs, observations, check reports, and summaries all serialize
as single-line s-expressions: lists in parentheses, lowercase symbols,
integers, and formulas as double-quoted strings of the grammar.  Sequents
serialize in canonical order, so equal values are byte-identical.
"""

from __future__ import annotations

from mucut.proofs import (
    And,
    Axiom,
    AxiomMu,
    Box,
    Clo,
    Cut,
    Ind,
    Nu,
    Observation,
    Omega,
    OmegaBar,
    Or,
    Proof,
    make_node,
)
from mucut.sequents import Sequent
from mucut.syntax import parse_formula, print_form


class Sym(str):
    """A bare symbol (as opposed to a quoted string)."""

    __slots__ = ()


class SexprError(ValueError):
    def __init__(self, message, pos):
        super().__init__("%s at position %d" % (message, pos))
        self.pos = pos


# ---------------------------------------------------------------------------
# generic reader / writer


def dumps(sx):
    if isinstance(sx, (list, tuple)):
        return "(%s)" % " ".join(dumps(x) for x in sx)
    if isinstance(sx, Sym):
        return str(sx)
    if isinstance(sx, bool):
        raise TypeError("booleans do not serialize")
    if isinstance(sx, int):
        return str(sx)
    if isinstance(sx, str):
        return '"%s"' % sx.replace("\\", "\\\\").replace('"', '\\"')
    raise TypeError("cannot serialize %r" % (sx,))


_SYMBOL_CHARS = set(
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-:.+"
)


class _Reader:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise SexprError(msg, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def read(self):
        self.skip_ws()
        if self.pos >= len(self.text):
            self.error("unexpected end of input")
        ch = self.text[self.pos]
        if ch == "(":
            self.pos += 1
            items = []
            while True:
                self.skip_ws()
                if self.pos >= len(self.text):
                    self.error("unclosed parenthesis")
                if self.text[self.pos] == ")":
                    self.pos += 1
                    return items
                items.append(self.read())
        if ch == ")":
            self.error("unmatched closing parenthesis")
        if ch == '"':
            self.pos += 1
            out = []
            while True:
                if self.pos >= len(self.text):
                    self.error("unclosed string")
                ch = self.text[self.pos]
                if ch == "\\":
                    if self.pos + 1 >= len(self.text):
                        self.error("dangling escape")
                    out.append(self.text[self.pos + 1])
                    self.pos += 2
                elif ch == '"':
                    self.pos += 1
                    return "".join(out)
                else:
                    out.append(ch)
                    self.pos += 1
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in _SYMBOL_CHARS:
            self.pos += 1
        if self.pos == start:
            self.error("unexpected character %r" % ch)
        word = self.text[start : self.pos]
        try:
            return int(word)
        except ValueError:
            return Sym(word)


def loads(text):
    r = _Reader(text)
    sx = r.read()
    r.skip_ws()
    if r.pos != len(r.text):
        r.error("trailing input after s-expression")
    return sx


# ---------------------------------------------------------------------------
# sequents and rule tags


def seq_to_sx(s):
    return [Sym("seq")] + [print_form(f) for f in s]


def sx_to_seq(sx):
    if not isinstance(sx, list) or not sx or sx[0] != Sym("seq"):
        raise SexprError("expected (seq ...)", 0)
    forms = []
    for item in sx[1:]:
        if not isinstance(item, str) or isinstance(item, Sym):
            raise SexprError("sequent members must be quoted formulas", 0)
        forms.append(parse_formula(item))
    return Sequent(forms)


def tag_to_sx(tag):
    if isinstance(tag, Axiom):
        return [Sym("axiom"), print_form(tag.p)]
    if isinstance(tag, AxiomMu):
        return [Sym("axmu"), print_form(tag.mu)]
    if isinstance(tag, Or):
        return [Sym("or"), print_form(tag.principal)]
    if isinstance(tag, And):
        return [Sym("and"), print_form(tag.principal)]
    if isinstance(tag, Box):
        return [Sym("box"), print_form(tag.principal), seq_to_sx(tag.side)]
    if isinstance(tag, Clo):
        return [Sym("clo"), print_form(tag.principal)]
    if isinstance(tag, Ind):
        return [Sym("ind"), print_form(tag.mu), print_form(tag.b)]
    if isinstance(tag, Cut):
        return [Sym("cut"), print_form(tag.formula)]
    if isinstance(tag, Nu):
        return [Sym("nu"), print_form(tag.principal)]
    if isinstance(tag, Omega):
        return [Sym("omega"), tag.h, print_form(tag.target)]
    if isinstance(tag, OmegaBar):
        return [Sym("omegabar"), tag.h, print_form(tag.target)]
    raise TypeError("unknown tag: %r" % (tag,))


def _want_forms(sx, n, what):
    if len(sx) != n + 1:
        raise SexprError("%s takes %d argument(s)" % (what, n), 0)
    out = []
    for item in sx[1:]:
        if not isinstance(item, str) or isinstance(item, Sym):
            raise SexprError("%s arguments must be quoted formulas" % what, 0)
        out.append(parse_formula(item))
    return out


def sx_to_tag(sx):
    if not isinstance(sx, list) or not sx or not isinstance(sx[0], Sym):
        raise SexprError("expected a rule tag", 0)
    head = str(sx[0])
    if head == "axiom":
        return Axiom(_want_forms(sx, 1, "axiom")[0])
    if head == "axmu":
        return AxiomMu(_want_forms(sx, 1, "axmu")[0])
    if head == "or":
        return Or(_want_forms(sx, 1, "or")[0])
    if head == "and":
        return And(_want_forms(sx, 1, "and")[0])
    if head == "box":
        if len(sx) != 3 or not isinstance(sx[1], str) or isinstance(sx[1], Sym):
            raise SexprError("box takes a formula and a side sequent", 0)
        return Box(parse_formula(sx[1]), sx_to_seq(sx[2]))
    if head == "clo":
        return Clo(_want_forms(sx, 1, "clo")[0])
    if head == "ind":
        mu, b = _want_forms(sx, 2, "ind")
        return Ind(mu, b)
    if head == "cut":
        return Cut(_want_forms(sx, 1, "cut")[0])
    if head == "nu":
        return Nu(_want_forms(sx, 1, "nu")[0])
    if head in ("omega", "omegabar"):
        if len(sx) != 3 or not isinstance(sx[1], int):
            raise SexprError("%s takes a level and a target" % head, 0)
        if not isinstance(sx[2], str) or isinstance(sx[2], Sym):
            raise SexprError("%s target must be a quoted formula" % head, 0)
        cls = Omega if head == "omega" else OmegaBar
        return cls(sx[1], parse_formula(sx[2]))
    raise SexprError("unknown rule tag %r" % head, 0)


# ---------------------------------------------------------------------------
# finite proofs


def proof_to_sx(p):
    tag = p.rule
    if isinstance(tag, (Nu, Omega, OmegaBar)):
        raise TypeError(
            "infinitary proofs serialize only as observations (rule %s)"
            % type(tag).__name__.lower()
        )
    out = [Sym("rule"), tag_to_sx(tag), seq_to_sx(p.conclusion)]
    out.extend(proof_to_sx(q) for q in p.premises)
    return out


def sx_to_proof(sx):
    if (
        not isinstance(sx, list)
        or len(sx) < 3
        or sx[0] != Sym("rule")
    ):
        raise SexprError("expected (rule <tag> (seq ...) <premise>...)", 0)
    tag = sx_to_tag(sx[1])
    if isinstance(tag, (Nu, Omega, OmegaBar)):
        raise SexprError(
            "rule %s cannot appear in a finite proof file"
            % type(tag).__name__.lower(),
            0,
        )
    conclusion = sx_to_seq(sx[2])
    premises = tuple(sx_to_proof(q) for q in sx[3:])
    try:
        return make_node(conclusion, tag, premises)
    except ValueError as exc:
        raise SexprError(str(exc), 0)


def proof_dumps(p):
    return dumps(proof_to_sx(p)) + "\n"


def proof_loads(text):
    return sx_to_proof(loads(text))


# ---------------------------------------------------------------------------
# observations


def observation_to_sx(o):
    if o.error is not None:
        return [Sym("error"), o.error]
    out = [Sym("rule"), tag_to_sx(o.rule), seq_to_sx(o.conclusion)]
    out.extend(observation_to_sx(c) for c in o.children)
    if o.sampled is not None:
        out.append([Sym("samples")] + list(o.sampled))
    if o.probes is not None:
        out.append([Sym("probes")] + [seq_to_sx(d) for d in o.probes])
    if o.truncated:
        out.append([Sym("truncated")])
    return out


def observation_dumps(o):
    return dumps(observation_to_sx(o)) + "\n"


# ---------------------------------------------------------------------------
# reports and summaries


def report_to_sx(report):
    if report.ok:
        return [Sym("report"), Sym("ok")]
    out = [Sym("report"), Sym("fail")]
    for path, msg in report.violations:
        out.append([Sym("violation"), path, msg])
    return out


def report_dumps(report):
    return dumps(report_to_sx(report)) + "\n"


def summary_to_sx(endsequent, cut_free, nubar_free):
    return [
        Sym("summary"),
        [Sym("endsequent"), seq_to_sx(endsequent)],
        [Sym("cut-free"), Sym("yes" if cut_free else "no")],
        [Sym("nubar-free"), Sym("yes" if nubar_free else "no")],
    ]


def step_to_sx(path, case, rank):
    return [Sym("step"), path, Sym(case), [Sym("rank"), rank[0], rank[1]]]
