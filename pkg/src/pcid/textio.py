"""Concrete ASCII syntax for formulas, theories, sequents and proofs.

Grammar (loosest binding first)::

    formula  := impl ('<=>' impl)*          left associative, sugar for equivalence
    impl     := disj ('=>' impl)?           right associative, sugar for ~a | b
    disj     := conj ('|' conj)*
    conj     := unary ('&' unary)*
    unary    := '~' unary | primary
    primary  := atom | 'true' | 'false' | '(' formula ')' | definition
    definition := '{' (atom '<-' formula '.')* '}'

A theory is a sequence of formulas each closed by ``.``; the dot is optional
after a statement that is a bare definition.  A sequent is two comma
separated formula lists around ``|-``.  ``%`` starts a comment.

The printer emits the fewest parentheses that still parse back to the same
tree, and prints sets of formulas sorted by their printed form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import ArityError, ParseError, SourceSpan
from .syntax import (
    BOT,
    TOP,
    And,
    Atom,
    Bot,
    Definition,
    Formula,
    Not,
    Or,
    Sequent,
    Top,
    equiv,
    implies,
    is_atom_name,
    is_pc,
    is_user_atom_name,
    normalize,
)

# ---------------------------------------------------------------------------
# lexer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|%[^\n]*)
  | (?P<op><=>|=>|<-|\|-|[~&|(){}.,])
  | (?P<ident>[A-Za-z0-9_]+)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "op", "ident", "eof"
    text: str
    span: SourceSpan


class _Source:
    def __init__(self, text: str):
        self.text = text
        self.line_starts = [0] + [i + 1 for i, ch in enumerate(text) if ch == "\n"]

    def span(self, begin: int, end: int) -> SourceSpan:
        lo, hi = 0, len(self.line_starts) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.line_starts[mid] <= begin:
                lo = mid
            else:
                hi = mid - 1
        return SourceSpan(begin, end, lo + 1, begin - self.line_starts[lo] + 1)


def tokenize(text: str) -> list[Token]:
    src = _Source(text)
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", src.span(pos, pos + 1))
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(), src.span(m.start(), m.end())))
        pos = m.end()
    tokens.append(Token("eof", "", src.span(len(text), len(text))))
    return tokens


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str, allow_generated: bool):
        self.tokens = tokenize(text)
        self.pos = 0
        self.allow_generated = allow_generated

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def advance(self) -> Token:
        tok = self.tok
        self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}")
        return self.advance()

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"{message}, found {found}", tok.span)

    # formulas

    def formula(self) -> Formula:
        left = self.impl()
        while self.at("<=>"):
            self.advance()
            left = equiv(left, self.impl())
        return left

    def impl(self) -> Formula:
        left = self.disj()
        if self.at("=>"):
            self.advance()
            return implies(left, self.impl())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.at("|"):
            self.advance()
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.at("&"):
            self.advance()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        if self.at("~"):
            self.advance()
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        tok = self.tok
        if self.at("("):
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        if self.at("{"):
            return self.definition()
        if tok.kind == "ident":
            if tok.text == "true":
                self.advance()
                return TOP
            if tok.text == "false":
                self.advance()
                return BOT
            return self.atom()
        self.error("expected a formula")

    def atom(self) -> Atom:
        tok = self.tok
        if tok.kind != "ident":
            self.error("expected an atom")
        name = tok.text
        if name in ("true", "false"):
            raise ParseError(f"{name!r} is reserved and cannot name an atom", tok.span)
        ok = is_atom_name(name) if self.allow_generated else is_user_atom_name(name)
        if not ok:
            if "__" in name and is_atom_name(name):
                raise ParseError(f"generated atom {name!r} is not allowed here", tok.span)
            raise ParseError(f"invalid atom name {name!r}", tok.span)
        self.advance()
        return Atom(name)

    def definition(self) -> Definition:
        self.expect("{")
        rules = []
        while not self.at("}"):
            if self.tok.kind == "eof":
                self.error("unterminated definition")
            head = self.atom()
            self.expect("<-")
            start = self.tok
            body = self.formula()
            if not is_pc(body):
                raise ParseError("rule bodies may not contain definitions", start.span)
            self.expect(".")
            rules.append((head, body))
        self.advance()
        return normalize(rules)

    # larger units

    def formula_list(self, stop: Iterable[str]) -> list[Formula]:
        stop = tuple(stop)
        out = []
        if any(self.at(s) for s in stop) or self.tok.kind == "eof":
            return out
        out.append(self.formula())
        while self.at(","):
            self.advance()
            out.append(self.formula())
        return out

    def theory(self) -> list[Formula]:
        out = []
        while self.tok.kind != "eof":
            f = self.formula()
            if self.at("."):
                self.advance()
            elif not isinstance(f, Definition):
                self.error("expected '.' after statement")
            out.append(f)
        return out

    def sequent(self) -> Sequent:
        left = self.formula_list(("|-",))
        self.expect("|-")
        right = self.formula_list((".",))
        if self.at("."):
            self.advance()
        if self.tok.kind != "eof":
            self.error("unexpected input after sequent")
        return Sequent(left, right)

    def finish(self):
        if self.tok.kind != "eof":
            self.error("unexpected input")


def parse_formula(text: str, allow_generated: bool = False) -> Formula:
    p = _Parser(text, allow_generated)
    f = p.formula()
    p.finish()
    return f


def parse_theory(text: str, allow_generated: bool = False) -> list[Formula]:
    return _Parser(text, allow_generated).theory()


def parse_sequent(text: str, allow_generated: bool = False) -> Sequent:
    return _Parser(text, allow_generated).sequent()


def parse_atom_set(text: str, allow_generated: bool = True) -> frozenset[Atom]:
    """Parse ``{p, q}``."""
    p = _Parser(text, allow_generated)
    p.expect("{")
    atoms = []
    if not p.at("}"):
        atoms.append(p.atom())
        while p.at(","):
            p.advance()
            atoms.append(p.atom())
    p.expect("}")
    p.finish()
    return frozenset(atoms)


# ---------------------------------------------------------------------------
# printer

_PREC_OR, _PREC_AND, _PREC_NOT = 1, 2, 3


def _fmt(f: Formula, ctx: int) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return "~" + _fmt(f.body, _PREC_NOT)
    if isinstance(f, And):
        s = f"{_fmt(f.left, _PREC_AND)} & {_fmt(f.right, _PREC_NOT)}"
        return f"({s})" if ctx > _PREC_AND else s
    if isinstance(f, Or):
        s = f"{_fmt(f.left, _PREC_OR)} | {_fmt(f.right, _PREC_AND)}"
        return f"({s})" if ctx > _PREC_OR else s
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bot):
        return "false"
    if isinstance(f, Definition):
        if not f.rules:
            return "{}"
        rules = " ".join(f"{head.name} <- {_fmt(body, 0)}." for head, body in f.rules)
        return "{ " + rules + " }"
    raise TypeError(f"not a formula: {f!r}")


@lru_cache(maxsize=1 << 16)
def format_formula(f: Formula) -> str:
    return _fmt(f, 0)


def sorted_formulas(formulas: Iterable[Formula]) -> list[Formula]:
    return sorted(formulas, key=format_formula)


def format_formula_set(formulas: Iterable[Formula]) -> str:
    return ", ".join(format_formula(f) for f in sorted_formulas(formulas))


def format_sequent(s: Sequent) -> str:
    left = format_formula_set(s.antecedent)
    right = format_formula_set(s.succedent)
    return " ".join(part for part in (left, "|-", right) if part)


def format_theory(theory: Iterable[Formula]) -> str:
    lines = []
    for f in theory:
        text = format_formula(f)
        lines.append(text if isinstance(f, Definition) else text + ".")
    return "\n".join(lines) + ("\n" if lines else "")


def format_atom_set(atoms: Iterable[Atom]) -> str:
    return "{" + ", ".join(a.name for a in sorted(atoms)) + "}"


# ---------------------------------------------------------------------------
# assignments


_VALUE_NAMES = {"T": True, "t": True, "true": True, "1": True, "F": False, "f": False, "false": False, "0": False}


def parse_assignment(text: str) -> dict[Atom, bool]:
    """Parse ``o=T,p=F`` (commas or whitespace between entries)."""
    out: dict[Atom, bool] = {}
    for item in re.split(r"[,\s]+", text.strip()):
        if not item:
            continue
        name, sep, value = item.partition("=")
        if not sep or value not in _VALUE_NAMES or not is_user_atom_name(name):
            raise ValueError(f"malformed assignment entry {item!r}; expected name=T or name=F")
        out[Atom(name)] = _VALUE_NAMES[value]
    return out


def format_interpretation(interp) -> str:
    return " ".join(f"{a.name}={interp[a]}" for a in sorted(interp))


# ---------------------------------------------------------------------------
# proofs

PROOF_HEADER = "lpid-proof 1"
_INDENT = "  "


def format_proof(tree) -> str:
    """Canonical text of a :class:`calculus.ProofTree`."""
    lines = [PROOF_HEADER]
    stack = [(tree, 0)]
    while stack:
        node, depth = stack.pop()
        pad = _INDENT * depth
        lines.append(f"{pad}node {node.rule}")
        inner = pad + _INDENT
        lines.append(f"{inner}sequent: {format_sequent(node.sequent)}")
        for key, value in node.params.items():
            if key in ("uset", "vset"):
                text = format_atom_set(value)
            elif key == "atom":
                text = value.name
            else:
                text = format_formula(value)
            lines.append(f"{inner}{key}: {text}")
        for child in reversed(node.premises):
            stack.append((child, depth + 1))
    return "\n".join(lines) + "\n"


@dataclass
class _RawNode:
    rule: str
    span: SourceSpan
    depth: int
    fields: dict
    children: list


def parse_proof(text: str):
    """Parse the output of :func:`format_proof` back into a proof tree."""
    from .calculus import PARAM_KEYS, ProofTree, RuleParams, expected_arity, RULES

    src = _Source(text)
    lines = text.split("\n")
    offsets = []
    pos = 0
    for line in lines:
        offsets.append(pos)
        pos += len(line) + 1

    def span_of(i: int, col: int = 0, length: int | None = None) -> SourceSpan:
        begin = offsets[i] + col
        end = begin + (len(lines[i]) - col if length is None else length)
        return src.span(begin, end)

    body = [(i, ln) for i, ln in enumerate(lines) if ln.strip() and not ln.lstrip().startswith("%")]
    if not body or body[0][1].strip() != PROOF_HEADER:
        at = body[0][0] if body else 0
        raise ParseError(f"proof must start with {PROOF_HEADER!r}", span_of(at) if lines else src.span(0, 0))

    roots: list[_RawNode] = []
    stack: list[_RawNode] = []
    for i, line in body[1:]:
        stripped = line.lstrip(" ")
        indent = len(line) - len(stripped)
        if indent % 2:
            raise ParseError("indentation must be a multiple of two spaces", span_of(i))
        depth = indent // 2
        if stripped.startswith("node "):
            rule = stripped[5:].strip()
            if rule not in RULES:
                raise ParseError(f"unknown rule {rule!r}", span_of(i, indent + 5))
            while stack and stack[-1].depth >= depth:
                stack.pop()
            node = _RawNode(rule, span_of(i, indent), depth, {}, [])
            if stack:
                if depth != stack[-1].depth + 1:
                    raise ParseError("premise is indented too deeply", span_of(i))
                stack[-1].children.append(node)
            else:
                if depth != 0 or roots:
                    raise ParseError("a proof has exactly one root node", span_of(i))
                roots.append(node)
            stack.append(node)
            continue
        key, sep, value = stripped.partition(":")
        if not sep:
            raise ParseError("expected 'node <rule>' or 'key: value'", span_of(i, indent))
        while stack and stack[-1].depth >= depth:
            stack.pop()
        if not stack or stack[-1].depth != depth - 1:
            raise ParseError(f"field {key!r} is not attached to a node", span_of(i, indent))
        owner = stack[-1]
        if owner.children:
            raise ParseError("fields must precede premises", span_of(i, indent))
        if key != "sequent" and key not in PARAM_KEYS:
            raise ParseError(f"unknown field {key!r}", span_of(i, indent, len(key)))
        if key in owner.fields:
            raise ParseError(f"duplicate field {key!r}", span_of(i, indent, len(key)))
        col = indent + len(key) + 1
        col += len(value) - len(value.lstrip())
        owner.fields[key] = (value.strip(), span_of(i, col))
    if not roots:
        raise ParseError("proof has no nodes", src.span(len(text), len(text)))

    def value_of(raw: _RawNode, key: str):
        text_, span = raw.fields[key]
        try:
            if key == "sequent":
                return parse_sequent(text_, allow_generated=True)
            if key in ("uset", "vset"):
                return parse_atom_set(text_)
            if key == "atom":
                p = _Parser(text_, True)
                a = p.atom()
                p.finish()
                return a
            return parse_formula(text_, allow_generated=True)
        except ParseError as exc:
            shifted = SourceSpan(
                span.begin + exc.span.begin,
                span.begin + exc.span.end,
                span.line,
                span.column + exc.span.begin,
            )
            raise ParseError(exc.message, shifted) from None

    def build(raw: _RawNode):
        if "sequent" not in raw.fields:
            raise ParseError("node has no sequent", raw.span)
        params = {}
        for key in PARAM_KEYS:
            if key in raw.fields:
                params[key] = value_of(raw, key)
        try:
            rp = RuleParams.create(raw.rule, params)
        except ValueError as exc:
            raise ParseError(f"malformed parameters for {raw.rule}: {exc}", raw.span) from None
        arity = expected_arity(raw.rule, rp)
        if arity != len(raw.children):
            raise ArityError(
                f"rule {raw.rule} takes {arity} premise(s) but {len(raw.children)} given",
                raw.span,
            )
        return raw, rp

    # Build bottom-up without recursion so deep proofs parse fine.
    order = []
    work = [roots[0]]
    while work:
        raw = work.pop()
        order.append(raw)
        work.extend(raw.children)
    built: dict[int, object] = {}
    for raw in reversed(order):
        raw_checked, rp = build(raw)
        premises = tuple(built[id(c)] for c in raw.children)
        built[id(raw)] = ProofTree(raw.rule, value_of(raw, "sequent"), rp, premises)
    return built[id(roots[0])]
