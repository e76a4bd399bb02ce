"""Rule and fact parsing.

Two interchangeable rule surfaces, auto-detected:

  (a) one rule per line, `head if lit, lit, not lit`, with an optional
      `rules NAME:` header; every bare identifier in argument position is a
      variable (`_` is anonymous). A line ending in a comma continues on
      the next line.

  (b) classic clauses `head :- lit, ..., not lit.`; identifiers starting
      with an uppercase letter or underscore are variables, lowercase bare
      identifiers are symbol constants.

Constants common to both: integers and single-quoted strings with
backslash escapes. Comments run from `%` or `#` to end of line. Fact files
are ground clauses in surface (b) without bodies.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError
from .model import Database, Literal, Rule, RuleSet, Variable, intern_constant

_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_CHARS = _IDENT_START | set("0123456789")


@dataclass(frozen=True, slots=True)
class FunctorTerm:
    """A non-nested functor argument, only allowed in flattening input."""

    name: str
    args: tuple


class _Tokenizer:
    """Shared lexer. Token kinds: ident, int, string, punct, end."""

    def __init__(self, text: str, line_offset: int = 0):
        self.text = text
        self.pos = 0
        self.line = 1 + line_offset
        self.col = 1

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.line, self.col)

    def _advance(self, n: int = 1) -> None:
        for _ in range(n):
            if self.pos < len(self.text):
                if self.text[self.pos] == "\n":
                    self.line += 1
                    self.col = 1
                else:
                    self.col += 1
                self.pos += 1

    def _skip_space_and_comments(self) -> None:
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c in " \t\r\n":
                self._advance()
            elif c in "%#":
                while self.pos < len(self.text) and self.text[self.pos] != "\n":
                    self._advance()
            else:
                return

    def next(self) -> tuple[str, str, int, int]:
        self._skip_space_and_comments()
        if self.pos >= len(self.text):
            return ("end", "", self.line, self.col)
        line, col = self.line, self.col
        c = self.text[self.pos]
        if c in _IDENT_START:
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos] in _IDENT_CHARS:
                self._advance()
            return ("ident", self.text[start : self.pos], line, col)
        if c.isdigit() or (
            c == "-"
            and self.pos + 1 < len(self.text)
            and self.text[self.pos + 1].isdigit()
        ):
            start = self.pos
            self._advance()
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self._advance()
            return ("int", self.text[start : self.pos], line, col)
        if c == "'":
            self._advance()
            chars = []
            while True:
                if self.pos >= len(self.text):
                    raise ParseError("unterminated string", line, col)
                ch = self.text[self.pos]
                if ch == "\\":
                    self._advance()
                    if self.pos >= len(self.text):
                        raise ParseError("unterminated escape", line, col)
                    esc = self.text[self.pos]
                    chars.append({"n": "\n", "t": "\t"}.get(esc, esc))
                    self._advance()
                elif ch == "'":
                    self._advance()
                    return ("string", "".join(chars), line, col)
                else:
                    chars.append(ch)
                    self._advance()
        if c == ":" and self.text[self.pos : self.pos + 2] == ":-":
            self._advance(2)
            return ("punct", ":-", line, col)
        if c in "(),.:":
            self._advance()
            return ("punct", c, line, col)
        raise ParseError(f"unexpected character {c!r}", line, col)


class _Parser:
    def __init__(self, text: str, classic_vars: bool, line_offset: int = 0):
        self.tok = _Tokenizer(text, line_offset)
        self.classic_vars = classic_vars
        self.current = self.tok.next()
        self.fresh = 0
        self.scope: dict[str, Variable] = {}

    def _advance(self) -> None:
        self.current = self.tok.next()

    def error(self, message: str) -> ParseError:
        _, _, line, col = self.current
        return ParseError(message, line, col)

    def expect(self, kind: str, value: str | None = None) -> str:
        k, v, _, _ = self.current
        if k != kind or (value is not None and v != value):
            want = value if value is not None else kind
            got = v if v else k
            raise self.error(f"expected {want!r}, found {got!r}")
        self._advance()
        return v

    def at(self, kind: str, value: str | None = None) -> bool:
        k, v, _, _ = self.current
        return k == kind and (value is None or v == value)

    def begin_rule(self) -> None:
        self.scope = {}

    def _variable(self, name: str) -> Variable:
        if name == "_":
            self.fresh += 1
            return Variable(f"_anon{self.fresh}")
        var = self.scope.get(name)
        if var is None:
            var = self.scope[name] = Variable(name)
        return var

    def term(self, allow_functors: bool, in_functor: bool = False):
        k, v, _, _ = self.current
        if k == "int":
            self._advance()
            return int(v)
        if k == "string":
            self._advance()
            return intern_constant(v)
        if k == "ident":
            self._advance()
            if self.at("punct", "("):
                if not allow_functors:
                    raise self.error(f"functor term {v!r} not allowed here")
                if in_functor:
                    from .errors import NestedFunctor

                    raise NestedFunctor(f"nested functor {v!r}")
                args = self.term_list(allow_functors, in_functor=True)
                return FunctorTerm(v, tuple(args))
            if self.classic_vars:
                if v[0].isupper() or v[0] == "_":
                    return self._variable(v)
                return intern_constant(v)
            return self._variable(v)
        raise self.error("expected a term")

    def term_list(self, allow_functors: bool, in_functor: bool = False) -> list:
        self.expect("punct", "(")
        args = []
        if not self.at("punct", ")"):
            args.append(self.term(allow_functors, in_functor))
            while self.at("punct", ","):
                self._advance()
                args.append(self.term(allow_functors, in_functor))
        self.expect("punct", ")")
        return args

    def atom(self, allow_functors: bool = False) -> Literal:
        k, v, _, _ = self.current
        if k != "ident":
            raise self.error("expected a predicate name")
        self._advance()
        if self.at("punct", "("):
            args = self.term_list(allow_functors)
        else:
            args = []
        return Literal(v, tuple(args))

    def literal(self, allow_functors: bool = False) -> Literal:
        if self.at("ident", "not"):
            self._advance()
            atom = self.atom(allow_functors)
            return Literal(atom.pred, atom.args, negated=True)
        return self.atom(allow_functors)


def _detect_style(text: str) -> str:
    """Classic when a `:-` or a clause-ending dot appears outside quotes."""
    i, n = 0, len(text)
    last_code_char = ""
    while i < n:
        c = text[i]
        if c == "'":
            i += 1
            while i < n and text[i] != "'":
                i += 2 if text[i] == "\\" else 1
            i += 1
            last_code_char = "'"
            continue
        if c in "%#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == ":" and text[i : i + 2] == ":-":
            return "classic"
        if c == "\n":
            if last_code_char == ".":
                return "classic"
        elif not c.isspace():
            last_code_char = c
        i += 1
    return "classic" if last_code_char == "." else "paper"


def _parse_paper(
    text: str, default_name: str, allow_functors: bool
) -> tuple[str, list[Rule]]:
    name = default_name
    rules: list[Rule] = []
    lines = text.split("\n")
    i = 0
    while i < len(lines):
        raw = lines[i]
        offset = i
        logical = raw
        # a line whose code part ends with a comma continues below
        while _strip_comment(logical).rstrip().endswith(",") and i + 1 < len(lines):
            i += 1
            logical += "\n" + lines[i]
        i += 1
        if not _strip_comment(logical).strip():
            continue
        p = _Parser(logical, classic_vars=False, line_offset=offset)
        if p.at("ident", "rules"):
            p._advance()
            if p.at("ident"):
                name = p.expect("ident")
                p.expect("punct", ":")
                p.expect("end")
                continue
            raise p.error("expected a rule-set name after 'rules'")
        p.begin_rule()
        head = p.atom(allow_functors)
        body: list[Literal] = []
        if p.at("ident", "if"):
            p._advance()
            body.append(p.literal(allow_functors))
            while p.at("punct", ","):
                p._advance()
                body.append(p.literal(allow_functors))
        p.expect("end")
        rules.append(Rule(head, tuple(body)))
    return name, rules


def _strip_comment(line: str) -> str:
    i, n = 0, len(line)
    while i < n:
        c = line[i]
        if c == "'":
            i += 1
            while i < n and line[i] != "'":
                i += 2 if line[i] == "\\" else 1
        elif c in "%#":
            return line[:i]
        i += 1
    return line


def _parse_classic(
    text: str, default_name: str, allow_functors: bool
) -> tuple[str, list[Rule]]:
    p = _Parser(text, classic_vars=True)
    rules: list[Rule] = []
    while not p.at("end"):
        p.begin_rule()
        head = p.atom(allow_functors)
        body: list[Literal] = []
        if p.at("punct", ":-"):
            p._advance()
            body.append(p.literal(allow_functors))
            while p.at("punct", ","):
                p._advance()
                body.append(p.literal(allow_functors))
        p.expect("punct", ".")
        rules.append(Rule(head, tuple(body)))
    return default_name, rules


def parse_rules(
    text: str,
    name: str = "rules",
    style: str = "auto",
    _allow_functors: bool = False,
):
    """Parse rule source into a validated RuleSet.

    `style` is "auto", "paper", or "classic". With `_allow_functors` the
    raw (name, rules) pair is returned un-validated for the flattening
    pass, since functor terms are not constants.
    """
    if style == "auto":
        style = _detect_style(text)
    if style == "paper":
        found_name, rules = _parse_paper(text, name, _allow_functors)
    elif style == "classic":
        found_name, rules = _parse_classic(text, name, _allow_functors)
    else:
        raise ValueError(f"unknown style {style!r}")
    if _allow_functors:
        return found_name, rules
    return RuleSet.build(rules, name=found_name)


# -- fact files ------------------------------------------------------------


def parse_facts(text: str, db: Database | None = None) -> Database:
    """Parse ground facts in classic surface into a Database."""
    if db is None:
        db = Database()
    p = _Parser(text, classic_vars=True)
    while not p.at("end"):
        k, v, line, col = p.current
        atom = p.atom()
        for a in atom.args:
            if isinstance(a, Variable):
                raise ParseError(
                    f"variable {a.name!r} in fact for {atom.pred!r}", line, col
                )
        if p.at("punct", ":-"):
            raise p.error("rule syntax not allowed in a fact file")
        p.expect("punct", ".")
        db.ensure(atom.pred, len(atom.args)).add([atom.args])
    return db


def parse_fact_file(path) -> Database:
    return parse_facts(Path(path).read_text(encoding="utf-8"))


def _is_bare_symbol(s: str) -> bool:
    if not s or not ("a" <= s[0] <= "z"):
        return False
    return all(c in _IDENT_CHARS for c in s)


def format_constant(value) -> str:
    if isinstance(value, int):
        return str(value)
    if _is_bare_symbol(value):
        return value
    escaped = (
        value.replace("\\", "\\\\")
        .replace("'", "\\'")
        .replace("\n", "\\n")
        .replace("\t", "\\t")
    )
    return f"'{escaped}'"


def format_fact(pred: str, t: tuple) -> str:
    return f"{pred}({', '.join(format_constant(v) for v in t)})."


def write_facts(db: Database, path) -> None:
    """Write every relation as fact lines, deterministically ordered."""
    with open(path, "w", encoding="utf-8") as fh:
        for name in db.names():
            rel = db.get(name)
            for t in rel.sorted():
                fh.write(format_fact(name, t) + "\n")
