"""Lexer, parser, and syntax diagnostics for the rule language.

Grammar:

    program   := statement*
    statement := head? (":-" body)? "."
    head      := atom ("|" atom)*
    body      := literal ("," literal)*
    literal   := ["not"] atom
    atom      := IDENT ["(" term ("," term)* ")"]
    term      := IDENT | VARIABLE | INTEGER

"%" starts a comment that runs to the end of the line.  Integers act as
constants.  Function terms inside arguments are rejected with a dedicated
diagnostic.  Parsing stops at the first error in document order; the error
carries a 1-based line and a 1-based character column span whose end is
exclusive, so a one-character token at column 8 reports 8-9.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import Atom, Program, Rule, Term, constant, variable

# Token classes.
IDENT = "IDENT"
VAR = "VARIABLE"
INT = "INTEGER"
NOT = "NOT"
IF = "IF"
DOT = "DOT"
COMMA = "COMMA"
PIPE = "PIPE"
LPAREN = "LPAREN"
RPAREN = "RPAREN"
SEMICOLON = "SEMICOLON"
EOF = "EOF"
UNKNOWN = "UNKNOWN"

# Error categories, used to pick the hint template.
MISSING_DOT = "missing-dot"
UNEXPECTED_TOKEN = "unexpected-token"
UNBALANCED_PARENS = "unbalanced-parens"
FUNCTION_TERM = "function-term"
LEXICAL = "lexical"
EMPTY_STATEMENT = "empty-statement"

_PUNCT = {
    ".": DOT,
    ",": COMMA,
    "|": PIPE,
    "(": LPAREN,
    ")": RPAREN,
    ";": SEMICOLON,
}


@dataclass(frozen=True)
class Token:
    cls: str
    text: str
    line: int
    col: int

    @property
    def col_end(self) -> int:
        # Exclusive end column; EOF is rendered as a one-column span.
        return self.col + max(1, len(self.text))


@dataclass(frozen=True)
class ParseError:
    line: int
    col_start: int
    col_end: int
    expected: frozenset[str]
    found: str
    source_line_text: str
    category: str
    found_text: str = ""

    def machine_text(self) -> str:
        return (
            f"-:{self.line}:{self.col_start}-{self.col_end}: "
            f"syntax error, unexpected <{self.found}>"
        )


def _line_of(source: str, line: int) -> str:
    lines = source.split("\n")
    if 1 <= line <= len(lines):
        return lines[line - 1].rstrip("\r")
    return ""


def tokenize(source: str) -> list[Token] | ParseError:
    """Scan source into tokens; an unknown character is a lexical error."""
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "%":
            while i < n and source[i] != "\n":
                i += 1
                col += 1
            continue
        if ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, line, col))
            i += 1
            col += 1
            continue
        if ch == ":":
            if i + 1 < n and source[i + 1] == "-":
                tokens.append(Token(IF, ":-", line, col))
                i += 2
                col += 2
                continue
            return ParseError(
                line, col, col + 1, frozenset(), UNKNOWN, _line_of(source, line), LEXICAL, ch
            )
        if ch.isalpha():
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            text = source[i:j]
            if text == "not":
                cls = NOT
            elif text[0].islower():
                cls = IDENT
            else:
                cls = VAR
            tokens.append(Token(cls, text, line, col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(Token(INT, source[i:j], line, col))
            col += j - i
            i = j
            continue
        return ParseError(
            line, col, col + 1, frozenset(), UNKNOWN, _line_of(source, line), LEXICAL, ch
        )
    if tokens:
        last = tokens[-1]
        tokens.append(Token(EOF, "", last.line, last.col_end))
    else:
        tokens.append(Token(EOF, "", line, col))
    return tokens


class _Fail(Exception):
    def __init__(self, error: ParseError) -> None:
        super().__init__(error.machine_text())
        self.error = error


class _Parser:
    def __init__(self, tokens: list[Token], source: str) -> None:
        self.tokens = tokens
        self.source = source
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.cls != EOF:
            self.pos += 1
        return tok

    def fail(self, expected: Iterable[str], category: str | None = None) -> None:
        tok = self.peek()
        if category is None:
            if tok.cls == EOF:
                category = MISSING_DOT if DOT in expected else UNEXPECTED_TOKEN
            elif tok.cls == RPAREN:
                category = UNBALANCED_PARENS
            else:
                category = UNEXPECTED_TOKEN
        raise _Fail(
            ParseError(
                tok.line,
                tok.col,
                tok.col_end,
                frozenset(expected),
                tok.cls,
                _line_of(self.source, tok.line),
                category,
                tok.text,
            )
        )

    def expect(self, cls: str, expected: Iterable[str], category: str | None = None) -> Token:
        if self.peek().cls != cls:
            self.fail(expected, category)
        return self.advance()

    def parse_program(self) -> Program:
        rules = []
        while self.peek().cls != EOF:
            rules.append(self.parse_statement())
        return Program(rules)

    def parse_statement(self) -> Rule:
        start = self.peek()
        if start.cls == DOT:
            self.fail({IDENT, IF}, EMPTY_STATEMENT)
        head: list[Atom] = []
        pos_body: list[Atom] = []
        neg_body: list[Atom] = []
        if start.cls != IF:
            head.append(self.parse_atom())
            while self.peek().cls == PIPE:
                self.advance()
                head.append(self.parse_atom())
        if self.peek().cls == IF:
            self.advance()
            while True:
                negated = False
                if self.peek().cls == NOT:
                    self.advance()
                    negated = True
                atom = self.parse_atom()
                (neg_body if negated else pos_body).append(atom)
                if self.peek().cls != COMMA:
                    break
                self.advance()
        expected = {DOT, COMMA} if (pos_body or neg_body) else {DOT, PIPE, IF}
        end = self.expect(DOT, expected)
        span = (start.line, start.col, end.line, end.col_end)
        return Rule(frozenset(head), frozenset(pos_body), frozenset(neg_body), span)

    def parse_atom(self) -> Atom:
        name = self.expect(IDENT, {IDENT})
        args: list[Term] = []
        if self.peek().cls == LPAREN:
            self.advance()
            while True:
                args.append(self.parse_term())
                nxt = self.peek()
                if nxt.cls == COMMA:
                    self.advance()
                    continue
                if nxt.cls == RPAREN:
                    self.advance()
                    break
                if nxt.cls == LPAREN:
                    self.fail({COMMA, RPAREN}, FUNCTION_TERM)
                self.fail({COMMA, RPAREN}, UNBALANCED_PARENS)
        return Atom(name.text, tuple(args))

    def parse_term(self) -> Term:
        tok = self.peek()
        if tok.cls == IDENT:
            self.advance()
            if self.peek().cls == LPAREN:
                self.fail({COMMA, RPAREN}, FUNCTION_TERM)
            return constant(tok.text)
        if tok.cls == VAR:
            self.advance()
            return variable(tok.text)
        if tok.cls == INT:
            self.advance()
            return constant(tok.text)
        if tok.cls in (EOF, DOT):
            self.fail({IDENT, VAR, INT}, UNBALANCED_PARENS)
        self.fail({IDENT, VAR, INT}, UNEXPECTED_TOKEN)
        raise AssertionError("unreachable")


def parse_program(source: str) -> Program | ParseError:
    """Parse source, returning the first error in document order on failure."""
    tokens = tokenize(source)
    if isinstance(tokens, ParseError):
        return tokens
    try:
        return _Parser(tokens, source).parse_program()
    except _Fail as f:
        return f.error


def parse_atom_text(text: str) -> Atom:
    """Parse a single ground or non-ground atom, e.g. from a report file."""
    result = parse_program(text.strip().rstrip(".") + ".")
    if isinstance(result, ParseError):
        raise ValueError(f"not an atom: {text!r}")
    if len(result.rules) != 1:
        raise ValueError(f"not an atom: {text!r}")
    rule = result.rules[0]
    if not rule.is_fact or len(rule.head) != 1:
        raise ValueError(f"not an atom: {text!r}")
    return next(iter(rule.head))


RULE_SHAPE_REMINDER = (
    "Remember that rules are of the form\n"
    "    atom :- atom, not atom.\n"
    "and atoms are of the form\n"
    "    predicate\n"
    "or\n"
    "    predicate(arg1,arg2)\n"
    "or similar."
)


@dataclass(frozen=True)
class SyntaxHint:
    message: str
    caret_rendering: str
    reminder: str = RULE_SHAPE_REMINDER

    def to_text(self) -> str:
        return f"{self.caret_rendering}\n{self.message}\n{self.reminder}"


def _found_display(err: ParseError) -> str:
    if err.found == EOF:
        return "<EOF>"
    return f"'{err.found_text}'"


def _caret_line(err: ParseError) -> str:
    pad = " " * (err.col_start - 1)
    return pad + "^" * max(1, err.col_end - err.col_start)


def syntax_hint(err: ParseError) -> SyntaxHint:
    """Render a parse error as a caret drawing plus a shape reminder."""
    if err.category == MISSING_DOT:
        message = "Syntax error, unexpected <EOF>."
    elif err.category == EMPTY_STATEMENT:
        message = "Syntax error, a statement needs a head or a body before '.'."
    elif err.category == UNBALANCED_PARENS:
        message = f"Syntax error, unexpected {_found_display(err)}: unbalanced parentheses."
    elif err.category == FUNCTION_TERM:
        message = (
            "Syntax error, function terms are not supported: "
            "arguments must be constants or variables."
        )
    elif err.category == LEXICAL:
        message = f"Syntax error, unexpected character '{err.found_text}'."
    elif err.found == SEMICOLON:
        message = "Syntax error, unexpected ';'. Statements end with '.'."
    else:
        message = f"Syntax error, unexpected {_found_display(err)}."
    caret = f"{err.source_line_text}\n{_caret_line(err)}"
    return SyntaxHint(message, caret)
