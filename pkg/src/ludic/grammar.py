"""Surface syntax for ludeme game descriptions.

A description is an S-expression: parentheses build *calls* (a head
identifier plus ordered arguments), braces build *groups* (plain ordered
collections), and the leaves are identifiers, quoted strings and base-10
integers. ``//`` starts a comment running to end of line.

The token-count measure used for description-size comparisons counts
atoms plus call heads; the structural delimiters ``( ) { }`` contribute
nothing, so the count is invariant under reformatting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from .errors import ParseError

OPEN_PAREN = "open-paren"
CLOSE_PAREN = "close-paren"
OPEN_BRACE = "open-brace"
CLOSE_BRACE = "close-brace"
IDENTIFIER = "identifier"
STRING = "string-literal"
INTEGER = "integer-literal"

_DELIMS = {"(": OPEN_PAREN, ")": CLOSE_PAREN, "{": OPEN_BRACE, "}": CLOSE_BRACE}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str  # string literals are stored unquoted and unescaped
    line: int
    column: int


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Str:
    value: str


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class Call:
    head: str
    args: tuple["Node", ...] = ()


@dataclass(frozen=True)
class Group:
    items: tuple["Node", ...] = ()


Node = Union[Sym, Str, Int, Call, Group]


def _is_ident_start(c: str) -> bool:
    return c.isalpha() or c == "_"


def _is_ident_char(c: str) -> bool:
    return c.isalnum() or c in "_-"


def tokenize(text: str) -> list[Token]:
    """Lex a description into tokens with 1-based line/column positions."""
    tokens: list[Token] = []
    i, n = 0, len(text)
    line, col = 1, 1

    def advance(k: int = 1):
        nonlocal i, line, col
        for _ in range(k):
            if i < n and text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        c = text[i]
        if c in " \t\r\n":
            advance()
            continue
        if c == "/" and i + 1 < n and text[i + 1] == "/":
            while i < n and text[i] != "\n":
                advance()
            continue
        if c in _DELIMS:
            tokens.append(Token(_DELIMS[c], c, line, col))
            advance()
            continue
        if c == '"':
            start_line, start_col = line, col
            advance()
            chars: list[str] = []
            while True:
                if i >= n or text[i] == "\n":
                    raise ParseError("unterminated string literal", start_line, start_col)
                c = text[i]
                if c == "\\":
                    if i + 1 >= n:
                        raise ParseError("unterminated string literal", start_line, start_col)
                    esc = text[i + 1]
                    if esc not in '"\\':
                        raise ParseError(f"unknown escape '\\{esc}'", line, col)
                    chars.append(esc)
                    advance(2)
                    continue
                if c == '"':
                    advance()
                    break
                chars.append(c)
                advance()
            tokens.append(Token(STRING, "".join(chars), start_line, start_col))
            continue
        if c.isdigit() or (c == "-" and i + 1 < n and text[i + 1].isdigit()):
            start_line, start_col = line, col
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token(INTEGER, text[i:j], start_line, start_col))
            advance(j - i)
            continue
        if _is_ident_start(c):
            start_line, start_col = line, col
            j = i + 1
            while j < n and _is_ident_char(text[j]):
                j += 1
            tokens.append(Token(IDENTIFIER, text[i:j], start_line, start_col))
            advance(j - i)
            continue
        raise ParseError(f"illegal character {c!r}", line, col)
    return tokens


class _TokenStream:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> Token | None:
        tok = self.peek()
        if tok is not None:
            self.pos += 1
        return tok


def _parse_node(ts: _TokenStream) -> Node:
    tok = ts.next()
    assert tok is not None
    if tok.kind == OPEN_PAREN:
        head = ts.next()
        if head is None:
            raise ParseError("unbalanced '('", tok.line, tok.column)
        if head.kind == CLOSE_PAREN:
            raise ParseError("empty call '()'", tok.line, tok.column)
        if head.kind != IDENTIFIER:
            raise ParseError("call head must be an identifier", head.line, head.column)
        args: list[Node] = []
        while True:
            nxt = ts.peek()
            if nxt is None:
                raise ParseError("unbalanced '('", tok.line, tok.column)
            if nxt.kind == CLOSE_PAREN:
                ts.next()
                return Call(head.text, tuple(args))
            if nxt.kind == CLOSE_BRACE:
                raise ParseError("mismatched '}' inside '(...)'", nxt.line, nxt.column)
            args.append(_parse_node(ts))
    if tok.kind == OPEN_BRACE:
        items: list[Node] = []
        while True:
            nxt = ts.peek()
            if nxt is None:
                raise ParseError("unbalanced '{'", tok.line, tok.column)
            if nxt.kind == CLOSE_BRACE:
                ts.next()
                return Group(tuple(items))
            if nxt.kind == CLOSE_PAREN:
                raise ParseError("mismatched ')' inside '{...}'", nxt.line, nxt.column)
            items.append(_parse_node(ts))
    if tok.kind == IDENTIFIER:
        return Sym(tok.text)
    if tok.kind == STRING:
        return Str(tok.text)
    if tok.kind == INTEGER:
        return Int(int(tok.text))
    raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.column)


def parse(tokens: list[Token]) -> Node:
    """Parse a token sequence into a single expression tree."""
    ts = _TokenStream(tokens)
    if ts.peek() is None:
        raise ParseError("empty input", 1, 1)
    node = _parse_node(ts)
    extra = ts.peek()
    if extra is not None:
        raise ParseError("trailing input after expression", extra.line, extra.column)
    return node


def parse_text(text: str) -> Node:
    return parse(tokenize(text))


def parse_game(text: str) -> Call:
    """Parse a full game description; the root must be `(game "Name" ...)`."""
    node = parse_text(text)
    if not isinstance(node, Call) or node.head != "game":
        raise ParseError("root is not a 'game' call", 1, 1)
    if not node.args or not isinstance(node.args[0], Str):
        raise ParseError("'game' requires a string name as first argument", 1, 1)
    return node


def count_tokens(node: Node) -> int:
    """Atoms plus call heads; delimiters are never counted."""
    if isinstance(node, (Sym, Str, Int)):
        return 1
    if isinstance(node, Call):
        return 1 + sum(count_tokens(a) for a in node.args)
    return sum(count_tokens(item) for item in node.items)


def iter_nodes(node: Node) -> Iterator[Node]:
    """Pre-order traversal."""
    yield node
    if isinstance(node, Call):
        for a in node.args:
            yield from iter_nodes(a)
    elif isinstance(node, Group):
        for item in node.items:
            yield from iter_nodes(item)


def _atom_text(node: Node) -> str:
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Int):
        return str(node.value)
    assert isinstance(node, Str)
    escaped = node.value.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def _render(node: Node) -> str:
    if isinstance(node, (Sym, Str, Int)):
        return _atom_text(node)
    if isinstance(node, Call):
        inner = " ".join([node.head] + [_render(a) for a in node.args])
        return f"({inner})"
    return "{" + " ".join(_render(i) for i in node.items) + "}"


_INLINE_WIDTH = 72


def _format(node: Node, indent: int) -> str:
    flat = _render(node)
    if len(flat) + indent <= _INLINE_WIDTH:
        return flat
    pad = " " * (indent + 2)
    if isinstance(node, Call):
        parts = [f"({node.head}"]
        for a in node.args:
            parts.append(pad + _format(a, indent + 2))
        return "\n".join(parts) + "\n" + " " * indent + ")"
    if isinstance(node, Group):
        parts = ["{"]
        for item in node.items:
            parts.append(pad + _format(item, indent + 2))
        return "\n".join(parts) + "\n" + " " * indent + "}"
    return flat


def format_tree(node: Node) -> str:
    """Pretty-print; the result re-parses to an equal tree."""
    return _format(node, 0) + "\n"


# --- named option blocks -------------------------------------------------

def option_names(game: Call) -> list[str]:
    """The option names declared by a game description, in order."""
    names = []
    for arg in game.args:
        if isinstance(arg, Call) and arg.head == "option":
            if not arg.args or not isinstance(arg.args[0], Str):
                raise ParseError("'option' requires a string name")
            names.append(arg.args[0].value)
    return names


def _substitute(node: Node, replacement: Call, done: list[bool]) -> Node:
    """Replace the first same-head call (pre-order), skipping option blocks."""
    if done[0]:
        return node
    if isinstance(node, Call):
        if node.head == "option":
            return node
        if node.head == replacement.head:
            done[0] = True
            return replacement
        new_args = tuple(_substitute(a, replacement, done) for a in node.args)
        return Call(node.head, new_args)
    if isinstance(node, Group):
        return Group(tuple(_substitute(i, replacement, done) for i in node.items))
    return node


def resolve_options(game: Call, selected: list[str] | None = None) -> Call:
    """Apply the selected option blocks and strip all option declarations.

    Each subtree inside a selected ``(option "Name" { ... })`` block replaces
    the first call with the same head in the main description, in selection
    order. Unknown option names raise ParseError.
    """
    selected = list(selected or [])
    blocks: dict[str, Group] = {}
    main_args = []
    for arg in game.args:
        if isinstance(arg, Call) and arg.head == "option":
            if len(arg.args) != 2 or not isinstance(arg.args[0], Str) \
                    or not isinstance(arg.args[1], Group):
                raise ParseError("'option' takes a string name and a { ... } block")
            blocks[arg.args[0].value] = arg.args[1]
        else:
            main_args.append(arg)
    resolved: Node = Call(game.head, tuple(main_args))
    for name in selected:
        if name not in blocks:
            raise ParseError(f"unknown option {name!r}")
        for repl in blocks[name].items:
            if not isinstance(repl, Call):
                raise ParseError(f"option {name!r} may only contain calls")
            done = [False]
            resolved = _substitute(resolved, repl, done)
            if not done[0]:
                raise ParseError(f"option {name!r}: no '{repl.head}' call to replace")
    assert isinstance(resolved, Call)
    return resolved
