"""STAD document format: parsing and canonical serialization.

A STAD (service trust advertisement document) is a strict subset of Turtle:

    document  := (directive | statement)*
    directive := '@prefix' PNAME_LABEL ':' IRIREF '.'
    statement := subject polist '.'
    polist    := verb objectlist (';' verb objectlist)*
    verb      := 'a' | iri
    subject   := iri | BLANK
    objectlist:= object (',' object)*
    object    := iri | BLANK | literal
    iri       := IRIREF | PNAME_LABEL ':' LOCAL
    literal   := STRING ('@' LANGTAG | '^^' iri)? | INTEGER | DECIMAL
                 | 'true' | 'false'

Not supported on purpose: collections, anonymous blank nodes ``[]``,
``@base``, multiline strings.  ``#`` starts a comment outside strings and
IRIs.  Tokens are whitespace separated except the punctuation ``. ; ,``.

Lexical choices this module owns (the grammar above leaves them open):

* prefix labels match ``[A-Za-z][A-Za-z0-9_-]*``; there is no empty
  (default) prefix,
* local names match ``[A-Za-z_][A-Za-z0-9_-]*`` (no dots, which keeps the
  trailing statement dot unambiguous; ``5.`` is integer five plus dot),
* blank node labels match ``[A-Za-z][A-Za-z0-9_]*``,
* string escapes are exactly ``\\"  \\\\  \\n  \\t``; raw newlines inside a
  string are an error, so a string can never carry a carriage return,
* a language tag or ``^^`` must immediately follow the closing quote,
* ``@prefix`` may rebind a label; later triples use the newest binding.

Parse errors raise :class:`StadParseError` with a stable code and the
1-based line/column of the first offending character:

    P001 unexpected-char   P002 unterminated-string   P003 bad-prefix
    P004 unknown-prefix    P005 bad-literal           P006 missing-dot
    P007 bad-iri

Only the first error is reported and no partial graph escapes.  Inputs over
10 MB (and strs that cannot encode to UTF-8) are rejected as P001 with an
explanatory message; the code set is closed.

Typed literals whose datatype is xsd:integer, xsd:decimal, xsd:date or
xsd:boolean get their lexical form checked at parse time (calendar-checked
for dates).  Other datatypes are carried opaquely.  ``"..."^^xsd:string``
normalizes to a plain literal.

Canonical serialization emits the prefix block sorted by label, then one
triple per line sorted by (subject, predicate, object) over full IRIs, with
blank nodes relabeled ``_:b0, _:b1, ...``.  Relabeling and sorting are
iterated to a fixed point so serialize(parse(serialize(g))) == serialize(g).
Set-equal graphs with equal prefix tables serialize byte-identically.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .vocab import (
    Iri,
    PrefixTable,
    RDF_NS,
    XSD_NS,
    is_absolute_iri,
)

MAX_DOCUMENT_BYTES = 10 * 1024 * 1024

RDF_TYPE = Iri(RDF_NS + "type")
XSD_STRING = Iri(XSD_NS + "string")
XSD_INTEGER = Iri(XSD_NS + "integer")
XSD_DECIMAL = Iri(XSD_NS + "decimal")
XSD_DATE = Iri(XSD_NS + "date")
XSD_BOOLEAN = Iri(XSD_NS + "boolean")
XSD_ANYURI = Iri(XSD_NS + "anyURI")


@dataclass(frozen=True)
class BlankNode:
    label: str


@dataclass(frozen=True)
class Literal:
    """Plain, language-tagged or typed literal.

    ``language`` and ``datatype`` are mutually exclusive; both unset means a
    plain (string) literal.
    """

    lexical: str
    language: str | None = None
    datatype: Iri | None = None

    def __post_init__(self) -> None:
        if self.language is not None and self.datatype is not None:
            raise ValueError("literal cannot be both language-tagged and typed")


Term = Iri | BlankNode | Literal


@dataclass(frozen=True)
class Triple:
    subject: Iri | BlankNode
    predicate: Iri
    object: Term


@dataclass(frozen=True)
class TrustGraph:
    """A de-duplicated set of triples plus the parse-time prefix table."""

    triples: frozenset[Triple]
    prefixes: PrefixTable = field(default_factory=PrefixTable)

    def __len__(self) -> int:
        return len(self.triples)

    def subjects(self) -> set[Iri | BlankNode]:
        return {t.subject for t in self.triples}


class StadParseError(Exception):
    """First parse error in a document; no partial graph is produced."""

    def __init__(self, code: str, line: int, column: int, message: str):
        super().__init__(f"{code} at {line}:{column}: {message}")
        self.code = code
        self.line = line
        self.column = column
        self.message = message

    def to_dict(self) -> dict[str, object]:
        return {
            "code": self.code,
            "line": self.line,
            "column": self.column,
            "message": self.message,
        }


_PREFIX_LABEL_RE = re.compile(r"[A-Za-z][A-Za-z0-9_-]*")
_LOCAL_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*")
_BLANK_LABEL_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_LANGTAG_RE = re.compile(r"[A-Za-z]{1,8}(-[A-Za-z0-9]{1,8})*")
_INTEGER_RE = re.compile(r"[+-]?[0-9]+\Z")
_DECIMAL_RE = re.compile(r"[+-]?[0-9]*\.[0-9]+\Z")
_XSD_DECIMAL_LEX_RE = re.compile(r"[+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)\Z")
_DATE_LEX_RE = re.compile(r"([0-9]{4})-([0-9]{2})-([0-9]{2})\Z")
_WORD_RE = re.compile(r"[A-Za-z][A-Za-z0-9_-]*")

# Characters that terminate an unquoted token.
_IRI_FORBIDDEN = set(' <>"{}|^`\\')

_DAYS_IN_MONTH = (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)


def _valid_date_lexical(lex: str) -> bool:
    m = _DATE_LEX_RE.match(lex)
    if not m:
        return False
    year, month, day = int(m.group(1)), int(m.group(2)), int(m.group(3))
    if not 1 <= month <= 12 or day < 1:
        return False
    days = _DAYS_IN_MONTH[month - 1]
    if month == 2 and (year % 4 == 0 and (year % 100 != 0 or year % 400 == 0)):
        days = 29
    return day <= days


def _valid_typed_lexical(lex: str, datatype: Iri) -> bool:
    if datatype == XSD_INTEGER:
        return bool(_INTEGER_RE.match(lex))
    if datatype == XSD_DECIMAL:
        return bool(_XSD_DECIMAL_LEX_RE.match(lex))
    if datatype == XSD_DATE:
        return _valid_date_lexical(lex)
    if datatype == XSD_BOOLEAN:
        return lex in ("true", "false", "1", "0")
    return True


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.n = len(text)
        self.pos = 0
        self.line = 1
        self.col = 1
        self.prefixes: dict[str, Iri] = {}
        self.triples: set[Triple] = set()

    # -- low-level ---------------------------------------------------------

    def _err(self, code: str, message: str, line: int | None = None,
             col: int | None = None) -> StadParseError:
        return StadParseError(code, line if line is not None else self.line,
                              col if col is not None else self.col, message)

    def _peek(self) -> str:
        return self.text[self.pos] if self.pos < self.n else ""

    def _advance(self, count: int = 1) -> None:
        for _ in range(count):
            if self.pos >= self.n:
                return
            if self.text[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def _skip_ws(self) -> None:
        while self.pos < self.n:
            ch = self.text[self.pos]
            if ch in " \t\r\n":
                self._advance()
            elif ch == "#":
                while self.pos < self.n and self.text[self.pos] != "\n":
                    self._advance()
            else:
                return

    def _at_eof(self) -> bool:
        self._skip_ws()
        return self.pos >= self.n

    # -- token scanners ----------------------------------------------------

    def _scan_iriref(self) -> Iri:
        line, col = self.line, self.col
        self._advance()  # consume '<'
        start = self.pos
        while self.pos < self.n:
            ch = self.text[self.pos]
            if ch == ">":
                value = self.text[start:self.pos]
                self._advance()
                if not value or not is_absolute_iri(value):
                    raise self._err("P007", f"IRI must be absolute: <{value}>",
                                    line, col)
                return Iri(value)
            if ch == "\n" or ch in _IRI_FORBIDDEN or ord(ch) < 0x20:
                raise self._err("P007", "illegal character in IRI reference")
            self._advance()
        raise self._err("P007", "unterminated IRI reference", line, col)

    def _scan_pname(self) -> Iri:
        line, col = self.line, self.col
        m = _PREFIX_LABEL_RE.match(self.text, self.pos)
        label = m.group(0)
        self._advance(len(label))
        if self._peek() != ":":
            raise self._err("P001", f"unexpected token {label!r}", line, col)
        self._advance()
        m = _LOCAL_RE.match(self.text, self.pos)
        if not m:
            raise self._err("P001", "expected local name after ':'")
        local = m.group(0)
        self._advance(len(local))
        ns = self.prefixes.get(label)
        if ns is None:
            raise self._err("P004", f"unknown prefix: {label!r}", line, col)
        return Iri(ns.value + local)

    def _scan_blank(self) -> BlankNode:
        line, col = self.line, self.col
        self._advance()  # '_'
        if self._peek() != ":":
            raise self._err("P001", "expected ':' after '_'")
        self._advance()
        m = _BLANK_LABEL_RE.match(self.text, self.pos)
        if not m:
            raise self._err("P001", "invalid blank node label")
        label = m.group(0)
        self._advance(len(label))
        return BlankNode(label)

    def _scan_string(self) -> Literal:
        line, col = self.line, self.col
        self._advance()  # opening quote
        out: list[str] = []
        while True:
            if self.pos >= self.n:
                raise self._err("P002", "unterminated string literal", line, col)
            ch = self.text[self.pos]
            if ch == '"':
                self._advance()
                break
            if ch in "\n\r":
                raise self._err("P002", "string literal spans line break")
            if ch == "\\":
                esc_line, esc_col = self.line, self.col
                self._advance()
                esc = self._peek()
                if esc == '"':
                    out.append('"')
                elif esc == "\\":
                    out.append("\\")
                elif esc == "n":
                    out.append("\n")
                elif esc == "t":
                    out.append("\t")
                else:
                    raise self._err("P005", f"invalid string escape '\\{esc}'",
                                    esc_line, esc_col)
                self._advance()
            else:
                out.append(ch)
                self._advance()
        lexical = "".join(out)
        # Language tag or datatype must be adjacent to the closing quote.
        if self._peek() == "@":
            self._advance()
            m = _LANGTAG_RE.match(self.text, self.pos)
            if not m:
                raise self._err("P005", "malformed language tag")
            tag = m.group(0)
            self._advance(len(tag))
            return Literal(lexical, language=tag)
        if self.text.startswith("^^", self.pos):
            self._advance(2)
            ch = self._peek()
            dt_line, dt_col = self.line, self.col
            if ch == "<":
                datatype = self._scan_iriref()
            elif _WORD_RE.match(ch or ""):
                datatype = self._scan_pname()
            else:
                raise self._err("P005", "expected datatype IRI after '^^'")
            if datatype == XSD_STRING:
                return Literal(lexical)
            if not _valid_typed_lexical(lexical, datatype):
                raise self._err(
                    "P005",
                    f"invalid lexical form {lexical!r} for datatype <{datatype}>",
                    line, col)
            return Literal(lexical, datatype=datatype)
        return Literal(lexical)

    def _scan_number(self) -> Literal:
        line, col = self.line, self.col
        start = self.pos
        if self._peek() in "+-":
            self._advance()
        digits = 0
        while self._peek().isdigit():
            self._advance()
            digits += 1
        is_decimal = False
        if (self._peek() == "." and self.pos + 1 < self.n
                and self.text[self.pos + 1].isdigit()):
            self._advance()
            while self._peek().isdigit():
                self._advance()
            is_decimal = True
        token = self.text[start:self.pos]
        if digits == 0 and not is_decimal:
            raise self._err("P005", f"malformed numeric literal {token!r}",
                            line, col)
        if is_decimal:
            if not _DECIMAL_RE.match(token):
                raise self._err("P005", f"malformed decimal literal {token!r}",
                                line, col)
            return Literal(token, datatype=XSD_DECIMAL)
        if not _INTEGER_RE.match(token):
            raise self._err("P005", f"malformed integer literal {token!r}",
                            line, col)
        return Literal(token, datatype=XSD_INTEGER)

    # -- grammar -----------------------------------------------------------

    def _parse_directive(self) -> None:
        line, col = self.line, self.col
        m = _WORD_RE.match(self.text, self.pos + 1)
        word = m.group(0) if m else ""
        if word != "prefix":
            raise self._err("P001", f"unexpected directive '@{word}'", line, col)
        self._advance(1 + len(word))
        self._skip_ws()
        m = _PREFIX_LABEL_RE.match(self.text, self.pos)
        if not m:
            raise self._err("P003", "expected prefix label after @prefix")
        label = m.group(0)
        self._advance(len(label))
        if self._peek() != ":":
            raise self._err("P003", f"expected ':' after prefix label {label!r}")
        self._advance()
        self._skip_ws()
        if self._peek() != "<":
            raise self._err("P003", "expected namespace IRI in @prefix directive")
        ns = self._scan_iriref()
        self._skip_ws()
        if self._peek() != ".":
            raise self._err("P006", "expected '.' after @prefix directive")
        self._advance()
        self.prefixes[label] = ns

    def _parse_subject(self) -> Iri | BlankNode:
        ch = self._peek()
        if ch == "<":
            return self._scan_iriref()
        if ch == "_":
            return self._scan_blank()
        if _WORD_RE.match(ch or ""):
            line, col = self.line, self.col
            m = _WORD_RE.match(self.text, self.pos)
            word = m.group(0)
            follows = self.text[self.pos + len(word):self.pos + len(word) + 1]
            if word in ("a", "true", "false") and follows != ":":
                raise self._err("P001", f"{word!r} cannot be a subject", line, col)
            return self._scan_pname()
        raise self._err("P001", f"unexpected character {ch!r} at subject position"
                        if ch else "unexpected end of input at subject position")

    def _parse_verb(self) -> Iri:
        ch = self._peek()
        if ch == "<":
            return self._scan_iriref()
        if _WORD_RE.match(ch or ""):
            m = _WORD_RE.match(self.text, self.pos)
            word = m.group(0)
            follows = self.text[self.pos + len(word):self.pos + len(word) + 1]
            if word == "a" and follows != ":":
                self._advance()
                return RDF_TYPE
            if word in ("true", "false") and follows != ":":
                raise self._err("P001", f"{word!r} cannot be a predicate")
            return self._scan_pname()
        raise self._err("P001", f"unexpected character {ch!r} at predicate position"
                        if ch else "unexpected end of input in statement")

    def _parse_object(self) -> Term:
        ch = self._peek()
        if ch == "<":
            return self._scan_iriref()
        if ch == "_":
            return self._scan_blank()
        if ch == '"':
            return self._scan_string()
        if ch and (ch.isdigit() or ch in "+-"):
            return self._scan_number()
        if _WORD_RE.match(ch or ""):
            m = _WORD_RE.match(self.text, self.pos)
            word = m.group(0)
            follows = self.text[self.pos + len(word):self.pos + len(word) + 1]
            if word in ("true", "false") and follows != ":":
                self._advance(len(word))
                return Literal(word, datatype=XSD_BOOLEAN)
            return self._scan_pname()
        raise self._err("P001", f"unexpected character {ch!r} at object position"
                        if ch else "unexpected end of input in statement")

    def _parse_statement(self) -> None:
        subject = self._parse_subject()
        while True:
            self._skip_ws()
            if self.pos >= self.n:
                raise self._err("P006", "unterminated statement, expected '.'")
            predicate = self._parse_verb()
            while True:
                self._skip_ws()
                if self.pos >= self.n:
                    raise self._err("P006", "unterminated statement, expected '.'")
                obj = self._parse_object()
                self.triples.add(Triple(subject, predicate, obj))
                self._skip_ws()
                ch = self._peek()
                if ch == ",":
                    self._advance()
                    continue
                break
            if ch == ";":
                self._advance()
                self._skip_ws()
                continue
            if ch == ".":
                self._advance()
                return
            if not ch:
                raise self._err("P006", "unterminated statement, expected '.'")
            raise self._err("P006", f"expected '.', ';' or ',' but found {ch!r}")

    def parse(self) -> TrustGraph:
        while not self._at_eof():
            if self._peek() == "@":
                self._parse_directive()
            else:
                self._parse_statement()
        return TrustGraph(frozenset(self.triples), PrefixTable(self.prefixes))


def parse_document(text: str, *, max_bytes: int = MAX_DOCUMENT_BYTES) -> TrustGraph:
    """Parse STAD text into a TrustGraph.

    Raises StadParseError for any malformed input; never raises anything
    else, never returns a partial graph.
    """
    try:
        encoded_size = len(text.encode("utf-8"))
    except UnicodeEncodeError:
        raise StadParseError("P001", 1, 1, "input is not encodable as UTF-8") from None
    if encoded_size > max_bytes:
        raise StadParseError(
            "P001", 1, 1,
            f"document size {encoded_size} exceeds limit of {max_bytes} bytes")
    return _Parser(text).parse()


# -- canonical serialization ------------------------------------------------

_BARE_INTEGER_RE = _INTEGER_RE
_BARE_DECIMAL_RE = _DECIMAL_RE


def _term_key(term: Term, blank_rank: Mapping[str, int]) -> tuple:
    if isinstance(term, BlankNode):
        return (0, blank_rank.get(term.label, 0), term.label)
    if isinstance(term, Iri):
        return (1, term.value)
    lang = term.language or ""
    dt = term.datatype.value if term.datatype else ""
    return (2, term.lexical, dt, lang)


def _canonical_stream(triples: Iterable[Triple]) -> tuple[list[Triple], dict[str, str]]:
    """Stable triple order plus canonical blank labels.

    Sorting by (S, P, O) and relabeling by first appearance interact, so both
    are iterated to a fixed point; the loop is capped defensively and the cap
    still yields a deterministic result.
    """
    triples = list(triples)
    labels = sorted({t.label for tr in triples for t in (tr.subject, tr.object)
                     if isinstance(t, BlankNode)})
    rank = {label: i for i, label in enumerate(labels)}
    ordered = sorted(triples, key=lambda tr: (
        _term_key(tr.subject, rank), _term_key(tr.predicate, rank),
        _term_key(tr.object, rank)))
    for _ in range(len(labels) + 3):
        new_rank: dict[str, int] = {}
        for tr in ordered:
            for term in (tr.subject, tr.object):
                if isinstance(term, BlankNode) and term.label not in new_rank:
                    new_rank[term.label] = len(new_rank)
        if new_rank == rank:
            break
        rank = new_rank
        ordered = sorted(triples, key=lambda tr: (
            _term_key(tr.subject, rank), _term_key(tr.predicate, rank),
            _term_key(tr.object, rank)))
    return ordered, {label: f"b{i}" for label, i in rank.items()}


def _escape_string(lexical: str) -> str:
    # The grammar has no \r escape, so such literals cannot be written out.
    if "\r" in lexical:
        raise ValueError(
            "literal contains a carriage return, which this format "
            "cannot represent")
    return (lexical.replace("\\", "\\\\").replace('"', '\\"')
            .replace("\n", "\\n").replace("\t", "\\t"))


class _TermRenderer:
    def __init__(self, prefixes: PrefixTable, blank_names: Mapping[str, str]):
        # Longest namespace wins; ties go to the alphabetically first label.
        self._namespaces = sorted(
            ((ns.value, label) for label, ns in prefixes.items()),
            key=lambda pair: (-len(pair[0]), pair[1]))
        self._blank_names = blank_names

    def iri(self, iri: Iri) -> str:
        for ns, label in self._namespaces:
            if iri.value.startswith(ns):
                local = iri.value[len(ns):]
                if local and _LOCAL_RE.fullmatch(local):
                    return f"{label}:{local}"
        return f"<{iri.value}>"

    def term(self, term: Term) -> str:
        if isinstance(term, Iri):
            return self.iri(term)
        if isinstance(term, BlankNode):
            return f"_:{self._blank_names.get(term.label, term.label)}"
        return self.literal(term)

    def literal(self, lit: Literal) -> str:
        if lit.language:
            return f'"{_escape_string(lit.lexical)}"@{lit.language}'
        if lit.datatype is None:
            return f'"{_escape_string(lit.lexical)}"'
        if lit.datatype == XSD_INTEGER and _BARE_INTEGER_RE.match(lit.lexical):
            return lit.lexical
        if lit.datatype == XSD_DECIMAL and _BARE_DECIMAL_RE.match(lit.lexical):
            return lit.lexical
        if lit.datatype == XSD_BOOLEAN and lit.lexical in ("true", "false"):
            return lit.lexical
        return f'"{_escape_string(lit.lexical)}"^^{self.iri(lit.datatype)}'


def serialize_graph(graph: TrustGraph) -> str:
    """Canonical text form; deterministic for set-equal graphs."""
    ordered, blank_names = _canonical_stream(graph.triples)
    render = _TermRenderer(graph.prefixes, blank_names)
    prefix_lines = [f"@prefix {label}: <{ns}> ."
                    for label, ns in sorted(graph.prefixes.items())]
    triple_lines = []
    for tr in ordered:
        pred = "a" if tr.predicate == RDF_TYPE else render.iri(tr.predicate)
        triple_lines.append(
            f"{render.term(tr.subject)} {pred} {render.term(tr.object)} .")
    parts = []
    if prefix_lines:
        parts.append("\n".join(prefix_lines))
    if triple_lines:
        parts.append("\n".join(triple_lines))
    if not parts:
        return ""
    return "\n\n".join(parts) + "\n"


def canonical_triples(graph: TrustGraph) -> tuple[str, ...]:
    """Prefix-independent canonical triple renderings.

    Two graphs are equal up to canonical blank relabeling iff these tuples
    are equal.
    """
    ordered, blank_names = _canonical_stream(graph.triples)
    render = _TermRenderer(PrefixTable(), blank_names)
    return tuple(
        f"{render.term(t.subject)} {render.term(t.predicate)} {render.term(t.object)}"
        for t in ordered)
