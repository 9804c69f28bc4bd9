"""Concrete syntax: formulas, programs, model documents, frame files.

The formula grammar, loosest binding first: `->` (right associative),
`\\/`, `/\\`, then the unary prefixes `~`, `<>`, `[]`, the temporal
operators, and `<program>`; parentheses override.  Unicode aliases for
the connectives are accepted and normalized.  Programs: `u` (choice),
`;` (sequence), postfix `*`, and tests `name?` or `(formula)?`.

Model documents are line oriented with `#` comments.  A relation
document has MODE, WORLDS, one `REL alpha` line for the point, further
REL lines for program letters, and VAL lines.  A groupoid document has
MODE, OBJECTS, ARROWS (name dom cod), optional INV and COMP lines, a
POINT line naming arrows, and VAL lines over objects.  Frame files list
ELEMENTS and generating LEQ pairs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ModelFormatError, ParseError, UndeclaredWorld
from .formulas import (
    And,
    Atom,
    Box,
    Diamond,
    Implies,
    Mode,
    Not,
    Or,
    PAtom,
    PChoice,
    ProgDiamond,
    PSeq,
    PStar,
    PTest,
    TEMPORAL_OPS,
    Temporal,
)
from .lattice import FiniteSupLattice, make_lattice
from .quantale import (
    FiniteGroupoid,
    RelationQuantale,
    groupoid_quantale,
)
from .relations import encode
from .semantics import PointedModel

_ALIASES = {
    "◇": "<>", "□": "[]", "¬": "~",
    "∧": "/\\", "∨": "\\/", "→": "->",
}

_TOKEN_RE = re.compile(
    r"[A-Za-z_][A-Za-z0-9_]*"
    r"|<>|\[\]|->|/\\|\\/"
    r"|[~()<>;*?◇□¬∧∨→]")


@dataclass(frozen=True)
class _Tok:
    kind: str
    line: int
    col: int


_END = "end of input"


def _tokenize(text: str):
    toks = []
    line = 1
    start = 0
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch == "\n":
            line += 1
            start = pos + 1
            pos += 1
            continue
        if ch.isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {ch!r}",
                             line, pos - start + 1)
        kind = _ALIASES.get(m.group(), m.group())
        toks.append(_Tok(kind, line, pos - start + 1))
        pos = m.end()
    toks.append(_Tok(_END, line, pos - start + 1))
    return toks


def _is_name(tok):
    if tok.kind == _END:
        return False
    return tok.kind[0].isalpha() or tok.kind[0] == "_"


class _Parser:
    def __init__(self, toks, mode):
        self.toks = toks
        self.i = 0
        self.mode = mode

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, message, expected=()):
        tok = self.peek()
        raise ParseError(f"{message}, found {tok.kind!r}",
                         tok.line, tok.col, expected)

    def expect(self, kind):
        if self.peek().kind != kind:
            self.fail(f"expected {kind!r}", {kind})
        return self.take()

    # --- formulas ---------------------------------------------------------

    def formula(self):
        left = self.disjunction()
        if self.peek().kind == "->":
            self.take()
            return Implies(left, self.formula())
        return left

    def disjunction(self):
        out = self.conjunction()
        while self.peek().kind == "\\/":
            self.take()
            out = Or(out, self.conjunction())
        return out

    def conjunction(self):
        out = self.unary()
        while self.peek().kind == "/\\":
            self.take()
            out = And(out, self.unary())
        return out

    def unary(self):
        tok = self.peek()
        if tok.kind == "~":
            self.take()
            return Not(self.unary())
        if tok.kind == "<>":
            if self.mode not in (Mode.CLASSICAL, Mode.INTUITIONISTIC):
                self.fail(f"'<>' is not a {self.mode.value} connective")
            self.take()
            return Diamond(self.unary())
        if tok.kind == "[]":
            if self.mode not in (Mode.CLASSICAL, Mode.INTUITIONISTIC):
                self.fail(f"'[]' is not a {self.mode.value} connective")
            self.take()
            return Box(self.unary())
        if tok.kind in TEMPORAL_OPS:
            if self.mode != Mode.CTL:
                self.fail(f"temporal operator {tok.kind} needs ctl mode")
            self.take()
            return Temporal(tok.kind, self.unary())
        if tok.kind == "<":
            if self.mode != Mode.PDL:
                self.fail("program diamonds need pdl mode")
            self.take()
            prog = self.program()
            self.expect(">")
            return ProgDiamond(prog, self.unary())
        return self.atomish()

    def atomish(self):
        tok = self.peek()
        if _is_name(tok):
            self.take()
            return Atom(tok.kind)
        if tok.kind == "(":
            self.take()
            out = self.formula()
            self.expect(")")
            return out
        self.fail("expected a formula", {"atom", "'('"})

    # --- programs ---------------------------------------------------------

    def program(self):
        out = self.sequence()
        while self.peek().kind == "u":
            self.take()
            out = PChoice(out, self.sequence())
        return out

    def sequence(self):
        out = self.postfix()
        while self.peek().kind == ";":
            self.take()
            out = PSeq(out, self.postfix())
        return out

    def postfix(self):
        out = self.primary()
        while self.peek().kind == "*":
            self.take()
            out = PStar(out)
        return out

    def primary(self):
        tok = self.peek()
        if _is_name(tok) and tok.kind not in TEMPORAL_OPS:
            self.take()
            if self.peek().kind == "?":
                self.take()
                return PTest(Atom(tok.kind))
            return PAtom(tok.kind)
        if tok.kind == "(":
            if self._group_is_test():
                self.take()
                f = self.formula()
                self.expect(")")
                self.expect("?")
                return PTest(f)
            self.take()
            out = self.program()
            self.expect(")")
            return out
        self.fail("expected a program", {"program atom", "'('"})

    def _group_is_test(self):
        'Whether the parenthesized group at the cursor is followed by `?`.'
        depth = 0
        for j in range(self.i, len(self.toks)):
            kind = self.toks[j].kind
            if kind == "(":
                depth += 1
            elif kind == ")":
                depth -= 1
                if depth == 0:
                    return (j + 1 < len(self.toks)
                            and self.toks[j + 1].kind == "?")
            elif kind == _END:
                return False
        return False


def _coerce_mode(mode):
    return mode if isinstance(mode, Mode) else Mode(mode)


def parse_formula(text: str, mode) -> "Formula":
    'Parse a formula in the given mode; connectives outside the mode fail.'
    p = _Parser(_tokenize(text), _coerce_mode(mode))
    out = p.formula()
    if p.peek().kind != _END:
        p.fail("trailing input after the formula", {_END})
    return out


def parse_program(text: str) -> "Program":
    p = _Parser(_tokenize(text), Mode.PDL)
    out = p.program()
    if p.peek().kind != _END:
        p.fail("trailing input after the program", {_END})
    return out


# --- model documents ------------------------------------------------------

@dataclass(frozen=True)
class GroupoidDoc:
    objects: tuple
    arrows: tuple      # (name, dom, cod) triples
    inv: tuple         # (f, g) name pairs; unlisted arrows are self-inverse
    comp: tuple        # (f, g, h) name triples meaning f g = h


@dataclass(frozen=True)
class ModelDocument:
    mode: Mode
    worlds: tuple
    relations: dict    # name -> tuple of world-name pairs; point is "alpha"
    valuations: dict   # atom -> tuple of world or object names
    groupoid: GroupoidDoc | None = None
    point: tuple | None = None    # groupoid documents: arrow names

    @property
    def is_groupoid(self) -> bool:
        return self.groupoid is not None


_PAIR_RE = re.compile(r"\(\s*([^\s,()]+)\s*,\s*([^\s,()]+)\s*\)")


def _line_pairs(rest, lineno):
    out = []
    pos = 0
    while pos < len(rest):
        if rest[pos].isspace():
            pos += 1
            continue
        m = _PAIR_RE.match(rest, pos)
        if m is None:
            raise ModelFormatError(
                f"line {lineno}: expected a (u,v) pair at {rest[pos:].split()[0]!r}")
        out.append((m.group(1), m.group(2)))
        pos = m.end()
    return out


def parse_model(text: str) -> ModelDocument:
    """Parse a model document.

    Declarations must precede use: WORLDS (or OBJECTS and ARROWS) before
    the REL/VAL/POINT/INV/COMP lines that mention them.
    """
    mode = None
    worlds = None
    relations = {}
    valuations = {}
    objects = None
    arrows = []
    arrow_names = set()
    inv_pairs = []
    comp_triples = []
    point = None

    def need_worlds(lineno):
        if worlds is None:
            raise ModelFormatError(f"line {lineno}: WORLDS must come first")

    def need_arrows(lineno, names):
        if objects is None:
            raise ModelFormatError(f"line {lineno}: ARROWS must come first")
        for name in names:
            if name not in arrow_names:
                raise ModelFormatError(f"line {lineno}: unknown arrow {name!r}")

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split(None, 1)
        rest = rest[0] if rest else ""
        fields = rest.split()

        if key == "MODE":
            if mode is not None:
                raise ModelFormatError(f"line {lineno}: duplicate MODE")
            try:
                mode = Mode(rest.strip())
            except ValueError:
                raise ModelFormatError(
                    f"line {lineno}: unknown mode {rest.strip()!r}") from None
        elif key == "WORLDS":
            if worlds is not None:
                raise ModelFormatError(f"line {lineno}: duplicate WORLDS")
            if objects is not None:
                raise ModelFormatError(
                    f"line {lineno}: WORLDS cannot mix with OBJECTS")
            if len(set(fields)) != len(fields) or not fields:
                raise ModelFormatError(
                    f"line {lineno}: WORLDS needs distinct names")
            worlds = tuple(fields)
        elif key == "REL":
            need_worlds(lineno)
            if not fields:
                raise ModelFormatError(f"line {lineno}: REL needs a name")
            name = fields[0]
            if name in relations:
                raise ModelFormatError(f"line {lineno}: duplicate REL {name!r}")
            pairs = _line_pairs(rest[len(name):], lineno)
            for pair in pairs:
                for w in pair:
                    if w not in worlds:
                        raise UndeclaredWorld(
                            f"line {lineno}: world {w!r} is not declared")
            relations[name] = tuple(pairs)
        elif key == "VAL":
            if not fields:
                raise ModelFormatError(f"line {lineno}: VAL needs an atom name")
            name, members = fields[0], fields[1:]
            if name in valuations:
                raise ModelFormatError(f"line {lineno}: duplicate VAL {name!r}")
            home = worlds if worlds is not None else objects
            if home is None:
                raise ModelFormatError(
                    f"line {lineno}: WORLDS or OBJECTS must come first")
            for w in members:
                if w not in home:
                    raise UndeclaredWorld(
                        f"line {lineno}: world {w!r} is not declared")
            valuations[name] = tuple(members)
        elif key == "OBJECTS":
            if objects is not None:
                raise ModelFormatError(f"line {lineno}: duplicate OBJECTS")
            if worlds is not None:
                raise ModelFormatError(
                    f"line {lineno}: OBJECTS cannot mix with WORLDS")
            if len(set(fields)) != len(fields) or not fields:
                raise ModelFormatError(
                    f"line {lineno}: OBJECTS needs distinct names")
            objects = tuple(fields)
        elif key == "ARROWS":
            if objects is None:
                raise ModelFormatError(f"line {lineno}: OBJECTS must come first")
            if len(fields) != 3:
                raise ModelFormatError(
                    f"line {lineno}: ARROWS takes name, domain, codomain")
            name, d, c = fields
            if name in arrow_names:
                raise ModelFormatError(
                    f"line {lineno}: duplicate arrow {name!r}")
            for obj in (d, c):
                if obj not in objects:
                    raise UndeclaredWorld(
                        f"line {lineno}: object {obj!r} is not declared")
            arrows.append((name, d, c))
            arrow_names.add(name)
        elif key == "INV":
            if len(fields) != 2:
                raise ModelFormatError(f"line {lineno}: INV takes two arrows")
            need_arrows(lineno, fields)
            inv_pairs.append(tuple(fields))
        elif key == "COMP":
            if len(fields) != 3:
                raise ModelFormatError(f"line {lineno}: COMP takes three arrows")
            need_arrows(lineno, fields)
            comp_triples.append(tuple(fields))
        elif key == "POINT":
            if point is not None:
                raise ModelFormatError(f"line {lineno}: duplicate POINT")
            need_arrows(lineno, fields)
            point = tuple(fields)
        else:
            raise ModelFormatError(f"line {lineno}: unknown section {key!r}")

    if mode is None:
        raise ModelFormatError("the document never declares MODE")
    if objects is not None:
        if point is None:
            raise ModelFormatError("a groupoid document needs a POINT line")
        doc = ModelDocument(
            mode, (), {}, valuations,
            GroupoidDoc(objects, tuple(arrows), tuple(inv_pairs),
                        tuple(comp_triples)),
            point)
        return doc
    if worlds is None:
        raise ModelFormatError("the document never declares WORLDS")
    if "alpha" not in relations:
        raise ModelFormatError("the point relation `REL alpha` is missing")
    return ModelDocument(mode, worlds, relations, valuations)


def _relation_codes(doc: ModelDocument):
    nw = len(doc.worlds)
    idx = {w: i for i, w in enumerate(doc.worlds)}
    codes = {name: encode(((idx[u], idx[v]) for u, v in pairs), nw)
             for name, pairs in doc.relations.items()}
    vals = {atom: sum(1 << (idx[w] * nw + idx[w]) for w in members)
            for atom, members in doc.valuations.items()}
    return codes, vals


def _groupoid_of(doc: ModelDocument) -> FiniteGroupoid:
    g = doc.groupoid
    oidx = {o: i for i, o in enumerate(g.objects)}
    aidx = {name: i for i, (name, _, _) in enumerate(g.arrows)}
    dom = [oidx[d] for _, d, _ in g.arrows]
    cod = [oidx[c] for _, _, c in g.arrows]
    inv = list(range(len(g.arrows)))
    for f, h in g.inv:
        inv[aidx[f]] = aidx[h]
        inv[aidx[h]] = aidx[f]
    comp = {(aidx[f], aidx[h]): aidx[k] for f, h, k in g.comp}
    return FiniteGroupoid(g.objects, [name for name, _, _ in g.arrows],
                          dom, cod, comp, inv)


_MAX_GROUPOID_ARROWS = 9


def build(doc: ModelDocument) -> PointedModel:
    """A pointed model from a parsed document.

    Relation documents run over the lazy bitmask quantale at any world
    count; the codes agree with the tabulated quantale's element indices,
    so exhaustive checkers can rebuild that one for small documents.
    """
    if doc.is_groupoid:
        if len(doc.groupoid.arrows) > _MAX_GROUPOID_ARROWS:
            raise ModelFormatError(
                f"groupoid documents are limited to {_MAX_GROUPOID_ARROWS} arrows")
        G = _groupoid_of(doc)
        q = groupoid_quantale(G)
        aidx = {name: i for i, name in enumerate(G.arrows)}
        alpha = sum(1 << aidx[name] for name in set(doc.point))
        oidx = {o: i for i, o in enumerate(G.objects)}
        vals = {atom: sum(1 << G.identities[oidx[o]] for o in set(members))
                for atom, members in doc.valuations.items()}
        return PointedModel(q, alpha, vals, doc.mode,
                            world_atoms=G.objects)
    q = RelationQuantale(doc.worlds)
    codes, vals = _relation_codes(doc)
    alpha = codes.pop("alpha")
    return PointedModel(q, alpha, vals, doc.mode, programs=codes,
                        world_atoms=doc.worlds)


def world_elements(doc: ModelDocument):
    'Pairs (name, locale atom) for decoding formula values into worlds.'
    if doc.is_groupoid:
        G = _groupoid_of(doc)
        return tuple((name, 1 << G.identities[i])
                     for i, name in enumerate(G.objects))
    nw = len(doc.worlds)
    return tuple((name, 1 << (i * nw + i))
                 for i, name in enumerate(doc.worlds))


# --- frame files ----------------------------------------------------------

def parse_frame(text: str) -> FiniteSupLattice:
    """A finite lattice from ELEMENTS and generating LEQ pairs.

    The listed pairs are closed reflexively and transitively before the
    lattice laws are checked, so only a covering sketch is needed.
    """
    elements = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split(None, 1)
        rest = rest[0] if rest else ""
        if key == "ELEMENTS":
            if elements is not None:
                raise ModelFormatError(f"line {lineno}: duplicate ELEMENTS")
            names = rest.split()
            if len(set(names)) != len(names) or not names:
                raise ModelFormatError(
                    f"line {lineno}: ELEMENTS needs distinct names")
            elements = names
        elif key == "LEQ":
            if elements is None:
                raise ModelFormatError(f"line {lineno}: ELEMENTS must come first")
            for u, v in _line_pairs(rest, lineno):
                for name in (u, v):
                    if name not in elements:
                        raise ModelFormatError(
                            f"line {lineno}: unknown element {name!r}")
                pairs.append((u, v))
        else:
            raise ModelFormatError(f"line {lineno}: unknown section {key!r}")
    if elements is None:
        raise ModelFormatError("the frame file never declares ELEMENTS")
    order = {(e, e) for e in elements} | set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(order):
            for c, d in list(order):
                if b == c and (a, d) not in order:
                    order.add((a, d))
                    changed = True
    return make_lattice(elements, order)
