"""Declaration-file parser.

A workspace file is a sequence of declarations::

    space X { points = a,b,c; atoms = {a} {b,c}; }
    measure P on X { {a}=1/3; {b,c}=2/3; }
    map f : X -> Y { a->u; b->u; c->v; }
    kernel T : X ~> Y { {a}: {u}=1/2, {v}=1/2; {b,c}: {u}=0, {v}=1; }
    observable theta on X { {a}=2; {b,c}=4; }
    mix M on X { P=1/2; Q=1/2; }
    mix2 N on X { M=1; }
    chi V on X { atoms = {a,b,c}; measure = P; }
    category C { objects = A,B; identity A = id_A; identity B = id_B; arrow f : A -> B; }
    functor F : C -> D { object A = A2; arrow f = g; }
    nattrans t : F => G { component A = h; }

``#`` starts a line comment. Atom literals must name declared atoms exactly;
atoms left out of a measure, observable or kernel row get weight 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import CatProbError, InvariantError, ParseError, ResolveError
from ..fincat import ChiObject, check_functor, check_nat_trans, check_table, FinCategory, FinFunctor, FinNatTrans, make_category
from ..finspace import FinSpace, MeasurableMap, canonical_partition, make_map, make_space, pair_label
from ..giry import MixMeasure, MixMixMeasure, make_mix, make_mix2
from ..kernel import StochKernel, make_kernel
from ..measure import RationalMeasure, RealObservable

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
RATIONAL_RE = re.compile(r"-?[0-9]+(?:/[0-9]+)?\Z")

TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<op>->|~>|=>)
  | (?P<word>-?[A-Za-z0-9_]+(?:/[0-9]+)?)
  | (?P<punct>[{};,=:.()])
    """,
    re.VERBOSE,
)

KINDS = (
    "space",
    "measure",
    "map",
    "kernel",
    "observable",
    "mix",
    "mix2",
    "chi",
    "category",
    "functor",
    "nattrans",
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


@dataclass
class Workspace:
    spaces: dict[str, FinSpace] = field(default_factory=dict)
    measures: dict[str, RationalMeasure] = field(default_factory=dict)
    maps: dict[str, MeasurableMap] = field(default_factory=dict)
    kernels: dict[str, StochKernel] = field(default_factory=dict)
    observables: dict[str, RealObservable] = field(default_factory=dict)
    mixes: dict[str, MixMeasure] = field(default_factory=dict)
    mix2s: dict[str, MixMixMeasure] = field(default_factory=dict)
    chis: dict[str, ChiObject] = field(default_factory=dict)
    categories: dict[str, FinCategory] = field(default_factory=dict)
    functors: dict[str, FinFunctor] = field(default_factory=dict)
    nattrans: dict[str, FinNatTrans] = field(default_factory=dict)
    order: list[tuple[str, str]] = field(default_factory=list)

    def registry(self, kind: str) -> dict:
        return {
            "space": self.spaces,
            "measure": self.measures,
            "map": self.maps,
            "kernel": self.kernels,
            "observable": self.observables,
            "mix": self.mixes,
            "mix2": self.mix2s,
            "chi": self.chis,
            "category": self.categories,
            "functor": self.functors,
            "nattrans": self.nattrans,
        }[kind]

    def get(self, kind: str, name: str):
        try:
            return self.registry(kind)[name]
        except KeyError:
            raise ResolveError(f"unknown {kind} {name!r}") from None

    def add(self, kind: str, name: str, value) -> None:
        reg = self.registry(kind)
        if name in reg:
            raise ResolveError(f"duplicate {kind} {name!r}", "DuplicateName")
        reg[name] = value
        self.order.append((kind, name))

    def structurally_equal(self, other: "Workspace") -> bool:
        return all(self.registry(k) == other.registry(k) for k in KINDS)


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.ws = Workspace()

    # token helpers

    def peek(self, k: int = 0) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col)

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text or tok.kind == "eof":
            found = "end of file" if tok.kind == "eof" else repr(tok.text)
            self.fail(f"expected {text!r}, found {found}", tok)
        return tok

    def accept(self, text: str) -> bool:
        if self.peek().text == text and self.peek().kind != "eof":
            self.i += 1
            return True
        return False

    def name(self) -> str:
        tok = self.next()
        if tok.kind != "word" or not NAME_RE.match(tok.text):
            self.fail(f"expected a name, found {tok.text or 'end of file'!r}", tok)
        return tok.text

    def label(self) -> str:
        tok = self.peek()
        if tok.text == "(":
            self.next()
            left = self.label()
            self.expect(",")
            right = self.label()
            self.expect(")")
            return pair_label(left, right)
        tok = self.next()
        if tok.kind != "word" or not re.fullmatch(r"[A-Za-z0-9_]+", tok.text):
            self.fail(f"expected a point label, found {tok.text or 'end of file'!r}", tok)
        return tok.text

    def labels(self) -> list[str]:
        out = [self.label()]
        while self.accept(","):
            out.append(self.label())
        return out

    def rational(self) -> Fraction:
        tok = self.next()
        if tok.kind != "word" or not RATIONAL_RE.match(tok.text):
            self.fail(f"expected a rational number, found {tok.text or 'end of file'!r}", tok)
        num, _, den = tok.text.partition("/")
        if den and int(den) == 0:
            self.fail("zero denominator", tok)
        return Fraction(int(num), int(den or 1))

    def atom_literal(self) -> tuple[str, ...]:
        self.expect("{")
        members = self.labels()
        self.expect("}")
        return tuple(sorted(members))

    def atom_index(self, space: FinSpace, atom: tuple[str, ...], tok: Token) -> int:
        try:
            return space.atoms.index(atom)
        except ValueError:
            raise ResolveError(
                f"{{{','.join(atom)}}} is not an atom of {space.name} at {tok.line}:{tok.col}", "UnknownAtom"
            ) from None

    def resolve(self, kind: str, name: str, tok: Token):
        try:
            return self.ws.get(kind, name)
        except ResolveError as e:
            raise ResolveError(f"{e} at {tok.line}:{tok.col}", e.code) from None

    # declarations

    def parse(self) -> Workspace:
        while self.peek().kind != "eof":
            tok = self.next()
            handler = getattr(self, f"decl_{tok.text}", None) if tok.text in KINDS else None
            if handler is None:
                self.fail(f"expected a declaration keyword, found {tok.text!r}", tok)
            name = self.name()
            try:
                value = handler(name, tok)
            except CatProbError as e:
                if isinstance(e, (ParseError, ResolveError, InvariantError)):
                    raise
                raise InvariantError(e, f"{tok.text} {name} at {tok.line}:{tok.col}") from e
            try:
                self.ws.add(tok.text, name, value)
            except ResolveError as e:
                raise ResolveError(f"{e} at {tok.line}:{tok.col}", e.code) from None
        return self.ws

    def _weighted_atoms(self, space: FinSpace, what: str) -> list[Fraction]:
        weights: list[Fraction | None] = [None] * len(space.atoms)
        while not self.accept("}"):
            tok = self.peek()
            idx = self.atom_index(space, self.atom_literal(), tok)
            self.expect("=")
            if weights[idx] is not None:
                raise ResolveError(f"{what}: atom given twice at {tok.line}:{tok.col}", "DuplicateEntry")
            weights[idx] = self.rational()
            self.expect(";")
        return [w if w is not None else Fraction(0) for w in weights]

    def decl_space(self, name, tok):
        self.expect("{")
        points, atoms = None, None
        while not self.accept("}"):
            key = self.peek()
            field_name = self.name()
            self.expect("=")
            if field_name == "points":
                points = self.labels()
            elif field_name == "atoms":
                atoms = [self.atom_literal()]
                while self.peek().text == "{":
                    atoms.append(self.atom_literal())
            else:
                self.fail(f"unknown space field {field_name!r}", key)
            self.expect(";")
        if points is None:
            self.fail(f"space {name} declares no points", tok)
        return make_space(name, points, atoms)

    def _on_space(self):
        self.expect("on")
        tok = self.peek()
        return self.resolve("space", self.name(), tok)

    def decl_measure(self, name, tok):
        space = self._on_space()
        self.expect("{")
        return RationalMeasure(space, tuple(self._weighted_atoms(space, f"measure {name}")))

    def decl_observable(self, name, tok):
        space = self._on_space()
        self.expect("{")
        return RealObservable(space, tuple(self._weighted_atoms(space, f"observable {name}")))

    def _arrow_head(self, arrow: str):
        self.expect(":")
        t1 = self.peek()
        dom = self.resolve("space", self.name(), t1)
        self.expect(arrow)
        t2 = self.peek()
        cod = self.resolve("space", self.name(), t2)
        return dom, cod

    def decl_map(self, name, tok):
        dom, cod = self._arrow_head("->")
        self.expect("{")
        graph = {}
        while not self.accept("}"):
            at = self.peek()
            x = self.label()
            self.expect("->")
            y = self.label()
            self.expect(";")
            if x in graph:
                raise ResolveError(f"map {name}: point {x} given twice at {at.line}:{at.col}", "DuplicateEntry")
            graph[x] = y
        return make_map(name, dom, cod, graph)

    def decl_kernel(self, name, tok):
        dom, cod = self._arrow_head("~>")
        self.expect("{")
        rows: list[list[Fraction] | None] = [None] * len(dom.atoms)
        while not self.accept("}"):
            at = self.peek()
            i = self.atom_index(dom, self.atom_literal(), at)
            self.expect(":")
            row = [Fraction(0)] * len(cod.atoms)
            seen = set()
            while True:
                ct = self.peek()
                j = self.atom_index(cod, self.atom_literal(), ct)
                self.expect("=")
                if j in seen:
                    raise ResolveError(f"kernel {name}: codomain atom given twice at {ct.line}:{ct.col}", "DuplicateEntry")
                seen.add(j)
                row[j] = self.rational()
                if not self.accept(","):
                    break
            self.expect(";")
            if rows[i] is not None:
                raise ResolveError(f"kernel {name}: row given twice at {at.line}:{at.col}", "DuplicateEntry")
            rows[i] = row
        missing = [dom.atoms[i] for i, r in enumerate(rows) if r is None]
        if missing:
            raise ResolveError(f"kernel {name}: no row for atom {{{','.join(missing[0])}}}", "MissingEntry")
        return make_kernel(dom, cod, rows)

    def _named_weights(self, kind: str):
        pairs = []
        while not self.accept("}"):
            at = self.peek()
            ref = self.resolve(kind, self.name(), at)
            self.expect("=")
            pairs.append((ref, self.rational()))
            self.expect(";")
        return pairs

    def decl_mix(self, name, tok):
        space = self._on_space()
        self.expect("{")
        return make_mix(space, self._named_weights("measure"))

    def decl_mix2(self, name, tok):
        space = self._on_space()
        self.expect("{")
        return make_mix2(space, self._named_weights("mix"))

    def decl_chi(self, name, tok):
        space = self._on_space()
        self.expect("{")
        atoms, measure = None, None
        while not self.accept("}"):
            key = self.peek()
            field_name = self.name()
            self.expect("=")
            if field_name == "atoms":
                atoms = [self.atom_literal()]
                while self.peek().text == "{":
                    atoms.append(self.atom_literal())
            elif field_name == "measure":
                mt = self.peek()
                measure = self.resolve("measure", self.name(), mt)
            else:
                self.fail(f"unknown chi field {field_name!r}", key)
            self.expect(";")
        if atoms is None or measure is None:
            self.fail(f"chi {name} needs both atoms and measure", tok)
        if measure.space != space:
            raise ResolveError(f"chi {name}: measure is not on {space.name}", "SpaceMismatch")
        return ChiObject(name, canonical_partition(atoms), measure)

    def decl_category(self, name, tok):
        self.expect("{")
        objects: list[str] = []
        ids: dict[str, str] = {}
        arrows: dict[str, tuple[str, str]] = {}
        comp: dict[tuple[str, str], str] = {}
        while not self.accept("}"):
            key = self.peek()
            stmt = self.name()
            if stmt == "objects":
                self.expect("=")
                objects.append(self.name())
                while self.accept(","):
                    objects.append(self.name())
            elif stmt == "identity":
                obj = self.name()
                self.expect("=")
                ids[obj] = self.name()
            elif stmt == "arrow":
                f = self.name()
                self.expect(":")
                a = self.name()
                self.expect("->")
                arrows[f] = (a, self.name())
            elif stmt == "compose":
                g = self.name()
                self.expect(".")
                f = self.name()
                self.expect("=")
                comp[(g, f)] = self.name()
            else:
                self.fail(f"unknown category statement {stmt!r}", key)
            self.expect(";")
        cat = make_category(name, objects, arrows, ids, comp)
        check_table(cat)
        return cat

    def decl_functor(self, name, tok):
        self.expect(":")
        t1 = self.peek()
        src = self.resolve("category", self.name(), t1)
        self.expect("->")
        t2 = self.peek()
        dst = self.resolve("category", self.name(), t2)
        self.expect("{")
        obj_map, arrow_map = {}, {}
        while not self.accept("}"):
            key = self.peek()
            stmt = self.name()
            left = self.name()
            self.expect("=")
            right = self.name()
            if stmt == "object":
                obj_map[left] = right
            elif stmt == "arrow":
                arrow_map[left] = right
            else:
                self.fail(f"unknown functor statement {stmt!r}", key)
            self.expect(";")
        # identities follow the object map unless given explicitly
        for a, b in obj_map.items():
            if a in src.ids and b in dst.ids:
                arrow_map.setdefault(src.ids[a], dst.ids[b])
        functor = FinFunctor(name, src, dst, obj_map, arrow_map)
        check_functor(functor)  # structural problems raise; law failures are reported later
        return functor

    def decl_nattrans(self, name, tok):
        self.expect(":")
        t1 = self.peek()
        F = self.resolve("functor", self.name(), t1)
        self.expect("=>")
        t2 = self.peek()
        G = self.resolve("functor", self.name(), t2)
        self.expect("{")
        comps = {}
        while not self.accept("}"):
            key = self.peek()
            if self.name() != "component":
                self.fail("expected 'component'", key)
            obj = self.name()
            self.expect("=")
            comps[obj] = self.name()
            self.expect(";")
        trans = FinNatTrans(name, F, G, comps)
        check_nat_trans(trans)
        return trans


def parse_workspace(text: str) -> Workspace:
    """Parse and fully validate a declaration file."""
    return _Parser(text).parse()
