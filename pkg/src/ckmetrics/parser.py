"""Lexer and recursive-descent parser for a small Java-like subset.

Accepted grammar::

    unit        := { class-decl } EOF
    class-decl  := "class" Name [ "extends" Name ] [ "implements" Name { "," Name } ]
                   "{" { member } "}"
    member      := TypeName Name ";"                      (field)
                 | TypeName Name "(" params ")" block     (method)
                 | ClassName "(" params ")" block         (constructor)
    params      := [ TypeName Name { "," TypeName Name } ]

Method bodies are scanned rather than parsed.  The scanner records calls
(``recv.m(..)``, ``m(..)``, ``new T(..)``, ``super(..)``), uses of the
class's own fields (``this.f`` or an unshadowed bare ``f``) and local
declarations ``T name = ..;`` which give receivers a static type.
"""
from __future__ import annotations

import csv
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    DuplicateClass,
    InheritanceCycle,
    InvalidModel,
    LexError,
    ParseError,
    SchemaError,
    UnmappedClass,
)
from .model import (
    PRIMITIVES,
    ClassInfo,
    ClassModel,
    Field,
    Invocation,
    MethodInfo,
    validate_model,
)

KEYWORDS = frozenset(
    {
        "class", "extends", "implements", "new", "this", "super", "void", "return",
        "if", "else", "while", "for", "do", "null", "true", "false",
    }
)

# Longest first so maximal munch works with a simple prefix scan.
OPERATORS = sorted(
    """
    { } ( ) [ ] ; , . = + - * / % < > ! & | ^ ? : ~
    == != <= >= && || ++ -- += -= *= /= %= &= |= ^= << >>
    """.split(),
    key=len,
    reverse=True,
)

SOURCE_SUFFIXES = (".java", ".ck")


@dataclass(frozen=True)
class Token:
    kind: str  # keyword | identifier | punctuation | integer-literal | string-literal
    text: str
    line: int
    column: int

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.column})"


def tokenize(text: str) -> list[Token]:
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)

    def advance(k):
        nonlocal i, line, col
        for ch in text[i:i + k]:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1
        i += k

    while i < n:
        ch = text[i]
        if ch in " \t\r\n\f":
            advance(1)
        elif text.startswith("//", i):
            end = text.find("\n", i)
            advance((n if end < 0 else end) - i)
        elif text.startswith("/*", i):
            end = text.find("*/", i + 2)
            if end < 0:
                raise LexError(line, col, "unterminated comment")
            advance(end + 2 - i)
        elif ch == '"':
            j = i + 1
            while j < n and text[j] != '"':
                if text[j] == "\n":
                    break
                j += 2 if text[j] == "\\" else 1
            if j >= n or text[j] != '"':
                raise LexError(line, col, "unterminated string")
            tokens.append(Token("string-literal", text[i:j + 1], line, col))
            advance(j + 1 - i)
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("integer-literal", text[i:j], line, col))
            advance(j - i)
        elif ch.isalpha() or ch == "_" or ch == "$":
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_$"):
                j += 1
            word = text[i:j]
            kind = "keyword" if word in KEYWORDS else "identifier"
            tokens.append(Token(kind, word, line, col))
            advance(j - i)
        else:
            for op in OPERATORS:
                if text.startswith(op, i):
                    tokens.append(Token("punctuation", op, line, col))
                    advance(len(op))
                    break
            else:
                raise LexError(line, col, f"illegal character {ch!r}")
    return tokens


def render(tokens) -> str:
    """Space-separated lexemes; ``tokenize(render(ts))`` gives back the same lexemes."""
    return " ".join(t.text for t in tokens)


class _Parser:
    def __init__(self, tokens, file=None):
        self.toks = tokens
        self.pos = 0
        self.file = file

    # -- token helpers --
    def peek(self, k=0):
        j = self.pos + k
        return self.toks[j] if j < len(self.toks) else None

    def error(self, expected):
        tok = self.peek()
        if tok is None:
            last = self.toks[-1] if self.toks else None
            line, col = (last.line, last.column + len(last.text)) if last else (1, 1)
            raise ParseError(line, col, expected, "end of input", file=self.file)
        raise ParseError(tok.line, tok.column, expected, tok.text, file=self.file)

    def at(self, text, k=0):
        tok = self.peek(k)
        return tok is not None and tok.text == text and tok.kind in ("keyword", "punctuation")

    def expect(self, text):
        if not self.at(text):
            self.error(repr(text))
        self.pos += 1

    def name(self, what="identifier"):
        tok = self.peek()
        if tok is None or tok.kind != "identifier":
            self.error(what)
        self.pos += 1
        return tok.text

    # -- grammar --
    def unit(self):
        classes = []
        while self.peek() is not None:
            classes.append(self.class_decl())
        return classes

    def class_decl(self):
        self.expect("class")
        cname = self.name("class name")
        sup = None
        ifaces = []
        if self.at("extends"):
            self.pos += 1
            sup = self.name("superclass name")
        if self.at("implements"):
            self.pos += 1
            ifaces.append(self.name("interface name"))
            while self.at(","):
                self.pos += 1
                ifaces.append(self.name("interface name"))
        self.expect("{")
        fields, raw_methods = [], []
        while not self.at("}"):
            if self.peek() is None:
                self.error("'}'")
            self.member(cname, fields, raw_methods)
        self.expect("}")
        field_types = {f.name: f.type for f in fields}
        methods = tuple(
            _scan_body(cname, sup, field_types, *rm, file=self.file) for rm in raw_methods
        )
        return ClassInfo(
            name=cname,
            superclass=sup,
            interfaces=frozenset(ifaces),
            fields=tuple(fields),
            methods=methods,
        )

    def type_name(self):
        tok = self.peek()
        if tok is not None and (tok.kind == "identifier" or tok.text == "void"):
            self.pos += 1
            return tok.text
        self.error("type name")

    def member(self, cname, fields, raw_methods):
        tok = self.peek()
        if tok.kind == "identifier" and tok.text == cname and self.at("(", 1):
            self.pos += 1
            params = self.params()
            body = self.block()
            raw_methods.append((cname, params, "void", True, body))
            return
        rtype = self.type_name()
        mname = self.name("member name")
        if self.at(";"):
            if rtype == "void":
                self.error("field type")
            self.pos += 1
            fields.append(Field(mname, rtype))
            return
        if not self.at("("):
            self.error("';' or '('")
        params = self.params()
        body = self.block()
        raw_methods.append((mname, params, rtype, False, body))

    def params(self):
        self.expect("(")
        out = []
        if not self.at(")"):
            while True:
                ptype = self.name("parameter type")
                pname = self.name("parameter name")
                out.append((ptype, pname))
                if not self.at(","):
                    break
                self.pos += 1
        self.expect(")")
        return out

    def block(self):
        """Consume a brace-balanced block; return its inner tokens."""
        self.expect("{")
        start = self.pos
        depth = 1
        while True:
            tok = self.peek()
            if tok is None:
                self.error("'}'")
            if tok.kind == "punctuation":
                if tok.text == "{":
                    depth += 1
                elif tok.text == "}":
                    depth -= 1
                    if depth == 0:
                        break
            self.pos += 1
        body = self.toks[start:self.pos]
        self.pos += 1
        return body


def _call_arity(body, open_idx, file=None):
    """Arity of the call whose '(' is at ``open_idx``; also the index of its ')'."""
    depth = 0
    commas = 0
    empty = True
    for j in range(open_idx, len(body)):
        t = body[j]
        if t.kind == "punctuation":
            if t.text in "([":
                depth += 1
                if depth == 1:
                    continue
            elif t.text in ")]":
                depth -= 1
                if depth == 0:
                    return (0 if empty else commas + 1), j
            elif t.text == "," and depth == 1:
                commas += 1
        empty = False
    t = body[open_idx]
    raise ParseError(t.line, t.column, "')'", file=file)


def _scan_body(cname, sup, field_types, mname, params, rtype, is_ctor, body, file=None):
    locals_ = {pname: ptype for ptype, pname in params}
    calls = set()
    uses = set()
    refs = {ptype for ptype, _ in params} | {rtype}

    def is_id(j):
        return 0 <= j < len(body) and body[j].kind == "identifier"

    def punct(j, text):
        return 0 <= j < len(body) and body[j].kind == "punctuation" and body[j].text == text

    def kw(j, text):
        return 0 <= j < len(body) and body[j].kind == "keyword" and body[j].text == text

    def var_type(v):
        if v in locals_:
            return locals_[v]
        return field_types.get(v)

    for j, tok in enumerate(body):
        after_dot = punct(j - 1, ".")
        if tok.kind == "keyword":
            if tok.text == "new" and is_id(j + 1) and punct(j + 2, "("):
                tname = body[j + 1].text
                arity, _ = _call_arity(body, j + 2, file)
                calls.add(Invocation(tname, tname, arity))
                refs.add(tname)
            elif tok.text == "super" and punct(j + 1, "(") and not after_dot:
                arity, _ = _call_arity(body, j + 1, file)
                calls.add(Invocation(sup, sup, arity) if sup else Invocation(None, "super", arity))
            elif tok.text == "this" and punct(j + 1, ".") and is_id(j + 2):
                member = body[j + 2].text
                if not punct(j + 3, "(") and member in field_types:
                    uses.add(member)
            continue
        if tok.kind != "identifier":
            continue
        text = tok.text
        # local declaration: T name = ... ;  or  T name ;
        if is_id(j + 1) and (punct(j + 2, "=") or punct(j + 2, ";")) and not after_dot:
            locals_[body[j + 1].text] = text
            refs.add(text)
            continue
        if punct(j + 1, "("):
            arity, _ = _call_arity(body, j + 1, file)
            if kw(j - 1, "new"):
                continue
            if after_dot:
                r = j - 2
                if kw(r, "this") and not punct(r - 1, "."):
                    recv = cname
                elif kw(r, "super") and not punct(r - 1, "."):
                    recv = sup
                elif is_id(r) and not punct(r - 1, "."):
                    recv = var_type(body[r].text)
                elif punct(r, ")"):
                    recv = _new_receiver(body, r)
                else:
                    recv = None
                calls.add(Invocation(recv, text, arity))
            else:
                calls.add(Invocation(cname, text, arity))
            continue
        if after_dot:
            continue
        if text in field_types and text not in locals_:
            uses.add(text)

    refs = frozenset(r for r in refs if r and r not in PRIMITIVES)
    return MethodInfo(
        name=mname,
        param_types=tuple(p for p, _ in params),
        return_type=rtype,
        is_constructor=is_ctor,
        invocations=frozenset(calls),
        field_uses=frozenset(uses),
        referenced_types=refs,
    )


def _new_receiver(body, close_idx):
    """Static type of ``new T(...)`` ending at ``close_idx``, if that is what it is."""
    depth = 0
    for j in range(close_idx, -1, -1):
        t = body[j]
        if t.kind == "punctuation" and t.text == ")":
            depth += 1
        elif t.kind == "punctuation" and t.text == "(":
            depth -= 1
            if depth == 0:
                if (
                    j >= 2
                    and body[j - 1].kind == "identifier"
                    and body[j - 2].kind == "keyword"
                    and body[j - 2].text == "new"
                ):
                    return body[j - 1].text
                return None
    return None


def parse_unit(tokens, file=None) -> list[ClassInfo]:
    return _Parser(list(tokens), file).unit()


def parse_source(text: str, file=None) -> list[ClassInfo]:
    try:
        tokens = tokenize(text)
    except LexError as e:
        raise LexError(e.line, e.column, e.reason, file=file) from None
    return parse_unit(tokens, file)


def build_class_model(units, module_map) -> ClassModel:
    """Merge parsed units into a validated model.

    Superclasses absent from the merged set are marked external.
    """
    merged: dict[str, ClassInfo] = {}
    for unit in units:
        for info in unit:
            if info.name in merged:
                raise DuplicateClass(info.name)
            merged[info.name] = info
    resolved = {}
    for name, info in merged.items():
        ext = info.superclass is not None and info.superclass not in merged
        if ext != info.external:
            info = ClassInfo(
                info.name, info.superclass, ext, info.interfaces, info.fields, info.methods
            )
        resolved[name] = info
    for name in sorted(resolved):
        if name not in module_map:
            raise UnmappedClass(name)
    mm = {k: v for k, v in module_map.items() if k in resolved}
    model = ClassModel(resolved, mm)
    violations = validate_model(model)
    for v in violations:
        if v.rule == "cycle":
            raise InheritanceCycle(v.detail.strip("{}").split(","))
        if v.rule == "self-inheritance":
            raise InheritanceCycle([v.cls])
    if violations:
        raise InvalidModel(violations)
    return model


def find_sources(src_dir) -> list[Path]:
    root = Path(src_dir)
    return sorted(p for p in root.rglob("*") if p.is_file() and p.suffix in SOURCE_SUFFIXES)


def parse_files(paths, root=None, jobs=1) -> list[list[ClassInfo]]:
    """Parse each file; results are in ``paths`` order regardless of ``jobs``."""
    def one(p):
        label = os.path.relpath(p, root) if root else str(p)
        return parse_source(Path(p).read_text(encoding="utf-8"), file=label)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(one, paths))
    return [one(p) for p in paths]


def default_module_map(src_dir, paths, units) -> dict[str, str]:
    """Module of each class = its file's directory relative to ``src_dir``
    (top-level files use the file stem)."""
    out = {}
    root = Path(src_dir)
    for p, unit in zip(paths, units):
        rel = Path(p).relative_to(root)
        mod = rel.parent.as_posix() if rel.parent != Path(".") else rel.stem
        for info in unit:
            out[info.name] = mod
    return out


def read_module_map(path) -> dict[str, str]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"class", "module"} <= set(reader.fieldnames):
            raise SchemaError(str(path), "module map needs header 'class,module'")
        return {row["class"].strip(): row["module"].strip() for row in reader}
