"""Reader for germ description files.

A file is a list of ``;``-terminated statements; ``#`` starts a comment::

    target T X Y Z;
    branch f1 source t x y : t, x, y^3 + t*y, x*y + y^5;
    branch f2 source t' x' y' : t', x', y', t';

Curves and matrices for the invariant commands live in named rings::

    ring P X Y T;
    ideal C in P : X + T^2, Y;
    matrix M in P : [Y^2, -T - Y*T], [-T - 2*Y*T, X + T^2], [X + T^2, Y];

Errors carry the line and column of the offending text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .ideal import Ideal
from .parse import PolySyntaxError, UnknownVariable, parse_poly
from .poly import Polynomial, VariableRing
from .presentation import BranchGerm, MultiGerm

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_']*")


class GermFileError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        self.line, self.col = line, col
        super().__init__(f"line {line}, column {col}: {msg}")


@dataclass
class GermFile:
    target: VariableRing | None = None
    branches: list[BranchGerm] = field(default_factory=list)
    rings: dict[str, VariableRing] = field(default_factory=dict)
    ideals: dict[str, Ideal] = field(default_factory=dict)
    matrices: dict[str, list[list[Polynomial]]] = field(default_factory=dict)

    def germ(self) -> MultiGerm:
        if self.target is None or not self.branches:
            raise GermFileError("no target and branch statements", 1, 1)
        return MultiGerm(self.target, self.branches)


class _Reader:
    def __init__(self, text: str):
        self.text = text

    def where(self, pos: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def fail(self, msg: str, pos: int):
        raise GermFileError(msg, *self.where(pos))

    def statements(self):
        """Yield ``(start, body)`` with comments blanked out (offsets preserved)."""
        clean = re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), self.text)
        start = 0
        for m in re.finditer(";", clean):
            body = clean[start : m.start()]
            if body.strip():
                yield start, body
            start = m.end()
        if clean[start:].strip():
            lead = len(clean[start:]) - len(clean[start:].lstrip())
            self.fail("missing ';' at end of statement", start + lead)

    def names(self, body: str, base: int) -> list[tuple[str, int]]:
        out = []
        for m in re.finditer(r"\S+", body):
            if not _NAME.fullmatch(m.group()):
                self.fail(f"bad identifier {m.group()!r}", base + m.start())
            out.append((m.group(), base + m.start()))
        return out

    def poly(self, chunk: str, base: int, ring: VariableRing) -> Polynomial:
        lead = len(chunk) - len(chunk.lstrip())
        try:
            return parse_poly(chunk.strip(), ring)
        except PolySyntaxError as e:
            self.fail(str(e).split(" at position")[0], base + lead + e.pos)
        except UnknownVariable as e:
            self.fail(f"unknown variable {e.name!r} (ring has {', '.join(ring.variables)})", base + lead + e.pos)

    def split(self, body: str, base: int, sep: str = ",") -> list[tuple[str, int]]:
        """Split on ``sep`` outside brackets and parentheses."""
        out, depth, start = [], 0, 0
        for i, ch in enumerate(body):
            if ch in "([":
                depth += 1
            elif ch in ")]":
                depth -= 1
            elif ch == sep and depth == 0:
                out.append((body[start:i], base + start))
                start = i + 1
        out.append((body[start:], base + start))
        return out


def _ring(reader: _Reader, names: list[tuple[str, int]], pos: int) -> VariableRing:
    seen = set()
    for n, p in names:
        if n in seen:
            reader.fail(f"variable {n!r} repeated", p)
        seen.add(n)
    if not names:
        reader.fail("a ring needs at least one variable", pos)
    return VariableRing(tuple(n for n, _ in names))


def _after_colon(reader: _Reader, body: str, start: int, what: str) -> tuple[str, str, int]:
    if ":" not in body:
        reader.fail(f"{what} needs ':' before its entries", start)
    head, _, tail = body.partition(":")
    return head, tail, start + len(head) + 1


def read_germ_text(text: str) -> GermFile:
    reader = _Reader(text)
    out = GermFile()
    any_statement = False
    for start, body in reader.statements():
        any_statement = True
        words = body.split()
        kw = words[0]
        off = body.index(kw)
        kw_pos = start + off
        rest_pos = kw_pos + len(kw)
        rest = body[off + len(kw) :]
        if kw == "target":
            if out.target is not None:
                reader.fail("second target statement", kw_pos)
            out.target = _ring(reader, reader.names(rest, rest_pos), kw_pos)
        elif kw == "ring":
            names = reader.names(rest, rest_pos)
            if not names:
                reader.fail("ring needs a name", kw_pos)
            (name, _), vars_ = names[0], names[1:]
            out.rings[name] = _ring(reader, vars_, kw_pos)
        elif kw == "branch":
            if out.target is None:
                reader.fail("branch before target", kw_pos)
            head, tail, tail_pos = _after_colon(reader, rest, rest_pos, "branch")
            names = reader.names(head, rest_pos)
            if len(names) < 2 or names[1][0] != "source":
                reader.fail("expected 'branch NAME source VARS : COORDS'", kw_pos)
            label = names[0][0]
            src = _ring(reader, names[2:], kw_pos)
            coords = [reader.poly(c, p, src) for c, p in reader.split(tail, tail_pos)]
            try:
                out.branches.append(BranchGerm(src, out.target, coords, label))
            except ValueError as e:
                reader.fail(str(e), kw_pos)
        elif kw in ("ideal", "matrix"):
            head, tail, tail_pos = _after_colon(reader, rest, rest_pos, kw)
            names = reader.names(head, rest_pos)
            if len(names) != 3 or names[1][0] != "in":
                reader.fail(f"expected '{kw} NAME in RING : ...'", kw_pos)
            name, (rname, rpos) = names[0][0], names[2]
            if rname not in out.rings:
                reader.fail(f"unknown ring {rname!r}", rpos)
            R = out.rings[rname]
            if kw == "ideal":
                out.ideals[name] = Ideal(R, [reader.poly(c, p, R) for c, p in reader.split(tail, tail_pos)])
            else:
                rows = []
                for chunk, p in reader.split(tail, tail_pos):
                    s = chunk.strip()
                    if not (s.startswith("[") and s.endswith("]")):
                        reader.fail("matrix rows are written [a, b, ...]", p)
                    inner = p + chunk.index("[") + 1
                    rows.append([reader.poly(c, q, R) for c, q in reader.split(s[1:-1], inner)])
                if len({len(r) for r in rows}) != 1:
                    reader.fail("matrix rows have different lengths", kw_pos)
                out.matrices[name] = rows
        else:
            reader.fail(f"unknown statement {kw!r}", kw_pos)
    if not any_statement:
        raise GermFileError("empty input", 1, 1)
    return out


def read_germ_file(path: str) -> GermFile:
    with open(path, encoding="utf-8") as fh:
        return read_germ_text(fh.read())
