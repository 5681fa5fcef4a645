"""Burmeister ``.cxt`` files.

Layout::

    B
    <context name, may be blank>
    <number of objects>
    <number of attributes>
    <blank line>
    <object names, one per line>
    <attribute names, one per line>
    <one row per object of X / . characters>

The blank line after the counts is optional on input and always written on
output, so ``write_cxt(read_cxt(text))`` reproduces a normalized file exactly.
"""
from __future__ import annotations

from pathlib import Path

from .fca import FormalContext


class CxtFormatError(ValueError):
    pass


def parse_cxt(text: str) -> FormalContext:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "B":
        raise CxtFormatError("line 1: expected 'B'")
    if len(lines) < 4:
        raise CxtFormatError("truncated header")
    name = lines[1].strip()
    try:
        n_obj = int(lines[2])
        n_att = int(lines[3])
    except ValueError:
        raise CxtFormatError("lines 3-4: object and attribute counts must be integers") from None
    if n_obj < 0 or n_att < 0:
        raise CxtFormatError("negative counts")
    pos = 4
    if pos < len(lines) and lines[pos].strip() == "":
        pos += 1
    need = n_obj + n_att + n_obj
    body = lines[pos:pos + need]
    if len(body) < need:
        raise CxtFormatError(f"expected {need} lines after the header, found {len(body)}")
    obj_names = [s.strip() for s in body[:n_obj]]
    att_names = [s.strip() for s in body[n_obj:n_obj + n_att]]
    rows = []
    for i, raw in enumerate(body[n_obj + n_att:]):
        row = raw.strip()
        lineno = pos + n_obj + n_att + i + 1
        if len(row) != n_att:
            raise CxtFormatError(f"line {lineno}: expected {n_att} cells, found {len(row)}")
        bad = set(row) - set("Xx.")
        if bad:
            raise CxtFormatError(f"line {lineno}: unexpected characters {sorted(bad)}")
        rows.append([c in "Xx" for c in row])
    for extra in lines[pos + need:]:
        if extra.strip():
            raise CxtFormatError("trailing content after the incidence rows")
    if n_obj == 0:
        return FormalContext((), n_att, (), tuple(att_names), name)
    return FormalContext.from_matrix(rows, obj_names, att_names, name)


def format_cxt(ctx: FormalContext) -> str:
    out = ["B", ctx.name, str(ctx.n_objects), str(ctx.n_attributes), ""]
    out += list(ctx.object_names)
    out += list(ctx.attribute_names)
    for g in ctx.objects:
        out.append("".join("X" if ctx.has(g, a) else "." for a in ctx.attributes))
    return "\n".join(out) + "\n"


def read_cxt(path) -> FormalContext:
    return parse_cxt(Path(path).read_text())


def write_cxt(ctx: FormalContext, path) -> None:
    Path(path).write_text(format_cxt(ctx))
