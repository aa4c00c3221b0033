"""Reading and writing ``.pts`` point-set files.

Format::

    # field: rational | quad <d> | tower <d1> <d2>
    # parts: 3
    x y [part]

Scalars use the text syntax of :mod:`unitarea.scalar`; any other line starting
with ``#`` is a comment.
"""

from __future__ import annotations

import io
import os
from typing import TextIO, Union

from .geom2d import Point2, PointSet
from .scalar import format_scalar, parse_scalar, sqrt

__all__ = ["PtsFormatError", "read_pts", "write_pts", "loads_pts", "dumps_pts"]


class PtsFormatError(ValueError):
    pass


def _field_header(tower: tuple) -> str:
    if not tower:
        return "rational"
    if len(tower) == 1:
        return f"quad {format_scalar(tower[0])}"
    return "tower " + " ".join(format_scalar(d) for d in tower)


def _parse_field(words: list[str], lineno: int) -> tuple:
    kind, args = words[0], words[1:]
    expected = {"rational": 0, "quad": 1, "tower": 2}
    if kind not in expected or len(args) != expected[kind]:
        raise PtsFormatError(f"line {lineno}: bad field header {' '.join(words)!r}")
    tower: tuple = ()
    for text in args:
        # re-derive each level so radicands land in reduced form
        root = sqrt(parse_scalar(text, tower), tower)
        tower = getattr(root, "tower", tower)
    if len(tower) != len(args):
        raise PtsFormatError(f"line {lineno}: radicand is a square in the base field")
    return tower


def loads_pts(text: str) -> PointSet:
    tower: tuple = ()
    saw_field = False
    has_parts = False
    points, parts = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            key, _, value = body.partition(":")
            key = key.strip().lower()
            if key == "field":
                if saw_field or points:
                    raise PtsFormatError(f"line {lineno}: field header must come first")
                words = value.split()
                if not words:
                    raise PtsFormatError(f"line {lineno}: empty field header")
                tower = _parse_field(words, lineno)
                saw_field = True
            elif key == "parts":
                if value.strip() != "3":
                    raise PtsFormatError(f"line {lineno}: only '# parts: 3' is supported")
                has_parts = True
            continue
        if not saw_field:
            raise PtsFormatError(f"line {lineno}: missing '# field:' header")
        cols = line.split("#", 1)[0].split()
        if len(cols) not in (2, 3):
            raise PtsFormatError(f"line {lineno}: expected 'x y [part]'")
        try:
            x = parse_scalar(cols[0], tower)
            y = parse_scalar(cols[1], tower)
        except (ValueError, ZeroDivisionError) as exc:
            raise PtsFormatError(f"line {lineno}: {exc}") from exc
        points.append(Point2(x, y))
        if len(cols) == 3:
            if not has_parts:
                raise PtsFormatError(f"line {lineno}: part label without '# parts: 3'")
            parts.append(cols[2])
        elif has_parts:
            raise PtsFormatError(f"line {lineno}: missing part label")
    if not saw_field:
        raise PtsFormatError("missing '# field:' header")
    try:
        return PointSet(points, parts if has_parts else None)
    except ValueError as exc:
        raise PtsFormatError(str(exc)) from exc


def dumps_pts(s: PointSet, comment: str | None = None) -> str:
    out = io.StringIO()
    out.write(f"# field: {_field_header(s.tower)}\n")
    if s.parts is not None:
        out.write("# parts: 3\n")
    if comment:
        for line in comment.splitlines():
            out.write(f"# {line}\n")
    labels = s.parts or (None,) * len(s)
    for p, k in zip(s, labels):
        row = f"{format_scalar(p.x)} {format_scalar(p.y)}"
        out.write(row if k is None else f"{row} {k}")
        out.write("\n")
    return out.getvalue()


def read_pts(src: Union[str, os.PathLike, TextIO]) -> PointSet:
    if hasattr(src, "read"):
        return loads_pts(src.read())
    with open(src, encoding="utf-8") as fh:
        return loads_pts(fh.read())


def write_pts(s: PointSet, dst: Union[str, os.PathLike, TextIO], comment: str | None = None) -> None:
    text = dumps_pts(s, comment)
    if hasattr(dst, "write"):
        dst.write(text)
        return
    with open(dst, "w", encoding="utf-8") as fh:
        fh.write(text)
