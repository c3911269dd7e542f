"""
Textual region literals

    jump(2)   legendre(2/5)   hurwitz   omega
    cells[(c0,c1,c2,c3,rel);(...)|(...)]     ';' joins constraints, '|' joins cells
    union(A, B)   intersect(A, B)   complement(A)
"""
from __future__ import annotations

import re
from typing import List

from .errors import MixedRadicands, ParseError
from .expr import parse_surd
from .regions import RELATIONS, BilinearConstraint, Region, builtin_region

_CALL = re.compile(r"^([a-z_]+)\s*\((.*)\)$", re.S)


def _split_top(text: str, separator: str) -> List[str]:
    """Split on separator outside brackets"""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in '([':
            depth += 1
        elif ch in ')]':
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced brackets in {text!r}")
        elif ch == separator and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    if depth != 0:
        raise ParseError(f"unbalanced brackets in {text!r}")
    parts.append(text[start:])
    return [p.strip() for p in parts]


def _parse_constraint(text: str) -> BilinearConstraint:
    if not (text.startswith('(') and text.endswith(')')):
        raise ParseError(f"constraint must be parenthesised: {text!r}")
    fields = _split_top(text[1:-1], ',')
    if len(fields) != 5:
        raise ParseError(f"constraint needs (c0,c1,c2,c3,rel): {text!r}")
    relation = fields[4].strip()
    if relation not in RELATIONS:
        raise ParseError(f"unknown relation {relation!r}")
    coeffs = [parse_surd(f) for f in fields[:4]]
    try:
        return BilinearConstraint(*coeffs, relation)
    except MixedRadicands as exc:
        raise ParseError(str(exc)) from exc


def _parse_cells(body: str) -> Region:
    if not body.strip():
        return Region((), 'cells[]')
    cells = []
    for cell_text in _split_top(body, '|'):
        if not cell_text:
            cells.append(())
            continue
        cells.append(tuple(_parse_constraint(c) for c in _split_top(cell_text, ';')))
    return Region(tuple(cells), f"cells[{body.strip()}]")


def parse_region(text: str) -> Region:
    """
    Parse a region literal

    Raises:
        ParseError: on malformed literals
        BadParameter: on out-of-range builtin parameters
    """
    text = text.strip()
    if text in ('hurwitz', 'omega'):
        return builtin_region(text)
    if text.startswith('cells[') and text.endswith(']'):
        return _parse_cells(text[len('cells['):-1])
    match = _CALL.match(text)
    if not match:
        raise ParseError(f"unknown region literal {text!r}")
    name, body = match.group(1), match.group(2)
    if name == 'jump':
        try:
            b = int(body.strip())
        except ValueError:
            raise ParseError(f"jump needs an integer, got {body!r}") from None
        return builtin_region('jump', b)
    if name == 'legendre':
        return builtin_region('legendre', parse_surd(body))
    args = _split_top(body, ',')
    if name == 'union' and len(args) == 2:
        return parse_region(args[0]).union(parse_region(args[1]))
    if name == 'intersect' and len(args) == 2:
        return parse_region(args[0]).intersection(parse_region(args[1]))
    if name == 'complement' and len(args) == 1:
        return parse_region(args[0]).complement()
    raise ParseError(f"unknown region literal {text!r}")
