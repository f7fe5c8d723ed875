"""Line-oriented algebra description files.

    # comment
    field GF(2^2)/1,1,1
    vars Y1 Y2
    order grevlex            (optional)
    group elemab:2^2
    action g1: Y1 -> Y1 + 1
    action g2: Y2 -> Y2 + 1

One ``action gK:`` line per group generator (K counts from 1); variables not
listed are fixed.
"""

from __future__ import annotations

import re

from .errors import ActionError, ModgalError, ParseError
from .ffield import parse_field_spec
from .galgebra import GAlgebra, make_galgebra
from .pgroup import parse_group_spec
from .polyring import ORDERS, Ring

_ACTION_RE = re.compile(r"g(\d+)\s*:")
_KEYWORDS = ("field", "vars", "order", "group", "action")


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse_algebra_file(text: str, base_dir=None, validate: bool = True) -> GAlgebra:
    """Build a GAlgebra from file text; errors carry line and column (1-based)."""
    fields: dict = {}
    actions: dict[int, tuple[int, int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        m = re.match(r"\s*(\S+)\s*", line)
        if not m:
            continue
        word, at = m.group(1), m.end()      # at: 0-based offset of the argument
        if word not in _KEYWORDS:
            raise ParseError(f"unknown keyword {word!r}", lineno, m.start(1) + 1)
        if word == "action":
            am = _ACTION_RE.match(line, at)
            if not am:
                raise ParseError("expected 'gK:' after 'action'", lineno, at + 1)
            k = int(am.group(1))
            if k in actions:
                raise ParseError(f"duplicate action for g{k}", lineno, at + 1)
            actions[k] = (lineno, am.end(), line)
        else:
            if word in fields:
                raise ParseError(f"duplicate '{word}' line", lineno, m.start(1) + 1)
            fields[word] = (lineno, at + 1, line[at:].strip())
    for word in ("field", "vars", "group"):
        if word not in fields:
            raise ParseError(f"missing '{word}' line")

    ln, col, spec = fields["field"]
    try:
        ctx = parse_field_spec(spec)
    except ModgalError as e:
        raise ParseError(str(e), ln, col) from None
    ln, col, spec = fields["vars"]
    names = [v for v in re.split(r"[\s,]+", spec) if v]
    order = "grevlex"
    if "order" in fields:
        oln, ocol, order = fields["order"]
        if order not in ORDERS:
            raise ParseError(f"unknown monomial order {order!r}", oln, ocol)
    try:
        ring = Ring(ctx, names, order)
    except (ModgalError, ValueError) as e:
        raise ParseError(str(e), ln, col) from None
    ln, col, spec = fields["group"]
    try:
        G = parse_group_spec(spec, base_dir)
    except (ModgalError, OSError) as e:
        raise ParseError(str(e), ln, col) from None

    if sorted(actions) != list(range(1, len(G.gens) + 1)):
        raise ParseError(f"need action lines g1..g{len(G.gens)}, got "
                         + (",".join(f"g{k}" for k in sorted(actions)) or "none"))
    assignments = [_parse_assignment(ring, *actions[k]) for k in range(1, len(G.gens) + 1)]
    try:
        return make_galgebra(ring, G, assignments, validate=validate)
    except ActionError:
        raise
    except ModgalError as e:
        raise ParseError(str(e)) from None


def _parse_assignment(ring: Ring, ln: int, at: int, line: str) -> dict:
    out = {}
    for m in re.finditer(r"[^;]+", line[at:]):
        part, base = m.group(0), at + m.start()
        if not part.strip():
            continue
        lhs, arrow, rhs = part.partition("->")
        lcol = base + len(lhs) - len(lhs.lstrip()) + 1
        if not arrow:
            raise ParseError("expected 'var -> polynomial'", ln, lcol)
        v = lhs.strip()
        if v not in ring.vars:
            raise ParseError(f"unknown variable {v!r}", ln, lcol)
        if v in out:
            raise ParseError(f"variable {v!r} assigned twice", ln, lcol)
        rbase = base + len(lhs) + 2
        try:
            out[v] = ring.parse(rhs)
        except ParseError as e:
            raise ParseError(str(e), ln, rbase + (e.col or 1)) from None
    return out


def format_algebra(A: GAlgebra) -> str:
    """Serialize A; parse_algebra_file(format_algebra(A)) reproduces the action."""
    if A.group.spec is None:
        raise ModgalError("group has no spec string and cannot be written to a file")
    lines = [f"field {A.ctx.spec()}", "vars " + " ".join(A.ring.vars)]
    if A.ring.order != "grevlex":
        lines.append(f"order {A.ring.order}")
    lines.append(f"group {A.group.spec}")
    for k, m in enumerate(A.gen_maps, start=1):
        parts = [f"{v} -> {img}" for v, img in zip(A.ring.vars, m.images) if img != A.ring.var(v)]
        lines.append(f"action g{k}: " + " ; ".join(parts) if parts else f"action g{k}:")
    return "\n".join(lines) + "\n"


def load_algebra(path, validate: bool = True) -> GAlgebra:
    import pathlib

    path = pathlib.Path(path)
    return parse_algebra_file(path.read_text(encoding="utf-8"), path.parent, validate)
