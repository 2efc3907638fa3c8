"""Line-oriented text format for instances.

::

    rcsp 1
    n m R mode wait          # mode: final|windows, wait: wait|nowait
    s t
    a^1 b^1 ... a^R b^R      # n lines, only for mode=windows with R > 0
    b_t^1 ... b_t^R          # one line, only for mode=final with R > 0
    u v c t^1 ... t^R        # m arc lines

``#`` starts a comment.  Numbers are integers, decimals, or ``p/q`` for
rationals without a terminating decimal expansion.
"""
from __future__ import annotations

import io
from fractions import Fraction

from .core import Arc, Instance, InstanceError, Mode, Wait, as_number, format_number


class InstanceFormatError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body.split()


def _num(tok, lineno):
    try:
        return as_number(Fraction(tok))
    except (ValueError, ZeroDivisionError):
        raise InstanceFormatError(f"bad number {tok!r}", lineno) from None


def _int(tok, lineno, what):
    try:
        return int(tok)
    except ValueError:
        raise InstanceFormatError(f"bad {what} {tok!r}", lineno) from None


def parse_instance(text) -> Instance:
    """Parse instance text (a string or a readable stream)."""
    if not isinstance(text, str):
        text = text.read()
    lines = list(_lines(text))
    pos = 0

    def take(what):
        nonlocal pos
        if pos >= len(lines):
            last = lines[-1][0] if lines else 0
            raise InstanceFormatError(f"unexpected end of input, expected {what}", last)
        item = lines[pos]
        pos += 1
        return item

    lineno, toks = take("magic line")
    if toks != ["rcsp", "1"]:
        raise InstanceFormatError("missing 'rcsp 1' magic line", lineno)

    lineno, toks = take("header")
    if len(toks) != 5:
        raise InstanceFormatError("malformed header, expected 'n m R mode wait'", lineno)
    n = _int(toks[0], lineno, "node count")
    m = _int(toks[1], lineno, "arc count")
    R = _int(toks[2], lineno, "resource count")
    try:
        mode = Mode(toks[3])
        wait = Wait(toks[4])
    except ValueError:
        raise InstanceFormatError("malformed header, bad mode or wait policy", lineno) from None
    if n < 1 or m < 0 or R < 0:
        raise InstanceFormatError("malformed header, negative counts", lineno)

    lineno, toks = take("source/sink line")
    if len(toks) != 2:
        raise InstanceFormatError("expected 's t'", lineno)
    s, t = _int(toks[0], lineno, "source"), _int(toks[1], lineno, "sink")
    for v in (s, t):
        if not 1 <= v <= n:
            raise InstanceFormatError(f"dangling node id {v}", lineno)

    lower, upper, budget = [], [], ()
    if mode is Mode.WINDOWS and R > 0:
        for i in range(1, n + 1):
            lineno, toks = take(f"window line for node {i}")
            if len(toks) != 2 * R:
                raise InstanceFormatError(f"expected {2 * R} window values", lineno)
            vals = [_num(x, lineno) for x in toks]
            lo, hi = tuple(vals[0::2]), tuple(vals[1::2])
            if any(a > b for a, b in zip(lo, hi)):
                raise InstanceFormatError("window with a > b", lineno)
            lower.append(lo)
            upper.append(hi)
    elif mode is Mode.FINAL and R > 0:
        lineno, toks = take("sink budget line")
        if len(toks) != R:
            raise InstanceFormatError(f"expected {R} budget values", lineno)
        budget = tuple(_num(x, lineno) for x in toks)

    arcs = []
    for k in range(m):
        if pos >= len(lines):
            raise InstanceFormatError(
                f"arc count mismatch: header says {m}, found {k}", lines[-1][0]
            )
        lineno, toks = take("arc line")
        if len(toks) != 3 + R:
            raise InstanceFormatError(f"arc line needs {3 + R} fields", lineno)
        u = _int(toks[0], lineno, "tail")
        v = _int(toks[1], lineno, "head")
        for x in (u, v):
            if not 1 <= x <= n:
                raise InstanceFormatError(f"dangling node id {x}", lineno)
        c = _num(toks[2], lineno)
        cons = tuple(_num(x, lineno) for x in toks[3:])
        if any(x < 0 for x in cons):
            raise InstanceFormatError("negative consumption", lineno)
        arcs.append(Arc(u, v, c, cons))
    if pos < len(lines):
        raise InstanceFormatError(
            f"arc count mismatch: header says {m}, found more", lines[pos][0]
        )

    try:
        return Instance(
            n=n, arcs=tuple(arcs), resources=R, source=s, sink=t, mode=mode,
            wait=wait, lower=tuple(lower), upper=tuple(upper), budget=budget,
        )
    except InstanceError as e:
        raise InstanceFormatError(str(e)) from None


def serialize_instance(inst: Instance) -> str:
    f = format_number
    out = io.StringIO()
    out.write("rcsp 1\n")
    out.write(f"{inst.n} {inst.m} {inst.resources} {inst.mode.value} {inst.wait.value}\n")
    out.write(f"{inst.source} {inst.sink}\n")
    if inst.resources:
        if inst.mode is Mode.WINDOWS:
            for lo, hi in zip(inst.lower, inst.upper):
                out.write(" ".join(f"{f(a)} {f(b)}" for a, b in zip(lo, hi)) + "\n")
        else:
            out.write(" ".join(f(b) for b in inst.budget) + "\n")
    for a in inst.arcs:
        fields = [str(a.tail), str(a.head), f(a.cost)] + [f(x) for x in a.consumption]
        out.write(" ".join(fields) + "\n")
    return out.getvalue()


def load(path) -> Instance:
    with open(path) as fh:
        return parse_instance(fh.read())


def dump(inst: Instance, path):
    with open(path, "w") as fh:
        fh.write(serialize_instance(inst))
