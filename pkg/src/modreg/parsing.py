"""Line-oriented input grammar for module descriptors.

Two forms are accepted::

    Z: free=<n> torsion=[d1,d2,...]
    VD(<flags>): free=<n> torsion=[p^e1,...|a,b,...]

Flags are a comma-separated subset of {principal, dvr, nonprincipal}; an
empty flag list means the maximal ideal is not principal.  Valuation torsion
entries are either ``p^e`` (a p-power annihilator) or a bare identifier
naming an opaque annihilator; opaque entries are taken to be listed in chain
order, largest ideal first.
"""

import re

from .abgroups import FgAbGroup, canonicalize_factors
from .errors import ParseError
from .valuation import (
    Opaque,
    PPower,
    ValModule,
    ValuationRingProfile,
    warfield_canonicalize,
)

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|\^|-?\d+|[():=,\[\]|])")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _line_col(self, pos: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, pos) + 1
        last_nl = self.text.rfind("\n", 0, pos)
        return line, pos - last_nl

    def error(self, message: str, pos: int | None = None):
        line, col = self._line_col(self.pos if pos is None else pos)
        raise ParseError(message, line, col)

    def peek(self) -> str | None:
        m = _TOKEN.match(self.text, self.pos)
        return m.group(1) if m else None

    def take(self) -> str:
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            self.error("unexpected character" if self.pos < len(self.text) else "unexpected end of input")
        self.pos = m.end()
        return m.group(1)

    def expect(self, literal: str) -> None:
        start = self.pos
        got = self.peek()
        if got != literal:
            self.error(f"expected {literal!r}" + (f", got {got!r}" if got else ""), start)
        self.take()

    def take_int(self, what: str) -> int:
        start = self.pos
        tok = self.peek()
        if tok is None or not re.fullmatch(r"-?\d+", tok):
            self.error(f"expected {what}", start)
        self.take()
        return int(tok)

    def at_end(self) -> bool:
        return self.pos >= len(self.text) or self.text[self.pos :].strip() == ""


def _parse_int_list(sc: _Scanner) -> list[int]:
    sc.expect("[")
    out: list[int] = []
    if sc.peek() == "]":
        sc.take()
        return out
    while True:
        out.append(sc.take_int("an integer"))
        tok = sc.peek()
        if tok == ",":
            sc.take()
            continue
        sc.expect("]")
        return out


def _parse_val_torsion(sc: _Scanner) -> list[PPower | Opaque]:
    sc.expect("[")
    out: list[PPower | Opaque] = []
    if sc.peek() == "]":
        sc.take()
        return out
    level = 0
    while True:
        start = sc.pos
        tok = sc.take()
        if tok == "p":
            if sc.peek() != "^":
                sc.error("bare 'p' is ambiguous; write p^1", start)
            sc.take()
            exp = sc.take_int("an exponent")
            if exp < 1:
                sc.error("exponent must be >= 1", start)
            out.append(PPower(exp))
        elif re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            out.append(Opaque(tok, level))
        else:
            sc.error(f"expected a torsion entry, got {tok!r}", start)
        level += 1
        tok = sc.peek()
        if tok in (",", "|"):
            sc.take()
            continue
        sc.expect("]")
        return out


def _parse_body(sc: _Scanner) -> tuple[int, "_Scanner"]:
    sc.expect("free")
    sc.expect("=")
    free = sc.take_int("a free rank")
    if free < 0:
        sc.error("free rank must be >= 0")
    sc.expect("torsion")
    sc.expect("=")
    return free, sc


def parse_module_spec(
    text: str, *, canonicalize: bool = False
) -> FgAbGroup | tuple[ValModule, ValuationRingProfile]:
    """Parse one descriptor line into its canonical in-memory form.

    Abelian torsion lists must already be a divisibility chain unless
    ``canonicalize`` is set, in which case they are re-sorted (and unit
    factors dropped) via the primary decomposition.
    """
    sc = _Scanner(text)
    head_pos = sc.pos
    head = sc.peek()
    if head == "Z":
        sc.take()
        sc.expect(":")
        free, sc = _parse_body(sc)
        factors = _parse_int_list(sc)
        if not sc.at_end():
            sc.error("trailing input after descriptor")
        if canonicalize:
            return canonicalize_factors(free, factors)
        return FgAbGroup(free, tuple(factors))
    if head == "VD":
        sc.take()
        sc.expect("(")
        flags: list[str] = []
        if sc.peek() != ")":
            while True:
                start = sc.pos
                flag = sc.take()
                if flag not in ("principal", "dvr", "nonprincipal"):
                    sc.error(f"unknown flag {flag!r}", start)
                flags.append(flag)
                if sc.peek() == ",":
                    sc.take()
                    continue
                break
        sc.expect(")")
        if "nonprincipal" in flags and ("principal" in flags or "dvr" in flags):
            sc.error("contradictory flags", head_pos)
        profile = ValuationRingProfile(
            maximal_principal="principal" in flags or "dvr" in flags,
            is_dvr="dvr" in flags,
        )
        sc.expect(":")
        free, sc = _parse_body(sc)
        torsion = _parse_val_torsion(sc)
        if not sc.at_end():
            sc.error("trailing input after descriptor")
        module = warfield_canonicalize(ValModule(free, tuple(torsion)), profile)
        return module, profile
    sc.error("descriptor must start with 'Z:' or 'VD(...):'", head_pos)
    raise AssertionError("unreachable")
