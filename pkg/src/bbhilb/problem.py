"""Problem files: a ``key = value`` header followed by one generator per line.

Example::

    # <x1 + x2, x2^2> under the weight (1,-1)
    d = 2
    weight = (1,-1)
    delta = {(0,0),(0,1)}
    x1 + x2
    x2^2

Recognized keys are ``d``, ``base`` (``QQ`` or ``dual(N)``), ``weight``,
``tiebreak``, ``polarity``, ``delta`` and ``bounds``.  Lines starting with
``#`` and blank lines are ignored.
"""

import re
from dataclasses import dataclass, field

from .coeff import QQ, DualRing, MAX_DUAL_ORDER
from .errors import BBHilbError, ParseError
from .gb import Ideal
from .order import QHOrder, SignedOrder, clear_weight, parse_tiebreak, parse_weight
from .poly import parse_polynomial
from .staircase import parse_standard_set

_HEADER = re.compile(r"^(\s*)(d|base|weight|tiebreak|polarity|delta|bounds)(\s*)=(\s*)(.*?)\s*$")
_KEYS_NEEDING_D = ("weight", "tiebreak", "delta", "bounds")


@dataclass
class ProblemFile:
    d: int
    ring: object = QQ
    weight: tuple = None
    tiebreak: SignedOrder = None
    polarity: int = 1
    delta: object = None
    bounds: tuple = None
    generators: list = field(default_factory=list)
    lines: list = field(default_factory=list)  # source line of each generator
    path: str = None

    def ideal(self):
        return Ideal(self.generators, self.d, self.ring)

    def order(self):
        """Total order from the header (standard tie-break when none is given)."""
        if self.weight is None:
            raise ParseError("the problem has no weight")
        tb = self.tiebreak or SignedOrder.standard(self.d)
        return QHOrder(self.weight, tb, self.polarity)

    def echo(self):
        return {
            "d": self.d,
            "base": "QQ" if self.ring is QQ else f"dual({self.ring.order})",
            "weight": None if self.weight is None else list(self.weight),
            "tiebreak": None if self.tiebreak is None else str(self.tiebreak),
            "polarity": "+" if self.polarity > 0 else "-",
            "delta": None if self.delta is None else str(self.delta),
            "bounds": None if self.bounds is None else list(self.bounds),
            "generators": [str(g) for g in self.generators],
        }


def _parse_base(value, line, col):
    if value == "QQ":
        return QQ
    m = re.fullmatch(r"dual\((\d+)\)", value)
    if not m:
        raise ParseError(f"unknown base ring {value!r}", line, col)
    N = int(m.group(1))
    if not 1 <= N <= MAX_DUAL_ORDER:
        raise ParseError(f"dual order must be between 1 and {MAX_DUAL_ORDER}", line, col)
    return DualRing(N)


def _parse_bounds(value, d, line, col):
    s = value.strip().strip("()[]")
    try:
        vals = [int(v) for v in s.split(",") if v.strip()]
    except ValueError:
        raise ParseError(f"bad bounds {value!r}", line, col) from None
    if len(vals) != d or any(v < 1 for v in vals):
        raise ParseError(f"bounds need {d} positive integers", line, col)
    return tuple(vals)


def parse_problem(text, path=None):
    header = {}
    gen_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        m = _HEADER.match(raw)
        if m:
            key = m.group(2)
            if key in header:
                raise ParseError(f"duplicate header key {key!r}", lineno, len(m.group(1)) + 1)
            col = len(raw) - len(raw.lstrip()) + len(key) + len(m.group(3)) + len(m.group(4)) + 2
            header[key] = (m.group(5), lineno, col)
            continue
        if "=" in raw:
            raise ParseError("unknown header line", lineno, raw.index("=") + 1)
        gen_lines.append((lineno, raw))
    if "d" not in header:
        raise ParseError("missing header 'd = <number of variables>'", 1, 1)
    value, line, col = header["d"]
    if not value.isdigit() or int(value) < 1:
        raise ParseError(f"bad dimension {value!r}", line, col)
    d = int(value)
    prob = ProblemFile(d, path=path)
    if "base" in header:
        prob.ring = _parse_base(*header["base"])
    for key in _KEYS_NEEDING_D:
        if key not in header:
            continue
        value, line, col = header[key]
        try:
            if key == "weight":
                w = clear_weight(parse_weight(value))
                if len(w) != d:
                    raise ParseError(f"weight has {len(w)} entries, expected {d}")
                prob.weight = w
            elif key == "tiebreak":
                prob.tiebreak = parse_tiebreak(value, d)
            elif key == "delta":
                prob.delta = parse_standard_set(value, d)
            else:
                prob.bounds = _parse_bounds(value, d, line, col)
        except ParseError as exc:
            raise ParseError(exc.message, line, col) from None
        except BBHilbError as exc:
            raise ParseError(str(exc), line, col) from None
    if "polarity" in header:
        value, line, col = header["polarity"]
        if value not in ("+", "-", "+1", "-1"):
            raise ParseError(f"bad polarity {value!r}", line, col)
        prob.polarity = -1 if value.startswith("-") else 1
    for k, (lineno, raw) in enumerate(gen_lines, start=1):
        try:
            prob.generators.append(parse_polynomial(raw, d, prob.ring, line=lineno))
        except ParseError as exc:
            raise ParseError(f"generator {k}: {exc.message}", exc.line, exc.column) from None
        prob.lines.append(lineno)
    if not prob.generators:
        raise ParseError("the problem lists no generators", len(text.splitlines()) or 1, 1)
    return prob


def load_problem(path):
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read(), path=str(path))
