"""Command line front end.

Exit status: 0 when the computation finished (the answer itself may be
negative), 1 for bad input, 2 when a checked theorem or a cross-validation
fails.
"""

import argparse
import json
import sys
import time

from .bbcell import (
    bb_membership,
    check_boundedness,
    delta_monic,
    division,
    flat_limit,
    in_coeff_ideals,
    initial_staircase,
    monic_pattern,
)
from .chow import chow_points, fiber_check
from .coeff import QQ
from .errors import (
    BBHilbError,
    InternalBoxOverflow,
    InvariantViolation,
    IterationLimit,
    NotBounded,
    ParseError,
)
from .gb import degeneration_oracle
from .order import QHOrder, SignedOrder, parse_order
from .poly import Polynomial, parse_polynomial
from .problem import load_problem
from .staircase import enumerate_standard_sets, heights, parse_standard_set

SCHEMA = 1
COMMANDS = ("staircase", "initial", "monic", "bounded", "bb", "limit", "chow", "divide", "enumerate")
_DEFECTS = (InvariantViolation, InternalBoxOverflow, IterationLimit)


class Failed(Exception):
    """A theorem check failed; carries the partial report."""

    def __init__(self, result, diagnosis):
        super().__init__(diagnosis)
        self.result = result
        self.diagnosis = diagnosis


def _mono(e):
    return str(Polynomial.monomial(e))


def _var(i):
    return f"x{i + 1}"


# ------------------------------------------------------------- input plumbing


class Inputs:
    def __init__(self, args):
        self.args = args
        self.problem = load_problem(args.ideal) if args.ideal else None
        self.d = self.problem.d if self.problem else None
        self._order = parse_order(args.order) if args.order else None
        if self._order is not None:
            if self.d is None:
                self.d = self._order.d
            elif self._order.d != self.d:
                raise ParseError(f"--order has {self._order.d} weights but the ideal has {self.d} variables")

    def need_problem(self):
        if self.problem is None:
            raise ParseError("this command needs --ideal FILE")
        return self.problem

    def ideal(self):
        return self.need_problem().ideal()

    def weight(self):
        if self._order is not None:
            return self._order.weight
        p = self.need_problem()
        if p.weight is None:
            raise ParseError("no weight: give --order or a 'weight =' header")
        return p.weight

    def order(self):
        """A total order: --order, completed by the standard tie-break if partial."""
        o = self._order
        if o is not None:
            if not o.is_total:
                o = QHOrder(o.weight, SignedOrder.standard(o.d), 1)
            return o
        return self.need_problem().order()

    def delta(self, required=True):
        if self.args.delta:
            return parse_standard_set(self.args.delta, self.d)
        if self.problem is not None and self.problem.delta is not None:
            return self.problem.delta
        if required:
            raise ParseError("no staircase: give --delta or a 'delta =' header")
        return None

    def echo(self):
        out = {"ideal": self.problem.echo() if self.problem else None}
        out["order"] = self.args.order
        out["delta"] = self.args.delta
        for key in ("poly", "max_iter", "dim", "size"):
            v = getattr(self.args, key, None)
            if v is not None:
                out[key] = v
        out["oracle"] = bool(self.args.oracle)
        return out


def _is_dual(inputs):
    return inputs.problem is not None and inputs.problem.ring is not QQ


def _monic_summary(res):
    return {
        "holds": res.holds,
        "order": str(res.order),
        "rank": res.rank,
        "staircase": None if res.staircase is None else str(res.staircase),
        "failed": [f.clause for f in res.failures],
    }


# ------------------------------------------------------------------ commands


def cmd_staircase(inp):
    delta = inp.delta(required=False)
    if delta is None:
        delta = inp.ideal().artifacts.quotient_basis
    return {
        "staircase": str(delta),
        "n": delta.n,
        "corners": [_mono(c) for c in delta.outer_corners()],
        "heights": {_var(i): {_mono(m): h for m, h in heights(delta, i).items()} for i in range(delta.d)},
    }, None


def _dual_descriptors(inp):
    p = inp.need_problem()
    if p.bounds is None:
        raise ParseError("a dual-number problem needs a 'bounds =' header")
    o = inp.order()
    desc = in_coeff_ideals(p.ideal(), o, p.bounds)
    return o, desc


def cmd_initial(inp):
    if _is_dual(inp):
        o, desc = _dual_descriptors(inp)
        return {"order": str(o), "descriptors": {_mono(m): str(c) for m, c in sorted(desc.items())}}, None
    o = inp.order()
    try:
        res = initial_staircase(inp.ideal(), o)
    except NotBounded as exc:
        return {"order": str(o), "staircase": None}, str(exc)
    return {
        "order": str(o),
        "staircase": str(res.staircase),
        "corners": [_mono(c) for c in res.corners],
        "reduced_basis": [str(g) for g in res.reduced_basis],
    }, None


def cmd_monic(inp):
    delta = inp.delta()
    if _is_dual(inp):
        o, desc = _dual_descriptors(inp)
        holds = monic_pattern(desc, delta)
        return {
            "order": str(o),
            "holds": holds,
            "descriptors": {_mono(m): str(c) for m, c in sorted(desc.items())},
        }, None if holds else "descriptors do not follow the Delta pattern"
    res = delta_monic(inp.ideal(), inp.order(), delta)
    return _monic_summary(res), res.diagnosis or None


def cmd_bounded(inp):
    o = inp.order()
    cert, bad = check_boundedness(inp.ideal(), o)
    result = {
        "order": str(o),
        "bounded": not bad,
        "negative": [_var(i) for i in o.negative_variables()],
        "exponents": list(cert.exponents),
        "witnesses": [str(h) for h in cert.witnesses],
    }
    diag = "; ".join(f"{_var(i)} is negative but has minimal polynomial {h}" for i, h in bad)
    return result, diag or None


def cmd_bb(inp):
    ideal = inp.ideal()
    weight = inp.weight()
    delta = inp.delta()
    res = bb_membership(ideal, weight, delta)
    result = {
        "member": res.holds,
        "weight": list(res.weight),
        "plus": _monic_summary(res.plus),
        "minus": _monic_summary(res.minus),
    }
    if inp.args.oracle:
        orc = degeneration_oracle(ideal, weight)
        agree = orc.is_limit(delta) == res.holds
        result["oracle"] = {
            "member": orc.is_limit(delta),
            "special_staircase": None if orc.special_staircase is None else str(orc.special_staircase),
            "special_dimension": orc.special_dimension,
            "generic_rank": orc.generic_rank,
        }
        if not agree:
            raise Failed(result, "the two-order criterion and the degeneration oracle disagree")
    return result, res.diagnosis or None


def cmd_limit(inp):
    weight = inp.weight()
    try:
        lim = flat_limit(inp.ideal(), weight, cross_check=inp.args.oracle)
    except NotBounded as exc:
        return {"weight": list(weight), "generators": None}, str(exc)
    return {
        "weight": list(weight),
        "generators": [str(g) for g in lim.generators],
        "groebner_basis": [str(g) for g in lim.reduced_gb()],
        "dimension": lim.ideal.quotient_dimension(),
        "monomial": lim.staircase is not None,
        "staircase": None if lim.staircase is None else str(lim.staircase),
    }, None


def cmd_chow(inp):
    ideal = inp.ideal()
    result = {"charpolys": {_var(cp.variable): str(cp) for cp in chow_points(ideal)}}
    delta = inp.delta(required=False)
    has_weight = inp._order is not None or (inp.problem.weight is not None)
    if delta is None or not has_weight:
        return result, None
    fc = fiber_check(ideal, inp.weight(), delta)
    result["fiber_check"] = {
        "applicable": fc.applicable,
        "holds": fc.holds if fc.applicable else None,
        "variables": {_var(i): v for i, v in sorted(fc.details.items())} if fc.applicable else {},
    }
    if fc.applicable and not fc.holds:
        raise Failed(result, "fiber check failed for a member of the cell")
    return result, None if fc.applicable else f"not a cell member: {fc.details['reason']}"


def cmd_divide(inp):
    if not inp.args.poly:
        raise ParseError("divide needs --poly")
    ideal = inp.ideal()
    o = inp.order()
    f = parse_polynomial(inp.args.poly, ideal.d)
    try:
        res = initial_staircase(ideal, o)
    except NotBounded as exc:
        return {"order": str(o), "staircase": None}, str(exc)
    delta = inp.delta(required=False) or res.staircase
    if delta != res.staircase:
        return {"order": str(o), "staircase": str(res.staircase)}, (
            f"initial staircase {res.staircase} differs from the requested {delta}"
        )
    div = division(f, res, delta, o, max_iter=inp.args.max_iter)
    if div.reassemble() != f:
        raise InvariantViolation("division identity does not reassemble f")
    member = div.remainder_delta.is_zero()
    if member != ideal.contains(f):
        raise InvariantViolation("division membership disagrees with the normal form")
    return {
        "order": str(o),
        "staircase": str(delta),
        "divisors": [str(g) for g in div.divisors],
        "quotients": [str(q) for q in div.quotients],
        "remainder_delta": str(div.remainder_delta),
        "remainder_rest": str(div.remainder_rest),
        "iterations": div.iterations,
        "member": member,
    }, None


def cmd_enumerate(inp):
    d, n = inp.args.dim, inp.args.size
    if d is None or n is None:
        raise ParseError("enumerate needs --dim and --size")
    if d < 1 or n < 0:
        raise ParseError("--dim must be positive and --size nonnegative")
    sets = [str(s) for s in enumerate_standard_sets(d, n)]
    return {"dim": d, "size": n, "count": len(sets), "staircases": sets}, None


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}
HELP = {
    "staircase": "describe a staircase (or the grevlex staircase of an ideal)",
    "initial": "initial staircase and reduced basis for a total order",
    "monic": "test whether the ideal is Delta-monic",
    "bounded": "boundedness certificate",
    "bb": "membership in the Bialynicki-Birula cell of Delta",
    "limit": "flat limit of the torus orbit",
    "chow": "coordinatewise Hilbert-Chow points and fiber check",
    "divide": "division with Delta-split remainder",
    "enumerate": "list all staircases of a given size",
}


# ------------------------------------------------------------------- output


def _render_text(payload):
    lines = [f"command: {payload['command']}"]

    def emit(prefix, value):
        if isinstance(value, dict):
            for k, v in value.items():
                emit(f"{prefix}.{k}" if prefix else k, v)
        elif isinstance(value, list):
            lines.append(f"{prefix}: " + ", ".join(str(v) for v in value))
        else:
            lines.append(f"{prefix}: {'null' if value is None else value}")

    emit("", payload["result"] or {})
    if payload.get("diagnosis"):
        lines.append(f"diagnosis: {payload['diagnosis']}")
    if payload.get("error"):
        lines.append(f"error: {payload['error']['message']}")
    if payload.get("timings"):
        lines.append(f"time_ms: {payload['timings']['total_ms']}")
    return "\n".join(lines)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ideal", metavar="FILE", help="problem file")
    common.add_argument("--order", metavar="SPEC", help="e.g. 'w=(1,-1);tiebreak=+1,+2;polarity=-'")
    common.add_argument("--delta", metavar="SPEC", help="staircase, e.g. '{(0,0),(0,1)}'")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-iter", type=int, dest="max_iter", help="division step limit")
    common.add_argument("--oracle", action="store_true", help="cross-check against the degeneration oracle")
    common.add_argument("--poly", help="polynomial for 'divide'")
    common.add_argument("--dim", type=int, help="number of variables for 'enumerate'")
    common.add_argument("--size", type=int, help="staircase size for 'enumerate'")
    common.add_argument("--timings", action="store_true", help="include wall-clock time in the report")
    parser = argparse.ArgumentParser(prog="bbhilb", description="Bialynicki-Birula cells of Hilbert schemes of points")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=HELP[name])
    return parser


def execute(args):
    """Run parsed arguments; returns (exit code, payload)."""
    payload = {"schema": SCHEMA, "command": args.command, "inputs": None, "result": None, "diagnosis": None, "timings": None}
    start = time.perf_counter()
    code = 0
    try:
        inp = Inputs(args)
        payload["inputs"] = inp.echo()
        payload["result"], payload["diagnosis"] = HANDLERS[args.command](inp)
    except Failed as exc:
        payload["result"], payload["diagnosis"] = exc.result, exc.diagnosis
        code = 2
    except _DEFECTS as exc:
        payload["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = 2
    except ParseError as exc:
        payload["error"] = {"type": "ParseError", "message": str(exc), "line": exc.line, "column": exc.column}
        code = 1
    except (BBHilbError, ValueError, OSError) as exc:
        payload["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = 1
    if args.timings:
        payload["timings"] = {"total_ms": round(1000 * (time.perf_counter() - start), 3)}
    return code, payload


def run(argv):
    return execute(build_parser().parse_args(argv))


def main(argv=None):
    args = build_parser().parse_args(argv)
    code, payload = execute(args)
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(_render_text(payload))
    if "error" in payload:
        print(f"bbhilb: {payload['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
