"""Command-line front end.

Usage examples::

    caentropy entropy rate r=2 span=-1..1 coeffs=1,1,1
    caentropy rule power u=2 r=2 span=-1..1 coeffs=1,0,1
    caentropy directional p=1 q=1 r=2 span=-1..1 coeffs=1,0,1
    caentropy direction-limit terms=1,1,1,1,1 --depth 5 r=2 span=-1..1 coeffs=1,0,1
    caentropy verify thm34 r=2 span=-1..1 coeffs=1,0,1 --dirs 0,1 1,1 --umax 3

Exit status: 0 on success, 2 when a verification fails, 1 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import re
import sys
from fractions import Fraction

from . import verify
from .directional import (
    directional_entropy,
    homogeneity_check,
    unit_length_entropy,
)
from .entropy import (
    IntervalSpec,
    closed_form_entropy,
    conditional_entropy,
    default_halfwidth,
    entropy_rate,
    right_left_entropies,
)
from .linalg import format_matrix
from .rules import (
    compose_direction,
    effective_span,
    format_rule,
    is_surjective,
    parse_rule,
    permutativity,
    rule_power,
)
from .spacetime import CellSet, cells_to_matrix, format_spacetime, simulate_cone, simulate_cyclic

SCHEMA = 1
RULE_KEYS = ("r", "span", "coeffs")
log = logging.getLogger("caentropy")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="caentropy", description="Exact entropies of additive cellular automata.")
    p.add_argument("words", nargs="*", help="command words and key=value parameters")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--rows", type=int, help="maximum rows for entropy rates")
    p.add_argument("--window", type=int, help="window half-width")
    p.add_argument("--widen", type=int, default=0, help="add to the default window half-width")
    p.add_argument("--depth", type=int, help="conditioning depth / convergent count")
    p.add_argument("--width", type=int, help="truncation width")
    p.add_argument("--past-width", type=int, help="truncation width of conditioning rays")
    p.add_argument("--tol", type=float, help="convergence tolerance")
    p.add_argument("--umax", type=int, default=3)
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    p.add_argument("--out", help="write the report to FILE")
    p.add_argument("-v", "--verbose", action="count", default=0,
                   help="log progress; twice also dumps matrices")
    return p


_DIR_RE = re.compile(r"^-?\d+,-?\d+$")


def _fold_dirs(argv: list[str]) -> list[str]:
    # "--dirs -2,1 0,1" would otherwise be read as options.
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--dirs":
            j = i + 1
            while j < len(argv) and _DIR_RE.match(argv[j]):
                j += 1
            if j == i + 1:
                raise UsageError("--dirs needs at least one p,q pair")
            out.append("dirs=" + ";".join(argv[i + 1:j]))
            i = j
        else:
            out.append(argv[i])
            i += 1
    return out


def _split_words(words):
    command, params = [], {}
    for w in words:
        key, sep, value = w.partition("=")
        if sep:
            if key in params:
                raise UsageError(f"duplicate parameter {key!r}")
            params[key] = value
        elif params:
            raise UsageError(f"unexpected word {w!r} after parameters")
        else:
            command.append(w)
    return command, params


class Context:
    def __init__(self, args, params):
        self.args = args
        self.params = params
        self.used = set()

    def take(self, key, conv=str, default=None, required=False):
        if key not in self.params:
            if required:
                raise UsageError(f"missing parameter {key}=")
            return default
        self.used.add(key)
        try:
            return conv(self.params[key])
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad value for {key}: {exc}") from None

    def rule(self, required=True):
        present = [k for k in RULE_KEYS if k in self.params]
        if not present:
            if required:
                raise UsageError("missing rule literal (r=.. span=l..u coeffs=..)")
            return None
        self.used.update(present)
        try:
            return parse_rule(" ".join(f"{k}={self.params[k]}" for k in present))
        except ValueError as exc:
            raise UsageError(str(exc)) from None

    def finish(self):
        extra = sorted(set(self.params) - self.used)
        if extra:
            raise UsageError(f"unknown parameters: {', '.join(extra)}")


def _ints(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _cells(text):
    cells = []
    for item in text.split(","):
        site, sep, time = item.partition("@")
        if not sep:
            raise ValueError(f"cell {item!r} must look like site@time")
        cells.append((int(site), int(time)))
    return cells


def _dirs(text):
    out = []
    for item in text.split(";"):
        p, q = item.split(",")
        out.append((int(p), int(q)))
    return out


def _rule_record(rule):
    rep = permutativity(rule)
    span = effective_span(rule)
    return {
        "rule": format_rule(rule),
        "modulus": rule.modulus,
        "span": [rule.left, rule.right],
        "coeffs": list(rule.coeffs),
        "effective_span": span if isinstance(span, str) else list(span),
        "left_permutative": rep.left_permutative,
        "right_permutative": rep.right_permutative,
        "bipermutative": rep.bipermutative,
        "surjective": is_surjective(rule),
    }


def _rate_kwargs(ctx, rule):
    a = ctx.args
    kw = {}
    if a.window is not None:
        kw["window_halfwidth"] = a.window
    elif a.widen:
        kw["window_halfwidth"] = default_halfwidth(rule) + a.widen
    if a.rows is not None:
        kw["max_rows"] = a.rows
    if a.tol is not None:
        kw["tol"] = a.tol
    return kw


def _difference_table(est):
    return ["m", "difference_nats"], [[m, d] for m, d in enumerate(est.differences)]


def cmd_rule(ctx, sub):
    rule = ctx.rule()
    if sub == "info":
        return _rule_record(rule), None
    if sub == "power":
        u = ctx.take("u", int, required=True)
        if u < 0:
            raise UsageError("u must be >= 0")
        return _rule_record(rule_power(rule, u)), None
    if sub == "compose":
        p, q = ctx.take("p", int, 0), ctx.take("q", int, required=True)
        if q < 0:
            raise UsageError("q must be >= 0")
        return _rule_record(compose_direction(rule, p, q)), None
    raise UsageError(f"unknown rule subcommand {sub!r}")


def cmd_simulate(ctx):
    rule = ctx.rule()
    init = ctx.take("init", _ints, required=True)
    steps = ctx.take("steps", int, 1)
    origin = ctx.take("origin", int, 0)
    cyclic = ctx.take("boundary", str, "cone") == "cyclic"
    try:
        if cyclic:
            rows = simulate_cyclic(rule, init, steps)
            record = {"rows": [list(r) for r in rows], "left": origin, "boundary": "cyclic"}
            text = format_spacetime(rows, origin)
        else:
            rows = simulate_cone(rule, init, steps, origin)
            record = {"rows": [{"start": r.start, "values": list(r.values)} for r in rows],
                      "boundary": "cone"}
            text = format_spacetime(rows)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    record["rule"] = format_rule(rule)
    return record, text


def cmd_entropy(ctx, sub):
    rule = ctx.rule()
    if sub == "rate":
        est = entropy_rate(rule, **_rate_kwargs(ctx, rule))
        rec = {"rule": format_rule(rule), **est.to_dict()}
        return rec, _difference_table(est)
    if sub == "closed-form":
        value = closed_form_entropy(rule)
        rec = {"rule": format_rule(rule), "closed_form": value is not None}
        if value is None:
            est = entropy_rate(rule, **_rate_kwargs(ctx, rule))
            rec.update(est.to_dict())
        else:
            rec.update({"value_nats": value, "value_log2": value / math.log(2)})
        return rec, None
    if sub == "conditional":
        alpha = ctx.take("alpha", _cells, required=True)
        beta = ctx.take("beta", _cells, [])
        both, offset = CellSet.normalized(alpha + beta)
        a = CellSet((s, t + offset) for s, t in alpha)
        b = CellSet((s, t + offset) for s, t in beta)
        if ctx.args.verbose > 1:
            log.debug("joint matrix\n%s", format_matrix(cells_to_matrix(rule, both)[0]))
        value = conditional_entropy(rule, a, b)
        return {"rule": format_rule(rule), "value_nats": value,
                "value_log2": value / math.log(2), "time_offset": offset}, None
    raise UsageError(f"unknown entropy subcommand {sub!r}")


def cmd_directional(ctx):
    rule = ctx.rule()
    p, q = ctx.take("p", int, required=True), ctx.take("q", int, required=True)
    try:
        est = directional_entropy(rule, (p, q), **{k: v for k, v in _rate_kwargs(ctx, rule).items()
                                                    if k != "window_halfwidth"})
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rec = {"rule": format_rule(rule), "direction": {"p": p, "q": q}, **est.to_dict()}
    return rec, _difference_table(est)


def cmd_direction_limit(ctx):
    rule = ctx.rule()
    terms = ctx.take("terms", _ints)
    omega = ctx.take("omega", Fraction)
    if (terms is None) == (omega is None):
        raise UsageError("give exactly one of terms=a0,a1,... or omega=p/q")
    depth = ctx.args.depth or 5
    try:
        rep = unit_length_entropy(rule, terms if omega is None else omega, depth)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = [[i, m, n, c] for i, ((m, n), c) in enumerate(zip(rep.convergents, rep.c_values))]
    return {"rule": format_rule(rule), **rep.to_dict()}, (["i", "m_i", "n_i", "c_i"], rows)


def cmd_rl_entropy(ctx):
    rule = ctx.rule()
    try:
        interval = IntervalSpec(ctx.take("a", Fraction, Fraction(0)),
                                ctx.take("omega", Fraction, Fraction(1)))
        depth = ctx.args.depth or 2
        width = 3 if ctx.args.width is None else ctx.args.width
        rl = right_left_entropies(rule, interval, depth, width, ctx.args.past_width)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return {"rule": format_rule(rule), "a": str(interval.a), "omega": str(interval.omega),
            "depth": depth, "width": width, "time_offset": depth,
            "past_width": width if ctx.args.past_width is None else ctx.args.past_width,
            "right_nats": rl.right, "left_nats": rl.left}, None


def cmd_verify(ctx, suite):
    a = ctx.args
    rule = ctx.rule(required=False)
    rules = [rule] if rule else None
    dirs = ctx.take("dirs", _dirs)
    if suite == "thm33":
        res = verify.thm33(rules, a.umax)
    elif suite == "thm34":
        res = verify.thm34(rules, dirs or verify.DEFAULT_DIRECTIONS, a.umax)
        if rule is not None:
            res_details = [homogeneity_check(rule, v, a.umax).to_dict()
                           for v in dirs or verify.DEFAULT_DIRECTIONS]
            return {**res.to_dict(), "reports": res_details}, None
    elif suite in ("lemma21", "thm32", "lemma31", "oracle"):
        res = verify.SUITES[suite](a.seed)
    else:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(verify.SUITES)}")
    return res.to_dict(), None


def _dispatch(ctx, command):
    head, rest = command[0], command[1:]
    routes = {
        "rule": lambda: cmd_rule(ctx, *rest),
        "simulate": lambda: cmd_simulate(ctx),
        "entropy": lambda: cmd_entropy(ctx, *rest),
        "directional": lambda: cmd_directional(ctx),
        "direction-limit": lambda: cmd_direction_limit(ctx),
        "rl-entropy": lambda: cmd_rl_entropy(ctx),
        "verify": lambda: cmd_verify(ctx, *rest),
    }
    if head not in routes:
        raise UsageError(f"unknown command {head!r}")
    nargs = {"rule": 1, "entropy": 1, "verify": 1}.get(head, 0)
    if len(rest) != nargs:
        raise UsageError(f"{head} takes {nargs} subcommand word(s), got {rest}")
    return routes[head]()


def _render(record, table, fmt, text):
    if fmt == "json":
        return json.dumps({"schema": SCHEMA, **record}, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if table is None:
            keys = sorted(k for k, v in record.items() if not isinstance(v, (list, dict)))
            writer.writerow(keys)
            writer.writerow([record[k] for k in keys])
        else:
            header, rows = table
            writer.writerow(header)
            writer.writerows(rows)
        return buf.getvalue()
    if text is not None:
        return text + "\n"
    if "suite" in record:
        status = "PASS" if record["passed"] else "FAIL"
        lines = [f"{status} {record['suite']}: {record['cases']} cases, "
                 f"{len(record['failures'])} failures"]
        lines += [f"  {f}" for f in record["failures"]]
        return "\n".join(lines) + "\n"
    return "".join(f"{k}: {record[k]}\n" for k in sorted(record))


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_intermixed_args(_fold_dirs(argv))
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                            format="%(levelname)s %(message)s")
        command, params = _split_words(args.words)
        if not command:
            raise UsageError("no command given")
        ctx = Context(args, params)
        record, extra = _dispatch(ctx, command)
        ctx.finish()
    except UsageError as exc:
        print(f"caentropy: error: {exc}", file=sys.stderr)
        return 1
    table = extra if isinstance(extra, tuple) else None
    text = extra if isinstance(extra, str) else None
    out = _render(record, table, args.format, text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 2 if record.get("passed") is False else 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
