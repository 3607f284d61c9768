"""Command line front end.

Exit status: 0 success, 1 mathematical diagnostic (a check failed, a
formula does not apply, an invariant is unstable), 2 input error.
"""

from __future__ import annotations

import argparse
import sys

from .germfile import GermFileError, read_germ_file
from .ideal import INFINITE, Ideal, colength, dimension, equals
from .invariants import (
    InfiniteIntersection,
    ParityError,
    RandomizationPolicy,
    UnstableInvariant,
    delta_from_milnor,
    intersection_number,
    milnor_from_polar,
    milnor_number,
    multiplicity_m0,
    polar_m1,
    quadruple_count,
)
from .parse import PolySyntaxError, UnknownVariable
from .poly import RingMismatch
from .presentation import NotMonic, UnsupportedBranch, detect_form
from .source import double_space, projection_presentation, source_ladders
from .target import (
    FittingLadder,
    FormulaNotApplicable,
    branch_expansion,
    decomposition_check,
    dimensionally_correct,
    double_formula,
    triple_formula,
)

DIAGNOSTICS = (
    UnsupportedBranch,
    NotMonic,
    FormulaNotApplicable,
    UnstableInvariant,
    ParityError,
    InfiniteIntersection,
)


class InputError(Exception):
    pass


class Report:
    """Ordered key/value records, rendered as text or as ``key=value`` lines."""

    def __init__(self):
        self.rows: list[tuple[str, object]] = []
        self.failed = False

    def add(self, key: str, value) -> None:
        self.rows.append((key, value))

    def ideal(self, key: str, I: Ideal, mode: str) -> None:
        gens = I.reduced_generators()
        self.add(key, "<" + ", ".join(str(g) for g in gens) + ">")
        d = dimension(I, mode)
        self.add(f"{key}.dimension", d)
        if d <= 0:
            c = colength(I, mode)
            self.add(f"{key}.colength", "infinite" if c == INFINITE else c)

    def matrix(self, key: str, M) -> None:
        self.add(f"{key}.size", M.q)
        for i, row in enumerate(M.to_lists()):
            self.add(f"{key}.row{i + 1}", "[" + ", ".join(row) + "]")

    def audit(self, audit) -> None:
        for c in audit.checks:
            self.add("audit", c.line())
        if not audit.passed:
            self.failed = True

    def check(self, key: str, ok: bool) -> None:
        self.add(key, "true" if ok else "false")
        if not ok:
            self.failed = True

    def render(self, fmt: str) -> str:
        if fmt == "structured":
            return "\n".join(f"{k}={v}" for k, v in self.rows) + "\n"
        width = max((len(k) for k, _ in self.rows), default=0)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in self.rows) + "\n"


def _ks(args, default):
    return [args.k] if args.k is not None else default


def _need_k(args):
    if args.k is None:
        raise InputError(f"{args.command} needs --k")
    return args.k


def cmd_present(gf, args, rep):
    f = gf.germ()
    lad = FittingLadder.of(f)
    for b, M in zip(f.branches, lad.mats):
        rep.add(f"branch.{b.label}.form", str(detect_form(b)))
        rep.matrix(f"branch.{b.label}.matrix", M)
    rep.matrix("lambda", lad.block)


def cmd_fitting(gf, args, rep):
    lad = FittingLadder.of(gf.germ())
    k = _need_k(args)
    rep.add("k", k)
    rep.ideal(f"F{k}", lad.total(k), args.order)


def cmd_target_mk(gf, args, rep):
    lad = FittingLadder.of(gf.germ())
    k = _need_k(args)
    if k < 1:
        raise InputError("--k must be at least 1")
    rep.add("k", k)
    rep.ideal(f"M{k}", lad.total(k - 1), args.order)
    ok, got, want = dimensionally_correct(lad, k)
    rep.add(f"M{k}.expected_dimension", want)
    rep.add(f"M{k}.dimensionally_correct", "yes" if ok else "no")
    rep.add("note", "dimension -1 means the empty germ (unit ideal)")


def cmd_source_dk(gf, args, rep):
    f = gf.germ()
    k = _need_k(args)
    if k not in (1, 2, 3):
        raise InputError("--k must be 1, 2 or 3")
    rep.add("k", k)
    for c in double_space(f):
        key = f"X({c.i + 1},{c.j + 1})"
        rep.add(f"{key}.kind", c.kind + (f" {c.form}" if c.form else ""))
        rep.add(f"{key}.ring", " ".join(c.ring.variables))
        rep.add(f"{key}.ideal", "<" + ", ".join(str(g) for g in c.ideal.gens) + ">")
        M = projection_presentation(c, args.modulus_degree if c.i != c.j else None)
        rep.matrix(f"{key}.xi", M)
    for b, lad in zip(f.branches, source_ladders(f, args.modulus_degree)):
        I = lad.total(k - 1) if lad.mats else Ideal.unit(lad.ring)
        rep.ideal(f"D2_{k}.{b.label}", I, args.order)


def cmd_verify(gf, args, rep):
    f = gf.germ()
    lad = FittingLadder.of(f)
    what = args.what
    rep.add("check", what)
    if what == "expansion":
        for k in _ks(args, list(range(lad.q + 1))):
            rep.check(f"F{k}.expansion_equal", equals(branch_expansion(lad, k), lad.total(k), args.order))
    elif what in ("double-formula", "triple-formula"):
        formula, k = (double_formula, 1) if what == "double-formula" else (triple_formula, 2)
        rhs, audit = formula(lad)
        rep.audit(audit)
        rep.ideal(f"F{k}", lad.total(k), args.order)
        rep.ideal("formula", rhs, args.order)
        rep.check("equal", equals(rhs, lad.total(k), args.order))
    elif what == "decomposition":
        for k in _ks(args, [2, 3]):
            rep.check(f"M{k}.decomposition", decomposition_check(lad, k))
    elif what == "preimage":
        from .source import preimage_ideals, source_multipoint

        for k in _ks(args, [2, 3]):
            ours, theirs = source_multipoint(f, k), preimage_ideals(f, k)
            for b, a, t in zip(f.branches, ours, theirs):
                rep.check(f"D2_{k}.{b.label}.equals_preimage", equals(a, t, args.order))


def _named(table, name, what):
    if name is None:
        raise InputError(f"this invariant needs --{what}")
    if name not in table:
        raise InputError(f"no {what} named {name!r} in the input")
    return table[name]


def _curve(gf, args):
    if args.ideal:
        return _named(gf.ideals, args.ideal[0], "ideal")
    if args.matrix:
        from .presentation import minors

        rows = _named(gf.matrices, args.matrix, "matrix")
        R = rows[0][0].ring
        return Ideal(R, minors(rows, len(rows[0]), R))
    if args.k is not None:
        return FittingLadder.of(gf.germ()).total(args.k - 1)
    raise InputError("give --ideal, --matrix or --k")


def cmd_invariants(gf, args, rep):
    policy = RandomizationPolicy(seed=args.seed)
    which = args.which
    rep.add("invariant", which)
    if which == "m0":
        rep.add("m0", multiplicity_m0(_curve(gf, args), policy))
    elif which == "m1":
        rep.add("m1", polar_m1(_named(gf.matrices, args.matrix, "matrix"), policy))
    elif which in ("milnor", "delta"):
        if args.matrix:
            I = _curve(gf, args)
            m0 = multiplicity_m0(I, policy)
            rep.add("m0", m0)
            if m0.value == 1:
                mu = 0
                rep.add("mu", "0 [smooth curve]")
            else:
                m1 = polar_m1(gf.matrices[args.matrix], policy)
                rep.add("m1", m1)
                mu = milnor_from_polar(m0.value, m1.value)
                rep.add("mu", f"{mu} [m1 - m0 + 1]")
        else:
            I = _curve(gf, args)
            if len(I.gens) != 1:
                raise InputError("milnor of a non-hypersurface needs --matrix")
            mu = milnor_number(I.gens[0])
            rep.add("mu", f"{mu} [dim O/<partials>]")
        if which == "delta":
            if args.r is None:
                raise InputError("delta needs --r (number of branches)")
            rep.add("r", args.r)
            rep.add("delta", f"{delta_from_milnor(mu, args.r)} [(mu + r - 1)/2]")
    elif which == "intersection":
        if not args.ideal or len(args.ideal) != 2:
            raise InputError("intersection needs two --ideal names")
        I, J = (_named(gf.ideals, n, "ideal") for n in args.ideal)
        if I.ring != J.ring:
            raise InputError("the two ideals live in different rings")
        rep.add("intersection", intersection_number(I, J))
    elif which == "quadruple":
        q = quadruple_count(gf.germ())
        rep.add("colengths", " ".join(map(str, q.colengths)))
        rep.add("Q", str(q.value))
        rep.add("integral", "yes" if q.integral else "no")


COMMANDS = {
    "present": cmd_present,
    "fitting": cmd_fitting,
    "target-mk": cmd_target_mk,
    "source-dk": cmd_source_dk,
    "verify": cmd_verify,
    "invariants": cmd_invariants,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", choices=["local", "global"], default="local")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=["text", "structured"], default="text")
    p = argparse.ArgumentParser(prog="multigerm", description="Multiple point spaces of map germs.")
    sub = p.add_subparsers(dest="command", required=True)
    sp = sub.add_parser("present", parents=[common], help="presentation matrices")
    sp.add_argument("input", help="germ description file")
    for name in ("fitting", "target-mk"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("input")
        sp.add_argument("--k", type=int)
    sp = sub.add_parser("source-dk", parents=[common])
    sp.add_argument("input")
    sp.add_argument("--k", type=int)
    sp.add_argument("--modulus-degree", type=int, help="prefer a monic generator of this fiber degree")
    sp = sub.add_parser("verify", parents=[common])
    sp.add_argument("what", choices=["expansion", "double-formula", "triple-formula", "decomposition", "preimage"])
    sp.add_argument("input")
    sp.add_argument("--k", type=int)
    sp = sub.add_parser("invariants", parents=[common])
    sp.add_argument("which", choices=["m0", "m1", "milnor", "delta", "intersection", "quadruple"])
    sp.add_argument("input")
    sp.add_argument("--ideal", action="append", help="named ideal (twice for intersection)")
    sp.add_argument("--matrix", help="named matrix whose maximal minors define the curve")
    sp.add_argument("--k", type=int, help="use the target space M_k")
    sp.add_argument("--r", type=int, help="number of branches")
    return p


def run(argv=None, out=sys.stdout, err=sys.stderr) -> int:
    args = build_parser().parse_args(argv)
    rep = Report()
    rep.add("command", " ".join([args.command] + [getattr(args, a) for a in ("what", "which") if hasattr(args, a)]))
    rep.add("seed", args.seed)
    rep.add("order", args.order)
    try:
        gf = read_germ_file(args.input)
        COMMANDS[args.command](gf, args, rep)
    except (OSError, GermFileError, InputError, PolySyntaxError, UnknownVariable, RingMismatch) as e:
        err.write(f"input error: {e}\n")
        return 2
    except DIAGNOSTICS as e:
        rep.add("diagnostic", str(e))
        rep.add("status", "diagnostic")
        out.write(rep.render(args.format))
        return 1
    except ValueError as e:
        # e.g. an invariant asked of something that is not a curve
        rep.add("diagnostic", str(e))
        rep.add("status", "diagnostic")
        out.write(rep.render(args.format))
        return 1
    rep.add("status", "fail" if rep.failed else "ok")
    out.write(rep.render(args.format))
    return 1 if rep.failed else 0


def main() -> None:
    sys.exit(run())
