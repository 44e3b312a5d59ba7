"""Command-line driver: ``ydbrauer verify|construct|check|demo ...``.

Exit status is 0 when every check passes, 1 when one fails and 2 on usage
or input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .cli_io import Check, Report, definition_for, emit_report, parse_definition, resolve_automorphism, serialize
from .corpus import DEMOS, demo_hopf, grouplike_g, standard_modules
from .endo_azumaya import (azumaya_verdict, brauer_trivial_forward, coco_check, end_algebra,
                           end_op_algebra, p4_check)
from .errors import AxiomError, InvolutionError, PairMismatch, ParseError, ValidationError, YDBrauerError
from .hopf_core import AutPair, Character, GroupLikeElement, HopfAlgebra, HopfAutomorphism, verify_hopf
from .monoidal_ops import DUAL_FLAVORS, TENSOR_KINDS, dual, tensor
from .yd_algebras import YDAlgebra, smash, twist_algebra, verify_yd_algebra
from .yd_modules import YDModule, check_pair_in_involution, check_yd

SMALL_CARRIER = 4


class UsageError(Exception):
    pass


@dataclass
class Context:
    hopf: HopfAlgebra
    modules: dict
    algebras: dict = field(default_factory=dict)
    characters: dict = field(default_factory=dict)
    grouplikes: dict = field(default_factory=dict)
    automorphisms: dict = field(default_factory=dict)

    def automorphism(self, name: str) -> HopfAutomorphism:
        try:
            return resolve_automorphism(self.hopf, name, self.automorphisms)
        except KeyError:
            known = ["id", "s2"] + sorted(set(self.hopf.known_automorphisms) | set(self.automorphisms))
            raise UsageError(f"unknown automorphism {name!r}; known: {', '.join(known)}") from None

    def module(self, name: str) -> YDModule:
        if name not in self.modules:
            raise UsageError(f"unknown module {name!r}; known: {', '.join(self.modules)}")
        return self.modules[name]

    def algebra(self, name: str) -> YDAlgebra:
        """A named algebra, or ``End(M)`` for a named module."""
        if name in self.algebras:
            return self.algebras[name]
        return end_algebra(self.module(name))


def load_context(args) -> Context:
    if args.file and args.demo:
        raise UsageError("use either --file or --demo, not both")
    if args.demo:
        try:
            H = demo_hopf(args.demo, args.p)
        except YDBrauerError as exc:
            raise UsageError(str(exc)) from None
        chars = {"eps": Character.counit(H)}
        gls = {"1": GroupLikeElement.one(H)}
        g = grouplike_g(H)
        if g is not None:
            gls["g"] = g
        return Context(H, standard_modules(H), characters=chars, grouplikes=gls)
    if not args.file:
        raise UsageError("an input is required: --demo NAME or --file PATH")
    if args.p is not None:
        raise UsageError("--p only applies to --demo inputs")
    defn = parse_definition(Path(args.file))
    hopfs = defn.of_type(HopfAlgebra)
    if not hopfs:
        raise UsageError(f"{args.file} defines no Hopf algebra")
    if args.hopf:
        if args.hopf not in hopfs:
            raise UsageError(f"no Hopf algebra named {args.hopf!r} in {args.file}")
        H = hopfs[args.hopf]
    elif len(hopfs) == 1:
        H = next(iter(hopfs.values()))
    else:
        raise UsageError(f"{args.file} defines several Hopf algebras; pick one with --hopf")

    def over(cls, attr):
        return {k: v for k, v in defn.of_type(cls).items() if getattr(v, attr) is H}

    chars = {"eps": Character.counit(H), **over(Character, "parent")}
    gls = {"1": GroupLikeElement.one(H), **over(GroupLikeElement, "parent")}
    algebras = {k: v for k, v in defn.of_type(YDAlgebra).items() if v.hopf is H}
    return Context(H, over(YDModule, "hopf"), algebras, chars, gls, over(HopfAutomorphism, "parent"))


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("YDBRAUER_THREADS", "1")))
    except ValueError:
        return 1


def _fan_out(jobs):
    """Run zero-argument callables returning :class:`Check`, keeping order."""
    def timed(job):
        t0 = time.perf_counter()
        c = job()
        c.seconds = time.perf_counter() - t0
        return c

    n = _threads()
    if n == 1 or len(jobs) < 2:
        return [timed(j) for j in jobs]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(timed, jobs))


def _label(H: HopfAlgebra, i: int) -> str:
    return H.basis_labels[i] if H.basis_labels else f"b{i}"


def _selected_modules(ctx: Context, args, default_filter=None):
    names = args.module or [k for k, v in ctx.modules.items() if default_filter is None or default_filter(v)]
    return [(n, ctx.module(n)) for n in names]


# -- commands -----------------------------------------------------------------


def cmd_verify(args, ctx: Context, report: Report):
    H = ctx.hopf
    if args.what == "hopf":
        t0 = time.perf_counter()
        rep = verify_hopf(H)
        dt = time.perf_counter() - t0
        for name, ok in rep.results.items():
            w = rep.witnesses[name]
            report.add(Check(f"hopf.{name}", ok, None if ok else str(w), seconds=dt))
        return
    if args.what == "yd":
        def job(name, M):
            def run():
                try:
                    r = check_yd(M)
                except AxiomError as exc:
                    return Check(f"yd.{name}", False, detail=f"module/comodule axioms fail: {exc}")
                w = None
                if r.witness is not None:
                    h, m = r.witness
                    w = f"(h={_label(H, h)}, m=e{m})"
                agree = "agree" if r.ok == r.ok_alt else "DISAGREE"
                detail = f"pair ({_auto_name(ctx, M.pair.alpha)}, {_auto_name(ctx, M.pair.beta)}), equivalent form {agree}"
                return Check(f"yd.{name}", r.ok and r.ok == r.ok_alt, w, detail)
            return run
        for c in _fan_out([job(n, M) for n, M in _selected_modules(ctx, args)]):
            report.add(c)
        return
    if args.what == "algebra":
        targets = []
        for name in (args.module or list(ctx.algebras) or list(ctx.modules)):
            if name in ctx.algebras:
                targets.append((name, ctx.algebras[name]))
            else:
                M = ctx.module(name)
                targets.append((f"End({name})", end_algebra(M)))
                targets.append((f"End({name})^op", end_op_algebra(M)))

        def job(name, A):
            def run():
                rep = verify_yd_algebra(A)
                ff = rep.first_failure
                return Check(f"algebra.{name}", rep.passed, None if ff is None else f"{ff[0]} at {ff[1]}",
                             f"dim {A.dim}")
            return run
        for c in _fan_out([job(n, A) for n, A in targets if A.dim <= 16 or args.allow_large]):
            report.add(c)
        return
    raise UsageError(f"unknown verify target {args.what!r}")


def _auto_name(ctx: Context, a: HopfAutomorphism) -> str:
    if a.is_identity():
        return "id"
    if a == ctx.hopf.s2:
        return "s2"
    for k, v in {**ctx.hopf.known_automorphisms, **ctx.automorphisms}.items():
        if v == a:
            return k
    return "unnamed"


def cmd_construct(args, ctx: Context, report: Report):
    mods = args.module or []
    need = {"end": 1, "dual": 1, "twist": 1, "tensor": 2, "smash": 2}[args.what]
    if len(mods) != need:
        raise UsageError(f"construct {args.what} needs exactly {need} --module argument(s)")
    if args.what == "end":
        result = end_algebra(ctx.module(mods[0]))
    elif args.what == "dual":
        result = dual(ctx.module(mods[0]), args.flavor)
    elif args.what == "tensor":
        try:
            result = tensor(ctx.module(mods[0]), ctx.module(mods[1]), args.kind)
        except PairMismatch as exc:
            raise UsageError(str(exc)) from None
    elif args.what == "smash":
        result = smash(ctx.algebra(mods[0]), ctx.algebra(mods[1]))
    else:
        if not args.alpha:
            raise UsageError("construct twist needs the twisting automorphism via --alpha")
        result = twist_algebra(ctx.algebra(mods[0]), ctx.automorphism(args.alpha))
    t0 = time.perf_counter()
    if isinstance(result, YDAlgebra):
        rep = verify_yd_algebra(result)
        ff = rep.first_failure
        check = Check(f"construct.{args.what}", rep.passed, None if ff is None else str(ff), f"dim {result.dim}")
    else:
        r = check_yd(result)
        check = Check(f"construct.{args.what}", r.ok, None if r.witness is None else str(r.witness),
                      f"dim {result.dim}, pair ({_auto_name(ctx, result.pair.alpha)}, "
                      f"{_auto_name(ctx, result.pair.beta)})")
    check.seconds = time.perf_counter() - t0
    report.add(check)
    if args.output:
        defn = definition_for(ctx.hopf, {"result": result})
        Path(args.output).write_text(serialize(defn))


def _all_autos(ctx: Context) -> dict:
    named = {k: v for k, v in ctx.hopf.known_automorphisms.items() if not v.is_identity()}
    return {"id": ctx.hopf.identity, **named, **ctx.automorphisms}


def _pairs(ctx: Context, args):
    """Explicit ``(--alpha, --beta)`` or the full grid of named automorphisms."""
    if args.alpha or args.beta:
        return [((args.alpha or "id", ctx.automorphism(args.alpha or "id")),
                 (args.beta or "id", ctx.automorphism(args.beta or "id")))]
    autos = _all_autos(ctx)
    return [((a, x), (b, y)) for a, x in autos.items() for b, y in autos.items()]


def cmd_check(args, ctx: Context, report: Report):
    H = ctx.hopf
    if args.what == "azumaya":
        small = (lambda A: A.dim <= SMALL_CARRIER ** 2)
        targets = []
        for name in (args.module or list(ctx.modules)):
            A = ctx.algebra(name)
            if not small(A) and not args.allow_large:
                if args.module:
                    raise UsageError(f"{name}: algebra of dimension {A.dim} needs --allow-large")
                continue
            targets.append((name, A))

        def job(name, A):
            return lambda: (lambda v: Check(f"azumaya.{name}", v.azumaya, detail=v.describe()))(
                azumaya_verdict(A))
        for c in _fan_out([job(n, A) for n, A in targets]):
            report.add(c)
        return
    if args.what == "p4":
        jobs = []
        for name, N in _selected_modules(ctx, args):
            for (an, a), (bn, b) in _pairs(ctx, args):
                jobs.append((lambda N=N, a=a, b=b, label=f"p4.{name}.{an}.{bn}":
                             Check(label, p4_check(N, a, b))))
        for c in _fan_out(jobs):
            report.add(c)
        return
    if args.what == "coco":
        jobs = []
        betas = [(args.beta, ctx.automorphism(args.beta))] if args.beta else list(_all_autos(ctx).items())
        for name, M in _selected_modules(ctx, args):
            for bn, b in betas:
                jobs.append(lambda M=M, b=b, label=f"coco.{name}.{bn}": Check(label, coco_check(M, b)))
        for c in _fan_out(jobs):
            report.add(c)
        return
    f, g = _involution_data(ctx, args)
    if args.what == "pair-involution":
        alpha = ctx.automorphism(args.alpha or "s2")
        beta = ctx.automorphism(args.beta or "id")
        ok = check_pair_in_involution(H, f[1], g[1], alpha, beta)
        report.add(Check(f"pair-involution.({f[0]},{g[0]}).({args.alpha or 's2'},{args.beta or 'id'})", ok))
        return
    if args.what == "brauer-trivial":
        pair = AutPair(ctx.automorphism(args.alpha or "s2"), ctx.automorphism(args.beta or "id"))
        for name, N in _selected_modules(ctx, args, lambda M: M.pair.alpha.is_identity()
                                         and M.pair.beta.is_identity() and M.dim <= SMALL_CARRIER):
            if not (N.pair.alpha.is_identity() and N.pair.beta.is_identity()):
                raise UsageError(f"{name} is not in YD(id, id)")
            t0 = time.perf_counter()
            try:
                r = brauer_trivial_forward(H, f[1], g[1], pair, N)
            except InvolutionError as exc:
                raise UsageError(str(exc)) from None
            report.add(Check(f"brauer-trivial.{name}", r.ok,
                             detail=f"phi {_flags(r.phi_flags)}, End(fkg)=k {r.end_is_k}, "
                                    f"k#End(N)->End(N) {_flags(r.canonical_flags)}",
                             seconds=time.perf_counter() - t0))
        return
    raise UsageError(f"unknown check {args.what!r}")


def _flags(t):
    return "".join("T" if x else "F" for x in t)


def _involution_data(ctx: Context, args):
    fn = args.character or "eps"
    gn = args.grouplike or ("g" if "g" in ctx.grouplikes else "1")
    if fn not in ctx.characters:
        raise UsageError(f"unknown character {fn!r}; known: {', '.join(ctx.characters)}")
    if gn not in ctx.grouplikes:
        raise UsageError(f"unknown grouplike {gn!r}; known: {', '.join(ctx.grouplikes)}")
    return (fn, ctx.characters[fn]), (gn, ctx.grouplikes[gn])


def cmd_demo_list(args, report: Report):
    lines = []
    for name, (desc, _) in DEMOS.items():
        H = demo_hopf(name)
        mods = standard_modules(H)
        lines.append(f"{name}: {desc}; {len(mods)} modules: {', '.join(mods)}")
    report.add(Check("demo.list", True, detail=" | ".join(lines)))


# -- entry points -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--file", help="JSON definition file")
    common.add_argument("--demo", choices=sorted(DEMOS), help="built-in Hopf algebra")
    common.add_argument("--p", type=int, help="characteristic for --demo")
    common.add_argument("--hopf", help="which Hopf algebra of --file to use")
    common.add_argument("--module", action="append", help="module or algebra name (repeatable)")
    common.add_argument("--alpha", help="automorphism name (id, s2 or a named one)")
    common.add_argument("--beta", help="automorphism name (id, s2 or a named one)")
    common.add_argument("--character", help="character name for involution checks (default eps)")
    common.add_argument("--grouplike", help="grouplike name for involution checks (default g or 1)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--timing", action="store_true", help="include timings in the report")
    common.add_argument("--allow-large", action="store_true",
                        help="allow algebras of dimension > 16 (ranks beyond 256)")

    p = argparse.ArgumentParser(prog="ydbrauer", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="verify axioms")
    v.add_argument("what", choices=("hopf", "yd", "algebra"))
    c = sub.add_parser("construct", parents=[common], help="build an object and write it out")
    c.add_argument("what", choices=("end", "tensor", "dual", "smash", "twist"))
    c.add_argument("-o", "--output", help="write the result as a definition file")
    c.add_argument("--kind", choices=TENSOR_KINDS, default="hat")
    c.add_argument("--flavor", choices=DUAL_FLAVORS, default="diamond_left")
    k = sub.add_parser("check", parents=[common], help="check a structural identity")
    k.add_argument("what", choices=("azumaya", "p4", "coco", "pair-involution", "brauer-trivial"))
    d = sub.add_parser("demo", parents=[common], help="list built-in demos")
    d.add_argument("what", choices=("list",))
    return p


def run_command(argv) -> tuple[Report, int, str]:
    """Run one command; returns the report, the exit code and the rendered output."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return Report(list(argv)), int(exc.code or 0), ""
    report = Report(list(argv))
    try:
        if args.command == "demo":
            cmd_demo_list(args, report)
        else:
            ctx = load_context(args)
            {"verify": cmd_verify, "construct": cmd_construct, "check": cmd_check}[args.command](
                args, ctx, report)
    except (UsageError, ParseError, ValidationError) as exc:
        print(f"ydbrauer: error: {exc}", file=sys.stderr)
        return report, 2, ""
    out = emit_report(report, args.format, include_timing=args.timing)
    return report, (0 if report.overall else 1), out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    _, code, out = run_command(argv)
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
