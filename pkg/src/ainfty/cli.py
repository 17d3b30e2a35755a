"""Command-line front end.

Every command reads and writes the JSON documents of :mod:`ainfty.io`.
Exit codes: 0 success, 1 check failure, 2 parse or configuration error.
"""

import argparse
import os
import sys
from fractions import Fraction

from . import io
from .category import check_relations
from .corpus import generate
from .dg import check_dg_equals_tilde2, demo_complexes
from .functors import FunctorError, check_functor, classify
from .hpt import check_sdr, minimal_model, transfer
from .shifts import enlarge, hpt_square_check, single_objects
from .twisted import Tw, TwistedError, TwMorphism

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
COMMANDS = ("verify", "transfer", "minimal-model", "enlarge", "square-check",
            "tw-check", "cone", "demo-dg", "generate")


class ConfigError(ValueError):
    """Inconsistent command-line configuration."""


# ---------------------------------------------------------------------------
# options


def parse_field(text):
    """``q`` for the rationals or ``p:<prime>``; returns None or the prime."""
    if text == "q":
        return None
    if text.startswith("p:"):
        try:
            p = int(text[2:])
        except ValueError:
            raise ConfigError(f"bad prime in --field {text!r}") from None
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ConfigError(f"--field {text!r}: {p} is not prime")
        return p
    raise ConfigError(f"--field must be 'q' or 'p:<prime>', got {text!r}")


def parse_shifts(text):
    try:
        out = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise ConfigError(f"bad --shifts {text!r}") from None
    if not out:
        raise ConfigError("--shifts needs at least one integer")
    return out


def build_parser():
    p = argparse.ArgumentParser(prog="ainfty", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", "-i", help="input document (JSON)")
    p.add_argument("--output", "-o", help="output file (directory for generate)")
    p.add_argument("--convention", "-a", type=int, choices=(1, 2), default=2)
    p.add_argument("--arity", "-n", type=int, default=None,
                   help="n_max for checks, K_out for transfers")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=int, default=25, help="corpus size for generate")
    p.add_argument("--max-total", type=int, default=8,
                   help="total dimension budget per generated instance")
    p.add_argument("--field", default="q", help="q (default) or p:<prime>, verify only")
    p.add_argument("--shifts", default=None, help="comma-separated shifts, e.g. 0,1")
    p.add_argument("--cross", action="store_true",
                   help="debug: pair path 1 with a=1 and path 2 with a=2")
    p.add_argument("--require-m3", action="store_true",
                   help="generate: fail unless some model has nonzero m_3")
    return p


# ---------------------------------------------------------------------------
# reports


def _residual(vec, p):
    """Residual entries, reduced mod p when a prime field is requested."""
    out = {}
    for k, c in vec.items():
        if p is not None:
            c = Fraction(c)
            if c.denominator % p:
                c = c.numerator * pow(c.denominator, -1, p) % p
                if not c:
                    continue
        out[k] = c
    return out


def violations_out(report, p=None, limit=50):
    items = []
    count = 0
    for v in report.violations:
        res = _residual(v.residual, p)
        if not res:
            continue
        count += 1
        if len(items) < limit:
            items.append({
                "arity": v.arity,
                "kind": v.kind,
                "chain": [io.key_out(k) for k in v.chain],
                "residual": io.vector_out(res),
            })
    return count, items


class Run:
    """Collects named checks and reports them on stdout and as JSON."""

    def __init__(self, command, args):
        self.command = command
        self.args = args
        self.checks = []
        self.data = {}

    def check(self, name, ok, **detail):
        self.checks.append({"name": name, "ok": bool(ok), **detail})
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        return ok

    def relation(self, name, report, p=None):
        count, items = violations_out(report, p)
        return self.check(name, count == 0, violations=count, first=items)

    @property
    def ok(self):
        return all(c["ok"] for c in self.checks)

    def finish(self, document=None):
        if self.args.output and document is not None:
            io.write_file(self.args.output, document)
        elif self.args.output:
            io.write_file(self.args.output, self.report())
        return EXIT_OK if self.ok else EXIT_FAIL

    def report(self):
        return io.report_out("report", {"command": self.command, "ok": self.ok,
                                        "checks": self.checks, **self.data})


def _require_input(args):
    if not args.input:
        raise ConfigError(f"{args.command} needs --input")
    return io.read_file(args.input)


def _default_arity(K, requested, cap=5):
    n = requested if requested is not None else min(cap, 2 * K - 1)
    if n < 1:
        raise ConfigError("--arity must be positive")
    if n > 2 * K - 1:
        raise ConfigError(f"--arity {n} exceeds 2K-1 = {2 * K - 1}")
    return n


def _sdr_of(kind, obj):
    if kind == "sdr":
        return obj
    if kind == "instance" and obj.sdr is not None:
        return obj.sdr
    raise ConfigError(f"expected an SDR or instance document, got {kind!r}")


def _category_of(kind, obj):
    if kind == "category":
        return obj
    if kind == "instance":
        return obj.category
    if kind == "sdr":
        return obj.big
    raise ConfigError(f"expected a category document, got {kind!r}")


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args):
    p = parse_field(args.field)
    kind, obj = _require_input(args)
    run = Run("verify", args)
    if kind == "complex":
        run.check(f"complex {obj.name}: d^2 = 0", True)
    elif kind == "category":
        n = _default_arity(obj.arity_bound, args.arity)
        run.relation(f"relations n <= {n}", check_relations(obj, n), p)
    elif kind == "functor":
        n = _default_arity(obj.arity_bound, args.arity)
        run.relation(f"functor equations n <= {n}", check_functor(obj, n), p)
    elif kind == "sdr":
        run.relation("SDR identities", check_sdr(obj), p)
    elif kind == "instance":
        n = _default_arity(obj.category.arity_bound, args.arity)
        run.relation(f"{obj.name}: DG relations n <= {n}", check_relations(obj.category, n), p)
        if obj.sdr is not None:
            run.relation(f"{obj.name}: SDR identities", check_sdr(obj.sdr), p)
        if obj.model is not None:
            m = _default_arity(obj.model.arity_bound, args.arity)
            run.relation(f"{obj.name}: model relations n <= {m}", check_relations(obj.model, m), p)
            run.relation(f"{obj.name}: functor equations n <= {m}",
                         check_functor(obj.functor, m), p)
    elif kind == "twisted":
        tw, cxs, morphs = obj
        _verify_twisted(run, tw, cxs, morphs, p)
    return run.finish()


def _verify_twisted(run, tw, cxs, morphs, p=None):
    for t in cxs:
        run.relation(f"{t.name}: Maurer-Cartan", tw.check_mc(t), p)
    for P in cxs:
        for Q in cxs:
            bad = tw.check_b1_squared(P, Q)
            run.check(f"b1^2 = 0 on hom({P.name}, {Q.name})", not bad, violations=len(bad))
    for P, Q, vec in morphs:
        run.check(f"T relation k=1 on {P.name} -> {Q.name}",
                  not tw.check_tw_shift_relation([P, Q], [vec]))


def cmd_transfer(args):
    kind, obj = _require_input(args)
    s = _sdr_of(kind, obj)
    K_out = _default_arity(s.big.arity_bound, args.arity)
    D, F = transfer(s, K_out)
    run = Run("transfer", args)
    run.relation(f"transferred relations n <= {K_out}", check_relations(D, K_out))
    run.relation(f"functor equations n <= {K_out}", check_functor(F, K_out))
    run.check(f"F classified as {classify(F)}", True)
    return run.finish(io.functor_out(F))


def cmd_minimal_model(args):
    kind, obj = _require_input(args)
    C = _category_of(kind, obj)
    K_out = _default_arity(C.arity_bound, args.arity)
    D, F = minimal_model(C, K_out)
    run = Run("minimal-model", args)
    run.check("m_1 = 0", not D.product(1).table)
    run.relation(f"model relations n <= {K_out}", check_relations(D, K_out))
    nonzero = [k for k in sorted(D.products) if D.products[k].table]
    print(f"nonzero products in arities {nonzero}")
    return run.finish(io.category_out(D))


def cmd_enlarge(args):
    kind, obj = _require_input(args)
    C = _category_of(kind, obj)
    shifts = parse_shifts(args.shifts or "0,1")
    E = enlarge(C, args.convention, single_objects(C, shifts))
    run = Run("enlarge", args)
    n = _default_arity(E.arity_bound, args.arity)
    run.relation(f"enlarged relations n <= {n} (a={args.convention})", check_relations(E, n))
    return run.finish(io.category_out(E))


def cmd_square_check(args):
    kind, obj = _require_input(args)
    s = _sdr_of(kind, obj)
    K_out = args.arity if args.arity is not None else 4
    _default_arity(s.big.arity_bound, K_out)
    shifts = parse_shifts(args.shifts or "0,1")
    rep = hpt_square_check(s.big, s, args.convention, K_out,
                           single_objects(s.big, shifts), cross=args.cross)
    run = Run("square-check", args)
    first = rep.first()
    detail = {"paths": list(rep.convention),
              "category_diffs": len(rep.category_diffs),
              "functor_diffs": len(rep.functor_diffs)}
    if first is not None:
        detail["first"] = _diff_out(first)
        print(f"first mismatch: {first[0]} {first[1]} at arity {first[2][0]}")
    run.check(f"square commutes (path 1 a={rep.convention[0]}, path 2 a={rep.convention[1]})",
              rep.ok, **detail)
    return run.finish()


def _diff_out(first):
    what, kind, detail = first
    out = {"what": what, "kind": kind}
    if kind in ("product", "component"):
        out["arity"] = detail[0]
        out["chain"] = [io.key_out(k) for k in detail[1]]
        if kind == "product":
            out["path1"] = io.vector_out(detail[2])
            out["path2"] = io.vector_out(detail[3])
    return out


def cmd_tw_check(args):
    p = parse_field(args.field) if args.field != "q" else None
    kind, obj = _require_input(args)
    if kind != "twisted":
        raise ConfigError(f"tw-check needs a twisted document, got {kind!r}")
    tw, cxs, morphs = obj
    run = Run("tw-check", args)
    _verify_twisted(run, tw, cxs, morphs, p)
    for t in cxs:
        run.relation(f"T({t.name}): Maurer-Cartan", tw.check_mc(tw.shift(t)), p)
    return run.finish()


def cmd_cone(args):
    kind, obj = _require_input(args)
    if kind == "twisted":
        tw, cxs, morphs = obj
    else:
        tw, cxs, morphs = plain_morphisms(_category_of(kind, obj), args.convention)
    if not morphs:
        raise ConfigError("cone needs at least one morphism in the document")
    run = Run("cone", args)
    out = list(cxs)
    for t, (P, Q, vec) in enumerate(morphs):
        try:
            cone = tw.mapping_cone(TwMorphism(P, Q, vec), f"C{t}({P.name}->{Q.name})")
        except TwistedError as exc:
            raise ConfigError(str(exc)) from exc
        rep = tw.triangle_check(TwMorphism(P, Q, vec), cone)
        run.relation(f"{cone.name}: Maurer-Cartan", tw.check_mc(cone))
        run.check(f"{cone.name}: triangle composites vanish in H^0", rep.ok,
                  closed=rep.closed, split=rep.split())
        out.append(cone)
    index = {id(t): i for i, t in enumerate(out)}
    doc = io.twisted_out(tw, out, [(index[id(P)], index[id(Q)], v) for P, Q, v in morphs])
    return run.finish(doc)


def plain_morphisms(C, a):
    """Plain twisted complexes X[0] and every closed degree-0 basis morphism
    between them."""
    tw = Tw(C, a)
    cxs = [tw.plain(x) for x in C.objects]
    morphs = [(P, Q, m.value) for P in cxs for Q in cxs for m in tw.closed_morphisms(P, Q)]
    return tw, cxs, morphs


def cmd_demo_dg(args):
    shifts = parse_shifts(args.shifts) if args.shifts else (-2, -1, 0, 1, 2)
    cxs = demo_complexes()
    verdicts = [check_dg_equals_tilde2(cxs, shifts, a) for a in (2, 1)]
    line = "; ".join(v.summary() for v in verdicts)
    print(line)
    if args.output:
        io.write_file(args.output, io.report_out("demo-dg", {
            "summary": line,
            "verdicts": [{"convention": v.convention, "equal": v.equal,
                          "checked": v.checked} for v in verdicts],
        }))
    return EXIT_OK


def cmd_generate(args):
    if not args.output:
        raise ConfigError("generate needs --output DIR")
    if args.size < 0 or args.max_total < 1:
        raise ConfigError("--size must be >= 0 and --max-total >= 1")
    K_out = args.arity if args.arity is not None else 5
    _default_arity(3, K_out)
    insts = generate(args.seed, args.size, K_out=K_out, max_total=args.max_total)
    os.makedirs(args.output, exist_ok=True)
    entries = []
    for inst in insts:
        fname = f"{inst.name}.json"
        io.write_file(os.path.join(args.output, fname), io.instance_out(inst))
        entries.append({"name": inst.name, "file": fname, "total_dim": inst.total_dim,
                        "has_m3": inst.has_m3})
    any_m3 = any(e["has_m3"] for e in entries)
    io.write_file(os.path.join(args.output, "manifest.json"), io.report_out("manifest", {
        "seed": args.seed, "size": args.size, "K_out": K_out, "max_total": args.max_total,
        "has_m3": any_m3, "instances": entries,
    }))
    print(f"wrote {len(entries)} instances to {args.output}; nonzero m_3: "
          f"{[e['name'] for e in entries if e['has_m3']]}")
    if args.require_m3 and not any_m3:
        print("FAIL  no instance has nonzero m_3")
        return EXIT_FAIL
    return EXIT_OK


HANDLERS = {
    "verify": cmd_verify,
    "transfer": cmd_transfer,
    "minimal-model": cmd_minimal_model,
    "enlarge": cmd_enlarge,
    "square-check": cmd_square_check,
    "tw-check": cmd_tw_check,
    "cone": cmd_cone,
    "demo-dg": cmd_demo_dg,
    "generate": cmd_generate,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        if args.command != "verify" and args.field != "q":
            raise ConfigError("--field p:<prime> is only supported by verify")
        return HANDLERS[args.command](args)
    except (io.ParseError, ConfigError, FunctorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
