"""Command line interface.

Exit status: 0 on success, 2 on usage errors, 3 on domain errors (the error
class name is printed to stderr).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import exact as ex
from .classify import ScaledNumericalSemigroup, classify
from .errors import MonoidError
from .monoid import (
    DECIMAL,
    DEFAULT_ELEMENT_CAP,
    QUARTERS,
    FiniteGenerators,
    GoldenFractal,
    Harmonic,
    Logarithmic,
    Pythagorean,
    RadixFractal,
    enumerate_monoid,
    footprint,
    minimal_generating_set,
    periods,
    product_compatible_check,
)
from .numsgp import genus_count
from .temperament import (
    EdoMap,
    edo_scale,
    export_scl,
    floor_relation_check,
    harmonic_semigroup,
    harmonic_table,
    pythagorean_scale,
)

CAP_ENV = "OMEGAMONOIDS_ELEMENT_CAP"

FAMILIES = {
    "logarithmic": lambda a: Logarithmic(),
    "log": lambda a: Logarithmic(),
    "L": lambda a: Logarithmic(),
    "pythagorean": lambda a: Pythagorean(),
    "P": lambda a: Pythagorean(),
    "golden-fractal": lambda a: GoldenFractal(),
    "F": lambda a: GoldenFractal(),
    "quarters": lambda a: QUARTERS,
    "Q": lambda a: QUARTERS,
    "decimal": lambda a: DECIMAL,
    "D": lambda a: DECIMAL,
    "radix-fractal": lambda a: RadixFractal(a.radix, a.offset),
    "harmonic": lambda a: Harmonic(a.d, a.theta),
}


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _exact(text: str):
    try:
        return ex.parse(text)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(str(e))


def _descriptor(args):
    tokens = args.monoid
    if len(tokens) == 1 and tokens[0] in FAMILIES:
        return FAMILIES[tokens[0]](args)
    return FiniteGenerators(tuple(_generators(tokens)))


def _generators(tokens) -> list:
    parts = [p for tok in tokens for p in tok.split(",") if p.strip()]
    if not parts:
        raise UsageError("no generators given")
    try:
        return [ex.parse(p) for p in parts]
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(str(e))


def _cap(args) -> int:
    if args.cap is not None:
        return args.cap
    env = os.environ.get(CAP_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{CAP_ENV} must be an integer")
    return DEFAULT_ELEMENT_CAP


def _need_bound(args):
    if args.bound is None:
        raise UsageError("--bound is required for this monoid")
    return args.bound


def _fmt(x, digits) -> str:
    return ex.to_decimal(x, digits) if digits else str(x)


def _emit(args, text: str):
    if getattr(args, "out", None) and args.command != "export-scl":
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- commands


def cmd_enumerate(args) -> str:
    el = enumerate_monoid(_descriptor(args), _need_bound(args), cap=_cap(args))
    if args.format == "json":
        return json.dumps(el.to_json()) + "\n"
    if args.format == "csv":
        return el.to_csv(args.digits or 6)
    return " ".join(_fmt(x, args.digits) for x in el) + "\n"


def cmd_generators(args) -> str:
    desc = _descriptor(args)
    if args.bound is None:
        if isinstance(desc, Harmonic):
            result = harmonic_semigroup(EdoMap(desc.d, desc.theta))
            result.raise_if_open()
            gens = [Fraction(g) for g in result.semigroup.minimal_generators]
            bound, truncated = None, False
        elif isinstance(desc, FiniteGenerators):
            # minimal generators are among the given ones
            bound, truncated = desc.gens[-1], False
            gens = minimal_generating_set(enumerate_monoid(desc, bound, cap=_cap(args)))
        else:
            raise UsageError("--bound is required for infinite families")
    else:
        bound = args.bound
        truncated = not isinstance(desc, FiniteGenerators)
        gens = minimal_generating_set(enumerate_monoid(desc, bound, cap=_cap(args)))
    if args.format == "json":
        obj = {
            "bound": None if bound is None else ex.to_json(bound),
            "truncated": truncated,
            "generators": [ex.to_json(g) for g in gens],
        }
        return json.dumps(obj) + "\n"
    return " ".join(_fmt(g, args.digits) for g in gens) + "\n"


def cmd_footprint(args) -> str:
    fp = footprint(enumerate_monoid(_descriptor(args), _need_bound(args), cap=_cap(args)))
    if args.format == "json":
        return json.dumps({"truncation_bound": ex.to_json(fp.truncation_bound), "values": [ex.to_json(v) for v in fp.values]}) + "\n"
    return " ".join(_fmt(v, args.digits) for v in fp.values) + "\n"


def cmd_periods(args) -> str:
    bound = args.bound if args.bound is not None else Fraction(args.upto + 1)
    ps = periods(enumerate_monoid(_descriptor(args), bound, cap=_cap(args)), args.upto)
    if args.format == "json":
        obj = {"granularity": len(ps[0]), "periods": [{"index": p.index, "members": [ex.to_json(x) for x in p.members]} for p in ps]}
        return json.dumps(obj) + "\n"
    lines = [f"granularity {len(ps[0])}"]
    lines += [f"{p.index}: " + " ".join(_fmt(x, args.digits) for x in p.members) for p in ps]
    return "\n".join(lines) + "\n"


def cmd_classify(args) -> str:
    c = classify(_generators(args.gens))
    if args.format == "json":
        return json.dumps(c.to_json()) + "\n"
    if isinstance(c, ScaledNumericalSemigroup):
        gens = ",".join(map(str, c.semigroup.minimal_generators))
        return f"scaled lambda={c.lam} semigroup=<{gens}>\n"
    x, y = c.witness
    return f"tempered witness={x} {y}\n"


def cmd_genus_count(args) -> str:
    report = genus_count(args.gmax, workers=args.workers)
    return report.to_csv(timing=args.timing)


def cmd_harmonic(args) -> str:
    edo = EdoMap(args.d, args.theta)
    if args.table:
        return harmonic_table(edo, args.table)
    result = harmonic_semigroup(edo)
    if args.format == "json":
        obj = {"d": edo.d, "theta": str(edo.theta), "closed": result.closed}
        if result.closed:
            obj["semigroup"] = result.semigroup.to_json()
        else:
            obj["witness"] = list(result.witness)
        return json.dumps(obj) + "\n"
    if not result.closed:
        x, y = result.witness
        return f"not closed: {x}+{y}={x + y} missing\n"
    s = result.semigroup
    return (
        f"closed multiplicity={s.multiplicity} genus={s.genus} frobenius={s.frobenius}\n"
        f"generators {' '.join(map(str, s.minimal_generators))}\n"
        f"gaps {' '.join(map(str, s.gaps))}\n"
    )


def cmd_floor_check(args) -> str:
    target = harmonic_semigroup(EdoMap(args.d, args.target_theta))
    target.raise_if_open()
    args.monoid = [args.source]
    desc = _descriptor(args)
    bound = args.bound if args.bound is not None else Fraction(args.source_bound)
    source = enumerate_monoid(desc, bound, cap=_cap(args))
    ok = floor_relation_check(args.scale, args.theta, source, target.semigroup, args.n)
    return ("true" if ok else "false") + "\n"


def cmd_pythagorean(args) -> str:
    scale = pythagorean_scale(args.fifths)
    if args.format == "json":
        obj = {"name": scale.name, "pitches": [ex.to_json(p) for p in scale.pitches], "labels": list(scale.labels)}
        return json.dumps(obj) + "\n"
    rows = [f"{lab}\t{p}\t{ex.to_decimal(ex.scalar_mul(1200, p), args.digits or 6)}" for lab, p in zip(scale.labels, scale.pitches)]
    return "\n".join(rows) + "\n"


def _scale_from_spec(spec: str):
    kind, _, n = spec.partition(":")
    try:
        n = int(n)
    except ValueError:
        raise UsageError(f"bad scale spec {spec!r}; use edo:N or pythagorean:N")
    if kind == "edo":
        return edo_scale(n)
    if kind == "pythagorean":
        return pythagorean_scale(n)
    raise UsageError(f"bad scale spec {spec!r}; use edo:N or pythagorean:N")


def cmd_export_scl(args) -> str:
    path = export_scl(_scale_from_spec(args.scale), args.out)
    return f"{path}\n"


def cmd_product_compat(args) -> str:
    n = args.N
    desc = _descriptor(args)
    bound = args.bound
    if bound is None:
        # enough elements for indices up to n*n - 1
        if isinstance(desc, Logarithmic):
            bound = ex.log2(n * n)
        else:
            bound = Fraction(max(2, (n * n).bit_length()))
    el = enumerate_monoid(desc, bound, cap=_cap(args))
    return ("true" if product_compatible_check(el, n) else "false") + "\n"


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="omegamonoids", description="Exact computations with omega-monoids.")
    sub = parser.add_subparsers(dest="command", required=True)

    def monoid_cmd(name, fn, help, bound_required=False):
        p = sub.add_parser(name, help=help)
        p.add_argument("monoid", nargs="+", help="family name or generator expressions")
        p.add_argument("--bound", type=_exact, required=bound_required)
        add_family_opts(p)
        p.set_defaults(fn=fn)
        return p

    def add_family_opts(p):
        p.add_argument("--d", type=int, default=12, help="divisions per octave (harmonic)")
        p.add_argument("--theta", type=_rational, default=Fraction(3, 5), help="offset (harmonic)")
        p.add_argument("--radix", type=int, default=2)
        p.add_argument("--offset", type=int, default=1)
        p.add_argument("--cap", type=int, default=None, help=f"element cap (env {CAP_ENV})")
        add_output_opts(p)

    def add_output_opts(p):
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--digits", type=int, default=None)
        p.add_argument("--out", default=None)

    monoid_cmd("enumerate", cmd_enumerate, "list elements up to a bound")
    monoid_cmd("generators", cmd_generators, "minimal generating set")
    monoid_cmd("footprint", cmd_footprint, "fractional parts of a/a1")
    p = monoid_cmd("periods", cmd_periods, "periods of a normalized monoid")
    p.add_argument("--upto", type=int, required=True)
    p = monoid_cmd("product-compat", cmd_product_compat, "product compatibility test")
    p.add_argument("--N", type=int, required=True)

    p = sub.add_parser("classify", help="scaled numerical semigroup or tempered monoid")
    p.add_argument("gens", nargs="+")
    add_output_opts(p)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("genus-count", help="count numerical semigroups by genus")
    p.add_argument("--gmax", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="add the elapsed_ms column")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_genus_count)

    p = sub.add_parser("harmonic", help="harmonic semigroup of an equal temperament")
    p.add_argument("--d", type=int, default=12)
    p.add_argument("--theta", type=_rational, default=Fraction(3, 5))
    p.add_argument("--table", type=int, default=0, help="emit the first N harmonics as CSV")
    add_output_opts(p)
    p.set_defaults(fn=cmd_harmonic)

    p = sub.add_parser("floor-check", help="floor(scale*source + theta) against the harmonic semigroup")
    p.add_argument("--scale", type=int, default=12)
    p.add_argument("--theta", type=_rational, default=Fraction(0))
    p.add_argument("--source", required=True, choices=sorted(FAMILIES))
    p.add_argument("--target", choices=("harmonic",), default="harmonic")
    p.add_argument("--target-theta", type=_rational, default=Fraction(3, 5))
    p.add_argument("--d", type=int, default=12)
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--bound", type=_exact, default=None)
    p.add_argument("--source-bound", type=int, default=10)
    p.add_argument("--radix", type=int, default=2)
    p.add_argument("--offset", type=int, default=1)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_floor_check)

    p = sub.add_parser("pythagorean", help="Pythagorean scale from a chain of fifths")
    p.add_argument("--fifths", type=int, required=True)
    add_output_opts(p)
    p.set_defaults(fn=cmd_pythagorean)

    p = sub.add_parser("export-scl", help="write a Scala .scl file")
    p.add_argument("scale", help="edo:N or pythagorean:N")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_export_scl)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _emit(args, args.fn(args))
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except MonoidError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 3
    except (ValueError, ZeroDivisionError) as e:
        print(f"error: InvalidArgument: {e}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
