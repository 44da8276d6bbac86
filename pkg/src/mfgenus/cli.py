"""Command line front end: ``mfgenus <command> FAN [options]``.

Exit status is 0 when the command ran (and any requested check held),
2 when a theorem-level check failed, and 1 on input or usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import cohomology, genera, qseries
from .classify import ContradictsPaper, classify_extremal
from .fan import MultiFan, from_file, generic_vectors, is_complete, validate, FanFormatError, InvalidFan
from .genera import PreconditionUnmet

EXIT_OK, EXIT_INPUT, EXIT_THEOREM = 0, 1, 2


class UsageError(ValueError):
    pass


class TheoremFailure(Exception):
    pass


_SIGMA = re.compile(r"^\s*(-?\d+)\s*/\s*(\d+)\s*$")


def parse_sigma(text: str) -> tuple[Fraction, int]:
    """``"k/N"`` -> ``(k/N, N)``; decimals are rejected."""
    m = _SIGMA.match(text)
    if not m:
        raise UsageError(f"sigma must be an exact fraction k/N, got {text!r}")
    k, N = int(m.group(1)), int(m.group(2))
    if N <= 0:
        raise UsageError("denominator of sigma must be positive")
    return Fraction(k, N), N


def parse_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--v expects comma separated integers, got {text!r}") from None


class Report:
    """Collects ``key value`` lines; rendered as aligned text or raw lines."""

    def __init__(self, fmt: str, path: Path):
        self.fmt = fmt
        self.rows: list[tuple[str, str]] = []
        self.blocks: list[str] = []
        self.add("fan_sha256", hashlib.sha256(path.read_bytes()).hexdigest()[:16])

    def add(self, key: str, value) -> None:
        self.rows.append((key, str(value)))

    def block(self, text: str) -> None:
        self.blocks.append(text.rstrip("\n"))

    def render(self) -> str:
        if self.fmt == "machine":
            body = [f"{k} {v}" for k, v in self.rows]
        else:
            width = max(len(k) for k, _ in self.rows)
            body = [f"{k.replace('_', ' '):<{width}}  {v}" for k, v in self.rows]
        return "\n".join(body + self.blocks) + "\n"


def _load(path: Path) -> MultiFan:
    try:
        fan = from_file(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    rep = validate(fan)
    if not rep:
        raise InvalidFan(str(rep))
    return fan


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args, rep: Report) -> int:
    try:
        fan = from_file(args.fan)
    except FanFormatError as exc:
        rep.add("valid", "no")
        rep.add("problem", exc)
        return EXIT_INPUT
    v = validate(fan)
    rep.add("valid", "yes" if v else "no")
    for p in v.problems:
        rep.add("problem", p)
    if v:
        rep.add("rank", fan.rank)
        rep.add("rays", fan.n_rays)
        rep.add("maximal_simplices", len(fan.maximal))
        rep.add("primitive", "yes" if fan.primitive else "no")
    return EXIT_OK if v else EXIT_INPUT


def cmd_complete(args, rep: Report) -> int:
    fan = _load(args.fan)
    c = is_complete(fan)
    rep.add("complete", "yes" if c else "no")
    if c:
        rep.add("degree", c.degree)
        rep.add("generic_vectors", " ".join(",".join(map(str, v)) for v in generic_vectors(fan, 5)))
    for f in c.failures:
        rep.add("failure", f)
    return EXIT_OK


def cmd_genus(args, rep: Report) -> int:
    fan = _load(args.fan)
    rep.add("kind", args.kind)
    if args.kind == "ty":
        p = genera.ty_genus(fan)
    elif args.kind == "orbifold-ty":
        p = genera.orbifold_ty(fan)
    else:
        if args.N is None:
            raise UsageError("--N is required for breve-ty")
        p = genera.modified_orbifold_ty(fan, args.N)
        rep.add("N", args.N)
    rep.add("genus", p.machine() if rep.fmt == "machine" else p)
    return EXIT_OK


def _series(fan, kind, args, v=None):
    sigma, N = parse_sigma(args.sigma)
    return qseries.genus_series(fan, kind, sigma, args.order, v, N=N, jobs=args.jobs)


def cmd_elliptic(args, rep: Report) -> int:
    fan = _load(args.fan)
    v = parse_vector(args.v) if args.v else None
    s = _series(fan, args.kind, args, v)
    rep.add("kind", args.kind)
    rep.add("zero", "yes" if s.is_zero() else "no")
    lhs, rhs = qseries.q0_bridge(s, fan)
    rep.add("q0_bridge", "ok" if lhs == rhs else f"MISMATCH {lhs} vs {rhs}")
    rep.block(s.machine() if rep.fmt == "machine" else s.text())
    if lhs != rhs:
        raise TheoremFailure("q^0 coefficient disagrees with the T_y-type genus")
    return EXIT_OK


def cmd_divisibility(args, rep: Report) -> int:
    fan = _load(args.fan)
    w = cohomology.divisibility(fan, args.N)
    rep.add("N", args.N)
    rep.add("divisible", "yes" if w.divisible else "no")
    rep.add("t_cartier_divisible", "yes" if w.t_cartier_divisible else "no")
    if w.u is not None:
        rep.add("u", " ".join(map(str, w.u)))
    if w.x is not None:
        rep.add("x", " ".join(map(str, w.x.coeffs)))
    return EXIT_OK


def cmd_classify(args, rep: Report) -> int:
    fan = _load(args.fan)
    r = classify_extremal(fan)
    for line in r.lines():
        k, _, v = line.partition(" ")
        rep.add(k, v)
    return EXIT_OK


def _vectors(fan, args) -> list[tuple[int, ...]]:
    if args.v:
        return [parse_vector(args.v)]
    return list(generic_vectors(fan, args.vectors))


def cmd_verify(args, rep: Report) -> int:
    fan = _load(args.fan)
    th = args.theorem
    rep.add("theorem", th)
    ok = True

    if th == "hatT-div":
        if args.N is None and args.sigma is None:
            raise UsageError("hatT-div needs --N or --sigma")
        N = args.N if args.N is not None else parse_sigma(args.sigma)[1]
        res = genera.check_hatT_divisible(fan, N)
        rep.add("N", N)
        rep.add("orbifold_T_y", res.poly)
        rep.add("divisible", "yes" if res else "no")
        rep.add("detail", res.detail)
        ok = bool(res)
    else:
        if args.sigma is None:
            raise UsageError(f"{th} needs --sigma k/N")
        sigma, N = parse_sigma(args.sigma)
        if th == "breve-vanish":
            kind = "breve"
            t = genera.check_breve_vanishing(fan, N)
            for name, val in t.certificates:
                rep.add(f"breve_T_y_{name}", "zero" if val else "nonzero")
        elif th == "hat-vanish":
            kind = "orbifold"
            if not cohomology.t_cartier_divisibility(fan, N).t_cartier_divisible:
                raise PreconditionUnmet(f"c1 is not T-Cartier divisible by {N}")
            t = genera.check_hatT_divisible(fan, N)
            rep.add("orbifold_T_y_divisible", "yes" if t else "no")
        else:
            kind = "orbifold"
            t = genera.check_hatT_vanishing(fan)
            rep.add("orbifold_T_y", "zero" if t else t.poly)
        ok = bool(t)
        rep.add("sigma", f"{sigma.numerator}/{sigma.denominator}")
        rep.add("order", args.order)
        for v in _vectors(fan, args):
            s = qseries.genus_series(fan, kind, sigma, args.order, v, N=N, jobs=args.jobs)
            rep.add("v " + ",".join(map(str, v)), f"zero to order {args.order}" if s.is_zero() else "NONZERO")
            ok = ok and s.is_zero()
    rep.add("verified", "yes" if ok else "no")
    if not ok:
        raise TheoremFailure(f"{th} failed")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "machine"), default="human")
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: $MULTIFAN_JOBS or 1)")

    p = argparse.ArgumentParser(prog="mfgenus", description="Genera and divisibility of complete simplicial multi-fans.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.add_argument("fan", type=Path, help="fan file")
        return sp

    add("validate", "check the multi-fan axioms")
    add("complete", "test completeness and report the degree")
    g = add("genus", "T_y, orbifold T_y or breve T_y")
    g.add_argument("--kind", choices=("ty", "orbifold-ty", "breve-ty"), default="ty")
    g.add_argument("--N", type=int)
    e = add("elliptic", "q-expansion of an elliptic genus along a generic vector")
    e.add_argument("--kind", choices=qseries.KINDS, default="plain")
    e.add_argument("--sigma", required=True)
    e.add_argument("--order", type=int, default=2)
    e.add_argument("--v")
    d = add("divisibility", "decide divisibility of c1 by N")
    d.add_argument("--N", type=int, required=True)
    add("classify", "extremal divisibility families")
    v = add("verify", "check a vanishing or divisibility theorem on this fan")
    v.add_argument("--theorem", required=True, choices=("breve-vanish", "hat-vanish", "c1zero-vanish", "hatT-div"))
    v.add_argument("--sigma")
    v.add_argument("--N", type=int)
    v.add_argument("--order", type=int, default=2)
    v.add_argument("--v")
    v.add_argument("--vectors", type=int, default=3, help="number of generic vectors to test")
    return p


COMMANDS = {
    "validate": cmd_validate,
    "complete": cmd_complete,
    "genus": cmd_genus,
    "elliptic": cmd_elliptic,
    "divisibility": cmd_divisibility,
    "classify": cmd_classify,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if not args.fan.is_file():
        print(f"error: no such fan file: {args.fan}", file=sys.stderr)
        return EXIT_INPUT
    rep = Report(args.format, args.fan)
    code = EXIT_OK
    try:
        if args.jobs is not None and args.jobs < 1:
            raise UsageError("--jobs must be positive")
        code = COMMANDS[args.command](args, rep)
    except (TheoremFailure, ContradictsPaper, qseries.PolynomialityFailure, qseries.IntegralityFailure) as exc:
        rep.add("failure", exc)
        code = EXIT_THEOREM
    except (UsageError, PreconditionUnmet, ValueError) as exc:
        sys.stdout.write(rep.render())
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(rep.render())
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
