"""Command-line front end.

Every verb prints one JSON report (schema 1) to stdout or ``--out`` and a
one-line summary to stderr.  Reports contain no timing data, so identical
invocations give byte-identical output; wall time goes to stderr.

Exit codes: 0 success, 2 input error, 3 work budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import __version__
from .alternating import (
    CANONICAL_Z_NOTE,
    AltMat,
    canonical_rep,
    conjecture_scan,
    d_group,
    orbit_report,
    skew_normal_form,
)
from .automorphisms import (
    ConstraintError,
    ScalarElt,
    SplittingParams,
    default_conductor,
    splitting,
    verify_presentation,
)
from .cohomology import h2_structure
from .errors import DEFAULT_MAX_WORK, FeasibilityError
from .matrices import RingMat, lift_gl, sl_smith_normal_form, smith_normal_form
from .torus import (
    TorusPresentation,
    assemble,
    is_isomorphic,
    normal_form,
    tensor_decomposition,
    transports,
)

__all__ = ["main", "run", "parse_scalar", "ScalarSyntaxError"]

SCHEMA = 1


class InputError(ValueError):
    pass


class ScalarSyntaxError(InputError):
    def __init__(self, msg: str, offset: int):
        super().__init__(f"{msg} at offset {offset}")
        self.offset = offset


_TOKEN = re.compile(r"\s*(?:(?P<neg>-1)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
                    r"(?:\s*\^\s*(?P<exp>-?\d+))?)\s*")


def parse_scalar(text: str, m: int, M: Optional[int] = None) -> ScalarElt:
    """Parse products like ``q^3 * r0 * -1`` into the symbolic scalar group.

    ``q`` has order m, ``zeta`` generates mu_M, other names are free symbols.
    """
    M = M or default_conductor(m)
    out = ScalarElt.one(M)
    pos = 0
    expect_factor = True
    while pos < len(text):
        if not expect_factor:
            star = re.compile(r"\s*\*\s*").match(text, pos)
            if not star:
                raise ScalarSyntaxError("expected '*'", pos)
            pos = star.end()
            expect_factor = True
            continue
        tok = _TOKEN.match(text, pos)
        if not tok or tok.end() == pos:
            raise ScalarSyntaxError("expected a factor", pos)
        if tok.group("neg"):
            out = out * ScalarElt.minus_one(M)
        elif tok.group("int"):
            if tok.group("int") != "1":
                raise ScalarSyntaxError("only the integer 1 is a root of unity", tok.start("int"))
        else:
            name, e = tok.group("name"), int(tok.group("exp") or 1)
            if name == "q":
                out = out * ScalarElt.q(max(m, 1), M, e)
            elif name == "zeta":
                out = out * ScalarElt.zeta(M, e)
            else:
                out = out * ScalarElt.symbol(name, M, e)
        pos = tok.end()
        expect_factor = False
    if expect_factor:
        raise ScalarSyntaxError("expected a factor", pos)
    return out


def _load(value: str) -> dict:
    """Inline JSON or a path to a JSON file."""
    text = value
    if not value.lstrip().startswith(("{", "[")):
        try:
            text = Path(value).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {value}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON at line {exc.lineno} column {exc.colno} "
                         f"(char {exc.pos}): {exc.msg}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise InputError(f"expected a comma separated list of integers, got {text!r}") from None


def _matrix(args) -> RingMat:
    data = _load(args.matrix)
    try:
        return RingMat.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"matrix JSON needs n, m, rows ({exc})") from None


def _torus(value: str) -> TorusPresentation:
    data = _load(value)
    try:
        return TorusPresentation.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"presentation JSON needs n, m, B ({exc})") from None


# --- verbs -------------------------------------------------------------------

def _smith(args):
    A = _matrix(args)
    sf = sl_smith_normal_form(A) if args.variant == "sl" else smith_normal_form(A)
    return {"matrix": A.to_json(), "variant": args.variant}, sf.to_json(), \
        f"diag {list(sf.diag)} z={sf.z}"


def _alt(args) -> AltMat:
    A = _matrix(args)
    return AltMat.from_matrix(A.rows, A.m)


def _skewnf(args):
    A = _alt(args)
    nf = skew_normal_form(A)
    return {"matrix": A.to_json()}, nf.to_json(), f"h={list(nf.h)} z={nf.z}"


def _canon(args):
    A = _alt(args)
    nf = canonical_rep(A, args.max_work)
    res = nf.to_json()
    res["convention"] = CANONICAL_Z_NOTE
    return {"matrix": A.to_json()}, res, f"h={list(nf.h)} z={nf.z}"


def _dgroup(args):
    h = _int_list(args.h)
    D = d_group(h, args.n, args.m, method=args.method, max_work=args.max_work)
    return {"h": h, "n": args.n, "m": args.m, "method": args.method}, D.to_json(), \
        f"D={list(D.elements) if D.elements is not None else 'bounds-only'}"


def _orbits(args):
    rep = orbit_report(args.n, args.m, args.max_work, with_conjecture=not args.no_conjecture,
                       threads=args.threads)
    return {"n": args.n, "m": args.m}, rep, f"{len(rep['orbits'])} orbits"


def _conjecture(args):
    chains = [_int_list(c) for c in args.chain] if args.chain else None
    rep = conjecture_scan(args.n, args.m, chains, threads=args.threads, max_work=args.max_work)
    bad = [c["chain"] for c in rep["conjecture"] if c["holds"] is False]
    return {"n": args.n, "m": args.m, "chains": chains}, rep, \
        f"{len(rep['conjecture'])} chains, counterexamples: {bad or 'none'}"


def _classify(args):
    T = _torus(args.torus)
    nf = normal_form(T, args.max_work)
    res = nf.to_json()
    res["convention"] = CANONICAL_Z_NOTE
    return {"torus": T.to_json()}, res, f"s={nf.s} chain={list(nf.chain)} z={nf.z}"


def _iso(args):
    T1, T2 = _torus(args.a), _torus(args.b)
    ok, wit = is_isomorphic(T1, T2, args.max_work)
    res = {"isomorphic": ok, "witness": wit.to_json() if wit else None}
    if wit is not None:
        res["witness_verified"] = transports(T1, T2, wit)
    return {"a": T1.to_json(), "b": T2.to_json()}, res, f"isomorphic={ok}"


def _decompose(args):
    T = _torus(args.torus)
    factors, nf = tensor_decomposition(T, args.max_work)
    assembled = assemble(factors)
    res = {
        "factors": [F.to_json() for F in factors],
        "assembled": assembled.to_json(),
        "witness": {"P": [list(r) for r in nf.P], "chi": nf.chi.to_json()},
    }
    return {"torus": T.to_json()}, res, f"{len(factors)} factors"


def _lift(args):
    A = _matrix(args)
    G = lift_gl(A)
    return {"matrix": A.to_json()}, {"lift": [list(r) for r in G]}, f"lift {list(map(list, G))}"


def _verify_splitting(args):
    m = args.m
    M = default_conductor(m)
    mode = args.mode.upper()
    scal = {k: getattr(args, k) for k in ("r0", "r1", "r2", "s1", "s2") if getattr(args, k)}
    vals = {k: parse_scalar(v, m, M) for k, v in scal.items()}
    one = ScalarElt.one(M)
    sign = {"+": 1, "-": -1}[args.sign]
    if mode == "SL2":
        p = SplittingParams.sl2(m, vals.get("r1", one), vals.get("r2", one), sign)
    else:
        if "r0" not in vals:
            vals["r0"] = one
        p = SplittingParams.gl2(m, vals["r0"], vals.get("r1", one), vals.get("r2", one))
    if "s1" in vals or "s2" in vals:
        p = SplittingParams(p.mode, m, p.r1, p.r2, vals.get("s1", p.s1), vals.get("s2", p.s2),
                            p.r0, sign)
    sigma = splitting(TorusPresentation(2, m, ((0, 1), (0, 0))), p, check=not args.no_check)
    rep = verify_presentation(sigma)
    echo = {"m": m, "mode": mode.lower(), "sign": args.sign, "scalars": scal}
    return echo, rep, "all relations pass" if rep["all_pass"] else "relations FAIL"


def _h2(args):
    gamma = _int_list(args.gamma)
    d = h2_structure(gamma, args.z)
    return {"gamma": gamma, "z": args.z}, d.to_json(), \
        f"{len(d.ext)} Ext factors, {len(d.alt)} Alt factors"


VERBS: dict[str, Callable] = {
    "smith": _smith,
    "skewnf": _skewnf,
    "canon": _canon,
    "dgroup": _dgroup,
    "orbits": _orbits,
    "conjecture": _conjecture,
    "classify": _classify,
    "iso": _iso,
    "decompose": _decompose,
    "lift": _lift,
    "verify-splitting": _verify_splitting,
    "h2": _h2,
}


def _default_max_work() -> int:
    env = os.environ.get("QTORUS_MAX_WORK")
    if env is None:
        return DEFAULT_MAX_WORK
    try:
        return int(float(env))
    except ValueError:
        raise InputError(f"QTORUS_MAX_WORK must be a number, got {env!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qtorus", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"qtorus {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--max-work", type=int, default=None,
                        help="work budget for exhaustive steps (env QTORUS_MAX_WORK)")
    common.add_argument("--threads", type=int, default=1)
    sub = ap.add_subparsers(dest="verb", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    p = add("smith", "Smith normal form over Z/(m)")
    p.add_argument("--matrix", required=True, help="inline JSON or path")
    p.add_argument("--variant", choices=["gl", "sl"], default="gl")
    for name, help_ in [("skewnf", "skew normal form of an alternating matrix"),
                        ("canon", "canonical orbit representative"),
                        ("lift", "lift a det +-1 matrix to GL_n(Z)")]:
        add(name, help_).add_argument("--matrix", required=True, help="inline JSON or path")
    p = add("dgroup", "D-group of a chain")
    p.add_argument("--h", required=True, help="chain, e.g. 1,2")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--method", choices=["orbit-graph", "brute-force"], default="orbit-graph")
    p = add("orbits", "enumerate all orbits of Alt_n(Z/m)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--no-conjecture", action="store_true")
    p = add("conjecture", "scan D*h_s = h_s over chains with 2s = n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--chain", action="append", help="restrict to this chain (repeatable)")
    for name, help_ in [("classify", "normal form of a quantum torus"),
                        ("decompose", "tensor decomposition of a quantum torus")]:
        add(name, help_).add_argument("--torus", required=True, help="inline JSON or path")
    p = add("iso", "graded isomorphism test")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p = add("verify-splitting", "check the splitting relations for A_q")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mode", choices=["sl2", "gl2", "SL2", "GL2"], default="sl2")
    for k in ("r0", "r1", "r2", "s1", "s2"):
        p.add_argument(f"--{k}", help="scalar such as q^2*r or -1")
    p.add_argument("--sign", choices=["+", "-"], default="+")
    p.add_argument("--no-check", action="store_true",
                   help="build the lifts even if the constraints fail")
    p = add("h2", "H^2 factor orders for a direct sum of cyclic groups")
    p.add_argument("--gamma", required=True, help="cyclic orders, 0 for Z")
    p.add_argument("--z", type=int, required=True, help="order of the coefficient group")
    return ap


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    start = time.perf_counter()
    try:
        if args.max_work is None:
            args.max_work = _default_max_work()
        echo, result, summary = VERBS[args.verb](args)
    except FeasibilityError as exc:
        print(f"qtorus {args.verb}: work budget exceeded: {exc.what} needs {exc.work}, "
              f"bound {exc.bound}", file=stderr)
        return 3
    except ConstraintError as exc:
        print(f"qtorus {args.verb}: {exc}", file=stderr)
        return 2
    except (InputError, ValueError, ZeroDivisionError) as exc:
        print(f"qtorus {args.verb}: input error: {exc}", file=stderr)
        return 2
    report = {
        "schema": SCHEMA,
        "verb": args.verb,
        "input": echo,
        "result": result,
        "provenance": {"qtorus": __version__, "max_work": args.max_work,
                       "threads": args.threads},
    }
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    elapsed = time.perf_counter() - start
    print(f"qtorus {args.verb}: {summary} ({elapsed:.3f}s)", file=stderr)
    return 0


def main() -> None:
    sys.exit(run())
