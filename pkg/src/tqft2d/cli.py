"""Command-line front end: one subcommand per computation, JSON on stdout.

Exit codes: 0 success, 1 invalid input, 2 internal failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import re
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from math import factorial
from typing import Any, Dict, List, Optional, Sequence

from .errors import ParseError, TQFTError
from .exact import MultiPoly, det_fraction_free, parse_poly, parse_rational

log = logging.getLogger("tqft2d")


class UsageError(TQFTError):
    def __init__(self, message, token=None):
        super().__init__(message)
        self.token = token


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        m = re.search(r"'([^']*)'", message) or re.search(r"arguments: (.*)$", message)
        raise UsageError(message, m.group(1) if m else None)


@contextmanager
def stage(name: str):
    start = time.perf_counter()
    yield
    log.info("%s: %.3fs", name, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# argument helpers


def _rationals(text: str) -> List[Fraction]:
    text = text.strip()
    return [Fraction(parse_rational(t)) for t in text.split(",")] if text else []


def _point(text: Optional[str]) -> Optional[Dict[str, Fraction]]:
    if not text:
        return None
    out = {}
    for item in text.split(","):
        name, eq, value = item.partition("=")
        if not eq:
            raise ParseError("expected name=value", item)
        out[name.strip()] = Fraction(parse_rational(value.strip()))
    return out


def _partition(text: str):
    from .symfun import Partition
    return Partition.from_text(text)


def _random_point(names: Sequence[str], rng: random.Random) -> Dict[str, Fraction]:
    while True:
        pt = {v: Fraction(rng.randint(-40, 40), rng.randint(1, 9)) for v in names}
        if len(set(pt.values())) == len(pt):
            return pt


def _xy(M: int, N: int):
    return [f"x{i}" for i in range(1, M + 1)], [f"y{j}" for j in range(1, N + 1)]


def _series_text(coeffs: Sequence[Fraction], var: str = "T") -> str:
    p = MultiPoly.const(0, (var,))
    for i, c in enumerate(coeffs):
        if c:
            p = p + MultiPoly.monomial({var: i}, c, (var,))
    return str(p)


# ---------------------------------------------------------------------------
# subcommands


def _report(args, kernel=True):
    from .cobord import render_relation, state_space_report
    from .theory import parse_theory

    theory = parse_theory(args.theory)
    with stage("state space"):
        rep = state_space_report(args.k, theory, args.cap, at=_point(getattr(args, "at", None)),
                                 kernel=kernel)
    return theory, rep, render_relation


def cmd_state_space(args):
    theory, rep, render_relation = _report(args)
    return {
        "theory": theory.describe(),
        "k": rep.k,
        "spanning_size": rep.spanning_size,
        "rank": rep.rank,
        "graded": rep.graded_text,
        "pivots": [str(c) for c in rep.pivot_elements],
        "relations": [render_relation(r, args.labels) for r in rep.kernel_relations],
        "generic_basis": rep.generic_basis,
    }


def cmd_relations(args):
    _, rep, render_relation = _report(args)
    return {
        "rank": rep.rank,
        "relations": [render_relation(r, args.labels) for r in rep.kernel_relations],
        "generic_basis": rep.generic_basis,
    }


def cmd_graded_rank(args):
    _, rep, _ = _report(args, kernel=False)
    return {"rank": rep.rank, "graded": rep.graded_text}


def cmd_gram(args):
    from .cobord import gram_matrix_of, spanning_set
    from .theory import parse_theory

    theory = parse_theory(args.theory)
    with stage("spanning set"):
        elements = spanning_set(args.k, theory, args.cap)
    with stage("gram matrix"):
        g = gram_matrix_of(elements, theory)
    out: Dict[str, Any] = {"elements": [str(c) for c in elements], "matrix": g.render()}
    if args.det:
        with stage("determinant"):
            out["det"] = str(det_fraction_free(g))
    return out


def cmd_detect_rational(args):
    from .theory import detect_rational

    fit = detect_rational(_rationals(args.seq))
    if fit is None:
        return {"rational": False}
    return {
        "rational": True,
        "order": fit.order,
        "valid_from": fit.valid_from,
        "P": _series_text(fit.reconstructed_P),
        "Q": _series_text(fit.reconstructed_Q),
    }


def cmd_schur(args):
    from .symfun import schur_bialternant, schur_jt

    lam = _partition(args.lam)
    xs, _ = _xy(args.M, 0)
    f = schur_jt if args.method == "jt" else schur_bialternant
    return {"polynomial": str(f(lam, xs))}


def cmd_superschur(args):
    from .symfun import super_schur_jt

    xs, ys = _xy(args.M, args.N)
    return {"polynomial": str(super_schur_jt(_partition(args.lam), xs, ys))}


def _small(M: int, N: int) -> bool:
    return factorial(M) * factorial(N) <= 720 and max(M, N) <= 5


def cmd_sp_verify(args):
    from .symfun import fits_hook, sergeev_pragacz, super_schur_jt

    lam = _partition(args.lam)
    xs, ys = _xy(args.M, args.N)
    if not fits_hook(lam, args.M, args.N):
        with stage("jacobi-trudi"):
            jt = super_schur_jt(lam, xs, ys)
        return {"on_hook": False, "mode": "symbolic", "equal": jt == 0, "vanishes": jt == 0}
    if _small(args.M, args.N):
        with stage("symbolic"):
            equal = sergeev_pragacz(lam, xs, ys) == super_schur_jt(lam, xs, ys)
        return {"on_hook": True, "mode": "symbolic", "equal": equal}
    rng = random.Random(args.seed)
    equal = True
    with stage("points"):
        for _ in range(args.points):
            pt = _random_point(xs + ys, rng)
            equal &= sergeev_pragacz(lam, xs, ys, at=pt) == super_schur_jt(lam, xs, ys, at=pt)
    return {"on_hook": True, "mode": f"{args.points} random points", "equal": equal}


def cmd_foam_theta(args):
    from .foam import ThetaFoam, theta_eval
    from .symfun import schur_jt

    f = ThetaFoam(args.M, _partition(args.mu))
    val = theta_eval(f)
    return {"dots": list(f.dots), "evaluation": str(val),
            "equals_schur": val == schur_jt(f.mu, _xy(args.M, 0)[0])}


def cmd_foam_overlap(args):
    from .foam import OverlapThetaFoam, overlap_theta_eval
    from .symfun import super_schur_jt

    f = OverlapThetaFoam(args.M, args.N, _partition(args.lam))
    xs, ys = _xy(args.M, args.N)
    out: Dict[str, Any] = {
        "kappa": [list(c) for c in f.kappa_pattern],
        "x_dots": list(f.x_dots),
        "y_dots": list(f.y_dots),
    }
    if _small(args.M, args.N):
        with stage("colorings"):
            val = overlap_theta_eval(f)
        out.update(mode="symbolic", evaluation=str(val), equals_superschur=val == super_schur_jt(f.lam, xs, ys))
        return out
    rng = random.Random(args.seed)
    equal = True
    with stage("points"):
        for _ in range(args.points):
            pt = _random_point(xs + ys, rng)
            equal &= overlap_theta_eval(f, at=pt) == super_schur_jt(f.lam, xs, ys, at=pt)
    out.update(mode=f"{args.points} random points", equals_superschur=equal)
    return out


def cmd_resultant_check(args):
    from .foam import generic_sylvester_resultant, resultant_of_roots, sphere_overlap_eval

    M, N = args.M, args.N
    xs, ys = _xy(M, N)
    with stage("sylvester"):
        generic = generic_sylvester_resultant(M, N)
    with stage("specialize"):
        res = resultant_of_roots(xs, ys)
    sphere = sphere_overlap_eval(M, N, "minus")
    return {"resultant_generic": str(generic), "equal": res == sphere}


def cmd_day_verify(args):
    from .day import day_verify
    from .foam import DayFoamInstance

    inst = DayFoamInstance(_rationals(args.roots), _rationals(args.delta), _rationals(args.rho), args.n)
    with stage("day"):
        v = day_verify(inst)
    return {"k": inst.k, "m": inst.m, "h": inst.h, "formula": str(v.formula_value),
            "brute_force": str(v.brute_force_value), "equal": v.equal}


def cmd_frobenius2(args):
    from .exact import TruncSeries
    from .theory import frobenius_closed_form, frobenius_rank2_series

    params = dict(rho0=parse_poly(args.rho0), rho1=parse_poly(args.rho1),
                  u1=parse_poly(args.u1), u2=parse_poly(args.u2))
    with stage("series"):
        loc = frobenius_rank2_series(args.upto, **params)
        cleared, E = loc.cleared()
        num, den = frobenius_closed_form(args.upto, **params)
    lhs = cleared * den
    rhs = num * loc.rho ** E
    matches = all(lhs[i] == rhs[i] for i in range(args.upto + 1))
    coeffs = []
    for n, e in zip(loc.numerators, loc.exponents):
        if e == 0:
            coeffs.append(str(n))
        else:
            coeffs.append(f"({n})/({loc.rho})" + (f"^{e}" if e > 1 else ""))
    return {"rho": str(loc.rho), "D": str(loc.D), "coefficients": coeffs,
            "closed_form_numerator": [str(c) for c in num.coeffs[:2]],
            "closed_form_denominator": [str(c) for c in den.coeffs[:3]],
            "matches_closed_form": matches}


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--plain", action="store_true", help="plain text instead of JSON")
    common.add_argument("--verbose", action="store_true", help="stage timings on stderr")
    parser = _Parser(prog="tqft2d", description="Exact computations for two-dimensional topological theories.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    for name, func, help in (
        ("state-space", cmd_state_space, "rank, graded rank and relations of A(k)"),
        ("relations", cmd_relations, "kernel relations of A(k)"),
        ("graded-rank", cmd_graded_rank, "rank and graded rank of A(k)"),
    ):
        p = add(name, func, help)
        p.add_argument("--theory", required=True, help='e.g. "const beta", "poly b0,b1"')
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--cap", type=int, default=None, help="genus cap per component")
        p.add_argument("--at", default=None, help='specialize parameters, e.g. "b1=2"')
        p.add_argument("--labels", action="store_true", help="name elements by generators")

    p = add("gram", cmd_gram, "Gram matrix of the spanning set")
    p.add_argument("--theory", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--det", action="store_true")

    p = add("detect-rational", cmd_detect_rational, "fit P/Q to a sequence prefix")
    p.add_argument("--seq", required=True)

    p = add("schur", cmd_schur, "Schur polynomial")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--method", choices=("jt", "bialternant"), default="jt")

    p = add("superschur", cmd_superschur, "supersymmetric Schur polynomial")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--N", type=int, required=True)

    for name, func, help in (
        ("sp-verify", cmd_sp_verify, "Sergeev-Pragacz against Jacobi-Trudi"),
        ("foam-overlap", cmd_foam_overlap, "overlapping theta-foam evaluation"),
    ):
        p = add(name, func, help)
        p.add_argument("--lambda", dest="lam", required=True)
        p.add_argument("--M", type=int, required=True)
        p.add_argument("--N", type=int, required=True)
        p.add_argument("--points", type=int, default=3, help="random points for large instances")
        p.add_argument("--seed", type=int, default=0)

    p = add("foam-theta", cmd_foam_theta, "theta-foam evaluation")
    p.add_argument("--mu", required=True)
    p.add_argument("--M", type=int, required=True)

    p = add("resultant-check", cmd_resultant_check, "overlapping spheres against the Sylvester resultant")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--N", type=int, required=True)

    p = add("day-verify", cmd_day_verify, "Day's formula against the Toeplitz determinant")
    p.add_argument("--roots", required=True)
    p.add_argument("--delta", default="")
    p.add_argument("--rho", default="")
    p.add_argument("--n", type=int, required=True)

    p = add("frobenius2", cmd_frobenius2, "rank-two Frobenius extension series")
    p.add_argument("--upto", type=int, default=10)
    p.add_argument("--rho0", default="rho0")
    p.add_argument("--rho1", default="rho1")
    p.add_argument("--u1", default="u1")
    p.add_argument("--u2", default="u2")
    return parser


def _plain(value, indent="") -> List[str]:
    lines = []
    if isinstance(value, dict):
        for key in sorted(value):
            v = value[key]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{indent}{key}:")
                lines.extend(_plain(v, indent + "  "))
            else:
                lines.append(f"{indent}{key}: {_scalar(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, list):
                lines.append(indent + "  ".join(_scalar(x) for x in v))
            else:
                lines.append(indent + _scalar(v))
    else:
        lines.append(indent + _scalar(value))
    return lines


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list) and not v:
        return "(none)"
    return str(v)


def _inputs(args) -> Dict[str, Any]:
    return {k: v for k, v in vars(args).items() if k not in ("func", "plain", "verbose", "command")}


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    plain = "--plain" in argv
    command = next((a for a in argv if not a.startswith("-")), None)
    report: Dict[str, Any] = {"command": command}
    code = 0
    try:
        args = build_parser().parse_args(argv)
        report["inputs"] = _inputs(args)
        if args.verbose:
            handler = logging.StreamHandler(sys.stderr)
            handler.setFormatter(logging.Formatter("%(message)s"))
            log.addHandler(handler)
            log.setLevel(logging.INFO)
        report["result"] = args.func(args)
        report["status"] = "ok"
    except (TQFTError, ValueError) as exc:
        report.update(status="error", message=str(exc))
        token = getattr(exc, "token", None)
        if token is not None:
            report["token"] = token
        code = 1
    except Exception as exc:  # internal failure, including assertion errors
        report.update(status="error", message=f"internal: {type(exc).__name__}: {exc}")
        code = 2
    if plain and report["status"] == "ok":
        out.write("\n".join(_plain(report["result"])) + "\n")
    elif plain:
        out.write(f"error: {report['message']}\n")
    else:
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
