"""Command-line frontend.

Exit codes: 0 the property holds (or the command succeeded), 1 it fails,
2 input error.  Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .algfile import format_algebra, load_algebra
from .constructions import (
    build_balpha, build_cp2_example, build_dk, build_L, build_mho, build_psi, build_theta,
)
from .errors import ActionError, ModgalError
from .ffield import moore_det, moore_inverse, parse_element, parse_field_spec
from .galgebra import (
    action_failures, find_point, is_invariant_report, is_reflexive_point, is_triangular,
    morphism_from_point, same_side_tensor, tensor,
)
from .invariants import (
    erasure_lambdas, freeness_on_points, invariant_ring_elimination, invariants_bruteforce,
)
from .pgroup import group_elemab, parse_group_spec


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    report: str
    diagnostics: str = ""


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgError(message)


def _alphas(ctx, text: str):
    return [parse_element(ctx, a) for a in text.split(",") if a.strip()]


def _order(text):
    return [v for v in text.replace(",", " ").split() if v] if text else None


def _build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="modgal", description="p-group actions on polynomial rings over GF(p^s)")
    sub = ap.add_subparsers(dest="cmd", required=True)

    b = sub.add_parser("build", help="emit a named algebra as an algebra file")
    b.add_argument("kind", choices=["dk", "mho", "balpha", "cp2"])
    b.add_argument("--field", required=True)
    b.add_argument("--group")
    b.add_argument("--rank", type=int)
    b.add_argument("--alphas")

    t = sub.add_parser("trace", help="trace of a polynomial")
    t.add_argument("file")
    t.add_argument("--poly", required=True)

    f = sub.add_parser("find-point", help="search an element of trace one")
    f.add_argument("file")
    f.add_argument("--deg", type=int)

    c = sub.add_parser("check", help="check a property")
    c.add_argument("what", choices=["triangular", "invariant", "reflexive", "action"])
    c.add_argument("file")
    c.add_argument("--order")
    c.add_argument("--all-orders", action="store_true")
    c.add_argument("--poly")
    c.add_argument("--point")

    e = sub.add_parser("erase", help="erasure invariants tr(a T_i) in A (x) Gamma")
    e.add_argument("file_a")
    e.add_argument("file_gamma")
    e.add_argument("--point")
    e.add_argument("--order")

    i = sub.add_parser("invariants", help="invariant rings")
    i.add_argument("method", choices=["brute", "eliminate"])
    i.add_argument("file")
    i.add_argument("--deg", type=int)
    i.add_argument("--order")

    m = sub.add_parser("moore", help="Moore determinant and inverse system")
    m.add_argument("what", choices=["det", "inverse"])
    m.add_argument("--field", required=True)
    m.add_argument("--alphas", required=True)

    x = sub.add_parser("tensor", help="tensor product of two algebra files")
    x.add_argument("file_a")
    x.add_argument("file_b")
    x.add_argument("--same-side", action="store_true")

    p = sub.add_parser("free-points", help="fixed points of nontrivial elements on rational points")
    p.add_argument("file")
    p.add_argument("--tower", type=int, default=2)
    p.add_argument("--cap", type=int, default=100_000)
    p.add_argument("--no-fallback", action="store_true")

    mp = sub.add_parser("map", help="morphisms theta, psi, L and the map defined by a point")
    mp.add_argument("kind", choices=["theta", "psi", "L", "from-point"])
    mp.add_argument("files", nargs="*")
    mp.add_argument("--field")
    mp.add_argument("--alphas")
    mp.add_argument("--betas")
    mp.add_argument("--point")
    return ap


def _need(value, flag):
    if value is None:
        raise _ArgError(f"{flag} is required here")
    return value


def _cmd_build(a):
    k = parse_field_spec(a.field)
    if a.kind == "dk":
        A = build_dk(k, parse_group_spec(_need(a.group, "--group"))).base
    elif a.kind == "mho":
        A = build_mho(k, k.p, _need(a.rank, "--rank")).base
    elif a.kind == "balpha":
        alphas = _alphas(k, _need(a.alphas, "--alphas"))
        _, coords = group_elemab(k.p, len(alphas))
        A = build_balpha(k, coords, alphas).base
    else:
        A = build_cp2_example(k)
    return 0, format_algebra(A)


def _cmd_trace(a):
    A = load_algebra(a.file)
    return 0, f"{A.trace(A.ring.parse(a.poly))}\n"


def _cmd_find_point(a):
    A = load_algebra(a.file)
    bound = a.deg if a.deg is not None else A.group.order
    cert = find_point(A, bound)
    if cert is None:
        return 1, f"UNKNOWN no point of degree <= {bound}\n"
    return 0, f"POINT {cert.element}\n"


def _cmd_check(a):
    if a.what == "action":
        A = load_algebra(a.file, validate=False)
        bad = action_failures(A.ring, A.group, A.gen_maps, A.elem_maps)
        if bad:
            v, g, h = bad[0]
            return 1, f"FAILS {v} {A.group.names[g]} {A.group.names[h]}\n"
        if A.group.p is not None and A.group.p != A.ctx.p:
            return 1, f"FAILS characteristic {A.ctx.p} for a {A.group.p}-group\n"
        return 0, "HOLDS\n"
    A = load_algebra(a.file)
    if a.what == "triangular":
        cert = is_triangular(A, _order(a.order), all_orders=a.all_orders)
        if cert is None:
            return 1, "FAILS\n"
        return 0, "HOLDS order " + ",".join(cert.var_order) + "\n"
    if a.what == "invariant":
        ok, moved = is_invariant_report(A, A.ring.parse(_need(a.poly, "--poly")))
        if ok:
            return 0, "HOLDS\n"
        return 1, "".join(f"FAILS {A.group.names[s]} {img}\n" for s, img in moved)
    w = A.ring.parse(_need(a.point, "--point"))
    return (0, "HOLDS\n") if is_reflexive_point(A, w) else (1, "FAILS\n")


def _cmd_erase(a):
    A = load_algebra(a.file_a)
    Gamma = load_algebra(a.file_gamma)
    if a.point is not None:
        pt = A.ring.parse(a.point)
    else:
        cert = find_point(A)
        if cert is None:
            return 1, "UNKNOWN no point of A within the default bound\n"
        pt = cert.element
    c = erasure_lambdas(A, pt, Gamma, _order(a.order))
    lines = [f"POINT {c.point}"]
    lines += [f"LAMBDA {v} {lam}" for v, lam in zip(c.var_order, c.lambdas)]
    lines += [f"REWRITE {v} = {r}" for v, r in zip(c.var_order, c.rewrites)]
    return 0, "\n".join(lines) + "\n"


def _cmd_invariants(a):
    A = load_algebra(a.file)
    if a.method == "brute":
        return 0, "".join(line + "\n" for line in invariants_bruteforce(A, _need(a.deg, "--deg")).lines())
    res = invariant_ring_elimination(A, d_check=a.deg, var_order=_order(a.order))
    lines = res.lines()
    lines += [f"EXPR {g} = {e}" for g, e in zip(res.generators, res.expressions)]
    lines.append(f"VERIFIED degree<={res.verified_degree} "
                 + ("agrees" if res.agrees_with_bruteforce else "DISAGREES"))
    return (0 if res.agrees_with_bruteforce else 1), "\n".join(lines) + "\n"


def _cmd_moore(a):
    k = parse_field_spec(a.field)
    alphas = _alphas(k, a.alphas)
    if a.what == "det":
        d = moore_det(alphas)
        return 0, f"{d}\n" + ("INDEPENDENT\n" if d else "DEPENDENT\n")
    sysm = moore_inverse(alphas)
    return 0, "".join(f"f{i + 1} " + " ".join(str(c) for c in sysm.f(i)) + "\n"
                      for i in range(len(alphas)))


def _cmd_tensor(a):
    A, B = load_algebra(a.file_a), load_algebra(a.file_b)
    T = same_side_tensor(A, B) if a.same_side else tensor(A, B)
    return 0, format_algebra(T)


def _cmd_free_points(a):
    A = load_algebra(a.file)
    rep = freeness_on_points(A, a.tower, a.cap, fallback=not a.no_fallback)
    return (0 if rep.free else 1), "\n".join(rep.lines()) + "\n"


def _morph_lines(mor):
    lines = mor.varmap.lines()
    lines.append("EQUIVARIANT " + ("yes" if mor.equivariant else "no"))
    return (0 if mor.equivariant else 1), "\n".join(lines) + "\n"


def _cmd_map(a):
    if a.kind == "from-point":
        if len(a.files) != 2:
            raise _ArgError("map from-point needs a D_k file and a target file")
        dk, target = load_algebra(a.files[0]), load_algebra(a.files[1])
        return _morph_lines(morphism_from_point(dk, target, target.ring.parse(_need(a.point, "--point"))))
    k = parse_field_spec(_need(a.field, "--field"))
    alphas = _alphas(k, _need(a.alphas, "--alphas"))
    _, coords = group_elemab(k.p, len(alphas))
    B = build_balpha(k, coords, alphas)
    if a.kind == "L":
        Bb = build_balpha(k, coords, _alphas(k, _need(a.betas, "--betas")))
        return _morph_lines(build_L(B, Bb))
    M = build_mho(k, k.p, len(alphas))
    return _morph_lines(build_theta(B, M) if a.kind == "theta" else build_psi(M, B))


_DISPATCH = {
    "build": _cmd_build, "trace": _cmd_trace, "find-point": _cmd_find_point,
    "check": _cmd_check, "erase": _cmd_erase, "invariants": _cmd_invariants,
    "moore": _cmd_moore, "tensor": _cmd_tensor, "free-points": _cmd_free_points, "map": _cmd_map,
}


def run_command(argv) -> CommandResult:
    try:
        args = _build_parser().parse_args(list(argv))
        code, report = _DISPATCH[args.cmd](args)
        return CommandResult(code, report)
    except _ArgError as e:
        return CommandResult(2, "", f"usage error: {e}\n")
    except SystemExit as e:       # --help
        return CommandResult(int(e.code or 0), "")
    except ActionError as e:
        extra = ""
        if e.triple is not None:
            extra = f" (variable {e.triple[0]}, elements {e.triple[1]}, {e.triple[2]})"
        return CommandResult(2, "", f"error: {e}{extra}\n")
    except (ModgalError, OSError, ValueError) as e:
        return CommandResult(2, "", f"error: {e}\n")


def main(argv=None) -> int:
    res = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(res.report)
    sys.stderr.write(res.diagnostics)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
