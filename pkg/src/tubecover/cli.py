"""Command-line front end.

Exit codes: 0 success or pass, 1 rejected or failed check, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import classifier, domains, tensors
from .jordan import JordanAlgebraSpec, verify_jordan_identities
from .polyalg import PolynomialSyntaxError, is_squarefree, parse_polynomial, squarefree_decomposition

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(obj, as_json: bool, text: str) -> None:
    print(json.dumps(obj) if as_json else text)


def _read_poly(args):
    if (args.poly is None) == (args.poly_file is None):
        raise UsageError("give exactly one of --poly or --poly-file")
    if args.poly is not None:
        text = args.poly
    else:
        try:
            with open(args.poly_file) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.poly_file}: {exc}") from exc
    return parse_polynomial(text.strip())


def _domain(text: str) -> domains.IrreducibleDomain:
    try:
        return domains.IrreducibleDomain.parse(text)
    except domains.InvalidDomainError as exc:
        raise UsageError(str(exc)) from exc


def _spec(text: str) -> JordanAlgebraSpec:
    try:
        return JordanAlgebraSpec.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _positive(name: str, value):
    if value is not None and value < 1:
        raise UsageError(f"--{name} must be positive")


# -- commands -------------------------------------------------------------------


def cmd_classify(args) -> int:
    _positive("dim", args.dim)
    psi = _read_poly(args)
    try:
        fn = classifier.classify_semispecial if args.semispecial else classifier.classify
        report = fn(psi, args.dim, trials=args.trials or classifier.DEFAULT_TRIALS, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(report.to_json(), args.json, classifier.explain(report))
    return EXIT_OK if report.accepted else EXIT_FAIL


def cmd_squarefree(args) -> int:
    p = _read_poly(args)
    if p.is_zero():
        raise UsageError("zero polynomial")
    ff = squarefree_decomposition(p)
    sf = is_squarefree(p)
    obj = {
        "constant": str(ff.constant),
        "factors": [{"poly": str(f), "multiplicity": m} for f, m in ff.factors],
        "squarefree": sf,
    }
    lines = [f"constant: {ff.constant}"] + [f"({f})^{m}" for f, m in ff.factors]
    lines.append(f"square-free: {'yes' if sf else 'no'}")
    _emit(obj, args.json, "\n".join(lines))
    return EXIT_OK


def cmd_domain_info(args) -> int:
    if args.domain is not None:
        d = _domain(args.domain)
        r, n = d.rank, d.dim
    elif args.rank is not None and args.dim is not None:
        _positive("rank", args.rank)
        _positive("dim", args.dim)
        r, n = args.rank, args.dim
    else:
        raise UsageError("give --domain or both --rank and --dim")
    found = domains.lookup(r, n)
    obj = {"rank": r, "dim": n, "domain": None if found is None else str(found)}
    if found is None:
        _emit(obj, args.json, f"no tube-type domain with rank {r} and dimension {n}")
        return EXIT_FAIL
    _emit(obj, args.json, f"{found}: rank {r}, dimension {n}")
    return EXIT_OK


def _parse_factors(text: str) -> list[tuple[int, int]]:
    out = []
    for item in text.split(","):
        try:
            r, n = item.split(":")
            out.append((int(r), int(n)))
        except ValueError as exc:
            raise UsageError(f"bad factor {item!r}; expected rank:dim") from exc
    return out


def cmd_solve_conditions(args) -> int:
    if args.factors is not None:
        pairs = _parse_factors(args.factors)
    elif args.product is not None:
        try:
            prod = domains.DomainProduct.parse(args.product)
        except domains.InvalidDomainError as exc:
            raise UsageError(str(exc)) from exc
        pairs = [(f.rank, f.dim) for f in prod.factors]
    else:
        raise UsageError("give --factors or --product")
    for r, n in pairs:
        if r < 1 or n < 1:
            raise UsageError(f"invalid (rank, dim) pair {(r, n)}")
    m, a = domains.minimal_m(pairs)
    k = m * sum(n for _, n in pairs)
    obj = {"m": m, "exponents": a, "k": k}
    _emit(obj, args.json, f"m={m}, a={','.join(map(str, a))}, k={k}")
    return EXIT_OK


def cmd_solve_prop61(args) -> int:
    if args.dim < 0 or args.count < 0:
        raise UsageError("--dim and --count must be non-negative")
    sol = domains.solve_prop61(args.dim, args.count)
    if sol is None:
        _emit({"a": None, "b": None}, args.json, "no non-negative solution")
        return EXIT_FAIL
    a, b = sol
    cover = " × ".join(["I_{2,2}"] * a + ["III_3"] * b)
    _emit({"a": a, "b": b, "cover": cover}, args.json, f"a={a}, b={b}: {cover}")
    return EXIT_OK


def cmd_build_psi(args) -> int:
    try:
        prod = domains.DomainProduct.parse(args.product)
    except domains.InvalidDomainError as exc:
        raise UsageError(str(exc)) from exc
    m = args.m
    if m is None:
        m = domains.minimal_m([(f.rank, f.dim) for f in prod.factors])[0]
    _positive("m", m)
    try:
        psi = tensors.build_psi(prod, m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    obj = {"product": str(prod), "m": m, "n": prod.dim, "k": m * prod.dim, "poly": str(psi)}
    _emit(obj, args.json, str(psi))
    return EXIT_OK


def _reports(reports, as_json: bool) -> int:
    for rep in reports:
        d = rep.to_json()
        if as_json:
            print(json.dumps(d))
        else:
            name = d.get("check", d.get("identity"))
            res = d.get("max_residual", d.get("max_deviation"))
            print(f"{'PASS' if rep.passed else 'FAIL'}  {name}: {res:.3e} over {d['trials']} trials")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_verify_jordan(args) -> int:
    spec = _spec(args.spec)
    _positive("trials", args.trials)
    kw = {} if args.tol is None else {"tolerance": args.tol}
    reps = verify_jordan_identities(spec, trials=args.trials or 100, seed=args.seed, **kw)
    return _reports(reps, args.json)


def _fd_kwargs(args) -> dict:
    kw = {}
    if args.tol is not None:
        kw["tolerance"] = args.tol
    if args.step is not None:
        if args.step <= 0:
            raise UsageError("--step must be positive")
        kw["step"] = args.step
    return kw


def cmd_verify_invariance(args) -> int:
    d = _domain(args.domain)
    _positive("trials", args.trials)
    try:
        tensor = tensors.InvariantTensor.for_domain(d, args.m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rep = tensors.verify_tensor_invariance(tensor, trials=args.trials or 50, seed=args.seed, **_fd_kwargs(args))
    return _reports([rep], args.json)


def cmd_verify_cocycle(args) -> int:
    d = _domain(args.domain)
    _positive("trials", args.trials)
    if d.kind not in (domains.Kind.I, domains.Kind.II, domains.Kind.III):
        raise UsageError("cocycle check needs a matrix domain (types I, II, III)")
    reps = tensors.verify_cocycle(d, trials=args.trials or 50, seed=args.seed, **_fd_kwargs(args))
    return _reports(reps, args.json)


def cmd_verify_inversion(args) -> int:
    spec = _spec(args.spec)
    _positive("trials", args.trials)
    reps = tensors.verify_tube_inversion(spec, trials=args.trials or 100, seed=args.seed, **_fd_kwargs(args))
    return _reports(reps, args.json)


# -- parser ---------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--trials", type=int, default=None, help="number of random trials")
    common.add_argument("--tol", type=float, default=None, help="pass threshold")
    poly = argparse.ArgumentParser(add_help=False)
    poly.add_argument("--poly", help="polynomial text, e.g. 'x1*x2 - 2*x3^2'")
    poly.add_argument("--poly-file", help="file holding the polynomial text")
    fd = argparse.ArgumentParser(add_help=False)
    fd.add_argument("--step", type=float, default=None, help="finite-difference step (default 1e-5)")

    parser = _Parser(prog="tubecover", description="Universal covers from tensor polynomials.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common, poly], help="name the cover from psi")
    p.add_argument("--dim", type=int, required=True, help="manifold dimension n")
    p.add_argument("--semispecial", action="store_true", help="require deg psi = n")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("squarefree", parents=[common, poly], help="square-free decomposition")
    p.set_defaults(func=cmd_squarefree)

    p = sub.add_parser("domain-info", parents=[common], help="rank, dimension and table lookup")
    p.add_argument("--domain", help="e.g. I_{2,2}, II_4, III_3, IV_5, E27")
    p.add_argument("--rank", type=int)
    p.add_argument("--dim", type=int)
    p.set_defaults(func=cmd_domain_info)

    p = sub.add_parser("solve-conditions", parents=[common], help="least twist m with integral exponents")
    p.add_argument("--factors", help="comma-separated rank:dim pairs, e.g. 2:3,3:6")
    p.add_argument("--product", help="domain product, e.g. 'IV_3 x III_3'")
    p.set_defaults(func=cmd_solve_conditions)

    p = sub.add_parser("solve-prop61", parents=[common], help="solve 4a + 6b = n, a + b = p")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--count", type=int, required=True, help="number of factors p")
    p.set_defaults(func=cmd_solve_prop61)

    p = sub.add_parser("build-psi", parents=[common], help="tensor polynomial of a domain product")
    p.add_argument("--product", required=True)
    p.add_argument("--m", type=int, default=None, help="twist (default: least admissible)")
    p.set_defaults(func=cmd_build_psi)

    p = sub.add_parser("verify-jordan", parents=[common], help="Jordan algebra identity suite")
    p.add_argument("--spec", required=True, help="sym:n, herm:n, quat:k, spin:d or albert")
    p.set_defaults(func=cmd_verify_jordan)

    p = sub.add_parser("verify-invariance", parents=[common, fd], help="invariance of the tensor")
    p.add_argument("--domain", required=True)
    p.add_argument("--m", type=int, default=None)
    p.set_defaults(func=cmd_verify_invariance)

    p = sub.add_parser("verify-cocycle", parents=[common, fd], help="Jacobian cocycle of the Mobius action")
    p.add_argument("--domain", required=True)
    p.set_defaults(func=cmd_verify_cocycle)

    p = sub.add_parser("verify-inversion", parents=[common, fd], help="tube inversion chain")
    p.add_argument("--spec", required=True)
    p.set_defaults(func=cmd_verify_inversion)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (UsageError, PolynomialSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
