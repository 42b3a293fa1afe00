"""Command-line front end: every verification as a subcommand with
machine-readable output.

Probabilities and tolerances are parsed exactly ("1/4" or "0.25" both
give the rational 1/4).  Every run echoes its resolved configuration;
rationals are printed as "num/den".  Exit status is 0 exactly when all
requested checks pass.
"""

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from . import __version__
from .combinat import binomial
from .hypergraphs import (
    TypeZVector,
    check_D1,
    check_P_alpha,
    edge_weight_within,
    monomial_coefficients,
    read_hypergraph,
    sample_ckp,
    sample_gnp,
    type_z_density,
    write_hypergraph,
)
from .intersection import verify_rank_theorem
from .scheme import count_good_functions, gram_spectrum, leading_coefficient
from .structure import (
    cut_norm,
    cut_norm_lower_bound,
    density_vector,
    quotient_graph,
    read_graph,
    solution_space,
    verify_structure_theorem,
    write_graph,
    write_vector_file,
)


def _fraction(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {s!r}") from exc


def _int_list(s: str):
    return tuple(int(x) for x in s.split(","))


def _fraction_list(s: str):
    return tuple(_fraction(x) for x in s.split(","))


def _fmt(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _emit(report: dict, fmt: str):
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    elif fmt == "csv":
        print("key,value")
        for key, val in sorted(report.items()):
            if isinstance(val, (list, dict)):
                val = json.dumps(val)
            print(f"{key},{val}")
    else:
        for key, val in sorted(report.items()):
            print(f"{key}: {val}")


def _add_common(sub):
    sub.add_argument("--format", choices=("json", "csv", "text"), default="json")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="hypercut",
        description="exact and Monte Carlo checks for balanced-cut properties "
        "of k-uniform hypergraphs",
    )
    ap.add_argument("--version", action="version", version=f"hypercut {__version__}")
    sp = ap.add_subparsers(dest="command", required=True)

    p = sp.add_parser("rank", help="rank of a transversal matrix vs prediction")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--v", type=_int_list, required=True, metavar="V1,V2,...")
    _add_common(p)

    p = sp.add_parser("spectrum", help="exact spectrum of the balanced Gram matrix")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    _add_common(p)

    p = sp.add_parser("goodfn", help="window-covering function count vs closed form")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--brute", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    _add_common(p)

    p = sp.add_parser("sample", help="sample a random hypergraph to a file")
    p.add_argument("kind", choices=("gnp", "ckp"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=_fraction, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--shuffle", action="store_true")
    _add_common(p)

    p = sp.add_parser("verify", help="run a verification suite")
    vs = p.add_subparsers(dest="suite", required=True)

    q = vs.add_parser("identity", help="type-z cut density is exactly p")
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--p", type=_fraction, default=Fraction(1, 4))
    q.add_argument("--samples", type=int, default=100)
    q.add_argument("--seed", type=int, default=0)
    _add_common(q)

    q = vs.add_parser("structure", help="solution space is the planted affine span")
    q.add_argument("--t", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--p", type=_fraction, required=True)
    _add_common(q)

    q = vs.add_parser("cuts", help="balanced-cut counts on a hypergraph file")
    q.add_argument("--in", dest="infile", required=True)
    q.add_argument("--p", type=_fraction, required=True)
    q.add_argument("--alpha", type=_fraction_list, required=True)
    q.add_argument("--trials", type=int, default=50)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--tolerance", type=int, default=3, metavar="SIGMAS")
    _add_common(q)

    q = vs.add_parser("d1", help="subset edge counts on a hypergraph file")
    q.add_argument("--in", dest="infile", required=True)
    q.add_argument("--p", type=_fraction, required=True)
    q.add_argument("--sizes", type=_int_list, default=())
    q.add_argument("--trials", type=int, default=10)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--tolerance", type=int, default=3, metavar="SIGMAS")
    q.add_argument("--u-set", type=_int_list, default=None,
                   help="explicit vertex set to test, comma-separated")
    _add_common(q)

    p = sp.add_parser("solve", help="solution space of the balanced-cut system")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=_fraction, required=True)
    p.add_argument("--out", default=None)
    _add_common(p)

    p = sp.add_parser("cutnorm", help="cut-norm distance of two graph files")
    p.add_argument("--g1", required=True)
    p.add_argument("--g2", required=True)
    p.add_argument("--heuristic", action="store_true",
                   help="certified lower bound for graphs past the exact cap")
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)

    p = sp.add_parser("quotient", help="part-density quotient of a graph file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--out", required=True)
    _add_common(p)

    p = sp.add_parser("density", help="density vector of a hypergraph file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--out", required=True)
    _add_common(p)

    return ap


def _consecutive_parts(n, t):
    size = n // t
    return tuple(
        tuple(range(i * size + 1, (i + 1) * size + 1)) for i in range(t)
    )


def _cmd_rank(args):
    report = verify_rank_theorem(args.t, args.k, args.v)
    out = report.as_dict()
    out["command"] = "rank"
    out["claim"] = (
        "balanced block sizes drop the transversal-matrix rank by exactly t-1; "
        "unbalanced sizes leave it full"
    )
    return out, report.match is not False


def _cmd_spectrum(args):
    spec = gram_spectrum(args.t, args.k)
    lam1_zero = spec.lambdas[1] == 0
    rest_positive = all(
        spec.lambdas[j] > 0 for j in range(args.k + 1) if j != 1
    )
    out = {
        "command": "spectrum",
        "t": args.t,
        "k": args.k,
        "records": spec.records(),
        "multiplicity_sum": sum(spec.multiplicities),
        "lambda1_is_zero": lam1_zero,
        "other_lambdas_positive": rest_positive,
        "implied_gram_rank": spec.implied_gram_rank(),
        "claim": "the balanced Gram matrix has one vanishing eigenvalue, of "
                 "multiplicity t-1",
    }
    return out, lam1_zero and rest_positive


def _cmd_goodfn(args):
    closed = leading_coefficient(args.j, args.k)
    out = {
        "command": "goodfn",
        "j": args.j,
        "k": args.k,
        "closed_form": closed,
        "claim": "the brute-force count of everywhere-window-covering "
                 "functions matches the alternating closed form",
    }
    ok = True
    if args.brute:
        brute = count_good_functions(args.j, args.k, threads=args.threads)
        out["brute_force"] = brute
        out["equal"] = ok = brute == closed
    return out, ok


def _cmd_sample(args):
    t0 = time.perf_counter()
    if args.kind == "gnp":
        h = sample_gnp(args.n, args.k, args.p, args.seed)
        halves = None
    else:
        h, halves = sample_ckp(args.n, args.k, args.p, args.seed,
                               shuffle=args.shuffle)
    write_hypergraph(h, args.out)
    out = {
        "command": "sample",
        "kind": args.kind,
        "n": args.n,
        "k": args.k,
        "p": _fmt(args.p),
        "seed": args.seed,
        "out": args.out,
        "edges": int(h.total_weight()),
        "possible": binomial(args.n, args.k),
        "elapsed_s": round(time.perf_counter() - t0, 3),
    }
    if halves is not None:
        a, b = halves
        ca = binomial(len(a), args.k)
        cb = binomial(len(b), args.k)
        out["density_inside_A"] = edge_weight_within(h, a) / ca if ca else 0.0
        out["density_inside_B"] = edge_weight_within(h, b) / cb if cb else 0.0
    return out, True


def _random_z(r, rng):
    raw = [Fraction(rng.randint(1, 60), rng.randint(1, 60)) for _ in range(r)]
    total = sum(raw)
    return TypeZVector(tuple(x * Fraction(r, 2) / total for x in raw))


def _cmd_verify_identity(args):
    rng = random.Random(args.seed)
    exact = 0
    for _ in range(args.samples):
        z = _random_z(args.r, rng)
        if type_z_density(args.r, args.k, args.p, z) == args.p:
            exact += 1
    coeffs = monomial_coefficients(args.r, args.k, args.p)
    bad = [sorted(j) for j, c in coeffs.items() if len(j) >= 2 and c != 0]
    singleton_ok = all(
        coeffs[frozenset({i})] == binomial(args.r - 1, args.k - 1)
        * Fraction(2, args.k) * args.p
        for i in range(1, args.r + 1)
    )
    passed = exact == args.samples and not bad and singleton_ok
    out = {
        "command": "verify identity",
        "r": args.r,
        "k": args.k,
        "p": _fmt(args.p),
        "samples": args.samples,
        "seed": args.seed,
        "exactly_p": exact,
        "nonvanishing_higher_coefficients": bad,
        "singleton_coefficients_match": singleton_ok,
        "passed": passed,
        "claim": "every type-z balanced cut of the planted construction has "
                 "expected density exactly p",
    }
    return out, passed


def _cmd_verify_structure(args):
    report = verify_structure_theorem(args.t, args.k, args.p)
    out = report.as_dict()
    out["command"] = "verify structure"
    out["claim"] = (
        "the solutions of the exact balanced-cut property are precisely the "
        "affine combinations of the uniform and planted weight vectors"
    )
    return out, report.passed


def _cmd_verify_cuts(args):
    h = read_hypergraph(args.infile)
    report = check_P_alpha(h, args.alpha, args.p, args.trials, args.seed,
                           sigmas=args.tolerance)
    out = report.as_dict()
    out["command"] = "verify cuts"
    out["in"] = args.infile
    out["claim"] = "sampled cuts of the given shape carry the random-like weight"
    return out, report.passed


def _cmd_verify_d1(args):
    h = read_hypergraph(args.infile)
    explicit = (args.u_set,) if args.u_set else ()
    report = check_D1(h, args.p, sizes=args.sizes, trials=args.trials,
                      seed=args.seed, sigmas=args.tolerance,
                      explicit_sets=explicit)
    out = report.as_dict()
    out["command"] = "verify d1"
    out["in"] = args.infile
    out["claim"] = "vertex subsets span the random-like number of edges"
    return out, report.passed


def _cmd_solve(args):
    sol = solution_space(args.t, args.k, args.p)
    payload = {
        "t": args.t,
        "k": args.k,
        "p": _fmt(args.p),
        "system_rank": sol.system_rank,
        "nullity": sol.nullity,
        "particular": [_fmt(x) for x in sol.particular],
        "nullspace_basis": [[_fmt(x) for x in v] for v in sol.nullspace_basis],
    }
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh)
    out = {
        "command": "solve",
        "t": args.t,
        "k": args.k,
        "p": _fmt(args.p),
        "system_rank": sol.system_rank,
        "nullity": sol.nullity,
        "out": args.out,
    }
    if not args.out:
        out["solution"] = payload
    return out, True


def _cmd_cutnorm(args):
    g1 = read_graph(args.g1)
    g2 = read_graph(args.g2)
    if args.heuristic:
        val = cut_norm_lower_bound(g1, g2, seed=args.seed)
        mode = "heuristic-lower-bound"
    else:
        val = cut_norm(g1, g2)
        mode = "exact"
    out = {
        "command": "cutnorm",
        "g1": args.g1,
        "g2": args.g2,
        "n": g1.n,
        "mode": mode,
        "value": _fmt(val),
        "value_float": float(val),
    }
    return out, True


def _cmd_quotient(args):
    g = read_graph(args.infile)
    parts = _consecutive_parts(g.n, args.t)
    write_graph(quotient_graph(g, parts), args.out)
    out = {
        "command": "quotient",
        "in": args.infile,
        "t": args.t,
        "n": g.n,
        "out": args.out,
        "parts": "consecutive blocks of n/t vertices",
    }
    return out, True


def _cmd_density(args):
    h = read_hypergraph(args.infile)
    parts = _consecutive_parts(h.n, args.t)
    dv = density_vector(h, parts)
    write_vector_file(args.out, dv.t, dv.k, Fraction(0), dv.entries)
    out = {
        "command": "density",
        "in": args.infile,
        "t": args.t,
        "k": h.k,
        "n": h.n,
        "out": args.out,
        "parts": "consecutive blocks of n/t vertices",
        "entries": len(dv.entries),
    }
    return out, True


_HANDLERS = {
    ("rank", None): _cmd_rank,
    ("spectrum", None): _cmd_spectrum,
    ("goodfn", None): _cmd_goodfn,
    ("sample", None): _cmd_sample,
    ("verify", "identity"): _cmd_verify_identity,
    ("verify", "structure"): _cmd_verify_structure,
    ("verify", "cuts"): _cmd_verify_cuts,
    ("verify", "d1"): _cmd_verify_d1,
    ("solve", None): _cmd_solve,
    ("cutnorm", None): _cmd_cutnorm,
    ("quotient", None): _cmd_quotient,
    ("density", None): _cmd_density,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = _HANDLERS[(args.command, getattr(args, "suite", None))]
    try:
        report, passed = handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(report, args.format)
    return 0 if passed else 2


if __name__ == "__main__":
    sys.exit(main())
