"""Command-line interface.

Subcommands: selfcheck, verify {gauss|funceq|theta|lemma24|euler}, predict,
empirical, compare, sieve-info.  A flat key=value config file can seed any
flag; explicit flags win.  Exit codes: 0 success, 1 suite/validation failure,
2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _load_config(path: str) -> dict:
    out = {}
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {line!r}")
            k, v = line.split("=", 1)
            out[k.strip().replace("-", "_")] = v.strip()
    return out


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quadratios")
    p.add_argument("--config", help="flat key=value file; explicit flags override it")
    sub = p.add_subparsers(dest="command", required=True)

    sc = sub.add_parser("selfcheck", help="run all verification suites")
    sc.add_argument("--inject-fault", action="store_true", help="perturb a constant to prove the checks fail")

    vf = sub.add_parser("verify", help="run one verification suite")
    vf.add_argument("suite", choices=["gauss", "funceq", "theta", "lemma24", "euler"])

    def shift_flags(q, with_x=True):
        q.add_argument("--theorem", type=int, required=True, choices=[1, 2, 3, 4])
        q.add_argument("--alpha", type=float, default=None)
        q.add_argument("--beta", type=float, default=None)
        q.add_argument("--r", type=float, default=None)
        if with_x:
            q.add_argument("--X", type=float, required=True)

    pr = sub.add_parser("predict", help="closed-form main terms")
    shift_flags(pr)

    em = sub.add_parser("empirical", help="one smoothed empirical sum")
    shift_flags(em)
    em.add_argument("--threads", type=int, default=1)
    em.add_argument("--n-cap", type=int, default=0)
    em.add_argument("--tier", type=int, default=10_000)
    em.add_argument("--cache-path", default=None)

    cp = sub.add_parser("compare", help="empirical vs predicted over an X grid")
    shift_flags(cp, with_x=False)
    cp.add_argument("--x-grid", required=True, help="comma-separated ascending X values")
    cp.add_argument("--out", "--out-path", dest="out", required=True, help="report file path")
    cp.add_argument("--threads", type=int, default=1)
    cp.add_argument("--n-cap", type=int, default=0)
    cp.add_argument("--tier", type=int, default=10_000)
    cp.add_argument("--cache-path", default=None)

    si = sub.add_parser("sieve-info", help="sieve limits and table sizes")
    si.add_argument("--limit", type=int, default=None)
    return p


def _resolve_shifts(args) -> None:
    """Theorems 1/2 take (alpha, beta); 3/4 take r.  Anything else is usage."""
    if args.theorem in (1, 2):
        if args.r is not None:
            raise UsageError(f"theorem {args.theorem} takes --alpha/--beta, not --r")
        if args.alpha is None or args.beta is None:
            raise UsageError(f"theorem {args.theorem} needs both --alpha and --beta")
    else:
        if args.alpha is not None or args.beta is not None:
            raise UsageError(f"theorem {args.theorem} takes --r (not --alpha/--beta)")
        if args.r is None:
            raise UsageError(f"theorem {args.theorem} needs --r")


class UsageError(ValueError):
    pass


def _cfg_from_args(args, X: float):
    from .empirical import SweepConfig

    return SweepConfig(
        X=float(X),
        theorem=args.theorem,
        alpha=args.alpha or 0.0,
        beta=args.beta or 0.0,
        r=args.r or 0.0,
        n_cap=getattr(args, "n_cap", 0) or 0,
        tier=getattr(args, "tier", 10_000),
        workers=getattr(args, "threads", 1),
        cache_path=getattr(args, "cache_path", None),
    )


def _write_report(path: str, report, args) -> None:
    cols = "X,alpha_re,alpha_im,beta_re,beta_im,emp_re,emp_im,t1_re,t1_im,t2_re,t2_im,abs_err,rel_err"
    a = report.alpha if report.theorem in (1, 2) else report.r
    b = report.beta if report.theorem in (1, 2) else report.r
    lines = [cols]
    for row in report.rows:
        e, t1, t2 = row.empirical, row.term1, row.term2
        lines.append(
            f"{row.X:.17g},{a.real:.17g},{a.imag:.17g},{b.real:.17g},{b.imag:.17g},"
            f"{e.real:.17g},{e.imag:.17g},{t1.real:.17g},{t1.imag:.17g},"
            f"{t2.real:.17g},{t2.imag:.17g},{row.abs_err:.17g},{row.rel_err:.17g}"
        )
    lines.append(f"# theorem={report.theorem}")
    lines.append(f"# alpha={a.real:.17g}{a.imag:+.17g}j beta={b.real:.17g}{b.imag:+.17g}j")
    lines.append(f"# x_grid={','.join('%.17g' % r.X for r in report.rows)}")
    lines.append(f"# n_cap={getattr(args, 'n_cap', 0)} tier={getattr(args, 'tier', 10000)} threads={getattr(args, 'threads', 1)}")
    lines.append(f"# fitted_slope={report.fitted_slope:.17g}")
    lines.append(f"# theorem_exponent={report.theorem_exponent:.17g}")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


_CONFIG_TYPES = {
    "theorem": int,
    "alpha": float,
    "beta": float,
    "r": float,
    "X": float,
    "threads": int,
    "n_cap": int,
    "tier": int,
    "cache_path": str,
    "x_grid": str,
    "out": str,
    "limit": int,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # phase 1: pull out --config so its values can seed the real parser
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    pre_args, _ = pre.parse_known_args(argv)
    parser = _build_parser()
    if pre_args.config:
        try:
            raw = _load_config(pre_args.config)
        except (OSError, ValueError) as e:
            print(f"error: cannot read config: {e}", file=sys.stderr)
            return EXIT_IO
        seeded = {}
        for k, v in raw.items():
            if k in _CONFIG_TYPES:
                seeded[k] = _CONFIG_TYPES[k](v)
        for sub in parser._subparsers._group_actions[0].choices.values():
            for act in sub._actions:
                if act.dest in seeded:
                    sub.set_defaults(**{act.dest: seeded[act.dest]})
                    act.required = False
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        return _dispatch(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO


def _dispatch(args) -> int:
    from .selfcheck import run_suites

    if args.command == "selfcheck":
        ok = run_suites(inject_fault=args.inject_fault)
        return EXIT_OK if ok else EXIT_FAIL

    if args.command == "verify":
        ok = run_suites(names=[args.suite])
        return EXIT_OK if ok else EXIT_FAIL

    if args.command == "predict":
        _resolve_shifts(args)
        from .predict import predict_thm1, predict_thm2, predict_thm3, predict_thm4

        fn = {1: predict_thm1, 2: predict_thm2, 3: predict_thm3, 4: predict_thm4}[args.theorem]
        if args.theorem in (1, 2):
            pred = fn(args.X, args.alpha, args.beta)
        else:
            pred = fn(args.X, args.r)
        print(f"term1 = {pred.term1}")
        print(f"term2 = {pred.term2}")
        print(f"error_exponent = {pred.error_exponent}")
        return EXIT_OK

    if args.command == "empirical":
        _resolve_shifts(args)
        from .empirical import EMPIRICAL

        cfg = _cfg_from_args(args, args.X)
        val = EMPIRICAL[args.theorem](cfg)
        print(f"empirical = {val}")
        return EXIT_OK

    if args.command == "compare":
        _resolve_shifts(args)
        from .empirical import compare

        xs = [float(t) for t in args.x_grid.split(",")]
        cfg = _cfg_from_args(args, xs[0])
        report = compare(xs, cfg)
        _write_report(args.out, report, args)
        print(f"wrote {args.out} (fitted slope {report.fitted_slope:.4f}, exponent {report.theorem_exponent:.4f})")
        return EXIT_OK

    if args.command == "sieve-info":
        from .arith import DEFAULT_SIEVE_LIMIT, shared_sieve

        limit = args.limit or DEFAULT_SIEVE_LIMIT
        sv = shared_sieve(limit)
        print(f"limit = {sv.limit}")
        print(f"primes = {len(sv.primes())}")
        print(f"spf_bytes = {sv.spf.nbytes}")
        return EXIT_OK

    raise UsageError(f"unknown command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
