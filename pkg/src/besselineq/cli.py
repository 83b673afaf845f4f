"""Command-line interface: ``besselineq {eval,integral,verify,sharp,tables}``.

Settings come from flags, then from a ``key=value`` file given with
``--config``, then from built-in defaults.  Exit codes: 0 success, 1
violations found, 2 domain error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import integrals as ig
from . import registry as reg
from . import report
from . import sharp
from . import specfun as sf
from . import tables
from .scaled import DomainError, Status, format_scaled

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_DOMAIN = 2
EXIT_IO = 3

DEFAULTS = {
    "tol": "1e-9",
    "format": "csv",
    "suite": "all",
    "which": "1,2",
    "const": "a",
    "expr": "open3",
    "x_max": "500",
    "family": "lower_i",
}


class CliError(Exception):
    def __init__(self, message: str, code: int) -> None:
        super().__init__(message)
        self.code = code


def read_config(path: str) -> dict[str, str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc}", EXIT_IO) from exc
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise CliError(f"{path}:{lineno}: expected key=value", EXIT_DOMAIN)
        out[key.strip().replace("-", "_")] = value.strip()
    return out


class Settings:
    """Flag value if given, else config value, else default."""

    def __init__(self, args: argparse.Namespace, config: dict[str, str]) -> None:
        self.args = args
        self.config = config

    def get(self, key: str, default: str | None = None) -> str | None:
        v = getattr(self.args, key, None)
        if v is not None and v is not False:
            return v
        if key in self.config:
            return self.config[key]
        return DEFAULTS.get(key, default)

    def flag(self, key: str) -> bool:
        if getattr(self.args, key, False):
            return True
        return self.config.get(key, "").lower() in ("1", "true", "yes", "on")

    def real(self, key: str, required: bool = False) -> float | None:
        v = self.get(key)
        if v is None:
            if required:
                raise CliError(f"--{key.replace('_', '-')} is required", EXIT_DOMAIN)
            return None
        try:
            return float(v)
        except ValueError:
            raise CliError(f"--{key}: not a number: {v!r}", EXIT_DOMAIN) from None

    def reals(self, key: str) -> tuple[float, ...] | None:
        v = self.get(key)
        if v is None:
            return None
        try:
            return tuple(float(s) for s in str(v).split(",") if s.strip())
        except ValueError:
            raise CliError(f"--{key}: expected comma-separated numbers, got {v!r}", EXIT_DOMAIN) from None

    def drift(self) -> float | None:
        """--beta, or minus --gamma."""
        b, g = self.real("beta"), self.real("gamma")
        if b is not None and g is not None:
            raise CliError("give either --beta or --gamma", EXIT_DOMAIN)
        return -g if g is not None else b


def _emit(text: str, out: str | None) -> None:
    if not out:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc}", EXIT_IO) from exc


# ---------------------------------------------------------------------------
# commands


def cmd_eval(s: Settings) -> int:
    func = (s.get("func") or "").upper()
    x = s.real("x", required=True)
    scaled = s.flag("scaled")
    if func == "GAMMA":
        res = sf.gamma(x)
    else:
        nu = s.real("nu", required=True)
        fn = {"I": sf.bessel_i, "K": sf.bessel_k, "L": sf.struve_l}.get(func)
        if fn is None:
            raise CliError(f"unknown function {func!r} (I, K, L, gamma)", EXIT_DOMAIN)
        res = fn(nu, x, scaled)
    if res.status is Status.OUT_OF_DOMAIN:
        print("status=out_of_domain")
        return EXIT_DOMAIN
    print(f"value={format_scaled(res.value, 15)} abs_err={res.abs_err:.3g} status={res.status.value}")
    return EXIT_OK


def cmd_integral(s: Settings) -> int:
    family = s.get("family")
    nu = s.real("nu", required=True)
    beta = s.drift()
    beta = 0.0 if beta is None else beta
    if family == "full_line_k":
        res = ig.full_line_k(nu, beta)
    elif family == "i_nu_beta":
        res = ig.i_nu_beta(nu, beta)
    elif family in ("lower_i", "upper_k"):
        p = s.real("power")
        spec = ig.IntegralSpec(ig.Family(family), nu, beta, nu if p is None else p, s.real("x", required=True))
        res = ig.int_lower_i(spec) if family == "lower_i" else ig.int_upper_k(spec)
    else:
        raise CliError(f"unknown family {family!r}", EXIT_DOMAIN)
    if res.status is Status.OUT_OF_DOMAIN:
        print("status=out_of_domain")
        return EXIT_DOMAIN
    print(f"value={format_scaled(res.value, 15)} abs_err={res.abs_err:.3g} status={res.status.value}")
    return EXIT_OK


def _grid(s: Settings) -> reg.GridSpec:
    base = reg.GridSpec.default()
    betas = s.reals("beta")
    gammas = s.reals("gamma")
    if betas is not None and gammas is not None:
        raise CliError("give either --beta or --gamma", EXIT_DOMAIN)
    if gammas is not None:
        betas = tuple(-g for g in gammas)
    try:
        return reg.GridSpec(
            nu=s.reals("nu") or base.nu,
            beta=betas or base.beta,
            x=s.reals("x") or base.x,
            n=s.reals("n") or base.n,
        )
    except ValueError as exc:
        raise CliError(str(exc), EXIT_DOMAIN) from exc


def cmd_verify(s: Settings) -> int:
    tol = s.real("tol")
    if not tol or tol <= 0:
        raise CliError("--tol must be positive", EXIT_DOMAIN)
    cases = None
    if s.get("case"):
        cases = [c.strip() for c in s.get("case").split(",") if c.strip()]
        unknown = [c for c in cases if c not in {k.id for k in reg.list_cases()}]
        if unknown:
            raise CliError(f"unknown case id(s): {', '.join(unknown)}", EXIT_DOMAIN)
    elif s.get("suite") != "all":
        raise CliError("--suite accepts only 'all'; use --case for a subset", EXIT_DOMAIN)
    rep = reg.verify_suite(_grid(s), tol, cases)
    fmt = s.get("format")
    text = report.records_json(rep.records) if fmt == "json" else report.records_csv(rep.records)
    out = s.get("out")
    _emit(text, out)
    msg = f"{len(rep.records)} records, {len(rep.violations)} violations (tol={tol:g})"
    print(msg, file=sys.stderr if not out else sys.stdout)
    for r in rep.violations[:20]:
        print(f"  violation {r.id} {r.params.as_dict()} rel_margin={r.rel_margin:.3e}", file=sys.stderr)
    return EXIT_VIOLATIONS if rep.violations else EXIT_OK


def cmd_sharp(s: Settings) -> int:
    kind = s.get("const")
    nu = s.real("nu", required=True)
    if kind == "a":
        est = sharp.estimate_a(nu)
    elif kind == "b":
        est = sharp.estimate_b(nu)
    elif kind == "sup":
        beta = s.drift()
        if beta is None:
            raise CliError("--beta (or --gamma) is required for --const sup", EXIT_DOMAIN)
        est = sharp.empirical_sup(s.get("expr"), nu, beta, s.real("x_max"))
    else:
        raise CliError(f"unknown constant {kind!r} (a, b, sup)", EXIT_DOMAIN)
    _emit(report.dump_json(report.estimate_dict(est)), s.get("out"))
    return EXIT_OK


def cmd_tables(s: Settings) -> int:
    which = [tables.Table.parse(w) for w in str(s.get("which")).split(",") if w.strip()]
    compare = s.flag("compare")
    result = {w.value: tables.reproduce_table(w) for w in which}
    if s.get("format") == "json":
        text = report.cells_json(result, compare)
    else:
        text = report.cells_csv([c for cells in result.values() for c in cells], compare)
    _emit(text, s.get("out"))
    if compare:
        worst = max(tables.max_reference_diff(c) for c in result.values())
        print(f"max |diff| = {worst:.1e} (band {tables.COMPARE_BAND:g})", file=sys.stderr)
        if not worst <= tables.COMPARE_BAND + 1e-12:
            return EXIT_VIOLATIONS
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _shared(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value settings file (flags take precedence)")
    p.add_argument("--nu")
    p.add_argument("--beta", help="drift in e^{beta t}")
    p.add_argument("--gamma", help="decay rate, same as --beta=-gamma")
    p.add_argument("--x")
    p.add_argument("--power", help="exponent p of t^p in the integrand")
    p.add_argument("--n", help="order shift n")
    p.add_argument("--tol")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--compare", action="store_true", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="besselineq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate Gamma, I, K or L")
    _shared(p)
    p.add_argument("--func", help="I, K, L or gamma")
    p.add_argument("--scaled", action="store_true", default=None)
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("integral", help="evaluate a weighted Bessel integral")
    _shared(p)
    p.add_argument("--family", choices=("lower_i", "upper_k", "full_line_k", "i_nu_beta"))
    p.set_defaults(handler=cmd_integral)

    p = sub.add_parser("verify", help="check registered inequalities on a grid")
    _shared(p)
    p.add_argument("--suite", help="'all' (default)")
    p.add_argument("--case", help="comma-separated case ids")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("sharp", help="estimate a_nu, b_nu or an empirical supremum")
    _shared(p)
    p.add_argument("--const", choices=("a", "b", "sup"))
    p.add_argument("--expr", choices=("open1", "open3"))
    p.add_argument("--x-max", dest="x_max")
    p.set_defaults(handler=cmd_sharp)

    p = sub.add_parser("tables", help="reproduce the relative-error tables")
    _shared(p)
    p.add_argument("--which", help="1, 2 or 1,2")
    p.set_defaults(handler=cmd_tables)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = read_config(args.config) if args.config else {}
        return args.handler(Settings(args, config))
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (DomainError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
