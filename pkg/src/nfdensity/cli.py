"""Command-line driver: ``nfdensity {split,zeta,density,verify,quadrant}``.

Every command prints one JSON document (or a CSV projection of it) that
carries the configuration needed to reproduce it.

Exit codes: 0 success, 2 verification mismatch, 3 non-maximal order,
4 budget exceeded, 5 parse/usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import shlex
import sys
from dataclasses import dataclass, field
from typing import Sequence

from .density import (CSV_HEADER, DEFAULT_BUDGET, BoxSpec, BudgetExceeded, Mode, PrimeSet,
                      density_convergence_table, empirical_density_E, empirical_density_ES,
                      exact_count_ES, exact_density_ES, lattice_count_check, quadrant_count)
from .number_field import IntegralBasis, NumberFieldOrder
from .polynomials import PolynomialParseError, parse_polynomial
from .primes import primes_upto
from .splitting import NonMaximalAtP, assert_maximal, prime_ideal, split_prime
from .zeta import ZetaPoleError, reciprocal_density, zeta_K

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_NONMAXIMAL = 3
EXIT_BUDGET = 4
EXIT_PARSE = 5


class UsageError(Exception):
    pass


@dataclass
class ExperimentConfig:
    command: str
    poly: str
    basis: list[list[int]] | None = None
    m: int = 2
    B: list[int] = field(default_factory=list)
    primes: list[int] | None = None
    t: list[int] | None = None
    q: int = 1
    mode: str = "exhaustive"
    samples: int | None = None
    seed: int | None = None
    P: int = 100000
    upto: int | None = None
    budget: int = DEFAULT_BUDGET
    format: str = "json"
    output: str | None = None
    threads: int | None = None
    lattice_B: list[int] = field(default_factory=list)
    lattice_bound: float = 8.0

    def argv(self) -> list[str]:
        """A command line reproducing this run."""
        out = ["nfdensity", self.command, "--poly", self.poly]
        if self.basis is not None:
            out += ["--basis", ";".join(",".join(map(str, r)) for r in self.basis)]
        if self.command == "split":
            out += ["--upto", str(self.upto)]
        if self.command == "zeta":
            out += ["-m", str(self.m), "-P", str(self.P)]
        if self.command in ("density", "verify"):
            out += ["-m", str(self.m)]
        if self.command in ("density", "quadrant") and self.B:
            out += ["-B", ",".join(map(str, self.B))]
        if self.command == "density":
            out += ["--mode", self.mode, "-P", str(self.P), "--budget", str(self.budget)]
            if self.mode == "sampled":
                out += ["--samples", str(self.samples), "--seed", str(self.seed)]
            if self.t is not None:
                out += ["--t", ",".join(map(str, self.t)), "-q", str(self.q)]
        if self.primes is not None:
            out += ["--set", ",".join(map(str, self.primes))]
        if self.command == "verify":
            out += ["-q", str(self.q), "--lattice-B", ",".join(map(str, self.lattice_B)),
                    "--lattice-bound", str(self.lattice_bound), "--budget", str(self.budget)]
        return out

    def provenance(self) -> dict:
        return {"command": shlex.join(self.argv()), "poly": self.poly, "m": self.m, "B": self.B,
                "mode": self.mode, "seed": self.seed, "P": self.P}


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _matrix(text: str) -> list[list[int]]:
    """Row-major integer matrix: rows separated by ';', entries by ','."""
    return [_int_list(r) for r in text.split(";") if r.strip()]


def _order(cfg: ExperimentConfig) -> NumberFieldOrder:
    f = parse_polynomial(cfg.poly)
    order = NumberFieldOrder(f)
    if cfg.basis is not None:
        try:
            order = order.with_basis(IntegralBasis.from_elements(cfg.basis))
        except ValueError as exc:
            raise UsageError(f"bad basis: {exc}") from exc
    return order


# ---------------------------------------------------------------------------
# commands


def cmd_split(cfg: ExperimentConfig) -> tuple[dict, int]:
    order = _order(cfg)
    rows = []
    for p in primes_upto(cfg.upto or 100):
        s = split_prime(order, p)
        rows.append({"p": p, "factors": [[e, d] for e, d in s.ed_pairs()],
                     "lambda_p": s.lambda_p, "D_p": s.D_p})
    return {"poly": str(order.poly), "degree": order.n, "disc": order.disc,
            "rows": rows, "provenance": cfg.provenance()}, EXIT_OK


def cmd_zeta(cfg: ExperimentConfig) -> tuple[dict, int]:
    order = _order(cfg)
    est = zeta_K(order, cfg.m, cfg.P)
    recip, err = reciprocal_density(est)
    doc = est.to_json()
    doc.update({"reciprocal": str(recip), "reciprocal_bound": str(err), "poly": str(order.poly),
                "provenance": cfg.provenance()})
    return doc, EXIT_OK


def cmd_density(cfg: ExperimentConfig) -> tuple[dict, int]:
    order = _order(cfg)
    if not cfg.B and cfg.t is None:
        raise UsageError("density needs -B (or --t for E_S rows)")
    mode = Mode(cfg.mode)
    if mode is Mode.SAMPLED and (cfg.samples is None or cfg.seed is None):
        raise UsageError("sampled mode requires --samples and --seed")
    doc: dict = {"poly": str(order.poly), "provenance": cfg.provenance()}
    if cfg.m >= 2:
        est = zeta_K(order, cfg.m, cfg.P)
        recip, err = reciprocal_density(est)
        doc["reference"] = {"value": str(recip), "bound": str(err), "P": cfg.P}
    else:
        doc["reference"] = {"value": "0", "bound": "0"}
        doc["note"] = ("m = 1: coprime 1-tuples are the units, which have density zero in any "
                       "basis since zeta_K has a pole at 1")
    common = dict(sample_count=cfg.samples, seed=cfg.seed, budget=cfg.budget, workers=cfg.threads)
    if cfg.t is not None:
        rows = density_convergence_table(order, cfg.m, cfg.B or None, cfg.t, q=cfg.q, mode=mode, P=cfg.P,
                                         **common)
        doc["table"] = [r.to_json() for r in rows]
    elif cfg.primes is not None:
        reports = [empirical_density_ES(order, BoxSpec(B, cfg.m, order), PrimeSet(tuple(cfg.primes)),
                                        mode, **common) for B in cfg.B]
        doc["reports"] = [r.to_json() for r in reports]
        doc["exact_density_ES"] = str(exact_density_ES(order, cfg.primes, cfg.m))
    elif len(cfg.B) == 1:
        doc["report"] = empirical_density_E(order, BoxSpec(cfg.B[0], cfg.m, order), mode, **common).to_json()
    else:
        rows = density_convergence_table(order, cfg.m, cfg.B, mode=mode, P=cfg.P, **common)
        doc["table"] = [r.to_json() for r in rows]
    return doc, EXIT_OK


def cmd_verify(cfg: ExperimentConfig) -> tuple[dict, int]:
    order = _order(cfg)
    if not cfg.primes:
        raise UsageError("verify needs --set")
    assert_maximal(order)
    S = PrimeSet(tuple(cfg.primes))
    B = cfg.q * S.N
    box = BoxSpec(B, cfg.m, order)
    checks = []

    def run(name, fn):
        try:
            ok, detail = fn()
            checks.append({"check": name, "status": "PASS" if ok else "FAIL", "detail": detail})
        except BudgetExceeded as exc:
            checks.append({"check": name, "status": "BUDGET", "detail": str(exc)})

    def exact_count():
        formula = exact_count_ES(order, S, cfg.q, cfg.m)
        counted = empirical_density_ES(order, box, S, Mode.EXHAUSTIVE, budget=cfg.budget,
                                       workers=cfg.threads).hits
        return counted == formula, f"{counted} = {formula}" if counted == formula else f"{counted} != {formula}"

    def exact_density():
        exact = exact_density_ES(order, S, cfg.m)
        est = empirical_density_ES(order, box, S, Mode.EXHAUSTIVE, budget=cfg.budget,
                                   workers=cfg.threads).estimate
        return est == exact, f"a_qN = {est}, D = {exact}"

    run("exact_count_ES", exact_count)
    run("exact_density_ES", exact_density)
    for p in S:
        split = split_prime(order, p)
        for j in range(split.lambda_p):
            ideal = prime_ideal(order, split, j)
            for LB in cfg.lattice_B:
                def lattice(ideal=ideal, LB=LB):
                    chk = lattice_count_check(order, ideal, LB, budget=cfg.budget)
                    ok = chk.normalized <= cfg.lattice_bound
                    return ok, chk.to_json()
                run(f"lattice p={p} j={j} B={LB}", lattice)
    statuses = {c["status"] for c in checks}
    code = EXIT_MISMATCH if "FAIL" in statuses else EXIT_BUDGET if "BUDGET" in statuses else EXIT_OK
    return {"poly": str(order.poly), "S": list(S), "q": cfg.q, "m": cfg.m, "checks": checks,
            "verdict": "PASS" if code == EXIT_OK else "FAIL", "provenance": cfg.provenance()}, code


def cmd_quadrant(cfg: ExperimentConfig) -> tuple[dict, int]:
    order = _order(cfg)
    rows = [{"B": B, "count": quadrant_count(order, B)} for B in cfg.B]
    return {"poly": str(order.poly), "basis": order.basis.fingerprint(), "rows": rows,
            "provenance": cfg.provenance()}, EXIT_OK


COMMANDS = {"split": cmd_split, "zeta": cmd_zeta, "density": cmd_density,
            "verify": cmd_verify, "quadrant": cmd_quadrant}


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nfdensity", description="Densities of coprime tuples of algebraic integers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--poly", required=True, help='defining polynomial, e.g. "x^3 - x - 1"')
        sp.add_argument("--basis", help='basis elements in power coordinates, rows ";"-separated')
        sp.add_argument("--format", choices=["json", "csv"], default="json")
        sp.add_argument("--output", help="write to this path instead of stdout")
        sp.add_argument("--threads", type=int, default=None)
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    sp = sub.add_parser("split", help="splitting of rational primes")
    common(sp)
    sp.add_argument("--upto", type=int, default=100)

    sp = sub.add_parser("zeta", help="truncated Euler product for zeta_K(m)")
    common(sp)
    sp.add_argument("-m", type=int, default=2)
    sp.add_argument("-P", type=int, default=100000)

    sp = sub.add_parser("density", help="empirical density of coprime tuples")
    common(sp)
    sp.add_argument("-m", type=int, default=2)
    sp.add_argument("-B", default="", help="box bound or comma-separated schedule")
    sp.add_argument("--mode", choices=[m.value for m in Mode], default="exhaustive")
    sp.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--set", dest="primes", help="prime set S for E_S, comma-separated")
    sp.add_argument("--t", help="schedule of t for S_t = first t primes")
    sp.add_argument("-q", type=int, default=1)
    sp.add_argument("-P", type=int, default=100000)

    sp = sub.add_parser("verify", help="exact-count, exact-density and lattice checks")
    common(sp)
    sp.add_argument("--set", dest="primes", required=True)
    sp.add_argument("-q", type=int, default=1)
    sp.add_argument("-m", type=int, default=2)
    sp.add_argument("--lattice-B", default="20,40,80")
    sp.add_argument("--lattice-bound", type=float, default=8.0)

    sp = sub.add_parser("quadrant", help="quadrant counts in Z[i] for a chosen basis")
    common(sp)
    sp.add_argument("-B", default="5,50,500")
    return parser


def config_from_args(ns: argparse.Namespace) -> ExperimentConfig:
    cfg = ExperimentConfig(command=ns.command, poly=ns.poly)
    cfg.basis = _matrix(ns.basis) if ns.basis else None
    cfg.format, cfg.output, cfg.threads, cfg.budget = ns.format, ns.output, ns.threads, ns.budget
    for name in ("m", "P", "q", "mode", "samples", "seed", "upto", "lattice_bound"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    if getattr(ns, "B", ""):
        cfg.B = _int_list(ns.B)
    if getattr(ns, "primes", None):
        cfg.primes = _int_list(ns.primes)
    if getattr(ns, "t", None):
        cfg.t = _int_list(ns.t)
    if getattr(ns, "lattice_B", None):
        cfg.lattice_B = _int_list(ns.lattice_B)
    return cfg


def _to_csv(doc: dict) -> str:
    if "table" in doc:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
        w.writeheader()
        w.writerows(doc["table"])
        return buf.getvalue()
    if "rows" in doc and doc["rows"] and "factors" in doc["rows"][0]:
        lines = ["p,factors,lambda_p,D_p"]
        for r in doc["rows"]:
            fac = " ".join(f"{e}:{d}" for e, d in r["factors"])
            lines.append(f"{r['p']},{fac},{r['lambda_p']},{r['D_p']}")
        return "\n".join(lines) + "\n"
    raise UsageError("this command has no CSV projection; use --format json")


def _emit(text: str, output: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(code: int, kind: str, message: str, **extra) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message, **extra}) + "\n")
    return code


def main(argv: Sequence[str] | None = None) -> int:
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    try:
        cfg = config_from_args(ns)
        doc, code = COMMANDS[cfg.command](cfg)
        text = _to_csv(doc) if cfg.format == "csv" else json.dumps(doc, indent=2)
        _emit(text, cfg.output)
        return code
    except NonMaximalAtP as exc:
        return _fail(EXIT_NONMAXIMAL, "NonMaximalAtP", str(exc), p=exc.p)
    except BudgetExceeded as exc:
        return _fail(EXIT_BUDGET, "BudgetExceeded",
                     f"{exc}; raise --budget or use --mode sampled --samples N --seed S",
                     needed=exc.needed, budget=exc.budget)
    except ZetaPoleError as exc:
        return _fail(EXIT_PARSE, "Pole", str(exc))
    except (PolynomialParseError, UsageError) as exc:
        return _fail(EXIT_PARSE, "ParseError", str(exc))
    except ValueError as exc:
        return _fail(EXIT_PARSE, "InvalidInput", str(exc))


if __name__ == "__main__":
    sys.exit(main())
