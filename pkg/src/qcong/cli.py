"""Command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 bad usage or config.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import congruence as ce
from .etaquot import EtaQuotient, modularity_verdict, sturm_bound
from .parity import bits_csv, parity_census, parity_recurrence
from .qproducts import (
    as_mod,
    cubic_partition_series,
    jacobi_cube_series,
    partition_series,
    qpochhammer_inf,
    triangular_series,
)
from .series import dump_csv

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

DEFAULT_PRECISION_CAP = 10**7

SERIES = {
    "cubic": cubic_partition_series,
    "partition": partition_series,
    "qpoch": lambda n, modulus=None: as_mod(qpochhammer_inf(1, n), modulus),
    "jacobi": lambda n, modulus=None: as_mod(jacobi_cube_series(n), modulus),
    "triangular": lambda n, modulus=None: as_mod(triangular_series(n), modulus),
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    precision: int = 1
    modulus: int | None = None
    output: str | None = None
    format: str = "json"
    params: dict[str, Any] = field(default_factory=dict)

    def validate(self) -> None:
        if self.precision < 1:
            raise UsageError(f"precision must be >= 1, got {self.precision}")
        if self.format not in ("json", "csv"):
            raise UsageError(f"format must be json or csv, got {self.format!r}")
        if self.modulus is not None and self.modulus < 2:
            raise UsageError(f"modulus must be >= 2, got {self.modulus}")
        cap = precision_cap()
        if self.precision > cap:
            raise UsageError(f"precision {self.precision} exceeds QCONG_PRECISION_CAP={cap}")


def precision_cap() -> int:
    raw = os.environ.get("QCONG_PRECISION_CAP")
    if not raw:
        return DEFAULT_PRECISION_CAP
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"QCONG_PRECISION_CAP is not an integer: {raw!r}") from None


def _dump(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cmd_coeffs(cfg: RunConfig) -> tuple[bool, str]:
    n = cfg.params["n"]
    s = SERIES[cfg.params["series"]](n + 1, modulus=cfg.modulus)
    if cfg.format == "csv":
        return True, dump_csv(s, n)
    return True, _dump({"series": cfg.params["series"], "modulus": cfg.modulus,
                        "coefficients": list(s.coeffs[:n + 1])})


def _cmd_verify(cfg: RunConfig) -> tuple[bool, str]:
    p = cfg.params
    claim = ce.CongruenceClaim(p["A"], p["B"], p["M"])
    s = cubic_partition_series(cfg.precision, modulus=p["M"])
    report = ce.verify_progression(s, claim, p["n_max"])
    return report.verdict, _dump(report.to_dict())


def _cmd_eta_check(cfg: RunConfig) -> tuple[bool, str]:
    eq = cfg.params["eta"]
    v = modularity_verdict(eq)
    out = {"eta_quotient": eq.to_dict(), **v.to_dict()}
    if v.weight.denominator == 1 and v.weight > 0:
        b = sturm_bound(int(v.weight), eq.level)
        out["sturm_bound"] = {"bound": str(b.exact), "floor": b.floor, "endpoint": b.endpoint}
    return v.is_modular_form, _dump(out)


def _cmd_sturm(cfg: RunConfig) -> tuple[bool, str]:
    b = sturm_bound(cfg.params["k"], cfg.params["N"])
    return True, _dump({"k": cfg.params["k"], "N": cfg.params["N"], "bound": str(b.exact),
                        "floor": b.floor, "endpoint": b.endpoint})


def _cmd_identities(cfg: RunConfig) -> tuple[bool, str]:
    steps = ce.identity_suite(cfg.precision)
    ok = all(s.ok for s in steps)
    return ok, _dump({"precision": cfg.precision, "steps": [s.to_dict() for s in steps],
                      "verdict": ok})


def _cmd_parity(cfg: RunConfig) -> tuple[bool, str]:
    n_max = cfg.params["n_max"]
    bits = parity_recurrence(n_max)
    if cfg.format == "csv":
        return True, bits_csv(bits)
    census = parity_census(n_max, cfg.params["thresholds"], bits)
    out = census.to_dict()
    out["both_parities_present"] = census.even_count > 0 and census.odd_count > 0
    return True, _dump(out)


def _cmd_pipeline(cfg: RunConfig) -> tuple[bool, str]:
    which = cfg.params["which"]
    if which == "mod5":
        reports = [ce.pipeline_mod5(max(cfg.precision, 900))]
    elif which == "mod7":
        reports = [ce.pipeline_mod7(max(cfg.precision, 49 * 600))]
    else:
        ks = cfg.params["k"] or [1, 2, 3, 4]
        reports = [ce.mod3_family_check(k, cfg.params["n_max"]) for k in ks]
    ok = all(r.verdict for r in reports)
    if len(reports) == 1:
        return ok, _dump(reports[0].to_dict())
    return ok, _dump({"reports": [r.to_dict() for r in reports], "verdict": ok})


COMMANDS = {
    "coeffs": _cmd_coeffs,
    "verify": _cmd_verify,
    "eta-check": _cmd_eta_check,
    "sturm": _cmd_sturm,
    "identities": _cmd_identities,
    "parity": _cmd_parity,
    "pipeline": _cmd_pipeline,
}


def run(cfg: RunConfig) -> int:
    """Execute one command, write its artifact, return the exit status."""
    cfg.validate()
    ok, text = COMMANDS[cfg.command](cfg)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcong", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the artifact here instead of stdout")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", parents=[common], help="dump coefficients of a named series")
    p.add_argument("--series", choices=sorted(SERIES), default="cubic")
    p.add_argument("--n", type=int, required=True, help="last index to print")
    p.add_argument("--modulus", type=int)

    p = sub.add_parser("verify", parents=[common], help="check a(An+B) = 0 mod M")
    p.add_argument("--A", type=int, required=True)
    p.add_argument("--B", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)

    p = sub.add_parser("eta-check", parents=[common], help="modularity verdict for an eta quotient")
    p.add_argument("source", help='JSON file, "-" for stdin, or an inline JSON object')

    p = sub.add_parser("sturm", parents=[common], help="Sturm bound for weight k, level N")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", type=int, required=True)

    p = sub.add_parser("identities", parents=[common], help="run the identity suite")
    p.add_argument("--precision", type=int, default=500)

    p = sub.add_parser("parity", parents=[common], help="parity of a(n) via the mod-2 recurrence")
    p.add_argument("--n-max", type=int, default=10**4)
    p.add_argument("--thresholds", type=int, nargs="*", default=[0, 100, 1000])

    p = sub.add_parser("pipeline", parents=[common], help="end-to-end congruence proofs")
    p.add_argument("which", choices=["mod5", "mod7", "mod3k"])
    p.add_argument("--precision", type=int, default=1)
    p.add_argument("--k", type=int, nargs="*", help="family indices for mod3k (default 1..4)")
    p.add_argument("--n-max", type=int, default=500)
    return parser


def _read_eta(source: str) -> EtaQuotient:
    if source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith("{"):
        text = source
    else:
        with open(source) as fh:
            text = fh.read()
    try:
        return EtaQuotient.from_json(text)
    except (ValueError, KeyError, TypeError, AttributeError) as exc:
        raise UsageError(f"bad eta-quotient input: {exc}") from None


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cmd = ns.command
    cfg = RunConfig(cmd, output=ns.output, format=ns.format)
    if cmd == "coeffs":
        if ns.n < 0:
            raise UsageError("--n must be non-negative")
        cfg.precision = ns.n + 1
        cfg.modulus = ns.modulus
        cfg.params = {"series": ns.series, "n": ns.n}
    elif cmd == "verify":
        if ns.n_max < 0:
            raise UsageError("--n-max must be non-negative")
        try:
            ce.CongruenceClaim(ns.A, ns.B, ns.M)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        cfg.precision = ns.A * (ns.n_max + 1) + ns.B + 1
        cfg.modulus = ns.M
        cfg.params = {"A": ns.A, "B": ns.B, "M": ns.M, "n_max": ns.n_max}
    elif cmd == "eta-check":
        cfg.params = {"eta": _read_eta(ns.source)}
    elif cmd == "sturm":
        if ns.k < 1 or ns.N < 1:
            raise UsageError("--k and --N must be positive")
        cfg.params = {"k": ns.k, "N": ns.N}
    elif cmd == "identities":
        cfg.precision = ns.precision
    elif cmd == "parity":
        if ns.n_max < 0:
            raise UsageError("--n-max must be non-negative")
        cfg.precision = ns.n_max + 1
        cfg.params = {"n_max": ns.n_max, "thresholds": ns.thresholds}
    elif cmd == "pipeline":
        if ns.which == "mod3k":
            ks = ns.k or [1, 2, 3, 4]
            if any(k < 1 or k > 6 for k in ks):
                raise UsageError("--k values must lie in 1..6")
            cfg.precision = max(3**k * (ns.n_max + 2) + 3**k for k in ks)
        else:
            cfg.precision = max(ns.precision, 900 if ns.which == "mod5" else 49 * 600)
        cfg.params = {"which": ns.which, "k": ns.k, "n_max": ns.n_max}
    if cfg.format == "csv" and cmd not in ("coeffs", "parity"):
        raise UsageError(f"{cmd} only produces json")
    return cfg


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return run(config_from_args(ns))
    except UsageError as exc:
        parser.error(str(exc))  # exits with EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
