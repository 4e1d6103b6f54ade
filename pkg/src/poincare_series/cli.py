"""Command-line interface: ``poincare-series {poincare,selfcheck,reconstruct}``.

Exit statuses: 0 success, 1 usage error, 2 check failed (the two methods
disagree, a selfcheck suite failed, or no rational form fits), 3 internal
error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import binary, checks, kernels, ternary
from .reconstruct import format_polynomial, guess_rational_form

log = logging.getLogger("poincare_series")

CACHE_ENV = "POINCARE_SERIES_CACHE"
EXIT_OK, EXIT_USAGE, EXIT_DISAGREE, EXIT_INTERNAL = 0, 1, 2, 3
INT64_MAX = 2**63 - 1


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunRequest:
    arity: int
    degree: int
    order: int
    method: str = "both"
    region: Optional[str] = None
    sum_range: str = "full"
    format: str = "plain"
    cache_dir: Optional[str] = None

    def validate(self):
        if self.arity not in (2, 3):
            raise UsageError(f"arity must be 2 or 3, got {self.arity}")
        if self.degree < 1:
            raise UsageError(f"degree must be >= 1, got {self.degree}")
        if self.order < 0:
            raise UsageError(f"order must be >= 0, got {self.order}")
        if self.method not in ("oracle", "closed", "both"):
            raise UsageError(f"unknown method {self.method!r}")
        if self.arity == 2 and self.region is not None:
            raise UsageError("--region only applies to ternary forms (--arity 3)")
        if self.region is not None and self.region not in ternary.REGIONS:
            raise UsageError(f"unknown region {self.region!r}")
        if self.sum_range not in ternary.SUM_RANGES:
            raise UsageError(f"unknown sum range {self.sum_range!r}")

    @property
    def effective_region(self) -> Optional[str]:
        if self.arity == 2:
            return None
        return self.region or ternary.DEFAULT_REGION


@dataclass
class RunReport:
    request: RunRequest
    coefficients: List[int]
    per_method: Dict[str, List[int]] = field(default_factory=dict)
    agreement: Optional[bool] = None
    elapsed_ms: Dict[str, int] = field(default_factory=dict)
    region: Optional[str] = None

    def to_json_dict(self) -> dict:
        big = any(abs(c) > INT64_MAX for c in self.coefficients)
        coeffs = [str(c) for c in self.coefficients] if big else list(self.coefficients)
        return {
            "arity": self.request.arity,
            "degree": self.request.degree,
            "order": self.request.order,
            "method": self.request.method,
            "region": self.region,
            "coefficients": coeffs,
            "agreement": self.agreement,
            "elapsed_ms": dict(self.elapsed_ms),
        }


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed separators."""
    return json.dumps(obj, sort_keys=True, separators=(", ", ": "))


class ResultCache:
    """One JSON file per computation key; writes go through a temp file and rename."""

    def __init__(self, directory):
        self.directory = Path(directory)

    @staticmethod
    def key(arity, degree, order, path, region, sum_range) -> dict:
        if path == "oracle":
            region, sum_range = None, None
        elif arity == 2:
            region, sum_range = None, None
        return {
            "arity": arity,
            "degree": degree,
            "order": order,
            "method": path,
            "region": region,
            "sum_range": sum_range,
        }

    def _file(self, key: dict) -> Path:
        name = "p{arity}_d{degree}_n{order}_{method}_{region}_{sum_range}.json".format(
            **{k: ("none" if v is None else v) for k, v in key.items()}
        )
        return self.directory / name

    def get(self, key: dict) -> Optional[List[int]]:
        path = self._file(key)
        if not path.exists():
            return None
        try:
            data = json.loads(path.read_text())
            if data.get("key") != key:
                raise ValueError("key mismatch")
            coeffs = [int(c) for c in data["coefficients"]]
            if len(coeffs) != key["order"] + 1:
                raise ValueError("wrong length")
        except (ValueError, KeyError, TypeError) as exc:
            print(f"warning: ignoring corrupt cache entry {path}: {exc}", file=sys.stderr)
            return None
        return coeffs

    def put(self, key: dict, coeffs: Sequence[int]):
        self.directory.mkdir(parents=True, exist_ok=True)
        payload = dumps({"key": key, "coefficients": [str(c) for c in coeffs]})
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(payload)
            os.replace(tmp, self._file(key))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def _compute(request: RunRequest, path: str) -> List[int]:
    d, n = request.degree, request.order
    if request.arity == 2:
        fn = binary.poincare_binary_oracle if path == "oracle" else binary.poincare_binary_springer
        return list(fn(d, n))
    if path == "oracle":
        return list(ternary.poincare_ternary_oracle(d, n))
    return list(
        ternary.poincare_ternary_springer(
            d, n, request.effective_region, sum_range=request.sum_range
        )
    )


def cmd_poincare(request: RunRequest) -> RunReport:
    """Compute the requested Poincare series, through the cache when one is configured."""
    request.validate()
    cache_dir = request.cache_dir or os.environ.get(CACHE_ENV)
    cache = ResultCache(cache_dir) if cache_dir else None
    paths = ["oracle", "closed"] if request.method == "both" else [request.method]
    per_method = {}
    elapsed = {}
    for path in paths:
        start = time.perf_counter()
        key = ResultCache.key(
            request.arity, request.degree, request.order, path,
            request.effective_region, request.sum_range,
        )
        coeffs = cache.get(key) if cache else None
        if coeffs is None:
            coeffs = _compute(request, path)
            if cache:
                cache.put(key, coeffs)
        per_method[path] = coeffs
        elapsed[path] = int(round((time.perf_counter() - start) * 1000))
    agreement = None
    if request.method == "both":
        agreement = per_method["oracle"] == per_method["closed"]
    return RunReport(
        request=request,
        coefficients=per_method[paths[-1]] if request.method != "both" else per_method["oracle"],
        per_method=per_method if request.method == "both" else {},
        agreement=agreement,
        elapsed_ms=elapsed,
        region=request.effective_region,
    )


def render_report(report: RunReport, fmt: str, exponents: Optional[List[int]] = None) -> str:
    req = report.request
    fit = guess_rational_form(report.coefficients, exponents) if exponents else None
    if fmt == "json":
        return dumps(report.to_json_dict())
    if fmt == "latex":
        body = format_polynomial(report.coefficients, "latex")
        line = rf"P_{{{req.arity},{req.degree}}}(T) = {body} + O(T^{{{req.order + 1}}})"
        if fit is not None:
            line += "\n" + rf"P_{{{req.arity},{req.degree}}}(T) = {fit.format('latex')}"
        return line
    lines = [
        f"P_{{{req.arity},{req.degree}}}(T) up to T^{req.order} [method={req.method}"
        + (f", region={report.region}" if report.region else "")
        + "]",
        "coefficients: " + " ".join(str(c) for c in report.coefficients),
        "series: " + format_polynomial(report.coefficients),
    ]
    if report.agreement is not None:
        lines.append(f"agreement: {str(report.agreement).lower()}")
        if not report.agreement:
            for path, coeffs in report.per_method.items():
                lines.append(f"  {path}: " + " ".join(str(c) for c in coeffs))
    if exponents:
        lines.append(f"rational form: {fit}" if fit else f"rational form: no fit with exponents {exponents}")
    lines.append("elapsed_ms: " + " ".join(f"{k}={v}" for k, v in sorted(report.elapsed_ms.items())))
    return "\n".join(lines)


# selfcheck -------------------------------------------------------------------


def selfcheck_suites(region_name: str, form: str, sum_range: str, seed: int = 0):
    rng = random.Random(seed)
    return [
        ("roots-of-unity section average", lambda: checks.roots_of_unity_suite(rng, trials=20)),
        ("Psi via univariate section", lambda: checks.psi_suite(rng, trials=40)),
        ("Phi via Phi-hat section", lambda: checks.phi_hat_suite(rng, trials=20)),
        ("binary partial fractions d<=8", lambda: checks.binary_partial_fractions(range(1, 9))),
        (
            f"ternary partial fractions d<=3 [{region_name}]",
            lambda: checks.ternary_partial_fractions(range(1, 4), 4, 20, region_name),
        ),
        ("binary closed form == oracle d<=12", lambda: checks.binary_agreement(range(2, 13), 20)),
        (
            f"ternary closed form == oracle d<=5 [{form}, {region_name}, {sum_range} range]",
            lambda: checks.ternary_agreement(range(1, 6), 9, region_name, form, sum_range),
        ),
        ("rational form round trip", lambda: checks.reconstruct_roundtrip(rng, trials=10)),
    ]


def cmd_selfcheck(region_name=None, form="proof", sum_range="full", seed=0, out=None) -> int:
    out = out or sys.stdout
    region_name = region_name or ternary.DEFAULT_REGION
    ok = True
    print(f"kernel backend: {kernels.BACKEND}", file=out)
    for name, suite in selfcheck_suites(region_name, form, sum_range, seed):
        start = time.perf_counter()
        failures = suite()
        ms = int((time.perf_counter() - start) * 1000)
        status = "PASS" if not failures else "FAIL"
        ok = ok and not failures
        print(f"{status}  {name}  ({ms} ms)", file=out)
        for line in failures[:5]:
            print(f"      {line}", file=out)
    print("", file=out)
    print("ternary closed-form variants vs oracle (N=9):", file=out)
    print(f"  {'form':10} {'region':8} {'range':10} agreeing degrees", file=out)
    table = {}
    for d in range(1, 6):
        for rec in ternary.compare_variants(d, 9):
            key = (rec["form"], rec["region"], rec["sum_range"])
            table.setdefault(key, []).append((d, rec["agrees"]))
    for (f, r, s), rows in table.items():
        good = [d for d, a in rows if a]
        undefined = [d for d, a in rows if a is None]
        text = ",".join(map(str, good)) if good else "none"
        if undefined:
            text += f" (undefined for d={','.join(map(str, undefined))})"
        print(f"  {f:10} {r:8} {s:10} {text}", file=out)
    print("", file=out)
    print("selfcheck: " + ("all suites passed" if ok else "FAILED"), file=out)
    return EXIT_OK if ok else EXIT_DISAGREE


# reconstruct -----------------------------------------------------------------


def _parse_int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"expected a comma separated list of integers, got {text!r}") from None


def _load_coefficients(path: str) -> List[int]:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read coefficients from {path}: {exc}") from None
    if isinstance(data, dict):
        data = data.get("coefficients")
    if not isinstance(data, list):
        raise UsageError(f"{path} holds neither a coefficient list nor a report")
    try:
        return [int(c) for c in data]
    except (TypeError, ValueError):
        raise UsageError(f"{path} has non-integer coefficients") from None


def cmd_reconstruct(coeffs: Sequence[int], exponents: Sequence[int], fmt: str = "plain", out=None) -> int:
    out = out or sys.stdout
    if not exponents:
        raise UsageError("--exponents is required")
    try:
        fit = guess_rational_form(coeffs, exponents)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if fmt == "json":
        payload = {"exponents": sorted(exponents), "fit": None}
        if fit is not None:
            payload["fit"] = {
                "numerator": list(fit.numerator),
                "denominator_exponents": list(fit.denominator_exponents),
                "form": str(fit),
            }
        print(dumps(payload), file=out)
    elif fit is None:
        print(f"no rational form with denominator exponents {sorted(exponents)} fits", file=out)
    else:
        print(fit.format("latex" if fmt == "latex" else "plain"), file=out)
    return EXIT_OK if fit is not None else EXIT_DISAGREE


# argument parsing ------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--arity", type=int, choices=(2, 3), default=2)
    common.add_argument("--degree", "-d", type=int)
    common.add_argument("--order", "-N", type=int)
    common.add_argument("--method", choices=("oracle", "closed", "both"), default="both")
    common.add_argument("--region", choices=sorted(ternary.REGIONS))
    common.add_argument(
        "--sum-range", choices=ternary.SUM_RANGES, default="full",
        help="ternary closed form: all residues (full) or 0<=k,j<=d/3 (restricted)",
    )
    common.add_argument("--format", choices=("plain", "json", "latex"), default="plain")
    common.add_argument("--cache-dir", help=f"result cache directory (default ${CACHE_ENV})")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="poincare-series", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("poincare", parents=[common], help="compute P_{n,d}(T)")
    p.add_argument("--exponents", help="also fit N(T)/prod(1-T^e) for these e")

    s = sub.add_parser("selfcheck", parents=[common], help="run the consistency suites")
    s.add_argument("--form", choices=("proof", "transposed"), default="proof")
    s.add_argument("--seed", type=int, default=0)

    r = sub.add_parser("reconstruct", parents=[common], help="fit a rational form")
    r.add_argument("--exponents", required=True)
    src = r.add_mutually_exclusive_group()
    src.add_argument("--coeffs", help="inline coefficients, comma separated")
    src.add_argument("--input", help="JSON file with a coefficient list or a poincare report")
    return parser


def _request(args) -> RunRequest:
    if args.degree is None or args.order is None:
        raise UsageError("--degree and --order are required")
    return RunRequest(
        arity=args.arity,
        degree=args.degree,
        order=args.order,
        method=args.method,
        region=args.region,
        sum_range=args.sum_range,
        format=args.format,
        cache_dir=args.cache_dir,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        if args.command == "poincare":
            exps = _parse_int_list(args.exponents) if args.exponents else None
            report = cmd_poincare(_request(args))
            print(render_report(report, args.format, exps))
            return EXIT_DISAGREE if report.agreement is False else EXIT_OK
        if args.command == "selfcheck":
            return cmd_selfcheck(args.region, args.form, args.sum_range, args.seed)
        if args.command == "reconstruct":
            exps = _parse_int_list(args.exponents)
            if args.coeffs:
                coeffs = _parse_int_list(args.coeffs)
            elif args.input:
                coeffs = _load_coefficients(args.input)
            else:
                req = _request(args)
                if req.method == "both":
                    req = RunRequest(**{**req.__dict__, "method": "oracle"})
                coeffs = cmd_poincare(req).coefficients
            return cmd_reconstruct(coeffs, exps, args.format)
    except UsageError as exc:
        print(f"poincare-series: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception:
        log.exception("internal error")
        return EXIT_INTERNAL
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
