"""
Command line front end

    stieltjes-lab <command> [--input FILE|-] [--moments S0,S1,...] [--alpha P/Q --count N]
                  [--N n] [--j j] [--parity even|odd] [--kind diagonal|subdiagonal]
                  [--tau NUM;DEN|NUM/DEN] [--points z1,z2,...] [--N-list 2,4,8]
                  [--format json|text|csv]

Every rational in a report is written as a "p/q" string. Floats only appear in the probe table
when --floats is given.
"""
import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Set, Tuple, cast

from .approx import (
    determinacy,
    pade,
    pade_factored_check,
    probe_differences,
    winf_probe,
)
from .arith import INFINITY, ZERO, Parameter, Poly, PolyMatrix2, RationalFunction
from .constants import (
    COMMANDS,
    DEFAULT_LAGUERRE_COUNT,
    DEFAULT_PROBE_N_LIST,
    DEFAULT_PROBE_POINTS,
    DEFAULT_PROBE_TOLERANCE,
    DEMOS,
    EXIT_CODES,
    OUTPUT_FORMATS,
    PADE_KINDS,
    PARITIES,
)
from .contfrac import (
    PFraction,
    SFraction,
    induced_sequence,
    moments_from_s_fraction,
    p_fraction,
    p_from_s,
    s_from_p,
    schur_s_fraction,
)
from .hankel import MomentSequence, class_indices
from .laguerre import (
    LaguerreConfig,
    laguerre_closed_forms,
    laguerre_moments,
    laguerre_polys,
    laguerre_stieltjes_even,
)
from .polysys import (
    IdentityCheck,
    lanczos,
    poly_system_from_moments,
    stieltjes_polys,
    verify_identities,
)
from .resolvent import index_budget, nesting_holds, resolvent, solution_candidate
from .types import (
    AtomRecord,
    IdentityRecord,
    JobInput,
    JobOptions,
    JobSpec,
    PolyMatrixRecord,
    RationalFunctionRecord,
    Report,
    SFractionPairRecord,
)
from .util import (
    ConsistencyError,
    NotRegularError,
    StieltjesError,
    format_rational,
    format_rationals,
    logger,
    to_rational,
)

JOB_FIELDS: Dict[str, Set[str]] = {
    "": {"command", "input", "options"},
    "input": set(JobInput.__annotations__),
    "options": set(JobOptions.__annotations__),
    "input.laguerre": {"alpha", "count"},
}
S_FRACTION_PAIR_FIELDS = {"m", "l"}


class JobParseError(Exception):
    """The job could not be read: invalid JSON, an unknown field or a value of the wrong form."""


@dataclass
class ResolvedJob:
    """A JobSpec with every value parsed into library types."""

    command: str
    moments: Optional[MomentSequence] = None
    s_fraction: Optional[SFraction] = None
    laguerre: Optional[LaguerreConfig] = None
    length: Optional[int] = None
    N: Optional[int] = None
    j: Optional[int] = None
    parity: str = PARITIES.EVEN
    kind: str = PADE_KINDS.DIAGONAL
    tau: Optional[Parameter] = None
    points: Tuple[Fraction, ...] = DEFAULT_PROBE_POINTS
    N_list: Tuple[int, ...] = DEFAULT_PROBE_N_LIST
    format: str = OUTPUT_FORMATS.JSON
    emit: bool = False
    floats: bool = False
    has_input: bool = False


def load_job(text: str, source: str = "<job>") -> JobSpec:
    """Parse the JSON text of a job and reject unknown fields.

    Raises:
        JobParseError: invalid JSON (with line and column) or an unknown field (with its path)
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise JobParseError(
            f"{source}: invalid JSON at line {err.lineno} column {err.colno}: {err.msg}"
        )
    if not isinstance(data, dict):
        raise JobParseError(f"{source}: a job must be a JSON object")
    check_fields(data)
    return cast(JobSpec, data)


def check_fields(data: Mapping[str, Any]) -> None:
    def check(record: Any, path: str, allowed: Set[str]) -> None:
        if not isinstance(record, dict):
            raise JobParseError(f"{path or 'job'}: expected an object")
        for key in sorted(record):
            if key not in allowed:
                raise JobParseError(f"unknown field '{path + '.' if path else ''}{key}'")

    check(data, "", JOB_FIELDS[""])
    for section in ("input", "options"):
        if section in data:
            check(data[section], section, JOB_FIELDS[section])
    inputs = data.get("input", {})
    if "laguerre" in inputs:
        check(inputs["laguerre"], "input.laguerre", JOB_FIELDS["input.laguerre"])
    if "s_fraction" in inputs:
        if not isinstance(inputs["s_fraction"], list):
            raise JobParseError("input.s_fraction: expected a list of pairs")
        for index, pair in enumerate(inputs["s_fraction"]):
            check(pair, f"input.s_fraction[{index}]", S_FRACTION_PAIR_FIELDS)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r") as fh:
            return fh.read()
    except OSError as err:
        raise JobParseError(f"cannot read {path}: {err}")


def _split(text: str) -> List[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def job_from_args(args: argparse.Namespace) -> JobSpec:
    """Merge the job file (if any) with the command line flags; flags win."""
    job: Dict[str, Any] = {}
    if args.input:
        job = dict(load_job(_read(args.input), args.input))
    if args.from_fraction:
        emitted = load_job(_read(args.from_fraction), args.from_fraction)
        job["input"] = dict(emitted.get("input", {}))
    if job.get("command", args.command) != args.command:
        raise JobParseError(
            f"command: the job names {job['command']!r} but {args.command!r} was requested"
        )
    job["command"] = args.command

    inputs: Dict[str, Any] = dict(job.get("input", {}))
    if args.moments is not None:
        inputs = {"moments": _split(args.moments)}
    if args.alpha is not None:
        count = DEFAULT_LAGUERRE_COUNT if args.count is None else args.count
        inputs = {"laguerre": {"alpha": args.alpha, "count": count}}
    elif args.count is not None and "laguerre" in inputs:
        inputs["laguerre"] = {**inputs["laguerre"], "count": args.count}
    if inputs:
        job["input"] = inputs

    options: Dict[str, Any] = dict(job.get("options", {}))
    for name in ("N", "j", "parity", "kind", "tau", "format"):
        value = getattr(args, name)
        if value is not None:
            options[name] = value
    if args.points is not None:
        options["points"] = _split(args.points)
    if args.N_list is not None:
        try:
            options["N_list"] = [int(part) for part in _split(args.N_list)]
        except ValueError as err:
            raise JobParseError(f"--N-list: {err}")
    if args.emit:
        options["emit"] = True
    if args.floats:
        options["floats"] = True
    if options:
        job["options"] = options
    return cast(JobSpec, job)


def parse_tau(value: Any) -> Parameter:
    """`zero`, `infinity`, coefficient lists or a {"numer", "denom"} record.

    Coefficient lists run lowest degree first. "NUM;DEN" allows rational coefficients;
    "NUM/DEN" with a single slash takes integer coefficients on both sides, and a lone list
    is a polynomial.
    """
    if isinstance(value, dict):
        numer, denom = value.get("numer", []), value.get("denom", ["1"])
    elif isinstance(value, str):
        keyword = value.strip().lower()
        if keyword == "zero":
            return ZERO
        if keyword == "infinity":
            return INFINITY
        if ";" in value:
            numer_text, _, denom_text = value.partition(";")
        elif value.count("/") == 1:
            numer_text, _, denom_text = value.partition("/")
            if not all(_is_integer(part) for part in _split(numer_text) + _split(denom_text)):
                raise ValueError(f"NUM/DEN takes integer coefficients, use NUM;DEN in {value!r}")
        elif "/" in value:
            raise ValueError(f"ambiguous slashes, use NUM;DEN for rational coefficients: {value!r}")
        else:
            numer_text, denom_text = value, ""
        numer, denom = _split(numer_text), _split(denom_text) or ["1"]
    else:
        raise ValueError(f"cannot read tau from {value!r}")
    numer_poly = Poly(tuple(to_rational(c) for c in numer))
    denom_poly = Poly(tuple(to_rational(c) for c in denom))
    if denom_poly.is_zero:
        raise ValueError("tau has a zero denominator")
    return RationalFunction(numer_poly, denom_poly)


def _is_integer(text: str) -> bool:
    return text.lstrip("+-").isdigit()


def _integer(value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"expected an integer, got {value!r}")
    return value


def _boolean(value: Any) -> bool:
    if not isinstance(value, bool):
        raise TypeError(f"expected true or false, got {value!r}")
    return value


def _choice(value: Any, choices: Any) -> str:
    if value not in choices:
        raise ValueError(f"expected one of {sorted(choices.values())}, got {value!r}")
    return value


def _s_fraction_from_records(records: Sequence[Mapping[str, Any]]) -> SFraction:
    return SFraction.from_values(
        [Poly(tuple(to_rational(c) for c in pair["m"])) for pair in records],
        [pair["l"] for pair in records],
    )


def resolve_job(spec: JobSpec) -> ResolvedJob:
    """Parse every value of a JobSpec.

    Raises:
        JobParseError: an unknown command or field, or a value that does not parse (the
            message carries the field path)
    """
    check_fields(spec)
    command = spec.get("command")
    if command not in COMMANDS:
        raise JobParseError(f"command: unknown command {command!r}")
    job = ResolvedJob(command=cast(str, command))
    inputs = spec.get("input", {})
    options = spec.get("options", {})

    readers: List[Tuple[str, Mapping[str, Any], str, Callable[[Any], Any]]] = [
        ("input", inputs, "moments", lambda v: MomentSequence(tuple(to_rational(m) for m in v))),
        ("input", inputs, "s_fraction", _s_fraction_from_records),
        ("input", inputs, "length", _integer),
        ("options", options, "N", _integer),
        ("options", options, "j", _integer),
        ("options", options, "parity", lambda v: _choice(v, PARITIES)),
        ("options", options, "kind", lambda v: _choice(v, PADE_KINDS)),
        ("options", options, "format", lambda v: _choice(v, OUTPUT_FORMATS)),
        ("options", options, "tau", parse_tau),
        ("options", options, "points", lambda v: tuple(to_rational(p) for p in v)),
        ("options", options, "N_list", lambda v: tuple(_integer(n) for n in v)),
        ("options", options, "emit", _boolean),
        ("options", options, "floats", _boolean),
    ]
    for section, record, name, reader in readers:
        if name not in record:
            continue
        try:
            setattr(job, name, reader(record[name]))
        except (ValueError, TypeError, KeyError) as err:
            raise JobParseError(f"{section}.{name}: {err}")

    if "laguerre" in inputs:
        laguerre = inputs["laguerre"]
        try:
            alpha = to_rational(laguerre["alpha"])
            count = _integer(laguerre.get("count", DEFAULT_LAGUERRE_COUNT))
            # a Gamma pole is a domain error and passes through
            job.laguerre = LaguerreConfig(alpha, count)
        except (ValueError, TypeError, KeyError) as err:
            raise JobParseError(f"input.laguerre: {err}")
    job.has_input = any(
        value is not None for value in (job.moments, job.s_fraction, job.laguerre)
    )
    return job


def _poly(poly: Poly) -> List[str]:
    return format_rationals(poly.coeffs)


def _function(f: RationalFunction) -> RationalFunctionRecord:
    return {"numer": _poly(f.numer), "denom": _poly(f.denom)}


def _matrix(W: PolyMatrix2) -> PolyMatrixRecord:
    return {"w11": _poly(W.w11), "w12": _poly(W.w12), "w21": _poly(W.w21), "w22": _poly(W.w22)}


def _pairs(sf: SFraction) -> List[SFractionPairRecord]:
    return [{"m": _poly(m), "l": format_rational(l)} for m, l in sf.pairs]


def _atoms(p: PFraction) -> List[AtomRecord]:
    return [{"a": _poly(a), "b": format_rational(b)} for a, b in p.atoms]


def _value(value: Any) -> Any:
    if isinstance(value, Poly):
        return _poly(value)
    if isinstance(value, RationalFunction):
        return _function(value)
    return format_rational(value)


def _identity(check: IdentityCheck) -> IdentityRecord:
    return {
        "name": check.name,
        "index": check.index,
        "lhs": _value(check.lhs),
        "rhs": _value(check.rhs),
        "passed": check.passed,
    }


def _error(err: Exception) -> Report:
    record: Dict[str, Any] = {"type": type(err).__name__, "message": str(err)}
    for name in ("required", "available", "context", "step"):
        if hasattr(err, name):
            record[name] = getattr(err, name)
    return {"error": record}


def _moments(job: ResolvedJob) -> MomentSequence:
    if job.moments is not None:
        return job.moments
    if job.laguerre is not None:
        return laguerre_moments(job.laguerre)
    if job.s_fraction is not None:
        length = job.s_fraction.determined_moments() if job.length is None else job.length
        return moments_from_s_fraction(job.s_fraction, length)
    raise JobParseError("input: give moments, a laguerre config or an s_fraction")


def _fraction(job: ResolvedJob) -> SFraction:
    if job.s_fraction is not None:
        return job.s_fraction if job.N is None else job.s_fraction.head(job.N)
    return schur_s_fraction(_moments(job), job.N).fraction


def _required(value: Optional[int], name: str) -> int:
    if value is None:
        raise JobParseError(f"options.{name}: required by this command")
    return value


def analyze_report(job: ResolvedJob) -> Report:
    s = _moments(job)
    hankel = class_indices(s)
    report: Dict[str, Any] = {
        "moments": format_rationals(s),
        "normal_indices": list(hankel.normal_indices),
        "dets": {str(n): format_rational(v) for n, v in hankel.dets.items()},
        "dets_plus": {str(n): format_rational(v) for n, v in hankel.dets_plus.items()},
        "inertia": {
            f"{n},{shift}": list(value) for (n, shift), value in hankel.inertia.items()
        },
        "kappa": hankel.kappa,
        "k": hankel.k_plus,
        "kappa_stabilized": hankel.kappa_stabilized,
        "k_stabilized": hankel.k_stabilized,
        "regular": hankel.regular,
    }
    try:
        sf = schur_s_fraction(s, job.N).fraction
    except NotRegularError as err:
        report["schur"] = _error(err)["error"]
        return report
    report["s_fraction"] = _pairs(sf)
    report["index_budget"] = []
    for N in range(1, len(sf) + 1):
        budget = index_budget(sf, N)
        report["index_budget"].append(
            {"N": N, "kappa_N": budget.kappa_N, "k_N": budget.k_N, "k_N_plus": budget.k_N_plus}
        )
    return report


def fractions_report(job: ResolvedJob) -> Report:
    s = _moments(job)
    run = schur_s_fraction(s, job.N)
    sf = run.fraction
    if job.emit:
        length = min(len(s), sf.determined_moments())
        return {"command": COMMANDS.MOMENTS, "input": {"s_fraction": _pairs(sf), "length": length}}
    p = p_fraction(s, max_atoms=job.N)
    return {
        "s_fraction": _pairs(sf),
        "normal_indices": list(sf.normal_indices()),
        "consumed": list(run.consumed),
        "induced": format_rationals(run.induced),
        "p_fraction": {"atoms": _atoms(p), "truncated": p.truncated},
    }


def moments_report(job: ResolvedJob) -> Report:
    if job.s_fraction is None:
        raise JobParseError("input.s_fraction: required by the moments command")
    sf = job.s_fraction
    length = sf.determined_moments() if job.length is None else job.length
    induced = induced_sequence(sf, 0, length)
    return {"moments": format_rationals(induced.sequence), "truncated": induced.truncated}


def polys_report(job: ResolvedJob) -> Report:
    ps, sf = poly_system_from_moments(_moments(job), job.N)
    return {
        "N": ps.N,
        "lanczos": {
            "P": [_poly(ps.P(j)) for j in range(ps.N + 1)],
            "Q": [_poly(ps.Q(j)) for j in range(ps.N + 1)],
        },
        "stieltjes": {
            "P": [_poly(ps.P_plus(j)) for j in range(2 * ps.N + 1)],
            "Q": [_poly(ps.Q_plus(j)) for j in range(2 * ps.N + 1)],
        },
        "btilde": format_rationals(ps.btilde),
        "s_fraction": _pairs(sf),
    }


def resolvent_report(job: ResolvedJob) -> Report:
    sf = _fraction(job)
    N = len(sf) if job.N is None else job.N
    W = resolvent(sf, N, job.parity)
    report: Dict[str, Any] = {
        "N": N,
        "parity": job.parity,
        "W": _matrix(W.W),
        "det": _poly(W.W.det()),
        "factors": len(W.factors),
    }
    if job.parity == PARITIES.EVEN:
        budget = index_budget(sf, N)
        report["index_budget"] = {
            "kappa_N": budget.kappa_N,
            "k_N": budget.k_N,
            "k_N_plus": budget.k_N_plus,
        }
    if job.tau is not None:
        candidate = solution_candidate(W, job.tau, _moments(job))
        report["candidate"] = {
            "f": _function(candidate.f),
            "matched_order": candidate.matched_order,
        }
    return report


def pade_report(job: ResolvedJob) -> Report:
    result = pade(_moments(job), _required(job.j, "j"), job.kind)
    return {
        "kind": result.kind,
        "j": result.j,
        "n": result.n,
        "numer": _poly(result.numer),
        "denom": _poly(result.denom),
        "verified_order": result.verified_order,
    }


def determinacy_report(job: ResolvedJob) -> Report:
    report = determinacy(_fraction(job))
    return {
        "partial_M": format_rationals(report.partial_M),
        "partial_L": format_rationals(report.partial_L),
        "inertia_series": format_rationals(report.inertia_series),
        "l_all_positive": report.l_all_positive,
        "verdict": report.verdict,
        "window": report.window,
        "tail_ratio": format_rational(report.tail_ratio),
        "notes": report.notes,
    }


def probe_report(job: ResolvedJob) -> Report:
    sf = job.s_fraction if job.s_fraction is not None else schur_s_fraction(_moments(job)).fraction
    rows = winf_probe(sf, job.points, job.N_list)
    report: Dict[str, Any] = {
        "rows": [
            {
                "N": row.N,
                "point": format_rational(row.point),
                "w11": format_rational(row.w11),
                "w12": format_rational(row.w12),
                "w21": format_rational(row.w21),
                "w22": format_rational(row.w22),
            }
            for row in rows
        ]
    }
    if job.floats:
        deltas = probe_differences(rows)
        report["differences"] = [
            {
                "point": format_rational(delta.point),
                "N_from": delta.N_from,
                "N_to": delta.N_to,
                "max_difference": delta.max_difference,
            }
            for delta in deltas
        ]
        report["tolerance"] = DEFAULT_PROBE_TOLERANCE
        report["settled"] = bool(deltas) and deltas[-1].max_difference < DEFAULT_PROBE_TOLERANCE
    return report


def laguerre_checks(cfg: LaguerreConfig) -> Dict[str, bool]:
    """Closed forms against the Schur algorithm and the P-fraction extraction."""
    s = laguerre_moments(cfg)
    closed = laguerre_closed_forms(cfg)
    sf = schur_s_fraction(s).fraction
    p = p_fraction(s, max_atoms=cfg.count)
    lanczos_polys = lanczos(p)
    plus = stieltjes_polys(sf)
    return {
        "s_fraction": sf == closed.s_fraction,
        "p_fraction": p.atoms == closed.p_fraction.atoms,
        "lanczos_polys": all(
            laguerre_polys(cfg, n) == (lanczos_polys.P[n], lanczos_polys.Q[n])
            for n in range(len(p) + 1)
        ),
        "stieltjes_even": all(
            laguerre_stieltjes_even(cfg, n) == plus.P[2 * n] for n in range(len(sf) + 1)
        ),
    }


def _demo_config(job: ResolvedJob) -> LaguerreConfig:
    if job.laguerre is not None:
        return job.laguerre
    return LaguerreConfig(**DEMOS["laguerre-3/2"])


def laguerre_demo_report(job: ResolvedJob) -> Report:
    cfg = _demo_config(job)
    checks = laguerre_checks(cfg)
    s = laguerre_moments(cfg)
    closed = laguerre_closed_forms(cfg)
    hankel = class_indices(s)
    failed = sorted(name for name, passed in checks.items() if not passed)
    if failed:
        raise ConsistencyError(f"Laguerre closed forms disagree: {', '.join(failed)}")
    return {
        "alpha": format_rational(cfg.alpha),
        "count": cfg.count,
        "gamma_sign": cfg.gamma_sign,
        "moments": format_rationals(s),
        "s_fraction": _pairs(closed.s_fraction),
        "p_fraction": _atoms(closed.p_fraction),
        "kappa": hankel.kappa,
        "k": hankel.k_plus,
        "regular": hankel.regular,
        "closed_forms_agree": checks,
    }


def _passes(check: Callable[[], bool]) -> bool:
    try:
        return check()
    except ConsistencyError as err:
        logger.warning(str(err))
        return False


def verify_sequence(s: MomentSequence) -> Report:
    """Run every identity suite on one regular moment sequence."""
    ps, sf = poly_system_from_moments(s)
    identities = verify_identities(ps, sf)
    count = len(sf)
    normal = sf.normal_indices()

    def resolvents() -> bool:
        for N in range(1, count + 1):
            resolvent(sf, N, PARITIES.EVEN)
            resolvent(sf, N, PARITIES.ODD)
        return True

    def candidates() -> bool:
        for N in range(1, count + 1):
            even = solution_candidate(resolvent(sf, N, PARITIES.EVEN), ZERO, s)
            odd = solution_candidate(resolvent(sf, N, PARITIES.ODD), INFINITY, s)
            if even.matched_order < min(2 * normal[N - 1], len(s)):
                return False
            if odd.matched_order < min(2 * normal[N - 1] - 1, len(s)):
                return False
        return True

    def approximants() -> bool:
        for j in range(1, count + 1):
            pade(s, j, PADE_KINDS.DIAGONAL)
            pade(s, j, PADE_KINDS.SUBDIAGONAL)
        return True

    checks = {
        "identities": identities.passed,
        "resolvent": _passes(resolvents),
        "nesting": _passes(
            lambda: all(nesting_holds(s, N, j) for j in range(1, count + 1) for N in range(j))
        ),
        "p_s_round_trip": _passes(
            lambda: s_from_p(p_from_s(sf)) == sf and p_from_s(s_from_p(ps.p)).atoms == ps.p.atoms
        ),
        "solution_candidates": _passes(candidates),
        "pade": _passes(approximants),
        "factored_pade": _passes(
            lambda: all(
                pade_factored_check(s, N, j).passed
                for N, j in ((1, 3), (2, 4))
                if j <= count
            )
        ),
    }
    return {
        "pairs": count,
        "checks": checks,
        "identity_checks": len(identities.checks),
        "identity_failures": [_identity(check) for check in identities.failures],
        "notes": identities.notes,
        "passed": all(checks.values()),
    }


def verify_report(job: ResolvedJob) -> Report:
    suites: Dict[str, Report] = {}
    if job.has_input:
        suites["input"] = verify_sequence(_moments(job))
        if job.laguerre is not None:
            suites["input"]["closed_forms"] = laguerre_checks(job.laguerre)
    else:
        for name, demo in DEMOS.items():
            cfg = LaguerreConfig(**demo)
            suites[name] = verify_sequence(laguerre_moments(cfg))
            suites[name]["closed_forms"] = laguerre_checks(cfg)
    for suite in suites.values():
        closed = cast(Dict[str, bool], suite.get("closed_forms", {}))
        suite["passed"] = bool(suite["passed"]) and all(closed.values())
    return {"suites": suites, "passed": all(suite["passed"] for suite in suites.values())}


HANDLERS: Dict[str, Callable[[ResolvedJob], Report]] = {
    COMMANDS.ANALYZE: analyze_report,
    COMMANDS.FRACTIONS: fractions_report,
    COMMANDS.POLYS: polys_report,
    COMMANDS.RESOLVENT: resolvent_report,
    COMMANDS.PADE: pade_report,
    COMMANDS.DETERMINACY: determinacy_report,
    COMMANDS.PROBE: probe_report,
    COMMANDS.LAGUERRE_DEMO: laguerre_demo_report,
    COMMANDS.VERIFY: verify_report,
    COMMANDS.MOMENTS: moments_report,
}


def run(spec: JobSpec) -> Tuple[int, Report]:
    """Execute one job and return the exit status with its report.

    Library errors propagate; `main` maps them onto exit codes.
    """
    job = resolve_job(spec)
    if job.format == OUTPUT_FORMATS.CSV and job.command != COMMANDS.PROBE:
        raise JobParseError("options.format: csv output is only available for the probe command")
    report = HANDLERS[job.command](job)
    logger.info(f"{job.command} finished")
    if report.get("passed") is False:
        return EXIT_CODES.CONSISTENCY, report
    return EXIT_CODES.OK, report


def _text_lines(value: Any, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines = []
    nested = (dict, list)
    if isinstance(value, dict):
        for key in sorted(value):
            item = value[key]
            if isinstance(item, dict) or (
                isinstance(item, list) and any(isinstance(v, nested) for v in item)
            ):
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_text_scalar(item)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, nested):
                lines.append(f"{pad}-")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}- {_text_scalar(item)}")
    else:
        lines.append(f"{pad}{_text_scalar(value)}")
    return lines


def _text_scalar(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return ", ".join(_text_scalar(v) for v in value)
    if value is None:
        return "-"
    return str(value)


def _csv(report: Report) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    columns = ["N", "point", "w11", "w12", "w21", "w22"]
    writer.writerow(columns)
    for row in cast(List[Dict[str, Any]], report.get("rows", [])):
        writer.writerow([row[name] for name in columns])
    if "differences" in report:
        writer.writerow([])
        writer.writerow(["point", "N_from", "N_to", "max_difference"])
        for delta in cast(List[Dict[str, Any]], report["differences"]):
            writer.writerow(
                [delta["point"], delta["N_from"], delta["N_to"], repr(delta["max_difference"])]
            )
    return buffer.getvalue()


def render(report: Report, output_format: str = OUTPUT_FORMATS.JSON) -> str:
    if output_format == OUTPUT_FORMATS.TEXT:
        return "\n".join(_text_lines(report)) + "\n"
    if output_format == OUTPUT_FORMATS.CSV and "rows" in report:
        return _csv(report)
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stieltjes-lab",
        description="Exact continued fractions, polynomials and resolvent matrices of "
        "(indefinite) Stieltjes moment sequences",
    )
    parser.add_argument("command", choices=sorted(COMMANDS.values()))
    parser.add_argument("--input", help="JSON job file, - reads standard input")
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--moments", help="comma separated rationals s_0,s_1,...")
    source.add_argument("--alpha", help="Laguerre demo parameter, e.g. -3/2")
    parser.add_argument("--count", type=int, help="number of Laguerre fraction pairs")
    parser.add_argument(
        "--from-fraction",
        dest="from_fraction",
        help="job emitted by `fractions --emit` whose s_fraction input is used",
    )
    parser.add_argument("--N", dest="N", type=int, help="number of Schur steps / pairs")
    parser.add_argument("--j", type=int, help="approximant index")
    parser.add_argument("--parity", choices=sorted(PARITIES.values()))
    parser.add_argument("--kind", choices=sorted(PADE_KINDS.values()))
    parser.add_argument("--tau", help="zero, infinity, NUM;DEN or NUM/DEN coefficient lists")
    parser.add_argument("--points", help="comma separated sample points for probe")
    parser.add_argument("--N-list", dest="N_list", help="comma separated N values for probe")
    parser.add_argument("--format", choices=sorted(OUTPUT_FORMATS.values()))
    parser.add_argument("--emit", action="store_true", help="fractions: emit a moments job")
    parser.add_argument("--floats", action="store_true", help="probe: add float differences")
    parser.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    output_format = args.format or OUTPUT_FORMATS.JSON
    try:
        spec = job_from_args(args)
        output_format = cast(str, spec.get("options", {}).get("format", output_format))
        status, report = run(spec)
    except JobParseError as err:
        print(f"stieltjes-lab: {err}", file=sys.stderr)
        return EXIT_CODES.PARSE
    except ConsistencyError as err:
        logger.error(str(err))
        sys.stdout.write(render(_error(err), _error_format(output_format)))
        return EXIT_CODES.CONSISTENCY
    except (StieltjesError, ValueError, ZeroDivisionError) as err:
        logger.error(str(err))
        sys.stdout.write(render(_error(err), _error_format(output_format)))
        return EXIT_CODES.DOMAIN
    sys.stdout.write(render(report, output_format))
    return status


def _error_format(output_format: str) -> str:
    return OUTPUT_FORMATS.TEXT if output_format == OUTPUT_FORMATS.TEXT else OUTPUT_FORMATS.JSON


if __name__ == "__main__":
    sys.exit(main())
