"""End-to-end computation of rational representations from invariants or curves.

A run builds both curves, lists the candidate tangent matrices (from modular equations, from a supplied matrix or
``m Id`` for an endomorphism), then for every candidate chooses a base point, lifts the isogeny, reconstructs
``s, p, q, r`` and verifies them. Failures of a candidate are recorded with the condition they violate; the other
candidates are still attempted.
"""

import json
import logging
import time
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from dataclasses import asdict, dataclass, fields
from dataclasses import field as dataclass_field
from pathlib import Path
from typing import Any

import numpy as np

from isogeny2.core.errors import IsogenyError, ModularEquationNonzeroError
from isogeny2.core.names import (
    BASE_POINT_KEY,
    CANDIDATES_KEY,
    CURVES_KEY,
    FIELD_KEY,
    MIN_CHARACTERISTIC,
    MODEQ_HILBERT_Q5,
    MODEQ_SIEGEL,
    PATH_ENDO,
    PATH_HILBERT_Q5,
    PATH_SIEGEL,
    STATUS_ACCEPTED,
    STATUS_REJECTED,
    TIMINGS_KEY,
    UNIFORMIZER_WEIERSTRASS,
    VALID_CANDIDATE_STATUS_TYPE,
    VALID_PATH_OPTIONS,
    VALID_PATH_TYPE,
)
from isogeny2.core.options import OptionValue, option_manager
from isogeny2.core.parallelism import run_in_parallel
from isogeny2.covariants import dtau_j_matrix
from isogeny2.curves import BasePoint, CurveModel, CurvePoint, find_base_point, mestre_reconstruct
from isogeny2.field import ExtField, FieldElement, FiniteField, PrimeField, Raw, adjoin_sqrt
from isogeny2.jacobian_oracle import conjugate_pair
from isogeny2.modeq import evaluate_and_differentiate, load_modeq
from isogeny2.reconstruct import (
    DegreeBounds,
    RationalRepresentation,
    VerificationReport,
    reconstruct,
    verify_rational_rep,
)
from isogeny2.rm_q5 import GundlachPoint, beta_pair, dtG_matrix, hilb_curve_reconstruct, igusa_to_gundlach
from isogeny2.solver import LocalLift, check_system_residual, compute_conjugate_lift, compute_lift
from isogeny2.tangent import (
    TangentCandidate,
    endomorphism_tangent,
    tangent_candidates_hilbert,
    tangent_candidates_siegel,
    tangent_from_matrix,
)

logging.basicConfig(level=logging.INFO)
LOGGER = logging.getLogger(__name__)
LOGGER.setLevel(logging.INFO)

# an entry of a supplied tangent matrix: an int, or its coefficients over the prime field
TangentEntry = int | list[int]

REQUIRED_LEVEL = {PATH_SIEGEL: ("ell",), PATH_HILBERT_Q5: ("beta_norm", "beta_trace"), PATH_ENDO: ("m",)}


@dataclass
class RunConfig:
    """Inputs of a run.

    Each side is given by exactly one of Streng invariants ``j``, Gundlach invariants ``g`` (Hilbert path only) or
    sextic coefficients ``a0..a6``; on the endomorphism path the second side is the first. The level is ``ell``,
    the norm and trace of beta, or ``m``. Tangent matrices come from a modular-equation file or are supplied,
    with ``tangent_minpoly = (c0, c1)`` presenting the field ``F_p[alpha]/(alpha^2 + c1 alpha + c0)`` their
    entries live in.

    Examples
    --------
    >>> config = RunConfig.from_dict({"p": 10007, "path": "endo", "curve": [1, 2, 3, 4, 5, 6, 1], "m": 2})
    >>> config.level
    2
    >>> RunConfig(p=10007, path="endo", curve=[1, 2, 3, 4, 5, 6, 1]).validate()
    Traceback (most recent call last):
    ...
    ValueError: The endo path needs m.

    """

    p: int
    path: VALID_PATH_TYPE
    j: list[int] | None = None
    j_prime: list[int] | None = None
    g: list[int] | None = None
    g_prime: list[int] | None = None
    curve: list[int] | None = None
    curve_prime: list[int] | None = None
    ell: int | None = None
    beta_norm: int | None = None
    beta_trace: int | None = None
    m: int | None = None
    modeq: str | None = None
    tangent: list[list[TangentEntry]] | None = None
    tangent_minpoly: list[int] | None = None
    precision: int | None = None
    seed: int | None = None
    out: str | None = None

    @classmethod
    def from_dict(cls, values: dict[str, Any]) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(values) - known)
        if unknown:
            msg = f"Unknown configuration keys {unknown}."
            raise ValueError(msg)
        return cls(**values)

    @classmethod
    def from_json(cls, path: str | Path) -> "RunConfig":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def to_dict(self) -> dict[str, Any]:
        return {k: v for k, v in asdict(self).items() if v is not None}

    def updated(self, **overrides: Any) -> "RunConfig":
        """A copy with the non-None overrides applied."""
        values = asdict(self)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return RunConfig.from_dict(values)

    @property
    def level(self) -> int:
        """ell, the trace of beta or m."""
        level = {PATH_SIEGEL: self.ell, PATH_HILBERT_Q5: self.beta_trace, PATH_ENDO: self.m}[self.path]
        if level is None:
            msg = f"No level given for the {self.path} path."
            raise ValueError(msg)
        return level

    def validate(self) -> "RunConfig":
        """Check the combination of inputs; returns self.

        Raises
        ------
        ValueError
            Naming the first missing or conflicting input.

        """
        if self.path not in VALID_PATH_OPTIONS:
            msg = f"Unknown path {self.path}; expected one of {VALID_PATH_OPTIONS}."
            raise ValueError(msg)
        if self.p < MIN_CHARACTERISTIC:
            msg = f"The characteristic must be at least {MIN_CHARACTERISTIC}, got {self.p}."
            raise ValueError(msg)

        sides = [("j", "g", "curve")]
        if self.path != PATH_ENDO:
            sides.append(("j_prime", "g_prime", "curve_prime"))
        for names in sides:
            given = [name for name in names if getattr(self, name) is not None]
            if len(given) != 1:
                msg = f"Give exactly one of {', '.join(names)}; got {given or 'none'}."
                raise ValueError(msg)
        if self.path != PATH_HILBERT_Q5 and (self.g is not None or self.g_prime is not None):
            msg = "Gundlach invariants are only meaningful on the hilbert-q5 path."
            raise ValueError(msg)

        required = REQUIRED_LEVEL[self.path]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            msg = f"The {self.path} path needs {', '.join(missing)}."
            raise ValueError(msg)

        sources = [name for name in ("modeq", "tangent") if getattr(self, name) is not None]
        if self.path == PATH_ENDO and sources:
            msg = "The endo path takes neither a modular equation nor a tangent matrix."
            raise ValueError(msg)
        if self.path != PATH_ENDO and len(sources) != 1:
            msg = f"Give exactly one of modeq, tangent; got {sources or 'none'}."
            raise ValueError(msg)
        if self.tangent_minpoly is not None and len(self.tangent_minpoly) != 2:  # noqa: PLR2004
            msg = "tangent_minpoly is (c0, c1) for alpha^2 + c1 alpha + c0."
            raise ValueError(msg)
        return self


@dataclass
class CandidateOutcome:
    """What happened to one tangent candidate."""

    tag: str
    status: VALID_CANDIDATE_STATUS_TYPE
    field: FiniteField
    matrix: list[list[list[int]]]
    base_point: CurvePoint | None = None
    precision: int | None = None
    representation: RationalRepresentation | None = None
    report: VerificationReport | None = None
    reason: str = ""
    condition: str = ""
    timings_ms: dict[str, float] = dataclass_field(default_factory=dict)

    @property
    def accepted(self) -> bool:
        return self.status == STATUS_ACCEPTED

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"tag": self.tag, "status": self.status, "tangent": self.matrix}
        if self.base_point is not None:
            out[BASE_POINT_KEY] = point_to_dict(self.base_point)
        if self.precision is not None:
            out["precision"] = self.precision
        if self.representation is not None:
            out.update(self.representation.to_dict())
        if self.report is not None:
            out["verification"] = self.report.to_dict()
        if self.status == STATUS_REJECTED:
            out["reason"] = self.reason
            out["condition"] = self.condition
        out[TIMINGS_KEY] = self.timings_ms
        return out


@dataclass
class RunOutput:
    """Curves, candidates and their outcomes; serialized with stable keys."""

    config: RunConfig
    curve: CurveModel
    curve_p: CurveModel
    candidates: list[CandidateOutcome]
    timings_ms: dict[str, float]

    @property
    def accepted(self) -> list[CandidateOutcome]:
        return [c for c in self.candidates if c.accepted]

    @property
    def field(self) -> FiniteField:
        """Field of the accepted candidate, else the largest field met."""
        if self.accepted:
            return self.accepted[0].field
        return max(
            [self.curve.field, self.curve_p.field, *(c.field for c in self.candidates)], key=lambda k: k.degree
        )

    @property
    def base_point(self) -> CurvePoint | None:
        for outcome in self.accepted or self.candidates:
            if outcome.base_point is not None:
                return outcome.base_point
        return None

    def to_dict(self) -> dict[str, Any]:
        base = self.base_point
        return {
            FIELD_KEY: {"p": self.config.p, "tower": field_tower(self.field)},
            CURVES_KEY: {"C": self.curve.coefficients(), "Cprime": self.curve_p.coefficients()},
            BASE_POINT_KEY: None if base is None else point_to_dict(base),
            CANDIDATES_KEY: [c.to_dict() for c in self.candidates],
            TIMINGS_KEY: self.timings_ms,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def field_tower(k: FiniteField) -> list[list[list[int]]]:
    """Minimal polynomials ``[c0, c1, 1]`` of the successive quadratic steps, coefficients over the previous field.

    >>> K, _ = adjoin_sqrt(PrimeField(56311), minimal_poly=(2, 1))
    >>> field_tower(K)
    [[[2], [1], [1]]]

    """
    steps = [step for step in k.tower() if isinstance(step, ExtField)]
    return [[list(step.c0), list(step.c1), [1]] for step in steps]


def element_to_json(x: FieldElement | None) -> int | list[int] | None:
    if x is None:
        return None
    return int(x) if x.in_prime_field() else x.coeffs


def point_to_dict(point: CurvePoint) -> dict[str, Any]:
    return {"u": element_to_json(point.u), "v": element_to_json(point.v)}


def _timed(timings: dict[str, float], name: str, start: float) -> float:
    now = time.perf_counter()
    timings[name] = round(1000 * (now - start), 3)
    return now


# curves


def _side_curve(config: RunConfig, k: PrimeField, *, prime: bool) -> CurveModel:
    suffix = "_prime" if prime else ""
    coeffs, j, g = (getattr(config, name + suffix) for name in ("curve", "j", "g"))
    if coeffs is not None:
        return CurveModel.from_ints(k, coeffs)
    if j is not None:
        return mestre_reconstruct([k(x) for x in j], config.seed)
    return hilb_curve_reconstruct(GundlachPoint.from_ints(k, *g))


def build_curves(config: RunConfig) -> tuple[CurveModel, CurveModel]:
    """C and C', from coefficients, by Mestre's algorithm or as Hilbert-normalized curves."""
    k = PrimeField(config.p)
    curve = _side_curve(config, k, prime=False)
    curve_p = curve if config.path == PATH_ENDO else _side_curve(config, k, prime=True)
    LOGGER.info("C: %s", curve)
    LOGGER.info("C': %s", curve_p)
    return curve, curve_p


# candidates


def _common(fields_: Sequence[FiniteField]) -> FiniteField:
    return max(fields_, key=lambda k: k.degree)


def _embed_matrix(target: FiniteField, m: Raw, source: FiniteField) -> Raw:
    return m if source == target else target.embed(m, source)


def _over(curve: CurveModel, target: FiniteField) -> CurveModel:
    return curve if curve.field == target else curve.embed(target)


def _gundlach(config: RunConfig, curve: CurveModel, *, prime: bool) -> GundlachPoint:
    """Gundlach invariants of a side, over the field of ``curve``."""
    given = config.g_prime if prime else config.g
    if given is not None:
        return GundlachPoint.from_ints(curve.field, *given)
    return igusa_to_gundlach(curve.invariants())


def supplied_candidate(config: RunConfig) -> TangentCandidate:
    k: FiniteField = PrimeField(config.p)
    if config.tangent_minpoly is not None:
        k, _ = adjoin_sqrt(k, minimal_poly=tuple(config.tangent_minpoly))  # type: ignore[arg-type]
    return tangent_from_matrix(k, config.tangent)  # type: ignore[arg-type]


def modeq_candidates(config: RunConfig, curve: CurveModel, curve_p: CurveModel) -> list[TangentCandidate]:
    """Candidates from the derivatives of the modular equations at the two invariant points."""
    modeq = load_modeq(config.modeq)  # type: ignore[arg-type]
    expected = MODEQ_SIEGEL if config.path == PATH_SIEGEL else MODEQ_HILBERT_Q5
    if modeq.kind != expected:
        msg = f"A {config.path} run needs {expected} modular equations, not {modeq.kind}."
        raise ValueError(msg)
    work = _common([curve.field, curve_p.field])
    curve, curve_p = _over(curve, work), _over(curve_p, work)

    if config.path == PATH_SIEGEL:
        values, derivatives = evaluate_and_differentiate(modeq, curve.invariants(), curve_p.invariants())
        _check_vanishing(values)
        return tangent_candidates_siegel(
            derivatives.d_left,
            derivatives.d_right,
            dtau_j_matrix(curve.sextic),
            dtau_j_matrix(curve_p.sextic),
            config.ell,  # type: ignore[arg-type]
            work,
        )

    g, g_p = _gundlach(config, curve, prime=False), _gundlach(config, curve_p, prime=True)
    values, derivatives = evaluate_and_differentiate(modeq, [g.g1, g.g2], [g_p.g1, g_p.g2])
    _check_vanishing(values)
    beta, beta_bar = beta_pair(work, config.beta_norm, config.beta_trace)  # type: ignore[arg-type]
    return tangent_candidates_hilbert(
        derivatives.d_left,
        derivatives.d_right,
        dtG_matrix(curve, g),
        dtG_matrix(curve_p, g_p),
        beta,
        beta_bar,
    )


def _check_vanishing(values: Sequence[FieldElement]) -> None:
    """The modular equations vanish at the two invariant points when the curves are isogenous."""
    if any(values):
        msg = f"The modular equations do not vanish at the given invariants: {[str(x) for x in values]}."
        raise ModularEquationNonzeroError(msg)


def tangent_candidates(config: RunConfig, curve: CurveModel, curve_p: CurveModel) -> list[TangentCandidate]:
    if config.path == PATH_ENDO:
        return [endomorphism_tangent(curve.field, config.m)]  # type: ignore[arg-type]
    if config.tangent is not None:
        return [supplied_candidate(config)]
    return modeq_candidates(config, curve, curve_p)


# one candidate


def process_candidate(
    candidate: TangentCandidate,
    curve: CurveModel,
    curve_p: CurveModel,
    bounds: DegreeBounds,
    precision: int | None,
    seed: int,
    options: dict[str, OptionValue],
) -> CandidateOutcome:
    """Base point, lift, reconstruction and verification for one candidate; errors are caught and recorded."""
    with _options_applied(options):
        return _process(candidate, curve, curve_p, bounds, precision, seed)


@contextmanager
def _options_applied(options: dict[str, OptionValue]) -> Iterator[None]:
    """Run with ``options`` set, as in the parent process; restores the previous values."""
    previous = dict(option_manager.options_in_use)
    for name, value in options.items():
        option_manager.set_option(name, value)
    try:
        yield
    finally:
        option_manager.options_in_use = previous


def _process(
    candidate: TangentCandidate,
    curve: CurveModel,
    curve_p: CurveModel,
    bounds: DegreeBounds,
    precision: int | None,
    seed: int,
) -> CandidateOutcome:
    rng = np.random.default_rng(seed)
    matrix = [[[int(c) for c in x] for x in row] for row in candidate.matrix]
    outcome = CandidateOutcome(candidate.tag, STATUS_REJECTED, candidate.field, matrix)
    timings = outcome.timings_ms
    start = time.perf_counter()
    try:
        work = _common([candidate.field, curve.field, curve_p.field])
        dphi = _embed_matrix(work, candidate.matrix, candidate.field)
        curve, curve_p = _over(curve, work), _over(curve_p, work)

        base = find_base_point(curve, dphi, curve_p, rng)
        dphi = _embed_matrix(base.field, dphi, work)
        outcome.field, outcome.base_point = base.field, base.P
        start = _timed(timings, "base_point", start)

        lift_ip = _conjugate_lift(candidate, curve, curve_p, dphi, base, bounds, precision)
        outcome.precision = _precision(bounds, base, precision, conjugate=lift_ip is not None)
        lift = compute_lift(curve, curve_p, dphi, base, outcome.precision)
        check_system_residual(lift, curve_p)
        start = _timed(timings, "lift", start)

        outcome.representation = reconstruct(lift, curve_p, bounds, lift_ip)
        start = _timed(timings, "reconstruct", start)

        outcome.report = verify_rational_rep(outcome.representation, rng=rng)
        _timed(timings, "verify", start)
    except IsogenyError as error:
        _timed(timings, "failed", start)
        outcome.reason, outcome.condition = str(error), error.condition
        LOGGER.info("candidate %s rejected: %s", candidate.tag, error)
        return outcome

    if outcome.report.passed:
        outcome.status = STATUS_ACCEPTED
        LOGGER.info("candidate %s accepted", candidate.tag)
    else:
        outcome.reason = f"verification failed: {', '.join(outcome.report.failures)}"
        outcome.condition = "the rational representation satisfies its defining identities"
        LOGGER.info("candidate %s rejected: %s", candidate.tag, outcome.reason)
    return outcome


def _conjugate_lift(
    candidate: TangentCandidate,
    curve: CurveModel,
    curve_p: CurveModel,
    dphi: Raw,
    base: BasePoint,
    bounds: DegreeBounds,
    override: int | None,
) -> LocalLift | None:
    """The lift at ``i(P)`` for a generic base point, when its starting pair is known; None otherwise.

    The pair is ``m [i(P) - P]`` for ``[m]``; it is computed by Cantor arithmetic on C.
    """
    if candidate.multiplier is None or base.kind == UNIFORMIZER_WEIERSTRASS:
        return None
    curve = _over(curve, base.field)
    pair = conjugate_pair(curve, base.P, candidate.multiplier)
    if pair is None:
        LOGGER.info("no starting pair at the conjugate of %s; s and p come from one lift", base.P)
        return None
    precision = _precision(bounds, base, override, conjugate=True)
    try:
        lift = compute_conjugate_lift(curve, curve_p, dphi, base, pair, precision)
        check_system_residual(lift, curve_p)
    except IsogenyError as error:
        LOGGER.info("lift at the conjugate of %s failed (%s); s and p come from one lift", base.P, error)
        return None
    return lift


def _precision(bounds: DegreeBounds, base: BasePoint, override: int | None, *, conjugate: bool = False) -> int:
    required = bounds.precision_at(base.kind, conjugate=conjugate)
    if override is None:
        return required
    if override < required:
        LOGGER.warning("precision %d is below the required %d; using %d", override, required, required)
        return required
    return override


def run(config: RunConfig) -> RunOutput:
    """Compute and verify the rational representations of every candidate isogeny described by ``config``.

    Candidates are processed independently, in worker processes when the ``nb_cpu`` option is above one. A
    failure of a candidate never stops the run; failures while building the curves or the candidates do.

    Raises
    ------
    IsogenyError
        When the curves or the tangent candidates cannot be built.

    ValueError
        When the configuration is inconsistent.

    """
    config.validate()
    seed = int(option_manager.get_option("seed") or 0) if config.seed is None else config.seed
    config = config.updated(seed=seed)
    timings: dict[str, float] = {}
    start = time.perf_counter()

    curve, curve_p = build_curves(config)
    start = _timed(timings, "curves", start)
    candidates = tangent_candidates(config, curve, curve_p)
    start = _timed(timings, "candidates", start)
    LOGGER.info("%d tangent candidates", len(candidates))

    bounds = DegreeBounds.for_path(config.path, config.level)
    options = {name: value for name, (value, _) in option_manager.options_in_use.items()} | {"seed": seed}
    nb_cpu = int(option_manager.get_option("nb_cpu") or 1)
    nb_cpu = min(nb_cpu, max(len(candidates), 1))
    outcomes = run_in_parallel(
        process_candidate, candidates, nb_cpu, curve, curve_p, bounds, config.precision, seed, options
    )
    _timed(timings, "solve", start)
    timings["total"] = round(sum(timings.values()), 3)

    output = RunOutput(config, curve, curve_p, outcomes, timings)
    LOGGER.info("%d of %d candidates accepted", len(output.accepted), len(outcomes))
    return output
