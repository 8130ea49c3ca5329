# qmemory/controllers/theorems_controller.py
"""
Numerical audits of the entropic identities and inequalities.

Parties are A = 0, B = 1, C = 2. J(X|Y) and D(X|Y) are measured on Y;
E_u<-(rho_XY) and delta_u<-(rho_XY) likewise.
"""
import logging
from math import prod
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from ..config import TAU_EQ1, TAU_EXACT, TAU_OPT
from ..errors import DimensionMismatch, NotApplicable, ParamOutOfRange
from ..models.hilbert import DensityMatrix, PureState
from ..models.measurement import ObservablePair
from ..schemas.claim_schema import BatchSummary, ClaimId, ClaimKind, ClaimResult, badness, judge
from ..schemas.state_schema import StateSpec
from ..services.correlations import (
    entanglement_of_assistance,
    entanglement_of_formation,
    measured_classical_correlation,
    measured_discord,
    measured_pair,
    unlocalizable_discord,
    unlocalizable_entanglement,
)
from ..services.entropy import (
    conditional_entropy,
    entropy_bits,
    marginal_entropy,
    named_observable_pair,
    uncertainty_report,
    von_neumann_entropy,
)
from ..services.linalg import density_from_pure, eigh, is_pure, partial_trace, purify, reduced_from_pure
from ..services.states import as_density, build_state
from ..utils.pool import ordered_map
from ..utils.rng import stream_rng

logger = logging.getLogger(__name__)

State = Union[DensityMatrix, PureState]
Check = Tuple[str, float, float, float]  # label, lhs, rhs, tolerance

A, B, C = 0, 1, 2

# streams tried per gated sample before it is reported NOT_APPLICABLE
GATE_ATTEMPTS = 64

CLAIM_KIND: Dict[ClaimId, ClaimKind] = {
    ClaimId.EQ1_SLACK: "inequality",
    ClaimId.EQ2: "inequality",
    ClaimId.EQ3: "inequality",
    ClaimId.EQ6: "equality",
    ClaimId.EQ7: "equality",
    ClaimId.EQ8: "inequality",
    ClaimId.EQ9: "equality",
    ClaimId.EQ10: "inequality",
    ClaimId.EQ11: "equality",
    ClaimId.EQ14: "equality",
    ClaimId.EQ15: "equality",
    ClaimId.EQ16: "inequality",
    ClaimId.EQ17_CASE: "equality",
    ClaimId.PROP1: "inequality",
    ClaimId.PROP2: "inequality",
    ClaimId.DISCORD_EF_SUM: "equality",
    ClaimId.EQ10_MIRROR: "inequality",
    ClaimId.J_SWAP: "inequality",
    ClaimId.MIXED_J: "inequality",
}
CLAIM_TOLERANCE: Dict[ClaimId, float] = {c: TAU_OPT for c in ClaimId}
CLAIM_TOLERANCE.update({
    ClaimId.EQ1_SLACK: TAU_EQ1,
    ClaimId.EQ2: TAU_EXACT,
    ClaimId.EQ3: TAU_EXACT,
    ClaimId.EQ16: TAU_EXACT,
})

# S(A|B) < -TAU_OPT or the claim says nothing
GATED = frozenset({
    ClaimId.EQ8,
    ClaimId.EQ10,
    ClaimId.EQ10_MIRROR,
    ClaimId.J_SWAP,
    ClaimId.PROP1,
    ClaimId.PROP2,
    ClaimId.MIXED_J,
})
PURE_TRIPARTITE = frozenset({
    ClaimId.EQ6,
    ClaimId.EQ7,
    ClaimId.EQ8,
    ClaimId.EQ9,
    ClaimId.EQ10,
    ClaimId.EQ10_MIRROR,
    ClaimId.EQ11,
    ClaimId.EQ14,
    ClaimId.EQ15,
    ClaimId.PROP1,
    ClaimId.PROP2,
    ClaimId.DISCORD_EF_SUM,
    ClaimId.J_SWAP,
})


class _Parties:
    """Quantities of one tripartite state, each computed at most once."""

    def __init__(self, rho: DensityMatrix, psi: Optional[PureState] = None):
        self.rho = rho
        self.psi = psi
        self._memo: Dict[tuple, float] = {}

    def _get(self, key: tuple, fn: Callable[[], float]) -> float:
        if key not in self._memo:
            self._memo[key] = float(fn())
        return self._memo[key]

    def s(self, *parties: int) -> float:
        parties = tuple(sorted(parties))
        if self.psi is not None:
            return self._get(("s",) + parties, lambda: entropy_bits(reduced_from_pure(self.psi.amplitudes, self.psi.dims, parties)))
        return self._get(("s",) + parties, lambda: marginal_entropy(self.rho, parties))

    def s_cond(self, of: int, given: int) -> float:
        return self.s(of, given) - self.s(given)

    def j(self, target: int, measured: int) -> float:
        return self._get(("j", target, measured), lambda: measured_classical_correlation(self.rho, measured, target).value)

    def d(self, target: int, measured: int) -> float:
        return self._get(("d", target, measured), lambda: measured_discord(self.rho, measured, target).value)

    def e_f(self, x: int, y: int) -> float:
        pair = tuple(sorted((x, y)))
        return self._get(("ef",) + pair, lambda: entanglement_of_formation(partial_trace(self.rho, pair)))

    def e_a(self, pair: Tuple[int, int], helper: int) -> float:
        return self._get(("ea", helper) + tuple(pair), lambda: entanglement_of_assistance(self.psi, pair, helper))

    def e_u(self, target: int, measured: int) -> float:
        return self._get(("eu", target, measured), lambda: unlocalizable_entanglement(measured_pair(self.rho, measured, target)))

    def delta_u(self, target: int, measured: int) -> float:
        return self._get(("du", target, measured), lambda: unlocalizable_discord(measured_pair(self.rho, measured, target)).value)


def _as_pure(state: State) -> PureState:
    if isinstance(state, PureState):
        return state
    if not is_pure(state):
        raise NotApplicable("this claim is stated for a pure tripartite state")
    _, v = eigh(state.mat)
    return PureState.from_amplitudes(v[:, 0], state.dims)


def _from_checks(claim: ClaimId, checks: Sequence[Check], spec: Optional[StateSpec]) -> ClaimResult:
    """One result per claim: the check furthest outside (or closest to) its tolerance."""
    kind = CLAIM_KIND[claim]
    label, lhs, rhs, tol = max(checks, key=lambda c: badness(kind, c[1] - c[2]) / c[3])
    residual = lhs - rhs
    return ClaimResult(
        claim_id=claim,
        kind=kind,
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        status=judge(kind, residual, tol),
        tolerance_used=tol,
        state_spec=spec,
        detail=label,
    )


def _not_applicable(claim: ClaimId, s_a_given_b: float, spec: Optional[StateSpec]) -> ClaimResult:
    return ClaimResult(
        claim_id=claim,
        kind=CLAIM_KIND[claim],
        lhs=s_a_given_b,
        rhs=-TAU_OPT,
        residual=s_a_given_b + TAU_OPT,
        status="NOT_APPLICABLE",
        tolerance_used=CLAIM_TOLERANCE[claim],
        state_spec=spec,
        detail="S(A|B) < -tau_opt does not hold",
    )


def _checks_for(claim: ClaimId, q: _Parties, obs: Optional[ObservablePair]) -> List[Check]:
    tol = CLAIM_TOLERANCE[claim]
    n = q.rho.space.n_subsystems

    if claim == ClaimId.EQ1_SLACK:
        obs = obs or named_observable_pair("Z,X", q.rho.dims[0])
        rep = uncertainty_report(q.rho, obs)
        return [("S(Q|B)+S(R|B) >= log2(1/c)+S(A|B)", rep.lhs, rep.ub, tol)]
    if claim == ClaimId.EQ16:
        rest = tuple(range(1, n))
        s_a, s_b = q.s(A), q.s(*rest)
        return [("S(AB) >= |S(A)-S(B)|", von_neumann_entropy(q.rho), abs(s_a - s_b), tol)]
    if claim == ClaimId.EQ2:
        return [("S(A|B)+S(A|C) >= 0", q.s_cond(A, B) + q.s_cond(A, C), 0.0, tol)]
    if claim == ClaimId.EQ3:
        total = sum(q.s_cond(A, i) for i in range(1, n))
        return [("sum_i S(A|X_i) >= 0", total, 0.0, tol)]
    if claim == ClaimId.EQ6:
        return [
            ("E_f(BC)+J(B|A) = S(B)", q.e_f(B, C) + q.j(B, A), q.s(B), tol),
            ("E_f(CB)+J(C|A) = S(C)", q.e_f(C, B) + q.j(C, A), q.s(C), tol),
        ]
    if claim == ClaimId.EQ7:
        return [
            ("D(B|A)+S(B|A) = E_f(BC)", q.d(B, A) + q.s_cond(B, A), q.e_f(B, C), tol),
            ("D(C|A)+S(C|A) = E_f(CB)", q.d(C, A) + q.s_cond(C, A), q.e_f(C, B), tol),
        ]
    if claim == ClaimId.EQ8:
        return [("S(C)+E_f(AB) >= S(B)+E_f(CA)", q.s(C) + q.e_f(A, B), q.s(B) + q.e_f(C, A), tol)]
    if claim == ClaimId.EQ9:
        return [
            ("D(B|A)+J(C|A) = S(A)", q.d(B, A) + q.j(C, A), q.s(A), tol),
            ("D(C|A)+J(B|A) = S(A)", q.d(C, A) + q.j(B, A), q.s(A), tol),
        ]
    if claim == ClaimId.EQ10:
        return [
            ("D(A|B) >= E_f(AC)", q.d(A, B), q.e_f(A, C), tol),
            ("E_f(AB) >= D(A|B)", q.e_f(A, B), q.d(A, B), tol),
        ]
    if claim == ClaimId.EQ10_MIRROR:
        return [
            ("D(A|C) >= E_f(AC)", q.d(A, C), q.e_f(A, C), tol),
            ("E_f(AB) >= D(A|C)", q.e_f(A, B), q.d(A, C), tol),
        ]
    if claim == ClaimId.EQ11:
        return [("S(A|B) = D(C|A)-D(B|A)", q.s_cond(A, B), q.d(C, A) - q.d(B, A), tol)]
    if claim == ClaimId.EQ14:
        return [
            ("E_a(BC)+E_u(BA) = S(B)", q.e_a((B, C), A) + q.e_u(B, A), q.s(B), tol),
            ("E_a(CB)+E_u(CA) = S(C)", q.e_a((C, B), A) + q.e_u(C, A), q.s(C), tol),
        ]
    if claim == ClaimId.EQ15:
        return [
            ("delta_u(BA)+S(B|A) = E_a(BC)", q.delta_u(B, A) + q.s_cond(B, A), q.e_a((B, C), A), tol),
            ("delta_u(CA)+S(C|A) = E_a(CB)", q.delta_u(C, A) + q.s_cond(C, A), q.e_a((C, B), A), tol),
        ]
    if claim == ClaimId.PROP1:
        return [
            ("D(B|A) > D(C|A)", q.d(B, A), q.d(C, A), tol),
            ("J(B|A) > J(C|A)", q.j(B, A), q.j(C, A), tol),
            ("E_f(AB) > E_f(AC)", q.e_f(A, B), q.e_f(A, C), tol),
        ]
    if claim == ClaimId.PROP2:
        return [
            ("E_u(BA) > E_u(CA)", q.e_u(B, A), q.e_u(C, A), tol),
            ("delta_u(BA) > delta_u(CA)", q.delta_u(B, A), q.delta_u(C, A), tol),
        ]
    if claim == ClaimId.DISCORD_EF_SUM:
        return [("D(A|B)+D(A|C) = E_f(AB)+E_f(AC)", q.d(A, B) + q.d(A, C), q.e_f(A, B) + q.e_f(A, C), tol)]
    if claim == ClaimId.J_SWAP:
        return [("J(C|B) >= J(B|C)", q.j(C, B), q.j(B, C), tol)]
    if claim == ClaimId.MIXED_J:
        return [("J(B|A) > J(C|A)", q.j(B, A), q.j(C, A), tol)]
    raise NotApplicable(f"no audit for {claim.value}")


def audit_claim(
    claim_id: Union[ClaimId, str],
    state: State,
    obs: Optional[ObservablePair] = None,
    spec: Optional[StateSpec] = None,
) -> ClaimResult:
    claim = ClaimId(claim_id)
    if claim == ClaimId.EQ17_CASE:
        if not isinstance(state, DensityMatrix):
            raise NotApplicable("EQ17_CASE needs a state built by make_factorized")
        return check_factorization_case(state, spec)

    psi: Optional[PureState] = None
    if claim in PURE_TRIPARTITE:
        psi = _as_pure(state)
        rho = density_from_pure(psi)
    else:
        rho = as_density(state)

    n = rho.space.n_subsystems
    if claim in (ClaimId.EQ1_SLACK, ClaimId.EQ16) and n < 2:
        raise DimensionMismatch(f"{claim.value} needs a bipartite state, got dims {rho.dims}")
    if claim == ClaimId.EQ3 and n < 3:
        raise DimensionMismatch(f"EQ3 needs Alice and at least two players, got dims {rho.dims}")
    if claim not in (ClaimId.EQ1_SLACK, ClaimId.EQ16, ClaimId.EQ3) and n != 3:
        raise DimensionMismatch(f"{claim.value} needs a tripartite state, got dims {rho.dims}")

    q = _Parties(rho, psi)
    if claim in GATED:
        gate = q.s_cond(A, B)
        if not gate < -TAU_OPT:
            return _not_applicable(claim, gate, spec)
    result = _from_checks(claim, _checks_for(claim, q, obs), spec)
    if result.status == "FAIL":
        logger.warning("%s failed (%s): residual %.3e on %s", claim.value, result.detail, result.residual, spec)
    return result


def check_factorization_case(rho_ab: DensityMatrix, spec: Optional[StateSpec] = None) -> ClaimResult:
    """S(A|B) = -S(A) for rho_AB = |psi><psi| (x) rho_{B^R}, and the correlations of its purification."""
    if rho_ab.origin is None:
        raise NotApplicable("state carries no factorization record; build it with make_factorized")
    if rho_ab.space.n_subsystems != 2:
        raise DimensionMismatch(f"expected rho_AB, got dims {rho_ab.dims}")
    s_a = marginal_entropy(rho_ab, A)
    s_b = marginal_entropy(rho_ab, B)
    s_ab = von_neumann_entropy(rho_ab)
    psi = purify(rho_ab)
    q = _Parties(density_from_pure(psi), psi)
    checks: List[Check] = [
        ("S(A|B) = -S(A)", s_ab - s_b, -s_a, TAU_EXACT),
        ("D(B|A) = S(A)", q.d(B, A), s_a, TAU_OPT),
        ("J(B|A) = S(A)", q.j(B, A), s_a, TAU_OPT),
        ("J(C|A) = 0", q.j(C, A), 0.0, TAU_OPT),
        ("D(C|A) = 0", q.d(C, A), 0.0, TAU_OPT),
    ]
    return _from_checks(ClaimId.EQ17_CASE, checks, spec)


def _sample_spec(claim: ClaimId, seed: int, index: int, stream: int, dims: Optional[Tuple[int, ...]]) -> StateSpec:
    if claim in (ClaimId.EQ1_SLACK, ClaimId.EQ16):
        return StateSpec(family="random_mixed", dims=(2, 2), rank=1 + index % 4, seed=seed, stream=stream)
    if claim in (ClaimId.EQ2, ClaimId.MIXED_J):
        return StateSpec(family="random_mixed", dims=(2, 2, 2), rank=1 + index % 8, seed=seed, stream=stream)
    if claim == ClaimId.EQ3:
        dims = tuple(dims) if dims else (2, 2, 2, 2)
        return StateSpec(family="random_mixed", dims=dims, rank=1 + index % prod(dims), seed=seed, stream=stream)
    if claim == ClaimId.EQ17_CASE:
        p, q = stream_rng(seed, stream).uniform(size=2)
        return StateSpec(family="factorized_eq17", p=float(p), q=float(q))
    return StateSpec(family="haar_pure", dims=(2, 2, 2), seed=seed, stream=stream)


def passes_gate(spec: StateSpec) -> bool:
    return conditional_entropy(as_density(build_state(spec)), A, B) < -TAU_OPT


def default_sample_spec(claim: ClaimId, seed: int, index: int, dims: Optional[Tuple[int, ...]] = None) -> StateSpec:
    """
    State drawn for sample `index` of a batch audit of `claim`.

    Ungated claims use stream `index`. Gated claims walk the block of streams
    index*GATE_ATTEMPTS onwards and keep the first state with S(A|B) < -TAU_OPT,
    so every sample owns its streams and a batch is the same at any worker count.
    """
    if claim not in GATED:
        return _sample_spec(claim, seed, index, index, dims)
    first = index * GATE_ATTEMPTS
    for stream in range(first, first + GATE_ATTEMPTS):
        spec = _sample_spec(claim, seed, index, stream, dims)
        if passes_gate(spec):
            return spec
    logger.info("%s sample %d: no gated state in streams %d..%d", claim.value, index, first, stream)
    return spec


def _audit_sample(job: Tuple[str, int, int, Optional[Tuple[int, ...]]]) -> ClaimResult:
    claim_id, seed, index, dims = job
    claim = ClaimId(claim_id)
    spec = default_sample_spec(claim, seed, index, dims)
    return audit_claim(claim, build_state(spec), spec=spec)


def summarize(claim: ClaimId, results: Sequence[ClaimResult]) -> BatchSummary:
    applicable = [r for r in results if r.status != "NOT_APPLICABLE"]
    worst = max(applicable, key=lambda r: badness(r.kind, r.residual) / r.tolerance_used, default=None)
    return BatchSummary(
        claim_id=claim,
        n=len(results),
        passes=sum(1 for r in results if r.status == "PASS"),
        failures=sum(1 for r in results if r.status == "FAIL"),
        not_applicable=len(results) - len(applicable),
        worst_residual=worst.residual if worst else None,
        worst_spec=worst.state_spec.to_text() if worst and worst.state_spec else None,
        tolerance_used=worst.tolerance_used if worst else CLAIM_TOLERANCE[claim],
    )


def audit_random_batch(
    claim_id: Union[ClaimId, str],
    n_samples: int,
    dims: Optional[Sequence[int]] = None,
    seed: int = 0,
    workers: Optional[int] = None,
    progress: Optional[bool] = None,
) -> BatchSummary:
    claim = ClaimId(claim_id)
    if n_samples < 1:
        raise ParamOutOfRange(f"n_samples must be at least 1, got {n_samples}")
    dims = tuple(dims) if dims else None
    jobs = [(claim.value, seed, i, dims) for i in range(n_samples)]
    results = ordered_map(_audit_sample, jobs, workers=workers, progress=progress, desc=claim.value)
    summary = summarize(claim, results)
    logger.info(
        "%s: %d passes, %d failures, %d not applicable, worst residual %s",
        claim.value,
        summary.passes,
        summary.failures,
        summary.not_applicable,
        summary.worst_residual,
    )
    return summary


def audit_suite(
    claims: Optional[Sequence[Union[ClaimId, str]]] = None,
    n_samples: int = 1000,
    seed: int = 0,
    dims: Optional[Sequence[int]] = None,
    workers: Optional[int] = None,
    progress: Optional[bool] = None,
) -> List[BatchSummary]:
    chosen = [ClaimId(c) for c in claims] if claims else list(ClaimId)
    return [audit_random_batch(c, n_samples, dims=dims, seed=seed, workers=workers, progress=progress) for c in chosen]
