"""Defect operator polynomials and the classifiers and audits built on them.

The central objects are the m-isometry defect

    sum_k (-1)^(m-k) C(m,k) sum_{|alpha|=k} (k!/alpha!) T*^alpha T^alpha

and the joint (m; (q_1,...,q_d))-partial-isometry defect, which premultiplies
the inner alternating sum (with (-1)^k signs) by the monomial T^q. The two
sign conventions differ by a global factor (-1)^m, so zero-tests agree; norms
are reported under the (-1)^k convention.

Because the sums alternate and cancel, every zero-test is relative to the
largest level summand rather than to the final value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    NumericalFailureError,
    ToleranceModel,
    adjoint,
    frobenius_norm,
    null_space_basis,
)
from .multiindex import enumerate_multiindices, multinomial_weight, validate_multiindex
from .reports import (
    NOTE_PROP21_HYPOTHESIS,
    NOTE_THM21_SIGN,
    AuditReport,
    SubVerdict,
    Witness,
    build_report,
)
from .tuples import OperatorTuple, null_reducing_check, quasinormal_class, tuple_power


@dataclass(frozen=True)
class DefectResult:
    """A defect operator with the norm and reference scale of its zero-test."""

    matrix: np.ndarray
    norm: float
    scale: float
    is_zero: bool


def level_sums(t: OperatorTuple, kmax: int) -> list[np.ndarray]:
    """The inner sums sum_{|alpha|=k} (k!/alpha!) (T^alpha)* (T^alpha), k = 0..kmax."""
    sums = []
    for k in range(kmax + 1):
        acc = np.zeros((t.dim, t.dim), dtype=np.complex128)
        for alpha in enumerate_multiindices(t.d, k):
            power = tuple_power(t, alpha)
            acc += multinomial_weight(alpha) * (adjoint(power) @ power)
        sums.append(acc)
    return sums


def _validated_exponent(t: OperatorTuple, q) -> tuple[int, ...]:
    q = validate_multiindex(q)
    if len(q) != t.d:
        raise ValueError(f"exponent vector has {len(q)} entries, tuple has d = {t.d}")
    return q


def isometry_defect(
    t: OperatorTuple, m: int, tol: ToleranceModel = DEFAULT_TOL
) -> DefectResult:
    """The m-isometry defect, with its (-1)^(m-k) signs as defined."""
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")
    inner = level_sums(t, m)
    defect = sum(
        (-1) ** (m - k) * math.comb(m, k) * inner[k] for k in range(m + 1)
    )
    scale = max(math.comb(m, k) * frobenius_norm(inner[k]) for k in range(m + 1))
    norm = frobenius_norm(defect)
    return DefectResult(matrix=defect, norm=norm, scale=scale, is_zero=tol.is_zero(norm, scale))


def partial_isometry_defect(
    t: OperatorTuple, m: int, q, tol: ToleranceModel = DEFAULT_TOL
) -> DefectResult:
    """The joint (m; q)-partial-isometry defect T^q sum_k (-1)^k C(m,k) (...)."""
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")
    q = _validated_exponent(t, q)
    inner = level_sums(t, m)
    front = tuple_power(t, q)
    levels = [math.comb(m, k) * (front @ inner[k]) for k in range(m + 1)]
    defect = sum((-1) ** k * levels[k] for k in range(m + 1))
    scale = max(frobenius_norm(lv) for lv in levels)
    norm = frobenius_norm(defect)
    return DefectResult(matrix=defect, norm=norm, scale=scale, is_zero=tol.is_zero(norm, scale))


def scalar_defect(t: OperatorTuple, m: int, q, x, check_tol: float = 1e-8) -> float:
    """The vector-state defect sum_k (-1)^k C(m,k) sum_alpha (k!/alpha!) ||T^alpha T*^q x||^2.

    Evaluated term by term, independent of the operator-defect path. The value
    is real up to accumulation residue; a non-negligible imaginary part
    (beyond check_tol times the largest level magnitude) raises.
    """
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")
    q = _validated_exponent(t, q)
    x = np.asarray(x, dtype=np.complex128).reshape(-1)
    if x.shape[0] != t.dim:
        raise ValueError(f"vector has length {x.shape[0]}, expected {t.dim}")
    shifted = adjoint(tuple_power(t, q)) @ x
    total = 0.0 + 0.0j
    level_magnitudes = []
    for k in range(m + 1):
        level = 0.0 + 0.0j
        for alpha in enumerate_multiindices(t.d, k):
            z = tuple_power(t, alpha) @ shifted
            level += multinomial_weight(alpha) * np.vdot(z, z)
        level *= math.comb(m, k)
        level_magnitudes.append(abs(level))
        total += (-1) ** k * level
    scale = max(level_magnitudes)
    if abs(total.imag) > check_tol * max(1.0, scale):
        raise NumericalFailureError(
            "scalar defect has a non-negligible imaginary part",
            {"imag": total.imag, "scale": scale},
        )
    return float(total.real)


def _entrywise_invertible(t: OperatorTuple, tol: ToleranceModel) -> tuple[bool, ...]:
    flags = []
    for m in t:
        s = np.linalg.svd(m, compute_uv=False)
        flags.append(bool(s[-1] > tol.rank_cutoff(t.dim, float(s[0]))))
    return tuple(flags)


@dataclass(frozen=True)
class ClassificationReport:
    """Bundle of the classification predicates for one (T, m, q) instance.

    The isometry-defect norm is identical under both printed sign conventions
    (they differ by a global sign), so a single number serves both.
    """

    m: int
    q: tuple[int, ...]
    partial_isometry: bool
    partial_defect_norm: float
    partial_defect_scale: float
    isometry: bool
    isometry_defect_norm: float
    isometry_defect_scale: float
    quasinormal_matricial: bool
    quasinormal_joint: bool
    quasinormal_spherical: bool
    null_reducing: bool
    null_dim: int
    entrywise_invertible: tuple[bool, ...]
    tolerances: ToleranceModel

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "q": list(self.q),
            "partial_isometry": self.partial_isometry,
            "partial_defect_norm": self.partial_defect_norm,
            "partial_defect_scale": self.partial_defect_scale,
            "isometry": self.isometry,
            "isometry_defect_norm": self.isometry_defect_norm,
            "isometry_defect_scale": self.isometry_defect_scale,
            "quasinormal": {
                "matricial": self.quasinormal_matricial,
                "joint": self.quasinormal_joint,
                "spherical": self.quasinormal_spherical,
            },
            "null_reducing": self.null_reducing,
            "null_dim": self.null_dim,
            "entrywise_invertible": list(self.entrywise_invertible),
            "tolerances": {
                "abs_tol": self.tolerances.abs_tol,
                "rel_tol": self.tolerances.rel_tol,
                "rank_factor": self.tolerances.rank_factor,
            },
        }


def classify(
    t: OperatorTuple, m: int, q, tol: ToleranceModel = DEFAULT_TOL
) -> ClassificationReport:
    q = _validated_exponent(t, q)
    partial = partial_isometry_defect(t, m, q, tol)
    isom = isometry_defect(t, m, tol)
    flags = quasinormal_class(t, tol)
    reducing, basis = null_reducing_check(t, q, tol)
    return ClassificationReport(
        m=m,
        q=q,
        partial_isometry=partial.is_zero,
        partial_defect_norm=partial.norm,
        partial_defect_scale=partial.scale,
        isometry=isom.is_zero,
        isometry_defect_norm=isom.norm,
        isometry_defect_scale=isom.scale,
        quasinormal_matricial=flags.matricial,
        quasinormal_joint=flags.joint,
        quasinormal_spherical=flags.spherical,
        null_reducing=reducing,
        null_dim=basis.shape[1],
        entrywise_invertible=_entrywise_invertible(t, tol),
        tolerances=tol,
    )


def _scalar_states(t: OperatorTuple, polarize: bool) -> list[np.ndarray]:
    eye = np.eye(t.dim, dtype=np.complex128)
    states = [eye[:, i] for i in range(t.dim)]
    if polarize:
        for i in range(t.dim):
            for j in range(i + 1, t.dim):
                states.append(eye[:, i] + eye[:, j])
                states.append(eye[:, i] - eye[:, j])
                states.append(eye[:, i] + 1j * eye[:, j])
                states.append(eye[:, i] - 1j * eye[:, j])
    return states


def audit_theorem_2_1(
    t: OperatorTuple,
    m: int,
    q,
    tol: ToleranceModel = DEFAULT_TOL,
    seed: int = 0,
    polarize: bool = False,
) -> AuditReport:
    """Equivalence of the operator defect vanishing and the vector-state form.

    Hypothesis: N(T^q) reduces every component. The vector-state side
    quantifies over the standard basis (optionally the polarized combinations
    e_i +- e_j, e_i +- i e_j) applied through T*^q-shifted states.
    """
    q = _validated_exponent(t, q)
    reducing, basis = null_reducing_check(t, q, tol)
    operator = partial_isometry_defect(t, m, q, tol)

    worst = 0.0
    worst_state = None
    scalar_all_zero = True
    for x in _scalar_states(t, polarize):
        value = scalar_defect(t, m, q, x)
        if abs(value) > worst:
            worst = abs(value)
            worst_state = x
        if not tol.is_zero(abs(value), operator.scale):
            scalar_all_zero = False

    both_directions = operator.is_zero == scalar_all_zero
    witnesses = []
    if worst_state is not None and not scalar_all_zero:
        witnesses.append(Witness("max-scalar-defect state", tuple(worst_state)))

    subs = (
        SubVerdict(
            name="operator-zero iff vector-state-zero",
            hypotheses_hold=reducing,
            conclusion_holds=both_directions,
            vacuous=not reducing,
            details={
                "operator_defect_zero": operator.is_zero,
                "scalar_defect_all_zero": scalar_all_zero,
                "max_scalar_defect": worst,
                "polarized_states": polarize,
            },
        ),
    )
    return build_report(
        claim_id="thm2.1",
        hypothesis_breakdown={"null_space_reducing": reducing},
        sub_verdicts=subs,
        witnesses=witnesses,
        norms={
            "partial_defect_norm": operator.norm,
            "partial_defect_scale": operator.scale,
            "max_scalar_defect": worst,
            "null_dim": float(basis.shape[1]),
        },
        tolerances=tol,
        seed=seed,
        notes=(NOTE_THM21_SIGN,),
    )


def _null_spaces_stable(t: OperatorTuple, tol: ToleranceModel) -> bool:
    """N(T_j) = N(T_j^2) for every component, compared by mutual projection."""
    for m in t:
        b1 = null_space_basis(m, tol)
        b2 = null_space_basis(m @ m, tol)
        if b1.shape[1] != b2.shape[1]:
            return False
        if b1.shape[1] == 0:
            continue
        p1 = b1 @ adjoint(b1)
        p2 = b2 @ adjoint(b2)
        eye = np.eye(t.dim)
        gap = max(
            frobenius_norm((eye - p2) @ b1),
            frobenius_norm((eye - p1) @ b2),
        )
        if gap > tol.abs_tol + tol.rel_tol + 1e-8:
            return False
    return True


def _ascent_scalar(t: OperatorTuple, m: int, q, x) -> float:
    """sum_j sum_k (-1)^k C(m,k) sum_{|alpha|=k} (k!/alpha!) ||T^alpha T_j T*^q x||^2."""
    shifted = adjoint(tuple_power(t, q)) @ np.asarray(x, dtype=np.complex128).reshape(-1)
    total = 0.0
    for j in range(t.d):
        y = t[j] @ shifted
        for k in range(m + 1):
            level = 0.0
            for alpha in enumerate_multiindices(t.d, k):
                z = tuple_power(t, alpha) @ y
                level += multinomial_weight(alpha) * float(np.vdot(z, z).real)
            total += (-1) ** k * math.comb(m, k) * level
    return total


def audit_theorem_2_3(
    t: OperatorTuple, m: int, q, tol: ToleranceModel = DEFAULT_TOL, seed: int = 0
) -> AuditReport:
    """Ascent: an (m; q)-partial isometry with reducing N(T^q) stays one at m+1, m+2."""
    q = _validated_exponent(t, q)
    base = partial_isometry_defect(t, m, q, tol)
    reducing, _ = null_reducing_check(t, q, tol)
    up1 = partial_isometry_defect(t, m + 1, q, tol)
    up2 = partial_isometry_defect(t, m + 2, q, tol)
    hyp = base.is_zero and reducing
    subs = (
        SubVerdict(
            name="defect stays zero at m+1 and m+2",
            hypotheses_hold=hyp,
            conclusion_holds=up1.is_zero and up2.is_zero,
            vacuous=not hyp,
            details={
                "defect_m_zero": base.is_zero,
                "null_space_reducing": reducing,
                "defect_m_plus_1_norm": up1.norm,
                "defect_m_plus_2_norm": up2.norm,
            },
        ),
    )
    return build_report(
        claim_id="thm2.3",
        hypothesis_breakdown={"partial_isometry": base.is_zero, "null_space_reducing": reducing},
        sub_verdicts=subs,
        norms={
            "defect_m_norm": base.norm,
            "defect_m_plus_1_norm": up1.norm,
            "defect_m_plus_2_norm": up2.norm,
            "defect_scale": base.scale,
        },
        tolerances=tol,
        seed=seed,
    )


def audit_theorem_2_2(
    t: OperatorTuple, m: int, q, tol: ToleranceModel = DEFAULT_TOL, seed: int = 0
) -> AuditReport:
    """Stable null spaces collapse any (m; q)-partial isometry to q = (1,...,1)."""
    q = _validated_exponent(t, q)
    base = partial_isometry_defect(t, m, q, tol)
    stable = _null_spaces_stable(t, tol)
    ones = partial_isometry_defect(t, m, (1,) * t.d, tol)
    hyp = base.is_zero and stable
    subs = (
        SubVerdict(
            name="collapse to q = (1,...,1)",
            hypotheses_hold=hyp,
            conclusion_holds=ones.is_zero,
            vacuous=not hyp,
            details={
                "defect_q_zero": base.is_zero,
                "null_spaces_stable": stable,
                "defect_ones_norm": ones.norm,
            },
        ),
    )
    return build_report(
        claim_id="thm2.2",
        hypothesis_breakdown={"partial_isometry": base.is_zero, "null_spaces_stable": stable},
        sub_verdicts=subs,
        norms={"defect_q_norm": base.norm, "defect_ones_norm": ones.norm},
        tolerances=tol,
        seed=seed,
    )


def audit_proposition_2_1(
    t: OperatorTuple, m: int, tol: ToleranceModel = DEFAULT_TOL, seed: int = 0
) -> AuditReport:
    """Quasinormal (m; 1...1)-partial isometries are already (1; 1...1) ones.

    The statement assumes joint quasinormality while the proof uses the
    matricial kind; both flags are recorded and the stated (joint) hypothesis
    drives the verdict.
    """
    ones = (1,) * t.d
    flags = quasinormal_class(t, tol)
    base = partial_isometry_defect(t, m, ones, tol)
    first = partial_isometry_defect(t, 1, ones, tol)
    hyp = flags.joint and base.is_zero
    subs = (
        SubVerdict(
            name="order drops to m = 1",
            hypotheses_hold=hyp,
            conclusion_holds=first.is_zero,
            vacuous=not hyp,
            details={
                "jointly_quasinormal": flags.joint,
                "matricially_quasinormal": flags.matricial,
                "defect_m_zero": base.is_zero,
                "defect_1_norm": first.norm,
            },
        ),
    )
    return build_report(
        claim_id="prop2.1",
        hypothesis_breakdown={"jointly_quasinormal": flags.joint, "partial_isometry": base.is_zero},
        sub_verdicts=subs,
        norms={"defect_m_norm": base.norm, "defect_1_norm": first.norm},
        tolerances=tol,
        seed=seed,
        notes=(NOTE_PROP21_HYPOTHESIS,),
    )


def audit_proposition_2_4(
    t: OperatorTuple, m: int, q, tol: ToleranceModel = DEFAULT_TOL, seed: int = 0
) -> AuditReport:
    """Given an (m; q)-partial isometry, (m+1; q) holds iff the shifted
    vector-state sum over the components vanishes on all basis states."""
    q = _validated_exponent(t, q)
    base = partial_isometry_defect(t, m, q, tol)
    up = partial_isometry_defect(t, m + 1, q, tol)
    eye = np.eye(t.dim, dtype=np.complex128)
    values = [_ascent_scalar(t, m, q, eye[:, i]) for i in range(t.dim)]
    worst = max(abs(v) for v in values)
    identity_zero = tol.is_zero(worst, max(1.0, base.scale))
    hyp = base.is_zero
    subs = (
        SubVerdict(
            name="(m+1; q) iff shifted identity vanishes",
            hypotheses_hold=hyp,
            conclusion_holds=up.is_zero == identity_zero,
            vacuous=not hyp,
            details={
                "defect_m_plus_1_zero": up.is_zero,
                "identity_sum_zero": identity_zero,
                "max_identity_sum": worst,
            },
        ),
    )
    return build_report(
        claim_id="prop2.4",
        hypothesis_breakdown={"partial_isometry": base.is_zero},
        sub_verdicts=subs,
        norms={
            "defect_m_norm": base.norm,
            "defect_m_plus_1_norm": up.norm,
            "max_identity_sum": worst,
        },
        tolerances=tol,
        seed=seed,
    )


def audit_ascent_theorems(
    t: OperatorTuple, m: int, q, tol: ToleranceModel = DEFAULT_TOL, seed: int = 0
) -> AuditReport:
    """Bundle of the four order/exponent reduction claims as sub-verdicts."""
    parts = (
        audit_theorem_2_3(t, m, q, tol, seed),
        audit_theorem_2_2(t, m, q, tol, seed),
        audit_proposition_2_4(t, m, q, tol, seed),
        audit_proposition_2_1(t, m, tol, seed),
    )
    subs = []
    breakdown = {}
    norms = {}
    notes: list[str] = []
    for part in parts:
        for sv in part.sub_verdicts:
            subs.append(
                SubVerdict(
                    name=f"{part.claim_id}: {sv.name}",
                    hypotheses_hold=sv.hypotheses_hold,
                    conclusion_holds=sv.conclusion_holds,
                    vacuous=sv.vacuous,
                    details=sv.details,
                )
            )
        for key, value in part.hypothesis_breakdown.items():
            breakdown[f"{part.claim_id}:{key}"] = value
        for key, value in part.norms.items():
            norms[f"{part.claim_id}:{key}"] = value
        for note in part.paper_discrepancy_notes:
            if note not in notes:
                notes.append(note)
    return build_report(
        claim_id="ascent",
        hypothesis_breakdown=breakdown,
        sub_verdicts=subs,
        norms=norms,
        tolerances=tol,
        seed=seed,
        notes=notes,
    )
