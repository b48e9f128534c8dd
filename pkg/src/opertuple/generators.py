"""Deterministic instance factories: worked examples and seeded random families.

Every random draw flows from a single 64-bit seed through numpy's splittable
SeedSequence, so identical specs produce bit-identical tuples and parallel
consumers can derive disjoint streams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import DEFAULT_TOL, ToleranceModel, adjoint, as_matrix, frobenius_norm
from .tuples import OperatorTuple, make_tuple

_GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0

PAPER_EXAMPLE_IDS = ("2.1(d)", "2.2", "3.golden(d)", "4.1-as-printed", "4.1-corrected")


def example_2_1_matrix() -> np.ndarray:
    s = 1.0 / math.sqrt(2.0)
    return np.array(
        [[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [s, s, 0.0]], dtype=np.complex128
    )


def example_2_2_matrices() -> tuple[np.ndarray, np.ndarray]:
    t1 = np.array(
        [[0.0, 1j, 0.0], [0.0, 0.0, 1j], [1j, 0.0, 0.0]], dtype=np.complex128
    )
    return t1, np.eye(3, dtype=np.complex128)


def golden_ratio_matrix() -> np.ndarray:
    a = math.sqrt(_GOLDEN)
    return np.array([[a, 0.0], [1.0, 0.0]], dtype=np.complex128)


def example_4_1_matrices() -> tuple[np.ndarray, np.ndarray]:
    t1 = np.array([[1.0, 1.0], [0.0, 1.0]], dtype=np.complex128)
    s1 = np.array([[1.0, -1.0], [0.0, 1.0]], dtype=np.complex128)
    return t1, s1


@dataclass(frozen=True)
class PaperExample:
    """A worked example: the tuple, suggested (m, q), and expected verdicts.

    ``partner`` carries the candidate m-inverse tuple for the inverse
    examples and is None otherwise.
    """

    id: str
    tuple: OperatorTuple
    m: int
    q: tuple[int, ...] | None
    expected: dict
    partner: OperatorTuple | None = None


def _parse_example_id(example_id: str) -> tuple[str, int | None]:
    for stem in ("2.1", "3.golden"):
        if example_id.startswith(stem + "(") and example_id.endswith(")"):
            inner = example_id[len(stem) + 1 : -1]
            try:
                d = int(inner)
            except ValueError:
                raise ValueError(
                    f"bad dimension count in example id {example_id!r}"
                ) from None
            if d < 1:
                raise ValueError(f"example id {example_id!r} needs d >= 1")
            return stem, d
    return example_id, None


def paper_example(example_id: str) -> PaperExample:
    """Construct one of the worked examples, exactly as printed.

    Valid ids: "2.1(d)" and "3.golden(d)" with a literal positive integer d
    (e.g. "2.1(2)"), plus "2.2", "4.1-as-printed", "4.1-corrected".
    """
    stem, d = _parse_example_id(example_id)
    if stem == "2.1":
        base = example_2_1_matrix()
        scale = 1.0 / math.sqrt(d)
        t = make_tuple([scale * base] * d)
        return PaperExample(
            id=example_id,
            tuple=t,
            m=1,
            q=(1,) * d,
            expected={"partial_isometry": True},
        )
    if stem == "3.golden":
        if d < 1:
            raise ValueError("3.golden needs d >= 1")
        a = math.sqrt(_GOLDEN)
        mats = [golden_ratio_matrix()] + [np.zeros((2, 2), dtype=np.complex128)] * (d - 1)
        t = make_tuple(mats)
        return PaperExample(
            id=example_id,
            tuple=t,
            m=2,
            q=(1,) + (0,) * (d - 1),
            expected={
                "partial_isometry": True,
                "point_spectrum": [
                    (complex(a),) + (0j,) * (d - 1),
                    (0j,) * d,
                ],
                "spectral_radius": a,
            },
        )
    if stem == "2.2":
        t1, t2 = example_2_2_matrices()
        t = make_tuple([t1, t2])
        return PaperExample(
            id=example_id,
            tuple=t,
            m=2,
            q=(1, 1),
            expected={
                "partial_isometry": False,
                "pair_defect_norm": math.sqrt(3.0),
                "component_partial_isometry": [True, True],
            },
        )
    if stem in ("4.1-as-printed", "4.1-corrected"):
        t1, s1 = example_4_1_matrices()
        t = make_tuple([t1, t1])
        if stem == "4.1-as-printed":
            partner = make_tuple([s1, s1])
            expected = {
                "left_m_inverse": False,
                "beta_norm": math.sqrt(2.0),
                "m_range": [1, 2, 3, 4],
            }
        else:
            partner = make_tuple([s1 / 2.0, s1 / 2.0])
            expected = {"left_m_inverse": True, "m_range": [1, 2, 3, 4]}
        return PaperExample(
            id=example_id, tuple=t, m=2, q=None, expected=expected, partner=partner
        )
    raise ValueError(
        f"unknown example id {example_id!r}; valid ids are "
        "2.1(d), 2.2, 3.golden(d), 4.1-as-printed, 4.1-corrected"
    )


def scaled_single(a, lam, tol: ToleranceModel = DEFAULT_TOL) -> OperatorTuple:
    """(lambda_1 A, ..., lambda_d A) for a unit vector lambda.

    If A is an (m, q_1)-partial isometry the result is a joint
    (m; (q_1,...,q_d))-partial isometry by the multinomial collapse.
    """
    a = as_matrix(a)
    lam = np.asarray(lam, dtype=np.complex128).reshape(-1)
    if lam.size < 1:
        raise ValueError("lambda must have at least one entry")
    norm = float(np.linalg.norm(lam))
    if abs(norm - 1.0) > 1e-12:
        raise ValueError(f"lambda must lie on the unit sphere, got ||lambda||_2 = {norm}")
    return make_tuple([lj * a for lj in lam], tol)


def _rng(seed_seq: np.random.SeedSequence) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed_seq))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    # Fix phases so the factorization (hence the draw) is unique.
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return q * phases


def random_projection(dim: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    w = random_unitary(dim, rng)
    d = np.zeros(dim)
    d[:rank] = 1.0
    return w @ np.diag(d) @ adjoint(w)


def random_partial_isometry(dim: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    """A = U P with U unitary and P an orthogonal projection.

    Then A (I - A*A) = U P (I - P) = 0, so A is a (1, 1)-partial isometry up
    to roundoff.
    """
    return random_unitary(dim, rng) @ random_projection(dim, rank, rng)


@dataclass(frozen=True)
class GeneratorSpec:
    """Deterministic recipe for one random commuting tuple.

    Schemes: "paper_example" (params: id), "scaled_single" (params: base in
    {"unitary", "partial_isometry"}, optional rank, optional lambda),
    "polynomial_family" (params: degree), "diagonal_conjugate" (params:
    unitary: bool, pi_diagonals: bool), "direct_sum" (params: blocks = list of
    nested spec dicts, optional zero_pad).
    """

    scheme: str
    seed: int
    dim: int
    d: int
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "seed": self.seed,
            "dim": self.dim,
            "d": self.d,
            "params": dict(self.params),
        }

    @staticmethod
    def from_dict(data: dict) -> "GeneratorSpec":
        return GeneratorSpec(
            scheme=data["scheme"],
            seed=data["seed"],
            dim=data["dim"],
            d=data["d"],
            params=dict(data.get("params", {})),
        )


def _bounded(mats: list[np.ndarray]) -> list[np.ndarray]:
    out = []
    for m in mats:
        norm = frobenius_norm(m)
        out.append(m * (10.0 / norm) if norm > 10.0 else m)
    return out


def _polynomial_family(spec: GeneratorSpec, rng: np.random.Generator) -> list[np.ndarray]:
    degree = int(spec.params.get("degree", 3))
    base = rng.standard_normal((spec.dim, spec.dim)) + 1j * rng.standard_normal(
        (spec.dim, spec.dim)
    )
    base /= max(1.0, float(np.linalg.norm(base, 2)))
    mats = []
    for _ in range(spec.d):
        coeffs = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
        acc = np.zeros((spec.dim, spec.dim), dtype=np.complex128)
        power = np.eye(spec.dim, dtype=np.complex128)
        for c in coeffs:
            acc += c * power
            power = power @ base
        mats.append(acc)
    return _bounded(mats)


def _diagonal_conjugate(spec: GeneratorSpec, rng: np.random.Generator) -> list[np.ndarray]:
    unitary = bool(spec.params.get("unitary", True))
    pi_diagonals = bool(spec.params.get("pi_diagonals", False))
    if pi_diagonals:
        # Per coordinate either a unit column (on the sphere) or a column
        # whose product vanishes, so the (m; 1...1) defect is exactly zero.
        diag = np.zeros((spec.d, spec.dim), dtype=np.complex128)
        for i in range(spec.dim):
            col = rng.standard_normal(spec.d) + 1j * rng.standard_normal(spec.d)
            if rng.random() < 0.5:
                col /= np.linalg.norm(col)
            else:
                col[int(rng.integers(spec.d))] = 0.0
            diag[:, i] = col
    else:
        diag = (
            rng.standard_normal((spec.d, spec.dim))
            + 1j * rng.standard_normal((spec.d, spec.dim))
        ) / math.sqrt(spec.d)
    if unitary:
        v = random_unitary(spec.dim, rng)
        v_inv = adjoint(v)
    else:
        v = random_unitary(spec.dim, rng) @ np.diag(
            np.exp(rng.uniform(-0.7, 0.7, spec.dim))
        ) @ random_unitary(spec.dim, rng)
        v_inv = np.linalg.inv(v)
    return _bounded([v @ np.diag(diag[j]) @ v_inv for j in range(spec.d)])


def _direct_sum(spec: GeneratorSpec, seq: np.random.SeedSequence) -> list[np.ndarray]:
    blocks = spec.params.get("blocks", [])
    if not blocks:
        raise ValueError("direct_sum needs at least one block spec")
    zero_pad = int(spec.params.get("zero_pad", 0))
    children = seq.spawn(len(blocks))
    block_tuples = []
    for child_seq, block in zip(children, blocks):
        block_spec = GeneratorSpec.from_dict({**block, "seed": spec.seed})
        if block_spec.d != spec.d:
            raise ValueError("every direct_sum block must share the tuple length d")
        block_tuples.append(_generate(block_spec, child_seq))
    total = sum(bt[0].shape[0] for bt in block_tuples) + zero_pad
    mats = []
    for j in range(spec.d):
        acc = np.zeros((total, total), dtype=np.complex128)
        offset = 0
        for bt in block_tuples:
            k = bt[j].shape[0]
            acc[offset : offset + k, offset : offset + k] = bt[j]
            offset += k
        mats.append(acc)
    return mats


def _generate(spec: GeneratorSpec, seq: np.random.SeedSequence) -> list[np.ndarray]:
    rng = _rng(seq)
    if spec.scheme == "paper_example":
        return [m.copy() for m in paper_example(spec.params["id"]).tuple]
    if spec.scheme == "scaled_single":
        base_kind = spec.params.get("base", "partial_isometry")
        if base_kind == "unitary":
            base = random_unitary(spec.dim, rng)
        elif base_kind == "partial_isometry":
            rank = int(spec.params.get("rank", max(1, spec.dim - 1)))
            base = random_partial_isometry(spec.dim, rank, rng)
        else:
            raise ValueError(f"unknown scaled_single base {base_kind!r}")
        if "lambda" in spec.params:
            lam = np.asarray(
                [complex(re, im) for re, im in spec.params["lambda"]], dtype=np.complex128
            )
        else:
            lam = rng.standard_normal(spec.d) + 1j * rng.standard_normal(spec.d)
            lam /= np.linalg.norm(lam)
        return [lj * base for lj in lam]
    if spec.scheme == "polynomial_family":
        return _polynomial_family(spec, rng)
    if spec.scheme == "diagonal_conjugate":
        return _diagonal_conjugate(spec, rng)
    if spec.scheme == "direct_sum":
        return _direct_sum(spec, seq)
    raise ValueError(f"unknown generator scheme {spec.scheme!r}")


def random_commuting_tuple(spec: GeneratorSpec, tol: ToleranceModel = DEFAULT_TOL) -> OperatorTuple:
    """Generate the tuple described by ``spec``; bit-identical per spec."""
    seq = np.random.SeedSequence(spec.seed)
    return make_tuple(_generate(spec, seq), tol)
