"""Finite-dimensional operator tuples: verification, commutants, rigidity.

A tuple ``A_1..A_k`` of Hermitian matrices represents the algebra of a star
graph when each spectrum lies in its allowed set ``M_l = {0 < a_1 < ...}`` and
``A_1 + ... + A_k = lambda * I``.  This module works in double precision.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidShapeError, NotHermitianError, StarcoxError
from .graph import GeneralizedCharacter

DEFAULT_TOL = 1e-9


@dataclass
class OperatorTuple:
    dim: int
    lam: float
    matrices: list[np.ndarray]
    spectra: list[tuple[float, ...]]

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidShapeError("dim must be positive")
        if len(self.matrices) != len(self.spectra):
            raise InvalidShapeError(
                f"{len(self.matrices)} matrices but {len(self.spectra)} spectra"
            )
        mats = []
        for i, a in enumerate(self.matrices):
            a = np.asarray(a, dtype=complex)
            if a.shape != (self.dim, self.dim):
                raise InvalidShapeError(f"matrix {i} has shape {a.shape}, expected {(self.dim, self.dim)}")
            mats.append(a)
        self.matrices = mats
        # 0 belongs to every allowed spectrum
        self.spectra = [tuple(sorted(set(map(float, m)) | {0.0})) for m in self.spectra]

    @property
    def k(self) -> int:
        return len(self.matrices)

    @classmethod
    def from_json(cls, obj) -> OperatorTuple:
        try:
            mats = []
            for m in obj["matrices"]:
                if isinstance(m, dict):
                    re = np.asarray(m["re"], dtype=float)
                    im = np.asarray(m["im"], dtype=float) if "im" in m else np.zeros_like(re)
                    mats.append(re + 1j * im)
                else:
                    mats.append(np.asarray(m, dtype=float).astype(complex))
            return cls(int(obj["dim"]), float(obj["lambda"]), mats, [list(s) for s in obj["spectra"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidShapeError(f"malformed operator tuple: {exc}") from None

    def to_json(self):
        return {
            "dim": self.dim,
            "lambda": self.lam,
            "spectra": [list(s) for s in self.spectra],
            "matrices": [{"re": a.real.tolist(), "im": a.imag.tolist()} for a in self.matrices],
        }


def _scale(a: np.ndarray) -> float:
    return max(1.0, float(np.linalg.norm(a, 2))) if a.size else 1.0


def _hermitian_error(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


@dataclass
class TupleReport:
    hermitian: bool
    sum_condition: bool
    spectrum: bool
    residuals: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.hermitian and self.sum_condition and self.spectrum

    def to_json(self):
        return {
            "ok": self.ok,
            "hermitian": self.hermitian,
            "sum_condition": self.sum_condition,
            "spectrum": self.spectrum,
            "residuals": self.residuals,
        }


def verify_tuple(t: OperatorTuple, tol: float = DEFAULT_TOL) -> TupleReport:
    """Check Hermitian-ness, the sum relation and spectrum containment."""
    herm = max((_hermitian_error(a) for a in t.matrices), default=0.0)
    total = sum(t.matrices, np.zeros((t.dim, t.dim), dtype=complex))
    sum_res = float(np.max(np.abs(total - t.lam * np.eye(t.dim))))
    spec_res = 0.0
    for a, allowed in zip(t.matrices, t.spectra):
        eig = np.linalg.eigvalsh((a + a.conj().T) / 2)
        allowed = np.asarray(allowed)
        dev = np.min(np.abs(eig[:, None] - allowed[None, :]), axis=1)
        spec_res = max(spec_res, float(np.max(dev)))
    scale = max([_scale(a) for a in t.matrices] + [1.0, abs(t.lam)])
    return TupleReport(
        herm <= tol * scale,
        sum_res <= tol * scale,
        spec_res <= tol * scale,
        {"hermitian": herm, "sum": sum_res, "spectrum": spec_res},
    )


def eigenvalue_multiplicities(a: np.ndarray, tol: float = DEFAULT_TOL) -> list[int]:
    """Cluster sorted eigenvalues; a gap above tol*max(1, |A|) starts a new cluster."""
    a = np.asarray(a, dtype=complex)
    if _hermitian_error(a) > tol * _scale(a):
        raise NotHermitianError("matrix is not Hermitian")
    eig = np.linalg.eigvalsh((a + a.conj().T) / 2)
    gap = tol * _scale(a)
    mults = [1]
    for prev, cur in zip(eig, eig[1:]):
        if cur - prev > gap:
            mults.append(1)
        else:
            mults[-1] += 1
    return mults


def centralizer_dim(a: np.ndarray, tol: float = DEFAULT_TOL) -> int:
    """Complex dimension of {X : XA = AX}, i.e. the sum of squared multiplicities."""
    return sum(m * m for m in eigenvalue_multiplicities(a, tol))


def joint_commutant_dim(t: OperatorTuple, tol: float = DEFAULT_TOL) -> int:
    """Nullity of the stacked commutation system X A_l - A_l X = 0."""
    d = t.dim
    eye = np.eye(d)
    if not t.matrices:
        return d * d
    # vec(AX - XA) = (I kron A - A^T kron I) vec(X), column-major vec
    system = np.vstack([np.kron(eye, a) - np.kron(a.T, eye) for a in t.matrices])
    sv = np.linalg.svd(system, compute_uv=False)
    cutoff = tol * max(1.0, float(sv[0]) if sv.size else 0.0)
    return int(d * d - np.count_nonzero(sv > cutoff))


def is_irreducible(t: OperatorTuple, tol: float = DEFAULT_TOL) -> bool:
    return joint_commutant_dim(t, tol) == 1


def rigidity_index(t: OperatorTuple, tol: float = DEFAULT_TOL) -> int:
    """``dim^2 (2 - k) + sum_j c(A_j)``.

    ``dim`` is the size of the representation space (not the branch count)
    and ``k`` the number of matrices.
    """
    return t.dim**2 * (2 - t.k) + sum(centralizer_dim(a, tol) for a in t.matrices)


@dataclass
class RigidityReport:
    verification: TupleReport
    rigidity: int | None
    commutant_dim: int | None
    centralizer_dims: list[int]

    @property
    def irreducible(self) -> bool | None:
        return None if self.commutant_dim is None else self.commutant_dim == 1

    def to_json(self):
        return {
            "ok": self.verification.ok,
            "rigidity": self.rigidity,
            "irreducible": self.irreducible,
            "commutant_dim": self.commutant_dim,
            "centralizer_dims": self.centralizer_dims,
            "verification": self.verification.to_json(),
        }


def rigidity_report(t: OperatorTuple, tol: float = DEFAULT_TOL) -> RigidityReport:
    """Verify the tuple, then compute rigidity and irreducibility if it passes."""
    report = verify_tuple(t, tol)
    if not report.ok:
        return RigidityReport(report, None, None, [])
    cdims = [centralizer_dim(a, tol) for a in t.matrices]
    r = t.dim**2 * (2 - t.k) + sum(cdims)
    return RigidityReport(report, r, joint_commutant_dim(t, tol), cdims)


def scalar_tuples(chi: GeneralizedCharacter):
    """All one-dimensional tuples with A_l drawn from {0, a_1^(l), ..., a_k^(l)}.

    Yields ``(lam, values)`` with ``lam = sum(values)``; values stay exact.
    """
    choices = [(0,) + tuple(branch) for branch in chi.branches]
    for values in itertools.product(*choices):
        yield sum(values), values


def scalar_tuple(values, spectra) -> OperatorTuple:
    if len(values) != len(spectra):
        raise StarcoxError("one value per spectrum required")
    mats = [np.array([[float(v)]], dtype=complex) for v in values]
    return OperatorTuple(1, float(sum(values)), mats, [[float(a) for a in s] for s in spectra])
