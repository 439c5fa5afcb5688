"""Symmetric tensor algebra on the domain {B, G, R}.

Contraction with unaries, transformation by binaries, and recovery of the
orthogonal low-rank forms that govern tractability:

* real orthogonal:   ``a v1^n + b v2^n + c v3^n`` with orthonormal real ``v_i``;
* conjugate pair:    ``k (beta^n + conj(beta)^n) + lam w^n`` where
  ``beta = (p + i q)/sqrt(2)`` for orthonormal real ``p, q`` and a real axis
  ``w`` orthogonal to both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .sigcore import (
    BETA0,
    ZERO_TOL,
    HolantError,
    SymSig,
    _pair,
    maxabs,
    multisets,
    sig_from_terms,
)

DEFAULT_SEED = 0xA11CE
RESIDUAL_TOL = 1e-7
ORTHO_TOL = 1e-9
MAX_RETRIES = 8


class ArityTooSmall(HolantError):
    code = "ArityTooSmall"


class NotOrthogonal(HolantError):
    code = "NotOrthogonal"


class NotLowRank(HolantError):
    code = "NotLowRank"


class Degenerate(HolantError):
    code = "Degenerate"


# ----------------------------------------------------------------------------
# basic operations


def contract_unary(F: SymSig, u) -> SymSig:
    """Connect the unary ``u`` to one port of ``F``."""
    if F.arity < 2:
        raise ArityTooSmall(f"cannot contract a unary into arity {F.arity}")
    u = np.asarray(u, dtype=complex)
    t = np.tensordot(u, F.tensor(), axes=([0], [0]))
    return SymSig.from_tensor(t, check=False)


def contract_repeated(F: SymSig, u, times: int) -> SymSig:
    for _ in range(times):
        F = contract_unary(F, u)
    return F


def transform_tensor(M, t: np.ndarray) -> np.ndarray:
    """Apply ``M`` to every axis of the dense tensor ``t``."""
    M = np.asarray(M, dtype=complex)
    for ax in range(t.ndim):
        t = np.moveaxis(np.tensordot(M, t, axes=([1], [ax])), 0, ax)
    return t


def apply_binary(M, F: SymSig) -> SymSig:
    """``M^{(x)k} F``: one copy of ``M`` on every port."""
    return SymSig.from_tensor(transform_tensor(M, F.tensor()), check=False)


def is_orthogonal(T, tol: float = ORTHO_TOL) -> bool:
    T = np.asarray(T)
    if T.shape != (3, 3) or np.max(np.abs(np.imag(T))) > tol:
        return False
    T = np.real(T)
    return bool(np.max(np.abs(T @ T.T - np.eye(3))) <= tol)


def apply_orthogonal(T, F: SymSig, tol: float = ORTHO_TOL) -> SymSig:
    """Holant-preserving change of basis by a real orthogonal ``T``."""
    if not is_orthogonal(T, tol):
        raise NotOrthogonal("transformation is not real orthogonal")
    return apply_binary(np.real(T), F)


# ----------------------------------------------------------------------------
# decompositions


@dataclass(frozen=True)
class Term:
    coeff: complex
    vector: np.ndarray = field(compare=False)


@dataclass(frozen=True)
class Decomposition:
    """``F = sum coeff * vector^n`` with one of the orthogonal shapes.

    For ``ConjugatePair`` the pair is ``terms[0]`` and ``terms[1]`` (complex
    conjugates of each other) and the optional axis term is ``terms[2]``;
    ``pair_u`` / ``pair_v`` hold the real and imaginary directions.
    """

    kind: str  # RealOrthogonal | ConjugatePair | DegenerateRank1
    terms: tuple
    residual: float
    arity: int
    pair_u: np.ndarray | None = field(default=None, compare=False)
    pair_v: np.ndarray | None = field(default=None, compare=False)

    def rebuild(self) -> SymSig:
        return sig_from_terms([(t.coeff, t.vector) for t in self.terms], self.arity)

    @property
    def rank(self) -> int:
        return len(self.terms)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "terms": [
                {"coeff": _pair(t.coeff), "vector": [_pair(z) for z in t.vector]} for t in self.terms
            ],
            "residual": float(self.residual),
        }


def _sign_fix(v: np.ndarray) -> tuple[np.ndarray, float]:
    """Flip ``v`` so its first nonzero coordinate is positive; return the flip sign."""
    for x in np.real(v):
        if abs(x) > 1e-12:
            return (v, 1.0) if x > 0 else (-v, -1.0)
    return v, 1.0


def _geneq_terms(H: SymSig, Q: np.ndarray, tol: float):
    """If ``H`` is supported on constant tuples return its terms mapped back through ``Q``."""
    ms = multisets(3, H.arity)
    m = H.maxabs()
    const = [ms.index((i,) * H.arity) for i in range(3)]
    off = np.delete(H.values, const)
    if off.size and np.max(np.abs(off)) > tol * m:
        return None
    terms = []
    for i in range(3):
        c = H.values[const[i]]
        if abs(c) > tol * m:
            v, s = _sign_fix(Q[i].astype(complex))
            terms.append(Term(c * s**H.arity, np.real(v) + 0j))
    return terms


def _pair_terms(H: SymSig, Q: np.ndarray, axis: int, tol: float):
    """Conjugate-pair shape in the plane orthogonal to ``Q[axis]``, if ``H`` has it."""
    n = H.arity
    m = H.maxabs()
    i, j = [k for k in range(3) if k != axis]
    ms = multisets(3, n)
    for idx, m_ in enumerate(ms):
        if axis in m_ and any(x != axis for x in m_):
            if abs(H.values[idx]) > tol * m:
                return None
    x = [H[(i,) * (n - k) + (j,) * k] for k in range(n + 1)]
    if max(abs(z) for z in x) <= tol * m:
        return None
    for k in range(n - 1):
        if abs(x[k] + x[k + 2]) > tol * m:
            return None
    # x_k = c i^k + conj(c) (-i)^k  on the plane basis (Q_i, Q_j)
    c = (x[0] - 1j * x[1]) / 2
    p, q = Q[i].astype(float), Q[j].astype(float)
    kappa = c * 2 ** (n / 2)  # coefficient of beta^n with beta = (p + i q)/sqrt 2
    phi = np.angle(kappa)
    beta = (p + 1j * q) / math.sqrt(2) * np.exp(1j * phi / n)
    beta = _pick_root(beta, n)
    u = np.real(beta) * math.sqrt(2)
    v = np.imag(beta) * math.sqrt(2)
    mag = abs(kappa)
    terms = [Term(mag + 0j, beta), Term(mag + 0j, np.conj(beta))]
    lam = H[(axis,) * n]
    w = Q[axis].astype(float)
    if n % 2 == 1 and abs(lam) > tol * m:
        # odd arity: orient the axis so its coefficient is nonnegative
        if lam.real < 0:
            w, lam = -w, -lam
    else:
        w, s = _sign_fix(w)
    if abs(lam) > tol * m:
        terms.append(Term(lam, w + 0j))
    return terms, u, v, w


def _pick_root(beta: np.ndarray, n: int) -> np.ndarray:
    """Deterministic representative of ``beta`` modulo n-th roots of unity and conjugation-free sign."""
    best, key = beta, None
    for k in range(n):
        cand = beta * np.exp(2j * math.pi * k / n)
        u = np.real(cand)
        kk = tuple(np.round(-u, 9))
        if key is None or kk < key:
            best, key = cand, kk
    return best


def _phase(F: SymSig) -> complex:
    k = int(np.argmax(np.abs(F.values)))
    z = F.values[k]
    return z / abs(z)


def _reduce_random(F: SymSig, rng) -> SymSig:
    while F.arity > 3:
        r = rng.normal(size=3)
        F = contract_unary(F, r / np.linalg.norm(r))
    return F


def _frame_candidates(F3: SymSig, rng):
    u = rng.normal(size=3)
    S = np.real(contract_unary(F3, u).tensor())
    S = (S + S.T) / 2
    _, V = np.linalg.eigh(S)
    return V.T


def decompose(F: SymSig, tol: float = RESIDUAL_TOL, seed: int = DEFAULT_SEED) -> Decomposition:
    """Recover an orthogonal low-rank form of a symmetric signature of arity >= 3."""
    if F.arity < 3:
        raise ArityTooSmall("decomposition needs arity at least 3")
    m = F.maxabs()
    if m == 0:
        raise NotLowRank("zero signature")
    ph = _phase(F)
    G = F.scale(1 / ph)
    if np.max(np.abs(G.values.imag)) > tol * m:
        raise NotLowRank("signature is not a scalar multiple of a real signature")
    G = SymSig(G.values.real, G.arity)
    rng = np.random.default_rng(seed)
    check_tol = max(tol, ZERO_TOL) * 10
    for _ in range(MAX_RETRIES):
        Q = _frame_candidates(_reduce_random(G, rng), rng)
        H = apply_binary(Q, G)
        found = _shape_in_frame(H, Q, check_tol)
        if found is None:
            continue
        kind, terms, u, v = found
        terms = tuple(Term(t.coeff * ph, t.vector) for t in terms)
        rebuilt = sig_from_terms([(t.coeff, t.vector) for t in terms], F.arity)
        resid = float(np.max(np.abs(rebuilt.values - F.values)))
        if resid <= tol * m:
            return Decomposition(kind, terms, resid, F.arity, u, v)
    raise NotLowRank("no orthogonal low-rank form reconstructs the signature")


def _shape_in_frame(H: SymSig, Q: np.ndarray, tol: float):
    terms = _geneq_terms(H, Q, tol)
    if terms is not None:
        kind = "DegenerateRank1" if len(terms) == 1 else "RealOrthogonal"
        return kind, terms, None, None
    for axis in (2, 0, 1):
        got = _pair_terms(H, Q, axis, tol)
        if got is not None:
            terms, u, v, _ = got
            return "ConjugatePair", terms, u, v
    return None


# ----------------------------------------------------------------------------
# canonical forms


@dataclass(frozen=True)
class CanonicalResult:
    """``T`` is real orthogonal.

    ``form == "A"``: ``T^n F = a e1^n + b e2^n + c e3^n`` with ``coeffs = (a, b, c)``.
    ``form == "B"``: ``T^n F = scale * (eps (beta0^n + conj(beta0)^n) + lam e3^n)``
    with ``coeffs = (eps, lam)``.
    """

    T: np.ndarray = field(compare=False)
    form: str
    coeffs: tuple
    scale: complex
    arity: int
    rank: int
    decomposition: Decomposition = field(compare=False)

    def transformed(self) -> SymSig:
        """The canonical table, built from the form alone."""
        n = self.arity
        e = np.eye(3)
        if self.form == "A":
            return sig_from_terms([(c, e[i]) for i, c in enumerate(self.coeffs)], n)
        eps, lam = self.coeffs
        terms = [(self.scale * eps, BETA0), (self.scale * eps, np.conj(BETA0)), (self.scale * lam, e[2])]
        return sig_from_terms(terms, n)

    def to_json(self) -> dict:
        out = self.decomposition.to_json()
        out["T"] = np.real(self.T).tolist()
        out["form"] = self.form
        out["coeffs"] = [_pair(c) for c in self.coeffs]
        out["scale"] = _pair(self.scale)
        return out


def _complete_frame(rows: list) -> list:
    """Extend orthonormal real rows to an orthonormal basis of R^3."""
    rows = [np.asarray(r, dtype=float) for r in rows]
    if len(rows) == 2:
        rows.append(_sign_fix(np.cross(rows[0], rows[1]))[0])
    elif len(rows) == 1:
        a = rows[0]
        trial = np.eye(3)[int(np.argmin(np.abs(a)))]
        b = trial - a * (a @ trial)
        b = _sign_fix(b / np.linalg.norm(b))[0]
        rows += [b, _sign_fix(np.cross(a, b))[0]]
    elif not rows:
        rows = list(np.eye(3))
    return rows


def _magnitude_key(coeffs, vectors):
    top = max(abs(c) for c in coeffs) or 1.0
    return [(-round(abs(c) / top, 8), int(np.argmax(np.abs(v)))) for c, v in zip(coeffs, vectors)]


def canonicalize(F: SymSig, tol: float = RESIDUAL_TOL, seed: int = DEFAULT_SEED) -> CanonicalResult:
    d = decompose(F, tol, seed)
    n = F.arity
    if d.kind == "DegenerateRank1":
        raise Degenerate("signature is a tensor power of a single vector")
    if d.kind == "RealOrthogonal":
        coeffs = [t.coeff for t in d.terms]
        vecs = [np.real(t.vector) for t in d.terms]
        keys = _magnitude_key(coeffs, vecs)
        order = sorted(range(len(coeffs)), key=lambda k: keys[k])
        coeffs = [coeffs[k] for k in order]
        vecs = [vecs[k] for k in order]
        rows = _complete_frame(vecs)
        coeffs += [0j] * (3 - len(coeffs))
        T = np.array(rows)
        return CanonicalResult(T, "A", tuple(coeffs), 1.0 + 0j, n, d.rank, d)
    kappa = d.terms[0].coeff
    p, q = d.pair_u, d.pair_v
    if len(d.terms) == 3:
        w = np.real(d.terms[2].vector)
        lam = d.terms[2].coeff
    else:
        w = _sign_fix(np.cross(p, q))[0]
        lam = 0j
    T = np.array([p, q, w])
    return CanonicalResult(T, "B", (1.0 + 0j, lam / kappa), kappa, n, d.rank, d)


def unary_image_space(F: SymSig, tol: float = ZERO_TOL) -> list[SymSig]:
    """A basis of ``{<F, u>}`` drawn from the three coordinate contractions."""
    if F.arity < 4:
        raise ArityTooSmall("unary image space is defined for arity at least 4")
    from scipy.linalg import qr

    imgs = [contract_unary(F, np.eye(3)[i]) for i in range(3)]
    A = np.array([s.values for s in imgs]).T
    m = maxabs(A)
    if m == 0:
        return []
    _, R, piv = qr(A, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    rank = int(np.sum(diag > tol * 10 * max(diag[0], 1e-300) * max(1, A.shape[0])))
    return [imgs[k] for k in sorted(piv[:rank])]


def reduce_to_ternary(F: SymSig, canon: CanonicalResult | None = None) -> SymSig:
    """Contract ``F`` down to arity 3, keeping its decomposition directions."""
    if F.arity < 3:
        raise ArityTooSmall("need arity at least 3")
    if F.arity == 3:
        return F
    if canon is None:
        canon = canonicalize(F)
    frame_u = np.array([1.0, 1.0, 1.0]) if canon.form == "A" else np.array([1.0, 0.0, 1.0])
    u = np.real(canon.T).T @ frame_u
    return contract_repeated(F, u, F.arity - 3)
