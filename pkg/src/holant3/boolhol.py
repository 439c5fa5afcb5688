"""Boolean-domain symmetric Holant: the dichotomy for sets of signatures and evaluators.

A Boolean symmetric signature ``[x0, ..., xn]`` has

* type I(a, b) when ``a x_k + b x_{k+1} = a x_{k+2}`` for all k;
* type II when ``x_k = -x_{k+2}`` for all k.

A set is tractable when every member has arity at most 2, or every member is
type I for one shared (a, b) up to the binaries ``[2a l, b l, -2a l]``, or every
member is type II up to the binaries ``[l, 0, l]``.
"""

from __future__ import annotations

import cmath
import warnings
from dataclasses import dataclass, field

import numpy as np

from .network import Skeleton, net_from_grid, reduce_chains, split_degenerate, two_label_eval, brute_sum
from .network import VerdictMismatch  # noqa: F401  (re-exported)
from .sigcore import (
    ZERO_TOL,
    BoolSig,
    SignatureGrid,
    degenerate_vector,
    is_degenerate,
    maxabs,
)
from .tensorlab import NotLowRank

BRUTE_CAP = 24
AB_TOL = 1e-7


class DroppedDegenerate(UserWarning):
    """A degenerate signature was ignored during classification."""


# ----------------------------------------------------------------------------
# single-signature predicates


def _recurrence_rows(f: BoolSig) -> np.ndarray:
    x = f.values
    n = f.arity
    return np.array([[x[k] - x[k + 2], x[k + 1]] for k in range(n - 1)], dtype=complex)


def normalize_ab(a, b) -> tuple:
    """Scale so ``max(|a|, |b|) == 1`` and the first nonzero entry is positive real."""
    v = np.array([a, b], dtype=complex)
    m = np.max(np.abs(v))
    if m == 0:
        raise ValueError("(a, b) must not both vanish")
    v = v / m
    k = 0 if abs(v[0]) > 1e-12 else 1
    v = v * (abs(v[k]) / v[k])
    v[np.abs(v) < 1e-15] = 0
    out = tuple(complex(z) for z in v)
    return tuple(z.real if abs(z.imag) < 1e-15 else z for z in out)


def _type_i_nullspace(f: BoolSig, tol: float):
    """Dimension of the space of valid (a, b) and a spanning vector (for dimension 1)."""
    A = _recurrence_rows(f)
    m = f.maxabs()
    if m == 0 or maxabs(A) <= tol * m:
        return 2, None
    _, s, vh = np.linalg.svd(A)
    smallest = s[1] if len(s) > 1 else 0.0
    if smallest <= tol * m:
        v = np.conj(vh[-1])
        return 1, normalize_ab(v[0], v[1])
    return 0, None


def type_i_witness(f: BoolSig, tol: float = ZERO_TOL):
    """The normalized (a, b) for which ``f`` is type I, or None.

    When every (a, b) works (the binaries ``[l, 0, l]``) the witness ``(1, 0)``
    is returned.
    """
    if f.arity < 2:
        raise ValueError("type I needs arity at least 2")
    dim, ab = _type_i_nullspace(f, tol)
    if dim == 2:
        return (1.0, 0.0)
    return ab


def satisfies_type_i(f: BoolSig, ab, tol: float = ZERO_TOL) -> bool:
    a, b = ab
    res = _recurrence_rows(f) @ np.array([a, b], dtype=complex)
    return bool(maxabs(res) <= tol * 10 * max(f.maxabs(), 1e-300) * max(abs(a), abs(b)))


def is_type_ii(f: BoolSig, tol: float = ZERO_TOL) -> bool:
    if f.arity < 2:
        raise ValueError("type II needs arity at least 2")
    x = f.values
    m = f.maxabs()
    return all(abs(x[k] + x[k + 2]) <= tol * m for k in range(f.arity - 1))


def _is_special_binary_i(f: BoolSig, ab, tol) -> bool:
    """``f`` is a multiple of ``[2a, b, -2a]``."""
    if f.arity != 2:
        return False
    a, b = ab
    x0, x1, x2 = f.values
    m = f.maxabs() * max(abs(a), abs(b))
    return abs(x0 + x2) <= tol * f.maxabs() and abs(x0 * b - 2 * a * x1) <= tol * 10 * m


def _is_identity_like(f: BoolSig, tol) -> bool:
    """``f`` is a multiple of ``[1, 0, 1]``."""
    if f.arity != 2:
        return False
    x0, x1, x2 = f.values
    m = f.maxabs()
    return abs(x1) <= tol * m and abs(x0 - x2) <= tol * m


def _as_symmetric_or_rotation(M, tol):
    """Classify a 2x2 matrix as ('sym', BoolSig), ('rotation', None) or ('other', None)."""
    M = np.asarray(M, dtype=complex)
    m = maxabs(M)
    if abs(M[0, 1] - M[1, 0]) <= tol * m:
        return "sym", BoolSig([M[0, 0], (M[0, 1] + M[1, 0]) / 2, M[1, 1]])
    if abs(M[0, 0]) <= tol * m and abs(M[1, 1]) <= tol * m and abs(M[0, 1] + M[1, 0]) <= tol * m:
        return "rotation", None
    return "other", None


# ----------------------------------------------------------------------------
# decomposition


@dataclass(frozen=True)
class BoolDecomposition:
    """``f = c0 w0^n + c1 w1^n``.

    ``kind`` is ``TwoReal`` (orthogonal real lines), ``ConjPair``
    (``(u + i v)^n + (u - i v)^n``) or ``Degenerate`` (``c0 w0^n`` only).
    """

    kind: str
    coeffs: tuple
    vectors: tuple = field(compare=False)
    u: np.ndarray | None = field(default=None, compare=False)
    v: np.ndarray | None = field(default=None, compare=False)

    def rebuild(self, n: int) -> BoolSig:
        from .sigcore import sig_from_terms

        return sig_from_terms(list(zip(self.coeffs, self.vectors)), n, domain=2)


def basis_for_ab(a, b) -> tuple:
    """The two orthogonal lines fixed by type I(a, b) signatures, as unit vectors."""
    a, b = complex(a), complex(b)
    if abs(a) <= 1e-15 * max(abs(b), 1e-300):
        return np.array([1.0, 0.0], dtype=complex), np.array([0.0, 1.0], dtype=complex)
    # slopes r with a r^2 - b r - a = 0; product of roots is -1
    disc = cmath.sqrt(b * b + 4 * a * a)
    q = b + disc if abs(b + disc) >= abs(b - disc) else b - disc
    r1 = q / (2 * a)
    r2 = -1 / r1
    w0 = np.array([1.0, r1], dtype=complex)
    w1 = np.array([1.0, r2], dtype=complex)
    w0 /= np.linalg.norm(w0)
    w1 /= np.linalg.norm(w1)
    if abs(r1) > abs(r2):
        w0, w1 = w1, w0
    return w0, w1


TYPE_II_BASIS = (np.array([1.0, 1.0j]), np.array([1.0, -1.0j]))


def _coeffs(f: BoolSig, w0, w1):
    n = f.arity
    k = np.arange(n + 1)
    A = np.stack([w0[0] ** (n - k) * w0[1] ** k, w1[0] ** (n - k) * w1[1] ** k], axis=1)
    c, *_ = np.linalg.lstsq(A, f.values, rcond=None)
    return c, maxabs(A @ c - f.values)


def bool_decompose(f: BoolSig, tol: float = ZERO_TOL) -> BoolDecomposition:
    if f.arity < 2:
        raise ValueError("decomposition needs arity at least 2")
    m = f.maxabs()
    if is_degenerate(f, tol):
        c, w = degenerate_vector(f)
        return BoolDecomposition("Degenerate", (c,), (w,))
    dim, ab = _type_i_nullspace(f, tol)
    if dim == 2:
        ab = (0.0, 1.0)
    if dim >= 1:
        w0, w1 = basis_for_ab(*ab)
        c, err = _coeffs(f, w0, w1)
        if err <= 1e-7 * m:
            return BoolDecomposition("TwoReal", (c[0], c[1]), (w0, w1))
    if is_type_ii(f, tol):
        x = f.values
        c = (x[0] - 1j * x[1]) / 2
        n = f.arity
        root = c ** (1.0 / n)
        a, b = root.real, root.imag
        u = np.array([a, -b])
        v = np.array([b, a])
        if f.is_real(tol):
            return BoolDecomposition("ConjPair", (1.0, 1.0), (u + 1j * v, u - 1j * v), u, v)
        cc, _ = _coeffs(f, *TYPE_II_BASIS)
        return BoolDecomposition("ConjPair", (cc[0], cc[1]), TYPE_II_BASIS)
    raise NotLowRank("signature is neither type I nor type II")


# ----------------------------------------------------------------------------
# set classification


@dataclass
class BoolVerdict:
    status: str  # Tractable | Hard
    case: str | None  # AritiesLE2 | TypeI | TypeII
    ab: tuple | None = None
    witnesses: list = field(default_factory=list)
    dropped: list = field(default_factory=list)
    reason: str = ""

    @property
    def tractable(self) -> bool:
        return self.status == "Tractable"

    def basis(self):
        if self.case == "TypeI":
            return basis_for_ab(*self.ab)
        if self.case == "TypeII":
            return TYPE_II_BASIS
        return np.array([1.0, 0.0], dtype=complex), np.array([0.0, 1.0], dtype=complex)

    def to_json(self) -> dict:
        out = {"status": self.status, "case": self.case, "witnesses": list(self.witnesses)}
        if self.ab is not None:
            out["ab"] = [[complex(z).real, complex(z).imag] for z in self.ab]
        if self.reason:
            out["reason"] = self.reason
        return out


def classify_bool_set(S, tol: float = ZERO_TOL, warn: bool = False) -> BoolVerdict:
    """Decide tractability of a set of Boolean signatures (and 2x2 matrices)."""
    items = []  # (position, BoolSig)
    tags = [None] * len(S)
    dropped = []
    for k, s in enumerate(S):
        if isinstance(s, BoolSig):
            sig = s
        else:
            M = np.asarray(s, dtype=complex)
            if maxabs(M) == 0 or abs(np.linalg.det(M)) <= tol * maxabs(M) ** 2:
                tags[k] = "degenerate"
                dropped.append(k)
                continue
            kind, sig = _as_symmetric_or_rotation(M, tol)
            if kind == "rotation":
                tags[k] = "rotation-binary"
                continue
            if kind == "other":
                return BoolVerdict("Hard", None, None, tags, dropped, "asymmetric binary that is not a rotation")
        if is_degenerate(sig, tol):
            tags[k] = "degenerate"
            dropped.append(k)
            continue
        items.append((k, sig))
    if dropped and warn:
        warnings.warn(f"{len(dropped)} degenerate signature(s) ignored", DroppedDegenerate, stacklevel=2)
    if all(sig.arity <= 2 for _, sig in items):
        for k, _ in items:
            tags[k] = "arity<=2"
        return BoolVerdict("Tractable", "AritiesLE2", None, tags, dropped)

    high = [(k, sig) for k, sig in items if sig.arity >= 3]
    low = [(k, sig) for k, sig in items if sig.arity <= 2]

    # type I with a common (a, b)
    ab = None
    ok = True
    for _, sig in high:
        dim, w = _type_i_nullspace(sig, tol)
        if dim != 1:
            ok = False
            break
        if ab is None:
            ab = w
        elif max(abs(complex(x) - complex(y)) for x, y in zip(ab, w)) > AB_TOL:
            ok = False
            break
    if ok:
        t1 = list(tags)
        for k, _ in high:
            t1[k] = "typeI-member"
        for k, sig in low:
            if satisfies_type_i(sig, ab, tol):
                t1[k] = "typeI-member"
            elif _is_special_binary_i(sig, ab, tol):
                t1[k] = "special-binary"
            else:
                ok = False
                break
        if ok:
            return BoolVerdict("Tractable", "TypeI", ab, t1, dropped)

    t2 = list(tags)
    for k, sig in high:
        if not is_type_ii(sig, tol):
            return BoolVerdict("Hard", None, None, tags, dropped, "no shared type I witness and not all type II")
        t2[k] = "typeII-member"
    for k, sig in low:
        if is_type_ii(sig, tol):
            t2[k] = "typeII-member"
        elif _is_identity_like(sig, tol):
            t2[k] = "special-binary"
        else:
            return BoolVerdict("Hard", None, None, tags, dropped, "a binary is incompatible with type II")
    return BoolVerdict("Tractable", "TypeII", None, t2, dropped)


# ----------------------------------------------------------------------------
# evaluation


def _boolean_skeleton(grid: SignatureGrid) -> Skeleton:
    net = split_degenerate(net_from_grid(grid))
    return reduce_chains(net)


def eval_skeleton(sk: Skeleton, verdict: BoolVerdict):
    """Evaluate a Boolean skeleton under a tractable verdict; returns (value, stats)."""
    if not verdict.tractable:
        raise VerdictMismatch("verdict is not tractable")
    if verdict.case == "AritiesLE2" and sk.bigs:
        raise VerdictMismatch("grid has a nondegenerate signature of arity >= 3")
    return two_label_eval(sk, verdict.basis())


def eval_bool(grid: SignatureGrid, verdict: BoolVerdict) -> complex:
    """Holant value of a closed Boolean grid in time linear in its size."""
    if grid.externals:
        from .sigcore import NotClosed

        raise NotClosed("grid has external edges")
    value, _ = eval_skeleton(_boolean_skeleton(grid), verdict)
    return complex(value)


def eval_bool_brute(grid: SignatureGrid, cap: int = BRUTE_CAP, workers: int = 1) -> complex:
    """Exact sum over all 2^|E| edge assignments."""
    value, _ = brute_sum(net_from_grid(grid), cap, workers)
    return value
