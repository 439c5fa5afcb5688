"""Gadgets: contraction of grids with dangling edges, and the standard realizations.

Every realization here is built as an explicit gadget grid and contracted, so
the returned signature is what the gadget actually computes rather than the
closed form it is supposed to equal.
"""

from __future__ import annotations

import warnings

import numpy as np

from .network import contract, net_from_grid
from .sigcore import (
    BETA0,
    PLANE_AXES,
    BoolSig,
    HolantError,
    MatSig,
    SignatureGrid,
    SymSig,
    TooLarge,
    ZERO_TOL,
    is_ebd,
    maxabs,
    require_valid,
    restrict_matrix,
    restrict_signature,
    sig_from_terms,
)
from .tensorlab import NotLowRank, apply_binary, canonicalize

MAX_EXTERNALS = 6
MAX_INTERNAL_EDGES = 40


class FormMismatch(HolantError):
    code = "FormMismatch"


class ZeroVectorTerm(HolantError):
    code = "ZeroVectorTerm"


class Singular(HolantError):
    code = "Singular"


class AsymmetricResult(UserWarning):
    """The gadget's signature depends on the order of its dangling edges."""


# ----------------------------------------------------------------------------
# contraction


def gadget_signature(g: SignatureGrid, tol: float = ZERO_TOL, cap: int = MAX_INTERNAL_EDGES):
    """Signature of a gadget: a ``SymSig`` when symmetric, else the raw tensor (with a warning)."""
    require_valid(g)
    if not g.externals:
        raise ValueError("a gadget needs at least one dangling edge")
    if len(g.externals) > MAX_EXTERNALS:
        raise TooLarge(f"{len(g.externals)} dangling edges exceed the limit of {MAX_EXTERNALS}")
    if len(g.edges) > cap:
        raise TooLarge(f"{len(g.edges)} internal edges exceed the limit of {cap}")
    t = contract(net_from_grid(g, validate=False))
    if t.ndim == 1:
        return SymSig(t, 1, t.shape[0])
    try:
        return SymSig.from_tensor(t, tol=max(tol, 1e-12), check=True)
    except ValueError:
        warnings.warn("gadget signature is not symmetric", AsymmetricResult, stacklevel=2)
        return t


def _unary(vec) -> SymSig:
    v = np.asarray(vec, dtype=complex)
    return SymSig(v, 1, v.size)


def binary_on_edges(F: SymSig, M) -> SignatureGrid:
    """Gadget with ``M`` attached to every port of ``F`` (dangling end at port 1 of each copy)."""
    n = F.arity
    verts = [("f", "F")] + [(f"m{p}", "M") for p in range(n)]
    edges = [(("f", p), (f"m{p}", 1)) for p in range(n)]
    ext = [(f"m{p}", 0) for p in range(n)]
    return SignatureGrid({"F": F, "M": MatSig(M)}, verts, edges, ext)


# ----------------------------------------------------------------------------
# coefficient normalization for orthogonal real decompositions


def _type_a_frame(F: SymSig):
    if F.arity != 3:
        raise FormMismatch("expected a ternary signature")
    try:
        canon = canonicalize(F)
    except NotLowRank as exc:
        raise FormMismatch(f"signature has no orthogonal decomposition: {exc}") from None
    if canon.form != "A":
        raise FormMismatch("signature is not a sum of powers of orthogonal real vectors")
    return np.real(canon.T), [complex(c).real for c in canon.coeffs]


def coeff_geneq_gadget(F: SymSig, a: float, b: float, c: float | None = None) -> SignatureGrid:
    """Two copies of ``F`` joined by an edge, one carrying a tuned unary."""
    T, kappa = _type_a_frame(F)
    want = [a, b, 0.0 if c is None else c]
    u = np.zeros(3)
    for i, (k, w) in enumerate(zip(kappa, want)):
        if abs(k) <= ZERO_TOL * max(abs(x) for x in kappa):
            if w:
                raise ZeroVectorTerm(f"direction {i + 1} is absent from the signature")
            continue
        u[i] = w / (k * k)
    sigs = {"F": F, "u": _unary(T.T @ u)}
    verts = [("f1", "F"), ("f2", "F"), ("x", "u")]
    edges = [(("f1", 2), ("f2", 0)), (("f2", 1), ("x", 0))]
    return SignatureGrid(sigs, verts, edges, [("f1", 0), ("f1", 1), ("f2", 2)])


def realize_coeff_geneq(F: SymSig, a: float, b: float, c: float | None = None) -> SymSig:
    """Realize ``a w1^3 + b w2^3 + c w3^3`` from ``F = sum k_i w_i^3``.

    The ``w_i`` are the unit directions of ``F`` in canonical order (largest
    coefficient first).
    """
    return gadget_signature(coeff_geneq_gadget(F, a, b, c))


# ----------------------------------------------------------------------------
# arity four from a conjugate pair plus axis

Z4_UNARY = np.array([np.sqrt(2), 0.0, 1.0])


def _pair_axis_params(F: SymSig, tol: float = 1e-9):
    """Return ``(scale, lam)`` with ``F = scale * (beta^3 + conj(beta)^3 + lam e3^3)``."""
    if F.arity != 3:
        raise FormMismatch("expected a ternary signature")
    bbb = F[(0, 0, 0)]
    if abs(bbb) <= tol * F.maxabs():
        raise FormMismatch("signature has no conjugate-pair part along (1, i, 0)")
    scale = bbb * np.sqrt(2)
    G = SymSig(F.values / scale, 3)
    lam = G[(2, 2, 2)].real
    ref = sig_from_terms([(1, BETA0), (1, BETA0.conj()), (lam, np.eye(3)[2])], 3)
    if maxabs(G.values - ref.values) > tol * max(1.0, maxabs(ref.values)):
        raise FormMismatch("signature is not beta^3 + conj(beta)^3 + lam e3^3 up to scale")
    return scale, lam, G


def z4_gadget(F: SymSig) -> SignatureGrid:
    """Three copies of the normalized ``F`` in a path, the middle one capped by ``(sqrt2, 0, 1)``."""
    _, _, G = _pair_axis_params(F)
    sigs = {"F": G, "u": _unary(Z4_UNARY)}
    verts = [("f1", "F"), ("f2", "F"), ("f3", "F"), ("x", "u")]
    edges = [(("f1", 2), ("f2", 0)), (("f2", 1), ("f3", 0)), (("f2", 2), ("x", 0))]
    return SignatureGrid(sigs, verts, edges, [("f1", 0), ("f1", 1), ("f3", 1), ("f3", 2)])


def realize_z_arity4(F: SymSig) -> SymSig:
    """From ``beta^3 + conj(beta)^3 + lam e3^3`` realize ``beta^4 + conj(beta)^4 + lam^3 e3^4``."""
    return gadget_signature(z4_gadget(F))


def z4_expected(lam: float) -> SymSig:
    return sig_from_terms([(1, BETA0), (1, BETA0.conj()), (lam**3, np.eye(3)[2])], 4)


# ----------------------------------------------------------------------------
# the {B,G} equality


def realize_plane_equality(F: SymSig, tol: float = 1e-9) -> np.ndarray:
    """Build ``diag(1, 1, 0)`` from a planar signature on {B, G}."""
    if F.arity != 3 or not is_ebd(F, "BG", tol):
        raise FormMismatch("signature is not supported on {B,G}")
    try:
        canon = canonicalize(F)
    except NotLowRank:
        raise FormMismatch("signature is not of a tractable planar form") from None
    if canon.form == "A" and canon.rank == 2:
        T = np.real(canon.T)
        G = realize_coeff_geneq(F, 1.0, 1.0)
        u = T[0] + T[1]
        g = SignatureGrid({"G": G, "u": _unary(u)}, [("g", "G"), ("x", "u")], [(("g", 2), ("x", 0))], [("g", 0), ("g", 1)])
        return np.real(gadget_signature(g).tensor())
    if canon.form == "B" and canon.rank == 2:
        sigs = {"F": F, "u": _unary([1.0, 0.0, 0.0])}
        verts = [("f1", "F"), ("f2", "F"), ("x1", "u"), ("x2", "u")]
        edges = [(("f1", 2), ("x1", 0)), (("f2", 2), ("x2", 0)), (("f1", 1), ("f2", 0))]
        M = gadget_signature(SignatureGrid(sigs, verts, edges, [("f1", 0), ("f2", 1)])).tensor()
        return np.real(M / M[0, 0])
    raise FormMismatch("signature is neither two orthogonal real terms nor a bare conjugate pair")


# ----------------------------------------------------------------------------
# grid rewrites


def grid_to_boolean(grid: SignatureGrid, plane: str) -> SignatureGrid:
    """Restrict every signature of the grid to the two letters of ``plane``."""
    table = {}
    for name, sig in grid.signatures.items():
        if isinstance(sig, MatSig):
            table[name] = MatSig(restrict_matrix(sig.matrix, plane))
        elif sig.arity == 1:
            table[name] = BoolSig(sig.values[list(PLANE_AXES[plane])])
        else:
            table[name] = restrict_signature(sig, plane)
    return SignatureGrid(table, list(grid.vertices), list(grid.edges), list(grid.externals))


def local_holographic(grid: SignatureGrid, vertex, M, tol: float = 1e-12) -> SignatureGrid:
    """Replace the vertex signature ``F`` by ``M^n F`` and splice ``inv(M)^T`` onto each of its edges."""
    M = np.asarray(M, dtype=complex)
    require_valid(grid)
    vertex = str(vertex)
    vmap = dict(grid.vertices)
    if vertex not in vmap:
        raise KeyError(f"unknown vertex {vertex!r}")
    s = np.linalg.svd(M, compute_uv=False)
    if s[-1] <= tol * s[0]:
        raise Singular("transformation matrix is singular")
    N = np.linalg.inv(M).T
    F = grid.signatures[vmap[vertex]]
    new_name = f"{vmap[vertex]}@{vertex}"
    table = dict(grid.signatures)
    if isinstance(F, MatSig):
        table[new_name] = MatSig(M @ F.matrix @ M.T)
    else:
        table[new_name] = apply_binary(M, F)
    splice = f"inv@{vertex}"
    table[splice] = MatSig(N)
    verts = [(v, new_name if v == vertex else n) for v, n in grid.vertices]
    arity = F.arity
    route = {}
    for p in range(arity):
        sid = f"{vertex}~{p}"
        verts.append((sid, splice))
        route[(vertex, p)] = (sid, 1)
    edges = []
    for a, b in grid.edges:
        edges.append((route.get(a, a), route.get(b, b)))
    edges.extend(((vertex, p), (f"{vertex}~{p}", 0)) for p in range(arity))
    ext = [route.get(x, x) for x in grid.externals]
    return SignatureGrid(table, verts, edges, ext)


__all__ = [
    "AsymmetricResult",
    "FormMismatch",
    "Singular",
    "ZeroVectorTerm",
    "Z4_UNARY",
    "binary_on_edges",
    "coeff_geneq_gadget",
    "gadget_signature",
    "grid_to_boolean",
    "local_holographic",
    "realize_coeff_geneq",
    "realize_plane_equality",
    "realize_z_arity4",
    "z4_expected",
    "z4_gadget",
]
