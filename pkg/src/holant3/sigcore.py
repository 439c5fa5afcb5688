"""Symmetric signatures on the domain {B, G, R}, binary matrix shapes and signature grids.

Values are stored densely over canonical (nondecreasing) multiset indices.  The
same container holds Boolean symmetric signatures (domain 2), where the
canonical multisets of {0, 1} are ordered by Hamming weight.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

DOMAIN = "BGR"
PLANES = ("BG", "BR", "GR")
PLANE_AXES = {"BG": (0, 1), "BR": (0, 2), "GR": (1, 2)}

ZERO_TOL = 1e-9
PROJ_TOL = 1e-7

BETA0 = np.array([1.0, 1.0j, 0.0]) / math.sqrt(2.0)


class HolantError(Exception):
    """Base class for every error raised by this package."""

    code = "HolantError"


class BadIndex(HolantError):
    code = "BadIndex"


class ParseError(HolantError):
    code = "ParseError"


class ValidationError(HolantError):
    code = "ValidationError"

    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues))


class TooLarge(HolantError):
    code = "TooLarge"


class NotClosed(HolantError):
    code = "NotClosed"


# ----------------------------------------------------------------------------
# index bookkeeping


@lru_cache(maxsize=None)
def multisets(domain: int, arity: int) -> tuple:
    """Canonical multisets of size ``arity`` over ``range(domain)``, in storage order."""
    return tuple(itertools.combinations_with_replacement(range(domain), arity))


@lru_cache(maxsize=None)
def _multiset_array(domain: int, arity: int) -> np.ndarray:
    ms = multisets(domain, arity)
    arr = np.array(ms, dtype=np.intp).reshape(len(ms), arity)
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=None)
def _position_map(domain: int, arity: int) -> np.ndarray:
    """For every flat tensor index, the position of its sorted multiset."""
    lookup = {m: i for i, m in enumerate(multisets(domain, arity))}
    out = np.empty(domain**arity, dtype=np.intp)
    for flat, tup in enumerate(itertools.product(range(domain), repeat=arity)):
        out[flat] = lookup[tuple(sorted(tup))]
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def _first_flat(domain: int, arity: int) -> np.ndarray:
    """A flat tensor index realising each canonical multiset."""
    strides = domain ** np.arange(arity - 1, -1, -1)
    return (_multiset_array(domain, arity) * strides).sum(axis=1) if arity else np.zeros(1, np.intp)


def table_size(domain: int, arity: int) -> int:
    return math.comb(arity + domain - 1, domain - 1)


def maxabs(x) -> float:
    a = np.asarray(x)
    return float(np.max(np.abs(a))) if a.size else 0.0


def zero_mask(x, tol: float = ZERO_TOL) -> np.ndarray:
    """Entries treated as structural zeros: ``|x| <= tol * maxabs(x)``."""
    a = np.asarray(x)
    return np.abs(a) <= tol * maxabs(a)


def projective_normalize(x) -> np.ndarray:
    """Scale so the entry of largest modulus becomes a positive real number."""
    a = np.asarray(x, dtype=complex).ravel()
    k = int(np.argmax(np.abs(a)))
    if a[k] == 0:
        return a.copy()
    return a / a[k]


def projective_equal(x, y, tol: float = PROJ_TOL) -> bool:
    a = np.asarray(x, dtype=complex).ravel()
    b = np.asarray(y, dtype=complex).ravel()
    if a.shape != b.shape:
        return False
    ma, mb = maxabs(a), maxabs(b)
    if ma == 0 or mb == 0:
        return ma == mb
    # normalise both by the same coordinate so near-ties in modulus do not matter
    k = int(np.argmax(np.abs(a)))
    if abs(b[k]) <= tol * mb:
        return False
    return bool(np.max(np.abs(a / a[k] - b / b[k])) <= tol * max(1.0, maxabs(a / a[k])))


# ----------------------------------------------------------------------------
# signatures


class SymSig:
    """A symmetric signature over ``domain`` letters, stored by canonical multiset."""

    __slots__ = ("domain", "arity", "values")

    def __init__(self, values, arity: int | None = None, domain: int = 3):
        vals = np.array(values, dtype=complex).ravel()
        if arity is None:
            arity = _arity_from_size(domain, vals.size)
        if arity < 1:
            raise ValueError("arity must be at least 1")
        if vals.size != table_size(domain, arity):
            raise ValueError(
                f"table for arity {arity} over {domain} letters needs "
                f"{table_size(domain, arity)} entries, got {vals.size}"
            )
        vals.setflags(write=False)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "values", vals)

    def __setattr__(self, name, value):
        raise AttributeError("signatures are immutable")

    def __repr__(self):
        name = type(self).__name__
        return f"{name}(arity={self.arity}, values={np.round(self.values, 6).tolist()})"

    # construction -----------------------------------------------------

    @classmethod
    def from_tensor(cls, tensor, tol: float = ZERO_TOL, check: bool = True) -> "SymSig":
        t = np.asarray(tensor, dtype=complex)
        d, n = t.shape[0], t.ndim
        flat = t.ravel()
        vals = flat[_first_flat(d, n)]
        if check:
            rebuilt = vals[_position_map(d, n)]
            if np.max(np.abs(rebuilt - flat)) > max(tol, 1e-12) * max(maxabs(flat), 1e-300):
                raise ValueError("tensor is not symmetric")
        return BoolSig(vals, n) if d == 2 else SymSig(vals, n, domain=d)

    @classmethod
    def from_dict(cls, table: dict, arity: int):
        sig = np.zeros(table_size(3, arity), dtype=complex)
        lookup = {m: i for i, m in enumerate(multisets(3, arity))}
        for key, val in table.items():
            sig[lookup[_parse_index(key, arity)]] = val
        return cls(sig, arity)

    # access ------------------------------------------------------------

    def tensor(self) -> np.ndarray:
        return self.values[_position_map(self.domain, self.arity)].reshape((self.domain,) * self.arity)

    def __getitem__(self, idx) -> complex:
        if isinstance(idx, str):
            idx = _parse_index(idx, self.arity)
        key = tuple(sorted(idx))
        if len(key) != self.arity or any(not 0 <= k < self.domain for k in key):
            raise BadIndex(f"bad index {idx!r} for arity {self.arity}")
        return self.values[multisets(self.domain, self.arity).index(key)]

    def labels(self) -> list[str]:
        letters = DOMAIN if self.domain == 3 else "01"
        return ["".join(letters[i] for i in m) for m in multisets(self.domain, self.arity)]

    def as_matrix(self) -> np.ndarray:
        if self.arity != 2:
            raise ValueError("not a binary signature")
        return self.tensor()

    def scale(self, c) -> "SymSig":
        return self._like(self.values * c)

    def _like(self, values):
        if type(self) is SymSig:
            return SymSig(values, self.arity, self.domain)
        return type(self)(values, self.arity)

    def maxabs(self) -> float:
        return maxabs(self.values)

    def is_real(self, tol: float = ZERO_TOL) -> bool:
        return bool(np.max(np.abs(self.values.imag)) <= tol * max(self.maxabs(), 1e-300))

    def close_to(self, other: "SymSig", tol: float = PROJ_TOL) -> bool:
        if self.arity != other.arity or self.domain != other.domain:
            return False
        scale = max(self.maxabs(), other.maxabs(), 1e-300)
        return bool(np.max(np.abs(self.values - other.values)) <= tol * scale)

    def projectively_equal(self, other: "SymSig", tol: float = PROJ_TOL) -> bool:
        return (
            self.arity == other.arity
            and self.domain == other.domain
            and projective_equal(self.values, other.values, tol)
        )


class BoolSig(SymSig):
    """Boolean symmetric signature ``[f0, ..., fn]`` indexed by Hamming weight."""

    __slots__ = ()

    def __init__(self, values, arity: int | None = None):
        vals = np.array(values, dtype=complex).ravel()
        if arity is None:
            arity = vals.size - 1
        super().__init__(vals, arity, domain=2)

    def __repr__(self):
        return f"BoolSig({np.round(self.values, 6).tolist()})"


def _arity_from_size(domain: int, size: int) -> int:
    n = 0
    while table_size(domain, n) < size:
        n += 1
    if table_size(domain, n) != size:
        raise ValueError(f"{size} is not a valid table size for domain {domain}")
    return n


def _parse_index(idx: str, arity: int) -> tuple:
    if not isinstance(idx, str) or len(idx) != arity or any(c not in DOMAIN for c in idx):
        raise BadIndex(f"index {idx!r} is not a length-{arity} string over {DOMAIN}")
    return tuple(sorted(DOMAIN.index(c) for c in idx))


def sig_value(F: SymSig, idx: str) -> complex:
    """Value of ``F`` at an index string, in any order."""
    if not isinstance(idx, str):
        raise BadIndex(f"index must be a string, got {type(idx).__name__}")
    return F[idx]


def sig_from_terms(terms: Iterable[tuple], arity: int, domain: int | None = None) -> SymSig:
    """Build ``sum_i c_i v_i^{(x) arity}`` as an explicit table."""
    terms = list(terms)
    if not terms:
        raise ValueError("need at least one term")
    if domain is None:
        domain = len(terms[0][1])
    ms = _multiset_array(domain, arity)
    vals = np.zeros(ms.shape[0], dtype=complex)
    for c, v in terms:
        v = np.asarray(v, dtype=complex)
        vals += c * np.prod(v[ms], axis=1)
    return BoolSig(vals, arity) if domain == 2 else SymSig(vals, arity, domain)


def restrict_signature(F: SymSig, plane: str) -> BoolSig:
    """Restrict a domain-3 signature to the two letters of ``plane``."""
    i, j = PLANE_AXES[plane]
    n = F.arity
    out = []
    for k in range(n + 1):
        key = (i,) * (n - k) + (j,) * k
        out.append(F[key])
    return BoolSig(out)


def restrict_matrix(M, plane: str) -> np.ndarray:
    i, j = PLANE_AXES[plane]
    M = np.asarray(M)
    return M[np.ix_([i, j], [i, j])]


def support(F: SymSig, tol: float = ZERO_TOL) -> list[tuple]:
    nz = ~zero_mask(F.values, tol)
    ms = multisets(F.domain, F.arity)
    return [ms[k] for k in np.flatnonzero(nz)]


@dataclass(frozen=True)
class SupportFlags:
    is_geneq: bool
    ebd_plane: str | None
    sep_BG_R: bool
    sep_BR_G: bool
    sep_GR_B: bool
    in_eset: bool

    def separated(self, plane: str) -> bool:
        return {"BG": self.sep_BG_R, "BR": self.sep_BR_G, "GR": self.sep_GR_B}[plane]


def _separated(supp, plane) -> bool:
    i, j = PLANE_AXES[plane]
    k = 3 - i - j
    for m in supp:
        if k in m and any(x != k for x in m):
            return False
    return True


def support_flags(F: SymSig, tol: float = ZERO_TOL) -> SupportFlags:
    supp = support(F, tol)
    geneq = all(len(set(m)) <= 1 for m in supp)
    ebd = None
    for plane in PLANES:
        i, j = PLANE_AXES[plane]
        if all(set(m) <= {i, j} for m in supp):
            ebd = plane
            break
    if F.arity == 1:
        eset = True
    elif F.arity == 2:
        eset = binary_shape(F.tensor(), tol).is_genperm
    else:
        eset = geneq
    return SupportFlags(
        is_geneq=geneq,
        ebd_plane=ebd,
        sep_BG_R=_separated(supp, "BG"),
        sep_BR_G=_separated(supp, "BR"),
        sep_GR_B=_separated(supp, "GR"),
        in_eset=eset,
    )


def is_ebd(F: SymSig, plane: str, tol: float = ZERO_TOL) -> bool:
    i, j = PLANE_AXES[plane]
    return all(set(m) <= {i, j} for m in support(F, tol))


def is_separated(F: SymSig, plane: str, tol: float = ZERO_TOL) -> bool:
    return _separated(support(F, tol), plane)


# ----------------------------------------------------------------------------
# binary shapes


def _signed_permutations() -> tuple:
    out = []
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            P = np.zeros((3, 3))
            for r, c in enumerate(perm):
                P[r, c] = signs[r]
            P.setflags(write=False)
            out.append(P)
    return tuple(out)


OH = _signed_permutations()


def oh_index(P, tol: float = ZERO_TOL) -> int | None:
    """Position of ``P`` in :data:`OH`, or None."""
    P = np.asarray(P)
    for k, Q in enumerate(OH):
        if np.max(np.abs(P - Q)) <= max(tol, 1e-12) * 10:
            return k
    return None


def _rank_le1(A, tol) -> bool:
    A = np.asarray(A, dtype=complex)
    m = maxabs(A)
    if m == 0:
        return True
    rows, cols = A.shape
    for r1, r2 in itertools.combinations(range(rows), 2):
        for c1, c2 in itertools.combinations(range(cols), 2):
            minor = A[r1, c1] * A[r2, c2] - A[r1, c2] * A[r2, c1]
            if abs(minor) > tol * m * m:
                return False
    return True


@dataclass(frozen=True)
class BinaryShape:
    in_D: bool
    is_genperm: bool
    in_Oh: bool
    oh_scale: complex | None
    oh_element: np.ndarray | None = field(compare=False)
    sep_BG_R: bool
    sep_BR_G: bool
    sep_GR_B: bool
    swap_BG_R: bool
    swap_BR_G: bool
    swap_GR_B: bool
    is_degenerate: bool

    def separated(self, plane: str) -> bool:
        return {"BG": self.sep_BG_R, "BR": self.sep_BR_G, "GR": self.sep_GR_B}[plane]

    def swap(self, plane: str) -> bool:
        return {"BG": self.swap_BG_R, "BR": self.swap_BR_G, "GR": self.swap_GR_B}[plane]


def oh_decompose(M, tol: float = ZERO_TOL):
    """Return ``(scale, P)`` with ``M = scale * P`` and ``P`` in O_h, else None."""
    M = np.asarray(M, dtype=complex)
    m = maxabs(M)
    if m == 0:
        return None
    nz = ~zero_mask(M, tol)
    if not (np.all(nz.sum(axis=0) == 1) and np.all(nz.sum(axis=1) == 1)):
        return None
    entries = M[nz]
    ref = entries[0]
    ratios = entries / ref
    if np.max(np.abs(np.abs(ratios) - 1)) > tol * 10 or np.max(np.abs(ratios.imag)) > tol * 10:
        return None
    P = np.where(nz, (M / ref).real, 0.0)
    P = np.round(P)
    return ref, P


def binary_shape(M, tol: float = ZERO_TOL) -> BinaryShape:
    M = np.asarray(M, dtype=complex)
    z = zero_mask(M, tol)
    nz = ~z
    genperm = bool(np.all(nz.sum(axis=0) <= 1) and np.all(nz.sum(axis=1) <= 1))
    oh = oh_decompose(M, tol)

    def sep(plane):
        i, j = PLANE_AXES[plane]
        k = 3 - i - j
        return bool(z[k, i] and z[k, j] and z[i, k] and z[j, k])

    def swap(plane):
        i, j = PLANE_AXES[plane]
        k = 3 - i - j
        return bool(z[i, i] and z[i, j] and z[j, i] and z[j, j] and z[k, k])

    return BinaryShape(
        in_D=_rank_le1(M[:, :2], tol) and _rank_le1(M[:2, :], tol),
        is_genperm=genperm,
        in_Oh=oh is not None,
        oh_scale=None if oh is None else oh[0],
        oh_element=None if oh is None else oh[1],
        sep_BG_R=sep("BG"),
        sep_BR_G=sep("BR"),
        sep_GR_B=sep("GR"),
        swap_BG_R=swap("BG"),
        swap_BR_G=swap("BR"),
        swap_GR_B=swap("GR"),
        is_degenerate=_rank_le1(M, tol),
    )


def is_degenerate(F: SymSig, tol: float = ZERO_TOL) -> bool:
    """True if ``F`` is a scalar multiple of a tensor power of one vector (or zero)."""
    if F.arity == 1:
        return True
    m = F.maxabs()
    if m == 0:
        return True
    c, v = degenerate_vector(F)
    rebuilt = sig_from_terms([(c, v)], F.arity, F.domain).values
    return bool(np.max(np.abs(rebuilt - F.values)) <= tol * m)


def degenerate_vector(F: SymSig) -> tuple[complex, np.ndarray]:
    """For degenerate ``F = c v^n`` return ``(c, v)`` with ``v`` of unit length."""
    t = F.tensor().reshape(F.domain, -1)
    col = int(np.argmax(np.max(np.abs(t), axis=0)))
    v = t[:, col]
    nv = np.linalg.norm(v)
    if nv == 0:
        return 0.0, np.eye(F.domain)[0]
    v = v / nv
    k = int(np.argmax(np.abs(v)))
    v = v * (abs(v[k]) / v[k])
    base = sig_from_terms([(1.0, v)], F.arity, F.domain).values
    j = int(np.argmax(np.abs(base)))
    return F.values[j] / base[j], v


# ----------------------------------------------------------------------------
# matrix signatures (binary, possibly asymmetric) for grids


class MatSig:
    """A binary signature given as a matrix; port 0 indexes rows, port 1 columns."""

    __slots__ = ("domain", "arity", "matrix")

    def __init__(self, matrix):
        M = np.array(matrix, dtype=complex)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError("matrix signature must be square")
        M.setflags(write=False)
        object.__setattr__(self, "domain", M.shape[0])
        object.__setattr__(self, "arity", 2)
        object.__setattr__(self, "matrix", M)

    def __setattr__(self, name, value):
        raise AttributeError("signatures are immutable")

    def __repr__(self):
        return f"MatSig({np.round(self.matrix, 6).tolist()})"

    def tensor(self) -> np.ndarray:
        return self.matrix

    def maxabs(self) -> float:
        return maxabs(self.matrix)


def sig_tensor(sig) -> np.ndarray:
    return sig.tensor()


# ----------------------------------------------------------------------------
# grids


Port = tuple  # (vertex id, port index)


@dataclass(frozen=True)
class GridIssue:
    kind: str
    message: str

    def __str__(self):
        return f"{self.kind}: {self.message}"


@dataclass
class SignatureGrid:
    """A graph whose vertices carry named signatures; open ports are ``externals``."""

    signatures: dict
    vertices: list  # [(id, signature name)]
    edges: list  # [((v, p), (w, q))]
    externals: list = field(default_factory=list)  # [(v, p)]

    def __post_init__(self):
        self.vertices = [(str(v), str(s)) for v, s in self.vertices]
        self.edges = [((str(a[0]), int(a[1])), (str(b[0]), int(b[1]))) for a, b in self.edges]
        self.externals = [(str(v), int(p)) for v, p in self.externals]

    @property
    def domain(self) -> int:
        doms = {s.domain for s in self.signatures.values()}
        return doms.pop() if len(doms) == 1 else 3

    def sig_of(self, vid):
        return self.signatures[dict(self.vertices)[vid]]

    def vertex_map(self) -> dict:
        return {v: self.signatures[s] for v, s in self.vertices}

    def is_closed(self) -> bool:
        return not self.externals

    def copy(self) -> "SignatureGrid":
        return SignatureGrid(dict(self.signatures), list(self.vertices), list(self.edges), list(self.externals))


def grid_validate(G: SignatureGrid) -> list[GridIssue]:
    """Return the list of structural problems of ``G`` (empty when well formed)."""
    issues = []
    arity = {}
    seen_ids = set()
    for vid, name in G.vertices:
        if vid in seen_ids:
            issues.append(GridIssue("DuplicateVertex", f"vertex {vid!r} declared twice"))
        seen_ids.add(vid)
        if name not in G.signatures:
            issues.append(GridIssue("UnknownSignature", f"vertex {vid!r} uses unknown signature {name!r}"))
            continue
        arity[vid] = G.signatures[name].arity
    used = {}
    ports = [(e[0], f"edge {k}") for k, e in enumerate(G.edges)]
    ports += [(e[1], f"edge {k}") for k, e in enumerate(G.edges)]
    ports += [(p, f"external {k}") for k, p in enumerate(G.externals)]
    for (vid, p), where in ports:
        if vid not in seen_ids:
            issues.append(GridIssue("UnknownVertex", f"{where} references unknown vertex {vid!r}"))
            continue
        if vid not in arity:
            continue
        if not 0 <= p < arity[vid]:
            issues.append(
                GridIssue("ArityMismatch", f"{where} uses port {p} of {vid!r} which has arity {arity[vid]}")
            )
            continue
        if (vid, p) in used:
            issues.append(GridIssue("PortReused", f"port ({vid}, {p}) used by {used[(vid, p)]} and {where}"))
        else:
            used[(vid, p)] = where
    for vid, n in arity.items():
        for p in range(n):
            if (vid, p) not in used:
                issues.append(GridIssue("PortMissing", f"port ({vid}, {p}) is not connected"))
    return issues


def require_valid(G: SignatureGrid) -> None:
    issues = grid_validate(G)
    if issues:
        raise ValidationError(issues)


# ----------------------------------------------------------------------------
# JSON


def _cplx(x) -> complex:
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ParseError(f"complex number must be [re, im], got {x!r}")
        return complex(float(x[0]), float(x[1]))
    if isinstance(x, dict):
        return complex(float(x.get("re", 0.0)), float(x.get("im", 0.0)))
    return complex(float(x))


def _pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def sig_to_json(sig) -> dict:
    if isinstance(sig, MatSig):
        return {
            "kind": "matrix",
            "domain": sig.domain,
            "entries": [[_pair(z) for z in row] for row in sig.matrix],
        }
    if sig.domain == 2:
        return {"kind": "bool-symmetric", "values": [_pair(z) for z in sig.values]}
    vals = [
        {"idx": lab, "re": z.real, "im": z.imag}
        for lab, z in zip(sig.labels(), sig.values)
        if z != 0
    ]
    return {"kind": "symmetric", "domain": 3, "arity": sig.arity, "values": vals}


def sig_from_json(obj: dict):
    try:
        kind = obj.get("kind", "symmetric")
        if kind == "bool-symmetric":
            return BoolSig([_cplx(x) for x in obj["values"]])
        if kind == "matrix":
            return MatSig([[_cplx(x) for x in row] for row in obj["entries"]])
        if kind != "symmetric":
            raise ParseError(f"unknown signature kind {kind!r}")
        if int(obj.get("domain", 3)) != 3:
            raise ParseError("symmetric signatures must have domain 3")
        n = int(obj["arity"])
        if n < 1:
            raise ParseError("arity must be at least 1")
        lookup = {m: i for i, m in enumerate(multisets(3, n))}
        vals = np.zeros(len(lookup), dtype=complex)
        for entry in obj.get("values", []):
            idx = entry["idx"]
            key = _parse_index(idx, n)
            if "".join(sorted(idx, key=DOMAIN.index)) != idx:
                raise ParseError(f"index {idx!r} is not canonical")
            vals[lookup[key]] = complex(float(entry.get("re", 0.0)), float(entry.get("im", 0.0)))
        return SymSig(vals, n)
    except ParseError:
        raise
    except BadIndex as exc:
        raise ParseError(str(exc)) from exc
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"malformed signature: {exc}") from exc


def grid_to_json(G: SignatureGrid) -> dict:
    return {
        "signatures": {k: sig_to_json(s) for k, s in G.signatures.items()},
        "vertices": [{"id": v, "sig": s} for v, s in G.vertices],
        "edges": [{"a": list(a), "b": list(b)} for a, b in G.edges],
        "externals": [list(p) for p in G.externals],
    }


def grid_from_json(obj: dict) -> SignatureGrid:
    try:
        sigs = {k: sig_from_json(v) for k, v in obj["signatures"].items()}
        verts = [(v["id"], v["sig"]) for v in obj["vertices"]]
        edges = [((e["a"][0], e["a"][1]), (e["b"][0], e["b"][1])) for e in obj.get("edges", [])]
        ext = [(p[0], p[1]) for p in obj.get("externals", [])]
    except ParseError:
        raise
    except (KeyError, TypeError, IndexError, AttributeError) as exc:
        raise ParseError(f"malformed grid: {exc}") from exc
    return SignatureGrid(sigs, verts, edges, ext)


def load_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def as_vector(v: Sequence) -> np.ndarray:
    return np.asarray(v, dtype=complex).ravel()
