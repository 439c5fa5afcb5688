"""Set-level complexity classification of real symmetric signatures on {B, G, R}.

A set is tractable when, for some real orthogonal T, the transformed set lands in
one of five classes:

A   every signature has arity at most 2;
B   every transformed signature lies in the E-set (generalized equalities and
    generalized permutations);
C   high-arity members live on {B, G}, binaries are in the rank-one family D or
    separate {B, G} from {R}, and the restriction to {B, G} is a tractable
    Boolean set;
D   high-arity members separate {B, G} from {R}, binaries separate or swap the
    two blocks, and the restriction to {B, G} is a tractable Boolean set;
E   high-arity members each live on one coordinate plane, the rest are scaled
    signed permutations, and the Boolean restrictions stay tractable under the
    group the permutations generate.

The witness T is searched over a finite family of frames built from the
signatures' own decomposition geometry.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .boolhol import BoolVerdict, classify_bool_set
from .sigcore import (
    OH,
    PLANE_AXES,
    PLANES,
    ZERO_TOL,
    HolantError,
    SymSig,
    binary_shape,
    is_degenerate,
    is_ebd,
    is_separated,
    maxabs,
    oh_decompose,
    oh_index,
    projective_normalize,
    restrict_matrix,
    restrict_signature,
    support_flags,
)
from .tensorlab import (
    DEFAULT_SEED,
    Degenerate,
    NotLowRank,
    apply_binary,
    canonicalize,
    contract_unary,
    decompose,
    reduce_to_ternary,
)

ORBIT_CAP = 512
FRAME_ORBIT_CAP = 64

CITES = {
    "single-not-orthogonal": (
        "a signature of arity at least 3 that decomposes into linearly independent "
        "rank-one powers which are neither orthogonal real vectors nor an orthogonal "
        "equal-norm conjugate pair is #P-hard on its own"
    ),
    "single-not-low-rank": (
        "a signature of arity at least 3 that is not, after some real orthogonal change "
        "of basis, a generalized equality or a conjugate pair plus an axis term is "
        "#P-hard on its own"
    ),
    "no-tractable-frame": (
        "no candidate real orthogonal frame places the set in any of the tractable "
        "classes A to E; the set is #P-hard assuming the witness frames are among the "
        "decomposition-aligned candidates"
    ),
    "single-degenerate": "degenerate signatures are products of unaries and never affect complexity",
}

FRAME_ASSUMPTION = "witness frames are searched among decomposition-aligned candidates"


class NotRank2(HolantError):
    code = "NotRank2"


# ----------------------------------------------------------------------------
# verdicts


@dataclass
class Verdict:
    status: str  # Tractable | Hard
    cls: str | None  # A..E
    witness_T: np.ndarray
    evidence: dict = field(default_factory=dict)
    hard_evidence: dict | None = None
    warnings: list = field(default_factory=list)
    signatures: dict = field(default_factory=dict, repr=False)

    @property
    def tractable(self) -> bool:
        return self.status == "Tractable"

    def to_json(self) -> dict:
        return {
            "status": self.status.lower(),
            "class": self.cls,
            "witness_T": np.real(self.witness_T).tolist(),
            "evidence": _jsonable(self.evidence),
            "hard_evidence": _jsonable(self.hard_evidence),
            "warnings": list(self.warnings),
            "assumption": FRAME_ASSUMPTION,
        }


def _jsonable(x):
    if x is None or isinstance(x, (str, bool, int)):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, complex):
        return [x.real, x.imag] if x.imag else x.real
    if isinstance(x, np.ndarray):
        a = np.asarray(x)
        if np.iscomplexobj(a) and np.max(np.abs(a.imag), initial=0) > 0:
            return _jsonable(a.tolist())
        return np.real(a).tolist()
    if isinstance(x, np.generic):
        return _jsonable(x.item())
    if isinstance(x, BoolVerdict):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


# ----------------------------------------------------------------------------
# geometry


@dataclass(frozen=True)
class Plane:
    normal: np.ndarray = field(compare=False)

    def same_as(self, other: "Plane", tol: float = 1e-7) -> bool:
        return abs(abs(self.normal @ other.normal) - 1) <= tol

    def orthogonal_to(self, other: "Plane", tol: float = 1e-7) -> bool:
        return abs(self.normal @ other.normal) <= tol


def _canon_sign(v: np.ndarray) -> np.ndarray:
    for x in v:
        if abs(x) > 1e-12:
            return v if x > 0 else -v
    return v


def _unit(v) -> np.ndarray:
    v = np.real(np.asarray(v, dtype=complex))
    return v / np.linalg.norm(v)


def _directions(decomp) -> list:
    """Real directions spanning the decomposition's vectors."""
    if decomp.kind == "ConjugatePair":
        dirs = [_unit(decomp.pair_u), _unit(decomp.pair_v)]
        if len(decomp.terms) == 3:
            dirs.append(_unit(decomp.terms[2].vector))
        return dirs
    return [_unit(t.vector) for t in decomp.terms]


def signature_plane(F: SymSig, decomp=None, tol: float = ZERO_TOL) -> Plane:
    """The plane spanned by the two decomposition directions of a rank-2 signature."""
    if decomp is None:
        decomp = decompose(F)
    dirs = _directions(decomp)
    if len(dirs) != 2:
        raise NotRank2(f"decomposition has {len(dirs)} independent directions")
    n = np.cross(dirs[0], dirs[1])
    return Plane(_canon_sign(n / np.linalg.norm(n)))


def _same_frame_mod_oh(T1, T2) -> bool:
    R = np.abs(T1 @ T2.T)
    return bool(np.all((np.abs(R) < 1e-7) | (np.abs(R - 1) < 1e-7)) and np.allclose(R.sum(axis=0), 1, atol=1e-7))


def _frame_from(rows) -> np.ndarray | None:
    rows = [_unit(r) for r in rows]
    T = np.array(rows)
    if np.max(np.abs(T @ T.T - np.eye(3))) > 1e-7:
        return None
    # re-orthonormalize to machine precision
    u, _, vt = np.linalg.svd(T)
    return u @ vt


def _add_frame(frames: list, T) -> None:
    if T is None:
        return
    for F in frames:
        if _same_frame_mod_oh(F, T):
            return
    frames.append(T)


# ----------------------------------------------------------------------------
# orbit


@dataclass
class OrbitSet:
    members: list
    truncated: bool
    cap: int


def _proj_key(sig: SymSig):
    v = projective_normalize(sig.values)
    return tuple(np.round(v.real, 7)) + tuple(np.round(v.imag, 7))


def compute_orbit(ternaries, binaries, cap: int = ORBIT_CAP, tol: float = ZERO_TOL) -> OrbitSet:
    """Closure of ``ternaries`` under ``G^{(x)3}`` for each binary ``G`` (non-degenerate images only)."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    members, keys = [], set()
    queue = []

    def push(s):
        if is_degenerate(s, tol):
            return True
        k = _proj_key(s)
        if k in keys:
            return True
        if len(members) >= cap:
            return False
        keys.add(k)
        members.append(s)
        queue.append(s)
        return True

    truncated = False
    for s in ternaries:
        if not push(s):
            truncated = True
    mats = [np.asarray(b.as_matrix() if isinstance(b, SymSig) else b, dtype=complex) for b in binaries]
    i = 0
    while i < len(queue) and not truncated:
        s = queue[i]
        i += 1
        for M in mats:
            if not push(apply_binary(M, s)):
                truncated = True
                break
    return OrbitSet(members, truncated, cap)


# ----------------------------------------------------------------------------
# candidate frames


def _base_frames(canons: list, decomps: list, binaries: list, tol: float) -> list:
    """Orthogonal frames worth testing, deduplicated modulo signed permutations."""
    frames = []
    for c in canons:
        _add_frame(frames, np.real(c.T))
    planes, dirs = [], []
    for d in decomps:
        ds = _directions(d)
        dirs.extend(ds)
        if len(ds) == 2:
            n = np.cross(ds[0], ds[1])
            planes.append(_canon_sign(n / np.linalg.norm(n)))
    normals = []
    for n in planes:
        if not any(abs(abs(n @ m) - 1) < 1e-7 for m in normals):
            normals.append(n)
    # completions of pairwise orthogonal normals
    for n1, n2 in itertools.combinations(normals, 2):
        if abs(n1 @ n2) < 1e-7:
            _add_frame(frames, _frame_from([n1, n2, np.cross(n1, n2)]))
    # a normal together with an in-plane decomposition direction
    for n in normals:
        for d in dirs:
            if abs(n @ d) < 1e-7:
                _add_frame(frames, _frame_from([d, np.cross(n, d), n]))
    for M in binaries:
        M = np.asarray(M)
        if np.max(np.abs(M.imag)) <= tol * maxabs(M) and np.allclose(M, M.T, atol=tol * maxabs(M)):
            _, V = np.linalg.eigh(np.real(M))
            _add_frame(frames, _frame_from(list(V.T)))
    _add_frame(frames, np.eye(3))
    return frames


def candidate_frames(S, tol: float = ZERO_TOL, seed: int = DEFAULT_SEED) -> list:
    """Candidate witness frames for a set of signatures, expanded by all of O_h."""
    sigs = list(S.values()) if isinstance(S, dict) else list(S)
    highs = [s for s in sigs if s.arity >= 3 and not is_degenerate(s, tol)]
    bins = [s.as_matrix() for s in sigs if s.arity == 2]
    canons, decomps = [], []
    for s in highs:
        try:
            canons.append(canonicalize(s, seed=seed))
            decomps.append(canons[-1].decomposition)
        except (NotLowRank, Degenerate):
            continue
    base = _base_frames(canons, decomps, bins, tol) if sigs else [np.eye(3)]
    out = []
    for T in base:
        for P in OH:
            cand = P @ T
            if not any(np.max(np.abs(cand - X)) < 1e-9 for X in out):
                out.append(cand)
    return out


# ----------------------------------------------------------------------------
# class checks on a transformed set


def _chop(s: SymSig, tol: float = ZERO_TOL) -> SymSig:
    """Zero out entries (and imaginary parts) below ``tol`` relative to the largest entry."""
    v = s.values
    m = maxabs(v)
    re = np.where(np.abs(v.real) <= tol * m, 0.0, v.real)
    im = np.where(np.abs(v.imag) <= tol * m, 0.0, v.imag)
    return SymSig(re + 1j * im if np.any(im) else re, s.arity, s.domain)


def _transform_all(T, sigs: dict, tol: float = ZERO_TOL) -> dict:
    return {k: _chop(apply_binary(T, s), tol) for k, s in sigs.items()}


class _Fail(Exception):
    def __init__(self, condition: str, names):
        super().__init__(condition)
        self.condition = condition
        self.names = list(names)


def _check_B(TF: dict, tol):
    for k, s in TF.items():
        if s.arity >= 3 and not support_flags(s, tol).is_geneq:
            raise _Fail("(B) a high-arity member is not a generalized equality", [k])
        if s.arity == 2 and not binary_shape(s.as_matrix(), tol).is_genperm:
            raise _Fail("(B) a binary is not a generalized permutation", [k])
    return {"members": sorted(TF)}


def _bool_restrictions(TF: dict, plane: str, tol):
    names, items = [], []
    for k, s in TF.items():
        if s.arity >= 2:
            names.append(k)
            items.append(restrict_signature(s, plane))
    return names, items


def _check_C(TF: dict, tol):
    tags = {}
    for k, s in TF.items():
        if s.arity >= 3 and not is_ebd(s, "BG", tol):
            raise _Fail("(C.a) a high-arity member is not supported on {B,G}", [k])
        if s.arity == 2:
            sh = binary_shape(s.as_matrix(), tol)
            if sh.in_D:
                tags[k] = "in-D"
            elif sh.sep_BG_R:
                tags[k] = "BG|R"
            else:
                raise _Fail("(C.b) a binary is neither in D nor BG|R", [k])
    names, items = _bool_restrictions(TF, "BG", tol)
    bv = classify_bool_set(items, tol)
    if not bv.tractable:
        raise _Fail("(C.c) the restriction to {B,G} is not a tractable Boolean set", names)
    return {"binary_tags": tags, "boolean": bv, "boolean_members": names}


def _check_D(TF: dict, tol):
    tags = {}
    for k, s in TF.items():
        if s.arity >= 3 and not is_separated(s, "BG", tol):
            raise _Fail("(D.a) a high-arity member does not separate {B,G} from {R}", [k])
        if s.arity == 2:
            sh = binary_shape(s.as_matrix(), tol)
            if sh.sep_BG_R:
                tags[k] = "BG|R"
            elif sh.swap_BG_R:
                tags[k] = "swap"
            else:
                raise _Fail("(D.b) a binary neither separates nor swaps {B,G} and {R}", [k])
    names, items = _bool_restrictions(TF, "BG", tol)
    bv = classify_bool_set(items, tol)
    if not bv.tractable:
        raise _Fail("(D.c) the restriction to {B,G} is not a tractable Boolean set", names)
    return {"binary_tags": tags, "boolean": bv, "boolean_members": names}


def group_closure(gens) -> list:
    """Indices into O_h of the group generated by ``gens`` (identity included)."""
    ident = oh_index(np.eye(3))
    elems = [ident]
    gi = sorted({oh_index(g) for g in gens})
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for b in gi:
                c = oh_index(OH[a] @ OH[b])
                if c not in elems:
                    elems.append(c)
                    nxt.append(c)
        frontier = nxt
    return sorted(elems)


def _check_E(TF: dict, tol):
    parts = {p: [] for p in PLANES}
    rest = []
    for k, s in TF.items():
        if s.arity < 2:
            continue
        plane = next((p for p in PLANES if is_ebd(s, p, tol)), None)
        if plane is None:
            rest.append(k)
        else:
            parts[plane].append(k)
    gens = []
    for k in rest:
        s = TF[k]
        if s.arity != 2:
            raise _Fail("(E.a) a member of R has arity above 2", [k])
        dec = oh_decompose(s.as_matrix(), tol)
        if dec is None:
            raise _Fail("(E.a) a member of R is not a scalar multiple of a signed permutation", [k])
        gens.extend([dec[1], -dec[1]])
    group = group_closure(gens)
    bool_b, bool_c = {}, {}
    for plane in PLANES:
        items = [restrict_matrix(OH[g], plane) for g in group]
        items += [restrict_signature(TF[k], plane) for k in parts[plane]]
        bv = classify_bool_set(items, tol)
        if not bv.tractable:
            raise _Fail(f"(E.b) group restrictions with the {plane} members are not tractable", parts[plane] + rest)
        bool_b[plane] = bv
    for plane in PLANES:
        items, names = [], []
        for g in group:
            P = OH[g]
            for k, s in TF.items():
                if s.arity < 2:
                    continue
                img = apply_binary(P, s)
                items.append(restrict_signature(img, plane))
                names.append(k)
        bv = classify_bool_set(items, tol)
        if not bv.tractable:
            raise _Fail(f"(E.c) the group images restricted to {plane} are not tractable", sorted(set(names)))
        bool_c[plane] = bv
    return {
        "partition": {p: list(v) for p, v in parts.items()},
        "R": rest,
        "R_prime": [OH[oh_index(g)] for g in gens[::2]],
        "group": group,
        "group_order": len(group),
        "boolean_b": bool_b,
        "boolean_c": bool_c,
    }


_CHECKS = {"B": _check_B, "C": _check_C, "D": _check_D, "E": _check_E}


def _variants(cls: str, T: np.ndarray) -> list:
    if cls in ("C", "D"):
        return [T, T[[0, 2, 1]], T[[1, 2, 0]]]
    return [T]


# ----------------------------------------------------------------------------
# witness normalization for class E


def _normalize_E(T: np.ndarray, sigs: dict, order: list, tol) -> np.ndarray:
    """Assign planes in order of first appearance (BG, then BR, then GR) and fix row signs."""
    TF = _transform_all(T, sigs)
    seen = []
    for k in order:
        s = TF[k]
        if s.arity < 3:
            continue
        plane = next((p for p in PLANES if is_ebd(s, p, tol)), None)
        if plane is not None and set(PLANE_AXES[plane]) not in seen:
            seen.append(set(PLANE_AXES[plane]))
    perm = None
    if len(seen) >= 2:
        a, b = seen[0], seen[1]
        common = (a & b).pop()
        perm = [common, (a - {common}).pop(), (b - {common}).pop()]
    elif len(seen) == 1:
        i, j = sorted(seen[0])
        perm = [i, j, 3 - i - j]
    T2 = T[perm] if perm else T.copy()
    TF2 = _transform_all(T2, sigs)
    fixed = [False] * 3
    for k in order:
        s = TF2[k]
        if s.arity >= 3 and s.arity % 2 == 1 and support_flags(s, tol).is_geneq:
            m = s.maxabs()
            for i in range(3):
                c = s[(i,) * s.arity]
                if not fixed[i] and abs(c) > tol * m:
                    if c.real < 0:
                        T2[i] = -T2[i]
                    fixed[i] = True
    for i in range(3):
        if not fixed[i]:
            T2[i] = _canon_sign(T2[i])
    return T2


# ----------------------------------------------------------------------------
# hardness evidence for single signatures


def general_decomposition(F: SymSig, seed: int = DEFAULT_SEED, tol: float = 1e-7):
    """Rank <= 3 decomposition with linearly independent (not necessarily orthogonal) vectors.

    Returns a list of ``(coeff, vector)`` or None.  Used only as evidence.
    """
    rng = np.random.default_rng(seed)
    G = F
    while G.arity > 3:
        G = contract_unary(G, rng.normal(size=3))
    flat = G.tensor().reshape(3, 9)
    U, s, _ = np.linalg.svd(flat)
    r = int(np.sum(s > tol * s[0]))
    if r < 2:
        return None
    Ur = U[:, :r]
    small = apply_binary_r(Ur.conj().T, G.tensor())
    S1 = np.tensordot(rng.normal(size=r), small, axes=([0], [0]))
    S2 = np.tensordot(rng.normal(size=r), small, axes=([0], [0]))
    try:
        _, V = np.linalg.eig(S1 @ np.linalg.inv(S2))
    except np.linalg.LinAlgError:
        return None
    vecs = [Ur @ V[:, k] for k in range(r)]
    n = F.arity
    from .sigcore import sig_from_terms

    cols = np.array([sig_from_terms([(1.0, v)], n).values for v in vecs]).T
    coef, *_ = np.linalg.lstsq(cols, F.values, rcond=None)
    if maxabs(cols @ coef - F.values) > 1e-6 * F.maxabs():
        return None
    return [(coef[k], vecs[k]) for k in range(r)]


def apply_binary_r(M, t):
    for ax in range(t.ndim):
        t = np.moveaxis(np.tensordot(M, t, axes=([1], [ax])), 0, ax)
    return t


# ----------------------------------------------------------------------------
# entry points


def _named(S) -> dict:
    if isinstance(S, dict):
        return dict(S)
    return {f"S{k}": s for k, s in enumerate(S)}


def classify_set(S, tol: float = ZERO_TOL, seed: int = DEFAULT_SEED, orbit_cap: int = FRAME_ORBIT_CAP) -> Verdict:
    """Classify a set (list or name -> signature mapping) of real symmetric signatures."""
    named = _named(S)
    warnings_ = []
    sigs = {}
    for k, s in named.items():
        if s.arity == 1 or is_degenerate(s, tol):
            warnings_.append(f"dropped degenerate signature {k}")
            continue
        sigs[k] = s
    order = list(sigs)
    eye = np.eye(3)
    if all(s.arity <= 2 for s in sigs.values()):
        return Verdict("Tractable", "A", eye, {"members": order}, None, warnings_, sigs)

    canons, decomps = {}, {}
    for k, s in sigs.items():
        if s.arity < 3:
            continue
        try:
            c = canonicalize(s, seed=seed)
        except NotLowRank:
            gen = general_decomposition(s, seed)
            if gen is not None:
                rule = "single-not-orthogonal"
                extra = {"vectors": [v for _, v in gen], "coeffs": [c for c, _ in gen]}
            else:
                rule = "single-not-low-rank"
                extra = {}
            hard = {"rule": rule, "cite": CITES[rule], "signatures": [k], **extra}
            return Verdict("Hard", None, eye, {}, hard, warnings_, sigs)
        canons[k] = c
        decomps[k] = c.decomposition

    binaries = [s.as_matrix() for s in sigs.values() if s.arity == 2]
    extra_decomps = _orbit_decomps(sigs, canons, binaries, orbit_cap, seed, tol)
    frames = _base_frames(list(canons.values()), list(decomps.values()) + extra_decomps, binaries, tol)

    failures = {}
    for cls in ("B", "C", "D", "E"):
        check = _CHECKS[cls]
        for T in frames:
            for V in _variants(cls, T):
                try:
                    ev = check(_transform_all(V, sigs), tol)
                except _Fail as f:
                    failures.setdefault(cls, {"condition": f.condition, "signatures": f.names})
                    continue
                W = V
                if cls == "E":
                    W = _normalize_E(V, sigs, order, tol)
                    ev = check(_transform_all(W, sigs), tol)
                ev["canonical_forms"] = {k: {"form": c.form, "rank": c.rank} for k, c in canons.items()}
                ev["frames_tested"] = len(frames)
                return Verdict("Tractable", cls, W, ev, None, warnings_, sigs)
    last = failures.get("E") or next(iter(failures.values()))
    hard = {
        "rule": "no-tractable-frame",
        "cite": CITES["no-tractable-frame"],
        "signatures": last["signatures"],
        "failures": failures,
        "frames_tested": len(frames),
    }
    return Verdict("Hard", None, eye, {}, hard, warnings_, sigs)


def _orbit_decomps(sigs, canons, binaries, cap, seed, tol) -> list:
    if not binaries or not canons:
        return []
    terns = []
    for k, c in canons.items():
        try:
            terns.append(reduce_to_ternary(sigs[k], c))
        except (NotLowRank, Degenerate):
            continue
    orbit = compute_orbit(terns, binaries, cap, tol)
    out = []
    for s in orbit.members[len(terns):]:
        try:
            out.append(decompose(s, seed=seed))
        except NotLowRank:
            continue
    return out


def classify_single(F: SymSig, tol: float = ZERO_TOL, seed: int = DEFAULT_SEED) -> Verdict:
    """Classify the singleton set {F} for a nondegenerate F of arity >= 3."""
    if F.arity < 3:
        raise ValueError("classify_single expects arity at least 3")
    if is_degenerate(F, tol):
        raise Degenerate("degenerate signature")
    v = classify_set({"F": F}, tol, seed)
    if v.tractable:
        c = canonicalize(F, seed=seed)
        v.evidence["canonical"] = {"form": c.form, "coeffs": list(c.coeffs), "T": np.real(c.T)}
    return v
