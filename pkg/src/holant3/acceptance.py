"""The ten acceptance checks, shared by ``holant3 selftest`` and the test suite.

Each check returns a :class:`CheckResult`; nothing here raises on a failed
check, so a runner can report every line before deciding the exit status.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .boolhol import classify_bool_set, eval_bool, eval_bool_brute, is_type_ii, type_i_witness
from .classifier import classify_set, classify_single
from .evaluator import eval_brute, eval_tractable
from .fixtures import (
    beta_form,
    EXAMPLE1_T,
    EXAMPLE2_T,
    example1,
    example1_transformed_forms,
    example2,
    example2_f2_form,
    geneq,
    hard_conjugate_pair,
    hard_real_pair,
    lemma_table,
    parity_family,
)
from .gadgetlab import local_holographic, realize_plane_equality, realize_z_arity4
from .generators import (
    CLASS_SETS,
    random_bool_set,
    random_closed_grid,
    random_any_set,
    random_orthogonal,
    transform_grid,
)
from .sigcore import OH, BoolSig, is_ebd, projective_equal, sig_from_terms
from .tensorlab import apply_orthogonal, canonicalize, decompose

DEFAULT_SELFTEST_SEED = 20240601


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def _rel(a, b) -> float:
    return abs(complex(a) - complex(b)) / max(1.0, abs(complex(b)))


# ----------------------------------------------------------------------------
# worked examples


def check_example1() -> CheckResult:
    sigs = example1()
    t0 = time.perf_counter()
    v = classify_set(sigs)
    dt = time.perf_counter() - t0
    forms = example1_transformed_forms()
    planes = {"F1": "BG", "G1": "BR", "H1": "GR"}
    ok_support = all(is_ebd(apply_orthogonal(EXAMPLE1_T, sigs[k]), p) for k, p in planes.items())
    ok_forms = all(projective_equal(apply_orthogonal(EXAMPLE1_T, sigs[k]).values, f.values) for k, f in forms.items())
    ok = v.tractable and v.cls == "E" and ok_support and ok_forms and dt < 1.0
    detail = f"class={v.cls} supports={ok_support} forms={ok_forms} time={dt:.3f}s"
    return CheckResult("example1", ok, detail, {"seconds": dt})


def check_example2() -> CheckResult:
    v = classify_set(example2())
    F2t = apply_orthogonal(EXAMPLE2_T, example2()["F2"])
    ok_form = projective_equal(F2t.values, example2_f2_form().values)
    ok = v.tractable and v.cls == "D" and ok_form
    return CheckResult("example2", ok, f"class={v.cls} F2-form={ok_form}")


def check_parity_family() -> CheckResult:
    fam = parity_family((3, 4), ((1, 1), (2, -1)))
    v = classify_set(fam)
    arities = sorted({s.arity for s in fam.values()})
    ok = v.tractable and v.cls == "E"
    return CheckResult("parity-family", ok, f"class={v.cls} members={len(fam)} arities={arities}")


def check_hardness() -> CheckResult:
    a = classify_single(hard_real_pair())
    b = classify_single(hard_conjugate_pair())
    ok = a.status == "Hard" and b.status == "Hard"
    return CheckResult("hardness", ok, f"real-pair={a.status} conjugate-pair={b.status}")


# ----------------------------------------------------------------------------
# oracle properties


def _timed(fn, repeats: int = 3):
    """Result of ``fn`` and its best wall time over a few repeats."""
    best, out = float("inf"), None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def check_oracle(seed: int, per_class: int = 50) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst, slow_fast, slow_brute, bad = 0.0, 0.0, 0.0, []
    for cls, make in CLASS_SETS.items():
        done = 0
        while done < per_class:
            sigs = make(rng)
            v = classify_set(sigs)
            if not (v.tractable and v.cls == cls):
                bad.append(f"{cls}: set classified as {v.cls or v.status}")
                break
            for _ in range(5):
                g = random_closed_grid(rng, sigs, max_edges=8, max_vertices=6)
                fast, t_fast = _timed(lambda: eval_tractable(g, v).value)
                slow, t_brute = _timed(lambda: eval_brute(g).value)
                err = _rel(fast, slow)
                worst = max(worst, err)
                slow_fast = max(slow_fast, t_fast)
                slow_brute = max(slow_brute, t_brute)
                if err > 1e-6:
                    bad.append(f"{cls}: {fast} vs {slow}")
                done += 1
    ok = not bad and slow_fast < 0.010 and slow_brute < 1.0
    detail = (
        f"{per_class} grids/class, max rel err={worst:.2e}, "
        f"max tractable={slow_fast * 1e3:.2f}ms, max brute={slow_brute * 1e3:.1f}ms"
    )
    if bad:
        detail += f"; first mismatch: {bad[0]}"
    return CheckResult("oracle-equivalence", ok, detail, {"max_err": worst})


def check_valiant(seed: int, pairs: int = 100) -> CheckResult:
    rng = np.random.default_rng(seed + 1)
    makers = list(CLASS_SETS.values())
    worst = 0.0
    for k in range(pairs):
        sigs = makers[k % len(makers)](rng)
        if k % 5 == 4:
            sigs = random_any_set(rng)
        g = random_closed_grid(rng, sigs, max_edges=8, max_vertices=6)
        Q = random_orthogonal(rng)
        worst = max(worst, _rel(eval_brute(transform_grid(g, Q)).value, eval_brute(g).value))
    return CheckResult("valiant-invariance", worst <= 1e-6, f"{pairs} pairs, max rel err={worst:.2e}")


def _term_tensors(terms, n):
    return [sig_from_terms([(c, v)], n).values for c, v in terms]


def _terms_match(expected, got, n, tol=1e-7) -> bool:
    want = _term_tensors(expected, n)
    have = _term_tensors(got, n)
    if len(want) != len(have):
        return False
    scale = max(np.max(np.abs(w)) for w in want)
    left = list(range(len(have)))
    for w in want:
        hit = next((j for j in left if np.max(np.abs(have[j] - w)) <= tol * scale), None)
        if hit is None:
            return False
        left.remove(hit)
    return True


def _random_generator_terms(rng, n):
    Q = random_orthogonal(rng)
    if rng.random() < 0.5:
        rank = int(rng.integers(2, 4))
        return [(float(rng.uniform(0.5, 2) * rng.choice([-1, 1])), Q[i]) for i in range(rank)]
    c = rng.uniform(0.5, 2) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    beta = (Q[0] + 1j * Q[1]) / np.sqrt(2)
    terms = [(c, beta), (np.conj(c), beta.conj())]
    if rng.random() < 0.7:
        terms.append((float(rng.uniform(0.5, 2) * rng.choice([-1, 1])), Q[2]))
    return terms


def check_decomposition(seed: int, count: int = 1000) -> CheckResult:
    rng = np.random.default_rng(seed + 2)
    worst_res, worst_orth, mism = 0.0, 0.0, 0
    for k in range(count):
        n = 3 + k % 4
        terms = _random_generator_terms(rng, n)
        F = sig_from_terms(terms, n)
        d = decompose(F)
        res = np.max(np.abs(d.rebuild().values - F.values)) / F.maxabs()
        worst_res = max(worst_res, res)
        if not _terms_match(terms, [(t.coeff, t.vector) for t in d.terms], n):
            mism += 1
        T = np.real(canonicalize(F).T)
        worst_orth = max(worst_orth, float(np.max(np.abs(T @ T.T - np.eye(3)))))
    ok = worst_res <= 1e-7 and worst_orth <= 1e-9 and mism == 0
    detail = f"{count} signatures, max residual={worst_res:.2e}, max |TT^T-I|={worst_orth:.2e}, term mismatches={mism}"
    return CheckResult("decomposition", ok, detail)


def check_boolean(seed: int, grids: int = 100) -> CheckResult:
    f1, f2 = BoolSig([1, 0, 0, 1]), BoolSig([1, 2, -1, -2])
    ok_fix = (
        type_i_witness(f1) == (0.0, 1.0)
        and is_type_ii(f2)
        and type_i_witness(f2) is None
        and classify_bool_set([f1, BoolSig([0, 1, 0])]).tractable
        and classify_bool_set([f1, BoolSig([0, 1, 1, 0])]).status == "Hard"
    )
    rng = np.random.default_rng(seed + 3)
    worst, done = 0.0, 0
    while done < grids:
        S = random_bool_set(rng)
        g = random_closed_grid(rng, S, max_edges=12, max_vertices=8, domain=2)
        v = classify_bool_set(list(g.signatures.values()))
        if not v.tractable:
            return CheckResult("boolean", False, f"generated set not tractable: {v.reason}")
        worst = max(worst, _rel(eval_bool(g, v), eval_bool_brute(g)))
        done += 1
    ok = ok_fix and worst <= 1e-6
    return CheckResult("boolean", ok, f"fixtures={ok_fix}, {grids} grids, max rel err={worst:.2e}")


def check_gadgets(seed: int, grids: int = 50) -> CheckResult:
    E = realize_plane_equality(geneq([1, 1]))
    ok_eq = float(np.max(np.abs(E - np.diag([1.0, 1.0, 0.0])))) <= 1e-9
    axes = [complex(realize_z_arity4(beta_form(lam))[(2, 2, 2, 2)]) for lam in (0, 1, 2)]
    ok_z = all(abs(a - b) <= 1e-9 for a, b in zip(axes, (0, 1, 8)))
    rng = np.random.default_rng(seed + 4)
    makers = list(CLASS_SETS.values())
    worst = 0.0
    for k in range(grids):
        g = random_closed_grid(rng, makers[k % 4](rng), max_edges=8, max_vertices=6)
        vid = g.vertices[int(rng.integers(len(g.vertices)))][0]
        M = OH[int(rng.integers(48))] if k % 2 else rng.normal(size=(3, 3))
        before = eval_brute(g).value
        after = eval_brute(local_holographic(g, vid, M), cap=48).value
        worst = max(worst, _rel(after, before))
    ok = ok_eq and ok_z and worst <= 1e-9
    axis_txt = ",".join(f"{a.real:.6g}" for a in axes)
    return CheckResult("gadgets", ok, f"plane-equality={ok_eq} z4 axis=[{axis_txt}] local-holographic max rel err={worst:.2e}")


def check_lemma_table() -> CheckResult:
    rows = lemma_table()
    wrong = []
    for name, sigs, expected, _ in rows:
        v = classify_set(sigs)
        got = "tractable" if v.tractable else "hard"
        if got != expected:
            wrong.append(f"{name} ({got}, expected {expected})")
    ok = len(rows) >= 20 and not wrong
    detail = f"{len(rows)} instances, {len(wrong)} disagreements"
    if wrong:
        detail += ": " + "; ".join(wrong[:3])
    return CheckResult("lemma-table", ok, detail)


CHECKS = (
    ("example1", lambda seed: check_example1()),
    ("example2", lambda seed: check_example2()),
    ("parity-family", lambda seed: check_parity_family()),
    ("hardness", lambda seed: check_hardness()),
    ("oracle-equivalence", check_oracle),
    ("valiant-invariance", check_valiant),
    ("decomposition", check_decomposition),
    ("boolean", check_boolean),
    ("gadgets", check_gadgets),
    ("lemma-table", lambda seed: check_lemma_table()),
)


def run_checks(seed: int = DEFAULT_SELFTEST_SEED, only: str | None = None) -> list:
    out = []
    for name, fn in CHECKS:
        if only and only not in name:
            continue
        try:
            out.append(fn(seed))
        except Exception as exc:  # a crash counts as a failed check
            out.append(CheckResult(name, False, f"raised {type(exc).__name__}: {exc}"))
    return out
