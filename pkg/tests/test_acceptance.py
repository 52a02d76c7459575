"""Acceptance gate: one test per criterion, printed as a pass/fail line.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion lines.
"""

import random
import time
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from iwasawa3.cli import main, render_scan_csv, scan_rows
from iwasawa3.criteria import CaseTag, Verdict, analyze
from iwasawa3.padic3 import (
    RamQuadLocal,
    Z3Approx,
    Zeta9Local,
    congruent_mod_pi,
    cube_residues_mod_pi9,
    embed_split_eps,
    hensel_sqrt,
    identity_vector_checks,
    iwasawa_log_q3,
    iwasawa_log_ramquad,
    unit_normal_form,
)
from iwasawa3.quadfield import (
    QuadElem,
    class_group,
    dirichlet_h_imag,
    field_discriminant,
    fundamental_unit,
    is_fundamental_discriminant,
    squarefree_core,
)


def _report(criterion: str, ok: bool, t0: float, note: str = ""):
    dt = time.time() - t0
    extra = f"  [{note}]" if note else ""
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} ({dt:.1f}s){extra}")
    assert ok, criterion


# ---------------------------------------------------------------------------
# criterion 1: golden examples, exact equality, < 5 seconds


GOLDEN = {
    31: dict(case="inert", h_plus=1, h_minus=3, log_eps_ratio_mod9=6, lambda_ge2="no"),
    211: dict(case="inert", h_plus=1, h_minus=3, log_eps_ratio_mod9=3, lambda_ge2="yes"),
    244: dict(case="inert", h_plus=2, h_minus=6, log_eps_ratio_mod9=0, lambda_ge2="no"),
    35: dict(
        case="split",
        h_plus=2,
        h_minus=2,
        alpha="(1+sqrt(-35))/2",
        log_alpha_mod9=0,
        lambda_ge2="yes",
        alpha_is_cube=False,
    ),
    107: dict(
        case="split",
        h_plus=3,
        h_minus=3,
        alpha="(1+sqrt(-107))/2",
        log_alpha_mod9=0,
        lambda_ge2="yes",
        alpha_is_cube=False,
    ),
}


def test_criterion_1_golden_examples(capsys):
    t0 = time.time()
    ok = True
    for d, expected in GOLDEN.items():
        got = analyze(d).to_dict()
        for key, want in expected.items():
            if got[key] != want:
                print(f"  d={d} {key}: expected {want!r} computed {got[key]!r}")
                ok = False
    code = main(["paper-check"])
    ok &= code == 0
    ok &= time.time() - t0 < 5.0
    with capsys.disabled():
        _report("1 (golden examples d=31,211,244,35,107)", ok, t0)


# ---------------------------------------------------------------------------
# criterion 2: pi-adic identity suite, < 1 second


def test_criterion_2_identity_suite(capsys):
    t0 = time.time()
    results = identity_vector_checks(prec=12)
    ok = all(flag for _, flag in results) and len(results) == 10
    ok &= time.time() - t0 < 1.0
    with capsys.disabled():
        _report("2 (pi-adic identity suite)", ok, t0)


# ---------------------------------------------------------------------------
# criterion 3: oracle equivalence, < 2 minutes


def fundamental_negative_discs(limit: int) -> list[int]:
    sf = np.ones(limit + 1, dtype=bool)
    for p in range(2, int(limit ** 0.5) + 1):
        sf[p * p :: p * p] = False
    out = []
    for n in range(5, limit):
        if n % 4 == 3 and sf[n]:
            out.append(-n)
        elif n % 4 == 0 and (n // 4) % 4 in (1, 2) and sf[n // 4]:
            out.append(-n)
    return out


def unit_xy(eps: QuadElem) -> tuple[int, int]:
    D = field_discriminant(eps.m)
    if eps.half:
        return eps.a, eps.b
    return (2 * eps.a, 2 * eps.b) if D == eps.m else (2 * eps.a, eps.b)


def first_pell_hit(D: int, cap: int):
    """Smallest (y, x) with x^2 - D y^2 = +-4 and 1 <= y <= cap, or None."""
    y = np.arange(1, cap + 1, dtype=np.int64)
    Dy2 = D * y * y
    best = None
    for sgn in (-4, 4):
        t = Dy2 + sgn
        t = np.where(t >= 0, t, 0)
        x = np.sqrt(t.astype(np.float64)).astype(np.int64)
        for adj in (-1, 0, 1):
            xx = x + adj
            hit = (xx >= 0) & (xx * xx == t) & (t > 0)
            idx = np.nonzero(hit)[0]
            if len(idx):
                cand = (int(y[idx[0]]), int(xx[idx[0]]))
                if best is None or cand[0] < best[0]:
                    best = cand
    return best


_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71]


def is_proper_power(eps: QuadElem) -> bool:
    """True iff eps = eta^k for a unit eta > 1 and some prime k."""
    D = field_discriminant(eps.m)
    x, y = unit_xy(eps)
    mpmath.mp.dps = max(60, int(x.bit_length() * 0.302) + 40)
    val = (mpmath.mpf(x) + mpmath.mpf(y) * mpmath.sqrt(D)) / 2
    kmax = int(mpmath.log(val) / mpmath.log((1 + mpmath.sqrt(5)) / 2)) + 1
    for k in _SMALL_PRIMES:
        if k > kmax:
            break
        eta = val ** (mpmath.mpf(1) / k)
        for nrm in (1, -1):
            T = int(mpmath.nint(eta + nrm / eta))
            U = int(mpmath.nint((eta - nrm / eta) / mpmath.sqrt(D)))
            if T <= 0 or U <= 0 or T * T - D * U * U != 4 * nrm:
                continue
            m = eps.m
            if D == m:
                if (T - U) % 2:
                    continue
                cand = QuadElem.make(m, T, U, 1)
            else:
                if T % 2:
                    continue
                cand = QuadElem(m, T // 2, U)
            if cand ** k == eps:
                return True
    return False


def test_criterion_3_oracle_equivalence(capsys):
    t0 = time.time()
    discs = fundamental_negative_discs(100_000)
    assert len(discs) > 30_000
    mismatches = [d for d in discs if class_group(d).order != dirichlet_h_imag(d)]
    units_ok = True
    for D in range(5, 2001):
        if not is_fundamental_discriminant(D):
            continue
        eps = fundamental_unit(D)
        x, y = unit_xy(eps)
        if eps.norm() not in (1, -1) or x <= 0 or y <= 0:
            units_ok = False
            continue
        hit = first_pell_hit(D, min(y, 100_000))
        units_ok &= (hit == (y, x)) if y <= 100_000 else (hit is None)
        units_ok &= not is_proper_power(eps)
    ok = not mismatches and units_ok
    elapsed_ok = time.time() - t0 < 120.0
    with capsys.disabled():
        _report(
            "3 (class-number oracle over 30390 discs; unit minimality D<=2000)",
            ok and elapsed_ok,
            t0,
            note=f"{len(discs)} discriminants",
        )


# ---------------------------------------------------------------------------
# criterion 4: cross-criterion consistency scan, zero violations, < 10 minutes


def test_criterion_4_consistency_scan(capsys):
    t0 = time.time()
    rows = scan_rows(1, 2000, "both", 24, jobs=1)
    t_serial = time.time() - t0
    bad = [r["d"] for r in rows if r["error"] or r["consistency_ok"] is not True]
    # consistency_ok bundles: the Gross-Koblitz relation, the eps0 criterion when
    # 3 does not divide h+, the Kummer witness, pi^10 <-> pi^15 <-> mod 9, the
    # rank bound coherence, the doubled-precision inert recheck, and the
    # Dirichlet class-number oracle.
    split_rows = [r for r in rows if r["case"] == "split"]
    kummer_missing = [r["d"] for r in rows if r["case"] == "split" and r["error"]]
    t1 = time.time()
    rows_par = scan_rows(1, 2000, "both", 24, jobs=4)
    t_par = time.time() - t1
    deterministic = render_scan_csv(rows) == render_scan_csv(rows_par)
    ok = not bad and not kummer_missing and deterministic and len(split_rows) > 600
    ok &= t_serial < 600.0
    import os

    cpus = os.cpu_count() or 1
    note = f"serial {t_serial:.1f}s, jobs=4 {t_par:.1f}s, cpus={cpus}"
    if cpus >= 4:
        ok &= t_par < t_serial * 1.2  # parallel must not be slower
    with capsys.disabled():
        _report("4 (consistency scan d<=2000, zero violations)", ok, t0, note=note)


# ---------------------------------------------------------------------------
# criterion 5: property suites


def test_criterion_5a_log_functional_equations(capsys):
    t0 = time.time()
    rng = random.Random(99)
    K = 16
    ok = True
    for _ in range(100):
        u = rng.randrange(1, 3 ** K)
        v = rng.randrange(1, 3 ** K)
        if u % 3 == 0 or v % 3 == 0:
            continue
        lu, lv = iwasawa_log_q3(Z3Approx(u, K)), iwasawa_log_q3(Z3Approx(v, K))
        luv = iwasawa_log_q3(Z3Approx(u * v, K))
        p = min(lu.prec, lv.prec, luv.prec)
        ok &= (lu + lv).congruent_to(luv, p)
    for _ in range(100):
        m = rng.choice([93, 6, 105, 633])
        pair = []
        while len(pair) < 2:
            x, y = rng.randrange(3 ** K), rng.randrange(3 ** K)
            if x % 3 == 0:
                continue
            w = RamQuadLocal(m, Z3Approx(x, K), Z3Approx(y, K))
            n = w.norm()
            if n.is_unit:
                pair.append(w * w * n.unit_inverse())
        u, v = pair
        lu, lv, luv = (
            iwasawa_log_ramquad(u),
            iwasawa_log_ramquad(v),
            iwasawa_log_ramquad(u * v),
        )
        p = min(lu.y.prec, lv.y.prec, luv.y.prec)
        ok &= (lu.y + lv.y).congruent_to(luv.y, p)
    with capsys.disabled():
        _report("5a (log functional equation, 100 pairs per type)", ok, t0)


def test_criterion_5b_hensel_all_squares(capsys):
    t0 = time.time()
    ok = True
    for K in range(1, 13):
        mod = 3 ** K
        seen = set()
        for u in range(1, mod, 1 if K < 3 else 2):
            if u % 3 == 0:
                continue
            a = u * u % mod
            if a in seen:
                continue
            seen.add(a)
            r = hensel_sqrt(Z3Approx(a, K), 1)
            ok &= (r.value * r.value - a) % mod == 0 and r.value % 3 == 1
        if not ok:
            break
    with capsys.disabled():
        _report("5b (Hensel roots of all unit squares, K<=12)", ok, t0)


def test_criterion_5c_group_laws(capsys):
    t0 = time.time()
    ok = True
    for disc in (-31, -71, -3299, -4027, 316, 732, 1304):
        G = class_group(disc, narrow=disc > 0)
        h = G.order
        T = G.table
        e = G.identity
        ok &= all(T[e][j] == j for j in range(h))
        ok &= all(T[i][j] == T[j][i] for i in range(h) for j in range(h))
        ok &= all(any(T[i][j] == e for j in range(h)) for i in range(h))
        ok &= all(G.power(i, h) == e for i in range(h))
        prod = 1
        for dd in G.elementary_divisors:
            prod *= dd
        ok &= prod == h or (h == 1 and not G.elementary_divisors)
        rng = random.Random(disc)
        for _ in range(25):
            i, j, k = (rng.randrange(h) for _ in range(3))
            ok &= T[T[i][j]][k] == T[i][T[j][k]]
    with capsys.disabled():
        _report("5c (class-group table laws)", ok, t0)


def test_criterion_5d_cube_congruence_split_range(capsys):
    t0 = time.time()
    ok = True
    count = 0
    for d in range(2, 501):
        if d % 3 != 2 or squarefree_core(d)[0] != d:
            continue
        count += 1
        eps = fundamental_unit(field_discriminant(3 * d))
        u = embed_split_eps(eps)
        sign, a, _tail = unit_normal_form(u)
        target = Zeta9Local.zeta3(u.prec) ** a * sign
        ok &= congruent_mod_pi(u ** 3, target, 11)
    ok &= count == 116  # squarefree d = 2 mod 3 up to 500
    with capsys.disabled():
        _report("5d (cube congruence eps0^3 = +-zeta3^a mod pi^11, split d<=500)", ok, t0)


def test_criterion_5e_scale_invariance(capsys):
    t0 = time.time()
    ok = True
    pairs = [(61, 244), (2, 8), (2, 50), (35, 140), (31, 124), (5, 20), (7, 28)]
    for d, scaled in pairs:
        a, b = analyze(d).to_dict(), analyze(scaled).to_dict()
        a.pop("d_raw")
        b.pop("d_raw")
        ok &= a == b
    with capsys.disabled():
        _report("5e (scale invariance d vs d*s^2)", ok, t0)


def test_criterion_5f_cube_map_count(capsys):
    # The spec text predicts 1458 distinct cubes (a 9-to-1 map); the brute-force
    # build step it defers to gives 18: cubing kills the whole 1 + pi^3 layer
    # (the cube-shape identity), so the map is 3^6-to-1.  The derived constant
    # is asserted; see the decisions ledger.
    t0 = time.time()
    S = cube_residues_mod_pi9()
    ok = len(S) == 18
    # fiber check: every unit residue cubes into S; fibers have size 13122/18
    from collections import Counter
    from iwasawa3.padic3 import _PI_COMPLEMENT, _np_polymul_phi9, _poly_mul_phi9

    workprec = 11
    mod = 3 ** workprec
    pis = np.empty((9, 6), dtype=np.int64)
    for j in range(9):
        pis[j] = Zeta9Local.pi_power(j, workprec).coeffs
    grids = np.meshgrid(*([np.arange(1, 3)] + [np.arange(3)] * 8), indexing="ij")
    digits = np.stack([g.ravel() for g in grids], axis=1)
    Z = digits.astype(np.int64) @ pis % mod
    cubes = _np_polymul_phi9(_np_polymul_phi9(Z, Z, mod), Z, mod)
    numat = np.empty((6, 6), dtype=np.int64)
    for j in range(6):
        mono = [0] * 6
        mono[j] = 1
        numat[j] = _poly_mul_phi9(list(_PI_COMPLEMENT), mono)
    keys = np.zeros(len(cubes), dtype=np.int64)
    W = cubes.copy()
    m = mod
    for r in range(9):
        dig = W.sum(axis=1) % 3
        keys += dig * (3 ** r)
        W[:, 0] -= dig
        W = W @ numat % m
        W //= 3
        m //= 3
        W %= m
    fibers = Counter(keys.tolist())
    ok &= set(fibers.values()) == {13122 // 18}
    ok &= set(fibers) == set(S)
    # independent derivation: the image equals the cube-shape family
    P = 8
    family = set()
    for sgn in (1, -1):
        for e in range(3):
            for a in range(3):
                for b in range(3):
                    el = Zeta9Local.zeta3(P) ** e * sgn
                    tail = (
                        Zeta9Local.from_int(1, P)
                        + Zeta9Local.pi_power(3, P) * a
                        + Zeta9Local.pi_power(6, P) * b
                        - Zeta9Local.pi_power(7, P) * a
                        - Zeta9Local.pi_power(8, P) * (a * a + b)
                    )
                    el = el * tail
                    family.add(sum(c * 3 ** i for i, c in enumerate(el.pi_digits(9))))
    ok &= family == set(S)
    with capsys.disabled():
        _report(
            "5f (cube set mod pi^9: brute-force count 18, fibers 729)",
            ok,
            t0,
            note="spec text said 1458; see ledger",
        )
