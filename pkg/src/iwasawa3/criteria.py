"""Case classification and evaluation of the lambda >= 2 criteria.

One authoritative bit decides the split case (the Gross-Koblitz congruence
log3(alpha) = 0 mod 9); every other criterion the theory makes applicable is
recorded alongside and cross-checked against it.  The inert case is decided
by the mod-9 congruence between h- and h+ * (log3 eps0)/sqrt(D).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from . import padic3, quadfield
from .errors import IntegralityError, LogicError, PrecisionError
from .padic3 import (
    DEFAULT_PRECISION,
    Z3Approx,
    Zeta9Local,
    congruent_mod_pi,
    embed_split_eps,
    hensel_sqrt,
    is_cube_mod_pi9,
    iwasawa_log_q3,
    log_eps_ratio,
)
from .quadfield import (
    QuadElem,
    class_group,
    dirichlet_h_imag,
    field_discriminant,
    fundamental_unit,
    ideal_power_generator,
    is_cube,
    prime_above_3_split,
    squarefree_core,
)


class CaseTag(str, Enum):
    SPLIT = "split"
    INERT = "inert"
    INVALID = "invalid"


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    INAPPLICABLE = "inapplicable"


def classify(d: int) -> CaseTag:
    """Split (core = 2 mod 3), inert (core = 1 mod 3), or invalid (3|d or d <= 0)."""
    if d <= 0 or d % 3 == 0:
        return CaseTag.INVALID
    return CaseTag.SPLIT if d % 3 == 2 else CaseTag.INERT


@dataclass
class LambdaReport:
    d_raw: int
    d: int
    case: CaseTag
    h_minus: int = 0
    h_plus: int = 0
    r3: int = 0
    eps0: QuadElem | None = None
    log_eps_ratio_mod9: int | None = None
    alpha: QuadElem | None = None
    log_alpha_mod9: int | None = None
    alpha_is_cube: bool | None = None
    eps0_kummer_unramified: bool | None = None
    lambda_lower_bound: int = 0
    lambda_ge2: Verdict = Verdict.INAPPLICABLE
    criteria_detail: list[tuple[str, str]] = field(default_factory=list)
    consistency_ok: bool = False

    def to_dict(self) -> dict:
        return {
            "d_raw": self.d_raw,
            "d": self.d,
            "case": self.case.value,
            "h_minus": self.h_minus,
            "h_plus": self.h_plus,
            "r3": self.r3,
            "eps0": self.eps0.render() if self.eps0 is not None else None,
            "log_eps_ratio_mod9": self.log_eps_ratio_mod9,
            "alpha": self.alpha.render() if self.alpha is not None else None,
            "log_alpha_mod9": self.log_alpha_mod9,
            "alpha_is_cube": self.alpha_is_cube,
            "eps0_kummer_unramified": self.eps0_kummer_unramified,
            "lambda_lower_bound": self.lambda_lower_bound,
            "lambda_ge2": self.lambda_ge2.value,
            "criteria_detail": list(self.criteria_detail),
            "consistency_ok": self.consistency_ok,
        }


def _tagged(cid: str):
    """Context manager: re-raise precision/integrality errors naming the criterion."""

    class _Ctx:
        def __enter__(self):
            return self

        def __exit__(self, etype, e, tb):
            if etype is not None and issubclass(etype, (PrecisionError, IntegralityError)):
                raise etype(f"[{cid}] {e}") from e
            return False

    return _Ctx()


@dataclass
class _BaseData:
    d0: int
    scale: int
    disc_minus: int
    h_minus: int
    disc_plus: int
    eps0: QuadElem
    h_plus: int
    r3: int
    ratio: Z3Approx
    ratio9: int


def _base_data(d: int, prec: int) -> _BaseData:
    d0, s = squarefree_core(d)
    disc_minus = field_discriminant(-d0)
    h_minus = class_group(disc_minus).order
    m0 = 3 * d0
    disc_plus = field_discriminant(m0)
    eps0 = fundamental_unit(disc_plus)
    if eps0.norm() != 1:
        raise LogicError("norm of eps0 must be +1 since 3 | D")
    narrow = class_group(disc_plus, narrow=True)
    h_plus = narrow.order // 2
    r3 = narrow.rank3
    with _tagged("log_eps_ratio"):
        ratio = log_eps_ratio(eps0, disc_plus, prec)
        ratio9 = ratio.residue(2)
    return _BaseData(d0, s, disc_minus, h_minus, disc_plus, eps0, h_plus, r3, ratio, ratio9)


def _embed_alpha_q3(alpha: QuadElem, d0: int, prec: int) -> Z3Approx:
    """Image of alpha at the completion of Q(sqrt(-d0)) where it is a unit.

    Exactly one of the two square roots of -d0 makes alpha a unit (the other
    completion sits below the prime alpha generates).
    """
    r = hensel_sqrt(Z3Approx(-d0, prec), seed=1)
    den = 2 if alpha.half else 1
    inv_den = Z3Approx(pow(den, -1, 3 ** prec), prec)
    images = [(Z3Approx(alpha.a, prec) + root * alpha.b) * inv_den for root in (r, -r)]
    units = [img for img in images if img.is_unit]
    if len(units) != 1:
        raise LogicError("exactly one square root must make alpha a unit")
    return units[0]


def _log_eps_zeta9(base: _BaseData, prec: int) -> Zeta9Local:
    """log3(eps0) pushed into Z3[zeta9] along the deterministic embedding."""
    scale = 2 if base.disc_plus == 4 * (3 * base.d0) else 1
    yprime = base.ratio * scale  # log3 eps0 = yprime * sqrt(3 d0)
    r = hensel_sqrt(Z3Approx(-base.d0, prec), seed=1)
    return Zeta9Local.sqrt_minus3(prec) * r * yprime.value


def analyze(d: int, prec: int = DEFAULT_PRECISION) -> LambdaReport:
    tag = classify(d)
    if tag is CaseTag.INVALID:
        raise ValueError(f"d={d} is invalid: need d > 0 with 3 not dividing d")
    if tag is CaseTag.SPLIT:
        return analyze_split(d, prec)
    return analyze_inert(d, prec)


def analyze_split(d: int, prec: int = DEFAULT_PRECISION) -> LambdaReport:
    if classify(d) is not CaseTag.SPLIT:
        raise ValueError(f"d={d} is not in the split case")
    base = _base_data(d, prec)
    rep = LambdaReport(d_raw=d, d=base.d0, case=CaseTag.SPLIT)
    rep.h_minus, rep.h_plus, rep.r3 = base.h_minus, base.h_plus, base.r3
    rep.eps0 = base.eps0
    rep.log_eps_ratio_mod9 = base.ratio9
    checks: list[bool] = []
    detail = rep.criteria_detail

    p, _pbar = prime_above_3_split(base.d0)
    rep.alpha = ideal_power_generator(p, base.h_minus)
    with _tagged("gk_log_alpha_mod9"):
        log_alpha = iwasawa_log_q3(_embed_alpha_q3(rep.alpha, base.d0, prec))
        rep.log_alpha_mod9 = log_alpha.residue(2)
    master = rep.log_alpha_mod9 == 0
    rep.lambda_ge2 = Verdict.YES if master else Verdict.NO
    detail.append(("gk_log_alpha_mod9", rep.lambda_ge2.value))

    # mod-9 test on eps0; meaningful only when 3 does not divide h+
    if base.h_plus % 3 != 0:
        v1a = base.ratio9 == 0
        detail.append(("log_eps_mod9", Verdict.YES.value if v1a else Verdict.NO.value))
        checks.append(v1a == master)
    else:
        detail.append(("log_eps_mod9", Verdict.INAPPLICABLE.value))

    # 3 | h+ forces lambda >= 2 on its own
    if base.h_plus % 3 == 0:
        detail.append(("h_plus_divisible_by_3", Verdict.YES.value))
        checks.append(master)
    else:
        detail.append(("h_plus_divisible_by_3", Verdict.INAPPLICABLE.value))

    # global cube test on alpha; applicable only when 3 | h- and 3 does not divide h+
    rep.alpha_is_cube = is_cube(rep.alpha) is not None
    if base.h_plus % 3 != 0 and base.h_minus % 3 == 0:
        detail.append(
            ("alpha_global_cube", Verdict.YES.value if rep.alpha_is_cube else Verdict.NO.value)
        )
        checks.append(rep.alpha_is_cube == master)
    else:
        detail.append(("alpha_global_cube", Verdict.INAPPLICABLE.value))

    # unramifiedness witness: embedded eps0 is a cube mod pi^9 at both completions
    with _tagged("kummer_eps0_unramified"):
        u = embed_split_eps(base.eps0, prec)
        v = embed_split_eps(base.eps0, prec, conjugate=True)
        k1, k2 = is_cube_mod_pi9(u), is_cube_mod_pi9(v)
    if k1 != k2:
        raise LogicError("the two completions disagree on the Kummer cube test")
    rep.eps0_kummer_unramified = k1
    detail.append(("kummer_eps0_unramified", Verdict.YES.value if k1 else Verdict.NO.value))
    checks.append(k1)  # rank(A1) >= 1 witness must exist for every split d

    # main theorem moduli: log3 eps0 = 0 mod pi^10 iff mod pi^15 iff ratio = 0 mod 9
    with _tagged("log_eps_pi10"):
        log_img = _log_eps_zeta9(base, prec)
        v10 = congruent_mod_pi(log_img, 0, 10)
        v15 = congruent_mod_pi(log_img, 0, 15)
    detail.append(("log_eps_pi10", Verdict.YES.value if v10 else Verdict.NO.value))
    detail.append(("log_eps_pi15", Verdict.YES.value if v15 else Verdict.NO.value))
    checks.append(v10 == v15 == (base.ratio9 == 0))

    # under 3 not dividing h+ and lambda >= 2: eps0 = +-1 mod pi^9 iff 3 | h-
    if base.h_plus % 3 != 0 and master:
        with _tagged("eps0_pm1_mod_pi9"):
            w = congruent_mod_pi(u, 1, 9) or congruent_mod_pi(u, -1, 9)
        detail.append(("eps0_pm1_mod_pi9", Verdict.YES.value if w else Verdict.NO.value))
        checks.append(w == (base.h_minus % 3 == 0))
    else:
        detail.append(("eps0_pm1_mod_pi9", Verdict.INAPPLICABLE.value))

    # Gross-Koblitz relation: log3 alpha = h+ * (log3 eps0)/sqrt(D) mod 9
    relation_ok = (rep.log_alpha_mod9 - base.h_plus * base.ratio9) % 9 == 0
    detail.append(("gk_relation", Verdict.YES.value if relation_ok else Verdict.NO.value))
    checks.append(relation_ok)

    # split-case integrality: the ratio is divisible by 3
    checks.append(base.ratio9 % 3 == 0)

    # Corollary bound lambda >= r + 1; coherence: r3 >= 1 forces the master verdict
    rep.lambda_lower_bound = max(1, base.r3 + 1, 2 if master else 1)
    if base.r3 >= 1:
        checks.append(master)

    # independent class number oracle
    checks.append(dirichlet_h_imag(base.disc_minus) == base.h_minus)

    rep.consistency_ok = all(checks)
    return rep


def analyze_inert(d: int, prec: int = DEFAULT_PRECISION) -> LambdaReport:
    if classify(d) is not CaseTag.INERT:
        raise ValueError(f"d={d} is not in the inert case")
    base = _base_data(d, prec)
    rep = LambdaReport(d_raw=d, d=base.d0, case=CaseTag.INERT)
    rep.h_minus, rep.h_plus, rep.r3 = base.h_minus, base.h_plus, base.r3
    rep.eps0 = base.eps0
    rep.log_eps_ratio_mod9 = base.ratio9
    checks: list[bool] = []
    detail = rep.criteria_detail

    if base.h_minus % 3 != 0:
        # a0 = 2 h- is a unit, so lambda = 0
        rep.lambda_ge2 = Verdict.NO
        rep.lambda_lower_bound = 0
        detail.append(("inert_a0_unit", "a0 = 2h- not divisible by 3 (lambda = 0)"))
        detail.append(("inert_mod9_congruence", Verdict.INAPPLICABLE.value))
    else:
        rep.lambda_lower_bound = 1
        crit = (base.h_minus - base.h_plus * base.ratio9) % 9 == 0
        rep.lambda_ge2 = Verdict.YES if crit else Verdict.NO
        detail.append(("inert_mod9_congruence", rep.lambda_ge2.value))
        if crit:
            rep.lambda_lower_bound = 2

    # recompute the ratio at doubled precision; must agree mod 9
    with _tagged("inert_double_precision_recheck"):
        again = log_eps_ratio(base.eps0, base.disc_plus, 2 * prec).residue(2)
    checks.append(again == base.ratio9)
    checks.append(dirichlet_h_imag(base.disc_minus) == base.h_minus)

    rep.consistency_ok = all(checks)
    return rep


def kummer_rank1_witness(d: int, prec: int = DEFAULT_PRECISION) -> bool:
    """Whether embedded eps0 is a cube mod pi^9 at both completions (split d)."""
    if classify(d) is not CaseTag.SPLIT:
        raise ValueError(f"d={d} is not in the split case")
    d0, _ = squarefree_core(d)
    eps0 = fundamental_unit(field_discriminant(3 * d0))
    u = embed_split_eps(eps0, prec)
    v = embed_split_eps(eps0, prec, conjugate=True)
    k1, k2 = is_cube_mod_pi9(u), is_cube_mod_pi9(v)
    if k1 != k2:
        raise LogicError("the two completions disagree on the Kummer cube test")
    return k1


def h_minus_witness_pi9(d: int, prec: int = DEFAULT_PRECISION) -> bool:
    """Whether embedded eps0 = +-1 mod pi^9; equals 3 | h- under the preconditions.

    Preconditions (violations raise ValueError): split d, 3 does not divide h+,
    and the master criterion holds (lambda >= 2).
    """
    if classify(d) is not CaseTag.SPLIT:
        raise ValueError(f"d={d} is not in the split case")
    rep = analyze_split(d, prec)
    if rep.h_plus % 3 == 0:
        raise ValueError("precondition violated: 3 divides h+")
    if rep.lambda_ge2 is not Verdict.YES:
        raise ValueError("precondition violated: master criterion is not 'yes'")
    u = embed_split_eps(rep.eps0, prec)
    w = congruent_mod_pi(u, 1, 9) or congruent_mod_pi(u, -1, 9)
    if w != (rep.h_minus % 3 == 0):
        raise LogicError("pi^9 witness disagrees with 3 | h-")
    return w
