"""Reproducible identity suite behind ``boxsubdiv verify-paper``.

Each ``criterion_N`` function returns a :class:`CriterionResult` made of
named exact checks.  Everything is rational arithmetic; nothing is
compared with a tolerance.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .boxspline import (
    MODIFIED,
    STANDARD,
    assemble_expansion,
    box_symbol,
    direction_matrix,
    expand_4dir_to_3dir,
    generator_q,
    generator_set_Ik,
    generator_set_q,
    ik_indices,
    box_label,
    max_sumrule_order,
    minimality_witness,
    smoothness_kappa,
    unimodular_submatrices,
)
from .catalog import get_scheme, gp_combination_symbol, list_schemes
from .convergence import (
    DataGrid,
    MatrixLaurent,
    certify_convergence,
    check_difference_identity,
    operator_norm_inf,
    refinement_symbol,
    subdivide,
)
from .decompose import (
    PreconditionError,
    decompose,
    from_combination,
    normalize_affine,
    verify_decomposition,
    weight_sum,
)
from .laurent import LaurentPoly, divide
from .mask import Mask, interpolatory_coset
from .sumrules import check_Zk, sumrule_order, zero_set


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


# ---------------------------------------------------------------------------
# shared symbols

H = Fraction(1, 2)
Z1 = LaurentPoly.variable(0, 2)
Z2 = LaurentPoly.variable(1, 2)
ONE = LaurentPoly.constant(1, 2)


def B(a: int, b: int, c: int, d: int = 0) -> LaurentPoly:
    return box_symbol(a, b, c, d)


def Bt(a: int, b: int, c: int) -> LaurentPoly:
    return box_symbol(a, b, c, variant=MODIFIED)


# ---------------------------------------------------------------------------


def criterion_1() -> CriterionResult:
    res = CriterionResult(1, "unimodular submatrices and generator counts")
    subs2 = unimodular_submatrices(direction_matrix(2))
    res.add("d=2: three submatrices, all unimodular", len(subs2) == 3 and all(s.unimodular for s in subs2))
    res.add("d=2: three q generators", len(generator_set_q(2)) == 3)
    subs3 = unimodular_submatrices(direction_matrix(3))
    odd = [s for s in subs3 if s.parity == "odd"]
    even = {s.indices: s.det for s in subs3 if s.parity == "even"}
    expected_even = {(1, 2, 4): 0, (1, 3, 5): 0, (1, 6, 7): 0, (2, 3, 6): 0, (2, 5, 7): 0, (3, 4, 7): 0, (4, 5, 6): -2}
    res.add("d=3: 35 selections", len(subs3) == 35, str(len(subs3)))
    res.add("d=3: 28 odd, all with det +-1", len(odd) == 28 and all(s.unimodular for s in odd), str(len(odd)))
    res.add("d=3: the seven even selections and their determinants", even == expected_even, str(even))
    X3 = direction_matrix(3).columns
    res.add(
        "d=3: column order e1,e2,e3,e1+e2,e1+e3,e2+e3,1",
        X3 == ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)),
    )
    for variant in (STANDARD, MODIFIED):
        n = len(generator_set_q(3, variant))
        res.add(f"d=3 restricted ({variant}): 16 generators", n == 16, str(n))
    return res


def criterion_2() -> CriterionResult:
    res = CriterionResult(2, "ideal generator identities")
    f1, f2 = (ONE + Z1) * H, (ONE + Z2) * H
    s = (Z1 + Z2) * H
    res.add("z1^2-1 = -4 f1 f2 + 4 f1 (z1+z2)/2", Z1 * Z1 - 1 == f1 * f2 * -4 + f1 * s * 4)
    res.add("z2^2-1 = -4 f1 f2 + 4 f2 (z1+z2)/2", Z2 * Z2 - 1 == f1 * f2 * -4 + f2 * s * 4)
    res.add("(z1+1)(z2+1) = 4 f1 f2", (Z1 + 1) * (Z2 + 1) == f1 * f2 * 4)
    res.add("f1 f2 = (z1+1)(z2+1)/4", f1 * f2 == (Z1 + 1) * (Z2 + 1) * Fraction(1, 4))
    res.add(
        "f1 (z1+z2)/2 = (z1^2-1)/4 + (z1+1)(z2+1)/4",
        f1 * s == (Z1 * Z1 - 1) * Fraction(1, 4) + (Z1 + 1) * (Z2 + 1) * Fraction(1, 4),
    )
    res.add(
        "f2 (z1+z2)/2 = (z2^2-1)/4 + (z1+1)(z2+1)/4",
        f2 * s == (Z2 * Z2 - 1) * Fraction(1, 4) + (Z1 + 1) * (Z2 + 1) * Fraction(1, 4),
    )
    # the same cross-containments for the hyperbola 1 + z1 z2
    q = Fraction(1, 4)
    res.add("z1^2-1 = 4 z1 B110 - 4 B101", Z1 * Z1 - 1 == Z1 * B(1, 1, 0) * 4 - B(1, 0, 1) * 4)
    res.add("z2^2-1 = 4 z2 B110 - 4 B011", Z2 * Z2 - 1 == Z2 * B(1, 1, 0) * 4 - B(0, 1, 1) * 4)
    res.add("(z1+1)(z2+1) = 4 B110", (Z1 + 1) * (Z2 + 1) == B(1, 1, 0) * 4)
    res.add(
        "B101 = z1 (1+z1)(1+z2)/4 - (z1^2-1)/4",
        B(1, 0, 1) == Z1 * (Z1 + 1) * (Z2 + 1) * q - (Z1 * Z1 - 1) * q,
    )
    res.add(
        "B011 = z2 (1+z1)(1+z2)/4 - (z2^2-1)/4",
        B(0, 1, 1) == Z2 * (Z1 + 1) * (Z2 + 1) * q - (Z2 * Z2 - 1) * q,
    )
    res.add(
        "(1-z2) B100/2 + (1-z1) B010/2 + B001 = 1",
        (ONE - Z2) * B(1, 0, 0) * H + (ONE - Z1) * B(0, 1, 0) * H + B(0, 0, 1) == 1,
    )
    res.add("B~100 + B~010 - B~001 = 1", Bt(1, 0, 0) + Bt(0, 1, 0) - Bt(0, 0, 1) == 1)
    for t in ((0, 0, 0), (1, 2, 3), (2, 0, 1)):
        a, b, c = t
        lhs = (ONE - Z2) * B(a + 1, b, c) * H + (ONE - Z1) * B(a, b + 1, c) * H + B(a, b, c + 1)
        res.add(f"principal ideal reduction at {t}", lhs == B(a, b, c))
    return res


def criterion_3(max_dim: int = 4) -> CriterionResult:
    res = CriterionResult(3, "q vanishes on the zero set iff det is odd")
    for d in range(1, max_dim + 1):
        pts = zero_set(d)
        for variant, sections in ((STANDARD, "all"), (MODIFIED, "first_two")):
            bad = []
            subs = unimodular_submatrices(direction_matrix(d, sections))
            for s in subs:
                q = generator_q(s.columns, variant)
                vanishes = all(q.evaluate(e) == 0 for e in pts)
                if vanishes != (s.det % 2 == 1):
                    bad.append(s.indices)
            res.add(f"d={d} {variant}: {len(subs)} selections", not bad, f"mismatches {bad[:5]}" if bad else "")
    return res


def _box_quadruples(total: int):
    for a in range(total + 1):
        for b in range(total + 1 - a):
            for c in range(total + 1 - a - b):
                for d in range(total + 1 - a - b - c):
                    if a + b + c + d:
                        yield a, b, c, d


def criterion_4(total: int = 8) -> CriterionResult:
    res = CriterionResult(4, "closed-form sum-rule orders of box splines")
    bad = []
    count = 0
    for a, b, c, d in _box_quadruples(total):
        count += 1
        sym = box_symbol(a, b, c, d, normalized=False)
        k = sumrule_order(sym)
        if k != max_sumrule_order(a, b, c, d):
            bad.append(((a, b, c, d), k))
    res.add(f"{count} quadruples with total <= {total}", not bad, f"mismatches {bad[:5]}" if bad else "")
    return res


def criterion_5() -> CriterionResult:
    res = CriterionResult(5, "four-directional examples")
    for q, k, kappa in (((1, 1, 1, 1), 2, 3), ((2, 2, 1, 1), 4, 4), ((4, 4, 1, 1), 6, 6)):
        res.add(f"{q}: k = {k}", max_sumrule_order(*q) == k and sumrule_order(box_symbol(*q, normalized=False)) == k)
        res.add(f"{q}: kappa = {kappa}", smoothness_kappa(*q) == kappa)
        res.add(f"{q}: general expansion", assemble_expansion(expand_4dir_to_3dir(*q)) == box_symbol(*q))
    inv = LaurentPoly.monomial((0, -1))
    res.add("4 B1111 = (4/z2)(2 B221 - B112)", B(1, 1, 1, 1) * 4 == inv * (B(2, 2, 1) * 2 - B(1, 1, 2)) * 4)
    res.add("4 B1111 = (1+z1/z2)/2 * 4 B111", B(1, 1, 1, 1) * 4 == (ONE + Z1 * inv) * H * B(1, 1, 1) * 4)
    res.add("4 B2211 = (4/z2)(2 B331 - B222)", B(2, 2, 1, 1) * 4 == inv * (B(3, 3, 1) * 2 - B(2, 2, 2)) * 4)
    res.add("4 B4411 = (4/z2)(2 B551 - B442)", B(4, 4, 1, 1) * 4 == inv * (B(5, 5, 1) * 2 - B(4, 4, 2)) * 4)
    return res


def interp4pt2d_combination():
    """Affine I_4 combination of the interpolatory four-point mask."""
    return [
        (box_label(4, 4, 0), B(4, 4, 0), LaurentPoly.constant(-4, 2)),
        (box_label(2, 2, 2), B(2, 2, 2), (Z1 * Z1 + Z2 * Z2) * -H),
        (box_label(3, 3, 1), B(3, 3, 1), (ONE + Z1 + Z2) * 2),
    ]


def butterfly_combinations():
    """The two I_4 combinations of the butterfly mask (cofactors include the weight)."""
    z12 = Z1 * Z2
    first = [
        (box_label(3, 3, 1), B(3, 3, 1), (z12 * 6 + 7) * 2),
        (box_label(3, 1, 3), B(3, 1, 3), Z2 * -2),
        (box_label(1, 3, 3), B(1, 3, 3), Z1 * -2),
        (box_label(2, 2, 2), B(2, 2, 2), (ONE + Z1 + Z2) * -7),
    ]
    second = [
        (box_label(2, 2, 2), B(2, 2, 2), z12 * 7),
        (box_label(1, 3, 3), B(1, 3, 3), Z1 * -2),
        (box_label(3, 1, 3), B(3, 1, 3), Z2 * -2),
        (box_label(3, 3, 1), B(3, 3, 1), z12 * -2),
    ]
    return first, second


def criterion_6() -> CriterionResult:
    res = CriterionResult(6, "interpolatory four-point mask")
    mask = get_scheme("interp4pt2d").mask
    res.add("sum-rule order is 4", sumrule_order(mask) == 4)
    res.add("Z_4 holds, Z_5 fails", check_Zk(mask, 4).holds and not check_Zk(mask, 5).holds)
    res.add("interpolatory", mask.is_interpolatory())
    dec = normalize_affine(from_combination(mask, 4, interp4pt2d_combination()))
    res.add("I_4 combination verifies exactly", verify_decomposition(mask, dec).valid)
    lam = dec.weights()
    res.add("weights (-4, -1, 6)", lam == [-4, -1, 6], str(lam))
    res.add("sigma(1) = 1", all(t.sigma.evaluate((1, 1)) == 1 for t in dec.normalized))
    res.add(
        "sigmas 1, (z1^2+z2^2)/2, (1+z1+z2)/3",
        [t.sigma for t in dec.normalized] == [ONE, (Z1 * Z1 + Z2 * Z2) * H, (ONE + Z1 + Z2) * Fraction(1, 3)],
    )
    res.add("weights sum to 1", weight_sum(dec) == 1)
    unscaled = B(4, 4, 0) * -16 + (Z1 * Z1 + Z2 * Z2) * B(2, 2, 2) * -2 + (ONE + Z1 + Z2) * B(3, 3, 1) * 8
    res.add("unnormalized form agrees", unscaled == mask.symbol)
    return res


def criterion_7() -> CriterionResult:
    res = CriterionResult(7, "butterfly mask")
    mask = get_scheme("butterfly").mask
    res.add("sum-rule order is 4", sumrule_order(mask) == 4)
    res.add("interpolatory", mask.is_interpolatory())
    first, second = butterfly_combinations()
    d1 = normalize_affine(from_combination(mask, 4, first))
    d2 = normalize_affine(from_combination(mask, 4, second))
    res.add("first combination verifies", verify_decomposition(mask, d1).valid)
    res.add("second combination verifies", verify_decomposition(mask, d2).valid)
    res.add("second combination weights (7, -2, -2, -2)", d2.weights() == [7, -2, -2, -2], str(d2.weights()))
    res.add("first combination weights (26, -2, -2, -21)", d1.weights() == [26, -2, -2, -21], str(d1.weights()))
    res.add("weights sum to 1", weight_sum(d1) == 1 and weight_sum(d2) == 1)
    (quot,), rem = divide(mask.symbol, [B(1, 1, 1)])
    res.add("divisible by B111", rem.is_zero())
    res.add("quotient times B111 reproduces the mask", quot * B(1, 1, 1) == mask.symbol)
    zk = check_Zk(quot, 1)
    res.add(
        "quotient fails Z_1",
        not zk.holds,
        f"witness {zk.witness}" if zk.witness else f"Z_1 holds; sum-rule order of quotient is {sumrule_order(quot)}",
    )
    cert = certify_convergence(quot, 4)
    res.add("quotient is not certified convergent for r <= 4", not cert.certified, f"norms {[str(n) for n in cert.norms]}")
    return res


def reference_difference_symbol() -> MatrixLaurent:
    """The printed difference symbol for the gp combination (row-vector convention)."""
    q = Fraction(1, 4)
    b11 = (Z1 * Z2 ** 3 - Z2 ** 3 + Z1 * Z2 ** 2 + Z2 ** 2 + Z2 * 4 + 2) * q
    b12 = LaurentPoly.zero(2)
    b21 = (Z1 * Z2 - Z1 - Z2 + 1) * q
    b22 = (Z1 ** 2 * Z2 ** 2 + Z1 * Z2 * 2 + Z1 * 2 + 3) * q
    return MatrixLaurent.from_rows([[b11, b12], [b21, b22]])


def criterion_8(r_max: int = 8) -> CriterionResult:
    res = CriterionResult(8, "convergence of the gp combination")
    a = gp_combination_symbol()
    c = (ONE + Z1) * H * H + ((ONE + Z1 * Z2) * H) ** 2 * H
    res.add("a = 4 (1+z2)/2 c", a == (ONE + Z2) * H * c * 4)
    res.add("no I_1 generator divides a", all(not divide(a, [g])[1].is_zero() for g in generator_set_Ik(1).symbols))
    cert = certify_convergence(a, r_max)
    res.add(f"certified at some r <= {r_max}", cert.certified, f"r={cert.r}, norm={cert.norm}")
    res.add("difference identity of our symbol", check_difference_identity(a, cert.difference_symbol))
    Bp = reference_difference_symbol()
    res.add("printed difference symbol satisfies the identity", check_difference_identity(a, Bp))
    n5 = operator_norm_inf(Bp, 5)
    res.add("printed difference symbol: norm at r=5 below 1", n5 < 1, str(n5))
    for name, sym in (("4 B110", B(1, 1, 0) * 4), ("4 B012", B(0, 1, 2) * 4)):
        cb = certify_convergence(sym, 5)
        res.add(f"{name} not certified for r <= 5", not cb.certified, f"best norm {cb.best_norm}")
    dec = normalize_affine(decompose(a, 1))
    res.add("solver decomposition over I_1 verifies", verify_decomposition(a, dec).valid)
    res.add("solver weights sum to 1", weight_sum(dec) == 1)
    hand = from_combination(
        a, 1,
        [(box_label(1, 1, 0), B(1, 1, 0), LaurentPoly.constant(H, 2)),
         (box_label(0, 1, 1), B(0, 1, 1), (ONE + Z1 * Z2) * H * H)],
    )
    res.add("B012 = B011 (1+z1 z2)/2 gives a valid combination", verify_decomposition(a, hand).valid)
    return res


# ---------------------------------------------------------------------------
# random ideal members and non-members


def _random_cofactor(rng: random.Random, max_degree: int) -> LaurentPoly:
    terms = {}
    for _ in range(rng.randint(1, 4)):
        i = rng.randint(0, max_degree)
        j = rng.randint(0, max_degree - i)
        terms[(i, j)] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return LaurentPoly(terms, 2)


def random_member(rng: random.Random, k: int, max_extent: int = 8, max_degree: int = 3) -> LaurentPoly:
    """Random rational combination of ``I_k`` with ``a(1) = 4`` and support inside ``[0, max_extent]^2``."""
    gens = generator_set_Ik(k).symbols
    while True:
        chosen = rng.sample(gens, rng.randint(1, min(3, len(gens))))
        a = LaurentPoly.zero(2)
        for g in chosen:
            a = a + _random_cofactor(rng, max_degree) * g * 4
        v = a.evaluate((1, 1))
        if v == 0:
            continue
        a = a * (Fraction(4) / v)
        if max(a.max_exponent()) <= max_extent:
            return a


def random_nonmember(rng: random.Random, k: int, max_extent: int = 8) -> LaurentPoly:
    """Symbol with ``a(1) = 4`` that fails ``Z_k``.

    Even seeds perturb an ``I_k`` member by ``c (z^u - z^v)``; odd ones
    draw from ``I_{k-1}`` when ``k > 1``.  Candidates that happen to
    satisfy ``Z_k`` are redrawn.
    """
    while True:
        if k > 1 and rng.random() < 0.5:
            a = random_member(rng, k - 1, max_extent)
        else:
            a = random_member(rng, k, max_extent)
            u = (rng.randint(0, max_extent), rng.randint(0, max_extent))
            v = (rng.randint(0, max_extent), rng.randint(0, max_extent))
            if u == v:
                continue
            a = a + (LaurentPoly.monomial(u) - LaurentPoly.monomial(v)) * Fraction(rng.randint(1, 5), 8)
        if not check_Zk(a, k).holds:
            return a


def criterion_9(n: int = 30, seed: int = 20240611) -> CriterionResult:
    res = CriterionResult(9, "decomposition solver on random members and non-members")
    rng = random.Random(seed)
    ok_members = 0
    failures = []
    for t in range(n):
        k = 1 + t % 4
        a = random_member(rng, k)
        try:
            dec = normalize_affine(decompose(a, k))
        except Exception as exc:  # noqa: BLE001 - reported below
            failures.append(f"member {t} (k={k}): {type(exc).__name__}")
            continue
        if verify_decomposition(a, dec).valid and weight_sum(dec) == 1:
            ok_members += 1
        else:
            failures.append(f"member {t} (k={k}): residual")
    res.add(f"{n} random members decomposed and verified", ok_members == n, "; ".join(failures[:5]))
    rejected = 0
    for t in range(n):
        k = 1 + t % 4
        a = random_nonmember(rng, k)
        try:
            decompose(a, k)
        except PreconditionError:
            rejected += 1
    res.add(f"{n} random non-members rejected by Z_k", rejected == n, f"{rejected}/{n}")
    return res


def criterion_10(max_order: int = 4) -> CriterionResult:
    res = CriterionResult(10, "separating derivative functionals for I_k")
    for variant in (STANDARD, MODIFIED):
        for k in range(1, max_order + 1):
            idx = ik_indices(k)
            syms = [box_symbol(*t, variant=variant) for t in idx]
            bad = []
            for i, t in enumerate(idx):
                w = minimality_witness(t, variant)
                vals = [w(s) for s in syms]
                if vals[i] == 0 or any(v != 0 for j, v in enumerate(vals) if j != i):
                    bad.append(t)
            res.add(f"I_{k} ({variant}): {len(idx)} members separated", not bad, str(bad) if bad else "")
    return res


def catalog_names() -> list[str]:
    return [name for name, _ in list_schemes()]


def criterion_11(r_max: int = 4) -> CriterionResult:
    res = CriterionResult(11, "refinement recursion against iterated symbols")
    for name in catalog_names():
        mask = get_scheme(name).mask
        d0 = DataGrid.delta(mask.dim)
        grid = d0
        agree = True
        for r in range(1, r_max + 1):
            grid = subdivide(mask, grid, 1)
            if grid.to_poly() != refinement_symbol(mask, r):
                agree = False
                break
        res.add(f"{name}: recursion equals symbol product for r <= {r_max}", agree)
        coset = interpolatory_coset(mask)
        if coset is not None:
            res.add(f"{name}: coarse data preserved", preserves_coarse_data(mask, r_max))
    return res


def preserves_coarse_data(mask: Mask, steps: int, seed: int = 7) -> bool:
    """Refine random data and compare the interpolated sublattice with the input."""
    coset = interpolatory_coset(mask)
    if coset is None:
        return False
    e, beta = coset
    rng = random.Random(seed)
    d = mask.dim
    values = {}
    for _ in range(12):
        idx = tuple(rng.randint(-3, 3) for _ in range(d))
        values[idx] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    grid = DataGrid(d, 0, values)
    for _ in range(steps):
        fine = subdivide(mask, grid, 1)
        for alpha, v in grid.values.items():
            node = tuple(ei + 2 * (ai + bi) for ei, ai, bi in zip(e, alpha, beta))
            if fine.values.get(node, 0) != v:
                return False
        grid = fine
    return True


CRITERIA: tuple[Callable[[], CriterionResult], ...] = (
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11,
)


def run_all(only: Optional[list[int]] = None) -> list[CriterionResult]:
    out = []
    for i, fn in enumerate(CRITERIA, start=1):
        if only and i not in only:
            continue
        t0 = time.perf_counter()
        r = fn()
        r.seconds = time.perf_counter() - t0
        out.append(r)
    return out
