"""Invariant suite behind ``qmac verify``.

Every check expands into independent cases (usually one per composition).
The arithmetic is pure Python and holds the GIL, so with more than one
worker the cases run in a process pool. A case is a module-level function
bound with ``functools.partial`` and must stay picklable. Results are
gathered per check and sorted, so the report does not depend on completion
order or worker count.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Callable, Iterator
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from fractions import Fraction
from functools import partial

from qmac.algebra.poly import Poly
from qmac.algebra.qsym import QSymExpr, expand_vars, f_to_m, is_symmetric
from qmac.algebra.ratexpr import DenFactor, RatExpr
from qmac.combinatorics.fillings import (
    Filling,
    StandardFilling,
    coinv,
    des_set,
    enumerate_packed_nat,
    is_nat,
    maj,
    weight,
)
from qmac.combinatorics.shapes import (
    Cell,
    Composition,
    Diagram,
    SubsetMask,
    beta_perm,
    compositions_of,
    h_stat,
    partitions_of,
    rearrangements,
)
from qmac.combinatorics.standard import (
    coinv_des,
    column_sort,
    destandardize,
    enumerate_st,
    enumerate_st0,
    inverse_descents,
    iota,
    is_st1,
    nu_set,
    omega,
    standardize,
    v_set,
    w_set,
)
from qmac.core.macdonald import (
    binomial_lemma_check,
    destandardized_weight,
    g_direct,
    g_fundamental,
    g_hl_direct,
    g_hl_fundamental,
    g_truncated,
    jack_direct,
    jack_fundamental,
    random_lemma_factors,
)
from qmac.errors import SizeLimitExceededError
from qmac.models import Basis, CheckResult, QmacConfig, VerifyReport

logger = logging.getLogger(__name__)

CaseFn = Callable[[], list[str]]

JACK_MAX_N = 5
TRUNCATION_MAX_N = 5
SYMMETRY_MAX_N = 5


@dataclass(frozen=True)
class VerifyContext:
    max_n: int
    enumeration_limit: int
    lemma_samples: int
    seed: int
    truncation_max_vars: int


@dataclass(frozen=True)
class Check:
    name: str
    description: str
    cases: Callable[[VerifyContext], Iterator[tuple[str, CaseFn]]]


def _label(gamma: Composition) -> str:
    return "(" + ",".join(str(p) for p in gamma) + ")"


def _all_compositions(max_n: int) -> Iterator[Composition]:
    for n in range(1, max_n + 1):
        yield from compositions_of(n)


def _per_composition(
    ctx: VerifyContext, bound: int, run: Callable[[Composition, VerifyContext], list[str]]
) -> Iterator[tuple[str, CaseFn]]:
    for gamma in _all_compositions(min(ctx.max_n, bound)):
        yield _label(gamma), partial(run, gamma, ctx)


# ──────────────────────────────────────────────
# Checks
# ──────────────────────────────────────────────


def _theorem(gamma: Composition, ctx: VerifyContext) -> list[str]:
    limit = ctx.enumeration_limit
    if f_to_m(g_fundamental(gamma, max_n=limit)) == g_direct(gamma, max_n=limit):
        return []
    return [f"{_label(gamma)}: fundamental expansion differs from the direct sum"]


def _hl_chain(gamma: Composition, ctx: VerifyContext) -> list[str]:
    limit = ctx.enumeration_limit
    direct = g_hl_direct(gamma, max_n=limit)
    failures = []
    if g_hl_fundamental(gamma, max_n=limit) != direct:
        failures.append(f"{_label(gamma)}: ST1 expansion differs from the ST0 expansion")
    if g_fundamental(gamma, max_n=limit).specialize({"q": Fraction(0)}) != direct:
        failures.append(f"{_label(gamma)}: ST0 expansion differs from q=0 of the full expansion")
    return failures


def _jack_chain(gamma: Composition, ctx: VerifyContext) -> list[str]:
    limit = ctx.enumeration_limit
    if f_to_m(jack_fundamental(gamma, max_n=limit)) == jack_direct(gamma, max_n=limit):
        return []
    return [f"{_label(gamma)}: Jack fundamental expansion differs from the direct sum"]


def _truncation(gamma: Composition, m: int, ctx: VerifyContext) -> list[str]:
    limit = max(ctx.enumeration_limit, m)
    expected = expand_vars(g_direct(gamma, max_n=limit), m)
    if g_truncated(gamma, m, max_n=limit) == expected:
        return []
    return [f"{_label(gamma)}, m={m}: defining sum differs from the expansion"]


def _truncation_cases(ctx: VerifyContext) -> Iterator[tuple[str, CaseFn]]:
    for gamma in _all_compositions(min(ctx.max_n, TRUNCATION_MAX_N)):
        for m in sorted({len(gamma), len(gamma) + 1}):
            if m <= ctx.truncation_max_vars:
                yield f"{_label(gamma)} m={m}", partial(_truncation, gamma, m, ctx)


def _destandardization(gamma: Composition, ctx: VerifyContext) -> list[str]:
    label = _label(gamma)
    packed = set(enumerate_packed_nat(gamma, max_n=ctx.enumeration_limit))
    seen: set[Filling] = set()
    failures: list[str] = []
    for tau in enumerate_st(gamma, max_n=ctx.enumeration_limit):
        for subset in v_set(tau).supersets():
            filling = destandardize(tau, subset)
            if not (is_nat(filling, gamma) and filling.is_packed):
                failures.append(f"{label}: delta_{subset}({tau}) = {filling} is not packed NAT")
            if filling in seen:
                failures.append(f"{label}: {filling} is reached twice")
            seen.add(filling)
            if standardize(filling) != tau:
                failures.append(f"{label}: {filling} does not standardize back to {tau}")
            if coinv(filling) != coinv(tau) or maj(filling) != maj(tau):
                failures.append(f"{label}: {filling} changes coinv or maj")
            if weight(filling) != destandardized_weight(tau, subset):
                failures.append(f"{label}: weight of {filling} differs from its closed form")
    if seen != packed:
        failures.append(f"{label}: {len(packed - seen)} packed fillings are never reached")
    return failures


def _iota(gamma: Composition, ctx: VerifyContext) -> list[str]:
    label = _label(gamma)
    h = h_stat(gamma)
    failures: list[str] = []
    for tau in enumerate_st0(gamma, max_n=ctx.enumeration_limit):
        w, v = w_set(tau), v_set(tau)
        if nu_set(tau) != v or coinv_des(tau) != 0:
            failures.append(f"{label}: Nu or coinv_des of {tau} is off for an ST0 filling")
        for subset in w.subsets():
            image = iota(tau, subset)
            if not is_st1(image):
                failures.append(f"{label}: iota_{subset}({tau}) = {image} is not in ST1")
            if len(des_set(image)) != len(subset):
                failures.append(f"{label}: {image} has {len(des_set(image))} descents")
            if omega(image) != h - len(w):
                failures.append(f"{label}: omega({image}) = {omega(image)}")
            if nu_set(image) != v | subset:
                failures.append(f"{label}: Nu({image}) = {nu_set(image)}")
            if column_sort(image) != tau:
                failures.append(f"{label}: sorting the columns of {image} does not give {tau}")
    return failures


def _symmetry(lam: Composition, ctx: VerifyContext) -> list[str]:
    total = QSymExpr.zero(sum(lam), Basis.MONOMIAL)
    for gamma in rearrangements(lam):
        total = total + g_direct(gamma, max_n=ctx.enumeration_limit)
    if is_symmetric(total):
        return []
    return [f"{_label(lam)}: rearrangement sum is not symmetric"]


def _symmetry_cases(ctx: VerifyContext) -> Iterator[tuple[str, CaseFn]]:
    for n in range(1, min(ctx.max_n, SYMMETRY_MAX_N) + 1):
        for lam in partitions_of(n):
            yield _label(lam), partial(_symmetry, lam, ctx)


def _lemma(factors: list[tuple[int, int]]) -> list[str]:
    return [] if binomial_lemma_check(factors) else [f"factors {factors}"]


def _lemma_cases(ctx: VerifyContext) -> Iterator[tuple[str, CaseFn]]:
    rng = random.Random(ctx.seed)
    for sample in range(ctx.lemma_samples):
        yield f"sample {sample:03d}", partial(_lemma, random_lemma_factors(rng))


def _schur_shape(gamma: Composition, ctx: VerifyContext) -> list[str]:
    expr = g_fundamental(gamma, max_n=ctx.enumeration_limit)
    for subset, coeff in expr.specialize({"q": 0, "t": 0}):
        if not coeff.is_poly or not coeff.num.is_constant:
            return [f"{_label(gamma)}: F_{subset} keeps a variable at q=t=0"]
        value = coeff.num.constant_term
        if value < 0 or value.denominator != 1:
            return [f"{_label(gamma)}: F_{subset} has coefficient {value} at q=t=0"]
    return []


# ──────────────────────────────────────────────
# Worked examples
# ──────────────────────────────────────────────


def _expect(failures: list[str], what: str, actual: object, expected: object) -> None:
    if actual != expected:
        failures.append(f"{what}: got {actual}, expected {expected}")


def _example_g12() -> list[str]:
    failures: list[str] = []
    one_minus_qt2 = DenFactor.qt(1, 2)
    # (1-t)(1+t+qt) = 1 + qt - t^2 - qt^2
    numerator = Poly({(0, 0, 0): 1, (1, 1, 0): 1, (0, 2, 0): -1, (1, 2, 0): -1})
    expected = QSymExpr(
        3,
        Basis.MONOMIAL,
        {
            SubsetMask.from_members(3, [1]): RatExpr.one(),
            SubsetMask.from_members(3, [1, 2]): RatExpr(numerator, [one_minus_qt2]),
        },
    )
    _expect(failures, "G(1,2)", g_direct((1, 2)), expected)
    one_minus_t = Poly({(0, 0, 0): 1, (0, 1, 0): -1})
    weights = {
        "1;2,2": RatExpr.one(),
        "1;2,3": RatExpr(Poly.monomial(1, 1) * one_minus_t, [one_minus_qt2]),
        "1;3,2": RatExpr(one_minus_t, [one_minus_qt2]),
        "2;3,1": RatExpr(Poly.monomial(0, 1) * one_minus_t, [one_minus_qt2]),
    }
    for text, value in weights.items():
        _expect(failures, f"weight({text})", weight(Filling.from_text(text)), value)
    return failures


def _example_standardization() -> list[str]:
    failures: list[str] = []
    filling = Filling.from_text("1;4,5,3;2,3,1,2")
    tau = StandardFilling.from_text("2;7,8,5;4,6,1,3")
    _expect(failures, "std(T)", standardize(filling), tau)
    _expect(failures, "rw(tau)", tau.reading_word, (3, 5, 1, 8, 6, 2, 7, 4))
    _expect(failures, "ID(tau)", inverse_descents(tau).members, (2, 4, 7))
    _expect(failures, "V(tau)", v_set(tau).members, (2, 4, 6, 7))
    displays = {
        (1, 2, 3, 4, 5, 6, 7): "2;7,8,5;4,6,1,3",
        (1, 2, 4, 5, 6, 7): "2;6,7,4;3,5,1,3",
        (2, 4, 6, 7): "1;4,5,3;2,3,1,2",
    }
    for members, text in displays.items():
        delta = destandardize(tau, SubsetMask.from_members(8, members))
        _expect(failures, f"delta_{set(members)}(tau)", delta, Filling.from_text(text))
    return failures


def _example_beta() -> list[str]:
    failures: list[str] = []
    alpha = (0, 4, 0, 3, 1, 0, 0, 3)
    beta = beta_perm(alpha)
    _expect(failures, "beta(alpha)", beta, (7, 6, 3, 1, 5, 8, 4, 2))
    _expect(failures, "bottom row", beta[-4:], (5, 8, 4, 2))
    _expect(failures, "beta(alpha+)", beta_perm((4, 3, 1, 3)), (3, 4, 2, 1))
    return failures


def _example_st1_statistics() -> list[str]:
    failures: list[str] = []
    tau = StandardFilling.from_text("6;8,2,1;7,5,4,3")
    _expect(failures, "W(tau)", w_set(tau).members, (1, 3, 4))
    image = iota(tau, SubsetMask.from_members(8, [3, 4]))
    _expect(failures, "iota(tau)", image, StandardFilling.from_text("6;8,2,1;7,3,4,5"))
    _expect(failures, "ID(tau')", inverse_descents(image).members, (3, 4, 7))
    _expect(failures, "coinv(Des(tau'))", coinv_des(image), 2)
    _expect(failures, "omega(tau')", omega(image), 2)
    _expect(failures, "Nu(tau')", nu_set(image).members, (2, 3, 4, 5, 6, 7))
    return failures


def _example_arm_leg() -> list[str]:
    failures: list[str] = []
    diagram = Diagram.of((3, 1, 4, 2, 1, 4, 3, 5, 4))
    _expect(failures, "arm(3,6)", diagram.arm(Cell(3, 6)), 4)
    _expect(failures, "leg(3,6)", diagram.leg(Cell(3, 6)), 1)
    return failures


def _example_cases(ctx: VerifyContext) -> Iterator[tuple[str, CaseFn]]:
    yield "G(1,2) and its fillings", _example_g12
    yield "standardization and delta_S", _example_standardization
    yield "beta and the bottom row", _example_beta
    yield "ST1 statistics", _example_st1_statistics
    yield "arm and leg", _example_arm_leg


CHECKS: dict[str, Check] = {
    check.name: check
    for check in (
        Check(
            "theorem",
            "fundamental expansion converts to the direct monomial sum",
            lambda ctx: _per_composition(ctx, ctx.max_n, _theorem),
        ),
        Check(
            "hl-chain",
            "ST1, ST0 and q=0 expansions agree",
            lambda ctx: _per_composition(ctx, ctx.max_n, _hl_chain),
        ),
        Check(
            "jack-chain",
            "Jack fundamental expansion converts to the Jack direct sum",
            lambda ctx: _per_composition(ctx, JACK_MAX_N, _jack_chain),
        ),
        Check("truncation", "defining sum matches the truncated expansion", _truncation_cases),
        Check(
            "destandardization",
            "delta_S is a bijection onto packed fillings with closed-form weights",
            lambda ctx: _per_composition(ctx, ctx.max_n, _destandardization),
        ),
        Check(
            "iota",
            "iota_U lands in ST1 with the expected statistics",
            lambda ctx: _per_composition(ctx, ctx.max_n, _iota),
        ),
        Check("symmetry", "rearrangement sums are symmetric", _symmetry_cases),
        Check("binomial-lemma", "subset expansion of the (1-t) product", _lemma_cases),
        Check(
            "schur-shape",
            "q=t=0 fundamental coefficients are nonnegative integers",
            lambda ctx: _per_composition(ctx, ctx.max_n, _schur_shape),
        ),
        Check("examples", "worked examples reproduce exactly", _example_cases),
    )
}


def _run_case(fn: CaseFn, label: str) -> list[str]:
    try:
        return fn()
    except Exception as exc:  # a crashing case is reported, not raised
        logger.debug("Case %s raised", label, exc_info=True)
        return [f"{label}: {type(exc).__name__}: {exc}"]


def _run_cases(
    cases: list[tuple[str, str, CaseFn]], workers: int
) -> Iterator[tuple[str, list[str]]]:
    """Yield (check name, failures) per case, in completion order."""
    if workers <= 1:
        for name, label, fn in cases:
            yield name, _run_case(fn, label)
        return
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(_run_case, fn, label): name for name, label, fn in cases}
        for future in as_completed(futures):
            yield futures[future], future.result()


def run_verify(
    config: QmacConfig,
    *,
    max_n: int | None = None,
    threads: int = 1,
    only: list[str] | None = None,
    unsafe_n: bool = False,
) -> VerifyReport:
    """Run the selected checks up to ``max_n`` and collect a sorted report.

    ``threads`` is the number of worker processes; with one, cases run in
    this process.

    Raises:
        ValueError: ``only`` names an unknown check.
        SizeLimitExceededError: ``max_n`` exceeds ``verify_max_n`` without ``unsafe_n``.
    """
    names = list(CHECKS) if not only else only
    unknown = [name for name in names if name not in CHECKS]
    if unknown:
        raise ValueError(f"Unknown checks: {', '.join(unknown)}; choose from {', '.join(CHECKS)}")
    bound = max_n if max_n is not None else config.verify_max_n
    if bound > config.verify_max_n and not unsafe_n:
        raise SizeLimitExceededError(bound, config.verify_max_n)
    ctx = VerifyContext(
        max_n=bound,
        enumeration_limit=max(bound, config.enumeration_max_n),
        lemma_samples=config.lemma_samples,
        seed=config.seed,
        truncation_max_vars=config.truncation_max_vars,
    )
    cases = [(name, label, fn) for name in names for label, fn in CHECKS[name].cases(ctx)]
    logger.info("Running %d cases across %d checks on %d workers", len(cases), len(names), threads)

    failures: dict[str, list[str]] = {name: [] for name in names}
    counts: dict[str, int] = dict.fromkeys(names, 0)
    for name, found in _run_cases(cases, threads):
        counts[name] += 1
        failures[name].extend(found)

    checks = [
        CheckResult(
            name=name,
            description=CHECKS[name].description,
            cases=counts[name],
            failures=sorted(failures[name]),
        )
        for name in names
    ]
    for check in checks:
        logger.info("%s: %d cases, %d failures", check.name, check.cases, len(check.failures))
    return VerifyReport(max_n=bound, checks=checks)
