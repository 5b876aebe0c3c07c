"""Numeric invariants of plane-curve germs and foliation germs at the origin.

A curve germ is C = {f = 0}; a foliation germ is given by a 1-form
w = P dx + Q dy with P, Q coprime at the origin.  Everything here reduces to
colengths of explicit ideals in the local ring (the engine in
:mod:`folinv.stdbasis`), plus closed-form counterparts computed independently
so that each route can check the other:

* k-th Milnor number of a curve        mu^k(f)   = dim O/(m^k * j(f))
* k-th Tjurina number of a curve       tau^k(f)  = dim O/(m^k * j(f) + (f))
* k-th Milnor number of a foliation    mu^k(F)   = dim O/((P,Q) * m^k)
* k-th Tjurina number along a curve    tau^k(F,C)= dim O/((P,Q) * m^k + (f))
* intersection number                  i(f,g)    = dim O/(f,g)
* GSV index along an invariant curve, via explicit 1-form decompositions
* k-th polar intersection number, via sampled generic directions

All arithmetic is exact; every dimension is an exact natural number or the
value INFINITE.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .ring import Poly, multiplicity
from .stdbasis import (
    INFINITE,
    Ideal,
    colength,
    contains,
    ideal_product,
    ideal_sum,
    is_finite,
    maximal_ideal_power,
)


class PreconditionError(ValueError):
    """A documented hypothesis of an operation fails for the given input."""


def _natural(value, name: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise PreconditionError(f"{name} must be a nonnegative integer")
    return value


# -- domain types -------------------------------------------------------------


@dataclass(frozen=True)
class CurveGerm:
    """The germ of a curve C = {f = 0} through the origin.

    ``reduced_certified`` records that tau(f) was found finite, which
    certifies f reduced; operations that need reducedness certify lazily.
    """

    f: Poly
    reduced_certified: bool = False

    def __post_init__(self):
        if self.f.is_zero:
            raise PreconditionError("a curve germ needs a nonzero equation")
        if self.f.constant_term() != 0:
            raise PreconditionError("a curve germ must pass through the origin")

    @property
    def multiplicity(self) -> int:
        return self.f.multiplicity()


def curve(f: Poly) -> CurveGerm:
    return CurveGerm(f)


@dataclass(frozen=True)
class Foliation:
    """w = P dx + Q dy with P and Q coprime at the origin.

    Coprimality (equivalently: the singular point is isolated) is part of the
    definition and is verified on construction -- colength((P,Q)) must be
    finite.
    """

    P: Poly
    Q: Poly

    def __post_init__(self):
        if self.P.is_zero and self.Q.is_zero:
            raise PreconditionError("a foliation needs P, Q not both zero")
        if not is_finite(colength(Ideal.of(self.P, self.Q))):
            raise PreconditionError(
                "P and Q share a factor through the origin (singularity not isolated)"
            )

    @property
    def multiplicity(self) -> int:
        """nu(F) = min(nu(P), nu(Q))."""
        if self.P.is_zero:
            return self.Q.multiplicity()
        if self.Q.is_zero:
            return self.P.multiplicity()
        return min(self.P.multiplicity(), self.Q.multiplicity())


def hamiltonian(f: Poly) -> Foliation:
    """The foliation of the exact form df = f_x dx + f_y dy."""
    return Foliation(f.partial_x(), f.partial_y())


@dataclass(frozen=True)
class ReducedSingularityKind:
    """Reduced-singularity type: non-degenerate, or a saddle-node with index l >= 1.

    The saddle-node index l is the parameter of the normal form
    x^(l+1) dy - y(1 + c x^l) dx.
    """

    saddle_node_index: "int | None" = None

    def __post_init__(self):
        if self.saddle_node_index is not None and (
            not isinstance(self.saddle_node_index, int) or self.saddle_node_index < 1
        ):
            raise PreconditionError("a saddle-node index must be an integer >= 1")

    @classmethod
    def non_degenerate(cls) -> "ReducedSingularityKind":
        return cls(None)

    @classmethod
    def saddle_node(cls, index: int) -> "ReducedSingularityKind":
        return cls(index)


@dataclass(frozen=True)
class WeightData:
    """Weights (w1, w2; d) with a*w1 + b*w2 = d for every monomial x^a y^b of f."""

    w1: Fraction
    w2: Fraction
    d: Fraction


@dataclass(frozen=True)
class InvariantReport:
    """One invariant computed by the engine and, when available, by a closed form."""

    name: str
    computed: object
    closed_form: object = None
    agrees: "bool | None" = None

    def __post_init__(self):
        if self.closed_form is not None:
            object.__setattr__(self, "agrees", self.computed == self.closed_form)


# -- ideal-route invariants ---------------------------------------------------


def jacobian_ideal(f: Poly) -> Ideal:
    return Ideal.of(f.partial_x(), f.partial_y())


def milnor_k(f: Poly, k: int):
    """mu^k(f) = dim O/(m^k * j(f)); INFINITE when the singularity is not isolated."""
    _natural(k, "k")
    if f.is_zero:
        return INFINITE
    jac = jacobian_ideal(f)
    if jac.is_zero:
        return INFINITE
    return colength(ideal_product(jac, maximal_ideal_power(k)))


def tjurina_k(f: Poly, k: int):
    """tau^k(f) = dim O/(m^k * j(f) + (f)); INFINITE when f is not reduced."""
    _natural(k, "k")
    if f.is_zero:
        return INFINITE
    jac = jacobian_ideal(f)
    if jac.is_zero:
        jac = Ideal.of()
    return colength(ideal_sum(ideal_product(jac, maximal_ideal_power(k)), Ideal.of(f)))


def foliation_milnor_k(F: Foliation, k: int):
    """mu^k(F) = dim O/((P,Q) * m^k); always finite for a valid foliation."""
    _natural(k, "k")
    return colength(ideal_product(Ideal.of(F.P, F.Q), maximal_ideal_power(k)))


def foliation_tjurina_k(F: Foliation, C: CurveGerm, k: int):
    """tau^k(F,C) = dim O/((P,Q) * m^k + (f)) for C invariant by F."""
    _natural(k, "k")
    if not is_invariant(F, C):
        raise PreconditionError("the curve is not invariant by the foliation")
    return colength(
        ideal_sum(
            ideal_product(Ideal.of(F.P, F.Q), maximal_ideal_power(k)),
            Ideal.of(C.f),
        )
    )


def intersection_number(f: Poly, g: Poly):
    """i(f,g) = dim O/(f,g); INFINITE signals a common branch through the origin."""
    ideal = Ideal.of(f, g)
    if ideal.is_zero:
        return INFINITE
    return colength(ideal)


def is_invariant(F: Foliation, C: CurveGerm) -> bool:
    """Whether C = {f=0} is invariant by F: f divides P*f_y - Q*f_x in the local ring."""
    f = C.f
    w = F.P * f.partial_y() - F.Q * f.partial_x()
    return contains(Ideal.of(f), w)


def _require_reduced(C: CurveGerm) -> None:
    if C.reduced_certified:
        return
    if not is_finite(tjurina_k(C.f, 0)):
        raise PreconditionError("the curve is not reduced")


def gsv_index(F: Foliation, C: CurveGerm) -> int:
    """GSV index of F along the invariant reduced curve C.

    Uses the two explicit decompositions g*w = h*df + f*eta available without
    solving any syzygy: (g, h) = (f_y, Q), valid since
    f_y*w - Q*df = (P*f_y - Q*f_x) dx = f*htilde dx, and the symmetric
    (g, h) = (f_x, P).  The index is i(f,h) - i(f,g) for whichever pair has
    both intersection numbers finite.
    """
    if not is_invariant(F, C):
        raise PreconditionError("the curve is not invariant by the foliation")
    _require_reduced(C)
    f = C.f
    for g, h in ((f.partial_y(), F.Q), (f.partial_x(), F.P)):
        ih = intersection_number(f, h)
        ig = intersection_number(f, g)
        if is_finite(ih) and is_finite(ig):
            return ih - ig
    raise PreconditionError("degenerate decomposition")


def polar_intersection_k(
    F: Foliation, C: CurveGerm, k: int, samples: int = 3, seed: int = 0
):
    """i^k of the polar curve of F against C: dim O/((aP+bQ, f) * m^k) at generic (a:b).

    Draws ``samples`` distinct directions (a:b) with small integer entries,
    keeping only those with nu(a*P + b*Q) = nu(F), and returns the minimum of
    the finite sampled colengths -- the generic value is minimal and attained
    away from a proper closed set of directions.  Disagreement between samples
    is flagged with a RuntimeWarning; the seed makes runs reproducible.
    """
    _natural(k, "k")
    if samples < 3:
        raise PreconditionError("at least 3 direction samples are required")
    if not is_invariant(F, C):
        raise PreconditionError("the curve is not invariant by the foliation")
    rng = random.Random(seed)
    nu = F.multiplicity
    directions: list[tuple[int, int]] = []
    seen = set()
    attempts = 0
    while len(directions) < samples and attempts < 500 * samples:
        attempts += 1
        a = rng.randint(-20, 20)
        b = rng.randint(-20, 20)
        if a == 0 and b == 0:
            continue
        g = gcd(abs(a), abs(b))
        a, b = a // g, b // g
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        if (a, b) in seen:
            continue
        seen.add((a, b))
        p = a * F.P + b * F.Q
        if p.is_zero or p.multiplicity() != nu:
            continue
        directions.append((a, b))
    if len(directions) < samples:
        raise PreconditionError("polar degenerate against the curve")
    mk = maximal_ideal_power(k)
    values = [
        colength(ideal_product(Ideal.of(a * F.P + b * F.Q, C.f), mk))
        for a, b in directions
    ]
    finite = [v for v in values if is_finite(v)]
    if not finite:
        raise PreconditionError("polar degenerate against the curve")
    if any(v != values[0] for v in values):
        warnings.warn(
            "polar direction samples disagree; a non-generic direction was drawn "
            "and the minimum finite value is reported",
            RuntimeWarning,
            stacklevel=2,
        )
    return min(finite)


# -- closed forms -------------------------------------------------------------


def milnor_k_closed(mu: int, m: int, k: int) -> int:
    """mu^k of an isolated curve singularity from mu = mu(f) and m = nu(f).

    mu + k(k+1), minus (k-m+2)(k-m+1)/2 once k >= m.
    """
    _natural(mu, "mu")
    _natural(k, "k")
    if not isinstance(m, int) or m < 1:
        raise PreconditionError("the multiplicity m must be an integer >= 1")
    value = mu + k * (k + 1)
    if k >= m:
        value -= (k - m + 2) * (k - m + 1) // 2
    return value


def dim_mk_plus_f_closed(m: int, k: int) -> int:
    """dim O/((f) + m^k) for any f with nu(f) = m: k(k+1)/2, corrected once k >= m."""
    _natural(k, "k")
    if not isinstance(m, int) or m < 1:
        raise PreconditionError("the multiplicity m must be an integer >= 1")
    value = k * (k + 1) // 2
    if k >= m:
        value -= (k + 1 - m) * (k - m) // 2
    return value


def reduced_singularity_invariants(
    kind: ReducedSingularityKind, k: int
) -> tuple[int, int]:
    """(mu^k, tau^k-along-the-separatrix) of a reduced foliation singularity.

    Non-degenerate: ((k+1)(k+2)/2, 2k+1); a saddle-node of index l adds l to
    both.
    """
    _natural(k, "k")
    mu = (k + 1) * (k + 2) // 2
    tau = 2 * k + 1
    if kind.saddle_node_index is not None:
        mu += kind.saddle_node_index
        tau += kind.saddle_node_index
    return mu, tau


def weighted_homogeneous_weights(f: Poly) -> "WeightData | None":
    """Positive rational weights (w1, w2) with a*w1 + b*w2 = 1 on every monomial of f.

    None when the linear system is inconsistent or admits no positive
    solution.  A single-monomial germ is underdetermined; by convention the
    symmetric solution w1 = w2 = 1/(a+b) is returned.
    """
    if f.is_zero:
        raise PreconditionError("the zero germ has no weight type")
    exps = [m for m, _ in f.terms]
    one = Fraction(1)
    if len(set(exps)) == 1:
        a, b = exps[0]
        if a + b == 0:
            return None
        w = Fraction(1, a + b)
        return WeightData(w, w, one)
    pair = None
    a0, b0 = exps[0]
    for a, b in exps[1:]:
        if a0 * b - b0 * a != 0:
            pair = (a, b)
            break
    if pair is None:
        return None  # collinear distinct exponents: inconsistent
    a1, b1 = pair
    det = a0 * b1 - b0 * a1
    w1 = Fraction(b1 - b0, det)
    w2 = Fraction(a0 - a1, det)
    if w1 <= 0 or w2 <= 0:
        return None
    for a, b in exps:
        if a * w1 + b * w2 != one:
            return None
    return WeightData(w1, w2, one)


def ell_k(a1: int, a2: int, k: int) -> int:
    """The binomial-model lower bound: (a1-1)(a2-1) + k(k+3)/2, corrected once k >= a1.

    Only integer exponents a1 <= a2 are accepted; rational weight reciprocals
    are handled internally by :func:`check_conjecture1`.
    """
    _natural(k, "k")
    if not isinstance(a1, int) or not isinstance(a2, int) or not 2 <= a1 <= a2:
        raise PreconditionError("exponents must be integers with 2 <= a1 <= a2")
    value = (a1 - 1) * (a2 - 1) + k * (k + 3) // 2
    if k >= a1:
        value -= (k - a1 + 2) * (k - a1 + 1) // 2
    return value


def _ell_k_rational(a1: Fraction, a2: Fraction, k: int) -> Fraction:
    value = (a1 - 1) * (a2 - 1) + Fraction(k * (k + 3), 2)
    if k >= a1:
        value -= (k - a1 + 2) * (k - a1 + 1) / Fraction(2)
    return value


# -- identity checks ----------------------------------------------------------


def check_conjecture1(f: Poly, k: int):
    """(tau^k(f), the weight bound, holds) for weighted-homogeneous f.

    The bound is computed with exact rational reciprocal weights, so
    non-integer 1/w_i are handled; ``holds`` is tau^k >= bound.
    """
    _natural(k, "k")
    weights = weighted_homogeneous_weights(f)
    if weights is None:
        raise PreconditionError("the germ is not weighted homogeneous")
    tau = tjurina_k(f, k)
    if not is_finite(tau):
        raise PreconditionError("the singularity is not isolated")
    a1, a2 = sorted((1 / weights.w1, 1 / weights.w2))
    bound = _ell_k_rational(a1, a2, k)
    if bound.denominator == 1:
        bound = int(bound)
    return tau, bound, tau >= bound


def ratio_check(f: Poly, k: int):
    """(mu^k, tau^k, whether the exact ratio mu^k/tau^k exceeds 4/3)."""
    _natural(k, "k")
    mu = milnor_k(f, k)
    tau = tjurina_k(f, k)
    if not (is_finite(mu) and is_finite(tau)):
        raise PreconditionError("the singularity is not isolated")
    if tau == 0:
        raise PreconditionError("the ratio is undefined for a smooth germ")
    return mu, tau, Fraction(mu, tau) > Fraction(4, 3)


def is_quasihomogeneous_foliation(F: Foliation, C: CurveGerm) -> bool:
    """Whether f lies in (P, Q) -- the quasi-homogeneity membership test."""
    if not is_invariant(F, C):
        raise PreconditionError("the curve is not invariant by the foliation")
    return contains(Ideal.of(F.P, F.Q), C.f)


def milnor_bound_check(F: Foliation, B0: CurveGerm, k: int):
    """(tau^k(F,B0), mu^k(F), 2*tau^k + k(k+1)/2, holds) -- the two-sided bound.

    Valid for second-type foliations with balanced divisor of zeros B0; that
    hypothesis is the caller's assertion.
    """
    _natural(k, "k")
    lhs = foliation_tjurina_k(F, B0, k)
    mid = foliation_milnor_k(F, k)
    rhs = 2 * lhs + k * (k + 1) // 2
    return lhs, mid, rhs, lhs <= mid <= rhs


def quasihomogeneous_identity_check(F: Foliation, C: CurveGerm, k: int):
    """(mu^k(F), tau^k(F,C), holds) for mu^k = tau^k + k(k-1)/2, k >= 1.

    Requires the quasi-homogeneity membership f in (P, Q); the
    generalized-curve hypothesis is the caller's assertion.
    """
    if not isinstance(k, int) or k < 1:
        raise PreconditionError("k must be an integer >= 1")
    if not is_quasihomogeneous_foliation(F, C):
        raise PreconditionError("f does not lie in (P, Q)")
    mu = foliation_milnor_k(F, k)
    tau = foliation_tjurina_k(F, C, k)
    return mu, tau, mu == tau + k * (k - 1) // 2


def gsv_theorem_check(F: Foliation, C: CurveGerm, k_max: int) -> bool:
    """tau^k(F,C) - tau^k(C) equals the GSV index for every k = 0..k_max."""
    _natural(k_max, "k_max")
    g = gsv_index(F, C)
    for k in range(k_max + 1):
        tau_fc = foliation_tjurina_k(F, C, k)
        tau_c = tjurina_k(C.f, k)
        if not (is_finite(tau_fc) and is_finite(tau_c)):
            raise PreconditionError("an infinite Tjurina number appeared")
        if tau_fc - tau_c != g:
            return False
    return True


def teissier_k_check(f: Poly, k: int, samples: int = 3, seed: int = 0) -> bool:
    """i^k of the polar of df against {f=0} equals mu^k(f) + nu(f) - 1."""
    _natural(k, "k")
    F = hamiltonian(f)
    C = curve(f)
    i_k = polar_intersection_k(F, C, k, samples=samples, seed=seed)
    mu = milnor_k(f, k)
    if not (is_finite(i_k) and is_finite(mu)):
        raise PreconditionError("the singularity is not isolated")
    return i_k == mu + multiplicity(f) - 1


def polar_gsv_check(
    F: Foliation, C: CurveGerm, k_max: int, samples: int = 3, seed: int = 0
) -> bool:
    """i^k(polar of F) - i^k(polar of df) is constant in k and equals the GSV index.

    Valid for non-dicritical second-type foliations whose total separatrix
    union is C; that hypothesis is the caller's assertion.
    """
    _natural(k_max, "k_max")
    g = gsv_index(F, C)
    Fd = hamiltonian(C.f)
    for k in range(k_max + 1):
        i_f = polar_intersection_k(F, C, k, samples=samples, seed=seed)
        i_d = polar_intersection_k(Fd, C, k, samples=samples, seed=seed)
        if not (is_finite(i_f) and is_finite(i_d)):
            raise PreconditionError("an infinite polar intersection number appeared")
        if i_f - i_d != g:
            return False
    return True


def second_type_milnor_check(F: Foliation, C: CurveGerm, k_max: int) -> bool:
    """mu^k(F) - mu^k(C) is constant over k = 0..k_max.

    Valid for second-type foliations with total separatrix union C; that
    hypothesis is the caller's assertion.  (The value of the constant is then
    mu(F) - mu(C).)
    """
    _natural(k_max, "k_max")
    expected = None
    for k in range(k_max + 1):
        mu_f = foliation_milnor_k(F, k)
        mu_c = milnor_k(C.f, k)
        if not is_finite(mu_c):
            raise PreconditionError("the curve singularity is not isolated")
        diff = mu_f - mu_c
        if expected is None:
            expected = diff
        elif diff != expected:
            return False
    return True


def milnor_report(f: Poly, k: int) -> InvariantReport:
    """mu^k(f) by the engine next to its closed form from (mu(f), nu(f)).

    The closed form is omitted when mu(f) is infinite.
    """
    computed = milnor_k(f, k)
    closed = None
    mu0 = milnor_k(f, 0)
    if is_finite(mu0) and not f.is_zero and f.multiplicity() >= 1:
        closed = milnor_k_closed(mu0, f.multiplicity(), k)
    return InvariantReport(name=f"milnor_{k}", computed=computed, closed_form=closed)
