"""Standard bases, weak normal forms and colengths in the local ring at the origin.

Every numeric invariant downstream reduces to one computation: the colength
dim_Q O/I of an ideal I in the localized ring, read off the staircase of
leading monomials of a standard basis.  Standard bases are computed with the
tangent-cone algorithm: Buchberger's loop driven by Mora's weak normal form,
whose ecart strategy may adjoin intermediate remainders as extra reducers --
that is what makes division terminate under a local order.

The public API speaks exact-rational :class:`~folinv.ring.Poly` values.  The
hot loops run over content-free integer term lists whose monomials are packed
into single ints ordered compatibly with the local order, and use fraction-free
pseudo-reduction; results are only converted back at the boundary (a nonzero
normal form is determined up to a unit of the local ring, so normalizing to a
primitive, positive-leading representative loses nothing).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .ring import Monomial, Poly, monomial_divides, monomial_mul

# -- packed monomial codes --------------------------------------------------
#
# code(x^a y^b) = ((a+b) << _SHIFT) | b.  Integer comparison of codes is
# exactly the (total degree, reverse-lex) comparison of the local order read
# ascending, and multiplication of monomials is addition of codes.  _SHIFT=40
# leaves room for exponents far beyond the CLI's 10^6 cap.

_SHIFT = 40
_MASK = (1 << _SHIFT) - 1


def _encode(m: Monomial) -> int:
    return ((m[0] + m[1]) << _SHIFT) | m[1]


def _decode(code: int) -> Monomial:
    b = code & _MASK
    return ((code >> _SHIFT) - b, b)


def _code_divides(c1: int, c2: int) -> bool:
    b1 = c1 & _MASK
    b2 = c2 & _MASK
    return b1 <= b2 and (c1 >> _SHIFT) - b1 <= (c2 >> _SHIFT) - b2


def _code_lcm(c1: int, c2: int) -> int:
    b1 = c1 & _MASK
    b2 = c2 & _MASK
    a1 = (c1 >> _SHIFT) - b1
    a2 = (c2 >> _SHIFT) - b2
    a = a1 if a1 >= a2 else a2
    b = b1 if b1 >= b2 else b2
    return ((a + b) << _SHIFT) | b


# Internal polynomials: lists of (code, int_coeff), sorted ascending by code
# (leading term first), content-free with positive leading coefficient.


def _to_internal(p: Poly) -> list:
    den = 1
    for _, c in p.terms:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [(c.numerator * (den // c.denominator)) for _, c in p.terms]
    g = 0
    for v in ints:
        g = gcd(g, v)
        if g == 1:
            break
    if g == 0:
        return []
    if ints[0] < 0:
        g = -g
    return [(_encode(m), v // g) for (m, _), v in zip(p.terms, ints)]


def _to_poly(t: list) -> Poly:
    return Poly._raw(tuple((_decode(code), Fraction(c)) for code, c in t))


def _strip(t: list) -> list:
    """Divide out the content and normalize the leading coefficient positive."""
    if not t:
        return t
    g = 0
    for _, c in t:
        g = gcd(g, c)
        if g == 1:
            break
    if t[0][1] < 0:
        g = -g
    if g == 1:
        return t
    return [(code, c // g) for code, c in t]


def _combine(t1: list, m1: int, s1: int, t2: list, m2: int, s2: int) -> list:
    """m1 * x^s1 * t1 + m2 * x^s2 * t2 as a merged sorted term list."""
    out = []
    i = j = 0
    n1, n2 = len(t1), len(t2)
    while i < n1 and j < n2:
        c1 = t1[i][0] + s1
        c2 = t2[j][0] + s2
        if c1 < c2:
            out.append((c1, m1 * t1[i][1]))
            i += 1
        elif c2 < c1:
            out.append((c2, m2 * t2[j][1]))
            j += 1
        else:
            v = m1 * t1[i][1] + m2 * t2[j][1]
            if v:
                out.append((c1, v))
            i += 1
            j += 1
    while i < n1:
        out.append((t1[i][0] + s1, m1 * t1[i][1]))
        i += 1
    while j < n2:
        out.append((t2[j][0] + s2, m2 * t2[j][1]))
        j += 1
    return out


def _ecart(t: list) -> int:
    return (t[-1][0] >> _SHIFT) - (t[0][0] >> _SHIFT)


def _reduce_step(h: list, g: list) -> list:
    """One cancellation of the leading term of h against g, fraction-free."""
    lch = h[0][1]
    lcg = g[0][1]
    d = gcd(lch, lcg)
    return _strip(_combine(h, lcg // d, 0, g, -(lch // d), h[0][0] - g[0][0]))


def _spoly(t1: list, t2: list) -> list:
    lcm = _code_lcm(t1[0][0], t2[0][0])
    d = gcd(t1[0][1], t2[0][1])
    return _strip(
        _combine(
            t1, t2[0][1] // d, lcm - t1[0][0], t2, -(t1[0][1] // d), lcm - t2[0][0]
        )
    )


def _truncate(t: list, bound: int) -> list:
    """Drop all terms of total degree >= bound (they lie in m^bound)."""
    return [term for term in t if (term[0] >> _SHIFT) < bound]


def _staircase_bound(lms: list) -> "int | None":
    """Smallest N with m^N inside the monomial ideal of the given leading codes.

    None when the staircase is infinite (no pure power of x or of y yet).
    Once the partial basis reaches such an N, every monomial of degree >= N
    weak-reduces to zero against it: a reduction step never lowers total
    degree under the local order, so the walk stays in the divisible region,
    and Mora division terminates -- hence m^N is contained in the ideal and
    terms beyond the staircase may be discarded everywhere.
    """
    bound_x = bound_y = None
    decoded = []
    for code in lms:
        b = code & _MASK
        a = (code >> _SHIFT) - b
        decoded.append((a, b))
        if b == 0 and (bound_x is None or a < bound_x):
            bound_x = a
        if a == 0 and (bound_y is None or b < bound_y):
            bound_y = b
    if bound_x is None or bound_y is None:
        return None
    n = 0
    for i in range(bound_x):
        blocked = bound_y
        for a, b in decoded:
            if a <= i and b < blocked:
                blocked = b
        if i + blocked > n:
            n = i + blocked
    return n


class _Blowup(Exception):
    """Raised when a reduction exceeds its work budget.

    Two distinct failure modes end up here.  Without a truncation degree the
    walk length of Mora reduction has no useful a-priori bound, and ideals
    whose generators share a factor vanishing at the origin (so that no
    truncation degree ever appears) walk forever; the caller splits off the
    common factor and restarts on the cofactors.  With a truncation degree
    the walk is finite but iterated pseudo-reduction can still compound
    integer coefficients exponentially; the caller switches to degree-capped
    linear algebra, whose swell is at worst polynomial.
    """


_NF_STEP_BUDGET = 20000
_COEFF_BIT_LIMIT = 6000


def _mora_nf(
    h: list, basis: list, trunc: "int | None" = None, budget: "list | None" = None
) -> list:
    """Mora weak normal form of h against a list of internal polynomials.

    Reducer choice: among the reducers whose leading monomial divides the
    leading monomial of h, take minimal ecart, break ties by the smallest
    leading monomial in the local order, then by list position.  When the
    chosen reducer has larger ecart than h, the current h joins the reducer
    list before the cancellation -- Mora's device for termination.

    ``trunc`` is a degree N with m^N contained in the ideal of the basis;
    terms of degree >= N are discarded as they appear, which keeps both the
    walk length and the integer coefficients bounded.

    ``budget`` is a single-element mutable step counter shared across calls;
    when it runs out, or a coefficient outgrows any size a well-posed
    computation here produces, :class:`_Blowup` is raised.
    """
    if trunc is not None:
        h = _truncate(h, trunc)
    reducers = [(t[0][0], _ecart(t), t) for t in basis]
    while h:
        if budget is not None:
            budget[0] -= 1
            if budget[0] < 0 or h[0][1].bit_length() > _COEFF_BIT_LIMIT:
                raise _Blowup
        lmh = h[0][0]
        best_key = None
        best = None
        for lmg, ecg, t in reducers:
            if _code_divides(lmg, lmh):
                key = (ecg, -lmg)
                if best_key is None or key < best_key:
                    best_key = key
                    best = (ecg, t)
        if best is None:
            break
        ecg, t = best
        if ecg > _ecart(h):
            reducers.append((lmh, _ecart(h), h))
        h = _reduce_step(h, t)
        if trunc is not None:
            h = _truncate(h, trunc)
    return _strip(h)


def _minimalize(lms_terms: list) -> list:
    """Keep only elements whose leading monomial is not a multiple of another's.

    Input visited ascending by leading code: a divisor has smaller or equal
    code, so a single pass against the kept list is enough.
    """
    kept = []
    kept_lms = []
    for t in sorted(lms_terms, key=lambda t: (t[0][0], len(t))):
        lm = t[0][0]
        if not any(_code_divides(k, lm) for k in kept_lms):
            kept.append(t)
            kept_lms.append(lm)
    return kept


_PRODUCT_CRITERION = True


def _std(gens: list) -> list:
    """Tangent-cone standard basis of a list of internal polynomials.

    Normal strategy: s-pairs are processed by increasing total degree of the
    lcm of leading monomials, ties by creation order.  Pairs with coprime
    leading monomials are skipped (product criterion), as are pairs whose
    s-polynomial provably lies in a power of the maximal ideal already known
    to be contained in the ideal (highest-corner truncation).  The final
    basis is minimalized; tails are left as computed, since full tail
    reduction need not terminate under a local order.

    All reductions run against a shared work budget and may raise
    :class:`_Blowup`: even with a truncation degree, which makes every walk
    finite, iterated pseudo-reduction against adjoined reducers can compound
    coefficient sizes past any practical bound.
    """
    G = [list(g) for g in gens if g]
    lms = [g[0][0] for g in G]
    trunc = _staircase_bound(lms)
    counter = [_NF_STEP_BUDGET]
    heap = []
    n = len(G)
    for j in range(n):
        for i in range(j):
            lcm = _code_lcm(lms[i], lms[j])
            heapq.heappush(heap, (lcm >> _SHIFT, i, j, lcm))
    while heap:
        lcm_deg, i, j, lcm = heapq.heappop(heap)
        # every term of the s-polynomial has degree >= lcm_deg
        if trunc is not None and lcm_deg >= trunc:
            continue
        if _PRODUCT_CRITERION and lcm == lms[i] + lms[j]:
            continue
        s = _spoly(G[i], G[j])
        if not s:
            continue
        r = _mora_nf(s, G, trunc, counter)
        if r:
            G.append(r)
            lms.append(r[0][0])
            trunc = _staircase_bound(lms)
            j = len(G) - 1
            for i in range(j):
                lcm = _code_lcm(lms[i], lms[j])
                heapq.heappush(heap, (lcm >> _SHIFT, i, j, lcm))
    return _minimalize(G)


# -- public types -----------------------------------------------------------


class _Infinite:
    """Colength of an ideal that is not zero-dimensional.  A value, not an error."""

    _singleton = None
    __slots__ = ()

    def __new__(cls):
        if cls._singleton is None:
            cls._singleton = super().__new__(cls)
        return cls._singleton

    def __repr__(self) -> str:
        return "infinite"

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()

Colength = "int | _Infinite"


def is_finite(c) -> bool:
    return c is not INFINITE


@dataclass(frozen=True)
class Ideal:
    """Finitely generated ideal of the local ring; zero generators are dropped."""

    generators: tuple[Poly, ...] = ()

    def __post_init__(self):
        gens = tuple(g for g in self.generators if not g.is_zero)
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, *polys: Poly) -> "Ideal":
        return cls(tuple(polys))

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(
            tuple(g * h for g in self.generators for h in other.generators)
        )

    def __repr__(self) -> str:
        return "Ideal(" + ", ".join(str(g) for g in self.generators) + ")"


def ideal_sum(i: Ideal, j: Ideal) -> Ideal:
    return i + j


def ideal_product(i: Ideal, j: Ideal) -> Ideal:
    return i * j


def maximal_ideal_power(k: int) -> Ideal:
    """The ideal m^k: generated by the k+1 monomials of total degree k; m^0 = (1)."""
    if k < 0:
        raise ValueError("negative power of the maximal ideal")
    return Ideal(tuple(Poly.term((k - i, i)) for i in range(k + 1)))


@dataclass(frozen=True)
class StandardBasis:
    """Standard basis of an ideal: monic elements, minimal set of leading monomials."""

    source: Ideal
    elements: tuple[Poly, ...]
    leading_monomials: tuple[Monomial, ...]
    order_tag: str = "ds"


# -- public operations ------------------------------------------------------


def mora_normal_form(f: Poly, basis, certificate: bool = False):
    """Weak normal form of f against a list of nonzero polynomials.

    The result r has a leading monomial divisible by no leading monomial of
    the basis, and u*f = sum(q_i * g_i) + r for some unit u of the local ring;
    so r == 0 decides membership whenever the basis is a standard basis.  The
    returned representative is normalized up to a unit (integer coefficients,
    content-free, positive leading coefficient).

    With ``certificate=True`` the exact relation is tracked and the triple
    ``(r, u, cofactors)`` with u*f == sum(cofactors[i]*basis[i]) + r is
    returned, without the normalization above.
    """
    basis = list(basis)
    if any(g.is_zero for g in basis):
        raise ValueError("normal form against a basis containing zero")
    if certificate:
        return _mora_nf_certified(f, basis)
    if f.is_zero:
        return Poly.zero()
    internal = [_to_internal(g) for g in basis]
    # Truncation is sound against ANY basis, standard or not: if the basis
    # leading monomials admit a staircase bound N, every monomial of degree
    # >= N weak-reduces to zero (see _staircase_bound), so m^N lies in the
    # generated ideal and terms of degree >= N may be dropped.  It also makes
    # the walk finite-by-construction: each step strictly increases the
    # leading code, which truncation bounds.
    trunc = _staircase_bound([t[0][0] for t in internal])
    r = _mora_nf(_to_internal(f), internal, trunc)
    return _to_poly(r)


def _mora_nf_certified(f: Poly, basis: list):
    """Fraction-arithmetic twin of :func:`_mora_nf` that tracks cofactors.

    Maintains h == u*f - sum(q_i * g_i) throughout; adjoined reducers carry
    their own representation so reductions by them fold back onto the basis.
    """
    zero = Poly.zero()
    u = Poly.one()
    qs = [zero] * len(basis)
    h = f
    # entries: (lm, ecart, poly, u_part or None, q_parts or index)
    reducers: list = [
        (g.leading_monomial(), g.ecart(), g, None, i) for i, g in enumerate(basis)
    ]
    while not h.is_zero:
        lmh = h.leading_monomial()
        best = None
        best_key = None
        for lmg, ecg, g, gu, gq in reducers:
            if monomial_divides(lmg, lmh):
                key = (ecg, (-(lmg[0] + lmg[1]), -lmg[1]))
                if best_key is None or key < best_key:
                    best_key = key
                    best = (lmg, ecg, g, gu, gq)
        if best is None:
            break
        lmg, ecg, g, gu, gq = best
        if ecg > h.ecart():
            reducers.append((lmh, h.ecart(), h, u, list(qs)))
        c = h.leading_coefficient() / g.leading_coefficient()
        shift = (lmh[0] - lmg[0], lmh[1] - lmg[1])
        t = Poly.term(shift, c)
        h = h.sub_scaled_shifted(g, c, shift)
        if gu is None:
            qs[gq] = qs[gq] + t
        else:
            u = u - t * gu
            qs = [q - t * qw for q, qw in zip(qs, gq)]
    return h, u, qs


def _sympy_pair(p: Poly, sym, x, y):
    terms = [
        sym.Rational(c.numerator, c.denominator) * x**a * y**b
        for (a, b), c in p.terms
    ]
    return sym.Add(*terms)


def _sympy_to_poly(e, sym, x, y) -> Poly:
    sp = sym.Poly(e, x, y)
    return Poly.from_dict(
        {
            (int(a), int(b)): Fraction(int(c.p), int(c.q))
            for (a, b), c in sp.terms()
        }
    )


def _split_common_factor(gens: tuple) -> "tuple[Poly, tuple[Poly, ...]] | None":
    """Factor the generators as v * cofactors, v vanishing at the origin.

    v is the product (with multiplicity) of those irreducible factors of the
    polynomial gcd of the generators that vanish at 0.  Returns None when
    there are none -- the generators then share no curve through the origin,
    so the ideal they generate in the local ring is zero-dimensional.  The
    computer-algebra dependency is imported lazily: this only runs when a
    reduction blows its budget, which well-posed inputs never do.
    """
    import sympy

    x, y = sympy.symbols("x y")
    exprs = [_sympy_pair(g, sympy, x, y) for g in gens]
    g = exprs[0]
    for e in exprs[1:]:
        g = sympy.gcd(g, e)
        if g.is_number:
            return None
    vanishing = sympy.Integer(1)
    for fac, exp in sympy.factor_list(g, x, y)[1]:
        if fac.subs({x: 0, y: 0}) == 0:
            vanishing *= fac**exp
    if vanishing == 1:
        return None
    cofactors = tuple(
        _sympy_to_poly(sympy.exquo(e, vanishing, x, y), sympy, x, y) for e in exprs
    )
    return _sympy_to_poly(vanishing, sympy, x, y), cofactors


def _exact_quotient_or_none(f: Poly, v: Poly) -> "Poly | None":
    """f / v when v divides f as polynomials, else None.

    For v a product of irreducible polynomials vanishing at 0, polynomial
    divisibility of a polynomial f by v is equivalent to divisibility in the
    local ring: a power series cofactor forces f to vanish along every
    branch of v through 0, hence (all components of an irreducible curve
    with a point at the origin pass through it) on every component of v, to
    the full multiplicity -- so the cofactor is itself a polynomial.
    """
    import sympy

    x, y = sympy.symbols("x y")
    q, r = sympy.div(_sympy_pair(f, sympy, x, y), _sympy_pair(v, sympy, x, y), x, y)
    if r != 0:
        return None
    return _sympy_to_poly(q, sympy, x, y)


def _eliminate_row(row: dict, pivots: dict) -> None:
    """Reduce a sparse row against the pivot rows and insert it if nonzero.

    Rows are dicts code -> Fraction; the pivot column of a row is its
    smallest code, i.e. its leading monomial in the local order.  Pivot rows
    are kept monic.
    """
    while row:
        lead = min(row)
        piv = pivots.get(lead)
        if piv is None:
            lc = row[lead]
            pivots[lead] = {c: v / lc for c, v in row.items()}
            return
        factor = row.pop(lead)
        for c, v in piv.items():
            if c == lead:
                continue
            w = row.get(c, 0) - factor * v
            if w:
                row[c] = w
            else:
                row.pop(c, None)


def _capped_std(internal_gens: list, cap: int) -> "list | None":
    """Standard basis of the ideal via the degree-capped ideal I + m^cap.

    Below degree cap, the image of I in the finite-dimensional algebra
    O/m^cap is the linear span of the monomial shifts of the generators
    truncated at degree cap (power-series tails of a coefficient only
    contribute within m^cap).  Gaussian elimination of those shifts, with
    the pivot of each row taken at its local-order leading monomial, reads
    off the leading ideal of I + m^cap directly: the pivot monomials are
    exactly the leading monomials occurring below the cap, and each echelon
    row is an element of I + m^cap realizing its pivot.  Unlike iterated
    pseudo-reduction, elimination swells at worst polynomially.

    The run is accepted only when the resulting staircase is bounded by some
    N < cap: then every monomial of degree N..cap-1 lies in the leading
    ideal of I, so m^N is contained in I + m^M for every M >= cap, hence in
    I itself by Krull's intersection theorem.  That both certifies that the
    staircase read off is the true one and shows each returned element
    (an element of I plus junk from m^cap, and m^cap is inside m^N) lies in
    I.  Returns None when the cap was too small to decide.
    """
    pivots: dict[int, dict] = {}
    for g in internal_gens:
        if not g:
            continue
        gmin = g[0][0] >> _SHIFT
        for s in range(max(0, cap - gmin)):
            for b in range(s + 1):
                shift = _encode((s - b, b))
                row = {}
                for code, coeff in g:
                    c = code + shift
                    if (c >> _SHIFT) < cap:
                        row[c] = Fraction(coeff)
                if row:
                    _eliminate_row(row, pivots)
    out = []
    for row in pivots.values():
        den = 1
        for v in row.values():
            den = den * v.denominator // gcd(den, v.denominator)
        out.append(sorted((c, int(v * den)) for c, v in row.items()))
    for i in range(cap + 1):
        out.append([(_encode((cap - i, i)), 1)])
    basis = _minimalize(out)
    n = _staircase_bound([t[0][0] for t in basis])
    if n is not None and n < cap:
        return basis
    return None


def _standard_basis_from_gens(gens: tuple) -> StandardBasis:
    try:
        internal = _std([_to_internal(g) for g in gens])
    except _Blowup:
        split = _split_common_factor(gens)
        if split is None:
            # No common factor through the origin: the ideal is
            # zero-dimensional in the local ring, so some degree cap will be
            # accepted; doubling reaches it in O(log) attempts.
            internal_gens = [_to_internal(g) for g in gens]
            cap = max(4, 2 * max(g.degree() for g in gens))
            while True:
                capped = _capped_std(internal_gens, cap)
                if capped is not None:
                    internal = capped
                    break
                cap *= 2
        else:
            # A standard basis of v*J is v times one of J: leading monomials
            # multiply, so the leading ideals match on both sides.
            v, cofactors = split
            inner = _standard_basis_cached(cofactors)
            vlm = v.leading_monomial()
            elements = tuple((v * s).monic() for s in inner.elements)
            lms = tuple(monomial_mul(vlm, lm) for lm in inner.leading_monomials)
            return StandardBasis(
                source=Ideal(gens), elements=elements, leading_monomials=lms
            )
    elements = tuple(_to_poly(t).monic() for t in internal)
    lms = tuple(_decode(t[0][0]) for t in internal)
    return StandardBasis(source=Ideal(gens), elements=elements, leading_monomials=lms)


_standard_basis_cached = lru_cache(maxsize=None)(_standard_basis_from_gens)


def standard_basis(ideal: Ideal) -> StandardBasis:
    """Standard basis of a nonzero ideal under the local order."""
    if ideal.is_zero:
        raise ValueError("standard basis of the zero ideal is undefined")
    return _standard_basis_cached(ideal.generators)


def leading_ideal(ideal: Ideal) -> tuple[Monomial, ...]:
    return standard_basis(ideal).leading_monomials


def colength(ideal: Ideal) -> "int | _Infinite":
    """dim_Q O/I: the number of monomials outside the leading-monomial staircase.

    Finite exactly when the leading ideal contains a pure power of x and a
    pure power of y; otherwise returns INFINITE.
    """
    if ideal.is_zero:
        raise ValueError("the zero ideal has infinite colength in every sense")
    lms = standard_basis(ideal).leading_monomials
    bound_x = None
    bound_y = None
    for a, b in lms:
        if b == 0 and (bound_x is None or a < bound_x):
            bound_x = a
        if a == 0 and (bound_y is None or b < bound_y):
            bound_y = b
    if bound_x is None or bound_y is None:
        return INFINITE
    count = 0
    for i in range(bound_x):
        blocked = bound_y
        for a, b in lms:
            if a <= i and b < blocked:
                blocked = b
        count += blocked
    return count


def contains(ideal: Ideal, f: Poly) -> bool:
    """Membership of f in the ideal, inside the local ring."""
    if ideal.is_zero:
        return f.is_zero
    if f.is_zero:
        return True
    sb = standard_basis(ideal)
    basis = [_to_internal(g) for g in sb.elements]
    trunc = _staircase_bound([t[0][0] for t in basis])
    counter = None if trunc is not None else [_NF_STEP_BUDGET]
    try:
        return not _mora_nf(_to_internal(f), basis, trunc, counter)
    except _Blowup:
        split = _split_common_factor(ideal.generators)
        if split is None:
            return not _mora_nf(_to_internal(f), basis, None)
        # f lies in v*J iff v divides f (in the local ring, equivalently as
        # polynomials) and the cofactor lies in J.
        v, cofactors = split
        q = _exact_quotient_or_none(f, v)
        if q is None:
            return False
        return contains(Ideal(cofactors), q)
