"""Exact character theory over cyclotomic fields and the pc invariant.

Characters are computed by monomial induction: every 1-dimensional
character of every subgroup (enumerated by closure over generator subsets)
is induced up and the norm-1 results are kept.  Completeness is certified
by the sum-of-squares count and exact pairwise orthonormality, so the
method is self-checking on monomial groups.

pc(G) is twice the least common multiple, over conjugacy classes of
order-p subgroups C <= G, of the gcd of the degrees in which restricted
total Chern classes of irreducible characters have nonzero coefficients
on C.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence

from .groups import (FiniteGroup, Subgroup, order_p_subgroup_classes,
                     subgroup_closure)

MAX_ENUM_ORDER = 200


# ---------------------------------------------------------------------------
# Cyclotomic field Q(zeta_N) = Q[x]/Phi_N(x)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the N-th cyclotomic polynomial,
    by exact division of x^N - 1 by the proper-divisor factors."""
    if N < 1:
        raise ValueError("N must be positive")
    num = [-1] + [0] * (N - 1) + [1]  # x^N - 1
    for d in range(1, N):
        if N % d == 0:
            num = _poly_exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_exact_div(num: list, den: list) -> list:
    num = [Fraction(c) for c in num]
    out = [Fraction(0)] * (len(num) - len(den) + 1)
    lead = Fraction(den[-1])
    for i in range(len(num) - 1, len(den) - 2, -1):
        q = num[i] / lead
        out[i - len(den) + 1] = q
        if q:
            for j, c in enumerate(den):
                num[i - len(den) + 1 + j] -= q * c
    if any(num[:len(den) - 1]):
        raise ArithmeticError("division is not exact")
    if any(c.denominator != 1 for c in out):
        raise ArithmeticError("non-integer quotient")
    return [int(c) for c in out]


class Cyclotomic:
    """Element of Q[x]/Phi_N(x) in the canonical power basis."""

    __slots__ = ("N", "coeffs")

    def __init__(self, N: int, coeffs: Sequence[Fraction]):
        phi = len(cyclotomic_polynomial(N)) - 1
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > phi:
            cs = _reduce_mod_phi(N, cs)
        cs += [Fraction(0)] * (phi - len(cs))
        self.N = N
        self.coeffs = tuple(cs)

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(N: int) -> "Cyclotomic":
        return Cyclotomic(N, [])

    @staticmethod
    def rational(N: int, q) -> "Cyclotomic":
        return Cyclotomic(N, [Fraction(q)])

    @staticmethod
    def root(N: int, k: int) -> "Cyclotomic":
        """zeta_N^k."""
        k %= N
        return Cyclotomic(N, [Fraction(0)] * k + [Fraction(1)])

    # -- arithmetic ---------------------------------------------------------

    def _compat(self, other: "Cyclotomic") -> None:
        if self.N != other.N:
            raise ValueError("conductor mismatch")

    def __add__(self, other: "Cyclotomic") -> "Cyclotomic":
        self._compat(other)
        return Cyclotomic(self.N,
                          [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "Cyclotomic") -> "Cyclotomic":
        self._compat(other)
        return Cyclotomic(self.N,
                          [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other: "Cyclotomic") -> "Cyclotomic":
        self._compat(other)
        n = len(self.coeffs)
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    prod[i + j] += a * b
        return Cyclotomic(self.N, prod)

    def scale(self, q) -> "Cyclotomic":
        q = Fraction(q)
        return Cyclotomic(self.N, [q * c for c in self.coeffs])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cyclotomic) and self.N == other.N
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.N, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def as_rational(self) -> Fraction:
        if any(self.coeffs[1:]):
            raise ValueError("not a rational number")
        return self.coeffs[0]

    def as_integer(self) -> int:
        q = self.as_rational()
        if q.denominator != 1:
            raise ValueError("not an integer")
        return q.numerator

    def __repr__(self):
        return f"Cyclotomic(N={self.N}, {list(self.coeffs)})"


def _reduce_mod_phi(N: int, cs: list[Fraction]) -> list[Fraction]:
    phi = list(cyclotomic_polynomial(N))
    deg = len(phi) - 1
    cs = list(cs)
    for i in range(len(cs) - 1, deg - 1, -1):
        q = cs[i]
        if q:
            for j, c in enumerate(phi):
                cs[i - deg + j] -= q * c
    return cs[:deg]


# ---------------------------------------------------------------------------
# Class functions and characters
# ---------------------------------------------------------------------------


@dataclass
class ClassFunction:
    """A function on a finite group with cyclotomic values, stored per
    element (the constructions below are constant on conjugacy classes)."""

    group: FiniteGroup
    values: list[Cyclotomic]

    def __post_init__(self):
        if len(self.values) != self.group.order:
            raise ValueError("one value per group element required")

    @property
    def conductor(self) -> int:
        return self.values[0].N

    def degree(self) -> int:
        return self.values[0].as_integer()

    def inner(self, other: "ClassFunction") -> Fraction:
        """<self, other> = (1/|G|) sum self(g) other(g^-1), exact."""
        G = self.group
        acc = Cyclotomic.zero(self.conductor)
        for g in range(G.order):
            acc = acc + self.values[g] * other.values[G.inv[g]]
        return acc.scale(Fraction(1, G.order)).as_rational()

    def norm(self) -> Fraction:
        return self.inner(self)

    def value_key(self) -> tuple:
        return tuple(c.coeffs for c in self.values)

    def is_constant_on_classes(self) -> bool:
        G = self.group
        return all(self.values[G.conj(x, g)] == self.values[g]
                   for g in range(G.order) for x in range(G.order))


# ---------------------------------------------------------------------------
# Linear characters (exponents of zeta_N) and induction
# ---------------------------------------------------------------------------


def _minimal_generators(G: FiniteGroup) -> list[int]:
    gens: list[int] = []
    covered = {0}
    for g in range(1, G.order):
        if g not in covered:
            gens.append(g)
            covered = subgroup_closure(G, gens).member_set
            if len(covered) == G.order:
                break
    return gens


def linear_character_exponents(H: FiniteGroup, N: int) -> list[list[int]]:
    """All homomorphisms H -> Z/N (characters h -> zeta_N^e(h)), as exponent
    vectors indexed by element.  N must be a multiple of exponent(H)."""
    if N % H.exponent() != 0:
        raise ValueError("conductor does not contain the character values")
    gens = _minimal_generators(H) or []
    if not gens:
        return [[0]]
    orders = [H.element_order(g) for g in gens]
    mul = H.mul
    out = []
    seen = set()
    for choice in itertools.product(*[range(o) for o in orders]):
        exps = {0: 0}
        for g, t, o in zip(gens, choice, orders):
            exps[g] = (t * (N // o)) % N
        # spread by BFS over generator multiplication, rejecting conflicts
        ok = True
        frontier = list(exps)
        while frontier and ok:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = mul[a][g]
                    v = (exps[a] + exps[g]) % N
                    if b in exps:
                        if exps[b] != v:
                            ok = False
                            break
                    else:
                        exps[b] = v
                        nxt.append(b)
                if not ok:
                    break
            frontier = nxt
        if not ok or len(exps) != H.order:
            continue
        # full homomorphism check
        for a in range(H.order):
            for b in range(H.order):
                if (exps[a] + exps[b] - exps[mul[a][b]]) % N:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            vec = [exps[h] for h in range(H.order)]
            key = tuple(vec)
            if key not in seen:
                seen.add(key)
                out.append(vec)
    return out


def induce_linear(H: Subgroup, exponents: list[int], N: int) -> ClassFunction:
    """Induced character Ind_H^G(lambda) where lambda(h) = zeta_N^e(h)."""
    G = H.parent
    mul, inv = G.mul, G.inv
    idx = H.index_of
    values = []
    for g in range(G.order):
        acc = Cyclotomic.zero(N)
        for t in H.transversal:
            x = mul[inv[t]][mul[g][t]]
            if x in idx:
                acc = acc + Cyclotomic.root(N, exponents[idx[x]])
        values.append(acc)
    return ClassFunction(G, values)


def _subgroup_sources(G: FiniteGroup) -> list[Subgroup]:
    """All subgroups reachable as closures of <=2 elements (plus G itself),
    deduplicated, largest first."""
    if G.order > MAX_ENUM_ORDER:
        raise ValueError(
            f"subgroup enumeration capped at order {MAX_ENUM_ORDER}; "
            "supply induction sources explicitly")
    found: dict[frozenset, Subgroup] = {}
    whole = subgroup_closure(G, list(G.generators))
    found[frozenset(whole.member_set)] = whole
    reps: list[int] = []
    for g in range(1, G.order):
        H = subgroup_closure(G, [g])
        key = frozenset(H.member_set)
        if key not in found:
            found[key] = H
            reps.append(g)
    for a, b in itertools.combinations(reps, 2):
        H = subgroup_closure(G, [a, b])
        key = frozenset(H.member_set)
        if key not in found:
            found[key] = H
    return sorted(found.values(), key=lambda s: -s.order)


def irreducible_characters(G: FiniteGroup,
                           sources: Optional[list[Subgroup]] = None
                           ) -> list[ClassFunction]:
    """Complete list of irreducible characters, by monomial induction.

    Raises if the sum-of-squares or orthonormality certificate fails
    (which signals a non-monomial input or an exhausted search)."""
    N = G.exponent()
    if sources is None:
        sources = _subgroup_sources(G)
    irreducibles: list[ClassFunction] = []
    seen: set[tuple] = set()
    total = 0
    for H in sources:
        if total == G.order:
            break
        if H.index ** 2 > G.order - total:
            continue
        for exps in linear_character_exponents(H.as_group(), N):
            chi = induce_linear(H, exps, N)
            key = chi.value_key()
            if key in seen:
                continue
            if chi.norm() == 1:
                seen.add(key)
                irreducibles.append(chi)
                total += chi.degree() ** 2
                if total == G.order:
                    break
    if total != G.order:
        raise ValueError(
            f"character search incomplete: sum of squares {total} != {G.order}")
    for i, a in enumerate(irreducibles):
        for j, b in enumerate(irreducibles):
            if a.inner(b) != (1 if i == j else 0):
                raise ValueError("orthonormality certificate failed")
    irreducibles.sort(key=lambda c: (c.degree(), c.value_key()))
    return irreducibles


# ---------------------------------------------------------------------------
# Chern-class restrictions to order-p subgroups and pc
# ---------------------------------------------------------------------------


@dataclass
class ChernReport:
    subgroup: Subgroup
    exponent_set: set = field(default_factory=set)
    m: Optional[int] = None  # None marks an empty exponent set


def _eigenvalue_multiplicities(chi: ClassFunction, g: int, p: int) -> list[int]:
    """a_j = multiplicity of zeta_p^j in chi restricted to <g>, |g| = p."""
    G = chi.group
    N = chi.conductor
    out = []
    for j in range(p):
        acc = Cyclotomic.zero(N)
        gk = 0
        for k in range(p):
            acc = acc + chi.values[gk] * Cyclotomic.root(N, (-j * k * (N // p)) % N)
            gk = G.mul[gk][g]
        a = acc.scale(Fraction(1, p)).as_rational()
        if a.denominator != 1 or a < 0:
            raise ArithmeticError("eigenvalue multiplicity is not a "
                                  "non-negative integer")
        out.append(int(a))
    if sum(out) != chi.degree():
        raise ArithmeticError("multiplicities do not sum to the degree")
    return out


def _poly_mul_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def chern_exponents_at(G: FiniteGroup, C: Subgroup,
                       irreducibles: Optional[list[ClassFunction]] = None
                       ) -> ChernReport:
    """Degrees (in the H^2 generator u of the order-p subgroup C) where
    restricted total Chern classes of irreducibles have nonzero
    coefficients, and their gcd m."""
    p = C.order
    if p < 2 or any(p % d == 0 for d in range(2, p)):
        raise ValueError("C must have prime order")
    g = C.members[1]
    if irreducibles is None:
        irreducibles = irreducible_characters(G)
    exponents: set[int] = set()
    for chi in irreducibles:
        mult = _eigenvalue_multiplicities(chi, g, p)
        total = [1]
        for j in range(1, p):
            for _ in range(mult[j]):
                total = _poly_mul_mod_p(total, [1, j], p)
        exponents.update(d for d, c in enumerate(total) if c and d > 0)
    m = None
    if exponents:
        m = 0
        for d in exponents:
            m = gcd(m, d)
    return ChernReport(C, exponents, m)


@dataclass
class PcReport:
    pc: int
    per_class: list[ChernReport]
    alternative_lcm_2m: int  # LCM{2m} form recorded alongside 2*LCM{m}


def pc_report(G: FiniteGroup, p: int) -> PcReport:
    if G.order % p != 0:
        raise ValueError("p must divide the group order")
    irreducibles = irreducible_characters(G)
    reports = [chern_exponents_at(G, C, irreducibles)
               for C in order_p_subgroup_classes(G, p)]
    ms = [r.m for r in reports if r.m]
    lcm_m = 1
    for m in ms:
        lcm_m = lcm_m * m // gcd(lcm_m, m)
    alt = 1
    for m in ms:
        alt = alt * (2 * m) // gcd(alt, 2 * m)
    return PcReport(2 * lcm_m, reports, alt if ms else 2)


def pc(G: FiniteGroup, p: int) -> int:
    return pc_report(G, p).pc
