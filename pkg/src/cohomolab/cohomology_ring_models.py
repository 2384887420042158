"""Mod-p models of the presented integral cohomology rings of the groups
P(n) of order p^n and exponent p (n = 3), with monomial bases, rewriting
multiplication, automorphism actions, fixed subrings, and named
restriction maps to rank-two elementary abelian subgroups.

Monomials are tuples (z, a, b, mu, nu, chi) standing for
zeta^z alpha^a beta^b mu^mu nu^nu chi_chi in normal form:

  * chi > 0 excludes every other generator besides zeta;
  * nu = 1 forces b = 0 (beta nu rewrites to alpha mu);
  * mu = 1 requires a = 0 or b <= p-2;
  * mu = nu = 0 requires a = 0 or b <= p-1.

Degrees: alpha, beta = 2; mu, nu = 3; chi_i = 2i (2 <= i <= p-1,
chi_1 is absent for n = 3); zeta = 2p.  The scalar parameter lam is the
undetermined unit in mu*nu = lam*chi_3 (p > 3); for p = 3 the product
mu*nu vanishes mod 3.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .exact_linalg import Echelon, SparseMatrix, kernel_mod_p
from .invariant_rings import (
    GradedAlgebra,
    HELD5_MATRICES,
    _mat_det,
    in_span,
    subalgebra_basis,
    subalgebra_dims,
)

Monomial = tuple  # (z, a, b, mu, nu, chi)
Element = dict    # Monomial -> scalar mod p

GENERATOR_ORDER = ("alpha", "beta", "mu", "nu", "zeta")  # plus chi_i


class RingModel:
    """The mod-p reduction of the presented cohomology ring of P(3)."""

    def __init__(self, p: int, n: int = 3, lam: int = 1):
        if p < 3 or any(p % d == 0 for d in range(2, p)):
            raise ValueError("p must be an odd prime")
        if n != 3:
            raise ValueError("only the order-p^3 model is implemented")
        if lam % p == 0:
            raise ValueError("lam must be a unit mod p")
        self.p = p
        self.n = n
        self.lam = lam % p
        self._basis_cache: dict[int, list[Monomial]] = {}
        self._index_cache: dict[int, dict[Monomial, int]] = {}

    # -- monomials ----------------------------------------------------------

    def monomial_degree(self, m: Monomial) -> int:
        z, a, b, mu, nu, chi = m
        return 2 * self.p * z + 2 * (a + b + chi) + 3 * (mu + nu)

    def basis(self, d: int) -> list[Monomial]:
        if d not in self._basis_cache:
            p = self.p
            out = []
            for z in range(d // (2 * p) + 1):
                rem = d - 2 * p * z
                if rem == 0:
                    out.append((z, 0, 0, 0, 0, 0))
                    continue
                if rem % 2 == 0:
                    j = rem // 2
                    if 2 <= j <= p - 1:
                        out.append((z, 0, 0, 0, 0, j))
                    for b in range(j + 1):
                        a = j - b
                        if a == 0 or b <= p - 1:
                            out.append((z, a, b, 0, 0, 0))
                else:
                    if rem < 3:
                        continue
                    j = (rem - 3) // 2
                    out.append((z, j, 0, 0, 1, 0))
                    for b in range(j + 1):
                        a = j - b
                        if a == 0 or b <= p - 2:
                            out.append((z, a, b, 1, 0, 0))
            out.sort()
            self._basis_cache[d] = out
            self._index_cache[d] = {m: i for i, m in enumerate(out)}
        return self._basis_cache[d]

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def index_of(self, m: Monomial) -> int:
        d = self.monomial_degree(m)
        self.basis(d)
        return self._index_cache[d][m]

    # -- elements -----------------------------------------------------------

    def one(self) -> Element:
        return {(0, 0, 0, 0, 0, 0): 1}

    def gen(self, name: str) -> Element:
        if name == "alpha":
            return {(0, 1, 0, 0, 0, 0): 1}
        if name == "beta":
            return {(0, 0, 1, 0, 0, 0): 1}
        if name == "mu":
            return {(0, 0, 0, 1, 0, 0): 1}
        if name == "nu":
            return {(0, 0, 0, 0, 1, 0): 1}
        if name == "zeta":
            return {(1, 0, 0, 0, 0, 0): 1}
        if name.startswith("chi_"):
            i = int(name[4:])
            if not 2 <= i <= self.p - 1:
                raise ValueError(f"no generator chi_{i} in this model")
            return {(0, 0, 0, 0, 0, i): 1}
        raise ValueError(f"unknown generator {name!r}")

    def generator_names(self) -> list[str]:
        return list(GENERATOR_ORDER) + \
            [f"chi_{i}" for i in range(2, self.p)]

    def add(self, u: Element, v: Element) -> Element:
        out = dict(u)
        for m, c in v.items():
            nc = (out.get(m, 0) + c) % self.p
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
        return out

    def scale(self, u: Element, c: int) -> Element:
        c %= self.p
        if not c:
            return {}
        return {m: (c * v) % self.p for m, v in u.items()}

    def mul(self, u: Element, v: Element) -> Element:
        out: Element = {}
        for (z1, a1, b1, m1, n1, c1), x1 in u.items():
            for (z2, a2, b2, m2, n2, c2), x2 in v.items():
                coeff = x1 * x2
                if n1 and m2:  # move the second mu past the first nu
                    coeff = -coeff
                chis = tuple(sorted(c for c in (c1, c2) if c))
                self._reduce_into(out, z1 + z2, a1 + a2, b1 + b2,
                                  m1 + m2, n1 + n2, chis, coeff)
        return {m: c for m, c in out.items() if c}

    def _reduce_into(self, out: Element, z: int, a: int, b: int,
                     mu: int, nu: int, chis: tuple, coeff: int) -> None:
        coeff %= self.p
        if coeff == 0 or mu > 1 or nu > 1:
            return
        p = self.p
        if chis and (a or b or mu or nu):
            c, rest = chis[0], chis[1:]
            if c < p - 1:
                return  # alpha/beta/mu/nu times chi_i vanishes for i < p-1
            if a:
                self._reduce_into(out, z, a + p - 1, b, mu, nu, rest, -coeff)
            elif b:
                self._reduce_into(out, z, a, b + p - 1, mu, nu, rest, -coeff)
            elif mu:
                self._reduce_into(out, z, a, b + p - 1, 1, nu, rest, -coeff)
            else:
                self._reduce_into(out, z, a + p - 1, b, mu, 1, rest, -coeff)
            return
        if len(chis) >= 2:
            (c1, c2), rest = chis[:2], chis[2:]
            if c1 == p - 1 and c2 == p - 1:
                for da, db, s in ((2 * p - 2, 0, 1), (0, 2 * p - 2, 1),
                                  (p - 1, p - 1, -1)):
                    self._reduce_into(out, z, a + da, b + db, mu, nu,
                                      rest, s * coeff)
            return  # all other chi products are multiples of p
        if mu and nu:
            if p > 3:
                self._reduce_into(out, z, a, b, 0, 0, chis + (3,),
                                  coeff * self.lam)
            return  # mu*nu is a multiple of 3 for p = 3
        if nu and b:
            self._reduce_into(out, z, a + 1, b - 1, 1, 0, chis, coeff)
            return
        if mu:
            while a >= 1 and b >= p - 1:
                a, b = a + p - 1, b - (p - 1)
        elif not nu:
            while a >= 1 and b >= p:
                a, b = a + p - 1, b - (p - 1)
        m = (z, a, b, mu, nu, chis[0] if chis else 0)
        nc = (out.get(m, 0) + coeff) % self.p
        if nc:
            out[m] = nc
        else:
            out.pop(m, None)

    def element_degree(self, u: Element) -> Optional[int]:
        degs = {self.monomial_degree(m) for m in u}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop()

    # -- certification ------------------------------------------------------

    def random_monomial(self, rng: random.Random,
                        max_degree: int) -> Element:
        while True:
            d = rng.randrange(max_degree + 1)
            basis = self.basis(d)
            if basis:
                return {rng.choice(basis): rng.randrange(1, self.p)}

    def certify(self, samples: int = 500, seed: int = 0) -> None:
        """Randomized associativity and graded-commutativity check of the
        rewriting multiplication on basis monomials of degree <= 4p."""
        rng = random.Random(seed)
        D = 4 * self.p
        for _ in range(samples):
            u = self.random_monomial(rng, D)
            v = self.random_monomial(rng, D)
            w = self.random_monomial(rng, D)
            if self.mul(self.mul(u, v), w) != self.mul(u, self.mul(v, w)):
                raise ArithmeticError(f"associativity fails on {u},{v},{w}")
            du, dv = self.element_degree(u), self.element_degree(v)
            sign = -1 if (du * dv) % 2 else 1
            if self.mul(u, v) != self.scale(self.mul(v, u), sign):
                raise ArithmeticError(f"graded commutativity fails: {u},{v}")

    def relation_checks(self) -> list[tuple[str, bool]]:
        """Each defining relation, evaluated through the multiplication."""
        g = {name: self.gen(name) for name in self.generator_names()}
        p = self.p
        pw = lambda e, n: self.power(e, n)
        checks = [
            ("alpha*mu = beta*nu",
             self.mul(g["alpha"], g["mu"]) == self.mul(g["beta"], g["nu"])),
            ("alpha^p*beta = beta^p*alpha",
             self.mul(pw(g["alpha"], p), g["beta"])
             == self.mul(pw(g["beta"], p), g["alpha"])),
            ("alpha^p*mu = beta^p*nu",
             self.mul(pw(g["alpha"], p), g["mu"])
             == self.mul(pw(g["beta"], p), g["nu"])),
            ("mu^2 = 0", self.mul(g["mu"], g["mu"]) == {}),
            ("nu^2 = 0", self.mul(g["nu"], g["nu"]) == {}),
            ("mu*nu = -nu*mu",
             self.mul(g["mu"], g["nu"])
             == self.scale(self.mul(g["nu"], g["mu"]), -1)),
        ]
        top = f"chi_{p - 1}"
        for x, px in (("alpha", pw(g["alpha"], p)), ("beta", pw(g["beta"], p))):
            for i in range(2, p - 1):
                checks.append((f"{x}*chi_{i} = 0",
                               self.mul(g[x], g[f"chi_{i}"]) == {}))
            checks.append((f"{x}*chi_{p-1} = -{x}^p",
                           self.mul(g[x], g[top]) == self.scale(px, -1)))
        for x, other in (("mu", "beta"), ("nu", "alpha")):
            for i in range(2, p - 1):
                checks.append((f"{x}*chi_{i} = 0",
                               self.mul(g[x], g[f"chi_{i}"]) == {}))
            checks.append(
                (f"{x}*chi_{p-1} = -{other}^(p-1)*{x}",
                 self.mul(g[x], g[top])
                 == self.scale(self.mul(pw(g[other], p - 1), g[x]), -1)))
        for i in range(2, p):
            for j in range(i, p):
                if i == p - 1 and j == p - 1:
                    expected = self.add(
                        self.add(pw(g["alpha"], 2 * p - 2),
                                 pw(g["beta"], 2 * p - 2)),
                        self.scale(self.mul(pw(g["alpha"], p - 1),
                                            pw(g["beta"], p - 1)), -1))
                    checks.append(("chi_(p-1)^2 relation",
                                   self.mul(g[top], g[top]) == expected))
                else:
                    checks.append((f"chi_{i}*chi_{j} = 0",
                                   self.mul(g[f"chi_{i}"],
                                            g[f"chi_{j}"]) == {}))
        mn = self.mul(g["mu"], g["nu"])
        if p == 3:
            checks.append(("mu*nu = 0 (p=3)", mn == {}))
        else:
            checks.append(("mu*nu = lam*chi_3",
                           mn == self.scale(g["chi_3"], self.lam)))
        return checks

    def power(self, u: Element, n: int) -> Element:
        acc = self.one()
        for _ in range(n):
            acc = self.mul(acc, u)
        return acc


def build_model(p: int, n: int = 3, lam: int = 1,
                samples: int = 500) -> RingModel:
    model = RingModel(p, n, lam)
    model.certify(samples=samples)
    bad = [name for name, ok in model.relation_checks() if not ok]
    if bad:
        raise ArithmeticError(f"relations fail in the model: {bad}")
    return model


# ---------------------------------------------------------------------------
# Ring automorphisms
# ---------------------------------------------------------------------------


class RingAutomorphism:
    """A ring endomorphism given by images of the generators, certified
    multiplicative on random basis-monomial pairs at construction."""

    def __init__(self, model: RingModel, images: dict[str, Element],
                 check: bool = True, samples: int = 100):
        self.model = model
        self.images = {name: dict(images[name])
                       for name in model.generator_names()}
        for name, img in self.images.items():
            d = model.element_degree(img)
            if d is not None and \
                    d != model.element_degree(model.gen(name)):
                raise ValueError(f"image of {name} has the wrong degree")
        if check:
            self._certify(samples)

    @classmethod
    def from_matrix(cls, model: RingModel, matrix, j: int,
                    check: bool = True) -> "RingAutomorphism":
        """Images per the presented ring's automorphism rule: the matrix
        (n1 n2 / n3 n4) acts on <alpha, beta>, the central scalar j gives
        chi_i -> j^i chi_i, zeta -> j^p zeta, mu -> j(n4 mu + n3 nu),
        nu -> j(n2 mu + n1 nu)."""
        p = model.p
        (n1, n2), (n3, n4) = matrix
        g = {name: model.gen(name) for name in model.generator_names()}
        images = {
            "alpha": model.add(model.scale(g["alpha"], n1),
                               model.scale(g["beta"], n2)),
            "beta": model.add(model.scale(g["alpha"], n3),
                              model.scale(g["beta"], n4)),
            "mu": model.scale(model.add(model.scale(g["mu"], n4),
                                        model.scale(g["nu"], n3)), j),
            "nu": model.scale(model.add(model.scale(g["mu"], n2),
                                        model.scale(g["nu"], n1)), j),
            "zeta": model.scale(g["zeta"], pow(j % p, p, p)),
        }
        for i in range(2, p):
            images[f"chi_{i}"] = model.scale(g[f"chi_{i}"],
                                             pow(j % p, i, p))
        return cls(model, images, check=check)

    def _certify(self, samples: int) -> None:
        model = self.model
        rng = random.Random(11)
        for _ in range(samples):
            u = model.random_monomial(rng, 4 * model.p)
            v = model.random_monomial(rng, 4 * model.p)
            if self.apply(model.mul(u, v)) != \
                    model.mul(self.apply(u), self.apply(v)):
                raise ArithmeticError(
                    f"automorphism is not multiplicative on {u}, {v}")

    def apply(self, u: Element) -> Element:
        model = self.model
        out: Element = {}
        for (z, a, b, mu, nu, chi), c in u.items():
            term = model.one()
            for name, e in (("zeta", z), ("alpha", a), ("beta", b),
                            ("mu", mu), ("nu", nu)):
                for _ in range(e):
                    term = model.mul(term, self.images[name])
            if chi:
                term = model.mul(term, self.images[f"chi_{chi}"])
            out = model.add(out, model.scale(term, c))
        return out

    def compose(self, other: "RingAutomorphism") -> "RingAutomorphism":
        """self after other."""
        images = {name: self.apply(img)
                  for name, img in other.images.items()}
        return RingAutomorphism(self.model, images, check=False)


def named_action(model: RingModel, name: str) -> list[RingAutomorphism]:
    p, g = model.p, model.gen
    if name == "C3-shear-3.4":
        return [RingAutomorphism.from_matrix(model, ((1, 0), (1, 1)), 1)]
    if name == "D8-5.10":
        if p != 3:
            raise ValueError("D8-5.10 requires p = 3")
        # reflections (determinant -1) and the rotation (determinant 1);
        # the scalar j is the determinant in every case
        return [
            RingAutomorphism.from_matrix(model, ((-1, 0), (0, 1)), -1),
            RingAutomorphism.from_matrix(model, ((1, 0), (0, -1)), -1),
            RingAutomorphism.from_matrix(model, ((0, -1), (1, 0)), 1),
        ]
    if name == "S3xC3-5.12":
        if p != 7:
            raise ValueError("S3xC3-5.12 requires p = 7")
        return [
            RingAutomorphism.from_matrix(model, ((2, 0), (0, 1)), 2),
            RingAutomorphism.from_matrix(model, ((1, 0), (0, 2)), 2),
            RingAutomorphism.from_matrix(model, ((0, 1), (1, 0)), -1),
        ]
    if name == "C4A4-5.8":
        if p != 5:
            raise ValueError("C4A4-5.8 requires p = 5")
        return [RingAutomorphism.from_matrix(model, M, _mat_det(M, 5))
                for M in HELD5_MATRICES]
    raise ValueError(f"unknown action {name!r}")


# ---------------------------------------------------------------------------
# Fixed subrings
# ---------------------------------------------------------------------------


def fixed_subring(model: RingModel, autos: Sequence[RingAutomorphism],
                  max_degree: int) -> list[list[Element]]:
    """Per-degree bases of the common fixed subspace: kernel of the
    stacked (action - identity) on the monomial basis."""
    if max_degree > 12 * model.p:
        raise ValueError("max_degree capped at 12p")
    out = []
    for d in range(max_degree + 1):
        basis = model.basis(d)
        n = len(basis)
        if n == 0:
            out.append([])
            continue
        acc: dict[tuple[int, int], int] = {}
        for gi, phi in enumerate(autos):
            for j, m in enumerate(basis):
                img = phi.apply({m: 1})
                img[m] = img.get(m, 0) - 1
                for mm, c in img.items():
                    if c % model.p:
                        acc[(gi * n + model.index_of(mm), j)] = c
        mat = SparseMatrix(n * max(1, len(autos)), n,
                           [(i, j, v) for (i, j), v in acc.items()],
                           p=model.p)
        out.append([{basis[j]: v for j, v in enumerate(vec) if v}
                    for vec in kernel_mod_p(mat)])
    return out


def fixed_dims(model: RingModel, autos: Sequence[RingAutomorphism],
               max_degree: int) -> list[int]:
    return [len(b) for b in fixed_subring(model, autos, max_degree)]


# ---------------------------------------------------------------------------
# Published fixed-ring checks
# ---------------------------------------------------------------------------


@dataclass
class FixedRingReport:
    max_degree: int
    fixed_dims: list[int]
    generated_dims: list[int]
    extra: dict = field(default_factory=dict)
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = (self.fixed_dims == self.generated_dims
                       and all(self.extra.get("span_checks", [True])))


def check_lemma_3_4(p: int, max_degree: int,
                    trivial_action: bool = False) -> FixedRingReport:
    """Even-degree fixed subring of the shear (beta -> beta + alpha,
    mu -> mu + nu) vs the closure of alpha, chi_i, zeta, and
    beta^m(beta^p - alpha^(p-1)*beta)."""
    model = build_model(p, samples=200)
    if trivial_action:
        autos = [RingAutomorphism.from_matrix(model, ((1, 0), (0, 1)), 1)]
    else:
        autos = named_action(model, "C3-shear-3.4")
    alpha, beta = model.gen("alpha"), model.gen("beta")
    core = model.add(model.power(beta, p),
                     model.scale(model.mul(model.power(alpha, p - 1), beta),
                                 -1))
    gens = [alpha, model.gen("zeta")] + \
        [model.gen(f"chi_{i}") for i in range(2, p)]
    m = 0
    while 2 * (m + p) <= max_degree:
        gens.append(model.mul(model.power(beta, m), core))
        m += 1
    fixed = fixed_dims(model, autos, max_degree)
    closed = subalgebra_dims(model, gens, max_degree)
    evens = list(range(0, max_degree + 1, 2))
    return FixedRingReport(
        max_degree,
        [fixed[d] for d in evens],
        [closed[d] for d in evens],
        extra={"degrees": evens},
    )


def _d8_span_elements(model: RingModel, d: int) -> list[Element]:
    """Spanning monomials of the D_8-fixed subring at p=3 (the published
    list, with the odd family's relative sign corrected to match the
    determinant-consistent rotation action): zeta^{2i}chi_2,
    zeta^{2i+1}(alpha^{2j+1}nu + beta^{2j+1}mu),
    zeta^{2i}(alpha^{2j}+beta^{2j}), zeta^{2i}alpha^{2j}beta^2 (j >= 1)."""
    out = []
    for i in range(d // 12 + 1):
        rem = d - 12 * i
        if rem == 4:
            out.append({(2 * i, 0, 0, 0, 0, 2): 1})
        if rem == 0:
            out.append({(2 * i, 0, 0, 0, 0, 0): 1})
        if rem % 4 == 0 and rem >= 4:
            j = rem // 4
            out.append({(2 * i, 2 * j, 0, 0, 0, 0): 1,
                        (2 * i, 0, 2 * j, 0, 0, 0): 1})
        if rem >= 8 and (rem - 4) % 4 == 0:
            j = (rem - 4) // 4
            out.append({(2 * i, 2 * j, 2, 0, 0, 0): 1})
    for i in range((d - 6) // 12 + 1) if d >= 6 else []:
        rem = d - 6 * (2 * i + 1)
        if rem >= 5 and (rem - 5) % 4 == 0:
            j = (rem - 5) // 4
            out.append({(2 * i + 1, 2 * j + 1, 0, 0, 1, 0): 1,
                        (2 * i + 1, 0, 2 * j + 1, 1, 0, 0): 1})
    return out


def check_theorem_5_10(max_degree: int = 24) -> FixedRingReport:
    """p=3: the D_8-fixed subring equals both the published monomial span
    and the closure of the five stated generators, degree by degree."""
    model = build_model(3, samples=200)
    autos = named_action(model, "D8-5.10")
    fixed = fixed_subring(model, autos, max_degree)
    g = model.gen
    a2b2 = model.add(model.power(g("alpha"), 2), model.power(g("beta"), 2))
    gens = [
        g("chi_2"),
        a2b2,
        model.mul(model.power(g("alpha"), 2), model.power(g("beta"), 2)),
        model.mul(g("zeta"),
                  model.add(model.mul(g("alpha"), g("nu")),
                            model.mul(g("beta"), g("mu")))),
        model.power(g("zeta"), 2),
    ]
    closed = subalgebra_dims(model, gens, max_degree)
    span_checks = []
    span_dims = []
    for d in range(max_degree + 1):
        span = _d8_span_elements(model, d)
        ech = Echelon(p=3)
        count = sum(1 for e in span
                    if ech.add({model.index_of(m): c for m, c in e.items()}))
        span_dims.append(count)
        # the published list is a basis in even degrees; in odd degrees it
        # is an independent subset (products of the stated generators fill
        # in the rest, as the closure comparison certifies)
        ok = all(in_span(model, fixed[d], e) for e in span)
        if d % 2 == 0:
            ok = ok and count == len(fixed[d])
        span_checks.append(ok)
    return FixedRingReport(
        max_degree, [len(b) for b in fixed], closed,
        extra={"span_dims": span_dims, "span_checks": span_checks},
    )


def check_theorem_5_12(max_degree: int = 60) -> FixedRingReport:
    """p=7: the fifteen stated elements generate the fixed subring of the
    full S_3 x C_3 action, degree by degree."""
    model = build_model(7, samples=200)
    autos = named_action(model, "S3xC3-5.12")
    fixed = fixed_dims(model, autos, max_degree)
    closed = subalgebra_dims(model, theorem_5_12_generators(model),
                             max_degree)
    return FixedRingReport(max_degree, fixed, closed)


def theorem_5_12_generators(model: RingModel) -> list[Element]:
    g, mul, pw, sc = model.gen, model.mul, model.power, model.scale
    add = model.add
    a, b, mu, nu, z = g("alpha"), g("beta"), g("mu"), g("nu"), g("zeta")
    a3 = pw(a, 3)
    b3 = pw(b, 3)
    return [
        add(a3, b3),
        mul(a3, b3),
        g("chi_6"),
        add(mul(mul(pw(a, 5), b), mu),
            sc(mul(mul(pw(a, 2), pw(b, 4)), mu), -1)),
        mul(z, mul(a, mu)),
        mul(z, g("chi_5")),
        mul(z, add(mul(pw(a, 5), pw(b, 2)),
                   sc(mul(pw(a, 2), pw(b, 5)), -1))),
        mul(pw(z, 2), mul(a, b)),
        mul(pw(z, 2), add(mul(pw(a, 2), nu),
                          sc(mul(pw(b, 2), mu), -1))),
        mul(pw(z, 2), g("chi_4")),
        mul(pw(z, 3), g("chi_3")),
        mul(pw(z, 3), add(a3, sc(b3, -1))),
        mul(pw(z, 4), g("chi_2")),
        mul(pw(z, 5), add(mul(pw(a, 2), nu), mul(pw(b, 2), mu))),
        pw(z, 6),
    ]


def theorem_5_14_generators(model: RingModel) -> list[Element]:
    g, mul, pw, sc = model.gen, model.mul, model.power, model.scale
    add = model.add
    a, b, mu, nu, z = g("alpha"), g("beta"), g("mu"), g("nu"), g("zeta")
    return [
        add(pw(a, 3), pw(b, 3)),
        add(g("chi_6"), sc(mul(pw(a, 3), pw(b, 3)), -1)),
        mul(z, mul(a, mu)),
        mul(z, g("chi_5")),
        mul(pw(z, 2), mul(a, b)),
        mul(pw(z, 2), add(mul(pw(a, 2), nu), sc(mul(pw(b, 2), mu), -1))),
        mul(pw(z, 2), g("chi_4")),
        mul(pw(z, 3), g("chi_3")),
        mul(pw(z, 3), add(pw(a, 3), sc(pw(b, 3), -1))),
        mul(pw(z, 4), g("chi_2")),
        mul(pw(z, 5), add(mul(pw(a, 2), nu), mul(pw(b, 2), mu))),
        add(pw(z, 6), sc(mul(pw(a, 39), pw(b, 3)), -1)),
    ]


# ---------------------------------------------------------------------------
# Restriction maps
# ---------------------------------------------------------------------------


class RestrictionMap:
    """Generator-image map from a RingModel into a GradedAlgebra,
    certified multiplicative on random basis-monomial pairs."""

    def __init__(self, model: RingModel, target: GradedAlgebra,
                 images: dict[str, Element], check: bool = True,
                 samples: int = 100):
        self.model = model
        self.target = target
        self.images = {name: dict(images[name])
                       for name in model.generator_names()}
        if check:
            rng = random.Random(13)
            for _ in range(samples):
                u = model.random_monomial(rng, 4 * model.p)
                v = model.random_monomial(rng, 4 * model.p)
                if self.apply(model.mul(u, v)) != \
                        target.mul(self.apply(u), self.apply(v)):
                    raise ArithmeticError(
                        f"restriction is not multiplicative on {u}, {v}")

    def apply(self, u: Element) -> Element:
        model, target = self.model, self.target
        out: Element = {}
        for (z, a, b, mu, nu, chi), c in u.items():
            term = target.one()
            for name, e in (("zeta", z), ("alpha", a), ("beta", b),
                            ("mu", mu), ("nu", nu)):
                for _ in range(e):
                    term = target.mul(term, self.images[name])
            if chi:
                term = target.mul(term, self.images[f"chi_{chi}"])
            out = target.add(out, target.scale(term, c))
        return out


def apply_restriction(rmap: RestrictionMap, u: Element) -> Element:
    return rmap.apply(u)


def named_restriction(model: RingModel, name: str) -> RestrictionMap:
    p = model.p
    if name == "H-5.10":
        if p != 3:
            raise ValueError("H-5.10 requires p = 3")
        # target Z[beta', gamma] (x) Lambda[delta] mod 3, degrees 2, 2, 3
        T = GradedAlgebra(3, [2, 2], [3])
        bp, gam, dl = T.variable(0), T.variable(1), T.ext_variable(0)
        bp2 = T.mul(bp, bp)
        images = {
            "alpha": {},
            "beta": bp,
            "mu": dl,
            "nu": {},
            "zeta": T.add(T.power(gam, 3),
                          T.scale(T.mul(bp2, gam), -1)),
            "chi_2": T.scale(bp2, -1),
        }
        return RestrictionMap(model, T, images)
    if name == "K-5.13":
        if p != 7:
            raise ValueError("K-5.13 requires p = 7")
        # target F_7[zeta'(14), eps(2)] (x) Lambda[delta(3)]
        T = GradedAlgebra(7, [14, 2], [3])
        zp, eps, dl = T.variable(0), T.variable(1), T.ext_variable(0)
        images = {
            "alpha": eps,
            "beta": T.scale(eps, -1),
            "mu": dl,
            "nu": T.scale(dl, -1),
            "zeta": zp,
            "chi_6": T.scale(T.power(eps, 6), -1),
        }
        for i in range(2, 6):
            images[f"chi_{i}"] = {}
        return RestrictionMap(model, T, images)
    raise ValueError(f"unknown restriction {name!r}")


@dataclass
class MembershipReport:
    degrees: list[int]
    in_subring: list[bool]
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = all(self.in_subring)


def check_theorem_5_14(model: Optional[RingModel] = None) -> MembershipReport:
    """Each of the twelve stated elements restricts (via the K map) into
    the subring generated by zeta'*eps, zeta'^6 + eps^42, and delta."""
    model = model or build_model(7, samples=200)
    rmap = named_restriction(model, "K-5.13")
    T = rmap.target
    zp, eps, dl = T.variable(0), T.variable(1), T.ext_variable(0)
    s_gens = [T.mul(zp, eps),
              T.add(T.power(zp, 6), T.power(eps, 42)),
              dl]
    gens = theorem_5_14_generators(model)
    top = max(model.element_degree(g) for g in gens)
    pool = subalgebra_basis(T, s_gens, top)
    degrees, hits = [], []
    for g in gens:
        d = model.element_degree(g)
        img = rmap.apply(g)
        degrees.append(d)
        hits.append(not img or in_span(T, pool[d], img))
    return MembershipReport(degrees, hits)
