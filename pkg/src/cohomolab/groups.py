"""Finite groups as explicit multiplication tables.

Groups are built from polycyclic normal forms A^a B^b C^c ... with
hand-derived collection rules per family, then tabulated.  Element 0 is
always the identity and numbering is lexicographic in the exponent
vector, so matrices and cache keys are reproducible.

Families (all with p an odd prime unless noted):
  P(n):    A^p = B^p = C^{p^(n-2)} = [A,C] = [B,C] = 1, [A,B] = C^{p^(n-3)}
  M(n):    A^p = B^{p^(n-1)} = 1, [B,A] = B^{p^(n-2)}
  B(n,e):  A^p = B^p = C^{p^(n-2)} = [B,C] = 1, [A,C^-1] = B,
           [B,A] = C^{e p^(n-3)}   (convention h^g = g^-1 h g)
  G_a1:    A^{p^a} = B^p = C^p = [A,C] = [B,C] = 1, [A,B] = C
  cyclic, direct products, and (C_p)^k semidirect a matrix group over F_p.
"""

from __future__ import annotations

import hashlib
import itertools
import random
from typing import Iterable, Optional, Sequence

MAX_TABLE_ORDER = 4096


class FiniteGroup:
    """Immutable finite group on indices 0..order-1 with 0 = identity."""

    __slots__ = ("order", "mul", "inv", "generators", "name", "labels", "_digest")

    def __init__(self, mul: list[list[int]], generators: Sequence[int],
                 name: str, labels: Optional[list[str]] = None):
        order = len(mul)
        if order == 0 or order > MAX_TABLE_ORDER:
            raise ValueError(f"group order {order} outside supported range")
        self.order = order
        self.mul = mul
        self.name = name
        self.labels = labels
        # identity / inverses
        for g in range(order):
            if mul[0][g] != g or mul[g][0] != g:
                raise ValueError("element 0 is not an identity")
        inv = [None] * order
        for g in range(order):
            row = mul[g]
            for h in range(order):
                if row[h] == 0:
                    inv[g] = h
                    break
            if inv[g] is None or mul[inv[g]][g] != 0:
                raise ValueError(f"no two-sided inverse for element {g}")
        self.inv = inv
        # associativity spot-check on random triples
        rng = random.Random(0xC0C0)
        trials = min(200, order ** 3)
        for _ in range(trials):
            a, b, c = (rng.randrange(order) for _ in range(3))
            if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                raise ValueError("multiplication table is not associative")
        self.generators = tuple(generators)
        gen = set(self.generators) | {0}
        frontier = list(gen)
        while frontier:
            g = frontier.pop()
            for s in self.generators:
                for h in (mul[g][s], mul[s][g]):
                    if h not in gen:
                        gen.add(h)
                        frontier.append(h)
        if len(gen) != order:
            raise ValueError("declared generators do not generate the group")
        self._digest = None

    def conj(self, g: int, h: int) -> int:
        """h^g = g^-1 h g."""
        return self.mul[self.mul[self.inv[g]][h]][g]

    def commutator(self, g: int, h: int) -> int:
        """[g, h] = g^-1 h^-1 g h."""
        return self.mul[self.mul[self.mul[self.inv[g]][self.inv[h]]][g]][h]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv[g], -k
        out = 0
        while k:
            if k & 1:
                out = self.mul[out][g]
            g = self.mul[g][g]
            k >>= 1
        return out

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mul[x][g]
            k += 1
        return k

    def exponent(self) -> int:
        from math import lcm
        out = 1
        for g in range(self.order):
            out = lcm(out, self.element_order(g))
        return out

    def is_abelian(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a]
                   for a in range(self.order) for b in range(self.order))

    def digest(self) -> str:
        """Stable hash of the multiplication table, for cache keys."""
        if self._digest is None:
            h = hashlib.sha256()
            h.update(str(self.order).encode())
            for row in self.mul:
                h.update(b",".join(str(v).encode() for v in row))
            self._digest = h.hexdigest()[:16]
        return self._digest

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


class Subgroup:
    """Subgroup given by its sorted member set plus left-coset transversal."""

    __slots__ = ("parent", "members", "member_set", "transversal", "index_of")

    def __init__(self, parent: FiniteGroup, members: Iterable[int]):
        self.parent = parent
        members = sorted(set(members))
        mset = set(members)
        mul, inv = parent.mul, parent.inv
        if 0 not in mset:
            raise ValueError("subgroup must contain the identity")
        for a in members:
            if inv[a] not in mset:
                raise ValueError("subgroup not closed under inversion")
            for b in members:
                if mul[a][b] not in mset:
                    raise ValueError("subgroup not closed under multiplication")
        if parent.order % len(members) != 0:
            raise ValueError("subgroup order does not divide group order")
        self.members = tuple(members)
        self.member_set = frozenset(mset)
        # left cosets gH; least-index representative each
        seen = [False] * parent.order
        trans = []
        for g in range(parent.order):
            if not seen[g]:
                trans.append(g)
                for h in members:
                    seen[mul[g][h]] = True
        if len(trans) * len(members) != parent.order:
            raise ValueError("coset decomposition failed")
        self.transversal = tuple(trans)
        self.index_of = {h: i for i, h in enumerate(self.members)}

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def index(self) -> int:
        return len(self.transversal)

    def coset_rep(self, g: int) -> int:
        """Least-index representative of the left coset gH."""
        mul = self.parent.mul
        return min(mul[g][h] for h in self.members)

    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone FiniteGroup (its own numbering)."""
        # renumber so the identity is 0 and order is by parent index
        idx = self.index_of
        mul = [[idx[self.parent.mul[a][b]] for b in self.members]
               for a in self.members]
        gens = [i for i in range(1, len(self.members))]
        labels = [str(m) for m in self.members]
        return FiniteGroup(mul, gens, f"{self.parent.name}|sub{len(self.members)}",
                           labels)

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent.name})"


# ---------------------------------------------------------------------------
# Family constructors (normal forms + collection rules)
# ---------------------------------------------------------------------------


def _table_from_normal_form(moduli: list[int], compose, gens_exp, name: str) -> FiniteGroup:
    """Tabulate a group whose elements are exponent vectors with the given
    moduli (lexicographic numbering) and whose product is computed by
    `compose(e1, e2) -> exponent vector`."""
    shapes = moduli
    elems = list(itertools.product(*[range(m) for m in shapes]))
    num = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    mul = [[0] * n for _ in range(n)]
    for i, e1 in enumerate(elems):
        row = mul[i]
        for j, e2 in enumerate(elems):
            row[j] = num[tuple(compose(e1, e2))]
    gens = [num[tuple(e)] for e in gens_exp]
    labels = ["*".join(f"{c}^{v}" for c, v in zip("ABCDE", e) if v) or "1"
              for e in elems]
    return FiniteGroup(mul, gens, name, labels)


def _check_odd_prime(p: int) -> None:
    if p < 3 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"p={p} must be an odd prime")


def build_P(n: int, p: int) -> FiniteGroup:
    """P(n): order p^n, exponent p; P(3) is the extraspecial group of
    exponent p (also exposed as P_2(p))."""
    _check_odd_prime(p)
    if n < 3:
        raise ValueError("P(n) needs n >= 3")
    m = p ** (n - 3)
    pc = p ** (n - 2)
    # B^b A^a = A^a B^b C^{-m a b} with C central

    def compose(e1, e2):
        a1, b1, c1 = e1
        a2, b2, c2 = e2
        return ((a1 + a2) % p, (b1 + b2) % p, (c1 + c2 - m * a2 * b1) % pc)

    G = _table_from_normal_form([p, p, pc], compose,
                                [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
                                f"P({n},p={p})")
    assert G.order == p ** n
    return G


def build_M(n: int, p: int) -> FiniteGroup:
    """M(n): order p^n, the modular group of that order."""
    _check_odd_prime(p)
    if n < 3:
        raise ValueError("M(n) needs n >= 3")
    pb = p ** (n - 1)
    r = 1 + p ** (n - 2)
    # B^A = B^r hence B^b A^a = A^a B^{b r^a}

    def compose(e1, e2):
        a1, b1 = e1
        a2, b2 = e2
        return ((a1 + a2) % p, (b1 * pow(r, a2, pb) + b2) % pb)

    G = _table_from_normal_form([p, pb], compose, [(1, 0), (0, 1)],
                                f"M({n},p={p})")
    assert G.order == p ** n
    return G


def build_B(n: int, epsilon: int, p: int) -> FiniteGroup:
    """B(n,e): order p^n; A acts on the abelian <B,C> by C -> BC and
    B -> B C^{e p^(n-3)}."""
    _check_odd_prime(p)
    if n < 4:
        raise ValueError("B(n,epsilon) needs n >= 4")
    if epsilon % p == 0:
        raise ValueError("epsilon must be nonzero mod p")
    m = p ** (n - 3)
    pc = p ** (n - 2)

    def phi(b, c):
        # conjugation of B^b C^c by A
        return ((b + c) % p, (epsilon * m * b + c) % pc)

    # precompute phi^a for a in 0..p-1 as affine maps on (b, c)
    # phi is linear: matrix [[1, 1], [e m, 1]] acting on (b, c)
    def phi_pow(a, b, c):
        for _ in range(a):
            b, c = phi(b, c)
        return b, c

    def compose(e1, e2):
        a1, b1, c1 = e1
        a2, b2, c2 = e2
        b1a, c1a = phi_pow(a2, b1, c1)
        return ((a1 + a2) % p, (b1a + b2) % p, (c1a + c2) % pc)

    G = _table_from_normal_form([p, p, pc], compose,
                                [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
                                f"B({n},{epsilon},p={p})")
    assert G.order == p ** n
    return G


def build_G_a1(a: int, p: int) -> FiniteGroup:
    """G(a,1): order p^(a+2); A of order p^a, [A,B] = C central of order p."""
    _check_odd_prime(p)
    if a < 1:
        raise ValueError("G(a,1) needs a >= 1")
    pa = p ** a

    def compose(e1, e2):
        a1, b1, c1 = e1
        a2, b2, c2 = e2
        return ((a1 + a2) % pa, (b1 + b2) % p, (c1 + c2 - a2 * b1) % p)

    G = _table_from_normal_form([pa, p, p], compose,
                                [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
                                f"G({a},1,p={p})")
    assert G.order == p ** (a + 2)
    return G


def build_cyclic(m: int) -> FiniteGroup:
    if m < 1:
        raise ValueError("cyclic order must be positive")
    mul = [[(i + j) % m for j in range(m)] for i in range(m)]
    gens = [1] if m > 1 else []
    return FiniteGroup(mul, gens, f"C{m}", [f"g^{i}" for i in range(m)])


def build_product(factors: Sequence[FiniteGroup]) -> FiniteGroup:
    if not factors:
        raise ValueError("empty product")
    orders = [G.order for G in factors]
    total = 1
    for o in orders:
        total *= o
    elems = list(itertools.product(*[range(o) for o in orders]))
    num = {e: i for i, e in enumerate(elems)}
    mul = [[0] * total for _ in range(total)]
    for i, e1 in enumerate(elems):
        row = mul[i]
        for j, e2 in enumerate(elems):
            row[j] = num[tuple(G.mul[a][b] for G, a, b in zip(factors, e1, e2))]
    gens = []
    for k, G in enumerate(factors):
        for g in G.generators:
            e = [0] * len(factors)
            e[k] = g
            gens.append(num[tuple(e)])
    name = " x ".join(G.name for G in factors)
    return FiniteGroup(mul, gens, name)


def _mat_mul(A, B, p):
    n = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) % p
                       for j in range(n)) for i in range(n))


def _mat_vec(A, v, p):
    n = len(A)
    return tuple(sum(A[i][k] * v[k] for k in range(n)) % p for i in range(n))


def build_semidirect(p: int, k: int, matrices: Sequence[Sequence[Sequence[int]]],
                     name: Optional[str] = None) -> FiniteGroup:
    """(C_p)^k semidirect the matrix group generated by `matrices` over F_p.

    Elements are pairs (v, Q) with (v, Q)(w, R) = (v + Q w, Q R).
    """
    if any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)) or p < 2:
        raise ValueError(f"p={p} must be prime")
    ident = tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))
    gens_m = [tuple(tuple(r[j] % p for j in range(k)) for r in M) for M in matrices]
    # closure of the matrix group
    Q = {ident: 0}
    order_list = [ident]
    frontier = [ident]
    while frontier:
        A = frontier.pop()
        for M in gens_m:
            B = _mat_mul(A, M, p)
            if B not in Q:
                Q[B] = len(order_list)
                order_list.append(B)
                frontier.append(B)
    vecs = list(itertools.product(range(p), repeat=k))
    vnum = {v: i for i, v in enumerate(vecs)}
    total = len(vecs) * len(order_list)
    if total > MAX_TABLE_ORDER:
        raise ValueError(f"semidirect product order {total} too large")
    # numbering: (v, Q) -> vnum[v] * |Q| + Q index; identity (0, I) -> 0
    nq = len(order_list)

    def num(v, qi):
        return vnum[v] * nq + qi

    mul = [[0] * total for _ in range(total)]
    mv_cache = {}
    for qi, A in enumerate(order_list):
        for w in vecs:
            mv_cache[(qi, w)] = _mat_vec(A, w, p)
    mm = [[Q[_mat_mul(order_list[a], order_list[b], p)] for b in range(nq)]
          for a in range(nq)]
    for v in vecs:
        for qi in range(nq):
            i = num(v, qi)
            row = mul[i]
            for w in vecs:
                qw = mv_cache[(qi, w)]
                vv = tuple((a + b) % p for a, b in zip(v, qw))
                base = vnum[vv] * nq
                for ri in range(nq):
                    row[num(w, ri)] = base + mm[qi][ri]
    gens = [num(v, 0) for v in vecs if sum(v) and v.count(1) == 1 and max(v) == 1]
    gens += [num(tuple([0] * k), Q[M]) for M in gens_m]
    label = name or f"(C{p})^{k} : Q{nq}"
    G = FiniteGroup(mul, gens, label)
    assert G.order == p ** k * nq
    return G


def _primitive_polynomial(p: int, n: int) -> list[int]:
    """Coefficients c_0..c_{n-1} of a monic primitive polynomial
    x^n + c_{n-1} x^{n-1} + ... + c_0 over F_p (brute force search)."""
    order = p ** n - 1

    def proper_divisors(m):
        out = set()
        d = 1
        while d * d <= m:
            if m % d == 0:
                out.add(d)
                out.add(m // d)
            d += 1
        out.discard(m)
        return sorted(out)

    divs = proper_divisors(order)
    for coeffs in itertools.product(range(p), repeat=n):
        if coeffs[0] == 0:
            continue  # x divides, not primitive
        # companion matrix power test: x has multiplicative order p^n - 1
        C = [[0] * n for _ in range(n)]
        for i in range(1, n):
            C[i][i - 1] = 1
        for i in range(n):
            C[i][n - 1] = (-coeffs[i]) % p
        Ct = tuple(tuple(r) for r in C)

        def mpow(M, e):
            R = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
            while e:
                if e & 1:
                    R = _mat_mul(R, M, p)
                M = _mat_mul(M, M, p)
                e >>= 1
            return R

        I = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        if mpow(Ct, order) != I:
            continue
        if all(mpow(Ct, d) != I for d in divs if d >= 1):
            return list(coeffs)
    raise ValueError("no primitive polynomial found")  # unreachable for prime p


def singer_group(p: int, n: int) -> FiniteGroup:
    """(C_p)^n semidirect C_{p^n - 1}, the cyclic group acting as the
    multiplicative group of the field of order p^n (transitive on nonzero
    vectors)."""
    coeffs = _primitive_polynomial(p, n)
    C = [[0] * n for _ in range(n)]
    for i in range(1, n):
        C[i][i - 1] = 1
    for i in range(n):
        C[i][n - 1] = (-coeffs[i]) % p
    return build_semidirect(p, n, [C], name=f"(C{p})^{n} : C{p ** n - 1}")


def build_group(spec: dict) -> FiniteGroup:
    """Build a group from a JSON-style spec dict.

    {"family": "P"|"M"|"B"|"G_a1"|"cyclic"|"product"|"semidirect",
     "p": int, "n": int, "epsilon": int, "factors": [...], "matrices": [[..]]}
    Extras: family "P_2" (= P(3)) and "singer" (primitive-polynomial action).
    """
    fam = spec.get("family")
    if fam == "P":
        return build_P(spec["n"], spec["p"])
    if fam == "P_2":
        return build_P(3, spec["p"])
    if fam == "M":
        return build_M(spec["n"], spec["p"])
    if fam == "B":
        return build_B(spec["n"], spec.get("epsilon", 1), spec["p"])
    if fam == "G_a1":
        return build_G_a1(spec.get("a", spec.get("n")), spec["p"])
    if fam == "cyclic":
        return build_cyclic(spec["n"])
    if fam == "product":
        return build_product([build_group(f) for f in spec["factors"]])
    if fam == "semidirect":
        return build_semidirect(spec["p"], spec["n"], spec["matrices"])
    if fam == "singer":
        return singer_group(spec["p"], spec["n"])
    raise ValueError(f"unknown group family: {fam!r}")


def symmetric_3() -> FiniteGroup:
    """S_3 as C_3 semidirect C_2 (inversion action)."""
    return build_semidirect(3, 1, [[[2]]], name="S3")


# ---------------------------------------------------------------------------
# Subgroup machinery
# ---------------------------------------------------------------------------


def subgroup_closure(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = list(gens)
    if any(not (0 <= g < G.order) for g in gens):
        raise ValueError("generator index out of range")
    members = {0}
    frontier = [0]
    for g in gens:
        if g not in members:
            members.add(g)
            frontier.append(g)
    mul = G.mul
    while frontier:
        h = frontier.pop()
        for g in gens:
            for x in (mul[h][g], mul[g][h]):
                if x not in members:
                    members.add(x)
                    frontier.append(x)
    return Subgroup(G, members)


def order_p_subgroup_classes(G: FiniteGroup, p: int) -> list[Subgroup]:
    """One representative per conjugacy class of order-p subgroups,
    ordered by least generator index."""
    if G.order % p != 0:
        raise ValueError(f"{p} does not divide the group order {G.order}")
    subs: dict[frozenset, int] = {}  # member set -> least generator index
    for g in range(1, G.order):
        if G.element_order(g) == p:
            mem = frozenset(G.power(g, k) for k in range(p))
            if mem not in subs:
                subs[mem] = g
    # conjugacy classes of subgroups
    unassigned = set(subs)
    classes = []
    while unassigned:
        mem = min(unassigned, key=lambda s: subs[s])
        orbit = {mem}
        for x in range(G.order):
            orbit.add(frozenset(G.conj(x, h) for h in mem))
        orbit &= set(subs)
        unassigned -= orbit
        classes.append(mem)
    classes.sort(key=lambda s: subs[s])
    return [Subgroup(G, mem) for mem in classes]


def center_and_derived(G: FiniteGroup) -> tuple[Subgroup, Subgroup]:
    mul = G.mul
    center = [z for z in range(G.order)
              if all(mul[z][g] == mul[g][z] for g in range(G.order))]
    comms = {G.commutator(a, b) for a in range(G.order) for b in range(G.order)}
    derived = subgroup_closure(G, comms)
    return Subgroup(G, center), derived
