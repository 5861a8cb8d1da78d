"""Constructors for the concrete groups the library works with.

A GroupSpec is a symbolic description of an abstract group together with a
canonical element labeling (mixed-radix over the defining parameters), so
regular representations and holomorphs get reproducible point numbering.
"""

from __future__ import annotations

from math import gcd

from .perm import (BRUTE_FORCE_CAP, PermGroup, Permutation, _is_prime,
                   prime_factors, sylow_subgroup)

# |Aut(R2)| for the possible Sylow 2-subgroups of family members, in the
# order 1, Z2, Z2^2, Z2^3, Z2^4, Z4, Z8, Q8.
AUT_ORDERS_OF_SYLOW_2 = {
    "1": 1, "z2": 1, "z2^2": 6, "z2^3": 168, "z2^4": 20160,
    "z4": 2, "z8": 4, "q8": 24,
}


class GroupSpec:
    """Symbolic group with elements 0..|G|-1 and an explicit product rule."""

    def __init__(self, kind, **params):
        self.kind = kind
        self.params = params
        self._validate()

    # -- constructors -----------------------------------------------------

    @classmethod
    def cyclic(cls, n):
        return cls("cyclic", n=n)

    @classmethod
    def elementary_abelian_2(cls, e):
        return cls("elementary_abelian_2", e=e)

    @classmethod
    def z4(cls):
        return cls("z4")

    @classmethod
    def z8(cls):
        return cls("z8")

    @classmethod
    def q8(cls):
        return cls("q8")

    @classmethod
    def dihedral(cls, m):
        return cls("dihedral", m=m)

    @classmethod
    def dicyclic(cls, m):
        return cls("dicyclic", m=m)

    @classmethod
    def direct_product(cls, factors):
        return cls("direct_product", factors=tuple(factors))

    @classmethod
    def zn_semidirect_y(cls, n, order_of_y, action):
        return cls("zn_semidirect_y", n=n, order_of_y=order_of_y,
                   action=action)

    @classmethod
    def frobenius(cls, p, n):
        return cls("frobenius", p=p, n=n)

    # -- validation and basic data ----------------------------------------

    def _validate(self):
        k, p = self.kind, self.params
        if k == "cyclic":
            if p["n"] < 1:
                raise ValueError("cyclic order must be positive")
        elif k == "elementary_abelian_2":
            if not 0 <= p["e"] <= 16:
                raise ValueError("exponent out of range")
        elif k in ("z4", "z8", "q8"):
            pass
        elif k == "dihedral":
            if p["m"] < 1:
                raise ValueError("dihedral parameter must be positive")
        elif k == "dicyclic":
            # realized as Zm x| Z4 with inversion; coincides with the
            # dicyclic group exactly for odd m
            if p["m"] < 3 or p["m"] % 2 == 0:
                raise ValueError("dicyclic(m) requires odd m >= 3")
        elif k == "direct_product":
            if not p["factors"]:
                raise ValueError("empty direct product")
        elif k == "zn_semidirect_y":
            n, oy, a = p["n"], p["order_of_y"], p["action"] % p["n"]
            if n < 1 or n % 2 == 0:
                raise ValueError("n must be odd")
            if oy not in (2, 4, 8):
                raise ValueError("order of y must be 2, 4 or 8")
            if (a * a) % n != 1 % n:
                raise ValueError("action must square to the identity mod n")
            if a == 1 % n:
                raise ValueError(
                    "central y: rewrite as a direct product with a cyclic factor")
        elif k == "frobenius":
            pp, n = p["p"], p["n"]
            if not _is_prime(pp):
                raise ValueError("p must be prime")
            if n < 2 or (pp - 1) % n != 0:
                raise ValueError("n must divide p-1 and be at least 2")
        else:
            raise ValueError(f"unknown kind {k!r}")

    @property
    def size(self):
        k, p = self.kind, self.params
        if k == "cyclic":
            return p["n"]
        if k == "elementary_abelian_2":
            return 2 ** p["e"]
        if k == "z4":
            return 4
        if k in ("z8", "q8"):
            return 8
        if k == "dihedral":
            return 2 * p["m"]
        if k == "dicyclic":
            return 4 * p["m"]
        if k == "direct_product":
            s = 1
            for f in p["factors"]:
                s *= f.size
            return s
        if k == "zn_semidirect_y":
            return p["n"] * p["order_of_y"]
        if k == "frobenius":
            return p["p"] * p["n"]
        raise AssertionError

    def is_abelian(self):
        e = self.identity_label()
        gens = self.generator_labels()
        return all(self.mult(a, b) == self.mult(b, a)
                   for a in gens for b in gens)

    # -- element arithmetic on labels --------------------------------------

    def identity_label(self):
        return 0

    def mult(self, a, b):
        k, p = self.kind, self.params
        if k == "cyclic":
            return (a + b) % p["n"]
        if k == "elementary_abelian_2":
            return a ^ b
        if k == "z4":
            return (a + b) % 4
        if k == "z8":
            return (a + b) % 8
        if k == "q8":
            # labels encode i^r * j^s as 2*r + s
            r1, s1 = divmod(a, 2)
            r2, s2 = divmod(b, 2)
            r = r1 + (r2 if s1 == 0 else -r2)
            s = s1 + s2
            if s >= 2:       # j^2 = i^2
                s -= 2
                r += 2
            return (r % 4) * 2 + s
        if k == "dihedral":
            m = p["m"]
            r1, s1 = divmod(a, 2)
            r2, s2 = divmod(b, 2)
            r = (r1 + (r2 if s1 == 0 else -r2)) % m
            return r * 2 + (s1 + s2) % 2
        if k == "dicyclic":
            # Zm x| <y>, o(y)=4, y inverting; labels (x, i) -> 4x + i
            m = p["m"]
            x1, i1 = divmod(a, 4)
            x2, i2 = divmod(b, 4)
            x = (x1 + (x2 if i1 % 2 == 0 else -x2)) % m
            return x * 4 + (i1 + i2) % 4
        if k == "direct_product":
            da, db = self._dp_digits(a), self._dp_digits(b)
            return self._dp_label(
                [f.mult(x, y) for f, x, y in zip(p["factors"], da, db)])
        if k == "zn_semidirect_y":
            n, oy, act = p["n"], p["order_of_y"], p["action"] % p["n"]
            x1, i1 = divmod(a, oy)
            x2, i2 = divmod(b, oy)
            x = (x1 + pow(act, i1, n) * x2) % n
            return x * oy + (i1 + i2) % oy
        if k == "frobenius":
            pp, n = p["p"], p["n"]
            w = self.omega()
            x1, i1 = divmod(a, n)
            x2, i2 = divmod(b, n)
            x = (x1 + pow(w, i1, pp) * x2) % pp
            return x * n + (i1 + i2) % n
        raise AssertionError

    def inv(self, a):
        e = self.identity_label()
        prev, acc = a, self.mult(a, a)
        while acc != e:
            prev, acc = acc, self.mult(acc, a)
        return e if a == e else prev

    def element_order(self, a):
        e = self.identity_label()
        k, acc = 1, a
        while acc != e:
            acc = self.mult(acc, a)
            k += 1
        return k

    def generator_labels(self):
        k, p = self.kind, self.params
        if k == "cyclic":
            return [1 % p["n"]] if p["n"] > 1 else []
        if k == "elementary_abelian_2":
            return [1 << i for i in range(p["e"])]
        if k == "z4":
            return [1]
        if k == "z8":
            return [1]
        if k == "q8":
            return [2, 1]           # i and j
        if k == "dihedral":
            return [2, 1]           # rotation and reflection
        if k == "dicyclic":
            return [4, 1]           # x and y
        if k == "direct_product":
            gens = []
            offset = 1
            sizes = [f.size for f in p["factors"]]
            for i in reversed(range(len(sizes))):
                f = p["factors"][i]
                for g in f.generator_labels():
                    gens.append(g * offset)
                offset *= sizes[i]
            return sorted(gens)
        if k == "zn_semidirect_y":
            return [p["order_of_y"], 1]   # x=(1,0) and y=(0,1)
        if k == "frobenius":
            return [p["n"], 1]            # translation and omega-scaling
        raise AssertionError

    def omega(self):
        """Smallest primitive n-th root of unity mod p (frobenius only)."""
        if self.kind != "frobenius":
            raise ValueError("omega is only defined for frobenius specs")
        pp, n = self.params["p"], self.params["n"]
        for w in range(2, pp):
            if pow(w, n, pp) == 1 and all(pow(w, d, pp) != 1
                                          for d in range(1, n)):
                return w
        raise AssertionError("no primitive root found")

    # -- direct product arithmetic (mixed radix, first factor most
    #    significant) -------------------------------------------------------

    def _dp_digits(self, a):
        sizes = [f.size for f in self.params["factors"]]
        digits = []
        for s in reversed(sizes):
            digits.append(a % s)
            a //= s
        return list(reversed(digits))

    def _dp_label(self, digits):
        out = 0
        for f, d in zip(self.params["factors"], digits):
            out = out * f.size + d
        return out

    def order_histogram(self):
        from collections import Counter
        return Counter(self.element_order(a) for a in range(self.size))

    def to_json(self):
        k, p = self.kind, self.params
        if k == "direct_product":
            return {"kind": k, "factors": [f.to_json() for f in p["factors"]]}
        return {"kind": k, **p}

    @classmethod
    def from_json(cls, data):
        data = dict(data)
        kind = data.pop("kind")
        if kind == "direct_product":
            return cls.direct_product(
                [cls.from_json(f) for f in data["factors"]])
        return cls(kind, **data)

    def __repr__(self):
        return f"GroupSpec({self.to_json()})"

    def __eq__(self, other):
        return isinstance(other, GroupSpec) and self.to_json() == other.to_json()


class LabeledPermGroup:
    """A permutation group whose points are labeled by GroupSpec elements."""

    def __init__(self, group, spec, side):
        self.group = group
        self.spec = spec
        self.side = side


def regular_representation(spec, side="left"):
    """Left or right translation action on the element labels."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    n = spec.size
    gens = []
    for g in spec.generator_labels():
        if side == "left":
            gens.append(Permutation(spec.mult(g, x) for x in range(n)))
        else:
            gens.append(Permutation(spec.mult(x, g) for x in range(n)))
    return LabeledPermGroup(PermGroup(n, gens), spec, side)


def inner_holomorph(spec):
    """The group generated by both regular representations, <G_L, G_R>."""
    left = regular_representation(spec, "left")
    right = regular_representation(spec, "right")
    gens = list(left.group.generators) + list(right.group.generators)
    return PermGroup(spec.size, gens)


def holomorph_pair_permutation(spec, u, v):
    """The permutation x -> u^-1 * x * v of the element labels."""
    uinv = spec.inv(u)
    return Permutation(spec.mult(spec.mult(uinv, x), v)
                       for x in range(spec.size))


def zsigmondy_ppd(a, k):
    """Smallest primitive prime divisor of a^k - 1, or None.

    None occurs exactly for (2, 6) and for k = 2 with a + 1 a power of two.
    """
    if a < 2 or k < 2:
        raise ValueError("a and k must both be at least 2")
    N = a ** k - 1
    lower = [a ** l - 1 for l in range(1, k)]
    p = 2
    while p * p <= N:
        if N % p == 0:
            if all(m % p for m in lower):
                return p
            while N % p == 0:
                N //= p
        p += 1
    if N > 1 and all(m % N for m in lower):
        return N
    return None


def ci_order_condition(n):
    """gcd(n, phi(n)) == 1."""
    if n < 1:
        raise ValueError("n must be positive")
    phi = 1
    m = n
    last = None
    for q in prime_factors(n):
        if q == last:
            phi *= q
        else:
            phi *= q - 1
        last = q
    return gcd(n, phi) == 1


def _odd_part(n):
    while n % 2 == 0:
        n //= 2
    return n


def _is_squarefree(n):
    fs = prime_factors(n)
    return len(fs) == len(set(fs))


def _two_group_type(Q):
    """Identify a 2-group of order <= 16 among the family's allowed types."""
    order = Q.order
    if order == 1:
        return "1"
    hist = {}
    for g in Q.elements():
        hist[g.order()] = hist.get(g.order(), 0) + 1
    exponent = max(hist)
    if order == 2:
        return "z2"
    if order == 4:
        return "z4" if exponent == 4 else "z2^2"
    if order == 8:
        if exponent == 2:
            return "z2^3"
        if exponent == 8:
            return "z8"
        return "q8" if hist.get(2, 0) == 1 else "other8"
    if order == 16 and exponent == 2:
        return "z2^4"
    return f"other{order}"


FAMILY_CASE_A_TYPES = ("1", "z2", "z2^2", "z2^3", "z2^4", "z4", "q8")


def group_in_family_R(G, cap=BRUTE_FORCE_CAP):
    """Decide membership of an abstract group (given as permutations).

    Family members are Zn x R2 for n odd square-free and R2 one of the
    seven small 2-groups, or Zn x| <y> with o(y) in {2,4,8}, y noncentral
    and y^2 central.
    """
    order = G.order
    m = _odd_part(order)
    if not _is_squarefree(m):
        return {"member": False, "case": None, "witness": None}
    elems = G.elements(cap)
    odd_elems = [g for g in elems if g.order() % 2 == 1]
    C = PermGroup(G.degree, odd_elems)
    if C.order != m or not any(g.order() == m for g in odd_elems):
        return {"member": False, "case": None, "witness": None}
    if order == m:  # odd group: member iff cyclic, which we just checked
        return {"member": True, "case": "a",
                "witness": {"n": m, "sylow_2": "1"}}
    Q = sylow_subgroup(G, 2, cap)
    commute = all(q * c == c * q for q in Q.generators for c in C.generators)
    if commute:
        qtype = _two_group_type(Q)
        if qtype in FAMILY_CASE_A_TYPES:
            return {"member": True, "case": "a",
                    "witness": {"n": m, "sylow_2": qtype}}
        if qtype == "z8":
            # Zn x Z8 arises as a subgroup/quotient of Zn x| <y> with
            # o(y) = 8, so the closed family admits it alongside case (a).
            return {"member": True, "case": "a",
                    "witness": {"n": m, "sylow_2": qtype,
                                "degenerate": "central order-8 element"}}
        return {"member": False, "case": None, "witness": None}
    # case (b): Sylow 2 must be cyclic, generated by some y with y^2 central
    qtype = _two_group_type(Q)
    if qtype not in ("z2", "z4", "z8"):
        return {"member": False, "case": None, "witness": None}
    y = max(Q.elements(), key=lambda g: g.order())
    y2 = y * y
    central = all(y2 * g == g * y2 for g in G.generators)
    y_central = all(y * g == g * y for g in G.generators)
    # y must normalize C with an order-two action; y^2 central gives that
    acts_ok = all(C.contains(y.inverse() * c * y) for c in C.generators)
    if central and not y_central and acts_ok:
        return {"member": True, "case": "b",
                "witness": {"n": m, "order_of_y": y.order()}}
    return {"member": False, "case": None, "witness": None}


def in_family_R(spec, cap=BRUTE_FORCE_CAP):
    """Membership of the abstract group described by spec."""
    G = regular_representation(spec, "left").group
    return group_in_family_R(G, cap)


def isomorphic_to_spec(H, spec, cap=BRUTE_FORCE_CAP):
    """Abstract isomorphism between a permutation group and a spec.

    Cheap invariants first (order histogram, center and derived-subgroup
    sizes), then a backtrack generator-mapping search.
    """
    if H.order != spec.size:
        return False
    R = regular_representation(spec, "left").group
    return isomorphic_groups(H, R, cap)


def _group_fingerprint(G, elems):
    from collections import Counter
    hist = Counter(g.order() for g in elems)
    elemset = {g.images for g in elems}
    center = sum(1 for g in elems
                 if all(g * h == h * g for h in G.generators))
    derived = _derived_size(G, elems, elemset)
    return (tuple(sorted(hist.items())), center, derived)


def _derived_size(G, elems, elemset):
    comms = set()
    for a in G.generators:
        ainv = a.inverse()
        for b in elems:
            comms.add((ainv * b.inverse() * a * b).images)
    gens = [Permutation(c) for c in comms]
    return PermGroup(G.degree, gens).order


def isomorphic_groups(A, B, cap=BRUTE_FORCE_CAP):
    """Backtrack isomorphism test between two small groups."""
    if A.order != B.order:
        return False
    ea, eb = A.elements(cap), B.elements(cap)
    if _group_fingerprint(A, ea) != _group_fingerprint(B, eb):
        return False
    gens = _small_generating_sequence(A, ea)
    by_order = {}
    for g in eb:
        by_order.setdefault(g.order(), []).append(g)

    def extend(i, images):
        if i == len(gens):
            return _is_isomorphism(A, B, gens, images, ea)
        for cand in by_order.get(gens[i].order(), []):
            if extend(i + 1, images + [cand]):
                return True
        return False

    return extend(0, [])


def _small_generating_sequence(G, elems):
    gens = []
    H = PermGroup(G.degree, ())
    for g in sorted(elems, key=lambda x: (-x.order(), x.images)):
        if not H.contains(g):
            gens.append(g)
            H = PermGroup(G.degree, gens)
            if H.order == G.order:
                break
    return gens


def _is_isomorphism(A, B, gens, images, elems_a):
    """Grow the map multiplicatively from generators; fail on conflict."""
    fmap = {Permutation.identity(A.degree).images:
            Permutation.identity(B.degree)}
    frontier = [Permutation.identity(A.degree)]
    known = {Permutation.identity(A.degree).images}
    while frontier:
        new = []
        for a in frontier:
            fa = fmap[a.images]
            for g, fg in zip(gens, images):
                prod = a * g
                fprod = fa * fg
                if prod.images in fmap:
                    if fmap[prod.images] != fprod:
                        return False
                else:
                    fmap[prod.images] = fprod
                    new.append(prod)
                    known.add(prod.images)
        frontier = new
    if len(fmap) != A.order:
        return False  # gens did not generate (should not happen)
    return len({v.images for v in fmap.values()}) == A.order


def cor2_groups(p, n, a, b):
    """The two explicit regular subgroups of the holomorph of a Frobenius
    group witnessing the non-CI construction for Zp x|_alpha Zn.

    Returns (G1, G2) inside inner_holomorph(frobenius(p, n)).
    """
    if not _is_prime(p):
        raise ValueError("p must be prime")
    if n < 2 or (p - 1) % n != 0:
        raise ValueError("n must divide p-1")
    if not 2 < n < p - 1:
        raise ValueError("need 2 < n < p-1")
    a %= n
    b %= n
    if gcd(a, n) == 1:
        raise ValueError("a must be a non-unit mod n (alpha non-injective)")
    if n % 2 == 0 and a % 2 != 0:
        raise ValueError("a must be even when n is even")
    if gcd(b, n) != 1:
        raise ValueError("b must be a unit mod n")
    if gcd((a - b) % n, n) != 1:
        raise ValueError("a - b must be invertible mod n")
    spec = GroupSpec.frobenius(p, n)

    def F(x, i):
        return (x % p) * n + (i % n)

    g1 = [holomorph_pair_permutation(spec, F(1, 0), F(0, 0)),
          holomorph_pair_permutation(spec, F(0, a), F(0, b))]
    g2 = [holomorph_pair_permutation(spec, F(0, 0), F(1, 0)),
          holomorph_pair_permutation(spec, F(0, b), F(0, a))]
    return PermGroup(spec.size, g1), PermGroup(spec.size, g2)


def frobenius_natural_action(p, n):
    """Zp x| <omega> acting on Zp: translations and scaling by omega."""
    spec = GroupSpec.frobenius(p, n)
    w = spec.omega()
    gens = [Permutation((x + 1) % p for x in range(p)),
            Permutation((w * x) % p for x in range(p))]
    return PermGroup(p, gens)
