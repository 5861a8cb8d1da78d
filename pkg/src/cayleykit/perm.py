"""Permutations and permutation groups with a stabilizer-chain backbone.

Points are 0-based.  Permutations act on the left: ``(p * q)(x) == p(q(x))``,
and conjugation is ``h^c = c^-1 h c``.
"""

from __future__ import annotations

import itertools
from math import gcd

# Operations that need to touch every group element refuse to run past this
# many elements unless the caller raises the cap explicitly.
BRUTE_FORCE_CAP = 10**6


class CapExceededError(RuntimeError):
    """An enumeration-based operation was asked to walk too many elements."""


class Permutation:
    """A bijection of {0, ..., n-1}, stored as its image sequence."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        n = len(images)
        seen = [False] * n
        for x in images:
            if not isinstance(x, int) or not 0 <= x < n or seen[x]:
                raise ValueError(f"not a permutation of 0..{n - 1}: {images!r}")
            seen[x] = True
        self.images = images

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n, cycles):
        """Build a permutation of degree n from disjoint cycles."""
        images = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + type(cyc)([cyc[0]])):
                if images[a] != a:
                    raise ValueError("cycles are not disjoint")
                images[a] = b
        return cls(images)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, x):
        return self.images[x]

    def __mul__(self, other):
        """Composition: (p * q)(x) = p(q(x))."""
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        im = self.images
        return Permutation(im[x] for x in other.images)

    def inverse(self):
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(inv)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        p = self
        while k:
            if k & 1:
                result = result * p
            p = p * p
            k >>= 1
        return result

    def conjugate(self, c):
        """c^-1 * self * c."""
        return c.inverse() * self * c

    def is_identity(self):
        return all(x == y for x, y in enumerate(self.images))

    def order(self):
        n = 1
        for cyc in self.cycles():
            n = n * len(cyc) // gcd(n, len(cyc))
        return n

    def cycles(self):
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def fixed_points(self):
        return [x for x in range(self.degree) if self.images[x] == x]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        cycs = self.cycles()
        if not cycs:
            return f"Permutation.identity({self.degree})"
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)
        return f"<{body} deg={self.degree}>"

    def to_json(self):
        return list(self.images)

    @classmethod
    def from_json(cls, data):
        return cls(data)


def compose(p, q):
    """Functional composition, (p o q)(x) = p(q(x))."""
    return p * q


class _Chain:
    """Deterministic Schreier-Sims stabilizer chain."""

    def __init__(self, degree, gens, base_hint=()):
        self.degree = degree
        self.identity = Permutation.identity(degree)
        self.base = []
        self.strong = []
        self.transversals = []
        for b in base_hint:
            self.base.append(b)
            self.transversals.append({b: self.identity})
        for g in gens:
            if not g.is_identity():
                self.strong.append(g)
                if all(g(b) == b for b in self.base):
                    self._new_base_point(g)
        for i in range(len(self.base)):
            self._recompute(i)
        self._close()

    def _new_base_point(self, g):
        pt = min(x for x in range(self.degree) if g(x) != x)
        self.base.append(pt)
        self.transversals.append({pt: self.identity})

    def _level_gens(self, i):
        prefix = self.base[:i]
        return [s for s in self.strong if all(s(b) == b for b in prefix)]

    def _recompute(self, i):
        b = self.base[i]
        gens = self._level_gens(i)
        t = {b: self.identity}
        frontier = [b]
        while frontier:
            new = []
            for x in frontier:
                tx = t[x]
                for s in gens:
                    y = s(x)
                    if y not in t:
                        t[y] = s * tx
                        new.append(y)
            frontier = sorted(new)
        self.transversals[i] = t

    def strip(self, g, start=0):
        """Sift g through levels >= start; returns (residue, stuck_level)."""
        for j in range(start, len(self.base)):
            x = g(self.base[j])
            t = self.transversals[j]
            if x not in t:
                return g, j
            g = t[x].inverse() * g
        return g, len(self.base)

    def _close(self):
        i = len(self.base) - 1
        while i >= 0:
            self._recompute(i)
            t = self.transversals[i]
            gens = self._level_gens(i)
            dirty_level = None
            for x in sorted(t):
                tx = t[x]
                for s in gens:
                    sg = t[s(x)].inverse() * (s * tx)
                    if sg.is_identity():
                        continue
                    residue, j = self.strip(sg, i + 1)
                    if not residue.is_identity():
                        self.strong.append(residue)
                        if j == len(self.base):
                            self._new_base_point(residue)
                        dirty_level = j
                        break
                if dirty_level is not None:
                    break
            if dirty_level is None:
                i -= 1
            else:
                i = dirty_level

    @property
    def order(self):
        n = 1
        for t in self.transversals:
            n *= len(t)
        return n

    def contains(self, p):
        if p.degree != self.degree:
            return False
        residue, _ = self.strip(p)
        return residue.is_identity()

    def elements(self):
        """All elements, in the order induced by transversal traversal."""

        def walk(i):
            if i == len(self.transversals):
                yield self.identity
                return
            t = self.transversals[i]
            for x in sorted(t):
                u = t[x]
                for rest in walk(i + 1):
                    yield u * rest

        return walk(0)

    def element_with_base_images(self, images):
        """An element mapping base[i] -> images[i] for i < len(images), or None."""
        g = self.identity
        residual = list(images)
        for i, want in enumerate(residual):
            t = self.transversals[i]
            if want not in t:
                return None
            u = t[want]
            g = g * u
            uinv = u.inverse()
            for j in range(i + 1, len(residual)):
                residual[j] = uinv(residual[j])
        return g


class PermGroup:
    """A permutation group given by generators; chain built at construction."""

    def __init__(self, degree, generators, base_hint=()):
        gens = []
        seen = set()
        for g in generators:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
            if not g.is_identity() and g.images not in seen:
                seen.add(g.images)
                gens.append(g)
        self.degree = degree
        self.generators = tuple(sorted(gens))
        self._chain = _Chain(degree, self.generators, base_hint=base_hint)
        self.order = self._chain.order

    @classmethod
    def trivial(cls, degree):
        return cls(degree, ())

    @classmethod
    def symmetric(cls, degree):
        if degree <= 1:
            return cls.trivial(degree)
        gens = [Permutation.from_cycles(degree, [(0, 1)]),
                Permutation.from_cycles(degree, [tuple(range(degree))])]
        return cls(degree, gens)

    def contains(self, p):
        return self._chain.contains(p)

    def __contains__(self, p):
        return self.contains(p)

    def __eq__(self, other):
        return (isinstance(other, PermGroup)
                and self.degree == other.degree
                and self.order == other.order
                and all(self.contains(g) for g in other.generators))

    def __hash__(self):
        return hash((self.degree, self.order))

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"

    def is_subgroup_of(self, other):
        return (self.degree == other.degree
                and all(other.contains(g) for g in self.generators))

    def elements(self, cap=BRUTE_FORCE_CAP):
        if self.order > cap:
            raise CapExceededError(
                f"group order {self.order} exceeds cap {cap}")
        return list(self._chain.elements())

    def identity(self):
        return Permutation.identity(self.degree)

    def orbit(self, x):
        orb = {x}
        frontier = [x]
        while frontier:
            new = []
            for y in frontier:
                for g in self.generators:
                    z = g(y)
                    if z not in orb:
                        orb.add(z)
                        new.append(z)
            frontier = new
        return sorted(orb)

    def orbits(self):
        seen = set()
        out = []
        for x in range(self.degree):
            if x not in seen:
                orb = self.orbit(x)
                seen.update(orb)
                out.append(orb)
        return out

    def is_transitive(self):
        return self.degree > 0 and len(self.orbit(0)) == self.degree

    def is_semiregular(self):
        # all point stabilizers trivial <=> |orbit(x)| == |G| for every x
        return all(len(orb) == self.order for orb in self.orbits())

    def is_regular(self):
        return self.is_transitive() and self.order == self.degree

    def transitivity_profile(self):
        semi = self.is_semiregular()
        trans = self.is_transitive()
        return {"transitive": trans, "semiregular": semi,
                "regular": trans and semi}

    def conjugate(self, c):
        """The group c^-1 G c."""
        if c.degree != self.degree:
            raise ValueError("degree mismatch")
        cinv = c.inverse()
        return PermGroup(self.degree, [cinv * g * c for g in self.generators])

    def to_json(self):
        return {"degree": self.degree,
                "generators": [list(g.images) for g in self.generators]}

    @classmethod
    def from_json(cls, data):
        return cls(data["degree"],
                   [Permutation(imgs) for imgs in data["generators"]])


def group_from_generators(n, gens):
    return PermGroup(n, gens)


def order(G):
    return G.order


def contains(G, p):
    return G.contains(p)


def orbits(G):
    return G.orbits()


def transitivity_profile(G):
    return G.transitivity_profile()


def enumerate_elements(G, cap=BRUTE_FORCE_CAP):
    return G.elements(cap)


def support(H):
    """All points moved by some generator of H."""
    pts = set()
    for g in H.generators:
        pts.update(x for x in range(H.degree) if g(x) != x)
    return sorted(pts)


def conjugate(H, c):
    return H.conjugate(c)


def is_normal_in(N, G):
    if not N.is_subgroup_of(G):
        raise ValueError("N is not a subgroup of G")
    for g in G.generators:
        ginv = g.inverse()
        for n in N.generators:
            if not N.contains(ginv * n * g):
                return False
    return True


def normal_closure(G, S):
    """Smallest normal subgroup of G containing the permutations in S."""
    gens = [s for s in S if not s.is_identity()]
    H = PermGroup(G.degree, gens)
    while True:
        new = []
        for g in G.generators:
            ginv = g.inverse()
            for n in gens:
                c = ginv * n * g
                if not H.contains(c):
                    new.append(c)
        if not new:
            return H
        gens.extend(new)
        H = PermGroup(G.degree, gens)


def centralizer(G, H, cap=BRUTE_FORCE_CAP):
    """Elements of G commuting with every element of H (brute force)."""
    gens = [g for g in G.elements(cap)
            if all(g * h == h * g for h in H.generators)]
    return PermGroup(G.degree, gens)


def normalizer(G, H, cap=BRUTE_FORCE_CAP):
    """Elements of G normalizing H (brute force)."""
    out = []
    for g in G.elements(cap):
        ginv = g.inverse()
        if all(H.contains(ginv * h * g) for h in H.generators):
            out.append(g)
    return PermGroup(G.degree, out)


def _conjugacy_class_reps(G, elems):
    """One representative per G-conjugacy class among elems (orbit BFS)."""
    pool = {e.images for e in elems}
    reps = []
    while pool:
        start = Permutation(min(pool))
        reps.append(start)
        orbit = {start.images}
        frontier = [start]
        while frontier:
            new = []
            for e in frontier:
                for g in G.generators:
                    c = g.inverse() * e * g
                    if c.images not in orbit:
                        orbit.add(c.images)
                        new.append(c)
            frontier = new
        pool -= orbit
    return reps


def minimal_normal_subgroups(G, cap=BRUTE_FORCE_CAP):
    """Nontrivial normal subgroups containing no smaller ones.

    Scans normal closures of one representative per conjugacy class of
    prime-order elements (every minimal normal subgroup is the closure of
    any of its nonidentity elements, and contains elements of prime order).
    """
    elems = G.elements(cap)
    prime_order = [e for e in elems
                   if not e.is_identity() and _is_prime(e.order())]
    closures = []
    for rep in _conjugacy_class_reps(G, prime_order):
        N = normal_closure(G, [rep])
        if not any(N == M for M in closures):
            closures.append(N)
    minimal = []
    for N in closures:
        if not any(M.order < N.order and M.is_subgroup_of(N)
                   for M in closures):
            minimal.append(N)
    minimal.sort(key=lambda M: (M.order, [g.images for g in M.generators]))
    return minimal


def socle(G, cap=BRUTE_FORCE_CAP):
    """Subgroup generated by all minimal normal subgroups."""
    gens = []
    for N in minimal_normal_subgroups(G, cap):
        gens.extend(N.generators)
    return PermGroup(G.degree, gens)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n):
    """Prime factorization as a sorted list with multiplicity."""
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def sylow_subgroup(G, p, cap=BRUTE_FORCE_CAP):
    """A Sylow p-subgroup, grown inside normalizers of partial p-subgroups."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if G.order % p != 0:
        raise ValueError(f"{p} does not divide the group order {G.order}")
    target = 1
    n = G.order
    while n % p == 0:
        target *= p
        n //= p

    elems = G.elements(cap)

    def p_element(pool, P):
        # smallest p-element extending P to a larger p-group
        for g in pool:
            o = g.order()
            if o == 1 or not _is_power_of(o, p):
                continue
            if P.contains(g):
                continue
            cand = PermGroup(G.degree, list(P.generators) + [g])
            if _is_power_of(cand.order, p):
                return cand
        return None

    start = min(g for g in elems if g.order() == p)
    P = PermGroup(G.degree, [start])
    while P.order < target:
        N = normalizer(G, P, cap)
        bigger = p_element(N.elements(cap), P)
        if bigger is None:  # cannot happen by Sylow theory
            raise RuntimeError("sylow extension failed")
        P = bigger
    return P


def _is_power_of(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def pointwise_stabilizer(G, points):
    """Subgroup of G fixing each of the given points."""
    chain = _Chain(G.degree, G.generators, base_hint=tuple(points))
    pts = set(points)
    gens = [s for s in chain.strong if all(s(b) == b for b in pts)]
    return PermGroup(G.degree, gens)


def element_mapping_points(G, sources, targets):
    """Some g in G with g(sources[i]) == targets[i] for all i, or None."""
    chain = _Chain(G.degree, G.generators, base_hint=tuple(sources))
    return chain.element_with_base_images(list(targets))


def closure_of_subset(degree, elems, limit=None):
    """Multiplicative closure of a set of permutations, as a set.

    Stops early (returning None) if the closure grows past `limit`.
    """
    elems = set(elems)
    elems.add(Permutation.identity(degree))
    frontier = list(elems)
    while frontier:
        new = []
        for a in frontier:
            for b in list(elems):
                for c in (a * b, b * a):
                    if c not in elems:
                        elems.add(c)
                        new.append(c)
                        if limit is not None and len(elems) > limit:
                            return None
        frontier = new
    return elems
