"""Regular-subgroup conjugacy machinery and the non-CI witness pipeline.

The central question: given an ambient permutation group A (typically the
automorphism group of a combinatorial structure) and an abstract group,
are all regular copies of that group inside A conjugate?  A single
conjugacy class means every isomorphism between the corresponding
structures is realized by a relabeling; two or more classes produce a
witness pair.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .blocks import (BlockSystem, action_on_blocks, block_restriction,
                     classify_block_system, pullback_system, verify_tower)
from .closures import is_k_closed
from .perm import (BRUTE_FORCE_CAP, CapExceededError, PermGroup, Permutation,
                   _is_prime, minimal_normal_subgroups, normalizer,
                   prime_factors, socle, support, sylow_subgroup)
from .zoo import (GroupSpec, group_in_family_R, inner_holomorph,
                  isomorphic_groups, isomorphic_to_spec,
                  regular_representation)


@dataclass
class CiVerdict:
    """Outcome of the regular-subgroup conjugacy test on one ambient group."""

    status: str  # ci_for_this_structure | not_ci_witness | inconclusive
    witness: Optional[tuple] = None  # pair of nonconjugate regular subgroups
    classes: int = 0
    transcript: list = field(default_factory=list)

    def to_json(self):
        wit = None
        if self.witness is not None:
            wit = [g.to_json() for g in self.witness[0].generators], \
                  [g.to_json() for g in self.witness[1].generators]
            wit = {"first": wit[0], "second": wit[1]}
        return {"status": self.status, "witness": wit,
                "classes": self.classes, "transcript": self.transcript}


@dataclass
class TowerResult:
    """A conjugator plus the chain of normal block systems it produces."""

    conjugator: Permutation
    tower: list  # B_0 (singletons) up to B_m (one block), inclusive
    ratios: list  # consecutive block-size ratios, length m
    exceptional_case: Optional[str] = None
    transcript: list = field(default_factory=list)

    def to_json(self):
        return {"conjugator": self.conjugator.to_json(),
                "tower": [bs.to_json() for bs in self.tower],
                "ratios": list(self.ratios),
                "exceptional_case": self.exceptional_case,
                "transcript": self.transcript}


def _element_keys(H, cap):
    return frozenset(g.images for g in H.elements(cap))


def _conjugate_elem(g, c, cinv):
    return cinv * g * c


def are_conjugate_subgroups(A, R, T, cap=BRUTE_FORCE_CAP, transcript=None):
    """Some c in A with R^c = T, or None after exhausting a transversal.

    The search walks one representative per right coset of the normalizer
    of R in A; conjugation is constant on those cosets.
    """
    for H, name in ((R, "R"), (T, "T")):
        if not H.is_subgroup_of(A):
            raise ValueError(f"{name} is not a subgroup of the ambient group")
    if R.order != T.order:
        return None
    Rkeys = _element_keys(R, cap)
    Tkeys = _element_keys(T, cap)
    if Rkeys == Tkeys:
        return Permutation.identity(A.degree)
    elems = A.elements(cap)
    rgens = R.generators
    norm = [g for g in elems
            if all((g.inverse() * r * g).images in Rkeys for r in rgens)]
    visited = set()
    for c in elems:
        if c.images in visited:
            continue
        for h in norm:
            visited.add((h * c).images)
        cinv = c.inverse()
        if all((cinv * r * c).images in Tkeys for r in rgens):
            return c
        if transcript is not None:
            transcript.append({"tried": list(c.images), "result": "no"})
    return None


def _subgroup_conjugates(A_elems, Hkeys, degree):
    """All A-conjugates of a subgroup, as frozensets of element keys."""
    Helems = [Permutation(im) for im in Hkeys]
    out = set()
    for c in A_elems:
        cinv = c.inverse()
        out.add(frozenset((cinv * h * c).images for h in Helems))
    return out


def regular_subgroups(A, spec, cap=BRUTE_FORCE_CAP):
    """Conjugacy class representatives of regular subgroups of A
    isomorphic to the given abstract group.

    A regular subgroup is reconstructed point by point: it contains
    exactly one element sending the base point 0 to each point y, and the
    assignment is forced once chosen, so depth-first search with closure
    propagation visits every regular subgroup exactly once.
    """
    n = A.degree
    if n != spec.size:
        raise ValueError("degree of A must equal the order of the spec")
    elems = A.elements(cap)
    hist = spec.order_histogram()
    by_image = {y: [] for y in range(n)}
    for g in elems:
        o = g.order()
        if hist.get(o, 0) > 0:
            by_image[g(0)].append(g)
    identity = Permutation.identity(n)

    def close(assigned):
        """Propagate products; None on a regularity or histogram conflict."""
        while True:
            items = list(assigned.values())
            grew = False
            for a in items:
                for b in items:
                    p = a * b
                    w = p(0)
                    cur = assigned.get(w)
                    if cur is None:
                        if hist.get(p.order(), 0) == 0:
                            return None
                        assigned[w] = p
                        grew = True
                    elif cur != p:
                        return None
            if not grew:
                break
        counts = Counter(g.order() for g in assigned.values())
        if any(counts[o] > hist.get(o, 0) for o in counts):
            return None
        return assigned

    found = []

    def dfs(assigned):
        if len(assigned) == n:
            found.append(PermGroup(n, list(assigned.values())))
            return
        y = min(x for x in range(n) if x not in assigned)
        for g in by_image[y]:
            trial = dict(assigned)
            trial[y] = g
            if close(trial) is not None:
                dfs(trial)

    dfs({0: identity})

    reps = []
    seen_conjugates = set()
    for H in found:
        key = _element_keys(H, cap)
        if key in seen_conjugates:
            continue
        if not isomorphic_to_spec(H, spec, cap):
            continue
        reps.append(H)
        seen_conjugates |= _subgroup_conjugates(elems, key, n)
    return reps


def babai_check(A, spec, cap=BRUTE_FORCE_CAP):
    """One conjugacy class of regular copies means the structure behind A
    is a CI-object for this group; two classes give a witness pair."""
    transcript = []
    reps = regular_subgroups(A, spec, cap)
    transcript.append({"event": "regular_subgroup_classes", "count": len(reps)})
    if not reps:
        return CiVerdict("inconclusive", None, 0, transcript)
    if len(reps) == 1:
        return CiVerdict("ci_for_this_structure", None, 1, transcript)
    transcript.append({"event": "witness_pair",
                       "orders": [reps[0].order, reps[1].order]})
    return CiVerdict("not_ci_witness", (reps[0], reps[1]), len(reps),
                     transcript)


def holomorph_witness(spec, cap=BRUTE_FORCE_CAP):
    """Run the full witness pipeline on the inner holomorph of a group.

    Builds the group generated by both regular representations, tests
    whether it is 3-closed, and asks whether the left and right copies
    are conjugate inside it.  A 3-closed holomorph with nonconjugate
    left/right copies certifies a non-CI ternary structure.
    """
    if spec.size > 64:
        raise ValueError("group order exceeds the arity-3 closure budget")
    A = inner_holomorph(spec)
    GL = regular_representation(spec, "left").group
    GR = regular_representation(spec, "right").group
    c = are_conjugate_subgroups(A, GL, GR, cap)
    return {"holomorph_order": A.order,
            "is_3_closed": is_k_closed(A, 3),
            "left_right_conjugate": c is not None}


def _orbit_partition(H):
    return BlockSystem(H.degree, H.orbits())


def partition_transporter(ambient, source, target, cap=BRUTE_FORCE_CAP):
    """Some w in ambient with w^-1(source) = target, or None.

    Breadth-first search over the orbit of the source partition; states
    are partitions, edges are generators, and exhausting the orbit
    certifies that no transporter exists.
    """
    if source == target:
        return Permutation.identity(ambient.degree)
    gen_invs = [(g, g.inverse()) for g in ambient.generators]
    start = source
    seen = {start}
    frontier = [(start, Permutation.identity(ambient.degree))]
    while frontier:
        new = []
        for part, w in frontier:
            for g, ginv in gen_invs:
                image = part.apply(ginv)
                if image in seen:
                    continue
                wg = w * g
                if image == target:
                    return wg
                seen.add(image)
                if len(seen) > cap:
                    raise CapExceededError("partition orbit exceeds the cap")
                new.append((image, wg))
        frontier = new
    return None


def align_sylow_orbits(R, T, p, ambient=None, cap=BRUTE_FORCE_CAP):
    """A conjugator making the Sylow p-orbit partitions of R and T agree.

    Returns d in <R, T> such that the orbits of a Sylow p-subgroup of T^d
    coincide with the orbits of a Sylow p-subgroup of R; those shared
    orbits then form a normal block system of <R, T^d>.  None means the
    entire partition orbit was searched without a match.
    """
    if not (_is_prime(p) and p % 2 == 1):
        raise ValueError("p must be an odd prime")
    if R.order % p != 0:
        raise ValueError("p must divide the group order")
    if not (R.is_regular() and T.is_regular()):
        raise ValueError("R and T must be regular")
    if not isomorphic_groups(R, T, cap):
        raise ValueError("R and T must be isomorphic")
    if ambient is None:
        ambient = PermGroup(R.degree,
                            list(R.generators) + list(T.generators))
    if ambient.order > cap:
        raise CapExceededError("ambient group exceeds the cap")
    PR = _orbit_partition(sylow_subgroup(R, p, cap))
    PT = _orbit_partition(sylow_subgroup(T, p, cap))
    # orbits of (T_p)^d are d^-1 applied to the orbits of T_p
    return partition_transporter(ambient, PT, PR, cap)


def canonical_ratio_patterns(order):
    """The admissible block-size ratio sequences for a group of this order.

    The main pattern lists the primes of the order in nonincreasing order.
    The exceptional patterns replace the tail when a quotient of order 12
    or 24 forces blocks of size 4, or an order-24 quotient with a cyclic
    Sylow 2-subgroup interleaves a 2 before the 3.  Returns a dict
    mapping ratio tuple -> tag (None for the main pattern).
    """
    primes = prime_factors(order)
    e = primes.count(2)
    odd = sorted((q for q in primes if q != 2), reverse=True)
    patterns = {tuple(odd) + (2,) * e: None}
    if 3 in odd:
        head = tuple(q for q in odd if q != 3)
        if e == 2:
            patterns[head + (4, 3)] = "dicyclic_quotient"
        if e == 3:
            patterns[head + (2, 3, 2, 2)] = "z3_by_z8_quotient_full"
            patterns[head + (2, 4, 3)] = "z3_by_z8_quotient_short"
            patterns[head + (4, 3, 2)] = "z3_by_z8_quotient_short"
    return patterns


def _normal_small_subgroups(G, orders, cap):
    """Subgroups of the 2-part of G, normal in G, of the given orders."""
    elems = G.elements(cap)
    out = []
    seen = set()
    for g in elems:
        o = g.order()
        if o in orders:
            H = PermGroup(G.degree, [g])
            key = _element_keys(H, cap)
            if key in seen:
                continue
            seen.add(key)
            if H.order in orders and _is_normal_by_keys(G, key):
                out.append(H)
    return out


def _is_normal_by_keys(G, keys):
    elems = [Permutation(im) for im in keys]
    for g in G.generators:
        ginv = g.inverse()
        for h in elems:
            if (ginv * h * g).images not in keys:
                return False
    return True


def _sylow_containing(G, seed, p, cap):
    """A Sylow p-subgroup of G containing the p-subgroup seed."""
    target = 1
    n = G.order
    while n % p == 0:
        target *= p
        n //= p
    P = seed
    while P.order < target:
        N = normalizer(G, P, cap)
        grown = None
        for g in N.elements(cap):
            o = g.order()
            if o == 1 or not _is_p_power(o, p) or P.contains(g):
                continue
            cand = PermGroup(G.degree, list(P.generators) + [g])
            if _is_p_power(cand.order, p):
                grown = cand
                break
        if grown is None:
            raise RuntimeError("sylow extension failed")
        P = grown
    return P


def _is_p_power(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def _two_group_chain(J):
    """A full chain of normal block systems of a transitive 2-group.

    Orbits of a central involution give size-2 blocks; recurse on the
    quotient.  Returns the proper nontrivial systems, ascending.
    """
    n = J.degree
    if n <= 2:
        return []
    z = None
    for g in J.elements():
        if g.order() == 2 and all(g * h == h * g for h in J.generators):
            z = g
            break
    if z is None:
        raise RuntimeError("transitive 2-group with no central involution")
    base = BlockSystem(n, PermGroup(n, [z]).orbits())
    act = action_on_blocks(J, base)
    return [base] + [pullback_system(s, base)
                     for s in _two_group_chain(act.group)]


def _two_group_tail(R, T, cap, transcript):
    """Conjugate T into a common Sylow 2-subgroup with R and chain down.

    Returns (conjugator, proper systems ascending) for the 2-group pair.
    """
    n = R.degree
    if n == 1:
        return Permutation.identity(1), []
    ambient = PermGroup(n, list(R.generators) + list(T.generators))
    if _is_p_power(ambient.order, 2):
        d = Permutation.identity(n)
    else:
        P = _sylow_containing(ambient, R, 2, cap)
        Pkeys = _element_keys(P, cap)
        d = None
        for c in ambient.elements(cap):
            cinv = c.inverse()
            if all((cinv * t * c).images in Pkeys for t in T.generators):
                d = c
                break
        if d is None:
            raise RuntimeError("no conjugate of T inside the chosen Sylow")
        transcript.append({"event": "two_group_conjugated",
                           "conjugator": list(d.images)})
    dinv = d.inverse()
    J = PermGroup(n, list(R.generators)
                  + [dinv * g * d for g in T.generators])
    return d, _two_group_chain(J)


def _quotient_pair(R, T, bs):
    """Images of R and T on the blocks of a shared system."""
    ambient = PermGroup(R.degree, list(R.generators) + list(T.generators))
    act = action_on_blocks(ambient, bs)
    RB = PermGroup(len(bs.blocks), [act.image(g) for g in R.generators])
    TB = PermGroup(len(bs.blocks), [act.image(g) for g in T.generators])
    return act, RB, TB


def _descend(R, T, cap, transcript):
    """Recursive tower construction.

    Returns (conjugator c, proper nontrivial systems of <R, T^c>
    ascending, exceptional tag or None).
    """
    n = R.degree
    ident = Permutation.identity(n)
    if n == 1:
        return ident, [], None
    odd = sorted({q for q in prime_factors(R.order) if q != 2}, reverse=True)
    if not odd:
        d, chain = _two_group_tail(R, T, cap, transcript)
        return d, chain, None
    p = odd[0]
    delta = align_sylow_orbits(R, T, p, cap=cap)
    if delta is not None:
        base = _orbit_partition(sylow_subgroup(R, p, cap))
        tag = None
        transcript.append({"event": "aligned", "prime": p,
                           "block_size": base.block_size})
    else:
        transcript.append({"event": "alignment_failed", "prime": p})
        delta, base, tag = _exceptional_descent(R, T, cap, transcript)
        if delta is None:
            return None, None, None
    T1 = T.conjugate(delta)
    act, RB, TB = _quotient_pair(R, T1, base)
    cq, subtower, subtag = _descend(RB, TB, cap, transcript)
    if cq is None:
        return None, None, None
    lift = act.preimage(cq)
    if lift is None:
        raise RuntimeError("quotient conjugator has no preimage")
    total = delta * lift
    tower = [base] + [pullback_system(s, base) for s in subtower]
    return total, tower, tag or subtag


def _exceptional_descent(R, T, cap, transcript):
    """Fallback when no odd-prime alignment exists: align the orbit
    partition of a small normal 2-subgroup instead (blocks of size 4,
    then 2)."""
    ambient = PermGroup(R.degree, list(R.generators) + list(T.generators))
    for size in (4, 2):
        if R.order % size != 0:
            continue
        for HR in _normal_small_subgroups(R, {size}, cap):
            PR = _orbit_partition(HR)
            for HT in _normal_small_subgroups(T, {size}, cap):
                PT = _orbit_partition(HT)
                d = partition_transporter(ambient, PT, PR, cap)
                if d is None:
                    continue
                dinv = d.inverse()
                joint = PermGroup(R.degree, list(R.generators)
                                  + [dinv * t * d for t in T.generators])
                verdict = classify_block_system(joint, PR, cap)
                if not (verdict["is_block_system"] and verdict["is_normal"]):
                    continue
                transcript.append({"event": "exceptional_aligned",
                                   "block_size": size})
                return d, PR, "exceptional_block_%d" % size
    transcript.append({"event": "exceptional_failed"})
    return None, None, None


def block_tower_search(R, T, cap=BRUTE_FORCE_CAP):
    """Find g making <R, T^g> normally imprimitive all the way down.

    Aligns Sylow orbit partitions largest odd prime first, recurses
    through the quotient action on blocks, and finishes the 2-group tail
    inside a common Sylow 2-subgroup.  The resulting ratio sequence is
    matched against the admissible patterns for this order.
    """
    for H, name in ((R, "R"), (T, "T")):
        if not H.is_regular():
            raise ValueError(f"{name} must be regular")
    verdict = group_in_family_R(R, cap)
    if not verdict["member"]:
        raise ValueError("R is outside the supported family")
    if not isomorphic_groups(R, T, cap):
        raise ValueError("R and T must be isomorphic")
    ambient = PermGroup(R.degree, list(R.generators) + list(T.generators))
    if ambient.order > cap:
        raise CapExceededError("ambient group exceeds the cap")
    transcript = []
    c, tower, tag = _descend(R, T, cap, transcript)
    if c is None:
        return {"status": "failure", "transcript": transcript}
    n = R.degree
    full = [BlockSystem.singletons(n)] + tower + [BlockSystem.one_block(n)]
    joint = PermGroup(n, list(R.generators)
                      + [g for g in T.conjugate(c).generators])
    check = verify_tower(joint, full, require_normal=True, cap=cap)
    if not (check["m_step"] and check["normal"]):
        return {"status": "failure", "transcript": transcript,
                "verify": check}
    ratios = check["index_sequence"]
    patterns = canonical_ratio_patterns(R.order)
    if tuple(ratios) in patterns:
        tag = patterns[tuple(ratios)] or tag
    else:
        transcript.append({"event": "pattern_mismatch", "ratios": ratios})
    return TowerResult(c, full, ratios, tag, transcript)


def support_decomposition(N, bs, cap=BRUTE_FORCE_CAP):
    """Supports of the simple direct factors of the socle of N.

    N must act on each cell of bs, with socle restricting to a transitive
    nonabelian simple group there; the factor supports then partition the
    points into cells coarsening bs.
    """
    S = socle(N, cap)
    for cell in bs.blocks:
        restr = block_restriction(S, cell, cap)
        if not restr.is_transitive():
            raise ValueError("socle is intransitive on a block")
        if all(a * b == b * a for a in restr.generators
               for b in restr.generators):
            raise ValueError("socle restricts to an abelian group on a block")
        mins = minimal_normal_subgroups(restr, cap)
        if len(mins) != 1 or mins[0].order != restr.order:
            raise ValueError("socle restriction to a block is not simple")
    factors = minimal_normal_subgroups(S, cap)
    cells = [tuple(support(F)) for F in factors]
    covered = sorted(x for cell in cells for x in cell)
    if covered != list(range(N.degree)):
        raise ValueError("factor supports do not partition the points")
    return sorted(cells)


def semiregular_classes(T, p, cap=BRUTE_FORCE_CAP):
    """Number of T-conjugacy classes of semiregular order-p subgroups."""
    if not _is_prime(p):
        raise ValueError("p must be prime")
    subs = set()
    for g in T.elements(cap):
        if g.order() != p:
            continue
        if any(g(x) == x for x in range(T.degree)):
            continue
        key = frozenset((g ** i).images for i in range(p))
        subs.add(key)
    gens = [(g, g.inverse()) for g in T.generators]
    classes = 0
    remaining = set(subs)
    while remaining:
        start = next(iter(remaining))
        classes += 1
        orbit = {start}
        frontier = [start]
        while frontier:
            new = []
            for key in frontier:
                elems = [Permutation(im) for im in key]
                for g, ginv in gens:
                    image = frozenset((ginv * h * g).images for h in elems)
                    if image not in orbit:
                        orbit.add(image)
                        new.append(image)
            frontier = new
        remaining -= orbit
    return classes
