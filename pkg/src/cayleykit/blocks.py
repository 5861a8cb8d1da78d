"""Block systems, quotient and restricted actions, and imprimitivity towers."""

from __future__ import annotations

from .perm import (BRUTE_FORCE_CAP, PermGroup, Permutation, is_normal_in,
                   pointwise_stabilizer)


class BlockSystem:
    """An equal-cell partition of {0,...,n-1}, canonically ordered.

    Cells are sorted internally and listed by smallest element.  Whether the
    partition is actually invariant under a group is checked by the
    operations that require it, not by the constructor.
    """

    __slots__ = ("degree", "blocks")

    def __init__(self, degree, blocks):
        cells = sorted(tuple(sorted(cell)) for cell in blocks)
        covered = [x for cell in cells for x in cell]
        if sorted(covered) != list(range(degree)):
            raise ValueError("cells must partition the point set")
        sizes = {len(c) for c in cells}
        if len(sizes) != 1:
            raise ValueError("cells must have equal size")
        self.degree = degree
        self.blocks = tuple(cells)

    @classmethod
    def singletons(cls, degree):
        return cls(degree, [(x,) for x in range(degree)])

    @classmethod
    def one_block(cls, degree):
        return cls(degree, [tuple(range(degree))])

    @property
    def block_size(self):
        return len(self.blocks[0])

    def __len__(self):
        return len(self.blocks)

    def is_trivial(self):
        return self.block_size in (1, self.degree)

    def block_index_of(self):
        """point -> index of its cell."""
        idx = [0] * self.degree
        for i, cell in enumerate(self.blocks):
            for x in cell:
                idx[x] = i
        return idx

    def __eq__(self, other):
        return (isinstance(other, BlockSystem)
                and self.degree == other.degree
                and self.blocks == other.blocks)

    def __hash__(self):
        return hash((self.degree, self.blocks))

    def __lt__(self, other):
        return (self.block_size, self.blocks) < (other.block_size, other.blocks)

    def __repr__(self):
        return f"BlockSystem({self.degree}, {[list(b) for b in self.blocks]})"

    def is_invariant_under(self, G):
        cellset = set(self.blocks)
        return all(tuple(sorted(g(x) for x in cell)) in cellset
                   for g in G.generators for cell in self.blocks)

    def apply(self, p):
        """The image partition {p(B) : B}."""
        return BlockSystem(self.degree,
                           [tuple(p(x) for x in cell) for cell in self.blocks])

    def to_json(self):
        return {"degree": self.degree,
                "blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_json(cls, data):
        return cls(data["degree"], data["blocks"])


def minimal_block_containing(G, a, b):
    """The finest block system of transitive G with a and b in one block."""
    if not G.is_transitive():
        raise ValueError("group must be transitive")
    if a == b:
        raise ValueError("points must be distinct")
    n = G.degree
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        parent[max(rx, ry)] = min(rx, ry)
        return True

    union(a, b)
    changed = True
    while changed:
        changed = False
        for g in G.generators:
            for x in range(n):
                r = find(x)
                if x != r and union(g(x), g(r)):
                    changed = True
    cells = {}
    for x in range(n):
        cells.setdefault(find(x), []).append(x)
    return BlockSystem(n, cells.values())


def refines(B, C):
    """True iff every cell of B is contained in a cell of C."""
    if B.degree != C.degree:
        raise ValueError("degree mismatch")
    idx = C.block_index_of()
    return all(len({idx[x] for x in cell}) == 1 for cell in B.blocks)


def all_minimal_block_systems(G):
    """All minimal (w.r.t. refinement) nontrivial block systems."""
    if not G.is_transitive():
        raise ValueError("group must be transitive")
    candidates = set()
    for x in range(1, G.degree):
        bs = minimal_block_containing(G, 0, x)
        if not bs.is_trivial():
            candidates.add(bs)
    out = [bs for bs in candidates
           if not any(other != bs and refines(other, bs)
                      for other in candidates)]
    return sorted(out)


def all_block_systems(G):
    """Every nontrivial proper block system of transitive G.

    Recursive discovery: minimal systems, then pullbacks of the systems of
    each quotient action.
    """
    found = set()
    for bs in all_minimal_block_systems(G):
        found.add(bs)
        action = action_on_blocks(G, bs)
        if action.group.degree > 1:
            for sub in all_block_systems(action.group):
                found.add(pullback_system(sub, bs))
    return sorted(found)


def pullback_system(quotient_bs, bs):
    """Blow a partition of block indices back up to a partition of points."""
    cells = []
    for qcell in quotient_bs.blocks:
        merged = []
        for i in qcell:
            merged.extend(bs.blocks[i])
        cells.append(merged)
    return BlockSystem(bs.degree, cells)


def orbit_block_system(G, N):
    """The orbit partition of a normal subgroup N as a block system of G."""
    if not is_normal_in(N, G):
        raise ValueError("N is not normal in G")
    orbs = N.orbits()
    if len({len(o) for o in orbs}) != 1:
        raise ValueError("orbits of N do not have equal size")
    return BlockSystem(G.degree, orbs)


def fix_blocks(G, bs, cap=BRUTE_FORCE_CAP, strategy="auto"):
    """The kernel of G's action on the blocks of bs.

    strategy: "kernel" uses a stabilizer chain on the combined
    points+blocks action, "filter" enumerates G, "auto" picks by order.
    """
    if not bs.is_invariant_under(G):
        raise ValueError("partition is not invariant under G")
    if strategy == "auto":
        strategy = "filter" if G.order <= 10**4 else "kernel"
    if strategy == "filter":
        cellset = list(bs.blocks)
        kept = [g for g in G.elements(cap)
                if all(tuple(sorted(g(x) for x in cell)) == cell
                       for cell in cellset)]
        return PermGroup(G.degree, kept)
    if strategy == "kernel":
        combined = _combined_action(G, bs)
        n = G.degree
        block_pts = list(range(n, n + len(bs.blocks)))
        stab = pointwise_stabilizer(combined, block_pts)
        return PermGroup(n, [Permutation(g.images[:n]) for g in stab.generators])
    raise ValueError(f"unknown strategy {strategy!r}")


def _block_image(p, bs, idx=None):
    """The permutation induced by p on block indices."""
    if idx is None:
        idx = bs.block_index_of()
    return Permutation(idx[p(cell[0])] for cell in bs.blocks)


def _combined_action(G, bs):
    """G acting simultaneously on points and on shifted block indices."""
    n = G.degree
    idx = bs.block_index_of()
    gens = []
    for g in G.generators:
        tail = [n + x for x in _block_image(g, bs, idx).images]
        gens.append(Permutation(list(g.images) + tail))
    return PermGroup(n + len(bs.blocks), gens)


class BlockAction:
    """Image of G on block indices, with the witnessing homomorphism."""

    def __init__(self, source, system):
        if not system.is_invariant_under(source):
            raise ValueError("partition is not invariant under G")
        self.source = source
        self.system = system
        self._idx = system.block_index_of()
        self.group = PermGroup(
            len(system.blocks),
            [_block_image(g, system, self._idx) for g in source.generators])

    def image(self, p):
        """g -> g^B for any element of the source group."""
        return _block_image(p, self.system, self._idx)

    def preimage(self, q):
        """Some g in the source group with image(g) == q, or None."""
        combined = _combined_action(self.source, self.system)
        n = self.source.degree
        sources = list(range(n, n + len(self.system.blocks)))
        targets = [n + q(i) for i in range(len(self.system.blocks))]
        from .perm import element_mapping_points
        g = element_mapping_points(combined, sources, targets)
        if g is None:
            return None
        return Permutation(g.images[:n])


def action_on_blocks(G, bs):
    return BlockAction(G, bs)


def block_restriction(G, B, cap=BRUTE_FORCE_CAP):
    """The induced group of the setwise stabilizer of B, relabeled on B."""
    B = tuple(sorted(B))
    Bset = set(B)
    relabel = {x: i for i, x in enumerate(B)}
    gens = []
    for g in G.elements(cap):
        if all(g(x) in Bset for x in B):
            gens.append(Permutation(relabel[g(x)] for x in B))
    H = PermGroup(len(B), gens)
    if not _is_block(G, B, cap):
        raise ValueError("B is not a block of G")
    return H


def _is_block(G, B, cap):
    Bset = set(B)
    for g in G.elements(cap):
        image = {g(x) for x in B}
        if image != Bset and image & Bset:
            return False
    return True


def classify_block_system(G, partition, cap=BRUTE_FORCE_CAP):
    """Is the partition a block system of G, and is it normal?"""
    try:
        bs = partition if isinstance(partition, BlockSystem) \
            else BlockSystem(G.degree, partition)
    except ValueError as exc:
        raise ValueError(f"malformed partition: {exc}") from exc
    if not bs.is_invariant_under(G):
        return {"is_block_system": False, "is_normal": False}
    fix = fix_blocks(G, bs, cap)
    normal = all(set(fix.orbit(cell[0])) == set(cell) for cell in bs.blocks)
    return {"is_block_system": True, "is_normal": normal}


def quotient_system(C, B):
    """The partition of B-indices induced by the coarser system C."""
    if not refines(B, C):
        raise ValueError("B does not refine C")
    idx = B.block_index_of()
    cells = [sorted({idx[x] for x in cell}) for cell in C.blocks]
    return BlockSystem(len(B.blocks), cells)


def verify_tower(G, towers, require_normal=True, cap=BRUTE_FORCE_CAP):
    """Check a properly nested chain of (normal) block systems of G.

    Returns m_step/normal flags, the consecutive block-size ratios, and the
    index at which the chain breaks, if it does.
    """
    ratios = []
    normal = True
    for i, bs in enumerate(towers):
        if bs.degree != G.degree:
            return {"m_step": False, "normal": False,
                    "index_sequence": ratios, "broken_at": i}
        cls = classify_block_system(G, bs, cap)
        if not cls["is_block_system"]:
            return {"m_step": False, "normal": False,
                    "index_sequence": ratios, "broken_at": i}
        normal = normal and cls["is_normal"]
        if i > 0:
            prev = towers[i - 1]
            if not (refines(prev, bs) and prev.block_size < bs.block_size):
                return {"m_step": False, "normal": normal,
                        "index_sequence": ratios, "broken_at": i}
            ratios.append(bs.block_size // prev.block_size)
    if require_normal and not normal:
        return {"m_step": True, "normal": False,
                "index_sequence": ratios, "broken_at": None}
    return {"m_step": True, "normal": normal,
            "index_sequence": ratios, "broken_at": None}
