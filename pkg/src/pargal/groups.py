"""Finite groups by Cayley table: cyclic groups, products, subgroups, quotients."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct


class GroupError(ValueError):
    """Invalid group data or an unsupported group-theoretic request."""


class FiniteGroup:
    """Group on indices 0..order-1 with label strings and a Cayley table."""

    __slots__ = ("labels", "table", "identity", "inverse", "_hash")

    def __init__(self, labels, table, validate: bool = True):
        self.labels = list(labels)
        self.table = tuple(tuple(row) for row in table)
        n = len(self.labels)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise GroupError("Cayley table shape does not match the label count")
        identity = None
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                identity = e
                break
        if identity is None:
            raise GroupError("no identity element in Cayley table")
        self.identity = identity
        inverse = [None] * n
        for a in range(n):
            for b in range(n):
                if self.table[a][b] == identity and self.table[b][a] == identity:
                    inverse[a] = b
                    break
            if inverse[a] is None:
                raise GroupError(f"element {self.labels[a]} has no two-sided inverse")
        self.inverse = tuple(inverse)
        self._hash = None
        if validate:
            for a in range(n):
                for b in range(n):
                    for c in range(n):
                        if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                            raise GroupError(
                                f"table is not associative at ({self.labels[a]}, {self.labels[b]}, {self.labels[c]})"
                            )

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(a + 1, n))

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise GroupError(f"no group element labelled {label!r}") from None

    def elements(self):
        return range(self.order)

    def __eq__(self, other):
        return (
            self is other
            or isinstance(other, FiniteGroup)
            and self.labels == other.labels
            and self.table == other.table
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(self.labels), self.table))
        return self._hash

    def __repr__(self):
        return f"FiniteGroup({self.labels})"


def make_cyclic(n: int, gen: str = "g") -> FiniteGroup:
    """Cyclic group of order n with elements ordered by powers of the generator."""
    if n < 1:
        raise GroupError(f"cyclic group order must be >= 1, got {n}")
    labels = ["1"] + [gen if k == 1 else f"{gen}{k}" for k in range(1, n)]
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(labels, table, validate=False)


def make_product(groups) -> FiniteGroup:
    """Direct product with lexicographic tuple ordering of elements."""
    groups = list(groups)
    if not groups:
        raise GroupError("product of an empty family of groups")
    if len(groups) == 1:
        return groups[0]
    orders = [g.order for g in groups]
    tuples = list(iproduct(*[range(o) for o in orders]))
    index = {t: i for i, t in enumerate(tuples)}
    labels = ["(" + ",".join(g.labels[x] for g, x in zip(groups, t)) + ")" for t in tuples]
    table = [
        [index[tuple(g.mul(a, b) for g, a, b in zip(groups, ta, tb))] for tb in tuples]
        for ta in tuples
    ]
    return FiniteGroup(labels, table, validate=False)


def product_index(groups, component_indices) -> int:
    """Index of a tuple element inside make_product(groups)."""
    idx = 0
    for g, x in zip(groups, component_indices):
        idx = idx * g.order + x
    return idx


@dataclass
class Subgroup:
    parent: FiniteGroup
    members: tuple

    def __post_init__(self):
        members = tuple(self.members)
        if not members or members[0] != self.parent.identity:
            raise GroupError("subgroup members must start with the identity")
        mset = set(members)
        if len(mset) != len(members):
            raise GroupError("subgroup members repeat")
        for a in members:
            if self.parent.inv(a) not in mset:
                raise GroupError("subgroup not closed under inverses")
            for b in members:
                if self.parent.mul(a, b) not in mset:
                    raise GroupError("subgroup not closed under products")
        object.__setattr__(self, "members", members)

    @property
    def order(self) -> int:
        return len(self.members)

    def contains(self, a: int) -> bool:
        return a in set(self.members)

    def as_group(self) -> FiniteGroup:
        """The subgroup as a group of its own, elements in member order."""
        pos = {m: i for i, m in enumerate(self.members)}
        labels = [self.parent.labels[m] for m in self.members]
        table = [[pos[self.parent.mul(a, b)] for b in self.members] for a in self.members]
        return FiniteGroup(labels, table, validate=False)


def subgroup_closure(group: FiniteGroup, seeds) -> Subgroup:
    seeds = list(seeds)
    for s in seeds:
        if not 0 <= s < group.order:
            raise GroupError(f"seed index {s} out of range")
    members = {group.identity}
    frontier = [group.identity]
    seeds = seeds + [group.inv(s) for s in seeds]
    while frontier:
        new = []
        for a in frontier:
            for s in seeds:
                c = group.mul(a, s)
                if c not in members:
                    members.add(c)
                    new.append(c)
        frontier = new
    ordered = [group.identity] + sorted(m for m in members if m != group.identity)
    return Subgroup(group, tuple(ordered))


def is_normal(group: FiniteGroup, sub: Subgroup) -> bool:
    mset = set(sub.members)
    for g in range(group.order):
        gi = group.inv(g)
        for h in sub.members:
            if group.mul(group.mul(g, h), gi) not in mset:
                return False
    return True


@dataclass
class QuotientData:
    parent: FiniteGroup
    sub: Subgroup
    transversal: tuple
    quotient: FiniteGroup
    coset_index: tuple  # parent element index -> quotient element index

    def coset_of(self, a: int) -> int:
        return self.coset_index[a]

    def rep(self, q: int) -> int:
        return self.transversal[q]


def quotient(group: FiniteGroup, sub: Subgroup, transversal=None) -> QuotientData:
    """Quotient by a normal subgroup, with a deterministic transversal.

    The default transversal is greedy in element order with the identity
    first; an explicit transversal (identity first, one representative per
    coset) may be supplied instead.
    """
    if not is_normal(group, sub):
        raise GroupError("quotient by a non-normal subgroup is undefined")
    coset_index = [None] * group.order
    if transversal is None:
        reps = []
        for a in range(group.order):
            if coset_index[a] is None:
                reps.append(a)
                q = len(reps) - 1
                for h in sub.members:
                    coset_index[group.mul(a, h)] = q
        transversal = tuple(reps)
    else:
        transversal = tuple(transversal)
        if not transversal or transversal[0] != group.identity:
            raise GroupError("transversal must start with the identity")
        for q, r in enumerate(transversal):
            for h in sub.members:
                x = group.mul(r, h)
                if coset_index[x] is not None:
                    raise GroupError("transversal hits a coset twice")
                coset_index[x] = q
        if any(c is None for c in coset_index):
            raise GroupError("transversal misses a coset")
    if len(transversal) * sub.order != group.order:
        raise GroupError("transversal size is inconsistent")
    labels = [group.labels[r] for r in transversal]
    table = [
        [coset_index[group.mul(a, b)] for b in transversal]
        for a in transversal
    ]
    q = FiniteGroup(labels, table, validate=False)
    return QuotientData(group, sub, transversal, q, tuple(coset_index))


def delta_subgroup(group: FiniteGroup) -> Subgroup:
    """The anti-diagonal {(g, g^-1)} inside G x G, for abelian G."""
    if not group.is_abelian():
        raise GroupError("delta subgroup requires an abelian group")
    gxg = make_product([group, group])
    members = [product_index([group, group], (g, group.inv(g))) for g in range(group.order)]
    members = [members[0]] + sorted(members[1:])
    return Subgroup(gxg, tuple(members))


def delta_transversal(group: FiniteGroup) -> tuple:
    """Coset representatives {(g, 1)} of delta G in G x G, identity first."""
    return tuple(product_index([group, group], (g, group.identity)) for g in range(group.order))


def all_subgroups(group: FiniteGroup):
    """Every subgroup, ordered by (order, members); fine for small groups."""
    from itertools import combinations

    seen = {}
    n = group.order
    others = [x for x in range(n) if x != group.identity]
    for size in range(0, len(others) + 1):
        for seeds in combinations(others, size):
            sub = subgroup_closure(group, seeds)
            seen[sub.members] = sub
    return [seen[m] for m in sorted(seen, key=lambda m: (len(m), m))]
