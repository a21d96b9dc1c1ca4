"""Unital partial actions: axioms, restriction, invariants, Galois machinery.

A :class:`PartialAction` stores, per group element g, the central idempotent
1_g generating the ideal S_g and the total matrix M_g of x |-> alpha_g(x 1_{g^-1})
on all of S.  Every formula below composes alpha_g with multiplication by
1_{g^-1} anyway, so the total form evaluates them verbatim; in particular
axiom (P4) becomes the matrix identity M_g M_h = E_g M_{gh} with E_g the
multiplication-by-1_g matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .scalars import Matrix, invertible, ring_idempotents, solve
from .algebra import (
    Algebra,
    AlgebraError,
    AlgebraMorphism,
    Element,
    SubAlgebra,
    ProductAlgebra,
    TensorProduct,
    find_split_presentation,
    product_over_ideals,
    subalgebra_from_constraints,
    tensor,
    unital_ideal,
)
from .groups import FiniteGroup, Subgroup


class PartialAction:
    """Unital partial action of a finite group on a finite-rank algebra."""

    __slots__ = ("group", "algebra", "idems", "maps", "_idem_mats")

    def __init__(self, group: FiniteGroup, algebra: Algebra, idems, maps):
        self.group = group
        self.algebra = algebra
        self.idems = tuple(idems)
        self.maps = tuple(maps)
        if len(self.idems) != group.order or len(self.maps) != group.order:
            raise AlgebraError("need one idempotent and one matrix per group element")
        for e in self.idems:
            if e.algebra != algebra:
                raise AlgebraError("idempotent from a different algebra")
            if len(e.coords) != algebra.rank:
                raise AlgebraError("idempotent coordinate length mismatch")
        for m in self.maps:
            if m.nrows != algebra.rank or m.ncols != algebra.rank:
                raise AlgebraError("action matrix shape mismatch")
        self._idem_mats = [None] * group.order

    def idem(self, g: int) -> Element:
        return self.idems[g]

    def map(self, g: int) -> Matrix:
        return self.maps[g]

    def idem_matrix(self, g: int) -> Matrix:
        if self._idem_mats[g] is None:
            self._idem_mats[g] = self.algebra.mult_matrix(self.idems[g].coords)
        return self._idem_mats[g]

    def apply(self, g: int, x: Element) -> Element:
        """alpha_g(x * 1_{g^-1})."""
        return Element(self.algebra, self.maps[g].matvec(list(x.coords)))

    def ideal(self, g: int):
        return unital_ideal(self.algebra, self.idems[g])

    def is_global(self) -> bool:
        one = self.algebra.one()
        return all(e == one for e in self.idems)

    def __eq__(self, other):
        return (
            isinstance(other, PartialAction)
            and self.group == other.group
            and self.algebra == other.algebra
            and self.idems == other.idems
            and self.maps == other.maps
        )

    def __hash__(self):
        return hash((self.group, self.algebra, self.idems))

    def __repr__(self):
        return f"PartialAction({self.group!r} on {self.algebra!r})"


def global_action(group: FiniteGroup, algebra: Algebra, maps) -> PartialAction:
    one = algebra.one()
    return PartialAction(group, algebra, [one] * group.order, maps)


@dataclass
class Check:
    name: str
    passed: bool
    witness: str | None = None


@dataclass
class ActionReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def add(self, name: str, passed: bool, witness: str | None = None):
        self.checks.append(Check(name, passed, witness))

    def lines(self):
        out = []
        for c in self.checks:
            mark = "pass" if c.passed else "FAIL"
            w = f"  [{c.witness}]" if c.witness else ""
            out.append(f"{mark}  {c.name}{w}")
        return out


def verify_partial_action(act: PartialAction) -> ActionReport:
    """Check the unital partial-action axioms; failures carry witnesses."""
    g_labels = act.group.labels
    A = act.algebra
    rep = ActionReport()

    bad = [g_labels[g] for g in act.group.elements() if not act.idems[g].is_idempotent()]
    rep.add("unital: each 1_g is idempotent", not bad, None if not bad else f"1_{bad[0]} not idempotent")

    p2 = act.idems[act.group.identity] == A.one() and act.maps[act.group.identity].is_identity()
    rep.add("(P2) S_1 = S and alpha_1 = id", p2, None if p2 else "identity component is not the identity")

    # (P1): M_g kills (1 - 1_{g^-1}), lands in S_g, is multiplicative and
    # unital on S_{g^-1}, and M_{g^-1} M_g is multiplication by 1_{g^-1}.
    witness = None
    for g in act.group.elements():
        gi = act.group.inv(g)
        mg = act.maps[g]
        if mg.mul(act.idem_matrix(gi)) != mg:
            witness = f"g={g_labels[g]}: M_g != M_g E_(g^-1)"
            break
        if act.idem_matrix(g).mul(mg) != mg:
            witness = f"g={g_labels[g]}: image of alpha_g escapes S_g"
            break
        if act.apply(g, act.idems[gi]) != act.idems[g]:
            witness = f"g={g_labels[g]}: alpha_g(1_(g^-1)) != 1_g"
            break
        if mg.mul(act.maps[gi]) != act.idem_matrix(g):
            witness = f"g={g_labels[g]}: alpha_g alpha_(g^-1) is not multiplication by 1_g"
            break
        ideal = act.ideal(gi)
        rows = ideal.basis.rows
        done = False
        for i in range(len(rows)):
            for j in range(i, len(rows)):
                prod = A.mul_coords(rows[i], rows[j])
                lhs = mg.matvec(prod)
                rhs = A.mul_coords(mg.matvec(rows[i]), mg.matvec(rows[j]))
                if lhs != rhs:
                    witness = f"g={g_labels[g]}: alpha_g not multiplicative on S_(g^-1) basis pair ({i},{j})"
                    done = True
                    break
            if done:
                break
        if witness:
            break
    rep.add("(P1) alpha_g: S_(g^-1) -> S_g is an algebra isomorphism", witness is None, witness)

    witness = None
    for g in act.group.elements():
        gi = act.group.inv(g)
        for h in act.group.elements():
            lhs = act.apply(g, act.idems[gi] * act.idems[h])
            rhs = act.idems[g] * act.idems[act.group.mul(g, h)]
            if lhs != rhs:
                witness = f"g={g_labels[g]}, h={g_labels[h]}"
                break
        if witness:
            break
    rep.add("(P3) alpha_g(S_(g^-1) /\\ S_h) = S_g /\\ S_gh", witness is None, witness)

    witness = None
    for g in act.group.elements():
        for h in act.group.elements():
            lhs = act.maps[g].mul(act.maps[h])
            rhs = act.idem_matrix(g).mul(act.maps[act.group.mul(g, h)])
            if lhs != rhs:
                col = next(
                    j for j in range(A.rank) if [r[j] for r in lhs.rows] != [r[j] for r in rhs.rows]
                )
                witness = f"g={g_labels[g]}, h={g_labels[h]}, basis={A.labels[col]}"
                break
        if witness:
            break
    rep.add("(P4) alpha_g alpha_h extends to alpha_gh", witness is None, witness)
    return rep


def restrict(act: PartialAction, sub: Subgroup) -> PartialAction:
    """The partial action of a subgroup on the same carrier."""
    if sub.parent != act.group:
        raise AlgebraError("subgroup of a different group")
    grp = sub.as_group()
    idems = [act.idems[m] for m in sub.members]
    maps = [act.maps[m] for m in sub.members]
    return PartialAction(grp, act.algebra, idems, maps)


def trace_map(act: PartialAction) -> Matrix:
    total = Matrix.zero(act.algebra.ring, act.algebra.rank, act.algebra.rank)
    for g in act.group.elements():
        total = total.add(act.maps[g])
    return total


def trace(act: PartialAction, x: Element) -> Element:
    """tr(x) = sum_g alpha_g(x 1_{g^-1}); always lands in the invariants."""
    out = Element(act.algebra, trace_map(act).matvec(list(x.coords)))
    for g in act.group.elements():
        assert act.apply(g, out) == out * act.idems[g], "trace left the invariant subalgebra"
    return out


def invariants(act: PartialAction) -> SubAlgebra:
    """S^alpha = {x : alpha_g(x 1_{g^-1}) = x 1_g for all g} as an algebra."""
    ring = act.algebra.ring
    rows = []
    for g in act.group.elements():
        diff = act.maps[g].sub(act.idem_matrix(g))
        rows.extend(diff.rows)
    constraints = Matrix.from_rows(ring, rows, act.algebra.rank)
    return subalgebra_from_constraints(act.algebra, constraints)


@dataclass
class GaloisCoordinates:
    action: PartialAction
    pairs: list  # of (Element, Element)

    def verify(self) -> bool:
        A = self.action.algebra
        for g in self.action.group.elements():
            acc = A.zero()
            for x, y in self.pairs:
                acc = acc + x * self.action.apply(g, y)
            target = A.one() if g == self.action.group.identity else A.zero()
            if acc != target:
                return False
        return True


def galois_coordinates(act: PartialAction):
    """Partial Galois coordinates, or None when the extension is not Galois.

    Finds an element of S (x) S with sum_i x_i alpha_g(y_i 1_{g^-1}) =
    delta_{1,g} 1_S by one linear solve in rank^2 unknowns.
    """
    A = act.algebra
    r = A.rank
    ring = A.ring
    cols = []
    basis = [[1 if t == i else 0 for t in range(r)] for i in range(r)]
    images = {g: [act.maps[g].matvec(basis[j]) for j in range(r)] for g in act.group.elements()}
    for i in range(r):
        for j in range(r):
            col = []
            for g in act.group.elements():
                col.extend(A.mul_coords(basis[i], images[g][j]))
            cols.append(col)
    rhs = []
    for g in act.group.elements():
        rhs.extend(A.unit if g == act.group.identity else (0,) * r)
    mat = Matrix(ring, [list(row) for row in zip(*cols)], r * r)
    sol = solve(mat, list(rhs))
    if sol is None:
        return None
    pairs = []
    for i in range(r):
        ycoords = sol.particular[i * r : (i + 1) * r]
        if any(c != 0 for c in ycoords):
            pairs.append((A.basis_element(i), A.element(ycoords)))
    coords = GaloisCoordinates(act, pairs)
    assert coords.verify(), "solver produced a non-witness"
    return coords


@dataclass
class PhiMap:
    """phi: S (x) S -> prod_g S_g, phi(x(x)y) = (x alpha_g(y 1_{g^-1}))_g.

    The tensor is over the base ring; ``bijective`` reports whether the map
    induced on the tensor over the invariant subalgebra is a bijection (the
    two coincide when S^alpha is the base ring, as for every Galois class).
    """

    action: PartialAction
    tensor: TensorProduct
    product: ProductAlgebra
    morphism: AlgebraMorphism
    bijective: bool


def phi_map(act: PartialAction) -> PhiMap:
    from .scalars import canonical_row_form, kernel as kernel_of, modules_equal

    A = act.algebra
    r = A.rank
    t = tensor(A, A)
    prod = product_over_ideals([act.ideal(g) for g in act.group.elements()], labels=act.group.labels)
    basis = [[1 if t0 == i else 0 for t0 in range(r)] for i in range(r)]
    cols = []
    for i in range(r):
        for j in range(r):
            comps = [A.mul_coords(basis[i], act.maps[g].matvec(basis[j])) for g in act.group.elements()]
            cols.append(prod.from_components(comps).coords)
    mat = Matrix(A.ring, [list(row) for row in zip(*cols)], r * r)
    morphism = AlgebraMorphism(t.algebra, prod.algebra, mat)
    # S^alpha-bilinearity relations (a x) (x) y - x (x) (a y) span the kernel
    # of the projection onto the relative tensor
    inv = invariants(act)
    relations = []
    for arow in inv.basis.rows:
        amat = A.mult_matrix(arow)
        moved = [amat.matvec(basis[i]) for i in range(r)]
        for i in range(r):
            for j in range(r):
                v1 = t.pair_coords(moved[i], basis[j])
                v2 = t.pair_coords(basis[i], moved[j])
                diff = [A.ring.sub(a, b) for a, b in zip(v1, v2)]
                if any(x != 0 for x in diff):
                    relations.append(diff)
    rel_module = canonical_row_form(Matrix.from_rows(A.ring, relations, r * r))
    ker = kernel_of(mat)
    image_rows = canonical_row_form(Matrix.from_rows(A.ring, [list(c) for c in cols], prod.algebra.rank))
    bijective = modules_equal(ker, rel_module) and image_rows.is_identity()
    return PhiMap(act, t, prod, morphism, bijective)


def inverse_action(act: PartialAction) -> PartialAction:
    """The star action: S*_g = S_{g^-1} with alpha*_g = alpha_{g^-1}."""
    inv = act.group.inv
    idems = [act.idems[inv(g)] for g in act.group.elements()]
    maps = [act.maps[inv(g)] for g in act.group.elements()]
    return PartialAction(act.group, act.algebra, idems, maps)


def transport(act: PartialAction, new_group: FiniteGroup, index_map) -> PartialAction:
    """Relabel the acting group along an isomorphism.

    ``index_map[new_index] = old_index`` must be a group isomorphism from
    new_group onto act.group (checked).
    """
    if len(index_map) != new_group.order or new_group.order != act.group.order:
        raise AlgebraError("group relabeling size mismatch")
    if sorted(index_map) != list(range(act.group.order)):
        raise AlgebraError("group relabeling is not a bijection")
    for a in new_group.elements():
        for b in new_group.elements():
            if act.group.mul(index_map[a], index_map[b]) != index_map[new_group.mul(a, b)]:
                raise AlgebraError("group relabeling is not a homomorphism")
    idems = [act.idems[index_map[a]] for a in new_group.elements()]
    maps = [act.maps[index_map[a]] for a in new_group.elements()]
    return PartialAction(new_group, act.algebra, idems, maps)


@dataclass
class IsoResult:
    status: str  # "iso" | "none" | "undecided"
    morphism: AlgebraMorphism | None = None


def _base_ring_units(ring):
    """Primitive idempotents of the base ring (CRT factors); fields give [1]."""
    if ring.kind == "rationals" or ring.is_field:
        return [1]
    idems = ring_idempotents(ring)
    prims = []
    for e in idems:
        if e == 0:
            continue
        if any(e != f and (e * f) % ring.n == f for f in idems if f != 0):
            continue  # not minimal
        prims.append(e)
    # minimal nonzero idempotents; they sum to 1
    return prims


def iso_check(a: PartialAction, b: PartialAction) -> IsoResult:
    """Search for a partial G-isomorphism between two actions.

    Requires split carriers (returns "undecided" otherwise).  Candidate maps
    send primitive idempotents to primitive idempotents (per CRT factor of
    the base ring), are filtered by f(S_g) <= S'_g and f alpha_g = alpha'_g f,
    and the first witness in canonical order is returned.
    """
    if a.group != b.group:
        raise AlgebraError("iso_check: actions of different groups")
    if a.algebra.ring != b.algebra.ring:
        raise AlgebraError("iso_check: actions over different base rings")
    pa = find_split_presentation(a.algebra)
    pb = find_split_presentation(b.algebra)
    if pa is None or pb is None:
        return IsoResult("undecided")
    for morphism in _enumerate_iso_witnesses(a, b, pa, pb):
        return IsoResult("iso", morphism)
    return IsoResult("none")


def _enumerate_iso_witnesses(a: PartialAction, b: PartialAction, pa=None, pb=None):
    """Yield every partial G-isomorphism witness in canonical order."""
    pa = pa or find_split_presentation(a.algebra)
    pb = pb or find_split_presentation(b.algebra)
    if pa is None or pb is None:
        raise AlgebraError("iso witness enumeration needs split carriers")
    if a.algebra.rank != b.algebra.rank:
        return
    r = a.algebra.rank
    ring = a.algebra.ring
    ps = [list(e.coords) for e in pa.idempotents]
    qs = [list(e.coords) for e in pb.idempotents]
    # change of basis: source coords -> coefficients over the ps
    from .scalars import invert

    p_mat = Matrix(ring, [list(col) for col in zip(*ps)], r)
    to_p = invert(p_mat)
    sig_a = [tuple(1 if a.algebra.mul_coords(p, list(a.idems[g].coords)) == p else 0 for g in a.group.elements()) for p in ps]
    sig_b = [tuple(1 if b.algebra.mul_coords(q, list(b.idems[g].coords)) == q else 0 for g in b.group.elements()) for q in qs]
    units = _base_ring_units(ring)
    ems = {g: a.idem_matrix(g) for g in a.group.elements()}
    emt = {g: b.idem_matrix(g) for g in b.group.elements()}

    def candidate_matrices():
        perms = [sigma for sigma in permutations(range(r))]
        if len(units) == 1:
            pools = [perms]
        else:
            pools = [perms] * len(units)
        from itertools import product as iproduct

        for combo in iproduct(*pools):
            # f(p_i) = sum_t unit_t * q_{sigma_t(i)}
            ok = True
            for t, sigma in enumerate(combo):
                for i in range(r):
                    if any(sa > sb for sa, sb in zip(sig_a[i], sig_b[sigma[i]])):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            cols = []
            for i in range(r):
                col = [0] * r
                for t, sigma in enumerate(combo):
                    u = units[t]
                    q = qs[combo[t][i]]
                    for s in range(r):
                        col[s] = ring.add(col[s], ring.mul(u, q[s]))
                cols.append(col)
            img = Matrix(ring, [list(row) for row in zip(*cols)], r)
            yield img.mul(to_p)

    for fmat in candidate_matrices():
        ok = True
        for g in a.group.elements():
            gi = a.group.inv(g)
            if emt[g].mul(fmat).mul(ems[g]) != fmat.mul(ems[g]):
                ok = False
                break
            if fmat.mul(a.maps[g]) != b.maps[g].mul(fmat).mul(ems[gi]):
                ok = False
                break
        if not ok:
            continue
        if not invertible(fmat):
            continue
        morphism = AlgebraMorphism(a.algebra, b.algebra, fmat)
        if morphism.multiplicative_failure() is not None or not morphism.is_unital():
            continue
        yield morphism
