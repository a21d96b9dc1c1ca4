"""Harrison arithmetic: tensor actions, the product over delta G, inverse and
idempotent classes, the trivial extension, and the inverse-semigroup suite.

Classes of partial Galois extensions of the base ring with one abelian group
multiply by [S, a] * [S', a'] = [(S (x) S')^{delta G}, (a (x) a')_{(GxG)/delta G}],
with coset representatives fixed as {(g, 1)} so the identification of
(G x G)/delta G with G is definitional.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .scalars import Matrix, kernel, modules_equal
from .algebra import AlgebraError, Element, ProductAlgebra, SubAlgebra, product_over_ideals
from .groups import FiniteGroup, make_cyclic, make_product, delta_subgroup, delta_transversal
from .paction import (
    ActionReport,
    GaloisCoordinates,
    PartialAction,
    galois_coordinates,
    invariants,
    inverse_action,
    iso_check,
    phi_map,
    restrict,
    transport,
    verify_partial_action,
)
from .quotient import QuotientAction, quotient_action


class CertificationError(ValueError):
    """An extension failed its partial-Galois certificate."""


def _kron(ring, a: Matrix, b: Matrix) -> Matrix:
    rb, cb = b.nrows, b.ncols
    out = [[0] * (a.ncols * cb) for _ in range(a.nrows * rb)]
    mul = ring.mul
    for i, arow in enumerate(a.rows):
        for j, av in enumerate(arow):
            if av == 0:
                continue
            for s, brow in enumerate(b.rows):
                base_r = i * rb + s
                base_c = j * cb
                for t, bv in enumerate(brow):
                    if bv != 0:
                        out[base_r][base_c + t] = mul(av, bv)
    return Matrix(ring, out, a.ncols * cb)


def tensor_action(a: PartialAction, b: PartialAction) -> PartialAction:
    """The partial action of G_a x G_b on S (x) S' with ideals S_l (x) S'_t."""
    from .algebra import tensor

    if a.algebra.ring != b.algebra.ring:
        raise AlgebraError("tensor_action: base ring mismatch")
    grp = make_product([a.group, b.group])
    t = tensor(a.algebra, b.algebra)
    idems = []
    maps = []
    for l in a.group.elements():
        for s in b.group.elements():
            idems.append(t.pair(a.idems[l], b.idems[s]))
            maps.append(_kron(t.algebra.ring, a.maps[l], b.maps[s]))
    return PartialAction(grp, t.algebra, idems, maps)


def delta_fixed_ring(tensor_act: PartialAction, base_group: FiniteGroup) -> SubAlgebra:
    """Invariants of the restriction of a G x G action to delta G."""
    dsub = delta_subgroup(base_group)
    if dsub.parent != tensor_act.group:
        raise AlgebraError("delta_fixed_ring: the action is not one of G x G")
    return invariants(restrict(tensor_act, dsub))


@dataclass
class ExtensionClass:
    """A partial Galois extension of the base ring, with its certificates."""

    action: PartialAction
    witness: GaloisCoordinates
    fixed: SubAlgebra

    @staticmethod
    def certify(action: PartialAction) -> "ExtensionClass":
        rep = verify_partial_action(action)
        if not rep.passed:
            bad = rep.failures()[0]
            raise CertificationError(f"not a partial action: {bad.name} [{bad.witness}]")
        fixed = invariants(action)
        if fixed.algebra.rank != 1:
            raise CertificationError(
                f"fixed ring has rank {fixed.algebra.rank}, expected the base ring"
            )
        witness = galois_coordinates(action)
        if witness is None:
            raise CertificationError("no partial Galois coordinates exist")
        return ExtensionClass(action, witness, fixed)

    def star(self) -> "ExtensionClass":
        return ExtensionClass.certify(inverse_action(self.action))

    @property
    def group(self) -> FiniteGroup:
        return self.action.group

    def __repr__(self):
        return f"ExtensionClass(rank {self.action.algebra.rank} over {self.action.algebra.ring}, group {self.group.labels})"


def _quotient_by_delta(act: PartialAction, base_group: FiniteGroup) -> QuotientAction:
    dsub = delta_subgroup(base_group)
    if dsub.parent != act.group:
        raise AlgebraError("quotient by delta G needs an action of G x G")
    return quotient_action(act, dsub, transversal=delta_transversal(base_group))


def _identify_with_group(qa: QuotientAction, base_group: FiniteGroup) -> PartialAction:
    # transversal {(g,1)} is ordered by g, so coset q corresponds to group
    # element q; transport validates the isomorphism
    return transport(qa.action, base_group, list(base_group.elements()))


def harrison_product(c1: ExtensionClass, c2: ExtensionClass) -> ExtensionClass:
    """[S,a] * [S',a'] via the delta-G quotient of the tensor action."""
    g = c1.group
    if g != c2.group:
        raise AlgebraError("harrison_product: classes over different groups")
    if not g.is_abelian():
        raise AlgebraError("harrison_product: the group must be abelian")
    if c1.action.algebra.ring != c2.action.algebra.ring:
        raise AlgebraError("harrison_product: classes over different base rings")
    t = tensor_action(c1.action, c2.action)
    qa = _quotient_by_delta(t, g)
    return ExtensionClass.certify(_identify_with_group(qa, g))


def trivial_extension(group: FiniteGroup, ring=None) -> ExtensionClass:
    """E_G(R) with the regular translation action; the global identity class."""
    from .corpus import trivial_action
    from .scalars import QQ

    return ExtensionClass.certify(trivial_action(group, ring if ring is not None else QQ))


# ---------------------------------------------------------------------------
# the hat action on prod_g S_g and idempotent classes
# ---------------------------------------------------------------------------

@dataclass
class HatAction:
    base: PartialAction
    product: ProductAlgebra
    action: PartialAction  # of G x G on the product algebra

    def component_idem(self, l: int, t: int, g: int):
        """S-coordinates of the (l,t) ideal's g-component generator."""
        act = self.base
        gi = act.group.mul(act.group.inv(t), g)
        return (act.idems[g] * act.idems[l] * act.idems[gi]).coords


def hat_action(act: PartialAction) -> HatAction:
    """The action of G x G on prod_g S_g:
    component ltg of the image is alpha_l(x_g 1_{l^-1}) 1_{ltg}."""
    G = act.group
    A = act.algebra
    ring = A.ring
    prod = product_over_ideals([act.ideal(g) for g in G.elements()], labels=G.labels)
    P = prod.algebra
    gxg = make_product([G, G])
    idems = []
    maps = []
    idem_mats = {g: act.idem_matrix(g) for g in G.elements()}
    for l in G.elements():
        for t in G.elements():
            comps = []
            for g in G.elements():
                gi = G.mul(G.inv(t), g)
                comps.append(list((act.idems[g] * act.idems[l] * act.idems[gi]).coords))
            idems.append(prod.from_components(comps))
            lt = G.mul(l, t)
            mat = Matrix.zero(ring, P.rank, P.rank)
            for g in G.elements():
                comp_in = prod.components[g]
                if comp_in.rank == 0:
                    continue
                h = G.mul(lt, g)
                comp_out = prod.components[h]
                if comp_out.rank == 0:
                    continue
                # E_h M_l E_{tg} restricted to the blocks
                tg = G.mul(t, g)
                op = idem_mats[h].mul(act.maps[l]).mul(idem_mats[tg])
                for j, row in enumerate(comp_in.ideal.basis.rows):
                    target = prod.embed_component(h, op.matvec(list(row)))
                    for i in range(comp_out.rank):
                        mat.rows[comp_out.offset + i][comp_in.offset + j] = target[comp_out.offset + i]
            maps.append(mat)
    return HatAction(act, prod, PartialAction(gxg, P, idems, maps))


def hat_iso(act: PartialAction):
    """phi as a partial (G x G)-isomorphism from a (x) a* onto the hat action.

    Returns (morphism, report); the report certifies conditions (i) and (ii).
    """
    G = act.group
    hat = hat_action(act)
    ta = tensor_action(act, inverse_action(act))
    phi = phi_map(act)
    mat = phi.morphism.matrix
    rep = ActionReport()
    rep.add("phi is bijective", phi.bijective, None)
    ok, witness = True, None
    for q in ta.group.elements():
        e_t = ta.idem_matrix(q)
        e_h = hat.action.idem_matrix(q)
        if e_h.mul(mat).mul(e_t) != mat.mul(e_t):
            ok, witness = False, f"(l,t)={ta.group.labels[q]}"
            break
    rep.add("(i) phi(S_l (x) S*_t) <= hat ideal", ok, witness)
    ok, witness = True, None
    for q in ta.group.elements():
        qi = ta.group.inv(q)
        lhs = mat.mul(ta.maps[q])
        rhs = hat.action.maps[q].mul(mat).mul(ta.idem_matrix(qi))
        if lhs != rhs:
            ok, witness = False, f"(l,t)={ta.group.labels[q]}"
            break
    rep.add("(ii) phi intertwines the actions", ok, witness)
    return phi.morphism, rep


def delta_invariant_module(act: PartialAction, prod: ProductAlgebra) -> Matrix:
    """Solutions of alpha_l(d_g 1_{l^-1}) 1_g = d_g 1_l 1_{lg} inside prod_g S_g."""
    G = act.group
    A = act.algebra
    ring = A.ring
    rows = []
    incl_cols = []
    for g in G.elements():
        comp = prod.components[g]
        for j in range(comp.rank):
            incl_cols.append((g, list(comp.ideal.basis.rows[j])))
    for l in G.elements():
        e_l = act.idem_matrix(l)
        for g in G.elements():
            e_g = act.idem_matrix(g)
            e_lg = act.idem_matrix(G.mul(l, g))
            op = e_g.mul(act.maps[l]).sub(e_l.mul(e_lg))
            block_rows = [[0] * prod.algebra.rank for _ in range(A.rank)]
            for col_idx, (gg, vec) in enumerate(incl_cols):
                if gg != g:
                    continue
                out = op.matvec(vec)
                for r in range(A.rank):
                    block_rows[r][col_idx] = out[r]
            rows.extend(block_rows)
    return kernel(Matrix.from_rows(ring, rows, prod.algebra.rank))


def class_map_closed_form(act: PartialAction, prod: ProductAlgebra, x: Element, l: int) -> Element:
    """The specialized idempotent-class action formula at coset (l,1) delta G.

    Componentwise, with output component u and source component g = l^-1 u:

        out_u = d_g 1_u
              + sum_{i=2}^m prod_{j=1}^{i-1} (1_u - 1_u 1_{h_j} 1_{h_j g})
                            * alpha_{h_i}(d_g 1_{h_i^-1 u} 1_{h_i^-1}) 1_u

    (h runs over G itself, enumerating delta G = {(h, h^-1)}).  Derived
    componentwise from the generic quotient closed form at H = delta G,
    representative (1, l); tested to agree with the generic evaluation.
    """
    G = act.group
    A = act.algebra
    out = []
    for u in G.elements():
        g = G.mul(G.inv(l), u)
        d_g = Element(A, prod.project_coords(g, list(x.coords)))
        one_u = act.idems[u]
        term = d_g * one_u
        prod_factor = one_u
        for i in range(1, G.order):
            hj = i - 1
            prod_factor = prod_factor * (one_u - one_u * act.idems[hj] * act.idems[G.mul(hj, g)])
            hi = i
            pre = act.idems[G.mul(G.inv(hi), u)] * d_g
            term = term + prod_factor * (Element(A, act.maps[hi].matvec(list(pre.coords))) * one_u)
        out.append(list(term.coords))
    return prod.from_components(out)


def idempotent_class(act: PartialAction) -> ExtensionClass:
    """E(S, alpha) = (prod_g S_g)^{delta G} with the induced G-action."""
    if galois_coordinates(act) is None:
        raise CertificationError("idempotent_class needs a partial Galois action")
    hat = hat_action(act)
    qa = _quotient_by_delta(hat.action, act.group)
    cls = ExtensionClass.certify(_identify_with_group(qa, act.group))
    direct = delta_invariant_module(act, hat.product)
    if not modules_equal(direct, qa.carrier.basis):
        raise AssertionError("E(S,alpha): delta-G invariants disagree with the componentwise linear system")
    return cls


# ---------------------------------------------------------------------------
# suite and cyclic decomposition
# ---------------------------------------------------------------------------

@dataclass
class SuiteReport:
    """Check list with three-valued outcomes; undecided aborts the suite."""

    checks: list = field(default_factory=list)
    witnesses: int = 0

    @property
    def passed(self) -> bool:
        return all(status == "pass" for _, status, _ in self.checks)

    @property
    def undecided(self) -> bool:
        return any(status == "undecided" for _, status, _ in self.checks)

    def add(self, name, status, note=None):
        if status is True:
            status = "pass"
        elif status is False:
            status = "fail"
        self.checks.append((name, status, note))

    def failures(self):
        return [(n, note) for n, status, note in self.checks if status != "pass"]


class _ProductCache:
    def __init__(self):
        self.cache = {}

    def mul(self, a: ExtensionClass, b: ExtensionClass) -> ExtensionClass:
        key = (id(a), id(b))
        if key not in self.cache:
            self.cache[key] = harrison_product(a, b)
        return self.cache[key]


def _classes_iso(a: ExtensionClass, b: ExtensionClass):
    return iso_check(a.action, b.action)


def star_product_suite(classes) -> SuiteReport:
    """Inverse-semigroup law checks over a corpus of classes.

    Pairwise commutativity and triple associativity up to verified iso,
    regularity through the star classes, and idempotent-class behavior.
    Undecided iso outcomes abort with a distinct status.
    """
    rep = SuiteReport()
    for i, c in enumerate(classes):
        ver = verify_partial_action(c.action)
        if not ver.passed:
            bad = ver.failures()[0]
            rep.add(f"class {i} valid", False, f"{bad.name} [{bad.witness}]")
            return rep
        rep.add(f"class {i} valid", True)
    cache = _ProductCache()
    mul = cache.mul

    def iso_ok(x, y, label) -> bool:
        res = _classes_iso(x, y)
        if res.status == "undecided":
            rep.add(label, "undecided", "carrier admits no split presentation")
            return False
        rep.add(label, res.status == "iso", None if res.status == "iso" else "no witness")
        if res.status == "iso":
            rep.witnesses += 1
        return True

    n = len(classes)
    for i in range(n):
        for j in range(n):
            if not iso_ok(mul(classes[i], classes[j]), mul(classes[j], classes[i]), f"commutativity ({i},{j})"):
                return rep
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = mul(mul(classes[i], classes[j]), classes[k])
                rhs = mul(classes[i], mul(classes[j], classes[k]))
                if not iso_ok(lhs, rhs, f"associativity ({i},{j},{k})"):
                    return rep
    stars = [c.star() for c in classes]
    for i in range(n):
        x, xs = classes[i], stars[i]
        if not iso_ok(mul(mul(x, xs), x), x, f"x x* x = x ({i})"):
            return rep
        if not iso_ok(mul(mul(xs, x), xs), xs, f"x* x x* = x* ({i})"):
            return rep
    idems = [idempotent_class(c.action) for c in classes]
    for i in range(n):
        for j in range(i, n):
            if not iso_ok(mul(idems[i], idems[j]), mul(idems[j], idems[i]), f"idempotents commute ({i},{j})"):
                return rep
    for i in range(n):
        if not iso_ok(mul(idems[i], idems[i]), idems[i], f"idempotent_class idempotent ({i})"):
            return rep
        if not iso_ok(idems[i], mul(classes[i], stars[i]), f"E(S,alpha) = [x][x*] ({i})"):
            return rep
    return rep


def _check_product_presentation(group: FiniteGroup, orders):
    expected = make_product([make_cyclic(n) for n in orders])
    if group.table != expected.table:
        raise AlgebraError(
            "the group is not presented as the product of cyclic groups "
            f"of orders {list(orders)}"
        )


def cyclic_compose(classes) -> ExtensionClass:
    """The tensor class over the product of the factors' (cyclic) groups."""
    if not classes:
        raise AlgebraError("cyclic_compose of an empty factor list")
    if len(classes) == 1:
        return classes[0]
    orders = [c.group.order for c in classes]
    flat = make_product([make_cyclic(n) for n in orders])
    act = classes[0].action
    for c in classes[1:]:
        act = tensor_action(act, c.action)
    act = transport(act, flat, list(flat.elements()))
    return ExtensionClass.certify(act)


def cyclic_decompose(c: ExtensionClass, orders) -> list:
    """Per-factor classes S^{alpha_{H_i}} with G/H_i identified with G_i."""
    from .groups import Subgroup

    orders = list(orders)
    G = c.group
    _check_product_presentation(G, orders)
    out = []
    n = len(orders)
    for i in range(n):
        members = []
        transversal = []
        for idx in range(G.order):
            # decode the mixed-radix tuple of the element
            t = []
            rem = idx
            for o in reversed(orders):
                t.append(rem % o)
                rem //= o
            t.reverse()
            if t[i] == 0:
                members.append(idx)
            if all(v == 0 for j, v in enumerate(t) if j != i):
                transversal.append(idx)
        sub = Subgroup(G, tuple([G.identity] + [m for m in members if m != G.identity]))
        qa = quotient_action(c.action, sub, transversal=tuple(transversal))
        target = make_cyclic(orders[i])
        out.append(ExtensionClass.certify(transport(qa.action, target, list(target.elements()))))
    return out
