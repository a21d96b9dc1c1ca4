"""The example corpus: the two worked examples plus regular and swap actions.

All constructors take the base ring so the same corpus runs over Q and
over F_2 (or any supported ring).
"""

from __future__ import annotations

from .scalars import QQ, Matrix
from .algebra import Algebra
from .groups import FiniteGroup, make_cyclic
from .paction import PartialAction, global_action, inverse_action


def example1(ring=QQ) -> PartialAction:
    """Z4 on split R^3: S_g = Re1+Re2, S_g2 = Re1+Re3, S_g3 = Re2+Re3.

    alpha_g: e2 -> e1, e3 -> e2; alpha_g2 swaps e1, e3; alpha_g3: e1 -> e2,
    e2 -> e3.
    """
    g4 = make_cyclic(4)
    a = Algebra.split(ring, ["e1", "e2", "e3"])
    e1, e2, e3 = a.basis()
    idems = [a.one(), e1 + e2, e1 + e3, e2 + e3]
    maps = [
        Matrix.identity(ring, 3),
        Matrix(ring, [[0, 1, 0], [0, 0, 1], [0, 0, 0]]),
        Matrix(ring, [[0, 0, 1], [0, 0, 0], [1, 0, 0]]),
        Matrix(ring, [[0, 0, 0], [1, 0, 0], [0, 1, 0]]),
    ]
    return PartialAction(g4, a, idems, maps)


def corrupted_p4(ring=QQ) -> PartialAction:
    """example1 with alpha_g2 replaced by the identity on S_g2; breaks (P4)."""
    act = example1(ring)
    maps = list(act.maps)
    maps[2] = act.idem_matrix(2)
    return PartialAction(act.group, act.algebra, act.idems, maps)


def example2(ring=QQ) -> PartialAction:
    """Z4 on split R^2 with S_g = Re2', S_g2 = 0, S_g3 = Re1'."""
    g4 = make_cyclic(4)
    a = Algebra.split(ring, ["e1", "e2"])
    e1, e2 = a.basis()
    idems = [a.one(), e2, a.zero(), e1]
    maps = [
        Matrix.identity(ring, 2),
        Matrix(ring, [[0, 0], [1, 0]]),
        Matrix.zero(ring, 2, 2),
        Matrix(ring, [[0, 1], [0, 0]]),
    ]
    return PartialAction(g4, a, idems, maps)


def example2_star(ring=QQ) -> PartialAction:
    return inverse_action(example2(ring))


def trivial_action(group: FiniteGroup, ring=QQ) -> PartialAction:
    """The regular translation action on E_G(R) = R^|G| (global)."""
    labels = [f"e[{lab}]" for lab in group.labels]
    a = Algebra.split(ring, labels)
    maps = []
    for g in group.elements():
        m = Matrix.zero(ring, group.order, group.order)
        for h in group.elements():
            m.rows[group.mul(g, h)][h] = 1
        maps.append(m)
    return global_action(group, a, maps)


def global_swap(ring=QQ) -> PartialAction:
    """The global Z2 action on split R^2 swapping the two idempotents."""
    z2 = make_cyclic(2)
    a = Algebra.split(ring, ["a", "b"])
    maps = [Matrix.identity(ring, 2), Matrix(ring, [[0, 1], [1, 0]])]
    return global_action(z2, a, maps)


def klein_product(ring=QQ) -> PartialAction:
    """Z2 x Z2 acting on R^2 (x) R^2 as swap (x) swap."""
    from .harrison import tensor_action

    return tensor_action(global_swap(ring), global_swap(ring))


def standard_corpus(ring=QQ):
    """Name -> action for every shipped fixture."""
    return {
        "ex1": example1(ring),
        "ex2": example2(ring),
        "ex2-star": example2_star(ring),
        "trivial-Z2": trivial_action(make_cyclic(2), ring),
        "trivial-Z4": trivial_action(make_cyclic(4), ring),
        "global-Z2-swap": global_swap(ring),
        "klein-product": klein_product(ring),
    }
