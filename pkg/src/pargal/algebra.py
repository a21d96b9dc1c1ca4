"""Finite-rank commutative unital algebras presented by structure constants.

An :class:`Algebra` stores a sparse multiplication table c_{ijk} with
b_i*b_j = sum_k c_{ijk} b_k over a :class:`~pargal.scalars.BaseRing`.
Elements are coordinate vectors; morphisms are matrices acting on
coordinates.  Tensor products, direct products over unital ideals,
subalgebra presentations and split (orthogonal idempotent) presentations
are built here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .scalars import (
    BaseRing,
    Matrix,
    Modular,
    canonical_row_form,
    kernel,
    solve,
)


class AlgebraError(ValueError):
    """Invalid algebra data or an operation leaving the supported class."""


class Algebra:
    """Commutative unital algebra of finite rank over an exact base ring."""

    __slots__ = ("ring", "labels", "rank", "unit", "table", "_hash")

    def __init__(self, ring: BaseRing, labels, table, unit, validate: bool = True):
        """table maps (i, j) to a sparse row: tuple of (k, c_ijk) with c != 0.

        Accepts either the sparse dict form or a dense rank^3 nested list.
        """
        self.ring = ring
        self.labels = list(labels)
        self.rank = len(self.labels)
        n = self.rank
        if isinstance(table, dict):
            tab = [[() for _ in range(n)] for _ in range(n)]
            for (i, j), entries in table.items():
                cleaned = sorted((k, ring.coerce(c)) for k, c in entries)
                tab[i][j] = tuple((k, c) for k, c in cleaned if c != 0)
        else:
            tab = [
                [tuple((k, ring.coerce(c)) for k, c in enumerate(table[i][j]) if ring.coerce(c) != 0) for j in range(n)]
                for i in range(n)
            ]
        self.table = tab
        self.unit = tuple(ring.coerce(u) for u in unit)
        if len(self.unit) != n:
            raise AlgebraError(f"unit vector has length {len(self.unit)}, rank is {n}")
        self._hash = None
        if validate:
            self.validate()

    # -- construction helpers ------------------------------------------------

    @classmethod
    def split(cls, ring: BaseRing, labels) -> "Algebra":
        """The split algebra R^n with componentwise product."""
        n = len(labels)
        table = {(i, i): ((i, 1),) for i in range(n)}
        return cls(ring, labels, table, [1] * n, validate=False)

    @classmethod
    def base(cls, ring: BaseRing, label: str = "1") -> "Algebra":
        return cls.split(ring, [label])

    # -- arithmetic ----------------------------------------------------------

    def zero(self) -> "Element":
        return Element(self, (0,) * self.rank)

    def one(self) -> "Element":
        return Element(self, self.unit)

    def basis_element(self, i: int) -> "Element":
        return Element(self, tuple(1 if j == i else 0 for j in range(self.rank)))

    def basis(self):
        return [self.basis_element(i) for i in range(self.rank)]

    def element(self, coords) -> "Element":
        coords = tuple(self.ring.coerce(c) for c in coords)
        if len(coords) != self.rank:
            raise AlgebraError(f"coordinate vector of length {len(coords)}, rank is {self.rank}")
        return Element(self, coords)

    def mul_coords(self, x, y):
        out = [0] * self.rank
        table = self.table
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            ti = table[i]
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                entries = ti[j]
                if not entries:
                    continue
                c = xi * yj
                for k, cijk in entries:
                    out[k] = out[k] + (c if cijk == 1 else c * cijk)
        if isinstance(self.ring, Modular):
            n = self.ring.n
            return [v % n for v in out]
        return out

    def mult_matrix(self, coords) -> Matrix:
        """Matrix of multiplication by the element with the given coordinates."""
        cols = [self.mul_coords(coords, [1 if t == j else 0 for t in range(self.rank)]) for j in range(self.rank)]
        return Matrix(self.ring, [list(r) for r in zip(*cols)]) if cols else Matrix(self.ring, [])

    def dense_constants(self):
        n = self.rank
        dense = [[[0] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                for k, c in self.table[i][j]:
                    dense[i][j][k] = c
        return dense

    # -- validation ----------------------------------------------------------

    def validate(self):
        n = self.rank
        for i in range(n):
            for j in range(i, n):
                if sorted(self.table[i][j]) != sorted(self.table[j][i]):
                    raise AlgebraError(
                        f"not commutative: {self.labels[i]}*{self.labels[j]} != {self.labels[j]}*{self.labels[i]}"
                    )
        for i in range(n):
            got = self.mul_coords(self.unit, [1 if t == i else 0 for t in range(n)])
            if tuple(got) != tuple(1 if t == i else 0 for t in range(n)):
                raise AlgebraError(f"unit does not fix basis vector {self.labels[i]}")
        basis = [[1 if t == i else 0 for t in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                ij = self.mul_coords(basis[i], basis[j])
                for l in range(n):
                    left = self.mul_coords(ij, basis[l])
                    right = self.mul_coords(basis[i], self.mul_coords(basis[j], basis[l]))
                    if left != right:
                        raise AlgebraError(
                            f"not associative on ({self.labels[i]}, {self.labels[j]}, {self.labels[l]})"
                        )

    # -- formatting / identity -----------------------------------------------

    def format_coords(self, coords) -> str:
        parts = []
        for c, lab in zip(coords, self.labels):
            if c == 0:
                continue
            if c == 1:
                parts.append(lab)
            elif c == -1:
                parts.append(f"-{lab}")
            else:
                parts.append(f"({c})*{lab}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __eq__(self, other):
        return (
            self is other
            or isinstance(other, Algebra)
            and self.ring == other.ring
            and self.labels == other.labels
            and self.unit == other.unit
            and self.table == other.table
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, tuple(self.labels), self.unit, tuple(tuple(r) for r in self.table)))
        return self._hash

    def __repr__(self):
        return f"Algebra({self.ring}, rank {self.rank}, basis {self.labels})"


class Element:
    """Element of an Algebra; immutable coordinate vector."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: Algebra, coords):
        self.algebra = algebra
        self.coords = tuple(coords)

    def _check(self, other: "Element"):
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise AlgebraError("elements of different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        add = self.algebra.ring.add
        return Element(self.algebra, tuple(add(a, b) for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        sub = self.algebra.ring.sub
        return Element(self.algebra, tuple(sub(a, b) for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Element":
        neg = self.algebra.ring.neg
        return Element(self.algebra, tuple(neg(a) for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check(other)
            return Element(self.algebra, self.algebra.mul_coords(self.coords, other.coords))
        c = self.algebra.ring.coerce(other)
        mul = self.algebra.ring.mul
        return Element(self.algebra, tuple(mul(c, a) for a in self.coords))

    def __rmul__(self, other):
        return self.__mul__(other)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_idempotent(self) -> bool:
        return (self * self) == self

    def __eq__(self, other):
        return isinstance(other, Element) and self.coords == other.coords and self.algebra == other.algebra

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return self.algebra.format_coords(self.coords)


def make_algebra(ring: BaseRing, labels, struct_consts, unit) -> Algebra:
    """Validated algebra from dense structure constants c[i][j][k]."""
    return Algebra(ring, labels, struct_consts, unit, validate=True)


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------

@dataclass
class AlgebraMorphism:
    """Linear map source -> target given by a matrix on coordinates."""

    source: Algebra
    target: Algebra
    matrix: Matrix

    def __call__(self, elem: Element) -> Element:
        if elem.algebra != self.source:
            raise AlgebraError("morphism applied to element of the wrong algebra")
        return Element(self.target, self.matrix.matvec(list(elem.coords)))

    def apply_coords(self, coords):
        return self.matrix.matvec(list(coords))

    def compose(self, inner: "AlgebraMorphism") -> "AlgebraMorphism":
        if inner.target != self.source:
            raise AlgebraError("morphism composition mismatch")
        return AlgebraMorphism(inner.source, self.target, self.matrix.mul(inner.matrix))

    @classmethod
    def identity(cls, a: Algebra) -> "AlgebraMorphism":
        return cls(a, a, Matrix.identity(a.ring, a.rank))

    def multiplicative_failure(self):
        """A witness basis pair where f(xy) != f(x)f(y), or None."""
        src, tgt = self.source, self.target
        images = [self.matrix.matvec([1 if t == j else 0 for t in range(src.rank)]) for j in range(src.rank)]
        for i in range(src.rank):
            for j in range(i, src.rank):
                prod_src = src.mul_coords(
                    [1 if t == i else 0 for t in range(src.rank)],
                    [1 if t == j else 0 for t in range(src.rank)],
                )
                lhs = self.matrix.matvec(prod_src)
                rhs = tgt.mul_coords(images[i], images[j])
                if lhs != rhs:
                    return (src.labels[i], src.labels[j])
        return None

    def is_multiplicative(self) -> bool:
        return self.multiplicative_failure() is None

    def is_unital(self) -> bool:
        return tuple(self.matrix.matvec(list(self.source.unit))) == self.target.unit

    def is_bijective(self) -> bool:
        from .scalars import invertible

        return self.matrix.nrows == self.matrix.ncols and invertible(self.matrix)


# ---------------------------------------------------------------------------
# unital ideals and direct products
# ---------------------------------------------------------------------------

def _free_basis_or_raise(rows: Matrix, what: str):
    """Rows must be a free module basis (no relations); Z/n can fail this."""
    if rows.nrows == 0:
        return
    left_kernel = kernel(rows.transpose())
    if left_kernel.nrows != 0:
        raise AlgebraError(
            f"{what}: generating rows are not a free basis over {rows.ring}; "
            "non-free modules are not supported as algebra carriers"
        )


@dataclass
class UnitalIdeal:
    """Ideal e*S of an algebra generated by a central idempotent e."""

    parent: Algebra
    generator: Element
    basis: Matrix

    @property
    def rank(self) -> int:
        return self.basis.nrows

    def contains_coords(self, coords) -> bool:
        from .scalars import module_contains

        return module_contains(self.basis, list(coords))


def unital_ideal(parent: Algebra, generator: Element) -> UnitalIdeal:
    if generator.algebra != parent:
        raise AlgebraError("idempotent belongs to a different algebra")
    if not generator.is_idempotent():
        raise AlgebraError(f"ideal generator {generator!r} is not idempotent")
    rows = [parent.mul_coords(generator.coords, [1 if t == i else 0 for t in range(parent.rank)]) for i in range(parent.rank)]
    basis = canonical_row_form(Matrix(parent.ring, rows, parent.rank))
    return UnitalIdeal(parent, generator, basis)


@dataclass
class SubAlgebra:
    """A subspace of an algebra presented as an algebra of its own.

    ``basis`` rows live in parent coordinates; ``inclusion`` maps sub
    coordinates to parent coordinates; the sub unit need not be the parent
    unit (unital ideals qualify).
    """

    algebra: Algebra
    parent: Algebra
    basis: Matrix
    inclusion: AlgebraMorphism

    def express(self, coords):
        """Parent coordinates -> sub coordinates, or None if outside."""
        sol = solve(self.basis.transpose(), list(coords))
        return None if sol is None else sol.particular

    def include_coords(self, coords):
        return self.inclusion.apply_coords(coords)


def _labels_for_rows(parent: Algebra, rows) -> list:
    return [parent.format_coords(r) for r in rows]


def algebra_on_module(parent: Algebra, rows: Matrix, unit_coords, what: str = "subalgebra") -> SubAlgebra:
    """Present a multiplicatively closed submodule as an Algebra.

    ``unit_coords`` (parent coordinates) must lie in the module and act as
    its identity.  Raises with a witness pair when the module is not closed.
    """
    ring = parent.ring
    rows = canonical_row_form(rows)
    _free_basis_or_raise(rows, what)
    k = rows.nrows
    bt = rows.transpose()
    unit_sol = solve(bt, list(unit_coords))
    if unit_sol is None:
        raise AlgebraError(f"{what}: unit {parent.format_coords(unit_coords)} is absent from the span")
    table = {}
    for i in range(k):
        for j in range(i, k):
            prod = parent.mul_coords(rows.rows[i], rows.rows[j])
            sol = solve(bt, prod)
            if sol is None:
                raise AlgebraError(
                    f"{what}: not multiplicatively closed at basis pair ({i}, {j}): "
                    f"{parent.format_coords(prod)} is outside the span"
                )
            entries = tuple((t, c) for t, c in enumerate(sol.particular) if c != 0)
            if entries:
                table[(i, j)] = entries
                table[(j, i)] = entries
    sub = Algebra(ring, _labels_for_rows(parent, rows.rows), table, unit_sol.particular, validate=False)
    incl = AlgebraMorphism(sub, parent, bt)
    # unit acts as identity on the presented basis (guards bad unit input)
    for i in range(k):
        if sub.mul_coords(sub.unit, [1 if t == i else 0 for t in range(k)]) != [1 if t == i else 0 for t in range(k)]:
            raise AlgebraError(f"{what}: provided unit does not act as identity on the span")
    return SubAlgebra(sub, parent, rows, incl)


def subalgebra_from_constraints(parent: Algebra, constraints: Matrix) -> SubAlgebra:
    """The solution space of constraints*x = 0 presented as an algebra.

    The space must be closed under multiplication and contain the parent
    unit; violations raise with a witness.
    """
    if constraints.ncols != parent.rank:
        raise AlgebraError(
            f"constraint width {constraints.ncols} does not match rank {parent.rank}"
        )
    rows = kernel(constraints) if constraints.nrows else Matrix.identity(parent.ring, parent.rank)
    return algebra_on_module(parent, rows, list(parent.unit), what="subalgebra")


@dataclass
class ProductComponent:
    ideal: UnitalIdeal
    offset: int

    @property
    def rank(self) -> int:
        return self.ideal.rank


@dataclass
class ProductAlgebra:
    """Direct product of unital ideals of one parent, as a single algebra.

    Zero-rank components keep their logical index but occupy no coordinates.
    """

    algebra: Algebra
    parent: Algebra
    components: list

    @property
    def arity(self) -> int:
        return len(self.components)

    def project_coords(self, idx: int, coords):
        """Product coordinates -> parent coordinates of component idx."""
        comp = self.components[idx]
        block = list(coords[comp.offset : comp.offset + comp.rank])
        out = [0] * self.parent.rank
        add, mul = self.parent.ring.add, self.parent.ring.mul
        for c, row in zip(block, comp.ideal.basis.rows):
            if c == 0:
                continue
            for t, v in enumerate(row):
                if v != 0:
                    out[t] = add(out[t], mul(c, v))
        return out

    def projection(self, idx: int) -> AlgebraMorphism:
        cols = [
            self.project_coords(idx, [1 if t == j else 0 for t in range(self.algebra.rank)])
            for j in range(self.algebra.rank)
        ]
        mat = Matrix(self.parent.ring, [list(r) for r in zip(*cols)], self.algebra.rank)
        return AlgebraMorphism(self.algebra, self.parent, mat)

    def embed_component(self, idx: int, parent_coords):
        """Parent coordinates (in component idx's ideal) -> product coords."""
        comp = self.components[idx]
        sol = solve(comp.ideal.basis.transpose(), list(parent_coords))
        if sol is None:
            raise AlgebraError(f"element is outside ideal component {idx}")
        out = [0] * self.algebra.rank
        out[comp.offset : comp.offset + comp.rank] = sol.particular
        return out

    def from_components(self, parent_coord_list) -> Element:
        if len(parent_coord_list) != self.arity:
            raise AlgebraError("component count mismatch")
        out = [0] * self.algebra.rank
        for idx, coords in enumerate(parent_coord_list):
            comp = self.components[idx]
            sol = solve(comp.ideal.basis.transpose(), list(coords))
            if sol is None:
                raise AlgebraError(f"component {idx} is outside its ideal")
            out[comp.offset : comp.offset + comp.rank] = sol.particular
        return Element(self.algebra, out)


def product_over_ideals(ideals, labels=None) -> ProductAlgebra:
    """Direct product algebra of unital ideals sharing one parent."""
    if not ideals:
        raise AlgebraError("product over an empty family of ideals")
    parent = ideals[0].parent
    for ideal in ideals:
        if ideal.parent != parent:
            raise AlgebraError("ideals with different parents")
    ring = parent.ring
    components = []
    offset = 0
    for ideal in ideals:
        _free_basis_or_raise(ideal.basis, "product_over_ideals")
        components.append(ProductComponent(ideal, offset))
        offset += ideal.rank
    total = offset
    table = {}
    unit = [0] * total
    out_labels = []
    for idx, comp in enumerate(components):
        k = comp.rank
        if k == 0:
            continue
        bt = comp.ideal.basis.transpose()
        sol = solve(bt, list(comp.ideal.generator.coords))
        if sol is None:
            raise AlgebraError(f"ideal generator escapes its own basis at component {idx}")
        unit[comp.offset : comp.offset + k] = sol.particular
        tag = labels[idx] if labels else str(idx)
        for i in range(k):
            out_labels.append(f"[{tag}]{parent.format_coords(comp.ideal.basis.rows[i])}")
        for i in range(k):
            for j in range(i, k):
                prod = parent.mul_coords(comp.ideal.basis.rows[i], comp.ideal.basis.rows[j])
                psol = solve(bt, prod)
                if psol is None:
                    raise AlgebraError(f"ideal component {idx} is not multiplicatively closed")
                entries = tuple((comp.offset + t, c) for t, c in enumerate(psol.particular) if c != 0)
                if entries:
                    table[(comp.offset + i, comp.offset + j)] = entries
                    table[(comp.offset + j, comp.offset + i)] = entries
    algebra = Algebra(ring, out_labels, table, unit, validate=False)
    return ProductAlgebra(algebra, parent, components)


# ---------------------------------------------------------------------------
# tensor products
# ---------------------------------------------------------------------------

@dataclass
class TensorProduct:
    algebra: Algebra
    left: Algebra
    right: Algebra

    def index(self, i: int, j: int) -> int:
        return i * self.right.rank + j

    def pair_coords(self, xc, yc):
        rb = self.right.rank
        out = [0] * (len(xc) * rb)
        mul = self.algebra.ring.mul
        for i, a in enumerate(xc):
            if a == 0:
                continue
            base = i * rb
            for j, b in enumerate(yc):
                if b != 0:
                    out[base + j] = mul(a, b)
        return out

    def pair(self, x: Element, y: Element) -> Element:
        if x.algebra != self.left or y.algebra != self.right:
            raise AlgebraError("tensor factors from the wrong algebras")
        return Element(self.algebra, self.pair_coords(list(x.coords), list(y.coords)))

    def swap_morphism(self, other: "TensorProduct") -> AlgebraMorphism:
        """Coordinate swap A(x)B -> B(x)A (other must be the swapped product)."""
        n, m = self.left.rank, self.right.rank
        mat = Matrix.zero(self.algebra.ring, n * m, n * m)
        for i in range(n):
            for j in range(m):
                mat.rows[other.index(j, i)][self.index(i, j)] = 1
        return AlgebraMorphism(self.algebra, other.algebra, mat)


def tensor(a: Algebra, b: Algebra, sep: str = "(x)") -> TensorProduct:
    """Tensor product over the base ring: (x(x)y)(x'(x)y') = xx'(x)yy'."""
    if a.ring != b.ring:
        raise AlgebraError("tensor factors over different base rings")
    ring = a.ring
    rb = b.rank
    labels = [f"{la}{sep}{lb}" for la in a.labels for lb in b.labels]
    table = {}
    for i in range(a.rank):
        for j in range(a.rank):
            arow = a.table[i][j]
            if not arow:
                continue
            for s in range(rb):
                for t in range(rb):
                    brow = b.table[s][t]
                    if not brow:
                        continue
                    entries = []
                    for k, ca in arow:
                        for u, cb in brow:
                            c = ring.mul(ca, cb)
                            if c != 0:
                                entries.append((k * rb + u, c))
                    if entries:
                        table[(i * rb + s, j * rb + t)] = tuple(entries)
    unit = [0] * (a.rank * rb)
    mul = ring.mul
    for i, ua in enumerate(a.unit):
        if ua == 0:
            continue
        for j, ub in enumerate(b.unit):
            if ub != 0:
                unit[i * rb + j] = mul(ua, ub)
    alg = Algebra(ring, labels, table, unit, validate=False)
    return TensorProduct(alg, a, b)


# ---------------------------------------------------------------------------
# split presentations
# ---------------------------------------------------------------------------

@dataclass
class SplitPresentation:
    """Orthogonal idempotents summing to 1, each spanning a free rank-1 ideal."""

    parent: Algebra
    idempotents: list

    def check(self):
        total = self.parent.zero()
        for i, e in enumerate(self.idempotents):
            if not e.is_idempotent():
                raise AlgebraError(f"split presentation: element {i} is not idempotent")
            total = total + e
            for f in self.idempotents[i + 1 :]:
                if not (e * f).is_zero():
                    raise AlgebraError("split presentation: idempotents are not orthogonal")
        if total != self.parent.one():
            raise AlgebraError("split presentation: idempotents do not sum to 1")


def _minimal_polynomial(op: Matrix):
    """Coefficients (ascending, monic) of the minimal polynomial of op."""
    ring = op.ring
    k = op.nrows
    powers = [Matrix.identity(ring, k)]
    flat = [[x for row in powers[0].rows for x in row]]
    cur = powers[0]
    for _ in range(k):
        cur = cur.mul(op)
        powers.append(cur)
        flat.append([x for row in cur.rows for x in row])
    for d in range(1, k + 1):
        a = Matrix(ring, [list(col) for col in zip(*flat[:d])], d)
        sol = solve(a, flat[d])
        if sol is not None:
            coeffs = [ring.neg(c) for c in sol.particular] + [1]
            return coeffs
    raise AssertionError("minimal polynomial of degree <= rank must exist")


def _poly_eval(coeffs, x, ring):
    acc = 0
    for c in reversed(coeffs):
        acc = ring.add(ring.mul(acc, x), c)
    return acc


def _poly_divide_linear(coeffs, root, ring):
    """Divide by (x - root); returns (quotient, remainder)."""
    out = [0] * (len(coeffs) - 1)
    acc = 0
    for i in range(len(coeffs) - 1, 0, -1):
        acc = ring.add(ring.mul(acc, root), coeffs[i])
        out[i - 1] = acc
    rem = ring.add(ring.mul(acc, root), coeffs[0])
    return out, rem


def _int_divisors(n: int):
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def _field_roots(coeffs, ring):
    """All roots in the base field with multiplicity; also the leftover degree."""
    roots = []
    work = list(coeffs)
    while len(work) > 1 and work[0] == 0:
        roots.append(0)
        work = work[1:]
    if isinstance(ring, Modular):
        candidates = list(range(ring.n))
    else:
        lcm = 1
        for c in work:
            f = Fraction(c)
            lcm = lcm * f.denominator // gcd(lcm, f.denominator)
        ints = [int(Fraction(c) * lcm) for c in work]
        if not ints or all(v == 0 for v in ints):
            return roots, 0
        lead, const = ints[-1], next(v for v in ints if v != 0)
        candidates = []
        for p in _int_divisors(const):
            for q in _int_divisors(lead):
                for sign in (1, -1):
                    f = Fraction(sign * p, q)
                    candidates.append(f.numerator if f.denominator == 1 else f)
        candidates = sorted(set(candidates))
    progress = True
    while len(work) > 1 and progress:
        progress = False
        for r in candidates:
            if _poly_eval(work, r, ring) == 0:
                quot, rem = _poly_divide_linear(work, r, ring)
                assert rem == 0
                roots.append(r)
                work = quot
                progress = True
                break
    return roots, len(work) - 1


def find_split_presentation(algebra: Algebra):
    """A canonically ordered split presentation, or None when absent.

    Complete over Q and F_p (simultaneous eigen-splitting of the commuting
    multiplication operators); over composite Z/n complete when the algebra
    is a finite product of copies of the base ring (per-prime splitting with
    idempotent lifting).
    """
    ring = algebra.ring
    if ring.is_field or ring.kind == "rationals":
        idems = _split_over_field(algebra)
    else:
        idems = _split_over_zn(algebra)
    if idems is None:
        return None
    idems.sort(key=lambda e: tuple(e.coords))
    pres = SplitPresentation(algebra, idems)
    pres.check()
    return pres


def _ideal_rows(algebra: Algebra, e: Element) -> Matrix:
    rows = [algebra.mul_coords(e.coords, [1 if t == i else 0 for t in range(algebra.rank)]) for i in range(algebra.rank)]
    return canonical_row_form(Matrix(algebra.ring, rows, algebra.rank))


def _split_over_field(algebra: Algebra):
    ring = algebra.ring
    blocks = [algebra.one()]
    final = []
    while blocks:
        e = blocks.pop()
        basis = _ideal_rows(algebra, e)
        k = basis.nrows
        if k == 0:
            continue
        if k == 1:
            final.append(e)
            continue
        bt = basis.transpose()
        refined = False
        for gi in range(algebra.rank):
            gen = algebra.mul_coords(e.coords, [1 if t == gi else 0 for t in range(algebra.rank)])
            cols = []
            for row in basis.rows:
                prod = algebra.mul_coords(gen, row)
                sol = solve(bt, prod)
                assert sol is not None, "ideal not closed under multiplication"
                cols.append(sol.particular)
            op = Matrix(ring, [list(r) for r in zip(*cols)], k)
            minpoly = _minimal_polynomial(op)
            if len(minpoly) == 2:
                continue  # scalar operator, no refinement from this generator
            roots, leftover = _field_roots(minpoly, ring)
            if leftover > 0 or len(set(roots)) != len(roots):
                return None  # irreducible factor or nilpotent part: not split
            gen_elem = algebra.element(gen)
            for r in roots:
                factor = e
                denom = 1
                for s in roots:
                    if s == r:
                        continue
                    factor = factor * (gen_elem - algebra.element([ring.mul(s, u) for u in e.coords]))
                    denom = ring.mul(denom, ring.sub(r, s))
                proj = factor * ring.inv(denom)
                if not proj.is_zero():
                    blocks.append(proj)
            refined = True
            break
        if not refined:
            # all multiplication operators scalar forces rank 1; rank > 1 here
            # means the algebra holds nilpotents and cannot split
            return None
    return final


def _split_over_zn(algebra: Algebra):
    n = algebra.ring.n
    from .scalars import _factorize, _ext_gcd

    factors = _factorize(n)
    per_prime = []
    crt_units = []
    for p, e in factors.items():
        q = p ** e
        m = n // q
        if m == 1:
            u = 1
        else:
            g, x, _ = _ext_gcd(m, q)
            assert g == 1
            u = (m * x) % n
        crt_units.append(u)
        sub_ring = Modular(q) if q > 1 else None
        if q == n:
            local = algebra
        else:
            table = {}
            for i in range(algebra.rank):
                for j in range(algebra.rank):
                    entries = tuple((k, c % q) for k, c in algebra.table[i][j] if c % q != 0)
                    if entries:
                        table[(i, j)] = entries
            local = Algebra(sub_ring, algebra.labels, table, [u0 % q for u0 in algebra.unit], validate=False)
        if local.ring.is_field:
            idems = _split_over_field(local)
        else:
            idems = _split_mod_prime_power(local, p)
        if idems is None:
            return None
        per_prime.append([list(i.coords) for i in idems])
    counts = {len(v) for v in per_prime}
    if len(counts) != 1:
        return None
    count = counts.pop()
    out = []
    for idx in range(count):
        coords = [0] * algebra.rank
        for u, idems in zip(crt_units, per_prime):
            vec = sorted(idems)[idx]
            for t in range(algebra.rank):
                coords[t] = (coords[t] + u * vec[t]) % n
        cand = algebra.element(coords)
        if not cand.is_idempotent():
            return None
        rows = _ideal_rows(algebra, cand)
        if rows.nrows != 1:
            return None
        content = n
        for v in rows.rows[0]:
            content = gcd(content, v)
        if content != 1:
            return None  # R*e is a proper cyclic module, not free of rank 1
        out.append(cand)
    total = algebra.zero()
    for e in out:
        total = total + e
    if total != algebra.one():
        return None
    return out


def _split_mod_prime_power(algebra: Algebra, p: int):
    """Split over Z/p^k by splitting mod p and Hensel-lifting idempotents."""
    q = algebra.ring.n
    fp = Modular(p)
    table = {}
    for i in range(algebra.rank):
        for j in range(algebra.rank):
            entries = tuple((k, c % p) for k, c in algebra.table[i][j] if c % p != 0)
            if entries:
                table[(i, j)] = entries
    reduced = Algebra(fp, algebra.labels, table, [u % p for u in algebra.unit], validate=False)
    mod_p = _split_over_field(reduced)
    if mod_p is None:
        return None
    lifted = []
    complement = algebra.one()
    for e_bar in mod_p:
        cand = complement * algebra.element([c % q for c in e_bar.coords])
        for _ in range(64):
            if cand.is_idempotent():
                break
            sq = cand * cand
            cand = sq * 3 - (sq * cand) * 2
        if not cand.is_idempotent():
            return None
        lifted.append(cand)
        complement = complement - cand
    if not complement.is_zero():
        return None
    return lifted
