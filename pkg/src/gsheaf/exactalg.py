"""Finite-dimensional associative algebras over exact fields.

Structure-constant algebras, canonical subspaces, modules given by
action matrices, and the decision procedures built on them: ideal
generation and enumeration, simplicity, Jacobson radical via
composition-factor search, von Neumann regularity, annihilators,
centralizers, and explicit ring isomorphism checking.

Conventions.  Vectors are coordinate rows in the algebra's basis;
subspaces are stored in reduced row echelon form, so two subspaces are
equal iff their stored bases are equal bit for bit.  Action matrices
act on column vectors: (a.m) = rho(a) @ m and rho(a b) = rho(a) rho(b).
"""

from __future__ import annotations

import itertools
import random

from . import linalg
from .errors import AlgebraError, CapExceeded, CheckFailure
from .fields import Field
from .linalg import IncrementalSpan

IDEAL_DIM_CAP = 8
SIMPLICITY_POINT_BUDGET = 10**6
RADICAL_ORDER_CAP = 2**12
VNR_ORDER_CAP = 2**16
MEATAXE_DIM_CAP = 64
MEATAXE_RANDOM_TRIES = 500


class Subspace:
    """A subspace of F^n with a canonical (RREF) basis."""

    __slots__ = ("field", "parent_dim", "basis", "pivots")

    def __init__(self, field: Field, parent_dim: int, basis, pivots):
        self.field = field
        self.parent_dim = parent_dim
        self.basis = tuple(tuple(r) for r in basis)
        self.pivots = tuple(pivots)

    @classmethod
    def from_vectors(cls, field, parent_dim, vectors):
        span = IncrementalSpan(field, parent_dim)
        span.add_all(vectors)
        return cls(field, parent_dim, span.rows, span.pivots)

    @classmethod
    def zero(cls, field, parent_dim):
        return cls(field, parent_dim, [], [])

    @classmethod
    def full(cls, field, parent_dim):
        return cls.from_vectors(field, parent_dim, linalg.identity_matrix(field, parent_dim))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.parent_dim

    def _span(self) -> IncrementalSpan:
        span = IncrementalSpan(self.field, self.parent_dim)
        span.rows = [list(r) for r in self.basis]
        span.pivots = list(self.pivots)
        return span

    def contains(self, v) -> bool:
        return self._span().contains(v)

    def contains_all(self, vectors) -> bool:
        span = self._span()
        return all(span.contains(v) for v in vectors)

    def coords_of(self, v):
        """Coefficients of v in the stored basis; raises if v is outside."""
        coords = [v[p] for p in self.pivots]
        f = self.field
        w = list(v)
        for c, row in zip(coords, self.basis):
            if c != 0:
                for j, a in enumerate(row):
                    if a != 0:
                        w[j] = f.sub(w[j], f.mul(c, a))
        if not linalg.vec_is_zero(w):
            raise AlgebraError("vector is not in the subspace")
        return coords

    def join(self, other: "Subspace") -> "Subspace":
        self._check_mate(other)
        return Subspace.from_vectors(self.field, self.parent_dim,
                                     list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        # Zassenhaus: rref of [[U|U],[W|0]]; rows with zero left half carry
        # the intersection in their right half.
        self._check_mate(other)
        n = self.parent_dim
        f = self.field
        rows = [list(r) + list(r) for r in self.basis]
        rows += [list(r) + linalg.zero_vector(f, n) for r in other.basis]
        red, _ = linalg.rref(f, rows, 2 * n) if rows else ([], [])
        vecs = [r[n:] for r in red if linalg.vec_is_zero(r[:n])]
        return Subspace.from_vectors(f, n, vecs)

    def leq(self, other: "Subspace") -> bool:
        self._check_mate(other)
        return other.contains_all(self.basis)

    def _check_mate(self, other):
        if self.field != other.field or self.parent_dim != other.parent_dim:
            raise AlgebraError("subspaces live in different spaces")

    def sort_key(self):
        return (self.dim, self.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.field == other.field
                and self.parent_dim == other.parent_dim and self.basis == other.basis)

    def __hash__(self):
        return hash((self.field, self.parent_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.parent_dim})"


class FDAlgebra:
    """An algebra given by structure constants on a distinguished basis.

    table[i][j] is the coordinate vector of b_i * b_j.  unit is the
    coordinate vector of a two-sided identity, or None.
    """

    def __init__(self, field: Field, labels, table, unit=None):
        self.field = field
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        if len(table) != self.dim or any(len(row) != self.dim for row in table):
            raise AlgebraError("structure-constant table has the wrong shape")
        self.table = [[tuple(v) for v in row] for row in table]
        for row in self.table:
            for v in row:
                if len(v) != self.dim:
                    raise AlgebraError("structure-constant entry has the wrong length")
        self.unit = tuple(unit) if unit is not None else None
        if self.unit is not None and len(self.unit) != self.dim:
            raise AlgebraError("unit vector has the wrong length")
        self.label_index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.label_index) != self.dim:
            raise AlgebraError("duplicate basis labels")
        self._left_mats: list | None = None
        self._right_mats: list | None = None

    def basis_vector(self, i: int):
        v = linalg.zero_vector(self.field, self.dim)
        v[i] = self.field.one
        return v

    def mul(self, u, v):
        f = self.field
        out = linalg.zero_vector(f, self.dim)
        for i, a in enumerate(u):
            if a == 0:
                continue
            row = self.table[i]
            for j, b in enumerate(v):
                if b == 0:
                    continue
                c = f.mul(a, b)
                for k, t in enumerate(row[j]):
                    if t != 0:
                        out[k] = f.add(out[k], f.mul(c, t))
        return out

    def left_basis_mats(self):
        """Matrices of left multiplication by each basis element."""
        if self._left_mats is None:
            self._left_mats = []
            for i in range(self.dim):
                # column j of L_i is b_i * b_j
                cols = [self.table[i][j] for j in range(self.dim)]
                self._left_mats.append([list(r) for r in zip(*cols)])
        return self._left_mats

    def right_basis_mats(self):
        """Matrices of right multiplication by each basis element."""
        if self._right_mats is None:
            self._right_mats = []
            for j in range(self.dim):
                cols = [self.table[i][j] for i in range(self.dim)]
                self._right_mats.append([list(r) for r in zip(*cols)])
        return self._right_mats

    def left_mult_matrix(self, v):
        f = self.field
        out = linalg.zero_matrix(f, self.dim, self.dim)
        for i, a in enumerate(v):
            if a == 0:
                continue
            Li = self.left_basis_mats()[i]
            for r in range(self.dim):
                row = Li[r]
                orow = out[r]
                for c in range(self.dim):
                    if row[c] != 0:
                        orow[c] = f.add(orow[c], f.mul(a, row[c]))
        return out

    def right_mult_matrix(self, v):
        f = self.field
        out = linalg.zero_matrix(f, self.dim, self.dim)
        for j, a in enumerate(v):
            if a == 0:
                continue
            Rj = self.right_basis_mats()[j]
            for r in range(self.dim):
                row = Rj[r]
                orow = out[r]
                for c in range(self.dim):
                    if row[c] != 0:
                        orow[c] = f.add(orow[c], f.mul(a, row[c]))
        return out

    def is_commutative(self) -> bool:
        return all(self.table[i][j] == self.table[j][i]
                   for i in range(self.dim) for j in range(i + 1, self.dim))

    def order(self) -> int:
        return self.field.order ** self.dim

    def elements(self):
        """All coordinate vectors (finite base field only)."""
        scalars = list(self.field.elements())
        return itertools.product(scalars, repeat=self.dim)

    def __repr__(self):
        return f"FDAlgebra(dim={self.dim} over {self.field!r})"


class AlgebraModule:
    """A left module over an FDAlgebra, one action matrix per basis element."""

    def __init__(self, algebra: FDAlgebra, dim: int, mats):
        self.algebra = algebra
        self.dim = dim
        if len(mats) != algebra.dim:
            raise AlgebraError("need one action matrix per algebra basis element")
        self.mats = [[list(r) for r in M] for M in mats]
        for M in self.mats:
            if len(M) != dim or any(len(r) != dim for r in M):
                raise AlgebraError("action matrix has the wrong shape")

    @property
    def field(self) -> Field:
        return self.algebra.field

    def action_matrix(self, v):
        f = self.field
        out = linalg.zero_matrix(f, self.dim, self.dim)
        for i, a in enumerate(v):
            if a == 0:
                continue
            Mi = self.mats[i]
            for r in range(self.dim):
                row = Mi[r]
                orow = out[r]
                for c in range(self.dim):
                    if row[c] != 0:
                        orow[c] = f.add(orow[c], f.mul(a, row[c]))
        return out

    def act(self, v, m):
        return linalg.mat_vec(self.field, self.action_matrix(v), m)

    def act_basis(self, i, m):
        return linalg.mat_vec(self.field, self.mats[i], m)

    def validate(self) -> list[str]:
        """Module axioms: compatibility on basis pairs, unit acts as id."""
        A = self.algebra
        bad = []
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self.action_matrix(A.table[i][j])
                rhs = linalg.mat_mul(self.field, self.mats[i], self.mats[j])
                if not linalg.mat_eq(lhs, rhs):
                    bad.append(f"action({A.labels[i]}*{A.labels[j]}) != "
                               f"action({A.labels[i]})action({A.labels[j]})")
        if A.unit is not None:
            if not linalg.mat_eq(self.action_matrix(A.unit),
                                 linalg.identity_matrix(self.field, self.dim)):
                bad.append("unit does not act as the identity")
        return bad

    def __repr__(self):
        return f"AlgebraModule(dim={self.dim} over dim-{self.algebra.dim} algebra)"


# ---------------------------------------------------------------------------
# validation


def validate_algebra(A: FDAlgebra) -> list[str]:
    """Associativity on all basis triples and the unit law.

    Returns a list of violation descriptions, empty when the data is a
    genuine associative algebra.
    """
    bad = []
    n = A.dim
    for i in range(n):
        for j in range(n):
            left = A.table[i][j]
            for k in range(n):
                lhs = A.mul(left, A.basis_vector(k))
                rhs = A.mul(A.basis_vector(i), A.table[j][k])
                if lhs != rhs:
                    bad.append(
                        f"associativity fails on triple "
                        f"({A.labels[i]},{A.labels[j]},{A.labels[k]})")
    if A.unit is not None:
        for i in range(n):
            e = A.basis_vector(i)
            if A.mul(list(A.unit), e) != e or A.mul(e, list(A.unit)) != e:
                bad.append(f"unit law fails on basis element {A.labels[i]}")
    return bad


def require_valid_algebra(A: FDAlgebra) -> None:
    bad = validate_algebra(A)
    if bad:
        raise AlgebraError("; ".join(bad[:3]))


# ---------------------------------------------------------------------------
# ideals


def projective_points(field: Field, dim: int):
    """One representative per 1-dimensional subspace: first nonzero coord 1."""
    if not field.is_finite:
        raise CapExceeded("projective points need a finite base field")
    scalars = list(field.elements())
    for lead in range(dim):
        for tail in itertools.product(scalars, repeat=dim - lead - 1):
            v = [field.zero] * lead + [field.one] + list(tail)
            yield v


def num_projective_points(field: Field, dim: int) -> int:
    if not field.is_finite:
        raise CapExceeded("projective point count needs a finite base field")
    p = field.order
    return (p**dim - 1) // (p - 1) if dim else 0


def ideal_generated(A: FDAlgebra, gens, sided: str = "two",
                    stop_at_full: bool = False) -> Subspace:
    """Smallest left/right/two-sided ideal containing the generators.

    The span of {g, Ag, gA, AgA} over the basis is already multiplicatively
    closed, so a single pass suffices; stop_at_full bails out as soon as the
    span is everything.
    """
    if sided not in ("left", "right", "two"):
        raise AlgebraError(f"sided must be left/right/two, got {sided!r}")
    span = IncrementalSpan(A.field, A.dim)
    L = A.left_basis_mats()
    R = A.right_basis_mats()
    f = A.field
    for g in gens:
        g = list(g)
        span.add(g)
        if stop_at_full and span.is_full():
            return Subspace(A.field, A.dim, span.rows, span.pivots)
        lefts = []
        if sided in ("left", "two"):
            for i in range(A.dim):
                w = linalg.mat_vec(f, L[i], g)
                lefts.append(w)
                span.add(w)
                if stop_at_full and span.is_full():
                    return Subspace(A.field, A.dim, span.rows, span.pivots)
        if sided in ("right", "two"):
            for j in range(A.dim):
                span.add(linalg.mat_vec(f, R[j], g))
                if stop_at_full and span.is_full():
                    return Subspace(A.field, A.dim, span.rows, span.pivots)
        if sided == "two":
            for w in lefts:
                for j in range(A.dim):
                    span.add(linalg.mat_vec(f, R[j], w))
                    if stop_at_full and span.is_full():
                        return Subspace(A.field, A.dim, span.rows, span.pivots)
    return Subspace(A.field, A.dim, span.rows, span.pivots)


def is_ideal(A: FDAlgebra, S: Subspace, sided: str = "two") -> bool:
    f = A.field
    L = A.left_basis_mats()
    R = A.right_basis_mats()
    for v in S.basis:
        if sided in ("left", "two"):
            for i in range(A.dim):
                if not S.contains(linalg.mat_vec(f, L[i], list(v))):
                    return False
        if sided in ("right", "two"):
            for j in range(A.dim):
                if not S.contains(linalg.mat_vec(f, R[j], list(v))):
                    return False
    return True


def enumerate_two_sided_ideals(A: FDAlgebra, cap: int = IDEAL_DIM_CAP) -> list[Subspace]:
    """All two-sided ideals, sorted by (dim, basis).

    Every ideal is the join of the cyclic ideals of its elements, so the
    join-closure of all cyclic ideals (one per projective point) is the
    complete list.  Capped because the point count grows with p^dim.
    """
    if not A.field.is_finite:
        raise CapExceeded("ideal enumeration needs a finite base field")
    if A.dim > cap:
        raise CapExceeded(f"ideal enumeration capped at dim {cap}, algebra has dim {A.dim}")
    cyclics: dict[tuple, Subspace] = {}
    for v in projective_points(A.field, A.dim):
        I = ideal_generated(A, [v], "two")
        cyclics.setdefault(I.basis, I)
    found: dict[tuple, Subspace] = {(): Subspace.zero(A.field, A.dim)}
    for I in cyclics.values():
        found.setdefault(I.basis, I)
    work = list(found.values())
    gens = list(cyclics.values())
    while work:
        I = work.pop()
        for J in gens:
            K = I.join(J)
            if K.basis not in found:
                found[K.basis] = K
                work.append(K)
    return sorted(found.values(), key=Subspace.sort_key)


def enumerate_subspaces(field: Field, dim: int, max_count: int = 500_000):
    """Every subspace of F^dim, via all reduced echelon bases.

    Brute-force oracle used in tests to cross-check the ideal enumeration;
    it walks pivot-column choices and free entries.
    """
    if not field.is_finite:
        raise CapExceeded("subspace enumeration needs a finite base field")
    count = 0
    scalars = list(field.elements())
    yield Subspace.zero(field, dim)
    for k in range(1, dim + 1):
        for pivots in itertools.combinations(range(dim), k):
            free_cells = []
            for r, p in enumerate(pivots):
                for c in range(p + 1, dim):
                    if c not in pivots:
                        free_cells.append((r, c))
            for vals in itertools.product(scalars, repeat=len(free_cells)):
                rows = [[field.zero] * dim for _ in range(k)]
                for r, p in enumerate(pivots):
                    rows[r][p] = field.one
                for (r, c), a in zip(free_cells, vals):
                    rows[r][c] = a
                count += 1
                if count > max_count:
                    raise CapExceeded(f"more than {max_count} subspaces")
                yield Subspace(field, dim, rows, pivots)


# ---------------------------------------------------------------------------
# simplicity


def simplicity_witness(A: FDAlgebra, point_budget: int = SIMPLICITY_POINT_BUDGET):
    """None when A is simple; else a vector generating a proper nonzero ideal.

    Checks that every projective direction generates everything, which is
    sound and complete over a finite base field.
    """
    if A.unit is None:
        raise AlgebraError("simplicity test needs a unital algebra")
    if A.dim == 0:
        raise AlgebraError("the zero algebra is not simple")
    if not A.field.is_finite:
        raise CapExceeded("simplicity test needs a finite base field")
    if num_projective_points(A.field, A.dim) > point_budget:
        raise CapExceeded("too many projective points for the simplicity test")
    for v in projective_points(A.field, A.dim):
        I = ideal_generated(A, [v], "two", stop_at_full=True)
        if not I.is_full():
            return tuple(v)
    return None


def is_simple(A: FDAlgebra, point_budget: int = SIMPLICITY_POINT_BUDGET) -> bool:
    return simplicity_witness(A, point_budget) is None


# ---------------------------------------------------------------------------
# modules


def regular_module(A: FDAlgebra) -> AlgebraModule:
    return AlgebraModule(A, A.dim, A.left_basis_mats())


def annihilator(M: AlgebraModule) -> Subspace:
    """{a : a.M = 0}, verified to be a two-sided ideal."""
    A = M.algebra
    f = A.field
    rows = []
    for r in range(M.dim):
        for c in range(M.dim):
            rows.append([M.mats[i][r][c] for i in range(A.dim)])
    if rows:
        ker = linalg.kernel_basis(f, rows, A.dim)
    else:
        ker = linalg.identity_matrix(f, A.dim)
    S = Subspace.from_vectors(f, A.dim, ker)
    if not is_ideal(A, S, "two"):
        raise CheckFailure("annihilator is not a two-sided ideal")
    return S


def submodule_generated(M: AlgebraModule, vectors,
                        stop_at_full: bool = False) -> Subspace:
    """Smallest submodule containing the vectors (span of v and rho(b_i)v)."""
    A = M.algebra
    f = M.field
    if A.unit is None:
        raise AlgebraError("submodule generation assumes a unital algebra")
    span = IncrementalSpan(f, M.dim)
    for v in vectors:
        span.add(list(v))
        if stop_at_full and span.is_full():
            break
        for i in range(A.dim):
            span.add(linalg.mat_vec(f, M.mats[i], list(v)))
            if stop_at_full and span.is_full():
                break
        if stop_at_full and span.is_full():
            break
    return Subspace(f, M.dim, span.rows, span.pivots)


def is_submodule(M: AlgebraModule, S: Subspace) -> bool:
    f = M.field
    for v in S.basis:
        for i in range(M.algebra.dim):
            if not S.contains(linalg.mat_vec(f, M.mats[i], list(v))):
                return False
    return True


def module_simplicity_witness(M: AlgebraModule,
                              point_budget: int = SIMPLICITY_POINT_BUDGET):
    """None when M is simple; else a vector generating a proper nonzero submodule."""
    if M.dim == 0:
        raise AlgebraError("the zero module is not simple")
    if not M.field.is_finite:
        raise CapExceeded("module simplicity test needs a finite base field")
    if num_projective_points(M.field, M.dim) > point_budget:
        raise CapExceeded("too many projective points for the module simplicity test")
    for v in projective_points(M.field, M.dim):
        S = submodule_generated(M, [v], stop_at_full=True)
        if not S.is_full():
            return tuple(v)
    return None


def is_simple_module(M: AlgebraModule,
                     point_budget: int = SIMPLICITY_POINT_BUDGET) -> bool:
    return module_simplicity_witness(M, point_budget) is None


def quotient_coords(field: Field, N: Subspace):
    """(proj, lift): quotient coordinates on the complement of N's pivots.

    proj is (n-dim N) x n with kernel N; lift is a section, placing
    coordinates at the free columns.  proj @ lift = identity.
    """
    n = N.parent_dim
    pivset = set(N.pivots)
    free = [j for j in range(n) if j not in pivset]
    span = N._span()
    proj = []
    for i in range(n):
        e = linalg.zero_vector(field, n)
        e[i] = field.one
        w = span.reduce(e)
        proj.append([w[j] for j in free])
    proj = linalg.transpose(proj)  # rows indexed by free columns
    lift = linalg.zero_matrix(field, n, len(free))
    for k, j in enumerate(free):
        lift[j][k] = field.one
    return proj, lift


def quotient_module(M: AlgebraModule, N: Subspace):
    """(M/N, proj matrix). N must be a submodule."""
    if not is_submodule(M, N):
        raise AlgebraError("quotient by a non-submodule")
    f = M.field
    proj, lift = quotient_coords(f, N)
    mats = [linalg.mat_mul(f, linalg.mat_mul(f, proj, Mi), lift) for Mi in M.mats]
    return AlgebraModule(M.algebra, len(proj), mats), proj


def restrict_module(M: AlgebraModule, S: Subspace) -> AlgebraModule:
    """S as a module in its own coordinates. S must be a submodule."""
    if not is_submodule(M, S):
        raise AlgebraError("restriction to a non-submodule")
    f = M.field
    mats = []
    for Mi in M.mats:
        rows = []
        for v in S.basis:
            rows.append(S.coords_of(linalg.mat_vec(f, Mi, list(v))))
        mats.append(linalg.transpose(rows) if rows else [])
    return AlgebraModule(M.algebra, S.dim, mats)


def direct_sum_modules(mods) -> AlgebraModule:
    mods = list(mods)
    if not mods:
        raise AlgebraError("direct sum of no modules")
    A = mods[0].algebra
    f = A.field
    if any(m.algebra is not A and m.algebra.table != A.table for m in mods):
        raise AlgebraError("direct summands over different algebras")
    total = sum(m.dim for m in mods)
    mats = []
    for i in range(A.dim):
        M = linalg.zero_matrix(f, total, total)
        off = 0
        for m in mods:
            for r in range(m.dim):
                for c in range(m.dim):
                    M[off + r][off + c] = m.mats[i][r][c]
            off += m.dim
        mats.append(M)
    return AlgebraModule(A, total, mats)


def hom_space(M: AlgebraModule, N: AlgebraModule):
    """Basis of intertwiners H with H rho_M(b) = rho_N(b) H, as matrices."""
    if M.algebra.dim != N.algebra.dim:
        raise AlgebraError("hom space between modules over different algebras")
    f = M.field
    rows = []
    # unknowns H[r][c], flattened c-major within r
    for i in range(M.algebra.dim):
        Mi, Ni = M.mats[i], N.mats[i]
        for r in range(N.dim):
            for c in range(M.dim):
                row = linalg.zero_vector(f, N.dim * M.dim)
                for k in range(M.dim):
                    row[r * M.dim + k] = f.add(row[r * M.dim + k], Mi[k][c])
                for k in range(N.dim):
                    idx = k * M.dim + c
                    row[idx] = f.sub(row[idx], Ni[r][k])
                rows.append(row)
    if not rows:
        return []
    ker = linalg.kernel_basis(f, rows, N.dim * M.dim)
    mats = []
    for v in ker:
        mats.append([list(v[r * M.dim:(r + 1) * M.dim]) for r in range(N.dim)])
    return mats


def simple_modules_isomorphic(M: AlgebraModule, N: AlgebraModule) -> bool:
    """Iso test for simple modules: any nonzero intertwiner is invertible."""
    if M.dim != N.dim:
        return False
    homs = hom_space(M, N)
    if not homs:
        return False
    H = homs[0]
    if linalg.inverse_matrix(M.field, H) is None:
        raise CheckFailure("nonzero intertwiner between simples is not invertible")
    return True


# ---------------------------------------------------------------------------
# composition-factor search (meataxe-flavoured, deterministic)


def _proper_cyclic_submodule(M: AlgebraModule, rng: random.Random,
                             point_budget: int):
    """A nonzero proper submodule, or None when M is simple.

    Scans cyclic submodules over all projective points; when the point
    count exceeds the budget, falls back to seeds drawn from kernels of
    random algebra elements and gives up loudly if that fails.
    """
    n_points = num_projective_points(M.field, M.dim)
    if n_points <= point_budget:
        for v in projective_points(M.field, M.dim):
            S = submodule_generated(M, [v], stop_at_full=True)
            if not S.is_full():
                return S
        return None
    f = M.field
    scalars = list(f.elements())
    for _ in range(MEATAXE_RANDOM_TRIES):
        a = [scalars[rng.randrange(len(scalars))] for _ in range(M.algebra.dim)]
        ker = linalg.kernel_basis(f, M.action_matrix(a), M.dim)
        seeds = ker if ker else [[scalars[rng.randrange(len(scalars))]
                                  for _ in range(M.dim)]]
        for v in seeds:
            if linalg.vec_is_zero(v):
                continue
            S = submodule_generated(M, [v], stop_at_full=True)
            if not S.is_full():
                return S
    raise CapExceeded("could not certify simplicity within the random-search budget")


def find_maximal_submodule(M: AlgebraModule, seed: int = 0,
                           point_budget: int = SIMPLICITY_POINT_BUDGET) -> Subspace:
    """A maximal proper submodule of a nonzero module."""
    if M.dim == 0:
        raise AlgebraError("the zero module has no maximal submodule")
    rng = random.Random(seed)
    f = M.field
    N = Subspace.zero(f, M.dim)
    while True:
        Q, proj = quotient_module(M, N)
        P = _proper_cyclic_submodule(Q, rng, point_budget)
        if P is None:
            return N
        _, lift = quotient_coords(f, N)
        lifted = [linalg.mat_vec(f, lift, list(v)) for v in P.basis]
        N = Subspace.from_vectors(f, M.dim, list(N.basis) + lifted)


def meataxe_simple_quotients(M: AlgebraModule, seed: int = 0,
                             point_budget: int = SIMPLICITY_POINT_BUDGET,
                             dim_cap: int = MEATAXE_DIM_CAP) -> list[AlgebraModule]:
    """Pairwise non-isomorphic simple quotients of M.

    Walks a composition series (maximal submodule, quotient, recurse on the
    kernel), de-duplicates factors up to isomorphism, then keeps those with
    a nonzero hom from M -- exactly the simple quotients, covering every
    composition factor of M modulo its radical.
    """
    if M.dim > dim_cap:
        raise CapExceeded(f"composition-factor search capped at dim {dim_cap}")
    factors: list[AlgebraModule] = []

    def walk(mod: AlgebraModule):
        if mod.dim == 0:
            return
        N = find_maximal_submodule(mod, seed, point_budget)
        S, _ = quotient_module(mod, N)
        if not any(simple_modules_isomorphic(S, T) for T in factors):
            factors.append(S)
        if N.dim:
            walk(restrict_module(mod, N))

    walk(M)
    return [S for S in factors if hom_space(M, S)]


# ---------------------------------------------------------------------------
# radical


def jacobson_radical(A: FDAlgebra, seed: int = 0, _recheck: bool = True) -> Subspace:
    """Intersection of the annihilators of the simple quotients of A.

    Self-certifying: the result must be a nilpotent two-sided ideal with
    J^k = 0 for some k <= dim, and A/J must have zero radical on re-run.
    """
    if A.unit is None:
        raise AlgebraError("radical needs a unital algebra")
    if A.dim == 0:
        return Subspace.zero(A.field, 0)
    simples = meataxe_simple_quotients(regular_module(A), seed)
    J = Subspace.full(A.field, A.dim)
    for S in simples:
        J = J.intersect(annihilator(S))
    if not is_ideal(A, J, "two"):
        raise CheckFailure("radical candidate is not a two-sided ideal")
    power = J
    k = 1
    while not power.is_zero():
        if k > A.dim:
            raise CheckFailure("radical candidate is not nilpotent")
        nxt = []
        for u in power.basis:
            for v in J.basis:
                nxt.append(A.mul(list(u), list(v)))
        power = Subspace.from_vectors(A.field, A.dim, nxt)
        k += 1
    if _recheck and not J.is_full():
        Q, _ = quotient_algebra(A, J)
        if not jacobson_radical(Q, seed, _recheck=False).is_zero():
            raise CheckFailure("A modulo its radical has nonzero radical")
    return J


def radical_bruteforce(A: FDAlgebra, order_cap: int = RADICAL_ORDER_CAP) -> Subspace:
    """Oracle: {a : 1 - b a is invertible for every b}, by exhaustion."""
    if A.unit is None:
        raise AlgebraError("radical oracle needs a unital algebra")
    if not A.field.is_finite:
        raise CapExceeded("radical oracle needs a finite base field")
    if A.order() > order_cap:
        raise CapExceeded(f"radical oracle capped at order {order_cap}")
    f = A.field
    invertible: dict[tuple, bool] = {}

    def is_inv(v: tuple) -> bool:
        got = invertible.get(v)
        if got is None:
            got = linalg.inverse_matrix(f, A.left_mult_matrix(list(v))) is not None
            invertible[v] = got
        return got

    one = list(A.unit)
    members = []
    elems = [list(v) for v in A.elements()]
    for a in elems:
        Ra = A.right_mult_matrix(a)
        ok = True
        for b in elems:
            ba = linalg.mat_vec(f, Ra, b)
            if not is_inv(tuple(linalg.vec_sub(f, one, ba))):
                ok = False
                break
        if ok:
            members.append(a)
    S = Subspace.from_vectors(f, A.dim, members)
    if len(members) != f.order ** S.dim:
        raise CheckFailure("quasi-invertibility set is not a subspace")
    return S


# ---------------------------------------------------------------------------
# von Neumann regularity


def is_von_neumann_regular(A: FDAlgebra, order_cap: int = VNR_ORDER_CAP):
    """(flag, witness): every a has x with a x a = a; witness fails that."""
    if not A.field.is_finite:
        raise CapExceeded("von Neumann regularity test needs a finite base field")
    if A.order() > order_cap:
        raise CapExceeded(f"von Neumann regularity test capped at order {order_cap}")
    f = A.field
    for a in A.elements():
        a = list(a)
        M = linalg.mat_mul(f, A.left_mult_matrix(a), A.right_mult_matrix(a))
        if linalg.solve(f, M, a) is None:
            return False, tuple(a)
    return True, None


# ---------------------------------------------------------------------------
# centralizers, quotients, isomorphisms


def centralizer(A: FDAlgebra, S: Subspace) -> Subspace:
    """{a : as = sa for all s in S}. S must be multiplicatively closed."""
    for u in S.basis:
        for v in S.basis:
            if not S.contains(A.mul(list(u), list(v))):
                raise AlgebraError("centralizer input is not multiplicatively closed")
    f = A.field
    rows = []
    for s in S.basis:
        L = A.left_mult_matrix(list(s))
        R = A.right_mult_matrix(list(s))
        for r in range(A.dim):
            rows.append([f.sub(R[r][c], L[r][c]) for c in range(A.dim)])
    if not rows:
        return Subspace.full(f, A.dim)
    return Subspace.from_vectors(f, A.dim, linalg.kernel_basis(f, rows, A.dim))


def quotient_algebra(A: FDAlgebra, I: Subspace):
    """(A/I, proj matrix). I must be a proper two-sided ideal."""
    if not is_ideal(A, I, "two"):
        raise AlgebraError("quotient by a non-ideal")
    f = A.field
    proj, lift = quotient_coords(f, I)
    q = len(proj)
    pivset = set(I.pivots)
    free = [j for j in range(A.dim) if j not in pivset]
    labels = [A.labels[j] for j in free]
    table = []
    for r, jr in enumerate(free):
        row = []
        for c, jc in enumerate(free):
            prod = A.mul(A.basis_vector(jr), A.basis_vector(jc))
            row.append(linalg.mat_vec(f, proj, prod))
        table.append(row)
    unit = linalg.mat_vec(f, proj, list(A.unit)) if A.unit is not None else None
    if unit is not None and q == 0:
        unit = []
    return FDAlgebra(f, labels, table, unit), proj


def subalgebra_on(A: FDAlgebra, S: Subspace, labels=None) -> FDAlgebra:
    """The algebra structure on a multiplicatively closed subspace.

    Picks up a two-sided identity inside S when one exists.
    """
    f = A.field
    prods = {}
    for i, u in enumerate(S.basis):
        for j, v in enumerate(S.basis):
            w = A.mul(list(u), list(v))
            if not S.contains(w):
                raise AlgebraError("subspace is not multiplicatively closed")
            prods[i, j] = S.coords_of(w)
    if labels is None:
        labels = [f"s{i}" for i in range(S.dim)]
    table = [[prods[i, j] for j in range(S.dim)] for i in range(S.dim)]
    B = FDAlgebra(f, labels, table)
    unit = find_unit(B)
    if unit is not None:
        B.unit = tuple(unit)
    return B


def find_unit(A: FDAlgebra):
    """A two-sided identity vector, or None."""
    f = A.field
    n = A.dim
    if n == 0:
        return None
    rows, rhs = [], []
    R = A.right_basis_mats()
    L = A.left_basis_mats()
    for i in range(n):
        e = A.basis_vector(i)
        # u * b_i = b_i  -> R_i @ u = e_i ; b_i * u = b_i -> L_i @ u = e_i
        for r in range(n):
            rows.append(list(R[i][r]))
            rhs.append(e[r])
        for r in range(n):
            rows.append(list(L[i][r]))
            rhs.append(e[r])
    return linalg.solve(f, rows, rhs)


def check_ring_iso(A: FDAlgebra, B: FDAlgebra, mat) -> bool:
    """Does mat (dim B x dim A, columns = images) define a unital ring iso?"""
    if A.field != B.field:
        return False
    if A.dim != B.dim:
        return False
    f = A.field
    if len(mat) != B.dim or any(len(r) != A.dim for r in mat):
        raise AlgebraError("iso matrix has the wrong shape")
    if linalg.rank(f, mat) != A.dim:
        return False
    cols = linalg.transpose(mat)
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = linalg.mat_vec(f, mat, list(A.table[i][j]))
            rhs = B.mul(cols[i], cols[j])
            if lhs != rhs:
                return False
    if (A.unit is None) != (B.unit is None):
        return False
    if A.unit is not None:
        if linalg.mat_vec(f, mat, list(A.unit)) != list(B.unit):
            return False
    return True


# ---------------------------------------------------------------------------
# stock algebras


def matrix_algebra(field: Field, n: int) -> FDAlgebra:
    """M_n(F) on the matrix-unit basis e{i}{j}, 1-indexed."""
    labels = [f"e{i+1}{j+1}" for i in range(n) for j in range(n)]
    idx = {(i, j): i * n + j for i in range(n) for j in range(n)}
    dim = n * n
    table = []
    for i in range(n):
        for j in range(n):
            row = []
            for k in range(n):
                for l in range(n):
                    v = [field.zero] * dim
                    if j == k:
                        v[idx[i, l]] = field.one
                    row.append(v)
            table.append(row)
    unit = [field.zero] * dim
    for i in range(n):
        unit[idx[i, i]] = field.one
    return FDAlgebra(field, labels, table, unit)


def group_algebra(field: Field, elements, mul) -> FDAlgebra:
    """F[G] for a finite group given by element list and product map."""
    labels = list(elements)
    idx = {g: i for i, g in enumerate(labels)}
    dim = len(labels)
    table = []
    for g in labels:
        row = []
        for h in labels:
            v = [field.zero] * dim
            v[idx[mul(g, h)]] = field.one
            row.append(v)
        table.append(row)
    unit = None
    for e in labels:
        if all(mul(e, g) == g and mul(g, e) == g for g in labels):
            unit = [field.zero] * dim
            unit[idx[e]] = field.one
            break
    return FDAlgebra(field, labels, table, unit)
