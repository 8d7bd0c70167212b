"""Convolution algebras of finite groupoids with sheaf coefficients.

The algebra of compactly supported sections f with f(gamma) in the stalk
at dst(gamma), under convolution

    (f * g)(gamma) = sum over beta rho = gamma of f(beta) alpha_beta(g(rho)).

On point masses a.delta_beta this is (a alpha_beta(b)).delta_{beta rho}
when src(beta) = dst(rho) and 0 otherwise; the identity is the
characteristic function of the unit space.  Basis labels are pairs
(arrow, stalk basis index).
"""

from __future__ import annotations

from . import exactalg, linalg, sheaf as sheafmod
from .errors import CapExceeded, CheckFailure, InputError
from .exactalg import FDAlgebra, Subspace
from .groupoid import FiniteGroupoid, bisection_semigroup, bisection_product, is_minimal
from .reports import Report
from .sheaf import GSheafOfAlgebras


class ConvAlgebra:
    """Gamma_c(G, O) with its distinguished point-mass basis."""

    def __init__(self, groupoid: FiniteGroupoid, sheaf: GSheafOfAlgebras,
                 algebra: FDAlgebra):
        self.groupoid = groupoid
        self.sheaf = sheaf
        self.algebra = algebra
        self.index = {lab: i for i, lab in enumerate(algebra.labels)}

    @property
    def field(self):
        return self.algebra.field

    @property
    def dim(self):
        return self.algebra.dim

    def point_mass(self, arrow, stalk_vector):
        """Coordinates of the section supported on one arrow."""
        v = linalg.zero_vector(self.field, self.dim)
        for i, c in enumerate(stalk_vector):
            if c != 0:
                v[self.index[arrow, i]] = c
        return v

    def value_at(self, vec, arrow):
        """The stalk value of a section at one arrow."""
        d = self.sheaf.stalk[self.groupoid.dst[arrow]].dim
        return [vec[self.index[arrow, i]] for i in range(d)]

    def support(self, vec) -> list:
        """Arrows where the section is nonzero."""
        out = []
        for a in self.groupoid.arrows:
            if not linalg.vec_is_zero(self.value_at(vec, a)):
                out.append(a)
        return out

    def chi(self, arrows):
        """Characteristic function: stalk identity on each given arrow."""
        v = linalg.zero_vector(self.field, self.dim)
        for a in arrows:
            one = self.sheaf.stalk[self.groupoid.dst[a]].unit
            for i, c in enumerate(one):
                if c != 0:
                    v[self.index[a, i]] = self.field.add(v[self.index[a, i]], c)
        return v

    def diagonal_subspace(self) -> Subspace:
        """Sections supported on identity arrows."""
        vecs = []
        for u in self.groupoid.units:
            e = self.groupoid.unit_arrow(u)
            for i in range(self.sheaf.stalk[u].dim):
                vecs.append(self.point_mass(e, self._unit_vec(u, i)))
        return Subspace.from_vectors(self.field, self.dim, vecs)

    def _unit_vec(self, u, i):
        d = self.sheaf.stalk[u].dim
        v = linalg.zero_vector(self.field, d)
        v[i] = self.field.one
        return v


def build_conv_algebra(G: FiniteGroupoid, O: GSheafOfAlgebras,
                       validate: bool = True) -> ConvAlgebra:
    """Construct Gamma_c(G, O) from structure constants."""
    if validate:
        sheafmod.require_valid_sheaf(O)
    f = O.field
    labels = []
    for a in G.arrows:
        for i in range(O.stalk[G.dst[a]].dim):
            labels.append((a, i))
    dim = len(labels)
    index = {lab: k for k, lab in enumerate(labels)}
    table = []
    for (beta, i) in labels:
        row = []
        stalk_b = O.stalk[G.dst[beta]]
        for (rho, j) in labels:
            v = linalg.zero_vector(f, dim)
            if G.composable(beta, rho):
                src_stalk = O.stalk[G.dst[rho]]
                ej = linalg.zero_vector(f, src_stalk.dim)
                ej[j] = f.one
                moved = O.apply(beta, ej)
                ei = linalg.zero_vector(f, stalk_b.dim)
                ei[i] = f.one
                prod = stalk_b.mul(ei, moved)
                target = G.compose[beta, rho]
                for k, c in enumerate(prod):
                    if c != 0:
                        v[index[target, k]] = c
            row.append(v)
        table.append(row)
    unit = linalg.zero_vector(f, dim)
    for u in G.units:
        e = G.unit_arrow(u)
        for k, c in enumerate(O.stalk[u].unit):
            if c != 0:
                unit[index[e, k]] = c
    A = FDAlgebra(f, labels, table, unit)
    conv = ConvAlgebra(G, O, A)
    if validate:
        bad = exactalg.validate_algebra(A)
        if bad:
            raise CheckFailure("convolution algebra fails algebra axioms: " + bad[0])
        expected = sum(O.stalk[G.dst[a]].dim for a in G.arrows)
        if A.dim != expected:
            raise CheckFailure("convolution algebra has the wrong dimension")
    return conv


def convolution_eval(conv: ConvAlgebra, fvec, gvec):
    """Pointwise re-evaluation of the defining convolution sum.

    Independent of the structure-constant table: walks every composable
    factorization of every arrow using only stalk products and the
    transition maps.
    """
    G = conv.groupoid
    O = conv.sheaf
    f = conv.field
    out = linalg.zero_vector(f, conv.dim)
    for (beta, rho), gamma in G.compose.items():
        stalk = O.stalk[G.dst[beta]]
        a = conv.value_at(fvec, beta)
        b = conv.value_at(gvec, rho)
        if linalg.vec_is_zero(a) or linalg.vec_is_zero(b):
            continue
        term = stalk.mul(a, O.apply(beta, b))
        for k, c in enumerate(term):
            if c != 0:
                idx = conv.index[gamma, k]
                out[idx] = f.add(out[idx], c)
    return out


def check_convolution_table(conv: ConvAlgebra) -> Report:
    """Structure constants against the defining sum, all basis pairs."""
    A = conv.algebra
    ok = True
    witness = {}
    for i in range(A.dim):
        for j in range(A.dim):
            ei, ej = A.basis_vector(i), A.basis_vector(j)
            direct = list(A.table[i][j])
            summed = convolution_eval(conv, ei, ej)
            if direct != summed:
                ok = False
                witness = {"pair": [repr(A.labels[i]), repr(A.labels[j])]}
                break
        if not ok:
            break
    return Report(check="convolution-table", hypotheses={}, lhs="structure constants",
                  rhs="pointwise convolution sum", passed=ok, witnesses=witness)


def check_bisection_convolution(conv: ConvAlgebra, arrow_cap: int = 8) -> Report:
    """chi_U * chi_V = chi_{UV} for all bisections (capped enumeration)."""
    G = conv.groupoid
    if len(G.arrows) > arrow_cap:
        return Report(check="bisection-convolution",
                      hypotheses={}, passed=None,
                      caps_hit=[f"arrow count {len(G.arrows)} exceeds cap {arrow_cap}"])
    _, members = bisection_semigroup(G, arrow_cap)
    ok = True
    witness = {}
    sets = list(members.values())
    for U in sets:
        for V in sets:
            lhs = conv.algebra.mul(conv.chi(U), conv.chi(V))
            rhs = conv.chi(bisection_product(G, U, V))
            if lhs != rhs:
                ok = False
                witness = {"U": sorted(U), "V": sorted(V)}
                break
        if not ok:
            break
    return Report(check="bisection-convolution", hypotheses={},
                  lhs="chi_U * chi_V", rhs="chi_{UV}", passed=ok, witnesses=witness)


# ---------------------------------------------------------------------------
# centralizer of the diagonal


def centralizer_of_diagonal(conv: ConvAlgebra) -> Subspace:
    """Centralizer of the unit-space sections inside Gamma_c.

    For commutative stalks every centralizing section is supported on the
    isotropy bundle; for stalks that are fields (finite integral domains)
    the centralizer is exactly the span of sections supported on the
    kernel of the sheaf.  Both facts are asserted whenever their
    hypotheses hold.
    """
    C = exactalg.centralizer(conv.algebra, conv.diagonal_subspace())
    G = conv.groupoid
    if sheafmod.stalks_commutative(conv.sheaf):
        iso = set(G.iso_bundle())
        for v in C.basis:
            outside = [a for a in conv.support(list(v)) if a not in iso]
            if outside:
                raise CheckFailure(
                    f"diagonal centralizer escapes the isotropy bundle at {outside[0]}")
    try:
        fields = sheafmod.is_sheaf_of_fields(conv.sheaf)
    except CapExceeded:
        fields = False
    if fields:
        ker = set(sheafmod.ker_sheaf(conv.sheaf))
        vecs = []
        for a in G.arrows:
            if a in ker:
                for i in range(conv.sheaf.stalk[G.dst[a]].dim):
                    vecs.append(conv.point_mass(a, conv._unit_vec(G.dst[a], i)))
        span = Subspace.from_vectors(conv.field, conv.dim, vecs)
        if span != C:
            raise CheckFailure("diagonal centralizer is not the span of "
                               "kernel-supported sections")
    return C


def is_diagonal_masa(conv: ConvAlgebra) -> bool:
    """Is the diagonal maximal commutative: centralizer == diagonal?"""
    return centralizer_of_diagonal(conv) == conv.diagonal_subspace()


def check_masa_criterion(conv: ConvAlgebra) -> Report:
    """masa <=> the kernel of the sheaf is reduced to the units.

    Holds for sheaves of fields (and, finitely, of integral domains);
    skipped otherwise.
    """
    try:
        fields = sheafmod.is_sheaf_of_fields(conv.sheaf)
        cap = []
    except CapExceeded as exc:
        fields = False
        cap = [str(exc)]
    hyp = {"stalks are fields": fields}
    if not fields:
        return Report(check="masa-criterion", hypotheses=hyp, passed=None, caps_hit=cap)
    masa = is_diagonal_masa(conv)
    intker = sheafmod.int_ker_is_units(conv.sheaf)
    return Report(check="masa-criterion", hypotheses=hyp,
                  lhs={"diagonal is masa": masa},
                  rhs={"kernel interior is the unit space": intker},
                  passed=(masa == intker))


def check_uniqueness_theorem(conv: ConvAlgebra, cap: int = exactalg.IDEAL_DIM_CAP) -> Report:
    """Every nonzero ideal meets the centralizer of the diagonal.

    Equivalent finite form of injectivity-detection on the centralizer:
    a homomorphism out of Gamma_c is injective iff it is injective on the
    diagonal's centralizer.
    """
    try:
        ideals = exactalg.enumerate_two_sided_ideals(conv.algebra, cap)
    except CapExceeded as exc:
        return Report(check="uniqueness", hypotheses={}, passed=None, caps_hit=[str(exc)])
    C = centralizer_of_diagonal(conv)
    misses = []
    for I in ideals:
        if I.is_zero():
            continue
        if I.intersect(C).is_zero():
            misses.append(I)
    rep = Report(check="uniqueness", hypotheses={},
                 lhs=f"{sum(1 for I in ideals if not I.is_zero())} nonzero ideals",
                 rhs="all meet the diagonal centralizer",
                 passed=not misses)
    if misses:
        rep.witnesses["ideal_dim"] = misses[0].dim
    return rep


# ---------------------------------------------------------------------------
# dictionary checks: dynamics <-> algebra


def check_simplelife(G: FiniteGroupoid, O: GSheafOfAlgebras,
                     conv: ConvAlgebra | None = None) -> Report:
    """Simplicity dictionary for sheaves of fields:

        Gamma_c(G, O) simple  <=>  G minimal and the kernel of O is
                                   reduced to the unit space.
    """
    try:
        fields = sheafmod.is_sheaf_of_fields(O)
        caps = []
    except CapExceeded as exc:
        fields = False
        caps = [str(exc)]
    hyp = {"stalks are fields": fields}
    if not fields:
        return Report(check="simplicity-dictionary", hypotheses=hyp,
                      passed=None, caps_hit=caps)
    if conv is None:
        conv = build_conv_algebra(G, O)
    try:
        simple = exactalg.is_simple(conv.algebra)
    except CapExceeded as exc:
        return Report(check="simplicity-dictionary", hypotheses=hyp,
                      passed=None, caps_hit=[str(exc)])
    minimal = is_minimal(G)
    intker = sheafmod.int_ker_is_units(O)
    return Report(check="simplicity-dictionary", hypotheses=hyp,
                  lhs={"simple": simple},
                  rhs={"minimal": minimal, "kernel is units": intker},
                  passed=(simple == (minimal and intker)))


def check_primitivity(G: FiniteGroupoid, O: GSheafOfAlgebras,
                      conv: ConvAlgebra | None = None) -> Report:
    """Primitivity dictionary under a masa diagonal of a sheaf of fields:

        Gamma_c primitive  <=>  G has a dense orbit.

    Finite reduction, recorded in the notes: a finite-dimensional algebra
    is Artinian, so primitive means simple (Wedderburn); a dense orbit in
    a finite discrete unit space is an orbit meeting every unit, i.e.
    minimality.
    """
    notes = ["finite reduction: primitive <=> simple (Artinian, Wedderburn)",
             "finite reduction: dense orbit <=> single orbit"]
    try:
        fields = sheafmod.is_sheaf_of_fields(O)
        caps = []
    except CapExceeded as exc:
        fields = False
        caps = [str(exc)]
    if conv is None and fields:
        conv = build_conv_algebra(G, O)
    masa = is_diagonal_masa(conv) if fields else False
    hyp = {"stalks are fields": fields, "diagonal is masa": masa}
    if not (fields and masa):
        return Report(check="primitivity-dictionary", hypotheses=hyp,
                      passed=None, caps_hit=caps, notes=notes)
    try:
        simple = exactalg.is_simple(conv.algebra)
    except CapExceeded as exc:
        return Report(check="primitivity-dictionary", hypotheses=hyp,
                      passed=None, caps_hit=[str(exc)], notes=notes)
    minimal = is_minimal(G)
    return Report(check="primitivity-dictionary", hypotheses=hyp,
                  lhs={"primitive (= simple)": simple},
                  rhs={"dense orbit (= minimal)": minimal},
                  passed=(simple == minimal), notes=notes)


def check_semiprimitivity(G: FiniteGroupoid, O: GSheafOfAlgebras,
                          conv: ConvAlgebra | None = None, seed: int = 0) -> Report:
    """Sheaf of fields with masa diagonal => zero Jacobson radical."""
    try:
        fields = sheafmod.is_sheaf_of_fields(O)
        caps = []
    except CapExceeded as exc:
        fields = False
        caps = [str(exc)]
    if conv is None and fields:
        conv = build_conv_algebra(G, O)
    masa = is_diagonal_masa(conv) if fields else False
    hyp = {"stalks are fields": fields, "diagonal is masa": masa}
    if not (fields and masa):
        return Report(check="semiprimitivity", hypotheses=hyp,
                      passed=None, caps_hit=caps)
    try:
        J = exactalg.jacobson_radical(conv.algebra, seed)
    except CapExceeded as exc:
        return Report(check="semiprimitivity", hypotheses=hyp,
                      passed=None, caps_hit=[str(exc)])
    rep = Report(check="semiprimitivity", hypotheses=hyp,
                 lhs={"radical dim": J.dim}, rhs={"radical dim": 0},
                 passed=J.is_zero())
    if not J.is_zero():
        rep.witnesses["radical_basis"] = [list(map(conv.field.encode, r))
                                          for r in J.basis]
    return rep
