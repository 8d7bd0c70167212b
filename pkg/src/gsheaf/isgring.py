"""Inverse semigroups acting on rings and spaces, and the rings they build.

A spectral action of an inverse semigroup S on a ring A assigns to each
s a two-sided ideal D_s with a central-idempotent unit and a ring
isomorphism alpha_s: D_{s*} -> D_s, compatibly with the natural partial
order u <= s  <=>  u = u u* s.  From the action we build

    L = direct sum over s of D_s delta_s,
    (a delta_s)(b delta_t) = alpha_s(alpha_{s*}(a) b) delta_{st},
    N = span of a delta_r - a delta_s  for r <= s and a in D_r,

verify that N is a two-sided ideal, and return the quotient L/N.

Space actions by partial bijections give a groupoid of germs: arrows are
classes [s,x] for x in the domain of theta_s, where (s,x) ~ (t,x) when
some u <= s,t is defined at x.  The equivalence-relation properties and
well-definedness of the product are verified rather than assumed, so
malformed inputs fail loudly instead of producing a wrong groupoid.

The verifications at the bottom check, on finite instances: the
convolution algebra is the skew ring of the bisection action on its
diagonal; skew rings of spectral actions are convolution algebras over
the germ groupoid of the Pierce-spectrum action; topological freeness
matches effectiveness of the germ groupoid; minimality matches
simplicity; and partial crossed products are transformation-groupoid
convolution algebras.
"""

from __future__ import annotations

import itertools

from . import exactalg, linalg
from .convalg import ConvAlgebra, build_conv_algebra
from .errors import AlgebraError, CapExceeded, CheckFailure, InputError
from .exactalg import FDAlgebra, Subspace
from .fields import Field
from .groupoid import (ARROW_CAP, FiniteGroupoid, bisection_semigroup,
                       is_effective, orbits, require_valid_groupoid)
from .reports import Report, skip_report
from .sheaf import (GSheafOfAlgebras, constant_sheaf, is_sheaf_of_fields,
                    validate_sheaf)

CENTRAL_ORDER_CAP = 2 ** 12


class FiniteInverseSemigroup:
    """Elements with a total product table and an involution table."""

    def __init__(self, elements, mul, star, validate: bool = True):
        self.elements = tuple(elements)
        self.index = {s: i for i, s in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise InputError("duplicate semigroup elements")
        self.mul = dict(mul)
        self.star = dict(star)
        if validate:
            bad = validate_inverse_semigroup(self)
            if bad:
                raise InputError("not an inverse semigroup: " + bad[0])

    def idempotents(self):
        return [e for e in self.elements if self.mul[e, e] == e]

    def natural_leq(self, u, s) -> bool:
        """u <= s in the natural partial order: u = u u* s."""
        return u == self.mul[self.mul[u, self.star[u]], s]

    def is_group(self) -> bool:
        return len(self.idempotents()) == 1

    def group_unit(self):
        if not self.is_group():
            raise AlgebraError("semigroup has more than one idempotent")
        return self.idempotents()[0]

    def __repr__(self):
        return f"FiniteInverseSemigroup({len(self.elements)} elements)"


def validate_inverse_semigroup(S: FiniteInverseSemigroup) -> list[str]:
    """First-failure-named exhaustive check of the inverse semigroup axioms."""
    elems = S.elements
    eset = set(elems)
    for s in elems:
        if s not in S.star or S.star[s] not in eset:
            return [f"star undefined or out of range at {s}"]
        for t in elems:
            if (s, t) not in S.mul or S.mul[s, t] not in eset:
                return [f"product undefined or out of range at ({s},{t})"]
    for s in elems:
        if S.star[S.star[s]] != s:
            return [f"star is not an involution at {s}"]
    for a in elems:
        for b in elems:
            ab = S.mul[a, b]
            for c in elems:
                if S.mul[ab, c] != S.mul[a, S.mul[b, c]]:
                    return [f"associativity fails at ({a},{b},{c})"]
    for s in elems:
        st = S.star[s]
        if S.mul[S.mul[s, st], s] != s:
            return [f"s s* s != s at {s}"]
        if S.mul[S.mul[st, s], st] != st:
            return [f"s* s s* != s* at {s}"]
    idem = [e for e in elems if S.mul[e, e] == e]
    for e in idem:
        for f in idem:
            if S.mul[e, f] != S.mul[f, e]:
                return [f"idempotents {e} and {f} do not commute"]
    return []


def natural_order_violations(S: FiniteInverseSemigroup) -> list[str]:
    """Partial-order and compatibility laws of the natural order."""
    elems = S.elements
    leq = {(u, s): S.natural_leq(u, s) for u in elems for s in elems}
    bad = []
    for s in elems:
        if not leq[s, s]:
            bad.append(f"not reflexive at {s}")
    for u in elems:
        for s in elems:
            if leq[u, s] and leq[s, u] and u != s:
                bad.append(f"not antisymmetric at ({u},{s})")
            if leq[u, s] and not leq[S.star[u], S.star[s]]:
                bad.append(f"u <= s but u* !<= s* at ({u},{s})")
            for t in elems:
                if leq[u, s] and leq[s, t] and not leq[u, t]:
                    bad.append(f"not transitive at ({u},{s},{t})")
    idem = S.idempotents()
    for u in elems:
        for s in elems:
            if leq[u, s]:
                for e in idem:
                    if not leq[S.mul[u, e], S.mul[s, e]]:
                        bad.append(f"u <= s but ue !<= se at ({u},{s},{e})")
    return bad


def symmetric_inverse_monoid(symbols):
    """I(n): all partial injections on the symbols, under composition.

    Elements are labeled "[x>y,...]" by their graphs, sorted by symbol
    order, with "[]" the empty map.  Returns (semigroup, graphs) where
    graphs maps each label to its frozenset of (x, y) pairs.
    """
    symbols = list(symbols)
    pos = {x: i for i, x in enumerate(symbols)}
    n = len(symbols)
    graphs = []
    for k in range(n + 1):
        for dom in itertools.combinations(symbols, k):
            for img in itertools.permutations(symbols, k):
                graphs.append(frozenset(zip(dom, img)))
    graphs = sorted(set(graphs),
                    key=lambda g: (len(g), sorted((pos[x], pos[y]) for x, y in g)))

    def label(g):
        inner = ",".join(f"{x}>{y}"
                         for x, y in sorted(g, key=lambda p: pos[p[0]]))
        return f"[{inner}]"

    by_graph = {g: label(g) for g in graphs}
    mul, star = {}, {}
    for g in graphs:
        gmap = dict(g)
        star[by_graph[g]] = by_graph[frozenset((y, x) for x, y in g)]
        for h in graphs:
            comp = frozenset((x, gmap[y]) for x, y in h if y in gmap)
            mul[by_graph[g], by_graph[h]] = by_graph[comp]
    S = FiniteInverseSemigroup([by_graph[g] for g in graphs], mul, star)
    return S, {by_graph[g]: g for g in graphs}


# ---------------------------------------------------------------------------
# spectral actions on rings and the skew ring


class SpectralRingAction:
    """Action of an inverse semigroup on an algebra by partial isos.

    domain[s] is the ideal D_s; alpha[s] is a full ambient matrix whose
    restriction to D_{s*} is the partial isomorphism onto D_s (values
    off D_{s*} are never used).  units[s] is the identity element of
    D_s, computed during validation.
    """

    def __init__(self, S: FiniteInverseSemigroup, A: FDAlgebra,
                 domain: dict, alpha: dict, validate: bool = True):
        self.semigroup = S
        self.algebra = A
        self.domain = dict(domain)
        self.alpha = dict(alpha)
        self.units: dict = {}
        if validate:
            bad = validate_ring_action(self)
            if bad:
                raise InputError("invalid ring action: " + bad[0])

    def apply(self, s, v):
        if not self.domain[self.semigroup.star[s]].contains(v):
            raise AlgebraError(f"vector outside the domain of alpha[{s}]")
        return linalg.mat_vec(self.algebra.field, self.alpha[s], v)


def _domain_unit(A: FDAlgebra, D: Subspace):
    """The identity element of the ideal D, or None."""
    if D.dim == 0:
        return linalg.zero_vector(A.field, A.dim)
    f = A.field
    rows, rhs = [], []
    # u in D with u b = b = b u for every basis b of D; unknowns are
    # coefficients of u over the basis of D
    cols = [list(b) for b in D.basis]
    for b in D.basis:
        Lb = A.left_mult_matrix(list(b))
        Rb = A.right_mult_matrix(list(b))
        for M in (Rb, Lb):
            img = [linalg.mat_vec(f, M, c) for c in cols]
            for r in range(A.dim):
                rows.append([img[k][r] for k in range(D.dim)])
                rhs.append(b[r])
    sol = linalg.solve(f, rows, rhs)
    if sol is None:
        return None
    out = linalg.zero_vector(f, A.dim)
    for k, c in enumerate(sol):
        if c != 0:
            out = linalg.vec_add(f, out, linalg.vec_scale(f, c, list(D.basis[k])))
    return out


def validate_ring_action(act: SpectralRingAction) -> list[str]:
    S, A = act.semigroup, act.algebra
    f = A.field
    for s in S.elements:
        if s not in act.domain or s not in act.alpha:
            return [f"missing domain or alpha for {s}"]
        if not exactalg.is_ideal(A, act.domain[s], "two"):
            return [f"D_{s} is not a two-sided ideal"]
    for s in S.elements:
        Dsrc, Ddst = act.domain[S.star[s]], act.domain[s]
        M = act.alpha[s]
        if len(M) != A.dim or any(len(r) != A.dim for r in M):
            return [f"alpha[{s}] has the wrong shape"]
        imgs = [linalg.mat_vec(f, M, list(b)) for b in Dsrc.basis]
        if not Ddst.contains_all(imgs):
            return [f"alpha[{s}] does not map D_{S.star[s]} into D_{s}"]
        if Dsrc.dim != Ddst.dim:
            return [f"D_{S.star[s]} and D_{s} have different dimensions"]
        if Subspace.from_vectors(f, A.dim, imgs).dim != Dsrc.dim:
            return [f"alpha[{s}] is not injective on its domain"]
        Minv = act.alpha[S.star[s]]
        for b in Dsrc.basis:
            if linalg.mat_vec(f, Minv, linalg.mat_vec(f, M, list(b))) != list(b):
                return [f"alpha[{S.star[s]}] does not invert alpha[{s}]"]
        for u in Dsrc.basis:
            for v in Dsrc.basis:
                lhs = linalg.mat_vec(f, M, A.mul(list(u), list(v)))
                rhs = A.mul(linalg.mat_vec(f, M, list(u)),
                            linalg.mat_vec(f, M, list(v)))
                if lhs != rhs:
                    return [f"alpha[{s}] is not multiplicative"]
    idem = S.idempotents()
    for e in idem:
        for b in act.domain[e].basis:
            if linalg.mat_vec(f, act.alpha[e], list(b)) != list(b):
                return [f"alpha[{e}] is not the identity on D_{e}"]
    # spectral: every domain has a unit that is a central idempotent of A
    for s in S.elements:
        u = _domain_unit(A, act.domain[s])
        if u is None:
            return [f"D_{s} has no identity element"]
        if A.mul(u, u) != u:
            return [f"identity of D_{s} is not idempotent"]
        for i in range(A.dim):
            b = A.basis_vector(i)
            if A.mul(u, b) != A.mul(b, u):
                return [f"identity of D_{s} is not central in the ambient ring"]
        act.units[s] = u
    # alpha_s(unit of D_{s*}) = unit of D_s
    for s in S.elements:
        if linalg.mat_vec(f, act.alpha[s], act.units[S.star[s]]) != act.units[s]:
            return [f"alpha[{s}] does not preserve domain units"]
    # composites restrict: where alpha_s after alpha_t is defined it
    # agrees with alpha_{st}
    for s in S.elements:
        for t in S.elements:
            Dt = act.domain[S.star[t]]
            Ds = act.domain[S.star[s]]
            proj, _ = exactalg.quotient_coords(f, Ds)
            rows = []
            for b in Dt.basis:
                rows.append(linalg.mat_vec(
                    f, proj, linalg.mat_vec(f, act.alpha[t], list(b))))
            ker = linalg.kernel_basis(f, linalg.transpose(rows), Dt.dim) \
                if Dt.dim else []
            st = S.mul[s, t]
            Dst = act.domain[S.star[st]]
            for coeffs in ker:
                v = linalg.zero_vector(f, A.dim)
                for k, c in enumerate(coeffs):
                    if c != 0:
                        v = linalg.vec_add(f, v,
                                           linalg.vec_scale(f, c, list(Dt.basis[k])))
                if not Dst.contains(v):
                    return [f"composite domain of ({s},{t}) escapes D_{S.star[st]}"]
                lhs = linalg.mat_vec(f, act.alpha[s],
                                     linalg.mat_vec(f, act.alpha[t], v))
                if lhs != linalg.mat_vec(f, act.alpha[st], v):
                    return [f"alpha[{s}] o alpha[{t}] disagrees with alpha[{st}]"]
    total = Subspace.zero(f, A.dim)
    for e in idem:
        total = total.join(act.domain[e])
    if not total.is_full():
        return ["sum of idempotent domains is not the whole ring"]
    return []


class SkewRing:
    """L, the relation ideal N, and the quotient L/N with its projection."""

    def __init__(self, act: SpectralRingAction):
        S, A = act.semigroup, act.algebra
        f = A.field
        self.action = act
        self.labels = [(s, k) for s in S.elements
                       for k in range(act.domain[s].dim)]
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        dim = len(self.labels)
        table = []
        for (s, k) in self.labels:
            a = list(act.domain[s].basis[k])
            a_back = linalg.mat_vec(f, act.alpha[S.star[s]], a)
            row = []
            for (t, m) in self.labels:
                b = list(act.domain[t].basis[m])
                prod = linalg.mat_vec(f, act.alpha[s], A.mul(a_back, b))
                st = S.mul[s, t]
                if not act.domain[st].contains(prod):
                    raise CheckFailure(
                        f"product of blocks ({s},{t}) escapes D_{st}")
                row.append(self.embed(st, prod))
            table.append(row)
        L = FDAlgebra(f, self.labels, table)
        u = exactalg.find_unit(L)
        if u is not None:
            L.unit = tuple(u)
        self.L = L
        gens = []
        for r in S.elements:
            for s in S.elements:
                if r == s or not S.natural_leq(r, s):
                    continue
                for b in act.domain[r].basis:
                    if not act.domain[s].contains(list(b)):
                        raise InputError(
                            f"{r} <= {s} but D_{r} is not inside D_{s}")
                    gens.append(linalg.vec_sub(f, self.embed(r, list(b)),
                                               self.embed(s, list(b))))
        self.N = Subspace.from_vectors(f, dim, gens)
        if not exactalg.is_ideal(L, self.N, "two"):
            raise CheckFailure("relation span is not a two-sided ideal")
        self.quotient, self.proj = exactalg.quotient_algebra(L, self.N)
        _, self.lift = exactalg.quotient_coords(f, self.N)
        if self.quotient.unit is None:
            qu = exactalg.find_unit(self.quotient)
            if qu is not None:
                self.quotient.unit = tuple(qu)

    def embed(self, s, ambient_vec):
        """a delta_s as an L coordinate vector; a must lie in D_s."""
        act = self.action
        f = act.algebra.field
        D = act.domain[s]
        if not D.contains(ambient_vec):
            raise AlgebraError(f"element does not lie in D_{s}")
        out = linalg.zero_vector(f, len(self.labels))
        for k, c in enumerate(D.coords_of(ambient_vec)):
            if c != 0:
                out[self.index[s, k]] = c
        return out


def skew_isg_ring(act: SpectralRingAction) -> SkewRing:
    return SkewRing(act)


# ---------------------------------------------------------------------------
# space actions and germ groupoids


class SpaceAction:
    """Inverse semigroup acting on a finite set by partial bijections.

    domain[s] is X_s, the range of theta_s; theta[s] maps X_{s*} onto
    X_s.  The discrete topology makes every subset clopen.
    """

    def __init__(self, S: FiniteInverseSemigroup, points, domain: dict,
                 theta: dict, validate: bool = True):
        self.semigroup = S
        self.points = tuple(points)
        self.pos = {x: i for i, x in enumerate(self.points)}
        if len(self.pos) != len(self.points):
            raise InputError("duplicate points")
        self.domain = {s: frozenset(d) for s, d in domain.items()}
        self.theta = {s: dict(t) for s, t in theta.items()}
        if validate:
            bad = validate_space_action(self)
            if bad:
                raise InputError("invalid space action: " + bad[0])

    def source_set(self, s):
        return self.domain[self.semigroup.star[s]]


def validate_space_action(act: SpaceAction) -> list[str]:
    S = act.semigroup
    X = set(act.points)
    for s in S.elements:
        if s not in act.domain or s not in act.theta:
            return [f"missing domain or theta for {s}"]
        if not act.domain[s] <= X:
            return [f"X_{s} contains unknown points"]
    for s in S.elements:
        src, dst = act.source_set(s), act.domain[s]
        th = act.theta[s]
        if set(th) != set(src):
            return [f"theta[{s}] is not defined exactly on X_{S.star[s]}"]
        if set(th.values()) != set(dst) or len(set(th.values())) != len(th):
            return [f"theta[{s}] is not a bijection onto X_{s}"]
        back = act.theta[S.star[s]]
        for x, y in th.items():
            if back.get(y) != x:
                return [f"theta[{S.star[s]}] does not invert theta[{s}]"]
    for e in S.idempotents():
        if act.domain[e] != act.source_set(e):
            return [f"idempotent {e} has mismatched domain and range"]
        for x, y in act.theta[e].items():
            if x != y:
                return [f"theta[{e}] moves {x}"]
    for s in S.elements:
        for t in S.elements:
            st = S.mul[s, t]
            for x, y in act.theta[t].items():
                if y in act.source_set(s):
                    if x not in act.source_set(st):
                        return [f"composite of ({s},{t}) undefined at {x}"]
                    if act.theta[st][x] != act.theta[s][y]:
                        return [f"theta[{s}] o theta[{t}] != theta[{st}] at {x}"]
    return []


def action_orbits(act: SpaceAction) -> list[list]:
    """Orbit partition of the points, in input order."""
    parent = {x: x for x in act.points}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in act.semigroup.elements:
        for x, y in act.theta[s].items():
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[ry] = rx
    buckets = {}
    for x in act.points:
        buckets.setdefault(find(x), []).append(x)
    return [buckets[r] for r in sorted(buckets, key=act.pos.get)]


def is_minimal_action(act: SpaceAction) -> bool:
    """Single orbit; finite-discrete stand-in for every orbit dense."""
    return len(act.points) > 0 and len(action_orbits(act)) == 1


class GermData:
    """Germ groupoid of a space action plus the pair -> arrow label map."""

    def __init__(self, groupoid: FiniteGroupoid, pair_label: dict,
                 class_members: dict):
        self.groupoid = groupoid
        self.pair_label = pair_label
        self.class_members = class_members

    def slice_labels(self, s):
        """Arrow labels of the germs [s,x] over the domain of theta_s."""
        seen = []
        for (t, x), lab in self.pair_label.items():
            if t == s and lab not in seen:
                seen.append(lab)
        return seen


def germ_groupoid(act: SpaceAction) -> GermData:
    """Arrows are germs [s,x]; verified equivalence and well-definedness.

    Identity germs (classes containing an idempotent pair) are labeled by
    their point; other classes by "s@x" with s the least representative.
    """
    S = act.semigroup
    X = act.points
    covered = set()
    for e in S.idempotents():
        covered |= act.domain[e]
    if covered != set(X):
        raise InputError("idempotent domains do not cover the space")

    pairs = [(s, x) for s in S.elements for x in X if x in act.source_set(s)]
    pair_index = {p: i for i, p in enumerate(pairs)}
    leq = {(u, s): S.natural_leq(u, s)
           for u in S.elements for s in S.elements}
    below_at = {}
    for s in S.elements:
        for x in act.source_set(s):
            below_at[s, x] = frozenset(
                u for u in S.elements
                if leq[u, s] and x in act.source_set(u))

    def related(p, q):
        return p[1] == q[1] and below_at[p] & below_at[q]

    # union-find over the verified relation
    parent = list(range(len(pairs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    rel = {}
    for i, p in enumerate(pairs):
        for j in range(i + 1, len(pairs)):
            q = pairs[j]
            if p[1] != q[1]:
                continue
            r = bool(related(p, q))
            rel[i, j] = r
            if r:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    # transitivity of the germ relation is a theorem about honest
    # actions, not an assumption about the input
    for (i, j), r in rel.items():
        if find(i) == find(j) and not r:
            raise InputError("germ relation is not transitive")

    classes = {}
    for i, p in enumerate(pairs):
        classes.setdefault(find(i), []).append(p)
    class_list = [tuple(classes[r]) for r in sorted(classes)]

    idem = set(S.idempotents())
    label_of = {}
    members_of = {}
    for cls in class_list:
        x = cls[0][1]
        ranges = {act.theta[s][x] for (s, _x) in cls}
        if len(ranges) > 1:
            raise InputError("germ class has an ill-defined range")
        if any(s in idem for (s, _x) in cls):
            if ranges != {x}:
                raise InputError("identity germ moves its point")
            lab = x
        else:
            s0 = min((s for (s, _x) in cls), key=S.index.get)
            lab = f"{s0}@{x}"
            if lab in act.pos:
                raise InputError("germ label collides with a point id")
        if lab in members_of:
            raise InputError("germ labels collide")
        label_of[cls] = lab
        members_of[lab] = cls
    pair_label = {}
    for cls in class_list:
        for p in cls:
            pair_label[p] = label_of[cls]

    units = list(X)
    arrows, src, dst = [], {}, {}
    for x in units:
        arrows.append(x)
        src[x], dst[x] = x, x
    for cls in class_list:
        lab = label_of[cls]
        if lab in act.pos:
            continue
        s0, x = cls[0]
        arrows.append(lab)
        src[lab] = x
        dst[lab] = act.theta[s0][x]

    def compose_classes(c1, c2):
        out = set()
        for (t, x) in c2:
            y = act.theta[t][x]
            for (s, _y) in c1:
                if _y != y:
                    raise CheckFailure("composition pairs misaligned")
                st = S.mul[s, t]
                if x not in act.source_set(st):
                    raise InputError(
                        f"product germ [{st},{x}] is undefined")
                out.add(pair_label[st, x])
        if len(out) != 1:
            raise InputError("germ product is not well-defined")
        return out.pop()

    compose, inverse = {}, {}
    for a in arrows:
        ca = members_of[a]
        inv_labels = {pair_label[S.star[s], act.theta[s][x]] for (s, x) in ca}
        if len(inv_labels) != 1:
            raise InputError("germ inverse is not well-defined")
        inverse[a] = inv_labels.pop()
        for b in arrows:
            if src[a] != dst[b]:
                continue
            compose[a, b] = compose_classes(ca, members_of[b])

    G = FiniteGroupoid(units, arrows, src, dst, compose, inverse)
    require_valid_groupoid(G)
    return GermData(G, pair_label, members_of)


def is_topologically_free(act: SpaceAction) -> bool:
    """Fixed points of each theta_s equal the locus dominated by
    idempotents below s (interior = set in the discrete case)."""
    S = act.semigroup
    idem = S.idempotents()
    for s in S.elements:
        fixed = {x for x, y in act.theta[s].items() if x == y}
        dominated = set()
        for e in idem:
            if S.natural_leq(e, s):
                dominated |= act.domain[e]
        if fixed != dominated:
            return False
    return True


def check_cinza(act: SpaceAction) -> Report:
    """Topological freeness of the action vs effectiveness of its germs."""
    germ = germ_groupoid(act)
    lhs = is_topologically_free(act)
    rhs = is_effective(germ.groupoid)
    return Report(check="cinza", hypotheses={},
                  lhs={"topologically free": lhs},
                  rhs={"germ groupoid effective": rhs},
                  passed=lhs == rhs,
                  notes=[f"germ groupoid has {len(germ.groupoid.arrows)} arrows"])


def check_orbit_correspondence(act: SpaceAction) -> Report:
    """Action orbits coincide with germ-groupoid orbits."""
    germ = germ_groupoid(act)
    a = {frozenset(o) for o in action_orbits(act)}
    g = {frozenset(o) for o in orbits(germ.groupoid)}
    return Report(check="orbit-correspondence", hypotheses={},
                  lhs={"action orbits": sorted(sorted(o) for o in a)},
                  rhs={"germ orbits": sorted(sorted(o) for o in g)},
                  passed=a == g)


def check_simpleaction(act: SpaceAction, O: GSheafOfAlgebras | None = None,
                       p: int = 2) -> Report:
    """Minimality of a topologically free action vs simplicity of the
    convolution algebra of its germ groupoid (sheaf of fields)."""
    from .fields import GF
    germ = germ_groupoid(act)
    if O is None:
        O = constant_sheaf(germ.groupoid, _scalar_algebra(GF(p)))
    hyp = {
        "action topologically free": is_topologically_free(act),
        "sheaf of fields": is_sheaf_of_fields(O),
        "germ groupoid Hausdorff": "automatic",
    }
    if not all(v is True or v == "automatic" for v in hyp.values()):
        return skip_report("simpleaction", hyp)
    conv = build_conv_algebra(germ.groupoid, O)
    lhs = is_minimal_action(act)
    rhs = exactalg.is_simple(conv.algebra)
    return Report(check="simpleaction", hypotheses=hyp,
                  lhs={"action minimal": lhs},
                  rhs={"convolution algebra simple": rhs},
                  passed=lhs == rhs)


# ---------------------------------------------------------------------------
# the convolution algebra as a skew ring of its bisection action


def _scalar_algebra(field: Field) -> FDAlgebra:
    return FDAlgebra(field, ["1"], [[[field.one]]], [field.one])


def _diagonal_algebra(conv: ConvAlgebra):
    """(A, embed) with A the direct sum of the stalks and embed the
    matrix placing A inside the convolution algebra on identity arrows."""
    G, O, f = conv.groupoid, conv.sheaf, conv.field
    labels = []
    for u in G.units:
        labels.extend((u, i) for i in range(O.stalk[u].dim))
    idx = {lab: i for i, lab in enumerate(labels)}
    dim = len(labels)
    table = []
    for (u, i) in labels:
        row = []
        for (v, j) in labels:
            out = linalg.zero_vector(f, dim)
            if u == v:
                stalk = O.stalk[u]
                prod = stalk.mul(stalk.basis_vector(i), stalk.basis_vector(j))
                for k, c in enumerate(prod):
                    if c != 0:
                        out[idx[u, k]] = c
            row.append(out)
        table.append(row)
    unit = linalg.zero_vector(f, dim)
    for u in G.units:
        for k, c in enumerate(O.stalk[u].unit):
            if c != 0:
                unit[idx[u, k]] = c
    A = FDAlgebra(f, labels, table, unit)
    embed = linalg.zero_matrix(f, conv.dim, dim)
    for (u, i) in labels:
        embed[conv.index[G.unit_arrow(u), i]][idx[u, i]] = f.one
    return A, embed


def bisection_ring_action(conv: ConvAlgebra,
                          arrow_cap: int = ARROW_CAP):
    """Spectral action of the bisection semigroup on the diagonal:
    D_U = sections supported on the range of U, moved along U's arrows."""
    G, O, f = conv.groupoid, conv.sheaf, conv.field
    Ga, member = bisection_semigroup(G, arrow_cap)
    A, embed = _diagonal_algebra(conv)
    idx = A.label_index
    domain, alpha = {}, {}
    for lab in Ga.elements:
        U = member[lab]
        rng = {G.dst[a] for a in U}
        vecs = [A.basis_vector(idx[u, i]) for (u, i) in A.labels if u in rng]
        domain[lab] = Subspace.from_vectors(f, A.dim, vecs)
        M = linalg.zero_matrix(f, A.dim, A.dim)
        by_src = {G.src[a]: a for a in U}
        for (u, i) in A.labels:
            if u not in by_src:
                continue
            g = by_src[u]
            moved = O.apply(g, O.stalk[u].basis_vector(i))
            col = idx[u, i]
            for k, c in enumerate(moved):
                if c != 0:
                    M[idx[G.dst[g], k]][col] = c
        alpha[lab] = M
    ring_act = SpectralRingAction(Ga, A, domain, alpha, validate=False)
    bad = validate_ring_action(ring_act)
    if bad:
        raise CheckFailure("bisection action fails the action axioms: " + bad[0])
    return ring_act, member, embed


class SiriData:
    def __init__(self, conv, action, member, embed, skew, map_L, map_quotient):
        self.conv = conv
        self.action = action
        self.member = member
        self.embed = embed
        self.skew = skew
        self.map_L = map_L
        self.map_quotient = map_quotient


def siri_data(G: FiniteGroupoid, O: GSheafOfAlgebras,
              arrow_cap: int = ARROW_CAP) -> SiriData:
    """Skew ring of the bisection action, with its map into Γ_c.

    The map sends a delta_U to the convolution a * chi_U; its matrix on
    L and the induced matrix on L/N are both returned.
    """
    conv = build_conv_algebra(G, O)
    act, member, embed = bisection_ring_action(conv, arrow_cap)
    skew = skew_isg_ring(act)
    f = conv.field
    cols = []
    for (lab, k) in skew.labels:
        a_diag = list(act.domain[lab].basis[k])
        a_conv = linalg.mat_vec(f, embed, a_diag)
        chi = conv.chi(sorted(member[lab], key=G.arrow_index.get))
        cols.append(conv.algebra.mul(a_conv, chi))
    map_L = linalg.transpose(cols) if cols else [[] for _ in range(conv.dim)]
    map_quotient = linalg.mat_mul(f, map_L, skew.lift)
    return SiriData(conv, act, member, embed, skew, map_L, map_quotient)


def verify_siri(G: FiniteGroupoid, O: GSheafOfAlgebras,
                arrow_cap: int = ARROW_CAP) -> Report:
    """The convolution algebra is the skew ring of its bisection action."""
    hyp = {"arrows within bisection cap": len(G.arrows) <= arrow_cap}
    if not hyp["arrows within bisection cap"]:
        return skip_report("siri", hyp,
                           caps_hit=[f"{len(G.arrows)} arrows > {arrow_cap}"])
    try:
        data = siri_data(G, O, arrow_cap)
    except CheckFailure as exc:
        return Report(check="siri", hypotheses=hyp, passed=False,
                      witnesses={"error": str(exc)})
    f = data.conv.field
    kills = all(linalg.vec_is_zero(linalg.mat_vec(f, data.map_L, list(b)))
                for b in data.skew.N.basis)
    iso = exactalg.check_ring_iso(data.skew.quotient, data.conv.algebra,
                                  data.map_quotient)
    return Report(
        check="siri", hypotheses=hyp,
        lhs={"dim L": data.skew.L.dim, "dim N": data.skew.N.dim,
             "dim quotient": data.skew.quotient.dim},
        rhs={"dim conv": data.conv.dim},
        passed=kills and iso and data.skew.quotient.dim == data.conv.dim,
        witnesses={} if kills else {"relation not killed": True})


# ---------------------------------------------------------------------------
# Pierce spectrum realization


def central_idempotents(A: FDAlgebra,
                        order_cap: int = CENTRAL_ORDER_CAP) -> list:
    """All central idempotents, by exhausting the center (capped)."""
    f = A.field
    Z = exactalg.centralizer(A, Subspace.full(f, A.dim))
    if not f.is_finite:
        raise CapExceeded("central idempotent enumeration needs a finite field")
    if f.order ** Z.dim > order_cap:
        raise CapExceeded(
            f"center has {f.order ** Z.dim} elements, cap {order_cap}")
    found = []
    for coeffs in itertools.product(f.elements(), repeat=Z.dim):
        v = linalg.zero_vector(f, A.dim)
        for k, c in enumerate(coeffs):
            if c != 0:
                v = linalg.vec_add(f, v, linalg.vec_scale(f, c, list(Z.basis[k])))
        if A.mul(v, v) == v:
            found.append(v)
    found.sort(key=lambda v: tuple(f.encode(c) for c in v))
    return found


def pierce_atoms(A: FDAlgebra, order_cap: int = CENTRAL_ORDER_CAP) -> list:
    """Minimal nonzero central idempotents; they are orthogonal and sum
    to the identity (hard assertion)."""
    f = A.field
    cents = [e for e in central_idempotents(A, order_cap)
             if not linalg.vec_is_zero(e)]
    atoms = []
    for e in cents:
        if all(g == e or linalg.vec_is_zero(A.mul(g, e))
               or A.mul(g, e) != g for g in cents):
            atoms.append(e)
    total = linalg.zero_vector(f, A.dim)
    for i, e in enumerate(atoms):
        for g in atoms[i + 1:]:
            if not linalg.vec_is_zero(A.mul(e, g)):
                raise CheckFailure("atoms are not orthogonal")
        total = linalg.vec_add(f, total, e)
    if A.unit is not None and total != list(A.unit):
        raise CheckFailure("atoms do not sum to the identity")
    return atoms


class PierceData:
    def __init__(self, action, atoms, atom_ids, space, germ, sheaf, conv,
                 skew, map_L, map_quotient):
        self.action = action
        self.atoms = atoms
        self.atom_ids = atom_ids
        self.space = space
        self.germ = germ
        self.sheaf = sheaf
        self.conv = conv
        self.skew = skew
        self.map_L = map_L
        self.map_quotient = map_quotient


def pierce_data(act: SpectralRingAction,
                order_cap: int = CENTRAL_ORDER_CAP,
                arrow_cap: int = ARROW_CAP) -> PierceData:
    """Realize the skew ring as a convolution algebra over the germ
    groupoid of the induced action on the Pierce atoms.

    Stalk at an atom e is the corner eA; the transition along a germ
    [s,e0] applies alpha_s, checked independent of the representative.
    """
    S, A = act.semigroup, act.algebra
    f = A.field
    if A.unit is None:
        raise InputError("Pierce realization needs a unital ring")
    atoms = pierce_atoms(A, order_cap)
    atom_ids = [f"e{i}" for i in range(len(atoms))]
    by_vec = {tuple(e): atom_ids[i] for i, e in enumerate(atoms)}
    vec_of = {atom_ids[i]: atoms[i] for i in range(len(atoms))}

    domain, theta = {}, {}
    for s in S.elements:
        us = act.units[s]
        domain[s] = frozenset(aid for aid in atom_ids
                              if A.mul(vec_of[aid], us) == vec_of[aid])
        th = {}
        for aid in atom_ids:
            if A.mul(vec_of[aid], act.units[S.star[s]]) != vec_of[aid]:
                continue
            img = linalg.mat_vec(f, act.alpha[s], vec_of[aid])
            if tuple(img) not in by_vec:
                raise CheckFailure("atom image is not an atom")
            th[aid] = by_vec[tuple(img)]
        theta[s] = th
    space = SpaceAction(S, atom_ids, domain, theta, validate=False)
    bad = validate_space_action(space)
    if bad:
        raise CheckFailure("induced atom action invalid: " + bad[0])
    germ = germ_groupoid(space)

    corner, stalks = {}, {}
    for aid in atom_ids:
        e = vec_of[aid]
        span = Subspace.from_vectors(
            f, A.dim, [A.mul(e, A.basis_vector(i)) for i in range(A.dim)])
        corner[aid] = span
        stalks[aid] = exactalg.subalgebra_on(
            A, span, [f"{aid}.{k}" for k in range(span.dim)])
        if stalks[aid].unit is None:
            raise CheckFailure("corner ring has no unit")
    alpha = {}
    for lab in germ.groupoid.arrows:
        members = list(germ.class_members[lab])
        x0 = members[0][1]
        y0 = space.theta[members[0][0]][x0]
        mats = []
        for (s, x) in members:
            rows = []
            for b in corner[x0].basis:
                w = linalg.mat_vec(f, act.alpha[s], list(b))
                if not corner[y0].contains(w):
                    raise CheckFailure("transition escapes the target corner")
                rows.append(corner[y0].coords_of(w))
            mats.append(linalg.transpose(rows) if rows else [])
        for M in mats[1:]:
            if not linalg.mat_eq(M, mats[0]):
                raise CheckFailure(
                    "transition depends on the germ representative")
        alpha[lab] = mats[0]
    sheaf = GSheafOfAlgebras(germ.groupoid, f, stalks, alpha)
    violations, _ = validate_sheaf(sheaf)
    if violations:
        raise CheckFailure("Pierce sheaf invalid: " + violations[0])

    conv = build_conv_algebra(germ.groupoid, sheaf)
    skew = skew_isg_ring(act)
    cols = []
    for (s, k) in skew.labels:
        a = list(act.domain[s].basis[k])
        a_hat = linalg.zero_vector(f, conv.dim)
        for aid in atom_ids:
            val = corner[aid].coords_of(A.mul(vec_of[aid], a))
            pm = conv.point_mass(germ.groupoid.unit_arrow(aid), val)
            a_hat = linalg.vec_add(f, a_hat, pm)
        chi = conv.chi(germ.slice_labels(s))
        cols.append(conv.algebra.mul(a_hat, chi))
    map_L = linalg.transpose(cols) if cols else [[] for _ in range(conv.dim)]
    map_quotient = linalg.mat_mul(f, map_L, skew.lift)
    return PierceData(act, atoms, atom_ids, space, germ, sheaf, conv, skew,
                      map_L, map_quotient)


def pierce_verification(act: SpectralRingAction,
                        order_cap: int = CENTRAL_ORDER_CAP,
                        arrow_cap: int = ARROW_CAP) -> Report:
    """Skew ring of a spectral action vs convolution algebra over the
    germ groupoid of the Pierce-atom action."""
    try:
        data = pierce_data(act, order_cap, arrow_cap)
    except CapExceeded as exc:
        return skip_report("pierce", {}, caps_hit=[str(exc)])
    except CheckFailure as exc:
        return Report(check="pierce", hypotheses={}, passed=False,
                      witnesses={"error": str(exc)})
    f = data.conv.field
    kills = all(linalg.vec_is_zero(linalg.mat_vec(f, data.map_L, list(b)))
                for b in data.skew.N.basis)
    iso = exactalg.check_ring_iso(data.skew.quotient, data.conv.algebra,
                                  data.map_quotient)
    return Report(
        check="pierce", hypotheses={},
        lhs={"dim L": data.skew.L.dim, "dim N": data.skew.N.dim,
             "dim quotient": data.skew.quotient.dim},
        rhs={"atoms": len(data.atoms),
             "germ arrows": len(data.germ.groupoid.arrows),
             "dim conv": data.conv.dim},
        passed=kills and iso and data.skew.quotient.dim == data.conv.dim)


# ---------------------------------------------------------------------------
# partial group actions and the transformation groupoid


class PartialGroupAction:
    """Partial action of a finite group on a finite set.

    domain[g] is X_g, the range of theta_g: X_{g^{-1}} -> X_g; X_1 = X
    and theta_1 is the identity.
    """

    def __init__(self, elements, mul: dict, unit, points, domain: dict,
                 theta: dict, validate: bool = True):
        self.elements = tuple(elements)
        self.mul = dict(mul)
        self.unit = unit
        self.points = tuple(points)
        self.pos = {x: i for i, x in enumerate(self.points)}
        self.domain = {g: frozenset(d) for g, d in domain.items()}
        self.theta = {g: dict(t) for g, t in theta.items()}
        self.inv = {}
        if validate:
            bad = validate_partial_group_action(self)
            if bad:
                raise InputError("invalid partial action: " + bad[0])

    def inverse(self, g):
        return self.inv[g]


def validate_partial_group_action(act: PartialGroupAction) -> list[str]:
    elems = act.elements
    eset = set(elems)
    if len(eset) != len(elems):
        return ["duplicate group elements"]
    for a in elems:
        for b in elems:
            if (a, b) not in act.mul or act.mul[a, b] not in eset:
                return [f"group product undefined at ({a},{b})"]
    for a in elems:
        for b in elems:
            ab = act.mul[a, b]
            for c in elems:
                if act.mul[ab, c] != act.mul[a, act.mul[b, c]]:
                    return [f"group associativity fails at ({a},{b},{c})"]
    if act.unit not in eset:
        return ["group unit missing"]
    for a in elems:
        if act.mul[act.unit, a] != a or act.mul[a, act.unit] != a:
            return [f"unit law fails at {a}"]
    for a in elems:
        invs = [b for b in elems
                if act.mul[a, b] == act.unit and act.mul[b, a] == act.unit]
        if len(invs) != 1:
            return [f"no unique inverse for {a}"]
        act.inv[a] = invs[0]
    X = set(act.points)
    for g in elems:
        if g not in act.domain or g not in act.theta:
            return [f"missing domain or theta for {g}"]
        if not act.domain[g] <= X:
            return [f"X_{g} contains unknown points"]
    if act.domain[act.unit] != X:
        return ["X_1 is not the whole space"]
    for x in act.points:
        if act.theta[act.unit].get(x) != x:
            return ["theta_1 is not the identity"]
    for g in elems:
        th = act.theta[g]
        gi = act.inv[g]
        if set(th) != set(act.domain[gi]):
            return [f"theta[{g}] is not defined exactly on X_{gi}"]
        if set(th.values()) != set(act.domain[g]) or len(set(th.values())) != len(th):
            return [f"theta[{g}] is not a bijection onto X_{g}"]
        for x, y in th.items():
            if act.theta[gi].get(y) != x:
                return [f"theta[{gi}] does not invert theta[{g}]"]
    for g in elems:
        for h in elems:
            gh = act.mul[g, h]
            for x, y in act.theta[h].items():
                if y in act.domain[act.inv[g]]:
                    if x not in act.domain[act.inv[gh]]:
                        return [f"composite of ({g},{h}) undefined at {x}"]
                    if act.theta[gh][x] != act.theta[g][y]:
                        return [f"theta[{g}] o theta[{h}] != theta[{gh}] at {x}"]
    return []


def transformation_groupoid(act: PartialGroupAction) -> FiniteGroupoid:
    """Arrows (t,x) with x in X_t; range x, source theta_{t^{-1}}(x);
    (s,y)(t,x) = (st,y) when theta_{s^{-1}}(y) = x."""
    unit = act.unit
    units = list(act.points)
    arrows, src, dst = [], {}, {}
    label = {}
    for x in units:
        label[unit, x] = x
        arrows.append(x)
        src[x], dst[x] = x, x
    for t in act.elements:
        if t == unit:
            continue
        for x in sorted(act.domain[t], key=act.pos.get):
            lab = f"{t}@{x}"
            if lab in act.pos:
                raise InputError("arrow label collides with a point id")
            label[t, x] = lab
            arrows.append(lab)
            dst[lab] = x
            src[lab] = act.theta[act.inv[t]][x]
    pair_of = {label[p]: p for p in label}
    compose, inverse = {}, {}
    for a in arrows:
        (t, x) = pair_of[a]
        ti = act.inv[t]
        inverse[a] = label[ti, act.theta[ti][x]]
        for b in arrows:
            (w, _) = pair_of[b]
            if src[a] != dst[b]:
                continue
            tw = act.mul[t, w]
            if x not in act.domain[tw]:
                raise CheckFailure("composite arrow escapes its domain")
            compose[a, b] = label[tw, x]
    G = FiniteGroupoid(units, arrows, src, dst, compose, inverse)
    require_valid_groupoid(G)
    return G


def group_as_inverse_semigroup(act: PartialGroupAction) -> FiniteInverseSemigroup:
    star = {g: act.inv[g] for g in act.elements}
    return FiniteInverseSemigroup(act.elements, act.mul, star)


def dual_ring_action(act: PartialGroupAction, field: Field):
    """The induced partial action on functions X -> field: D_g is the
    functions vanishing off X_g and alpha_g(f) = f o theta_{g^{-1}}."""
    S = group_as_inverse_semigroup(act)
    f = field
    X = act.points
    pos = act.pos
    labels = list(X)
    table = []
    for x in X:
        row = []
        for y in X:
            v = linalg.zero_vector(f, len(X))
            if x == y:
                v[pos[x]] = f.one
            row.append(v)
        table.append(row)
    A = FDAlgebra(f, labels, table, [f.one] * len(X))
    domain, alpha = {}, {}
    for g in act.elements:
        vecs = [A.basis_vector(pos[x]) for x in X if x in act.domain[g]]
        domain[g] = Subspace.from_vectors(f, len(X), vecs)
        M = linalg.zero_matrix(f, len(X), len(X))
        for x, y in act.theta[g].items():
            M[pos[y]][pos[x]] = f.one
        alpha[g] = M
    ring_act = SpectralRingAction(S, A, domain, alpha, validate=False)
    bad = validate_ring_action(ring_act)
    if bad:
        raise CheckFailure("dual action fails the action axioms: " + bad[0])
    return ring_act


def verify_partial_crossed(act: PartialGroupAction, field: Field,
                           arrow_cap: int = ARROW_CAP) -> Report:
    """Partial skew group ring vs convolution algebra of the
    transformation groupoid, over an exact field.

    Also re-verifies the transformation groupoid's own convolution
    algebra as the skew ring of its bisection action when the arrow
    count permits.
    """
    G = transformation_groupoid(act)
    ring_act = dual_ring_action(act, field)
    skew = skew_isg_ring(ring_act)
    if not skew.N.is_zero():
        raise CheckFailure("group-indexed relation ideal is nonzero")
    O = constant_sheaf(G, _scalar_algebra(field))
    conv = build_conv_algebra(G, O)
    f = field
    A = ring_act.algebra
    cols = []
    for (g, k) in skew.labels:
        a = list(ring_act.domain[g].basis[k])
        a_hat = linalg.zero_vector(f, conv.dim)
        for x in act.points:
            if a[act.pos[x]] != 0:
                pm = conv.point_mass(G.unit_arrow(x), [a[act.pos[x]]])
                a_hat = linalg.vec_add(f, a_hat, pm)
        slice_g = [x if g == act.unit else f"{g}@{x}"
                   for x in sorted(act.domain[g], key=act.pos.get)]
        cols.append(conv.algebra.mul(a_hat, conv.chi(slice_g)))
    map_L = linalg.transpose(cols) if cols else [[] for _ in range(conv.dim)]
    map_quotient = linalg.mat_mul(f, map_L, skew.lift)
    iso = exactalg.check_ring_iso(skew.quotient, conv.algebra, map_quotient)

    sub = None
    if len(G.arrows) <= arrow_cap:
        sub = verify_siri(G, O, arrow_cap)
    rep = Report(
        check="partial-crossed", hypotheses={},
        lhs={"dim skew ring": skew.quotient.dim},
        rhs={"groupoid arrows": len(G.arrows), "dim conv": conv.dim},
        passed=iso and skew.quotient.dim == conv.dim and
               (sub is None or sub.passed is not False))
    if sub is not None:
        rep.notes.append(
            f"bisection-action realization of the transformation groupoid: "
            f"{sub.status}")
    else:
        rep.caps_hit.append(
            f"{len(G.arrows)} arrows over bisection cap {arrow_cap}")
    return rep
