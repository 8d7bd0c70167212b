"""JSON input documents for every structure the command line accepts.

Every document carries a top-level "kind".  Coefficients are integers
0..p-1 over GF(p) and "num/den" strings over the rationals.  Identity
arrows must be listed (with id equal to their unit's id); composition
pairs involving identities and identity alphas may be omitted and are
filled in automatically.
"""

from __future__ import annotations

import json
import os

from . import linalg
from .errors import CapExceeded, InputError
from .exactalg import AlgebraModule, FDAlgebra, Subspace
from .fields import DEFAULT_PRIME_CAP, Field, GF, QQ
from .groupoid import FiniteGroupoid, require_valid_groupoid
from .isgring import (FiniteInverseSemigroup, PartialGroupAction,
                      SpaceAction, SpectralRingAction,
                      symmetric_inverse_monoid)
from .sheaf import GSheafOfAlgebras, require_valid_sheaf

KINDS = ("groupoid", "sheaf", "inverse_semigroup", "space_action",
         "ring_action", "partial_group_action", "module")


def load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError(f"{path} must hold a JSON object")
    return doc


def dump_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _require(doc: dict, key: str, kind: str):
    if key not in doc:
        raise InputError(f"{kind} document is missing '{key}'")
    return doc[key]


def _resolve(value, base_dir: str, loader, kind: str):
    """Accept an inline object or a path string, relative to the document."""
    if isinstance(value, str):
        path = value if os.path.isabs(value) else os.path.join(base_dir, value)
        return loader(load_json(path), os.path.dirname(path))
    if isinstance(value, dict):
        return loader(value, base_dir)
    raise InputError(f"expected an inline {kind} object or a path string")


# ---------------------------------------------------------------------------
# fields


def field_from_doc(value) -> Field:
    if value == "Q":
        return QQ
    if isinstance(value, dict) and set(value) == {"p"}:
        p = value["p"]
        if not isinstance(p, int):
            raise InputError("field characteristic must be an integer")
        if p > DEFAULT_PRIME_CAP:
            raise CapExceeded(
                f"characteristic {p} exceeds the prime cap {DEFAULT_PRIME_CAP}")
        return GF(p)
    raise InputError("field must be {\"p\": <prime>} or \"Q\"")


def field_to_doc(f: Field):
    return "Q" if not f.is_finite else {"p": f.p}


def _coerce_vector(f: Field, v, n: int, what: str):
    if not isinstance(v, list) or len(v) != n:
        raise InputError(f"{what} must be a list of {n} coefficients")
    return [f.coerce(c) for c in v]


def _coerce_matrix(f: Field, M, rows: int, cols: int, what: str):
    if not isinstance(M, list) or len(M) != rows:
        raise InputError(f"{what} must have {rows} rows")
    return [_coerce_vector(f, r, cols, what) for r in M]


def _encode_vector(f: Field, v):
    return [f.encode(c) for c in v]


def _encode_matrix(f: Field, M):
    return [_encode_vector(f, r) for r in M]


# ---------------------------------------------------------------------------
# groupoids


def groupoid_from_doc(doc: dict, base_dir: str = ".") -> FiniteGroupoid:
    if doc.get("kind") != "groupoid":
        raise InputError("expected a groupoid document")
    units = _require(doc, "units", "groupoid")
    arrows_doc = _require(doc, "arrows", "groupoid")
    arrows, src, dst = [], {}, {}
    for a in arrows_doc:
        if not isinstance(a, dict) or {"id", "src", "dst"} - set(a):
            raise InputError("each arrow needs id, src and dst")
        arrows.append(a["id"])
        src[a["id"]] = a["src"]
        dst[a["id"]] = a["dst"]
    for u in units:
        if u not in src:
            raise InputError(f"unit {u} has no identity arrow listed")
    unit_set = set(units)
    compose = {}
    for triple in doc.get("compose", []):
        if not isinstance(triple, list) or len(triple) != 3:
            raise InputError("compose entries are [later, earlier, product]")
        b, r, br = triple
        if (b, r) in compose and compose[b, r] != br:
            raise InputError(f"conflicting compositions for ({b},{r})")
        compose[b, r] = br
    for a in arrows:
        if dst[a] in unit_set:
            compose.setdefault((dst[a], a), a)
        if src[a] in unit_set:
            compose.setdefault((a, src[a]), a)
    inverse = {}
    for pair in doc.get("inverse", []):
        if not isinstance(pair, list) or len(pair) != 2:
            raise InputError("inverse entries are [arrow, inverse]")
        inverse[pair[0]] = pair[1]
    for u in units:
        inverse.setdefault(u, u)
    G = FiniteGroupoid(units, arrows, src, dst, compose, inverse)
    require_valid_groupoid(G)
    return G


def groupoid_to_doc(G: FiniteGroupoid) -> dict:
    unit_set = set(G.units)
    compose = [[b, r, br] for (b, r), br in sorted(
        G.compose.items(), key=lambda kv: (G.arrow_index[kv[0][0]],
                                           G.arrow_index[kv[0][1]]))
        if b not in unit_set and r not in unit_set]
    inverse = [[a, ia] for a, ia in sorted(
        G.inverse.items(), key=lambda kv: G.arrow_index[kv[0]])
        if a not in unit_set]
    return {
        "kind": "groupoid",
        "units": list(G.units),
        "arrows": [{"id": a, "src": G.src[a], "dst": G.dst[a]}
                   for a in G.arrows],
        "compose": compose,
        "inverse": inverse,
    }


# ---------------------------------------------------------------------------
# sheaves


def sheaf_from_doc(doc: dict, base_dir: str = ".") -> GSheafOfAlgebras:
    if doc.get("kind") != "sheaf":
        raise InputError("expected a sheaf document")
    G = _resolve(_require(doc, "groupoid", "sheaf"), base_dir,
                 groupoid_from_doc, "groupoid")
    f = field_from_doc(_require(doc, "field", "sheaf"))
    stalks_doc = _require(doc, "stalks", "sheaf")
    stalks = {}
    for u in G.units:
        if u not in stalks_doc:
            raise InputError(f"missing stalk at unit {u}")
        sd = stalks_doc[u]
        dim = sd.get("dim")
        if not isinstance(dim, int) or dim < 1:
            raise InputError(f"stalk at {u} needs a positive dim")
        one = _coerce_vector(f, _require(sd, "one", "stalk"), dim,
                             f"stalk unit at {u}")
        table = [[linalg.zero_vector(f, dim) for _ in range(dim)]
                 for _ in range(dim)]
        for entry in sd.get("mul", []):
            if not isinstance(entry, list) or len(entry) != 3:
                raise InputError("stalk mul entries are [i, j, coeffs]")
            i, j, coeffs = entry
            if not (0 <= i < dim and 0 <= j < dim):
                raise InputError(f"stalk mul index out of range at {u}")
            table[i][j] = _coerce_vector(f, coeffs, dim,
                                         f"stalk product at {u}")
        labels = [f"b{k}" for k in range(dim)]
        stalks[u] = FDAlgebra(f, labels, table, one)
    alpha_doc = doc.get("alpha", {})
    alpha = {}
    for a in G.arrows:
        d = stalks[G.dst[a]].dim
        s = stalks[G.src[a]].dim
        if a in alpha_doc:
            alpha[a] = _coerce_matrix(f, alpha_doc[a], d, s,
                                      f"alpha at arrow {a}")
        elif G.is_unit_arrow(a):
            alpha[a] = linalg.identity_matrix(f, d)
        else:
            raise InputError(f"missing alpha for arrow {a}")
    O = GSheafOfAlgebras(G, f, stalks, alpha)
    require_valid_sheaf(O)
    return O


def sheaf_to_doc(O: GSheafOfAlgebras) -> dict:
    G = O.groupoid
    f = O.field
    stalks = {}
    for u in G.units:
        A = O.stalk[u]
        mul = []
        for i in range(A.dim):
            for j in range(A.dim):
                if not linalg.vec_is_zero(list(A.table[i][j])):
                    mul.append([i, j, _encode_vector(f, A.table[i][j])])
        stalks[u] = {"dim": A.dim, "one": _encode_vector(f, A.unit),
                     "mul": mul}
    alpha = {}
    for a in G.arrows:
        if G.is_unit_arrow(a):
            continue
        alpha[a] = _encode_matrix(f, O.alpha[a])
    return {
        "kind": "sheaf",
        "groupoid": groupoid_to_doc(G),
        "field": field_to_doc(f),
        "stalks": stalks,
        "alpha": alpha,
    }


# ---------------------------------------------------------------------------
# modules


def module_label(label) -> str:
    """String form of an algebra basis label: tuple parts joined by '|'."""
    if isinstance(label, tuple):
        return "|".join(str(part) for part in label)
    return str(label)


def module_from_doc(doc: dict, algebra: FDAlgebra,
                    base_dir: str = ".") -> AlgebraModule:
    if doc.get("kind") != "module":
        raise InputError("expected a module document")
    dim = _require(doc, "dim", "module")
    if not isinstance(dim, int) or dim < 0:
        raise InputError("module dim must be a non-negative integer")
    action = _require(doc, "action", "module")
    f = algebra.field
    by_string = {module_label(lab): i for i, lab in enumerate(algebra.labels)}
    mats = [None] * algebra.dim
    for key, M in action.items():
        if key not in by_string:
            raise InputError(f"action label {key} is not an algebra basis label")
        mats[by_string[key]] = _coerce_matrix(f, M, dim, dim,
                                              f"action of {key}")
    for i, M in enumerate(mats):
        if M is None:
            raise InputError(
                f"missing action matrix for {module_label(algebra.labels[i])}")
    mod = AlgebraModule(algebra, dim, mats)
    bad = mod.validate()
    if bad:
        raise InputError("not a module: " + bad[0])
    return mod


def module_to_doc(M: AlgebraModule, algebra_path: str | None = None) -> dict:
    f = M.algebra.field
    doc = {
        "kind": "module",
        "dim": M.dim,
        "action": {module_label(lab): _encode_matrix(f, M.mats[i])
                   for i, lab in enumerate(M.algebra.labels)},
    }
    if algebra_path is not None:
        doc["algebra"] = algebra_path
    return doc


def algebra_to_doc(A: FDAlgebra) -> dict:
    f = A.field
    return {
        "kind": "algebra",
        "field": field_to_doc(f),
        "dim": A.dim,
        "labels": [module_label(lab) for lab in A.labels],
        "table": [[_encode_vector(f, A.table[i][j]) for j in range(A.dim)]
                  for i in range(A.dim)],
        "unit": _encode_vector(f, A.unit) if A.unit is not None else None,
    }


def algebra_from_doc(doc: dict, base_dir: str = ".") -> FDAlgebra:
    if doc.get("kind") != "algebra":
        raise InputError("expected an algebra document")
    f = field_from_doc(_require(doc, "field", "algebra"))
    labels = _require(doc, "labels", "algebra")
    dim = len(labels)
    table_doc = _require(doc, "table", "algebra")
    if len(table_doc) != dim:
        raise InputError("algebra table has the wrong number of rows")
    table = [[_coerce_vector(f, table_doc[i][j], dim, "structure constants")
              for j in range(dim)] for i in range(dim)]
    unit = doc.get("unit")
    if unit is not None:
        unit = _coerce_vector(f, unit, dim, "algebra unit")
    return FDAlgebra(f, labels, table, unit)


# ---------------------------------------------------------------------------
# inverse semigroups and actions


def inverse_semigroup_from_doc(doc: dict,
                               base_dir: str = ".") -> FiniteInverseSemigroup:
    if doc.get("kind") != "inverse_semigroup":
        raise InputError("expected an inverse_semigroup document")
    if "partial_injections" in doc:
        symbols = doc["partial_injections"]
        if not isinstance(symbols, list) or not symbols:
            raise InputError("partial_injections must list the symbols")
        S, _ = symmetric_inverse_monoid(symbols)
        return S
    elements = _require(doc, "elements", "inverse_semigroup")
    mul = {}
    for triple in _require(doc, "mul", "inverse_semigroup"):
        if not isinstance(triple, list) or len(triple) != 3:
            raise InputError("mul entries are [s, t, st]")
        mul[triple[0], triple[1]] = triple[2]
    star = {}
    for pair in _require(doc, "star", "inverse_semigroup"):
        if not isinstance(pair, list) or len(pair) != 2:
            raise InputError("star entries are [s, s*]")
        star[pair[0]] = pair[1]
    return FiniteInverseSemigroup(elements, mul, star)


def inverse_semigroup_to_doc(S: FiniteInverseSemigroup) -> dict:
    return {
        "kind": "inverse_semigroup",
        "elements": list(S.elements),
        "mul": [[s, t, S.mul[s, t]] for s in S.elements for t in S.elements],
        "star": [[s, S.star[s]] for s in S.elements],
    }


def _theta_from_doc(pairs, what: str) -> dict:
    th = {}
    for pair in pairs:
        if not isinstance(pair, list) or len(pair) != 2:
            raise InputError(f"{what} entries are [x, y] pairs")
        if pair[0] in th:
            raise InputError(f"{what} maps {pair[0]} twice")
        th[pair[0]] = pair[1]
    return th


def space_action_from_doc(doc: dict, base_dir: str = ".") -> SpaceAction:
    if doc.get("kind") != "space_action":
        raise InputError("expected a space_action document")
    S = _resolve(_require(doc, "semigroup", "space_action"), base_dir,
                 inverse_semigroup_from_doc, "inverse_semigroup")
    points = _require(doc, "space", "space_action")
    domains_doc = _require(doc, "domains", "space_action")
    theta_doc = _require(doc, "theta", "space_action")
    domain = {s: frozenset(domains_doc.get(s, [])) for s in S.elements}
    theta = {s: _theta_from_doc(theta_doc.get(s, []), f"theta[{s}]")
             for s in S.elements}
    return SpaceAction(S, points, domain, theta)


def space_action_to_doc(act: SpaceAction) -> dict:
    S = act.semigroup
    return {
        "kind": "space_action",
        "semigroup": inverse_semigroup_to_doc(S),
        "space": list(act.points),
        "domains": {s: sorted(act.domain[s], key=act.pos.get)
                    for s in S.elements},
        "theta": {s: [[x, y] for x, y in sorted(act.theta[s].items(),
                                                key=lambda kv: act.pos[kv[0]])]
                  for s in S.elements},
    }


def ring_action_from_doc(doc: dict, base_dir: str = ".") -> SpectralRingAction:
    if doc.get("kind") != "ring_action":
        raise InputError("expected a ring_action document")
    S = _resolve(_require(doc, "semigroup", "ring_action"), base_dir,
                 inverse_semigroup_from_doc, "inverse_semigroup")
    A = _resolve(_require(doc, "algebra", "ring_action"), base_dir,
                 algebra_from_doc, "algebra")
    f = A.field
    domains_doc = _require(doc, "domains", "ring_action")
    alpha_doc = _require(doc, "alpha", "ring_action")
    domain, alpha = {}, {}
    for s in S.elements:
        vecs = [_coerce_vector(f, v, A.dim, f"domain generator of {s}")
                for v in domains_doc.get(s, [])]
        domain[s] = Subspace.from_vectors(f, A.dim, vecs)
        if s in alpha_doc:
            alpha[s] = _coerce_matrix(f, alpha_doc[s], A.dim, A.dim,
                                      f"alpha[{s}]")
        else:
            alpha[s] = linalg.identity_matrix(f, A.dim)
    return SpectralRingAction(S, A, domain, alpha)


def ring_action_to_doc(act: SpectralRingAction) -> dict:
    S, A = act.semigroup, act.algebra
    f = A.field
    return {
        "kind": "ring_action",
        "semigroup": inverse_semigroup_to_doc(S),
        "algebra": algebra_to_doc(A),
        "domains": {s: [_encode_vector(f, b) for b in act.domain[s].basis]
                    for s in S.elements},
        "alpha": {s: _encode_matrix(f, act.alpha[s]) for s in S.elements},
    }


def partial_group_action_from_doc(doc: dict,
                                  base_dir: str = ".") -> PartialGroupAction:
    if doc.get("kind") != "partial_group_action":
        raise InputError("expected a partial_group_action document")
    group = _require(doc, "group", "partial_group_action")
    elements = _require(group, "elements", "group")
    unit = _require(group, "unit", "group")
    mul = {}
    for triple in _require(group, "mul", "group"):
        if not isinstance(triple, list) or len(triple) != 3:
            raise InputError("group mul entries are [a, b, ab]")
        mul[triple[0], triple[1]] = triple[2]
    points = _require(doc, "space", "partial_group_action")
    domains_doc = _require(doc, "domains", "partial_group_action")
    theta_doc = _require(doc, "theta", "partial_group_action")
    domain = {g: frozenset(domains_doc.get(g, [])) for g in elements}
    theta = {g: _theta_from_doc(theta_doc.get(g, []), f"theta[{g}]")
             for g in elements}
    return PartialGroupAction(elements, mul, unit, points, domain, theta)


def partial_group_action_to_doc(act: PartialGroupAction) -> dict:
    return {
        "kind": "partial_group_action",
        "group": {
            "elements": list(act.elements),
            "unit": act.unit,
            "mul": [[a, b, act.mul[a, b]]
                    for a in act.elements for b in act.elements],
        },
        "space": list(act.points),
        "domains": {g: sorted(act.domain[g], key=act.pos.get)
                    for g in act.elements},
        "theta": {g: [[x, y] for x, y in sorted(act.theta[g].items(),
                                                key=lambda kv: act.pos[kv[0]])]
                  for g in act.elements},
    }


LOADERS = {
    "groupoid": groupoid_from_doc,
    "sheaf": sheaf_from_doc,
    "inverse_semigroup": inverse_semigroup_from_doc,
    "space_action": space_action_from_doc,
    "ring_action": ring_action_from_doc,
    "partial_group_action": partial_group_action_from_doc,
    "algebra": algebra_from_doc,
}


def load_document(path: str):
    """Load and validate any input document; returns (kind, object)."""
    doc = load_json(path)
    kind = doc.get("kind")
    if kind == "module":
        raise InputError("module documents need an algebra context; "
                         "use the induce command")
    if kind not in LOADERS:
        raise InputError(f"unknown document kind {kind!r}")
    return kind, LOADERS[kind](doc, os.path.dirname(os.path.abspath(path)))
