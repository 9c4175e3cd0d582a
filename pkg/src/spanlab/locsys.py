"""Spans of finite sets labeled in an internal category.

An internal category is a strict category object in finite sets (object and
morphism sets with source/target/identity/composition tables).  A local
system span carries vertex labels into the object set and an apex label
into the morphism set, compatibly with source and target; composition
pushes the apex labels through the internal composition table.
"""
from __future__ import annotations

from .fincat import FinCategory, FinFunction, FinSetCategory, Functor
from .groupoid import FinGroupoid, equivalent, groupoids_equivalent
from .spans import Span, compose_spans
from .verdict import FootMismatchError, SpanlabError, Verdict


class InternalCategory:
    """C0, C1 are the sets {0..n-1}; src/tgt/ident are value tuples; comp is
    a table on strictly composable pairs; inv, when present, flags an
    internal groupoid."""

    def __init__(self, C0, C1, src, tgt, ident, comp, inv=None):
        self.C0 = C0
        self.C1 = C1
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.ident = tuple(ident)
        self.comp = dict(comp)
        self.inv = tuple(inv) if inv is not None else None

    def compose(self, g, f):
        """g after f; requires src(g) = tgt(f)."""
        return self.comp[(g, f)]

    def is_invertible(self, m) -> bool:
        if self.inv is not None:
            return True
        s, t = self.src[m], self.tgt[m]
        return any(
            self.comp.get((n, m)) == self.ident[s] and self.comp.get((m, n)) == self.ident[t]
            for n in range(self.C1)
            if self.src[n] == t and self.tgt[n] == s
        )

    def inverse(self, m):
        if self.inv is not None:
            return self.inv[m]
        s, t = self.src[m], self.tgt[m]
        for n in range(self.C1):
            if (
                self.src[n] == t
                and self.tgt[n] == s
                and self.comp.get((n, m)) == self.ident[s]
                and self.comp.get((m, n)) == self.ident[t]
            ):
                return n
        raise SpanlabError(f"internal morphism {m} is not invertible")

    def to_json(self) -> dict:
        data = {
            "C0": self.C0,
            "C1": self.C1,
            "src": list(self.src),
            "tgt": list(self.tgt),
            "id": list(self.ident),
            "comp": [[g, f, h] for (g, f), h in sorted(self.comp.items())],
        }
        if self.inv is not None:
            data["inv"] = list(self.inv)
        return data

    @classmethod
    def from_json(cls, data: dict) -> "InternalCategory":
        try:
            return cls(
                data["C0"],
                data["C1"],
                data["src"],
                data["tgt"],
                data["id"],
                {(g, f): h for g, f, h in data["comp"]},
                data.get("inv"),
            )
        except (KeyError, TypeError) as exc:
            raise SpanlabError(f"malformed internal-category JSON: {exc}") from exc


def validate_internal(C: InternalCategory) -> Verdict:
    if len(C.src) != C.C1 or len(C.tgt) != C.C1 or len(C.ident) != C.C0:
        return Verdict.refuted(witness={"reason": "table lengths"})
    if any(v < 0 or v >= C.C0 for v in C.src + C.tgt):
        return Verdict.refuted(witness={"reason": "src/tgt out of range"})
    for x in range(C.C0):
        i = C.ident[x]
        if i < 0 or i >= C.C1 or C.src[i] != x or C.tgt[i] != x:
            return Verdict.refuted(witness={"object": x, "reason": "bad identity"})
    for g in range(C.C1):
        for f in range(C.C1):
            h = C.comp.get((g, f))
            if C.src[g] == C.tgt[f]:
                if h is None:
                    return Verdict.refuted(witness={"pair": (g, f), "reason": "missing composite"})
                if C.src[h] != C.src[f] or C.tgt[h] != C.tgt[g]:
                    return Verdict.refuted(witness={"pair": (g, f), "reason": "mistyped composite"})
            elif h is not None:
                return Verdict.refuted(witness={"pair": (g, f), "reason": "spurious composite"})
    for f in range(C.C1):
        if C.comp[(f, C.ident[C.src[f]])] != f or C.comp[(C.ident[C.tgt[f]], f)] != f:
            return Verdict.refuted(witness={"morphism": f, "reason": "unit law"})
    for h in range(C.C1):
        for g in range(C.C1):
            if C.src[h] != C.tgt[g]:
                continue
            for f in range(C.C1):
                if C.src[g] != C.tgt[f]:
                    continue
                if C.comp[(C.comp[(h, g)], f)] != C.comp[(h, C.comp[(g, f)])]:
                    return Verdict.refuted(witness={"triple": (h, g, f), "reason": "associativity"})
    if C.inv is not None:
        for m in range(C.C1):
            n = C.inv[m]
            if (
                C.src[n] != C.tgt[m]
                or C.tgt[n] != C.src[m]
                or C.comp[(n, m)] != C.ident[C.src[m]]
                or C.comp[(m, n)] != C.ident[C.tgt[m]]
            ):
                return Verdict.refuted(witness={"morphism": m, "reason": "inverse law"})
    return Verdict.verified()


# -- stock coefficient objects


def discrete_internal(n: int) -> InternalCategory:
    return InternalCategory(
        n, n, range(n), range(n), range(n), {(i, i): i for i in range(n)}, range(n)
    )


def cyclic_internal(n: int) -> InternalCategory:
    """One object, morphisms the cyclic group of order n."""
    return InternalCategory(
        1,
        n,
        [0] * n,
        [0] * n,
        [0],
        {(g, f): (g + f) % n for g in range(n) for f in range(n)},
        [(-g) % n for g in range(n)],
    )


def walking_arrow_internal() -> InternalCategory:
    """Two objects 0, 1 and one non-invertible morphism 2: 0 -> 1."""
    comp = {
        (0, 0): 0,
        (1, 1): 1,
        (2, 0): 2,
        (1, 2): 2,
    }
    return InternalCategory(2, 3, [0, 1, 0], [0, 1, 1], [0, 1], comp)


# ---------------------------------------------------------------------------
# labeled spans


class LocalSystemSpan:
    """X <- A -> Y with xi: X -> C0, eta: Y -> C0, a: A -> C1 such that
    src . a = xi . lleg and tgt . a = eta . rleg."""

    __slots__ = ("span", "xi", "eta", "a")

    def __init__(self, span: Span, xi, eta, a):
        self.span = span
        self.xi = tuple(xi)
        self.eta = tuple(eta)
        self.a = tuple(a)

    @property
    def key(self):
        return (self.span.key, self.xi, self.eta, self.a)

    def __eq__(self, other):
        return isinstance(other, LocalSystemSpan) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"LocalSystemSpan({self.span!r}, xi={self.xi}, eta={self.eta}, a={self.a})"

    def validate(self, C: InternalCategory) -> Verdict:
        s = self.span
        if len(self.xi) != s.left or len(self.eta) != s.right or len(self.a) != s.apex:
            return Verdict.refuted(witness={"reason": "label lengths"})
        for i in range(s.apex):
            m = self.a[i]
            if C.src[m] != self.xi[s.lleg.values[i]]:
                return Verdict.refuted(witness={"apex_point": i, "reason": "source label"})
            if C.tgt[m] != self.eta[s.rleg.values[i]]:
                return Verdict.refuted(witness={"apex_point": i, "reason": "target label"})
        return Verdict.verified()


def identity_locsys(C: InternalCategory, base: FinSetCategory, Y: int, eta) -> LocalSystemSpan:
    span = Span(Y, base.identity(Y), Y, base.identity(Y), Y)
    return LocalSystemSpan(span, eta, eta, [C.ident[e] for e in eta])


def compose_locsys(
    C: InternalCategory, base: FinSetCategory, s: LocalSystemSpan, t: LocalSystemSpan
) -> LocalSystemSpan:
    """Underlying spans composed by pullback; apex labels pushed through the
    internal composition."""
    if s.span.right != t.span.left or s.eta != t.xi:
        raise FootMismatchError("middle foot or middle label mismatch")
    comp = compose_spans(base, s.span, t.span)
    # canonical pullback points are pairs (i, j) with rleg(i) = lleg(j), in order
    pairs = [
        (i, j)
        for i in range(s.span.apex)
        for j in range(t.span.apex)
        if s.span.rleg.values[i] == t.span.lleg.values[j]
    ]
    labels = [C.compose(t.a[j], s.a[i]) for i, j in pairs]
    return LocalSystemSpan(comp, s.xi, t.eta, labels)


def all_locsys_spans(C: InternalCategory, base: FinSetCategory, bound=None):
    import itertools

    out = []
    for X in base.objects_within(bound):
        for Y in base.objects_within(bound):
            for A in base.objects_within(bound):
                for l in base.hom(A, X):
                    for r in base.hom(A, Y):
                        span = Span(X, l, A, r, Y)
                        for xi in itertools.product(range(C.C0), repeat=X):
                            for eta in itertools.product(range(C.C0), repeat=Y):
                                apex_choices = [
                                    [
                                        m
                                        for m in range(C.C1)
                                        if C.src[m] == xi[l.values[i]]
                                        and C.tgt[m] == eta[r.values[i]]
                                    ]
                                    for i in range(A)
                                ]
                                for a in itertools.product(*apex_choices):
                                    out.append(LocalSystemSpan(span, xi, eta, a))
    return out


def invertible_between(C: InternalCategory, x, y):
    """Internally invertible morphisms x -> y in C."""
    return [
        m
        for m in range(C.C1)
        if C.src[m] == x and C.tgt[m] == y and C.is_invertible(m)
    ]


def labeled_bijections(C: InternalCategory, base, X, xi, Y, eta):
    """Morphisms of labeled sets (X, xi) -> (Y, eta): a bijection g with a
    family of internal isomorphisms mu(x): xi(x) -> eta(g x)."""
    import itertools

    out = []
    for g in base.isos(X, Y):
        choices = [invertible_between(C, xi[x], eta[g.values[x]]) for x in range(X)]
        for mu in itertools.product(*choices):
            out.append((g, mu))
    return out


def compose_labeled_bij(C, base, b2, b1):
    """b2 after b1, composing the internal components pointwise."""
    g2, mu2 = b2
    g1, mu1 = b1
    return (
        base.compose(g2, g1),
        tuple(C.compose(mu2[g1.values[x]], mu1[x]) for x in range(g1.source)),
    )


def invert_labeled_bij(C, base, b):
    g, mu = b
    ginv = base.inverse(g)
    return (ginv, tuple(C.inverse(mu[ginv.values[y]]) for y in range(g.target)))


def identity_labeled_bij(C, base, X, xi):
    return (base.identity(X), tuple(C.ident[v] for v in xi))


def locsys_span_isos(C: InternalCategory, base, s: LocalSystemSpan, t: LocalSystemSpan):
    """2-cells of labeled spans: triples (bl, h, br) with bl, br labeled
    bijections of the feet and h an apex bijection over them, such that the
    apex labels commute with the internal components:
    t.a(h i) . mul(lleg i) = mur(rleg i) . s.a(i)."""
    out = []
    ss, ts = s.span, t.span
    for bl in labeled_bijections(C, base, ss.left, s.xi, ts.left, t.xi):
        gl, mul = bl
        hs = [
            h
            for h in base.isos(ss.apex, ts.apex)
            if base.compose(ts.lleg, h) == base.compose(gl, ss.lleg)
        ]
        if not hs:
            continue
        for br in labeled_bijections(C, base, ss.right, s.eta, ts.right, t.eta):
            gr, mur = br
            for h in hs:
                if base.compose(ts.rleg, h) != base.compose(gr, ss.rleg):
                    continue
                if all(
                    C.compose(t.a[h.values[i]], mul[ss.lleg.values[i]])
                    == C.compose(mur[ss.rleg.values[i]], s.a[i])
                    for i in range(ss.apex)
                ):
                    out.append((bl, h, br))
    return out


def locsys_level(base: FinSetCategory, C: InternalCategory, arities, bound=None) -> FinGroupoid:
    """Level groupoids for labeled spans; the shipped arities are () -> 0
    (labeled sets) and 1 (labeled spans)."""
    arities = tuple(arities)
    if arities not in ((0,), (1,)):
        raise SpanlabError("labeled levels are shipped for arities (0,) and (1,) only")
    import itertools

    if arities == (0,):
        objs = [
            (X, xi)
            for X in base.objects_within(bound)
            for xi in itertools.product(range(C.C0), repeat=X)
        ]
        morphs = {}
        for (X, xi) in objs:
            for (Y, eta) in objs:
                for b in labeled_bijections(C, base, X, xi, Y, eta):
                    morphs[((X, xi), (Y, eta), b)] = ((X, xi), (Y, eta))
        ident = {
            (X, xi): ((X, xi), (X, xi), identity_labeled_bij(C, base, X, xi))
            for X, xi in objs
        }
        comp = {}
        for m2, (s2, t2) in morphs.items():
            for m1, (s1, t1) in morphs.items():
                if t1 == s2:
                    comp[(m2, m1)] = (s1, t2, compose_labeled_bij(C, base, m2[2], m1[2]))
        inv = {(s, t, b): (t, s, invert_labeled_bij(C, base, b)) for s, t, b in morphs}
        return FinGroupoid(FinCategory(objs, morphs, ident, comp), inv)

    objs = all_locsys_spans(C, base, bound)
    keys = [o.key for o in objs]
    by_key = dict(zip(keys, objs))
    morphs = {}
    for k1 in keys:
        for k2 in keys:
            for tri in locsys_span_isos(C, base, by_key[k1], by_key[k2]):
                morphs[(k1, k2, tri)] = (k1, k2)
    ident = {}
    for k in keys:
        o = by_key[k]
        ident[k] = (
            k,
            k,
            (
                identity_labeled_bij(C, base, o.span.left, o.xi),
                base.identity(o.span.apex),
                identity_labeled_bij(C, base, o.span.right, o.eta),
            ),
        )

    def _compose_cells(c2, c1):
        return (
            compose_labeled_bij(C, base, c2[0], c1[0]),
            base.compose(c2[1], c1[1]),
            compose_labeled_bij(C, base, c2[2], c1[2]),
        )

    comp = {}
    by_src = {}
    for label, (s, t) in morphs.items():
        by_src.setdefault(s, []).append(label)
    for f, (fs, ft) in morphs.items():
        for g in by_src.get(ft, []):
            comp[(g, f)] = (fs, g[1], _compose_cells(g[2], f[2]))
    inv = {
        (s, t, tri): (
            t,
            s,
            (
                invert_labeled_bij(C, base, tri[0]),
                base.inverse(tri[1]),
                invert_labeled_bij(C, base, tri[2]),
            ),
        )
        for s, t, tri in morphs
    }
    gpd = FinGroupoid(FinCategory(keys, morphs, ident, comp), inv)
    gpd.spans = by_key
    return gpd


def locsys_spans_isomorphic(C, base, s: LocalSystemSpan, t: LocalSystemSpan) -> bool:
    return bool(locsys_span_isos(C, base, s, t))


def locsys_battery_check(C: InternalCategory, bound=1) -> Verdict:
    """Exhaustive unit and associativity laws for labeled-span composition
    at the given bound, up to labeled 2-cell isomorphism."""
    v = validate_internal(C)
    if not v:
        return Verdict.refuted(witness={"stage": "coefficients", "inner": v.witness})
    base = FinSetCategory(bound)
    spans = all_locsys_spans(C, base, bound)
    for s in spans:
        lid = identity_locsys(C, base, s.span.left, s.xi)
        rid = identity_locsys(C, base, s.span.right, s.eta)
        if not locsys_spans_isomorphic(C, base, compose_locsys(C, base, lid, s), s):
            return Verdict.refuted(witness={"law": "left unit", "span": repr(s)})
        if not locsys_spans_isomorphic(C, base, compose_locsys(C, base, s, rid), s):
            return Verdict.refuted(witness={"law": "right unit", "span": repr(s)})
    pairs_checked = 0
    for s in spans:
        for t in spans:
            if s.span.right != t.span.left or s.eta != t.xi:
                continue
            st = compose_locsys(C, base, s, t)
            for u in spans:
                if t.span.right != u.span.left or t.eta != u.xi:
                    continue
                tu = compose_locsys(C, base, t, u)
                lhs = compose_locsys(C, base, st, u)
                rhs = compose_locsys(C, base, s, tu)
                if not locsys_spans_isomorphic(C, base, lhs, rhs):
                    return Verdict.refuted(
                        witness={"law": "associativity", "triple": (repr(s), repr(t), repr(u))}
                    )
                pairs_checked += 1
    return Verdict.verified(spans=len(spans), triples_checked=pairs_checked)


# ---------------------------------------------------------------------------
# equivalences


def locsys_iso_to_identity(C: InternalCategory, base, s: LocalSystemSpan) -> bool:
    """Is s isomorphic to the identity labeled span by a 2-cell fixing feet
    and labels?"""
    sp = s.span
    if sp.left != sp.right or s.xi != s.eta:
        return False
    if sp.lleg != sp.rleg or not base.is_iso(sp.lleg):
        return False
    return all(s.a[i] == C.ident[s.xi[sp.lleg.values[i]]] for i in range(sp.apex))


def locsys_invertible_search(C, base, s: LocalSystemSpan, bound=None) -> bool:
    import itertools

    sp = s.span
    for B in base.objects_within(bound):
        for l in base.hom(B, sp.right):
            for r in base.hom(B, sp.left):
                apex_choices = [
                    [
                        m
                        for m in range(C.C1)
                        if C.src[m] == s.eta[l.values[i]] and C.tgt[m] == s.xi[r.values[i]]
                    ]
                    for i in range(B)
                ]
                for a in itertools.product(*apex_choices):
                    t = LocalSystemSpan(Span(sp.right, l, B, r, sp.left), s.eta, s.xi, a)
                    if locsys_iso_to_identity(
                        C, base, compose_locsys(C, base, s, t)
                    ) and locsys_iso_to_identity(C, base, compose_locsys(C, base, t, s)):
                        return True
    return False


def locsys_invertible_predicate(C, base, s: LocalSystemSpan) -> bool:
    """Trivial underlying span (both legs invertible) with internally
    invertible labels."""
    sp = s.span
    return (
        base.is_iso(sp.lleg)
        and base.is_iso(sp.rleg)
        and all(C.is_invertible(m) for m in s.a)
    )


def locsys_equivalence_check(C: InternalCategory, bound=1) -> Verdict:
    """Exhaustive agreement of the inverse search with the trivial-span plus
    invertible-labels classification, then the degeneracy comparison of the
    objects level against the invertible-span sub-level."""
    v = validate_internal(C)
    if not v:
        return Verdict.refuted(witness={"stage": "coefficients", "inner": v.witness})
    base = FinSetCategory(bound)
    checked = 0
    invertible = []
    for s in all_locsys_spans(C, base, bound):
        pred = locsys_invertible_predicate(C, base, s)
        found = locsys_invertible_search(C, base, s, bound)
        if pred != found:
            return Verdict.refuted(
                witness={"span": repr(s), "predicate": pred, "search": found}
            )
        if pred:
            invertible.append(s)
        checked += 1

    level0 = locsys_level(base, C, (0,), bound)
    eq = _LocsysEqGroupoid(C, base, invertible)
    fobj = {(X, xi): identity_locsys(C, base, X, xi) for X, xi in level0.objects}
    fmor = {}
    for m in level0.category.all_morphisms():
        (X, xi), (Y, eta), b = m
        fmor[m] = (fobj[(X, xi)], fobj[(Y, eta)], (b, b[0], b))
    F = Functor(level0, eq, fobj, fmor)
    ve = equivalent(F)
    if not ve:
        return Verdict.refuted(witness={"stage": "degeneracy", "inner": ve.witness})
    return Verdict.verified(spans_checked=checked, invertible=len(invertible))


class _LocsysEqGroupoid:
    """Invertible labeled spans; homs are label-compatible natural triples."""

    def __init__(self, C, base, objects):
        self.C = C
        self.base = base
        self.objects = list(objects)

    def hom(self, s, t):
        return [(s, t, tri) for tri in locsys_span_isos(self.C, self.base, s, t)]


def locsys_dual(C: InternalCategory, s: LocalSystemSpan) -> LocalSystemSpan:
    """Reversed span with labels inverted through the internal inverse
    table; defined for internal groupoids."""
    if C.inv is None:
        raise SpanlabError("dual labels need an internal groupoid")
    sp = s.span
    return LocalSystemSpan(
        Span(sp.right, sp.rleg, sp.apex, sp.lleg, sp.left),
        s.eta,
        s.xi,
        [C.inv[m] for m in s.a],
    )


def locsys_adjunction_check(C: InternalCategory, base, s: LocalSystemSpan, bound=None) -> Verdict:
    """The dual is a two-sided inverse witness up to 2-cells when the
    underlying span is trivial, and a two-sided adjoint candidate in
    general: here we certify that composing with the dual yields composites
    whose labels are internally invertible and whose underlying triangles
    pass."""
    from .duality import build_adjunction, triangle_check

    if C.inv is None:
        raise SpanlabError("adjoint labels need an internal groupoid")
    w = build_adjunction(base, s.span)
    vt = triangle_check(w)
    if not vt:
        return Verdict.refuted(witness={"stage": "underlying triangles", "inner": vt.witness})
    d = locsys_dual(C, s)
    for left, right in ((s, d), (d, s)):
        comp = compose_locsys(C, base, left, right)
        if not all(C.is_invertible(m) for m in comp.a):
            return Verdict.refuted(witness={"stage": "composite labels", "span": repr(comp)})
    return Verdict.verified()


# ---------------------------------------------------------------------------
# mapping fibers


def comma_set(C: InternalCategory, X, xi, Y, eta):
    """The set of triples (x, y, m: xi(x) -> eta(y)), in lexicographic
    order."""
    return [
        (x, y, m)
        for x in range(X)
        for y in range(Y)
        for m in range(C.C1)
        if C.src[m] == xi[x] and C.tgt[m] == eta[y]
    ]


def locsys_mapping_fiber_check(C: InternalCategory, X, xi, Y, eta, bound=1) -> Verdict:
    """Compare the strict fiber of labeled spans with feet (X, xi), (Y, eta)
    against labeled sets over the comma set of internal morphisms."""
    base = FinSetCategory(bound)
    xi, eta = tuple(xi), tuple(eta)
    fiber_objs = [
        s
        for s in all_locsys_spans(C, base, bound)
        if s.span.left == X and s.span.right == Y and s.xi == xi and s.eta == eta
    ]
    fiber = _strict_fiber_groupoid(C, base, fiber_objs)

    K = len(comma_set(C, X, xi, Y, eta))
    other_objs = [(A, h) for A in base.objects_within(bound) for h in base.hom(A, K)]
    morphs = {}
    for (A, h) in other_objs:
        for (B, k) in other_objs:
            for u in base.isos(A, B):
                if base.compose(k, u) == h:
                    morphs[((A, h), (B, k), u)] = ((A, h), (B, k))
    ident = {(A, h): ((A, h), (A, h), base.identity(A)) for A, h in other_objs}
    comp = {}
    for m2, (s2, t2) in morphs.items():
        for m1, (s1, t1) in morphs.items():
            if t1 == s2:
                comp[(m2, m1)] = (s1, t2, base.compose(m2[2], m1[2]))
    inv = {(a, b, u): (b, a, base.inverse(u)) for a, b, u in morphs}
    other = FinGroupoid(FinCategory(other_objs, morphs, ident, comp), inv)

    v = groupoids_equivalent(fiber, other)
    if v:
        return Verdict.verified(
            witness=v.witness, fiber_objects=len(fiber.objects), comma_size=K
        )
    return Verdict.refuted(witness=v.witness)


def _strict_fiber_groupoid(C, base, objs) -> FinGroupoid:
    """Labeled spans with fixed feet and labels; morphisms are apex
    bijections with identity feet components."""
    keys = [s.key for s in objs]
    by_key = dict(zip(keys, objs))
    morphs = {}
    for k1 in keys:
        for k2 in keys:
            s, t = by_key[k1], by_key[k2]
            idl = identity_labeled_bij(C, base, s.span.left, s.xi)
            idr = identity_labeled_bij(C, base, s.span.right, s.eta)
            for (bl, h, br) in locsys_span_isos(C, base, s, t):
                if bl == idl and br == idr:
                    morphs[(k1, k2, h)] = (k1, k2)
    ident = {k: (k, k, base.identity(by_key[k].span.apex)) for k in keys}
    comp = {}
    for m2, (s2, t2) in morphs.items():
        for m1, (s1, t1) in morphs.items():
            if t1 == s2:
                comp[(m2, m1)] = (s1, t2, base.compose(m2[2], m1[2]))
    inv = {(a, b, h): (b, a, base.inverse(h)) for a, b, h in morphs}
    return FinGroupoid(FinCategory(keys, morphs, ident, comp), inv)
