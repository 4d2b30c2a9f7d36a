"""Homomorphisms, the pair and collapse functors, and their natural maps.

The collapse of a cubic algebra identifies reflection-equivalent
elements; the result is an implication algebra whose implication is the
relative complement inside the Boolean interval above each class (the
collapse relation is not a congruence for the cubic implication term,
so the table is built from the quotient order instead).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .constructions import ImplicationAlgebra, build_I, pair_carrier, pair_index
from .cubic import (
    UNDEFINED,
    AxiomReport,
    CubicAlgebra,
    Subalgebra,
    _Witnesses,
    _glb,
    is_upward_closed,
)
from .errors import (
    CapExceeded,
    InvalidAlgebra,
    MembershipBroken,
    NotUpwardClosed,
)


@dataclass(frozen=True)
class CubicHom:
    """A map between cubic algebras, recorded as an index array.

    Validity (preserving top, join and reflection) is established by
    :func:`check_hom`; instances are plain records so that candidate maps
    can be examined before being trusted.
    """

    source: CubicAlgebra
    target: CubicAlgebra
    map: tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != self.source.size:
            raise ValueError("map length must match the source carrier")
        if any(not 0 <= v < self.target.size for v in self.map):
            raise ValueError("map value out of target range")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def is_bijective(self) -> bool:
        return (self.source.size == self.target.size
                and len(set(self.map)) == self.source.size)

    def compose(self, other: "CubicHom") -> "CubicHom":
        if other.target != self.source:
            raise ValueError("homs do not compose")
        return CubicHom(other.source, self.target,
                        tuple(self.map[v] for v in other.map))


@dataclass(frozen=True)
class ImplicationHom:
    """A map between implication algebras, recorded as an index array."""

    source: object
    target: object
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def is_bijective(self) -> bool:
        return (self.source.size == self.target.size
                and len(set(self.map)) == self.source.size)

    def compose(self, other: "ImplicationHom") -> "ImplicationHom":
        if other.target != self.source:
            raise ValueError("homs do not compose")
        return ImplicationHom(other.source, self.target,
                              tuple(self.map[v] for v in other.map))


def check_hom(f: CubicHom, witness_policy: str = "first") -> AxiomReport:
    """Check preservation of top, join, reflection, and the equivalence.

    Violation ids are ``one``, ``join``, ``delta`` and ``sim`` with the
    source elements as witness.
    """
    src, dst, m = f.source, f.target, f.map
    out = _Witnesses(witness_policy)
    if m[src.one] != dst.one:
        out.add("one", (src.one,))
        if out.stop:
            return out.report()
    for x in src.elements():
        for y in src.elements():
            if m[src.join(x, y)] != dst.join(m[x], m[y]):
                if out.add("join", (x, y)):
                    return out.report()
            if src.leq(y, x):
                if not dst.leq(m[y], m[x]) or m[src.delta(x, y)] != dst.delta(m[x], m[y]):
                    if out.add("delta", (x, y)):
                        return out.report()
            if src.sim(x, y) and not dst.sim(m[x], m[y]):
                if out.add("sim", (x, y)):
                    return out.report()
    return out.report()


def check_impl_hom(f: ImplicationHom, witness_policy: str = "first") -> AxiomReport:
    src, dst, m = f.source, f.target, f.map
    out = _Witnesses(witness_policy)
    if m[src.one] != dst.one:
        out.add("one", (src.one,))
        if out.stop:
            return out.report()
    for x in src.elements():
        for y in src.elements():
            if m[src.join(x, y)] != dst.join(m[x], m[y]):
                if out.add("join", (x, y)):
                    return out.report()
            if m[src.implies(x, y)] != dst.implies(m[x], m[y]):
                if out.add("implies", (x, y)):
                    return out.report()
    return out.report()


# -- the collapse functor -----------------------------------------------------

@dataclass(frozen=True)
class QuotientAlgebra:
    """Collapse of a cubic algebra along reflection equivalence."""

    source: CubicAlgebra
    classes: tuple[tuple[int, ...], ...]
    algebra: ImplicationAlgebra
    eta: tuple[int, ...]

    def class_of(self, x: int) -> int:
        return self.eta[x]

    def members(self, c: int) -> tuple[int, ...]:
        return self.classes[c]


@lru_cache(maxsize=None)
def quotient_C(algebra: CubicAlgebra) -> QuotientAlgebra:
    """Collapse the algebra and build the induced implication algebra.

    Verified on construction: the class of the top is a singleton, class
    joins are the images of the signed join, and wherever the signed meet
    is defined the class meet exists and agrees with it.
    """
    n = algebra.size
    seen = [-1] * n
    classes: list[list[int]] = []
    for x in range(n):
        if seen[x] != -1:
            continue
        cls = [y for y in range(n) if algebra.sim(x, y)]
        for y in cls:
            seen[y] = len(classes)
        classes.append(sorted(cls))
    eta = tuple(seen)
    k = len(classes)
    top = eta[algebra.one]
    if classes[top] != [algebra.one]:
        raise InvalidAlgebra("class of the top is not a singleton")

    leq = [[0] * k for _ in range(k)]
    for c, cx in enumerate(classes):
        for d, cy in enumerate(classes):
            if any(algebra.leq(x, y) for x in cx for y in cy):
                leq[c][d] = 1
    jn = [[0] * k for _ in range(k)]
    for c, cx in enumerate(classes):
        for d, cy in enumerate(classes):
            jn[c][d] = eta[algebra.star(cx[0], cy[0])]

    down = [0] * k
    for c in range(k):
        for d in range(k):
            if leq[d][c]:
                down[c] |= 1 << d
    down = tuple(down)

    def class_meet(c, d):
        return _glb(down[c] & down[d], down)

    for c in range(k):
        for d in range(k):
            m = class_meet(c, d)
            for x in classes[c]:
                for y in classes[d]:
                    cr = algebra.caret(x, y)
                    if cr is not None and (m == UNDEFINED or eta[cr] != m):
                        raise InvalidAlgebra(
                            f"class meet disagrees with the signed meet at ({x},{y})"
                        )

    imp = [[0] * k for _ in range(k)]
    for c in range(k):
        for d in range(k):
            z = jn[c][d]
            candidates = [w for w in range(k)
                          if leq[d][w] and jn[w][z] == top and class_meet(w, z) == d]
            if len(candidates) != 1:
                raise InvalidAlgebra(
                    f"relative complement not unique for classes ({c},{d})"
                )
            imp[c][d] = candidates[0]

    labels = tuple("[" + algebra.label(cls[0]) + "]" for cls in classes)
    quotient = ImplicationAlgebra(
        size=k,
        leq_table=tuple(map(tuple, leq)),
        join_table=tuple(map(tuple, jn)),
        implies_table=tuple(map(tuple, imp)),
        one=top,
        labels=labels,
        name=f"C({algebra.algebra_id})",
    )
    return QuotientAlgebra(source=algebra, classes=tuple(map(tuple, classes)),
                           algebra=quotient, eta=eta)


def eta_map(algebra: CubicAlgebra) -> tuple[int, ...]:
    return quotient_C(algebra).eta


# -- functor action on maps ---------------------------------------------------

def functor_I_hom(f: ImplicationHom) -> CubicHom:
    """Lift an implication hom to the pair algebras, coordinatewise."""
    report = check_impl_hom(f)
    if not report.passed:
        raise InvalidAlgebra(f"not an implication hom: {report.first()}",
                             report=report)
    src_pairs = pair_carrier(f.source)
    dst_index = pair_index(f.target)
    out = []
    for p in src_pairs:
        image = (f.map[p.first], f.map[p.second])
        if image not in dst_index:
            raise MembershipBroken(
                "image pair loses its meet", witness=(p.first, p.second)
            )
        out.append(dst_index[image])
    return CubicHom(build_I(f.source), build_I(f.target), tuple(out))


def functor_C_hom(f: CubicHom) -> ImplicationHom:
    """Collapse a cubic hom to the quotients; well-defined by equivalence
    preservation."""
    qs = quotient_C(f.source)
    qt = quotient_C(f.target)
    out = [-1] * qs.algebra.size
    for x in f.source.elements():
        c = qs.eta[x]
        value = qt.eta[f.map[x]]
        if out[c] == -1:
            out[c] = value
        elif out[c] != value:
            raise InvalidAlgebra(f"collapse of the map is not well defined at {x}")
    return ImplicationHom(qs.algebra, qt.algebra, tuple(out))


# -- natural transformations ---------------------------------------------------

@lru_cache(maxsize=None)
def iota(algebra) -> ImplicationHom:
    """The canonical isomorphism onto the collapse of the pair algebra.

    Sends x to the class of (1, x); verified bijective with
    class-of-(a, b) -> a ^ b as its inverse.
    """
    interval = build_I(algebra)
    q = quotient_C(interval)
    idx = pair_index(algebra)
    m = tuple(q.eta[idx[(algebra.one, x)]] for x in algebra.elements())
    hom = ImplicationHom(algebra, q.algebra, m)
    report = check_impl_hom(hom)
    if not report.passed or not hom.is_bijective():
        raise InvalidAlgebra("iota failed to be an isomorphism", report=report)
    carrier = pair_carrier(algebra)
    inverse = {}
    for i, p in enumerate(carrier):
        inverse.setdefault(q.eta[i], algebra.meet(p.first, p.second))
    for c, value in inverse.items():
        if m[value] != c:
            raise InvalidAlgebra("iota inverse via pair meets disagrees")
    return hom


def iota_inverse(algebra) -> dict:
    hom = iota(algebra)
    return {c: x for x, c in enumerate(hom.map)}


def kappa(algebra: CubicAlgebra) -> CubicHom:
    """The natural map into the pair algebra of the collapse.

    This is a plain map, not in general a cubic hom (see the regression
    test for the failure), but its own collapse is the canonical
    isomorphism of the quotient, which is verified here.
    """
    q = quotient_C(algebra)
    target = build_I(q.algebra)
    idx = pair_index(q.algebra)
    m = tuple(idx[(q.algebra.one, q.eta[x])] for x in algebra.elements())
    hom = CubicHom(algebra, target, m)
    qt = quotient_C(target)
    canonical = iota(q.algebra)
    for x in algebra.elements():
        if qt.eta[m[x]] != canonical.map[q.eta[x]]:
            raise InvalidAlgebra("collapse of kappa disagrees with iota")
    return hom


# -- upward-closed subalgebras and the inclusion lemma -------------------------

def inclusion_collapse(algebra: CubicAlgebra, members,
                       witness_policy: str = "first") -> AxiomReport:
    """Verify that collapsing commutes with an upward-closed inclusion.

    Each class of the subalgebra must be the trace of the ambient class;
    violations carry the offending subalgebra element.
    """
    members = sorted(set(members))
    if not is_upward_closed(algebra, members):
        raise NotUpwardClosed(f"{members} is not upward closed")
    sub = Subalgebra(algebra, members)
    q_sub = quotient_C(sub.algebra)
    q_amb = quotient_C(algebra)
    out = _Witnesses(witness_policy)
    for i in sub.algebra.elements():
        x = sub.to_parent(i)
        local = {sub.to_parent(j) for j in q_sub.classes[q_sub.eta[i]]}
        ambient = set(q_amb.classes[q_amb.eta[x]]) & set(members)
        if local != ambient:
            if out.add("class", (x,)):
                return out.report()
    return out.report()


def upward_closed_subalgebras(algebra: CubicAlgebra,
                              limit_bits: int = 16) -> tuple[frozenset, ...]:
    """All upward-closed join/reflection-closed subsets (small carriers)."""
    n = algebra.size
    if n > limit_bits:
        raise CapExceeded(f"carrier {n} too large for subset enumeration")
    up = algebra._up
    results = []
    for mask in range(1, 1 << n):
        ok = True
        for x in range(n):
            if mask >> x & 1 and up[x] & ~mask:
                ok = False
                break
        if not ok:
            continue
        members = [x for x in range(n) if mask >> x & 1]
        closed = True
        for x in members:
            for y in members:
                if not mask >> algebra.join(x, y) & 1:
                    closed = False
                    break
                if algebra.leq(y, x) and not mask >> algebra.delta(x, y) & 1:
                    closed = False
                    break
            if not closed:
                break
        if closed:
            results.append(frozenset(members))
    return tuple(results)


def restriction_hom(f: CubicHom, sub: Subalgebra) -> CubicHom:
    """Restrict a hom to an upward-closed subalgebra of its source."""
    return CubicHom(sub.algebra, f.target,
                    tuple(f.map[sub.to_parent(i)] for i in sub.algebra.elements()))
