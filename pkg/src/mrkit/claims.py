"""The per-claim verification harness.

Every registered claim re-checks one stated result on finite instances,
exhaustively where the statement quantifies over elements or filters.
Claims either apply to each algebra in the context ("each") or to the
fixed corpus and builders ("global").  Results are deterministic given
(input, seed): all iteration is over sorted structures and randomness
comes only from the seeded corpus generator.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .automorphisms import (
    GFilterPair,
    Xi,
    coordinate_gfilters,
    d_set,
    decompose,
    enumerate_aut,
    enumerate_impl_aut,
    f_ab,
    f_presentation,
    factor_automorphism,
    filter_automorphism,
    find_impl_isomorphism,
    find_isomorphism,
    fixed_set,
    inner_group,
    is_inner,
    localize_closure,
    omega,
    phi_from_boolean_filter,
    recover,
)
from .constructions import (
    boolean_algebra,
    build_I,
    embed_e_index,
    face_interval_isomorphism,
    face_poset,
    gfilter_from_presentation,
    implication_subalgebra,
    pair_carrier,
    pair_index,
    presentation_check,
)
from .corpus import seeded_implication_algebras
from .cubic import (
    CubicAlgebra,
    Subalgebra,
    caret_total,
    check_cubic_axioms,
    check_mr_axiom,
    localize,
    replay_witness,
)
from .errors import MrkitError
from .filters import (
    Filter,
    all_filters,
    delta_filter,
    generated_subalgebra,
    impl_elem,
    impl_join,
    impl_sup,
    improper_filter,
    is_F_boolean,
    is_gfilter,
    subalgebra_closure,
)
from .functors import (
    CubicHom,
    ImplicationHom,
    check_hom,
    functor_C_hom,
    functor_I_hom,
    inclusion_collapse,
    iota,
    kappa,
    quotient_C,
    restriction_hom,
    upward_closed_subalgebras,
)


@dataclass(frozen=True)
class ClaimResult:
    claim_id: str
    instance: str
    status: str  # "pass" | "fail" | "skip"
    witness: object = None

    def as_dict(self) -> dict:
        out = {"claim_id": self.claim_id, "instance": self.instance,
               "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerifyContext:
    """Instances and knobs a verification run works with."""

    algebras: tuple[tuple[str, CubicAlgebra], ...]
    seed: int = 42
    witness_policy: str = "first"
    include_global: bool = True
    _mr_cache: dict = field(default_factory=dict)

    def is_mr(self, algebra: CubicAlgebra) -> bool:
        key = id(algebra)
        if key not in self._mr_cache:
            self._mr_cache[key] = check_mr_axiom(algebra).passed
        return self._mr_cache[key]

    def mr_instances(self) -> list[tuple[str, CubicAlgebra]]:
        return [(n, a) for n, a in self.algebras if self.is_mr(a)]


@dataclass(frozen=True)
class Claim:
    claim_id: str
    description: str
    scope: str  # "each" | "global"
    run: Callable[[VerifyContext], Iterable[ClaimResult]]


CLAIMS: dict[str, Claim] = {}


def claim(claim_id: str, description: str, scope: str = "each"):
    def register(fn):
        CLAIMS[claim_id] = Claim(claim_id, description, scope, fn)
        return fn
    return register


def _ok(cid, instance, witness=None):
    return ClaimResult(cid, instance, "pass", witness)


def _bad(cid, instance, witness=None):
    return ClaimResult(cid, instance, "fail", witness)


def _skip(cid, instance, witness=None):
    return ClaimResult(cid, instance, "skip", witness)


def _mr_or_skip(ctx, cid) -> Iterator:
    for name, alg in ctx.algebras:
        if ctx.is_mr(alg):
            yield True, name, alg
        else:
            yield False, name, alg


def _guard(cid, instance, fn) -> ClaimResult:
    """Run a self-verifying construction; any package error is a failure."""
    try:
        fn()
    except MrkitError as exc:
        return _bad(cid, instance, str(exc))
    return _ok(cid, instance)


# -- axioms -----------------------------------------------------------------

@claim("axioms:cubic", "the cubic axioms hold on the instance")
def _axioms_cubic(ctx):
    for name, alg in ctx.algebras:
        rep = check_cubic_axioms(alg, ctx.witness_policy)
        if rep.passed:
            yield _ok("axioms:cubic", name)
        else:
            yield _bad("axioms:cubic", name, list(rep.violations))


@claim("axioms:mr", "the meet-existence check is consistent and replayable")
def _axioms_mr(ctx):
    for name, alg in ctx.algebras:
        rep = check_mr_axiom(alg, "all")
        bad = [v for v in rep.violations if not replay_witness(alg, *v)]
        if bad:
            yield _bad("axioms:mr", name, bad)
        else:
            yield _ok("axioms:mr", name, {"mr": rep.passed})


@claim("lem:caretTotal", "the signed meet is total exactly on MR instances")
def _caret_total(ctx):
    for name, alg in ctx.algebras:
        if caret_total(alg) == ctx.is_mr(alg):
            yield _ok("lem:caretTotal", name)
        else:
            yield _bad("lem:caretTotal", name)


@claim("mr:complement-meets",
       "in an MR instance complementary pairs meet after mirroring")
def _complement_meets(ctx):
    cid = "mr:complement-meets"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        one = alg.one
        bad = [(x, y) for x in alg.elements() for y in alg.elements()
               if alg.join(x, y) == one
               and alg.meet(x, alg.delta(one, y)) is None]
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:3])


# -- order-level facts --------------------------------------------------------

@claim("prop:triv", "reflection-below plus an existing meet forces order")
def _prop_triv(ctx):
    for name, alg in ctx.algebras:
        bad = [(p, q) for p in alg.elements() for q in alg.elements()
               if alg.preceq(p, q) and alg.meet(p, q) is not None
               and not alg.leq(p, q)]
        yield _ok("prop:triv", name) if not bad else _bad("prop:triv", name, bad[:3])


@claim("cor:triv", "equivalence plus an existing meet forces equality")
def _cor_triv(ctx):
    for name, alg in ctx.algebras:
        bad = [(p, q) for p in alg.elements() for q in alg.elements()
               if alg.sim(p, q) and alg.meet(p, q) is not None and p != q]
        yield _ok("cor:triv", name) if not bad else _bad("cor:triv", name, bad[:3])


@claim("lem:preceq-char",
       "reflection-below matches the two-join meet characterization")
def _preceq_char(ctx):
    cid = "lem:preceq-char"
    for name, alg in ctx.algebras:
        one = alg.one
        bad = []
        for a in alg.elements():
            for b in alg.elements():
                m = alg.meet(alg.join(b, a), alg.join(b, alg.delta(one, a)))
                rel = alg.preceq(a, b)
                if m is None:
                    if rel:
                        bad.append((a, b))
                elif rel != (m == b):
                    bad.append((a, b))
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:3])


@claim("lem:sim-congruence",
       "equivalence respects the signed operations classwise")
def _sim_congruence(ctx):
    cid = "lem:sim-congruence"
    for name, alg in ctx.algebras:
        q = quotient_C(alg)
        bad = []
        for x in alg.elements():
            for y in alg.elements():
                if alg.sim(x, y) != alg.sim(y, x):
                    bad.append(("sym", x, y))
        for c1 in q.classes:
            for c2 in q.classes:
                for x in c1:
                    for y in c2:
                        for x2 in c1:
                            for y2 in c2:
                                u, v = alg.caret(x, y), alg.caret(x2, y2)
                                if u is not None and v is not None and not alg.sim(u, v):
                                    bad.append(("caret", x, y, x2, y2))
                                if not alg.sim(alg.star(x, y), alg.star(x2, y2)):
                                    bad.append(("star", x, y, x2, y2))
        # transitivity comes with the partition having been computable at all
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:3])


# -- localization --------------------------------------------------------------

@claim("lem:kl", "localizations carry valid interval coordinates everywhere")
def _lem_kl(ctx):
    for name, alg in ctx.algebras:
        failed = None
        for a in alg.elements():
            try:
                localize(alg, a)
            except MrkitError as exc:
                failed = (a, str(exc))
                break
        yield _ok("lem:kl", name) if failed is None else _bad("lem:kl", name, failed)


@claim("lem:intComp",
       "the two-sided reflection decomposition recovers every element")
def _int_comp(ctx):
    cid = "lem:intComp"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        bad = []
        for a in alg.elements():
            members = localize(alg, a).members
            for g in alg.elements():
                if not alg.leq(a, g):
                    continue
                h = alg.implies(g, a)
                for z in members:
                    left = alg.join(z, alg.delta(alg.join(g, z), g))
                    right = alg.join(z, alg.delta(alg.join(h, z), h))
                    if alg.meet(left, right) != z:
                        bad.append((a, g, z))
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:3])


@claim("eq:oneAA", "interval translations agree with recovery joins (side 1)")
def _one_aa(ctx):
    yield from _interval_agreement(ctx, "eq:oneAA", side=1)


@claim("eq:twoAA", "interval translations agree with recovery joins (side 2)")
def _two_aa(ctx):
    yield from _interval_agreement(ctx, "eq:twoAA", side=2)


def _interval_agreement(ctx, cid, side):
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        one = alg.one
        bad = []
        for a in alg.elements():
            for g in alg.elements():
                if not alg.leq(a, g):
                    continue
                h = alg.implies(g, a)
                b = alg.delta(g, a)
                translation = f_ab(alg, a, b)
                for z in translation.localization.members:
                    z1 = alg.join(z, alg.delta(alg.join(g, z), g))
                    z2 = alg.join(z, alg.delta(alg.join(h, z), h))
                    phi_g = alg.meet(z1, alg.delta(one, z2))
                    ext = translation.extension[z]
                    if phi_g is None or ext != phi_g:
                        bad.append((a, g, z))
                        continue
                    anchor = b if side == 1 else alg.delta(one, b)
                    if alg.join(ext, anchor) != alg.join(phi_g, anchor):
                        bad.append((a, g, z))
            if bad:
                break
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:3])


# -- counting and shape ----------------------------------------------------------

@claim("count:interval", "pair algebras over powersets have size 3^n", "global")
def _count_interval(ctx):
    sizes = {n: build_I(boolean_algebra(n)).size for n in (1, 2, 3, 4)}
    good = all(sizes[n] == 3 ** n for n in sizes)
    yield (_ok if good else _bad)("count:interval", "global", sizes)


@claim("iso:face", "face algebras match pair algebras dimensionwise", "global")
def _iso_face(ctx):
    cid = "iso:face"
    for n in (1, 2, 3, 4):
        faces = face_poset(n)
        interval = build_I(boolean_algebra(n))
        m = face_interval_isomorphism(n)
        hom = CubicHom(faces, interval, m)
        ok = hom.is_bijective() and check_hom(hom).passed
        if ok and n <= 3:
            ok = find_isomorphism(faces, interval) is not None
        yield (_ok if ok else _bad)(cid, f"n={n}")


@claim("iso:filter-device",
       "pair algebras of principal Boolean filters embed upward-closed",
       "global")
def _filter_device(ctx):
    cid = "iso:filter-device"
    for atoms, inst in ((2, "FA1"), (3, "FA2")):
        base = boolean_algebra(atoms)
        filt = {x for x in base.elements() if base.leq(1, x)}
        from .constructions import filter_algebra
        fa = filter_algebra(base, filt)
        ambient = build_I(base)
        idx = pair_index(base)
        inside = sorted(idx[(p, q)] for p in filt for q in filt
                        if base.join(p, q) == base.one)
        members = set(inside)
        up_closed = all(set(ambient.up_set(x)) <= members for x in inside)
        sub = Subalgebra(ambient, inside)
        ok = (up_closed
              and check_mr_axiom(sub.algebra).passed
              and check_mr_axiom(fa).passed
              and find_isomorphism(sub.algebra, fa) is not None)
        yield (_ok if ok else _bad)(cid, inst)


# -- groups ------------------------------------------------------------------------

_EXPECTED_ORDERS = {
    "C1": (2, 2), "C2": (8, 4), "C3": (48, 8), "FA1": (2, 2), "FA2": (8, 4),
}


@claim("grp:aut-order", "full automorphism group orders match 2^n n!", "global")
def _aut_orders(ctx):
    cid = "grp:aut-order"
    for name, alg in ctx.algebras:
        if name not in _EXPECTED_ORDERS:
            continue
        got = len(enumerate_aut(alg))
        want = _EXPECTED_ORDERS[name][0]
        yield (_ok if got == want else _bad)(cid, name, {"got": got, "want": want})


@claim("grp:inn-order", "inner automorphism group orders match 2^n", "global")
def _inn_orders(ctx):
    cid = "grp:inn-order"
    for name, alg in ctx.algebras:
        if name not in _EXPECTED_ORDERS:
            continue
        got = len(inner_group(alg))
        want = _EXPECTED_ORDERS[name][1]
        yield (_ok if got == want else _bad)(cid, name, {"got": got, "want": want})


@claim("thm:TwoTorsion", "every inner automorphism is an involution")
def _two_torsion(ctx):
    cid = "thm:TwoTorsion"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        bad = [phi.perm for phi in inner_group(alg)
               if not phi.compose(phi).is_identity()]
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:1])


@claim("grp:inn-structure", "inner automorphisms form an abelian normal subgroup")
def _inn_structure(ctx):
    cid = "grp:inn-structure"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        yield _guard(cid, name, lambda alg=alg: inner_group(alg))


@claim("thm:kerFilter",
       "inner automorphisms are exactly the kernel of the collapse")
def _ker_filter(ctx):
    cid = "thm:kerFilter"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        ident = tuple(range(quotient_C(alg).algebra.size))
        kernel = {phi.perm for phi in enumerate_aut(alg)
                  if functor_C_hom(phi.as_hom()).map == ident}
        inner = {phi.perm for phi in inner_group(alg)}
        yield (_ok if kernel == inner else _bad)(cid, name)


# -- filter calculus ----------------------------------------------------------------

@claim("lem:gen",
       "the one-sweep generated set equals the join/reflection closure")
def _lem_gen(ctx):
    cid = "lem:gen"
    for name, alg in ctx.algebras:
        bad = []
        for filt in all_filters(alg):
            a = generated_subalgebra(filt).members
            b = subalgebra_closure(alg, filt.members)
            if a != b:
                bad.append(sorted(filt.members))
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:1])


@claim("lem:twoThreeSame", "the three filter implications coincide", "global")
def _two_three_same(ctx):
    cid = "lem:twoThreeSame"
    ambients = []
    for name, alg in ctx.algebras:
        if name == "C2":
            ambients.append((f"{name}-collapse", quotient_C(alg).algebra))
            ambients.append((name, alg))
    pairs_checked = 0
    bad = []
    for label, ambient in ambients:
        filts = all_filters(ambient)
        for f in filts:
            for g in filts:
                if not g.members <= f.members:
                    continue
                pairs_checked += 1
                if not (impl_sup(g, f).members == impl_join(g, f).members
                        == impl_elem(g, f).members):
                    bad.append((label, sorted(g.members), sorted(f.members)))
    for impl in seeded_implication_algebras(ctx.seed, 6):
        filts = all_filters(impl)
        for f in filts:
            for g in filts:
                if not g.members <= f.members:
                    continue
                pairs_checked += 1
                if not (impl_sup(g, f).members == impl_join(g, f).members
                        == impl_elem(g, f).members):
                    bad.append((impl.name, sorted(g.members), sorted(f.members)))
    witness = {"pairs": pairs_checked}
    if pairs_checked < 100:
        bad.append(("coverage", pairs_checked))
    yield _ok(cid, "global", witness) if not bad else _bad(cid, "global", bad[:3])


@claim("thm:lots", "filter reflection round-trips generating filter pairs")
def _thm_lots(ctx):
    cid = "thm:lots"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        bad = []
        gfs = coordinate_gfilters(alg)
        for f in gfs:
            for h in gfs:
                g = Filter(alg, f.members & h.members)
                if not is_F_boolean(g, f):
                    bad.append(("boolean", sorted(f.members), sorted(h.members)))
                    continue
                if delta_filter(g, f).members != h.members:
                    bad.append(("recover-h", sorted(f.members), sorted(h.members)))
            for g in all_filters(alg):
                if not g.members <= f.members:
                    continue
                if not is_F_boolean(g, f):
                    continue
                h = delta_filter(g, f)
                if not is_gfilter(h):
                    bad.append(("gfilter", sorted(g.members), sorted(f.members)))
                elif f.members & h.members != g.members:
                    bad.append(("recover-g", sorted(g.members), sorted(f.members)))
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:3])


@claim("thm:Boolean", "Boolean relative to one generating filter means all")
def _thm_boolean(ctx):
    cid = "thm:Boolean"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        bad = []
        gfs = coordinate_gfilters(alg)
        for f in gfs:
            for g in all_filters(alg):
                if not g.members <= f.members or not is_F_boolean(g, f):
                    continue
                for h in gfs:
                    if g.members <= h.members and not is_F_boolean(g, h):
                        bad.append((sorted(g.members), sorted(f.members),
                                    sorted(h.members)))
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:1])


@claim("lem:localBoolean", "Boolean subfilters trace Boolean on subfilters")
def _local_boolean(ctx):
    cid = "lem:localBoolean"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        bad = []
        for f in coordinate_gfilters(alg):
            booleans = [g for g in all_filters(alg)
                        if g.members <= f.members and is_F_boolean(g, f)]
            subs = [h for h in all_filters(alg) if h.members <= f.members]
            for g in booleans:
                for h in subs:
                    gh = Filter(alg, g.members & h.members)
                    if not is_F_boolean(gh, h):
                        bad.append((sorted(g.members), sorted(h.members)))
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:1])


@claim("lem:localPrincBool", "Boolean subfilters cut principal pieces")
def _local_princ(ctx):
    cid = "lem:localPrincBool"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        bad = []
        for f in coordinate_gfilters(alg):
            for g in all_filters(alg):
                if not g.members <= f.members or not is_F_boolean(g, f):
                    continue
                for point in f.members:
                    piece = g.members & set(alg.up_set(point))
                    if not piece:
                        bad.append((sorted(g.members), point, "empty"))
                        continue
                    if not any(all(alg.leq(m, s) for s in piece) for m in piece):
                        bad.append((sorted(g.members), point, "no-minimum"))
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:1])


# -- inner automorphism theory ---------------------------------------------------

@claim("lem:fixed", "fixed sets of filter automorphisms are generated traces")
def _lem_fixed(ctx):
    cid = "lem:fixed"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        bad = []
        gfs = coordinate_gfilters(alg)
        for f in gfs:
            for g in gfs:
                phi = filter_automorphism(GFilterPair(f, g))
                want = generated_subalgebra(Filter(alg, f.members & g.members))
                if fixed_set(alg, phi) != want.members:
                    bad.append((sorted(f.members), sorted(g.members)))
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:1])


@claim("lem:DeltaFixed",
       "antifixed sets are generated complement traces")
def _lem_delta_fixed(ctx):
    cid = "lem:DeltaFixed"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        one = alg.one
        bad = []
        gfs = coordinate_gfilters(alg)
        for f in gfs:
            for g in gfs:
                phi = filter_automorphism(GFilterPair(f, g))
                inter = Filter(alg, f.members & g.members)
                comp = impl_elem(inter, f)
                mirror = {alg.delta(one, x) for x in g.members} & f.members
                if mirror != comp.members:
                    bad.append(("mirror-identity", sorted(f.members),
                                sorted(g.members)))
                    continue
                anti = frozenset(x for x in alg.elements()
                                 if phi.perm[x] == alg.delta(one, x))
                want = generated_subalgebra(comp).members
                if anti != want:
                    bad.append(("antifixed", sorted(f.members),
                                sorted(g.members)))
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:1])


@claim("cor:intersect", "fixed and mirror sets meet only at the top")
def _cor_intersect(ctx):
    cid = "cor:intersect"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        bad = []
        for phi in inner_group(alg):
            if fixed_set(alg, phi) & d_set(alg, phi) != {alg.one}:
                bad.append(phi.perm)
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:1])


@claim("cor:metsExist", "fixed elements meet mirrored mirror-set elements")
def _cor_mets_exist(ctx):
    cid = "cor:metsExist"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        one = alg.one
        bad = []
        for phi in inner_group(alg):
            fixed = fixed_set(alg, phi)
            mirror = d_set(alg, phi)
            for x in fixed:
                for y in mirror:
                    if alg.meet(x, alg.delta(one, y)) is None:
                        bad.append((phi.perm, x, y))
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:1])


@claim("lem:repsMD", "every element splits uniquely over fixed and mirror")
def _reps_md(ctx):
    cid = "lem:repsMD"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        bad = []
        for phi in inner_group(alg):
            for z in alg.elements():
                try:
                    decompose(alg, phi, z, verify=True)
                except MrkitError as exc:
                    bad.append((phi.perm, z, str(exc)))
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:1])


@claim("lem:gotIt", "the split rebuilds the automorphism pointwise")
def _got_it(ctx):
    cid = "lem:gotIt"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        bad = []
        for phi in inner_group(alg):
            for z in alg.elements():
                try:
                    recover(alg, phi, z)
                except MrkitError as exc:
                    bad.append((phi.perm, z, str(exc)))
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:1])


@claim("remark:mirror-join",
       "the mirror join lands in the fixed set only at the top")
def _mirror_join(ctx):
    cid = "remark:mirror-join"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        one = alg.one
        bad = []
        strict_reading_fails = []
        for phi in inner_group(alg):
            fixed = fixed_set(alg, phi)
            for x in alg.elements():
                value = alg.join(x, alg.delta(one, phi.perm[x]))
                if value in fixed and value != one:
                    bad.append((phi.perm, x))
                if not phi.is_identity() and value in fixed and x != one:
                    strict_reading_fails.append(x)
        witness = None
        if strict_reading_fails:
            witness = {"strict-reading-counterexamples":
                       sorted(set(strict_reading_fails))[:3]}
        yield _ok(cid, name, witness) if not bad else _bad(cid, name, bad[:1])


@claim("thm:MPhiIsGood", "distinct inner automorphisms have distinct fixed sets")
def _mphi_good(ctx):
    cid = "thm:MPhiIsGood"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        inner = inner_group(alg)
        sets = {fixed_set(alg, phi) for phi in inner}
        yield (_ok if len(sets) == len(inner) else _bad)(cid, name)


@claim("thm:recoveryII",
       "every Boolean filter of the collapse recovers an inner automorphism")
def _recovery(ctx):
    cid = "thm:recoveryII"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        q = quotient_C(alg)
        whole = improper_filter(q.algebra)
        bad = []
        for g in all_filters(q.algebra):
            if not is_F_boolean(g, whole):
                continue
            try:
                phi = phi_from_boolean_filter(alg, g)
                if not phi.compose(phi).is_identity():
                    bad.append((sorted(g.members), "not involution"))
            except MrkitError as exc:
                bad.append((sorted(g.members), str(exc)))
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:1])


@claim("thm:isoGroups",
       "inner automorphisms biject with Boolean filters as a group")
def _iso_groups(ctx):
    cid = "thm:isoGroups"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue

        def run(alg=alg):
            omega(alg)
            mirror = build_I(quotient_C(alg).algebra)
            if len(inner_group(mirror)) != len(inner_group(alg)):
                raise MrkitError("inner group sizes differ across the mirror")
        yield _guard(cid, name, run)


@claim("roundtrip:omega", "recovery and the filter map invert each other")
def _roundtrip_omega(ctx):
    cid = "roundtrip:omega"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        bad = []
        for phi, filt in omega(alg):
            back = phi_from_boolean_filter(alg, filt)
            if back.perm != phi.perm:
                bad.append(sorted(filt.members))
        q = quotient_C(alg)
        whole = improper_filter(q.algebra)
        for g in all_filters(q.algebra):
            if not is_F_boolean(g, whole):
                continue
            phi = phi_from_boolean_filter(alg, g)
            image = frozenset(q.eta[x] for x in fixed_set(alg, phi))
            if image != g.members:
                bad.append(sorted(g.members))
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:1])


# -- presentations and factoring ---------------------------------------------------

@claim("lem:phiE", "filter presentations restrict to the natural embedding")
def _phi_e(ctx):
    cid = "lem:phiE"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        bad = []
        for f in coordinate_gfilters(alg):
            try:
                f_presentation(alg, f)
            except MrkitError as exc:
                bad.append((sorted(f.members), str(exc)))
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:1])


@claim("thm:factoring",
       "every automorphism factors through a filter automorphism")
def _factoring(ctx):
    cid = "thm:factoring"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        base = coordinate_gfilters(alg)[0]
        bad = []
        for phi in enumerate_aut(alg):
            try:
                image, chi = factor_automorphism(alg, base, phi)
                if is_inner(alg, phi) and any(
                        v != i for i, v in enumerate(chi.map)):
                    bad.append((phi.perm, "inner with nontrivial base part"))
            except MrkitError as exc:
                bad.append((phi.perm, str(exc)))
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:1])


@claim("xi:group-iso", "the transport to the filter is a group isomorphism")
def _xi_group(ctx):
    cid = "xi:group-iso"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        q = quotient_C(alg)
        base = coordinate_gfilters(alg)[0]
        quotient_autos = enumerate_impl_aut(q.algebra)
        images = {}
        bad = []
        for alpha in quotient_autos:
            images[alpha.map] = Xi(alg, base, alpha).map
        if len(set(images.values())) != len(images):
            bad.append("not injective")
        for a1 in quotient_autos:
            for a2 in quotient_autos:
                composed = tuple(a1.map[v] for v in a2.map)
                chi1, chi2 = images[a1.map], images[a2.map]
                if images[composed] != tuple(chi1[v] for v in chi2):
                    bad.append(("hom", a1.map, a2.map))
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:2])


@claim("thm:present", "descent along presentations yields generating filters")
def _thm_present(ctx):
    cid = "thm:present"
    for mr, name, alg in _mr_or_skip(ctx, cid):
        if not mr:
            yield _skip(cid, name, "not MR")
            continue
        minimal = alg.minimal_elements
        seqs = [(a,) for a in minimal]
        seqs += [(a, b) for a in minimal for b in minimal if a != b]
        seqs += [(a, e) for a in minimal for e in alg.elements()
                 if len(alg.down_set(e)) == 3]
        bad = []
        for seq in seqs:
            if not presentation_check(alg, seq):
                continue
            try:
                filt = gfilter_from_presentation(alg, seq)
                if not is_gfilter(filt):
                    bad.append(seq)
            except MrkitError as exc:
                bad.append((seq, str(exc)))
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:2])


@claim("thm:localization",
       "seeded closures are preserved, presented, upward-closed MR",
       "global")
def _thm_localization(ctx):
    cid = "thm:localization"
    target = next((alg for name, alg in ctx.algebras if name == "C3"), None)
    if target is None:
        yield _skip(cid, "global", "no C3 instance in context")
        return
    rng = random.Random(ctx.seed)
    autos = enumerate_aut(target)
    bad = []
    for i in range(10):
        xs = rng.sample(range(target.size), rng.randint(1, 2))
        gens = [autos[rng.randrange(len(autos))]
                for _ in range(rng.randint(0, 2))]
        try:
            localize_closure(target, xs, gens)
        except MrkitError as exc:
            bad.append((i, xs, str(exc)))
    yield _ok(cid, "global", {"instances": 10}) if not bad else _bad(
        cid, "global", bad[:2])


# -- functors --------------------------------------------------------------------

@claim("thm:isoIota", "the collapse of the pair algebra is the base", "global")
def _iso_iota(ctx):
    cid = "thm:isoIota"
    from .corpus import b2, b3, i3
    instances = [("B2", b2()), ("B3", b3()), ("I3", i3())]
    instances += [(impl.name, impl)
                  for impl in seeded_implication_algebras(ctx.seed, 5)]
    for name, impl in instances:
        yield _guard(cid, name, lambda impl=impl: iota(impl))


@claim("nat:e", "the base embedding commutes with lifted maps", "global")
def _nat_e(ctx):
    cid = "nat:e"
    from .corpus import b2, b3, i3
    bad = []
    checked = 0
    for name, impl in (("B2", b2()), ("B3", b3()), ("I3", i3())):
        for alpha in enumerate_impl_aut(impl):
            lifted = functor_I_hom(alpha)
            for x in impl.elements():
                checked += 1
                if lifted.map[embed_e_index(impl, x)] != embed_e_index(
                        impl, alpha.map[x]):
                    bad.append((name, x))
    base = b2()
    sub = implication_subalgebra(base, {1, 3}, name="[p,1]")
    incl = ImplicationHom(sub, base, tuple(sorted({1, 3})))
    lifted = functor_I_hom(incl)
    for i in sub.elements():
        checked += 1
        if lifted.map[embed_e_index(sub, i)] != embed_e_index(base, incl.map[i]):
            bad.append(("inclusion", i))
    yield _ok(cid, "global", {"checked": checked}) if not bad else _bad(
        cid, "global", bad[:3])


@claim("nat:eta", "the collapse projection commutes with maps")
def _nat_eta(ctx):
    cid = "nat:eta"
    for name, alg in ctx.algebras:
        q = quotient_C(alg)
        bad = []
        for phi in enumerate_aut(alg):
            collapsed = functor_C_hom(phi.as_hom())
            for x in alg.elements():
                if collapsed.map[q.eta[x]] != q.eta[phi.perm[x]]:
                    bad.append((phi.perm, x))
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:1])


@claim("eq:iotaKappa", "collapsing the pair unit gives the canonical map")
def _iota_kappa(ctx):
    cid = "eq:iotaKappa"
    for name, alg in ctx.algebras:
        yield _guard(cid, name, lambda alg=alg: kappa(alg))


@claim("kappa:not-iso", "the pair unit fails to be an isomorphism somewhere",
       "global")
def _kappa_witness(ctx):
    cid = "kappa:not-iso"
    witnesses = []
    for name, alg in ctx.algebras:
        k = kappa(alg)
        if not (k.is_bijective() and check_hom(k).passed):
            witnesses.append(name)
    yield (_ok if witnesses else _bad)(cid, "global", witnesses)


@claim("e:embedding", "the pair embedding preserves join, implication, mirror",
       "global")
def _e_embedding(ctx):
    cid = "e:embedding"
    from .corpus import b2, b3, i3
    bad = []
    for name, impl in (("B2", b2()), ("B3", b3()), ("I3", i3())):
        interval = build_I(impl)
        idx = pair_index(impl)
        one = impl.one
        for x in impl.elements():
            for y in impl.elements():
                ex, ey = idx[(one, x)], idx[(one, y)]
                if interval.join(ex, ey) != idx[(one, impl.join(x, y))]:
                    bad.append((name, "join", x, y))
                if interval.implies(ex, ey) != idx[(one, impl.implies(x, y))]:
                    bad.append((name, "implies", x, y))
        for i, p in enumerate(pair_carrier(impl)):
            if interval.delta(interval.one, i) != idx[(p.second, p.first)]:
                bad.append((name, "mirror", i))
    yield _ok(cid, "global") if not bad else _bad(cid, "global", bad[:3])


@claim("quotient:shape", "collapses have the expected implication shape",
       "global")
def _quotient_shape(ctx):
    cid = "quotient:shape"
    from .corpus import b2, b3, i3
    targets = {"C1": None, "C2": b2(), "C3": b3(), "N5": i3()}
    for name, alg in ctx.algebras:
        if name not in targets or targets[name] is None:
            continue
        q = quotient_C(alg)
        ok = find_impl_isomorphism(q.algebra, targets[name]) is not None
        yield (_ok if ok else _bad)(cid, name)


@claim("quotient:not-implies-congruence",
       "the equivalence is not a congruence for the implication term",
       "global")
def _quotient_regression(ctx):
    cid = "quotient:not-implies-congruence"
    alg = next((a for n, a in ctx.algebras if n == "C2"), None)
    if alg is None:
        yield _skip(cid, "global", "no C2 instance in context")
        return
    for x in alg.elements():
        for x2 in alg.elements():
            if not alg.sim(x, x2):
                continue
            for y in alg.elements():
                if not alg.sim(alg.implies(x, y), alg.implies(x2, y)):
                    yield _ok(cid, "global", {"witness": (x, x2, y)})
                    return
    yield _bad(cid, "global", "no counterexample found")


@claim("thm:incl", "collapse commutes with upward-closed inclusions")
def _thm_incl(ctx):
    cid = "thm:incl"
    for name, alg in ctx.algebras:
        subs = _upward_closed_instances(alg)
        bad = []
        for members in subs:
            rep = inclusion_collapse(alg, members, ctx.witness_policy)
            if not rep.passed:
                bad.append((sorted(members), list(rep.violations)))
        yield _ok(cid, name, {"subalgebras": len(subs)}) if not bad else _bad(
            cid, name, bad[:1])


@claim("cor:restrict", "collapse of a restriction is the restricted collapse")
def _cor_restrict(ctx):
    cid = "cor:restrict"
    for name, alg in ctx.algebras:
        q = quotient_C(alg)
        bad = []
        for members in _upward_closed_instances(alg):
            sub = Subalgebra(alg, members)
            q_sub = quotient_C(sub.algebra)
            for phi in enumerate_aut(alg):
                collapsed = functor_C_hom(phi.as_hom())
                c_restricted = functor_C_hom(restriction_hom(phi.as_hom(), sub))
                for i in sub.algebra.elements():
                    x = sub.to_parent(i)
                    via_sub = c_restricted.map[q_sub.eta[i]]
                    via_amb = collapsed.map[q.eta[x]]
                    if via_sub != via_amb:
                        bad.append((sorted(members), phi.perm, x))
        yield _ok(cid, name) if not bad else _bad(cid, name, bad[:1])


@claim("lem:collapseDewt",
       "upward-closed subalgebras are determined by their collapses")
def _collapse_dewt(ctx):
    cid = "lem:collapseDewt"
    for name, alg in ctx.algebras:
        q = quotient_C(alg)
        subs = _upward_closed_instances(alg)
        bad = []
        for m1 in subs:
            c1 = {q.eta[x] for x in m1}
            for m2 in subs:
                c2 = {q.eta[x] for x in m2}
                if (m1 == m2) != (c1 == c2):
                    bad.append((sorted(m1), sorted(m2)))
        yield _ok(cid, name, {"subalgebras": len(subs)}) if not bad else _bad(
            cid, name, bad[:1])


def _upward_closed_instances(alg: CubicAlgebra) -> list[frozenset]:
    if alg.size <= 16:
        return list(upward_closed_subalgebras(alg))
    # large instances: use localizations and fixed sets, all upward closed
    out = {frozenset(range(alg.size))}
    for a in alg.elements():
        out.add(frozenset(localize(alg, a).members))
    if check_mr_axiom(alg).passed:
        for phi in inner_group(alg):
            out.add(fixed_set(alg, phi))
    return sorted(out, key=sorted)


# -- corpus profile -----------------------------------------------------------------

@claim("corpus:mr-profile", "named corpus instances have the expected verdicts",
       "global")
def _corpus_profile(ctx):
    cid = "corpus:mr-profile"
    expected = {"C1": True, "C2": True, "C3": True,
                "FA1": True, "FA2": True, "N5": False}
    for name, alg in ctx.algebras:
        if name not in expected:
            continue
        ok = (check_cubic_axioms(alg).passed
              and check_mr_axiom(alg).passed == expected[name])
        if name == "N5" and ok:
            rep = check_mr_axiom(alg, "all")
            pair = (alg.labels.index("<1,p>"), alg.labels.index("<1,q>"))
            hits = [(x, a, b) for _, (x, a, b) in rep.violations
                    if (a, b) == pair]
            ok = bool(hits) and all(
                replay_witness(alg, "mr", w) for w in hits)
        yield (_ok if ok else _bad)(cid, name)


def run_claims(ctx: VerifyContext,
               claim_ids: list[str] | None = None) -> list[ClaimResult]:
    """Run the selected claims (all by default) and sort the results."""
    if claim_ids is None:
        selected = list(CLAIMS)
    else:
        unknown = [c for c in claim_ids if c not in CLAIMS]
        if unknown:
            raise KeyError(f"unknown claim ids: {unknown}")
        selected = list(claim_ids)
    results: list[ClaimResult] = []
    for cid in selected:
        spec = CLAIMS[cid]
        if spec.scope == "global" and not ctx.include_global:
            continue
        try:
            results.extend(spec.run(ctx))
        except MrkitError as exc:
            results.append(ClaimResult(cid, "error", "fail", str(exc)))
    results.sort(key=lambda r: (r.claim_id, r.instance))
    return results
