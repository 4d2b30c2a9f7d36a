import pytest

from mrkit.constructions import implication_subalgebra
from mrkit.errors import NotAFilter, NotSubfilter
from mrkit.filters import (
    Filter,
    all_filters,
    boolean_filter_sum,
    delta_filter,
    filter_join,
    generated_subalgebra,
    gfilters,
    impl_elem,
    impl_join,
    impl_sup,
    improper_filter,
    is_F_boolean,
    is_boolean,
    is_gfilter,
    is_weakly_F_boolean,
    subalgebra_closure,
    trivial_filter,
    up_filter,
)

from conftest import lab


def members_by_label(alg, *labels):
    return frozenset(lab(alg, x) for x in labels)


class TestFilterValidity:
    def test_rejects_empty_and_topless(self, C2):
        with pytest.raises(NotAFilter):
            Filter(C2, frozenset())
        with pytest.raises(NotAFilter):
            Filter(C2, members_by_label(C2, "<1,p>"))

    def test_rejects_open_sets(self, C2):
        with pytest.raises(NotAFilter):
            Filter(C2, members_by_label(C2, "<1,0>", "<1,1>"))

    def test_rejects_meet_escapes(self, C2):
        with pytest.raises(NotAFilter):
            Filter(C2, members_by_label(C2, "<1,p>", "<1,q>", "<1,1>"))

    def test_parallel_edges_form_a_filter(self, C2):
        filt = Filter(C2, members_by_label(C2, "<1,p>", "<p,1>", "<1,1>"))
        assert len(filt) == 3


class TestGenerated:
    def test_vertex_filter_generates(self, C2):
        filt = up_filter(C2, lab(C2, "<1,0>"))
        assert generated_subalgebra(filt).members == frozenset(C2.elements())
        assert is_gfilter(filt)

    def test_trivial_filter_generates_only_top(self, C2):
        assert generated_subalgebra(trivial_filter(C2)).members == {C2.one}

    def test_single_element_algebra(self):
        from mrkit.constructions import boolean_algebra, build_I
        one = build_I(boolean_algebra(0))
        assert is_gfilter(trivial_filter(one))

    def test_edge_filter_generates_three_elements(self, C2):
        filt = up_filter(C2, lab(C2, "<1,p>"))
        got = generated_subalgebra(filt).members
        assert got == members_by_label(C2, "<1,p>", "<p,1>", "<1,1>")
        assert not is_gfilter(filt)

    def test_generated_matches_closure_route(self, C2, C3):
        for alg in (C2, C3):
            for filt in all_filters(alg):
                assert generated_subalgebra(filt).members == \
                    subalgebra_closure(alg, filt.members)


class TestFilterJoin:
    def test_identity_and_idempotence(self, C2):
        g = up_filter(C2, lab(C2, "<1,p>"))
        assert filter_join(g, trivial_filter(C2)).members == g.members
        assert filter_join(g, g).members == g.members

    def test_edges_join_to_vertex_filter(self, C2):
        g = up_filter(C2, lab(C2, "<1,p>"))
        h = up_filter(C2, lab(C2, "<1,q>"))
        assert filter_join(g, h).members == \
            up_filter(C2, lab(C2, "<1,0>")).members


class TestImplications:
    def test_elementwise_example(self, C2):
        g = up_filter(C2, lab(C2, "<1,p>"))
        f = up_filter(C2, lab(C2, "<1,0>"))
        assert impl_elem(g, f).members == members_by_label(C2, "<1,q>", "<1,1>")
        assert impl_elem(trivial_filter(C2), f).members == f.members
        assert impl_elem(f, f).members == {C2.one}

    def test_three_routes_coincide_on_the_square(self, C2):
        filts = all_filters(C2)
        for f in filts:
            for g in filts:
                if not g.members <= f.members:
                    continue
                a = impl_sup(g, f).members
                b = impl_join(g, f).members
                c = impl_elem(g, f).members
                assert a == b == c

    def test_sup_worked_example(self, C2):
        g = up_filter(C2, lab(C2, "<1,p>"))
        f = up_filter(C2, lab(C2, "<1,0>"))
        assert impl_sup(g, f).members == up_filter(C2, lab(C2, "<1,q>")).members
        assert impl_sup(f, f).members == {C2.one}
        assert impl_sup(trivial_filter(C2), f).members == f.members

    def test_requires_subfilter(self, C2):
        f = up_filter(C2, lab(C2, "<1,p>"))
        g = up_filter(C2, lab(C2, "<q,p>"))
        with pytest.raises(NotSubfilter):
            impl_sup(g, f)


class TestBooleanFilters:
    def test_examples(self, C2):
        f = up_filter(C2, lab(C2, "<1,0>"))
        g = Filter(C2, members_by_label(C2, "<1,p>", "<1,1>"))
        assert is_F_boolean(g, f)
        assert is_F_boolean(trivial_filter(C2), f)
        assert is_F_boolean(f, f)

    def test_boolean_implies_weakly_boolean(self, C2):
        for f in gfilters(C2):
            for g in all_filters(C2):
                if g.members <= f.members and is_F_boolean(g, f):
                    assert is_weakly_F_boolean(g, f)

    def test_absolute_booleanness(self, C2):
        g = Filter(C2, members_by_label(C2, "<1,p>", "<1,1>"))
        assert is_boolean(g)

    def test_delta_filter_examples(self, C2):
        f = up_filter(C2, lab(C2, "<1,0>"))
        g = Filter(C2, members_by_label(C2, "<1,p>", "<1,1>"))
        assert delta_filter(g, f).members == \
            up_filter(C2, lab(C2, "<q,p>")).members
        assert delta_filter(f, f).members == f.members
        # trivial subfilter: the mirror of the whole filter
        mirrored = delta_filter(trivial_filter(C2), f)
        assert mirrored.members == up_filter(C2, lab(C2, "<0,1>")).members


class TestBooleanFilterSum:
    def test_group_structure_on_the_two_atom_powerset(self, B2):
        whole = improper_filter(B2)
        filts = list(all_filters(B2))
        assert len(filts) == 4
        for g in filts:
            assert boolean_filter_sum(g, whole, B2).members == g.members
            assert boolean_filter_sum(g, g, B2).members == whole.members
            for h in filts:
                assert boolean_filter_sum(g, h, B2).members == \
                    boolean_filter_sum(h, g, B2).members
                for k in filts:
                    left = boolean_filter_sum(boolean_filter_sum(g, h, B2), k, B2)
                    right = boolean_filter_sum(g, boolean_filter_sum(h, k, B2), B2)
                    assert left.members == right.members

    def test_atom_filters_sum_to_the_trivial_filter(self, B2):
        gp = up_filter(B2, 1)
        gq = up_filter(B2, 2)
        assert boolean_filter_sum(gp, gq, B2).members == {B2.one}

    def test_sum_with_trivial_is_the_complement(self, B2):
        gp = up_filter(B2, 1)
        got = boolean_filter_sum(gp, trivial_filter(B2), B2)
        assert got.members == impl_elem(gp, improper_filter(B2)).members

    def test_every_small_filter_is_relatively_boolean(self, B3):
        # observed at desk scale: every filter of every implication
        # subalgebra of the three-atom powerset is Boolean relative to the
        # improper filter, so the rejection path stays defensive
        ambient = implication_subalgebra(B3, set(range(1, B3.size)))
        for g in all_filters(ambient):
            assert is_F_boolean(g, improper_filter(ambient))
        atom = up_filter(ambient, 0)
        assert boolean_filter_sum(atom, atom, ambient).members == \
            improper_filter(ambient).members


class TestEnumeration:
    def test_square_filter_census_matches_brute_force(self, C2):
        brute = set()
        for mask in range(1, 1 << C2.size):
            members = frozenset(x for x in C2.elements() if mask >> x & 1)
            try:
                Filter(C2, members)
            except NotAFilter:
                continue
            brute.add(members)
        assert {f.members for f in all_filters(C2)} == brute
        assert len(brute) == 16

    def test_cube_counts(self, C3):
        assert len(all_filters(C3)) == 64
        assert len(gfilters(C3)) == 27

    def test_cap_override(self, C2, monkeypatch):
        monkeypatch.setenv("MRKIT_MAX_CARRIER", "5")
        all_filters.cache_clear()
        from mrkit.errors import CapExceeded
        with pytest.raises(CapExceeded):
            all_filters(C2)
        monkeypatch.delenv("MRKIT_MAX_CARRIER")
        all_filters.cache_clear()
