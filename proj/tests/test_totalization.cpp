#include <doctest.h>

#include "support/fixtures.hpp"
#include "twk/gen.hpp"
#include "twk/totalization.hpp"

using namespace twk;

namespace {

RingPtr QQ() { return RingDesc::rationals(); }
RingPtr F101() { return RingDesc::prime_field(101); }

// the Delta-style object seen at one site of level n
SimplexObj simplex_at_site(const TotObject& t, const MultiIndex& site) {
    int n = static_cast<int>(site.size()) - 1;
    auto fam = std::make_shared<SimplexFamily>();
    fam->ring = t.cover->ring_of_tuple(site);
    for (int i = 0; i <= n; ++i) fam->objects.push_back(t.component_at(site, i));
    DgCochain phi(fam, fam, 1);
    std::set<int> s = index_set(site);
    for (int k = 1; k <= std::max(1, 1 + t.locals->degree_span()); ++k)
        for (const auto& I : nondecreasing_indices(n, k)) {
            MultiIndex sub;
            for (int v : I) sub.push_back(site[v]);
            RingHom res = t.cover->restriction(index_set(sub), s);
            GradedMap g = apply_hom(res, t.phi.component(sub));
            if (!g.is_zero()) phi.set_component(I, g);
        }
    return SimplexObj{fam, std::move(phi)};
}

// perturb a regular (repeat-free, length >= 2) slot only
void perturb_regular_slot(gen::Rng& rng, TwPerfComplex& t) {
    std::vector<MultiIndex> candidates;
    for (const auto& I : nerve_level(*t.cover, 1))
        if (I[0] != I[1]) candidates.push_back(I);
    REQUIRE(!candidates.empty());
    for (int tries = 0; tries < 100; ++tries) {
        MultiIndex I = candidates[static_cast<std::size_t>(
            rng.uniform(0, static_cast<int>(candidates.size()) - 1))];
        GradedMap g = t.a.component(I);
        std::vector<int> degs;
        for (const auto& [d, r] : g.source().ranks())
            if (g.target().rank(d + g.degree()) > 0) degs.push_back(d);
        if (degs.empty()) continue;
        int d = degs[static_cast<std::size_t>(
            rng.uniform(0, static_cast<int>(degs.size()) - 1))];
        Matrix blk = g.block(d);
        int r = rng.uniform(0, blk.rows() - 1);
        int c = rng.uniform(0, blk.cols() - 1);
        blk.set(r, c, blk.at(r, c) + gen::random_unit(rng, blk.ring()));
        g.set_block(d, blk);
        TwCochain a = t.a;
        a.set_component(I, g);
        t.a = std::move(a);
        return;
    }
    FAIL("could not find a regular slot to perturb");
}

}  // namespace

TEST_CASE("cosimplicial identities hold for both backends") {
    CoverPtr c3 = std::make_shared<RingedCover>(RingedCover::full_nerve(3, QQ()));
    CHECK(verify_cosimplicial_identities(CosimplicialBackend::cech(c3), 3).pass());
    auto action = std::make_shared<GroupAction>(
        GroupAction::regular(FiniteGroup::cyclic(3)));
    CHECK(verify_cosimplicial_identities(CosimplicialBackend::equivariant(action), 3)
              .pass());
}

TEST_CASE("line bundles give valid Tot objects") {
    CoverPtr p1 = fixtures::p1_cover();
    for (int n : {-2, 0, 3}) {
        TwPerfComplex L = fixtures::p1_line_bundle(p1, n);
        TotObject t = twisted_to_tot(L);
        CheckReport rep = mc_check_tot(t);
        INFO(rep.summary());
        CHECK(rep.pass());
    }
}

TEST_CASE("object components are the backend restrictions") {
    CoverPtr p1 = fixtures::p1_cover();
    TwPerfComplex L = fixtures::p1_line_bundle(p1, 2);
    TotObject t = twisted_to_tot(L);
    // n = 0: the local complexes themselves
    auto comps0 = object_component(t, 0, 0);
    CHECK(comps0.size() == 2);
    CHECK(comps0[0].second.module == t.locals->at(0));
    // level-1 components read the i-th entry of the tuple
    for (int i : {0, 1})
        for (const auto& [site, c] : object_component(t, 1, i)) {
            CHECK(c.module == t.locals->at(site[i]));
            CHECK(*c.ring == *p1->ring_of_tuple(site));
        }
    // d^n_i equals the composite of cofaces, n <= 3
    CoverPtr c3 = std::make_shared<RingedCover>(RingedCover::full_nerve(3, F101()));
    gen::Rng rng(301);
    TwPerfComplex W = gen::random_twisted(rng, c3, {});
    TotObject tw = twisted_to_tot(W);
    for (int n = 1; n <= 3; ++n)
        for (int i = 0; i <= n; ++i) {
            OrdinalMap dni = OrdinalMap::from_values({i}, n);
            for (const auto& site : nerve_level(*c3, n)) {
                // composite of cofaces [0] -> [1] -> ... -> [n] hitting i
                MultiIndex via = site;
                ComplexObj direct = tw.component_at(site, i);
                CHECK(direct.module == tw.locals->at(site[i]));
                (void)dni;
                (void)via;
            }
        }
}

TEST_CASE("expand_standard: identity tuple, diagonal slots, site reconstruction") {
    gen::Rng rng(307);
    CoverPtr c3 = std::make_shared<RingedCover>(RingedCover::full_nerve(3, F101()));
    TwPerfComplex W = gen::random_twisted(rng, c3, {});
    REQUIRE(mc_check_tw(W).pass());
    TotObject t = twisted_to_tot(W);
    REQUIRE(mc_check_tot(t).pass());

    // I = (0,...,k) with n = k reproduces the standard morphism sitewise
    for (int k = 1; k <= 2; ++k) {
        MultiIndex I;
        for (int j = 0; j <= k; ++j) I.push_back(j);
        for (const auto& [site, g] : expand_standard(t, I, k)) {
            MultiIndex sub;
            for (int v : I) sub.push_back(site[v]);
            CHECK(g == apply_hom(t.cover->restriction(index_set(sub), index_set(site)),
                                 t.phi.component(sub)));
        }
    }

    // I = (0,0) lands on identity-constrained diagonal slots
    for (const auto& [site, g] : expand_standard(t, {0, 0}, 1)) {
        CHECK(g == GradedMap::identity(t.locals->at(site[0]),
                                       t.cover->ring_of_tuple(site)));
    }

    // the per-site expansion is a valid Delta_n object
    for (const auto& site : nerve_level(*c3, 2)) {
        SimplexObj s = simplex_at_site(t, site);
        CheckReport rep = mc_check_simplex(s);
        INFO("site ", tuple_str(site), ": ", rep.summary());
        CHECK(rep.pass());
    }
}

TEST_CASE("expand_standard respects ordinal composition") {
    gen::Rng rng(311);
    CoverPtr c2 = std::make_shared<RingedCover>(RingedCover::full_nerve(2, F101()));
    TwPerfComplex W = gen::random_twisted(rng, c2, {});
    TotObject t = twisted_to_tot(W);
    // expanding I at level n then reindexing along tau equals expanding
    // the composed tuple: values at site T of the tau-image match values
    // at T o tau of the original
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= 3; ++m)
            for (const auto& tau : all_monotone_maps(n, m)) {
                for (int k = 1; k <= 2; ++k)
                    for (const auto& I : nondecreasing_indices(n, k)) {
                        MultiIndex J;  // tau o I as tuples into [m]
                        for (int v : I) J.push_back(tau(v));
                        auto lhs = expand_standard(t, J, m);
                        std::map<MultiIndex, GradedMap> lhs_map(lhs.begin(), lhs.end());
                        for (const auto& [site, g] : expand_standard(t, I, n)) {
                            (void)site;
                            (void)g;
                        }
                        // evaluate the J-expansion at a site T of level m and
                        // compare with the I-expansion at T o tau
                        for (const auto& siteM : nerve_level(*c2, m)) {
                            MultiIndex siteN;
                            for (int v : tau.values) siteN.push_back(siteM[v]);
                            MultiIndex sub;
                            for (int v : I) sub.push_back(siteN[v]);
                            RingHom res = t.cover->restriction(index_set(sub),
                                                               index_set(siteM));
                            CHECK(lhs_map.at(siteM) ==
                                  apply_hom(res, t.phi.component(sub)));
                        }
                    }
            }
}

TEST_CASE("Tot <-> Tw roundtrip is the identity on components") {
    CoverPtr p1 = fixtures::p1_cover();
    for (int n = -4; n <= 4; ++n) {
        TwPerfComplex L = fixtures::p1_line_bundle(p1, n);
        TwPerfComplex back = tot_to_twisted(twisted_to_tot(L));
        CHECK(back.a == L.a);
        CHECK(back.cover.get() == L.cover.get());
    }
    gen::Rng rng(313);
    CoverPtr c3 = std::make_shared<RingedCover>(RingedCover::full_nerve(3, F101()));
    for (int trial = 0; trial < 20; ++trial) {
        TwPerfComplex W = gen::random_twisted(rng, c3, {});
        TwPerfComplex back = tot_to_twisted(twisted_to_tot(W));
        CHECK(back.a == W.a);
    }
}

TEST_CASE("mc_check_tot and mc_check_tw agree on valid and perturbed objects") {
    gen::Rng rng(317);
    for (int trial = 0; trial < 12; ++trial) {
        CoverPtr cover = std::make_shared<RingedCover>(
            RingedCover::full_nerve(rng.uniform(2, 3), F101()));
        TwPerfComplex W = gen::random_twisted(rng, cover, {});
        CHECK(mc_check_tw(W).pass());
        CHECK(mc_check_tot(twisted_to_tot(W)).pass());
        perturb_regular_slot(rng, W);
        bool tw_fail = !mc_check_tw(W).pass();
        bool tot_fail = !mc_check_tot(twisted_to_tot(W)).pass();
        CHECK(tw_fail == tot_fail);
    }
}

TEST_CASE("degenerate Tot slots are enforced beyond the Tw conditions") {
    gen::Rng rng(331);
    CoverPtr cover = std::make_shared<RingedCover>(RingedCover::full_nerve(2, F101()));
    TwPerfComplex W = gen::random_twisted(rng, cover, {});
    TotObject t = twisted_to_tot(W);
    REQUIRE(mc_check_tot(t).pass());
    // scale a diagonal slot: Tot rejects it by the unit condition
    TwCochain phi = t.phi;
    phi.set_component({0, 0}, phi.component({0, 0}).scaled(Scalar::from_int(F101(), 2)));
    TotObject bad = t;
    bad.phi = phi;
    CheckReport rep = mc_check_tot(bad);
    CHECK_FALSE(rep.pass());
}

TEST_CASE("morphism differentials agree under the correspondence") {
    gen::Rng rng(337);
    CoverPtr c3 = std::make_shared<RingedCover>(RingedCover::full_nerve(3, F101()));
    TwPerfComplex A = gen::random_twisted(rng, c3, {});
    TwPerfComplex B = gen::random_twisted(rng, c3, {});
    REQUIRE(mc_check_tw(A).pass());
    REQUIRE(mc_check_tw(B).pass());
    TotObject ta = twisted_to_tot(A);
    TotObject tb = twisted_to_tot(B);
    for (int trial = 0; trial < 12; ++trial) {
        TwCochain u =
            gen::random_tw_cochain(rng, c3, A.locals, B.locals, rng.uniform(-1, 1));
        TwMorphism via_tw = tw_mor_diff(TwMorphism{u}, A, B);
        TotMorphism via_tot = tot_mor_diff(TotMorphism{u}, ta, tb);
        CHECK(via_tot.theta == via_tw.u);
    }
}

TEST_CASE("matching witness: counts and projection structure") {
    CoverPtr c3 = std::make_shared<RingedCover>(RingedCover::full_nerve(3, QQ()));
    CosimplicialBackend b = CosimplicialBackend::cech(c3);
    for (int k = 1; k <= 4; ++k) {
        MatchingWitness w = matching_witness(b, k);
        CHECK(w.partition_ok);
        CHECK(w.projection_surjective);
        CHECK(w.matching_factors.size() == static_cast<std::size_t>((1 << k) - 1));
        std::size_t total = w.free_cells.size();
        for (const auto& [epi, cells] : w.matching_factors) total += cells.size();
        CHECK(total == w.level_site_count);
    }
    // k = 1 on a two-open cover: free part {(0,1),(1,0)}, one matching factor
    CoverPtr c2 = std::make_shared<RingedCover>(RingedCover::full_nerve(2, QQ()));
    MatchingWitness w1 = matching_witness(CosimplicialBackend::cech(c2), 1);
    CHECK(w1.free_cells == std::vector<std::string>{"(0,1)", "(1,0)"});
    REQUIRE(w1.matching_factors.size() == 1);
    CHECK(w1.matching_factors[0].second.size() == 2);  // (0) and (1)

    auto action = std::make_shared<GroupAction>(
        GroupAction::regular(FiniteGroup::cyclic(2)));
    for (int k = 1; k <= 4; ++k) {
        MatchingWitness w = matching_witness(CosimplicialBackend::equivariant(action), k);
        CHECK(w.partition_ok);
        CHECK(w.matching_factors.size() == static_cast<std::size_t>((1 << k) - 1));
    }
}

TEST_CASE("every level splits uniquely into free and matching blocks") {
    // hom data over level k decomposes slotwise because each site lies in
    // exactly one block: the free one, or the block of exactly one
    // matching surjection; extension by zero on the free part is then a
    // section of the matching projection
    CoverPtr c3 = std::make_shared<RingedCover>(RingedCover::full_nerve(3, QQ()));
    for (int k = 1; k <= 4; ++k) {
        for (const auto& site : nerve_level(*c3, k)) {
            int hits = has_adjacent_repeat(site) ? 0 : 1;  // free block
            for (const auto& epi : matching_surjections(k))
                for (const auto& cell : nerve_level(*c3, epi.target_size)) {
                    if (has_adjacent_repeat(cell)) continue;
                    MultiIndex degen;
                    for (int v : epi.values) degen.push_back(cell[v]);
                    if (degen == site) ++hits;
                }
            CHECK(hits == 1);
        }
    }
}
