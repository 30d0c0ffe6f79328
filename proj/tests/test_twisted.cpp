#include <doctest.h>

#include "support/fixtures.hpp"
#include "twk/gen.hpp"
#include "twk/twisted.hpp"

using namespace twk;

namespace {

RingPtr QQ() { return RingDesc::rationals(); }
RingPtr F101() { return RingDesc::prime_field(101); }
RingPtr LQt() { return RingDesc::laurent(QQ(), {{"t", true}}); }

LocalsPtr random_locals(gen::Rng& rng, const CoverPtr& cover, int min_deg, int max_deg,
                        int max_rank) {
    auto locals = std::make_shared<TwLocals>();
    for (int i = 0; i < cover->size(); ++i)
        locals->modules.push_back(gen::random_module(rng, min_deg, max_deg, max_rank));
    return locals;
}

}  // namespace

TEST_CASE("delta squares to zero and satisfies Leibniz, all backends") {
    for (const RingPtr& ring : {QQ(), F101(), LQt()}) {
        gen::Rng rng(211);
        for (int trial = 0; trial < 25; ++trial) {
            CoverPtr cover = gen::random_cover(rng, rng.uniform(2, 4), ring);
            LocalsPtr E = random_locals(rng, cover, -1, 2, 2);
            TwCochain u = gen::random_tw_cochain(rng, cover, E, E, rng.uniform(0, 2));
            TwCochain v = gen::random_tw_cochain(rng, cover, E, E, rng.uniform(-1, 1));
            CHECK(delta(delta(u)).is_zero());
            TwCochain lhs = delta(tw_compose(u, v));
            TwCochain rhs = tw_compose(delta(u), v);
            TwCochain second = tw_compose(u, delta(v));
            rhs = (u.total_degree() % 2 == 0) ? rhs + second : rhs - second;
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("p=1 delta instance: inner deletion with one minus sign") {
    gen::Rng rng(223);
    CoverPtr cover = std::make_shared<RingedCover>(RingedCover::full_nerve(3, QQ()));
    LocalsPtr E = random_locals(rng, cover, 0, 1, 2);
    TwCochain u(cover, E, E, 1);
    GradedMap g = gen::random_graded_map(rng, E->at(2), E->at(0), 0, QQ());
    u.set_component({0, 2}, g);
    TwCochain du = delta(u);
    CHECK(du.component({0, 1, 2}) == -g);   // delete the inner 1
    CHECK(du.component({0, 2, 2}) == -g);   // delete the inner 2
    CHECK(du.component({0, 0, 2}) == -g);
    CHECK(du.component({0, 2, 1}).is_zero());
}

TEST_CASE("delta kills simplicial degree zero (the sum is empty)") {
    gen::Rng rng(224);
    CoverPtr cover = std::make_shared<RingedCover>(RingedCover::full_nerve(2, QQ()));
    LocalsPtr E = random_locals(rng, cover, 0, 1, 2);
    TwCochain u(cover, E, E, 1);
    for (int i = 0; i < 2; ++i)
        u.set_component({i}, gen::random_graded_map(rng, E->at(i), E->at(i), 1, QQ()));
    CHECK(delta(u).is_zero());
}

TEST_CASE("a transition scaled by a non-unit breaks the checker") {
    CoverPtr p1 = fixtures::p1_cover();
    TwPerfComplex O2 = fixtures::p1_line_bundle(p1, 2);
    REQUIRE(mc_check_tw(O2).pass());
    RingPtr Ru = p1->ring_of_tuple({0, 1});
    Scalar one_plus_u = Scalar::one(Ru) + Scalar::monomial(Ru, {1}, Scalar::one(QQ()));
    TwCochain a = O2.a;
    a.set_component({0, 1}, a.component({0, 1}).scaled(one_plus_u));
    TwPerfComplex bad{O2.cover, O2.locals, a};
    CheckReport rep = mc_check_tw(bad);
    CHECK_FALSE(rep.pass());
    // the damage shows in the k=2 instance at (0,1,0): a_00 no longer
    // equals a_01 a_10 up to homotopy
    CHECK_FALSE(homotopy_relation_check(bad, 0, 1).pass());
}

TEST_CASE("shuffled composition: unit, sign, associativity") {
    gen::Rng rng(227);
    CoverPtr cover = gen::random_cover(rng, 3, F101());
    LocalsPtr E = random_locals(rng, cover, -1, 2, 2);
    TwCochain one = TwCochain::identity(cover, E);
    for (int trial = 0; trial < 20; ++trial) {
        TwCochain u = gen::random_tw_cochain(rng, cover, E, E, rng.uniform(-1, 2));
        CHECK(tw_compose(one, u) == u);
        CHECK(tw_compose(u, one) == u);
    }
    for (int trial = 0; trial < 20; ++trial) {
        TwCochain a = gen::random_tw_cochain(rng, cover, E, E, rng.uniform(-1, 2));
        TwCochain b = gen::random_tw_cochain(rng, cover, E, E, rng.uniform(-1, 2));
        TwCochain c = gen::random_tw_cochain(rng, cover, E, E, rng.uniform(-1, 2));
        CHECK(tw_compose(tw_compose(a, b), c) == tw_compose(a, tw_compose(b, c)));
    }
    // q=1, r=1 introduces the sign -1
    if (cover->in_nerve({0, 1})) {
        TwCochain x(cover, E, E, 2);
        TwCochain y(cover, E, E, 1);
        GradedMap gx = gen::random_graded_map(rng, E->at(1), E->at(0), 1,
                                              cover->ring_of_tuple({0, 1}));
        GradedMap gy = gen::random_graded_map(rng, E->at(1), E->at(1), 0,
                                              cover->ring_of_tuple({1}));
        x.set_component({0, 1}, gx);
        y.set_component({1}, gy);
        // y's component sits on the singleton, so restriction is needed
        TwCochain xy = tw_compose(x, y);
        GradedMap want = -graded_compose(
            gx, apply_hom(cover->restriction({1}, {0, 1}), gy));
        // sign (-1)^{q r} with q = 1, r = 0 is +1 here; use a pair tuple for r = 1
        TwCochain y2(cover, E, E, 1);
        GradedMap gy2 = gen::random_graded_map(rng, E->at(1), E->at(1), 0,
                                               cover->ring_of_tuple({1, 1}));
        y2.set_component({1, 1}, gy2);
        TwCochain xy2 = tw_compose(x, y2);
        CHECK(xy2.component({0, 1, 1}) == -graded_compose(gx, gy2));
        (void)xy;
        (void)want;
    }
}

TEST_CASE("line bundles: constructor, validation, failure modes") {
    CoverPtr p1 = fixtures::p1_cover();
    TwPerfComplex O3 = fixtures::p1_line_bundle(p1, 3);
    CHECK(mc_check_tw(O3).pass());
    TwPerfComplex O0 = fixtures::p1_line_bundle(p1, 0);
    CHECK(mc_check_tw(O0).pass());

    // non-unit transition: 1 + u is rejected outright
    RingPtr Ru = p1->ring_of_tuple({0, 1});
    Scalar bad = Scalar::one(Ru) + Scalar::monomial(Ru, {1}, Scalar::one(QQ()));
    CHECK_THROWS_AS(line_bundle(p1, {{{0, 1}, bad}}), std::invalid_argument);

    // cocycle failure on a three-open cover
    CoverPtr c3 = std::make_shared<RingedCover>(RingedCover::full_nerve(3, QQ()));
    auto q = [&](int k) { return Scalar::from_int(QQ(), k); };
    CHECK_THROWS_AS(line_bundle(c3, {{{0, 1}, q(2)}, {{1, 2}, q(3)}, {{0, 2}, q(5)}}),
                    std::invalid_argument);
    TwPerfComplex ok =
        line_bundle(c3, {{{0, 1}, q(2)}, {{1, 2}, q(3)}, {{0, 2}, q(6)}});
    CHECK(mc_check_tw(ok).pass());
}

TEST_CASE("zero-module twisted complex passes") {
    CoverPtr cover = std::make_shared<RingedCover>(RingedCover::full_nerve(2, QQ()));
    auto locals = std::make_shared<TwLocals>();
    locals->modules.assign(2, GradedModule());
    TwPerfComplex t{cover, locals, TwCochain(cover, locals, locals, 1)};
    CHECK(mc_check_tw(t).pass());
}

TEST_CASE("the k=2 Maurer-Cartan instance is the Cech cocycle for strict data") {
    // strictly multiplicative units, zero differentials: the only nonzero
    // residual terms at (i,j,k) are -a_ik + a_ij a_jk
    gen::Rng rng(229);
    CoverPtr c3 = std::make_shared<RingedCover>(RingedCover::full_nerve(3, F101()));
    auto locals = std::make_shared<TwLocals>();
    locals->modules.assign(3, GradedModule(std::map<int, int>{{0, 1}}));
    TwCochain a(c3, locals, locals, 1);
    std::map<std::pair<int, int>, Scalar> g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Scalar v = gen::random_unit(rng, F101());
            if (i == j) v = Scalar::one(F101());
            g[{i, j}] = v;
            GradedMap m(locals->at(j), locals->at(i), 0, F101());
            Matrix blk(F101(), 1, 1);
            blk.set(0, 0, v);
            m.set_block(0, blk);
            a.set_component({i, j}, m);
        }
    TwPerfComplex t{c3, locals, a};
    TwCochain residual = delta(t.a) + tw_compose(t.a, t.a);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                Scalar want = g[{i, j}] * g[{j, k}] - g[{i, k}];
                Matrix got = residual.component({i, j, k}).block(0);
                CHECK(got.at(0, 0) == want);
            }
}

TEST_CASE("random gauged twisted complexes satisfy Maurer-Cartan, all backends") {
    for (const RingPtr& ring : {QQ(), F101(), LQt()}) {
        gen::Rng rng(233);
        for (int trial = 0; trial < 15; ++trial) {
            CoverPtr cover = gen::random_cover(rng, rng.uniform(2, 4), ring);
            gen::RandomTwistedOptions opt;
            opt.max_deg = ring->kind == RingKind::Laurent ? 1 : 2;
            opt.min_deg = ring->kind == RingKind::Laurent ? 0 : -1;
            TwPerfComplex t = gen::random_twisted(rng, cover, opt);
            CheckReport rep = mc_check_tw(t);
            INFO(rep.summary());
            CHECK(rep.pass());
        }
    }
}

TEST_CASE("morphism differential: identity closed, k=1 strict formula, d^2 = 0") {
    gen::Rng rng(239);
    CoverPtr cover = gen::random_cover(rng, 3, F101());
    gen::RandomTwistedOptions opt;
    TwPerfComplex t = gen::random_twisted(rng, cover, opt);
    REQUIRE(mc_check_tw(t).pass());
    TwMorphism id{TwCochain::identity(cover, t.locals)};
    CHECK(tw_mor_diff(id, t, t).u.is_zero());

    // degree-0 morphism with only f^{0,0} slots
    TwPerfComplex s = gen::random_twisted(rng, cover, opt);
    REQUIRE(mc_check_tw(s).pass());
    TwCochain f(cover, s.locals, t.locals, 0);
    for (int i = 0; i < cover->size(); ++i)
        f.set_component({i}, gen::random_graded_map(rng, s.locals->at(i),
                                                    t.locals->at(i), 0, F101()));
    TwMorphism df = tw_mor_diff(TwMorphism{f}, s, t);
    for (const auto& I : nerve_level(*cover, 1)) {
        int i = I[0], j = I[1];
        auto res = [&](int x) { return cover->restriction({x}, index_set(I)); };
        GradedMap fi = apply_hom(res(i), f.component({i}));
        GradedMap fj = apply_hom(res(j), f.component({j}));
        GradedMap want = graded_compose(t.a.component(I), fj) -
                         graded_compose(fi, s.a.component(I));
        CHECK(df.u.component(I) == want);
    }

    // d o d = 0 on random morphisms of several degrees
    for (int trial = 0; trial < 10; ++trial) {
        TwCochain u =
            gen::random_tw_cochain(rng, cover, s.locals, t.locals, rng.uniform(-1, 2));
        TwMorphism dd = tw_mor_diff(tw_mor_diff(TwMorphism{u}, s, t), s, t);
        CHECK(dd.u.is_zero());
    }
}

TEST_CASE("perturbation detection: residual, non-degeneracy or probe") {
    gen::Rng rng(241);
    int caught = 0, trials = 25;
    for (int trial = 0; trial < trials; ++trial) {
        CoverPtr cover = gen::random_cover(rng, rng.uniform(2, 3), F101());
        TwPerfComplex t = gen::random_twisted(rng, cover, {});
        REQUIRE(mc_check_tw(t).pass());
        gen::perturb_entry(rng, t);
        bool detected = !mc_check_tw(t).pass();
        for (int p = 0; p < 6 && !detected; ++p) {
            TwCochain u = gen::random_tw_cochain(rng, cover, t.locals, t.locals,
                                                 rng.uniform(-1, 1));
            detected = !tw_mor_diff(tw_mor_diff(TwMorphism{u}, t, t), t, t).u.is_zero();
        }
        if (detected) ++caught;
    }
    CHECK(caught == trials);
}

TEST_CASE("homotopy relation at (i,j,i)") {
    CoverPtr p1 = fixtures::p1_cover();
    TwPerfComplex O2 = fixtures::p1_line_bundle(p1, 2);
    CHECK(homotopy_relation_check(O2, 0, 1).pass());

    gen::Rng rng(251);
    CoverPtr cover = gen::random_cover(rng, 3, F101());
    TwPerfComplex t = gen::random_twisted(rng, cover, {});
    REQUIRE(mc_check_tw(t).pass());
    for (const auto& I : nerve_level(*cover, 1))
        if (I[0] != I[1]) CHECK(homotopy_relation_check(t, I[0], I[1]).pass());

    // zero out a^{2,-1}_{iji} on an object where the products differ
    for (int trial = 0; trial < 40; ++trial) {
        TwPerfComplex v = gen::random_twisted(rng, cover, {});
        bool broke = false;
        for (const auto& I : nerve_level(*cover, 1)) {
            int i = I[0], j = I[1];
            if (i == j) continue;
            MultiIndex iji{i, j, i};
            if (v.a.component(iji).is_zero()) continue;
            TwCochain a2 = v.a;
            a2.set_component(iji, GradedMap::zero(v.locals->at(i), v.locals->at(i), -1,
                                                  cover->ring_of_tuple(iji)));
            TwPerfComplex w{v.cover, v.locals, a2};
            CHECK_FALSE(homotopy_relation_check(w, i, j).pass());
            broke = true;
            break;
        }
        if (broke) break;
    }
}

TEST_CASE("restriction naturality of residual evaluation") {
    // evaluating a hat term after a further restriction equals restricting
    // the evaluated term: res_{T} ( delta-term in S ) = delta-term with all
    // operands resticted through T, by functoriality of res
    CoverPtr p1 = fixtures::p1_cover();
    TwPerfComplex O2 = fixtures::p1_line_bundle(p1, 2);
    TwCochain residual = delta(O2.a) + tw_compose(O2.a, O2.a);
    // all residual components vanish; naturality is then checked on a raw
    // cochain instead
    gen::Rng rng(257);
    LocalsPtr E = O2.locals;
    TwCochain u = gen::random_tw_cochain(rng, p1, E, E, 1, 0.8);
    // the (0,1)-component of delta(u) reads u at (0) and (1) after
    // restriction; computing those restrictions in two steps through the
    // singleton ring gives the same answer
    TwCochain du = delta(u);
    for (const auto& [I, g] : du.components()) {
        std::set<int> s = index_set(I);
        for (std::size_t pos = 1; pos + 1 < I.size(); ++pos) {
            MultiIndex sub = delete_at(I, pos);
            std::set<int> ssub = index_set(sub);
            RingHom direct = p1->restriction(ssub, s);
            RingHom via = p1->restriction(ssub, ssub);
            CHECK(apply_hom(direct, u.component(sub)) ==
                  apply_hom(p1->restriction(ssub, s), apply_hom(via, u.component(sub))));
        }
    }
    CHECK(residual.is_zero());
}
