#include <doctest.h>

#include "twk/cover.hpp"
#include "twk/equivariant.hpp"
#include "twk/gen.hpp"

using namespace twk;

namespace {

RingPtr QQ() { return RingDesc::rationals(); }
RingPtr F7() { return RingDesc::prime_field(7); }

EqLocalsPtr point_locals(const ActionPtr& a, const RingPtr& ring) {
    auto locals = std::make_shared<EqLocals>();
    locals->ring = ring;
    GradedModule pt(std::map<int, int>{{0, 1}});
    for (int x = 0; x < a->carrier_size; ++x) {
        locals->modules.push_back(pt);
        locals->diffs.push_back(GradedMap::zero(pt, pt, 1, ring));
    }
    return locals;
}

// one-dimensional phi given by scalars per (x, g)
EqCochain scalar_phi(const ActionPtr& a, const EqLocalsPtr& locals,
                     const std::map<std::pair<int, int>, Scalar>& vals) {
    EqCochain phi(a, locals, locals, 1);
    for (const auto& [key, v] : vals) {
        auto [x, g] = key;
        GradedMap m(locals->modules.at(a->apply(x, g)), locals->modules.at(x), 0,
                    locals->ring);
        Matrix blk(locals->ring, 1, 1);
        blk.set(0, 0, v);
        m.set_block(0, blk);
        phi.set_component({x, g}, m);
    }
    return phi;
}

EqLocalsPtr random_locals(gen::Rng& rng, const ActionPtr& a, const RingPtr& ring,
                          int min_deg, int max_deg, int max_rank) {
    auto locals = std::make_shared<EqLocals>();
    locals->ring = ring;
    for (int x = 0; x < a->carrier_size; ++x) {
        ComplexObj c = gen::random_complex(rng, ring, min_deg, max_deg, max_rank);
        locals->modules.push_back(c.module);
        locals->diffs.push_back(c.diff);
    }
    return locals;
}

}  // namespace

TEST_CASE("rho/tau pullbacks read the printed points") {
    auto a = std::make_shared<GroupAction>(GroupAction::regular(FiniteGroup::cyclic(3)));
    gen::Rng rng(401);
    EqLocalsPtr locals = random_locals(rng, a, F7(), 0, 1, 2);
    EquivariantComplex e{a, locals, EqCochain(a, locals, locals, 1)};
    for (int k = 0; k <= 2; ++k) {
        auto rho = rho_pullback_modules(e, k, 0);
        auto tau = tau_pullback_modules(e, k, 0);
        for (const auto& c : quotient_level(*a, k)) {
            CHECK(rho.at(c) == locals->modules.at(c[0]));
            int x = c[0];
            for (int j = 1; j <= k; ++j) x = a->apply(x, c[j]);
            CHECK(tau.at(c) == locals->modules.at(x));
        }
    }
    // trivial action: rho* = tau* on objects
    auto triv = std::make_shared<GroupAction>(
        GroupAction::trivial(FiniteGroup::cyclic(2), 2));
    EqLocalsPtr l2 = random_locals(rng, triv, F7(), 0, 1, 2);
    EquivariantComplex e2{triv, l2, EqCochain(triv, l2, l2, 1)};
    for (int k = 0; k <= 2; ++k)
        CHECK(rho_pullback_modules(e2, k, 0) == tau_pullback_modules(e2, k, 0));
}

TEST_CASE("Z/2 sign representation passes") {
    auto a = std::make_shared<GroupAction>(GroupAction::trivial(FiniteGroup::cyclic(2), 1));
    EqLocalsPtr locals = point_locals(a, QQ());
    EqCochain phi = scalar_phi(a, locals,
                               {{{0, 0}, Scalar::one(QQ())},
                                {{0, 1}, -Scalar::one(QQ())}});
    EquivariantComplex e{a, locals, phi};
    CheckReport rep = mc_check_equiv(e);
    INFO(rep.summary());
    CHECK(rep.pass());
}

TEST_CASE("the k=1 and k=2 residuals match the printed displays symbolically") {
    // unconstrained random data: the residual the checker computes must
    // equal the printed expansion termwise
    for (int gord : {1, 2, 3}) {
        gen::Rng rng(409 + gord);
        auto a = std::make_shared<GroupAction>(
            GroupAction::regular(FiniteGroup::cyclic(gord)));
        EqLocalsPtr locals = random_locals(rng, a, F7(), 0, 2, 2);
        EqCochain phi(a, locals, locals, 1);
        for (int k = 1; k <= 2; ++k)
            for (const auto& c : quotient_level(*a, k)) {
                GradedMap g = gen::random_graded_map(
                    rng, locals->modules.at(phi.moved_point(c)),
                    locals->modules.at(c[0]), 1 - k, F7());
                if (!g.is_zero()) phi.set_component(c, g);
            }
        EqCochain residual = eq_D(phi) + eq_compose(phi, phi);
        // k = 1: residual = -d(phi^1): zero residual means closedness
        for (const auto& c : quotient_level(*a, 1)) {
            GradedMap want = -hom_differential(phi.component(c),
                                               locals->diffs.at(c[0]),
                                               locals->diffs.at(phi.moved_point(c)));
            CHECK(residual.component(c) == want);
        }
        // k = 2: d phi^2 - d_1* phi^1 + rho* phi^1 tau* phi^1
        for (const auto& c : quotient_level(*a, 2)) {
            GradedMap dphi2 = hom_differential(phi.component(c), locals->diffs.at(c[0]),
                                               locals->diffs.at(phi.moved_point(c)));
            GradedMap hat = phi.component(quotient_face(*a, 1, c));
            GradedMap prod = graded_compose(phi.component(front_face(*a, 1, c)),
                                            phi.component(back_face(*a, 1, c)));
            CHECK(residual.component(c) == dphi2 - hat + prod);
        }
    }
}

TEST_CASE("strict cocycles: constant object, point swap, violations") {
    // trivial action with identity phi
    auto triv = std::make_shared<GroupAction>(GroupAction::trivial(FiniteGroup::cyclic(2), 2));
    gen::Rng rng(419);
    EqLocalsPtr locals = random_locals(rng, triv, QQ(), 0, 2, 2);
    std::map<QuotientCell, GradedMap> phi1;
    for (int x = 0; x < 2; ++x)
        for (int g = 0; g < 2; ++g)
            phi1[{x, g}] = GradedMap::identity(locals->modules.at(x), QQ());
    EquivariantComplex e = strict_from_cocycle(triv, locals, phi1);
    CHECK(mc_check_equiv(e).pass());

    // Z/2 swapping two points, K in degree 0, phi the swap
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    GroupAction swap;
    swap.group = z2;
    swap.carrier_size = 2;
    swap.act = {{0, 1}, {1, 0}};
    swap.validate();
    auto sa = std::make_shared<GroupAction>(swap);
    EqLocalsPtr pts = point_locals(sa, QQ());
    std::map<QuotientCell, GradedMap> sw;
    for (int x = 0; x < 2; ++x)
        for (int g = 0; g < 2; ++g)
            sw[{x, g}] = GradedMap::identity(pts->modules.at(x), QQ());
    EquivariantComplex es = strict_from_cocycle(sa, pts, sw);
    CHECK(mc_check_equiv(es).pass());

    // break the cocycle by a unit scale: rejected by the constructor and,
    // when forced into an object, caught at k = 2 by the checker
    std::map<QuotientCell, GradedMap> badmap = sw;
    badmap[{0, 1}] = badmap[{0, 1}].scaled(Scalar::from_int(QQ(), 3));
    CHECK_THROWS_AS(strict_from_cocycle(sa, pts, badmap), std::invalid_argument);

    EqCochain bad(sa, pts, pts, 1);
    for (const auto& [c, g] : badmap) bad.set_component(c, g);
    EquivariantComplex eb{sa, pts, bad};
    CheckReport rep = mc_check_equiv(eb);
    CHECK_FALSE(rep.pass());
    bool k2 = false;
    for (const auto& f : rep.failures)
        if (f.where.find("MC(") == 0 && f.where.find(",") != std::string::npos) k2 = true;
    CHECK(k2);
}

TEST_CASE("homotopy-repaired cocycle passes with nonzero phi^{2,-1}") {
    // acyclic two-term locals; phi(g) = 2 id breaks the strict cocycle by
    // (1 - alpha^2) = -3, repaired by phi^2(g,g) = -3 h
    auto a = std::make_shared<GroupAction>(GroupAction::trivial(FiniteGroup::cyclic(2), 1));
    auto locals = std::make_shared<EqLocals>();
    locals->ring = QQ();
    GradedModule cone(std::map<int, int>{{0, 1}, {1, 1}});
    GradedMap d(cone, cone, 1, QQ());
    Matrix one(QQ(), 1, 1);
    one.set(0, 0, Scalar::one(QQ()));
    d.set_block(0, one);
    locals->modules.push_back(cone);
    locals->diffs.push_back(d);

    EqCochain phi(a, locals, locals, 1);
    phi.set_component({0, 0}, GradedMap::identity(cone, QQ()));
    phi.set_component({0, 1},
                      GradedMap::identity(cone, QQ()).scaled(Scalar::from_int(QQ(), 2)));
    // without the repair the k=2 residual at (0,1,1) is nonzero
    EquivariantComplex broken{a, locals, phi};
    CHECK_FALSE(mc_check_equiv(broken).pass());

    GradedMap h(cone, cone, -1, QQ());
    Matrix hb(QQ(), 1, 1);
    hb.set(0, 0, Scalar::from_int(QQ(), -3));
    h.set_block(1, hb);
    EqCochain phi2 = phi;
    phi2.set_component({0, 1, 1}, h);
    EquivariantComplex repaired{a, locals, phi2};
    CheckReport rep = mc_check_equiv(repaired);
    INFO(rep.summary());
    CHECK(rep.pass());
}

TEST_CASE("morphism differential: identity closed, k=1 pattern, d^2 = 0") {
    gen::Rng rng(421);
    auto a = std::make_shared<GroupAction>(GroupAction::regular(FiniteGroup::cyclic(2)));
    // the regular action moves points, so share one complex across them
    ComplexObj C = gen::random_complex(rng, F7(), 0, 2, 2);
    auto shared = std::make_shared<EqLocals>();
    shared->ring = F7();
    for (int x = 0; x < a->carrier_size; ++x) {
        shared->modules.push_back(C.module);
        shared->diffs.push_back(C.diff);
    }
    std::map<QuotientCell, GradedMap> idphi;
    for (int x = 0; x < a->carrier_size; ++x)
        for (int g = 0; g < a->group.order(); ++g)
            idphi[{x, g}] = GradedMap::identity(C.module, F7());
    EquivariantComplex e = strict_from_cocycle(a, shared, idphi);
    REQUIRE(mc_check_equiv(e).pass());

    EquivariantMorphism id{EqCochain::identity(a, shared)};
    CHECK(mor_diff_equiv(id, e, e).theta.is_zero());

    // degree-0 theta with only theta^{0,0}: (d theta)^{1,0}(x,g) =
    // psi(x,g) theta(xg) - theta(x) phi(x,g)
    EqCochain th(a, shared, shared, 0);
    for (int x = 0; x < a->carrier_size; ++x)
        th.set_component({x}, gen::random_graded_map(rng, C.module, C.module, 0, F7()));
    EquivariantMorphism dth = mor_diff_equiv(EquivariantMorphism{th}, e, e);
    for (const auto& c : quotient_level(*a, 1)) {
        int x = c[0], g = c[1];
        GradedMap want =
            graded_compose(e.phi.component(c), th.component({a->apply(x, g)})) -
            graded_compose(th.component({x}), e.phi.component(c));
        CHECK(dth.theta.component(c) == want);
    }

    // d o d = 0 on random morphisms between gauged objects
    for (int trial = 0; trial < 10; ++trial) {
        EqCochain u(a, shared, shared, rng.uniform(-1, 1));
        int span = shared->degree_span();
        int kmax = std::max(0, u.total_degree() + span);
        for (int k = 0; k <= kmax; ++k)
            for (const auto& c : quotient_level(*a, k)) {
                if (!rng.chance(0.4)) continue;
                GradedMap g = gen::random_graded_map(
                    rng, shared->modules.at(u.moved_point(c)), shared->modules.at(c[0]),
                    u.total_degree() - k, F7());
                if (!g.is_zero()) u.set_component(c, g);
            }
        EquivariantMorphism dd =
            mor_diff_equiv(mor_diff_equiv(EquivariantMorphism{u}, e, e), e, e);
        CHECK(dd.theta.is_zero());
    }
}

TEST_CASE("trivial group: validation degenerates to d^2 = 0 per point") {
    auto a = std::make_shared<GroupAction>(GroupAction::trivial(FiniteGroup::trivial(), 3));
    gen::Rng rng(431);
    EqLocalsPtr locals = random_locals(rng, a, QQ(), 0, 2, 2);
    EqCochain phi(a, locals, locals, 1);
    for (int x = 0; x < 3; ++x)
        phi.set_component({x, 0}, GradedMap::identity(locals->modules.at(x), QQ()));
    EquivariantComplex e{a, locals, phi};
    CHECK(mc_check_equiv(e).pass());
    // break one local differential
    auto badlocals = std::make_shared<EqLocals>(*locals);
    GradedModule m = badlocals->modules.at(0);
    if (m.rank(0) > 0 && m.rank(1) > 0) {
        GradedMap d = badlocals->diffs.at(0);
        Matrix blk = d.block(0);
        blk.set(0, 0, blk.at(0, 0) + Scalar::one(QQ()));
        GradedMap d2(m, m, 1, QQ());
        for (const auto& [deg, b] : d.blocks()) d2.set_block(deg, b);
        d2.set_block(0, blk);
        badlocals->diffs[0] = d2;
        EqCochain phib(a, badlocals, badlocals, 1);
        for (int x = 0; x < 3; ++x)
            phib.set_component({x, 0},
                               GradedMap::identity(badlocals->modules.at(x), QQ()));
        EquivariantComplex eb{a, badlocals, phib};
        if (!graded_compose(d2, d2).is_zero()) CHECK_FALSE(mc_check_equiv(eb).pass());
    }
}

TEST_CASE("mc passes iff probes square to zero, both directions") {
    gen::Rng rng(433);
    for (int gord : {2, 3}) {
        auto a = std::make_shared<GroupAction>(
            GroupAction::regular(FiniteGroup::cyclic(gord)));
        ComplexObj C = gen::random_complex(rng, F7(), 0, 2, 2);
        auto shared = std::make_shared<EqLocals>();
        shared->ring = F7();
        for (int x = 0; x < a->carrier_size; ++x) {
            shared->modules.push_back(C.module);
            shared->diffs.push_back(C.diff);
        }
        std::map<QuotientCell, GradedMap> idphi;
        for (int x = 0; x < a->carrier_size; ++x)
            for (int g = 0; g < a->group.order(); ++g)
                idphi[{x, g}] = GradedMap::identity(C.module, F7());
        EquivariantComplex e = strict_from_cocycle(a, shared, idphi);
        REQUIRE(mc_check_equiv(e).pass());
        // valid: all probes square to zero (checked above); now perturb a
        // non-unit slot and require some signal
        EqCochain phi = e.phi;
        QuotientCell slot{0, 1};
        phi.set_component(slot, phi.component(slot).scaled(Scalar::from_int(F7(), 2)));
        EquivariantComplex bad{a, shared, phi};
        bool detected = !mc_check_equiv(bad).pass();
        for (int p = 0; p < 6 && !detected; ++p) {
            EqCochain u(a, shared, shared, 0);
            for (int x = 0; x < a->carrier_size; ++x)
                u.set_component({x},
                                gen::random_graded_map(rng, C.module, C.module, 0, F7()));
            detected =
                !mor_diff_equiv(mor_diff_equiv(EquivariantMorphism{u}, bad, bad), bad, bad)
                     .theta.is_zero();
        }
        CHECK(detected);
    }
}
