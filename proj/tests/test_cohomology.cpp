#include <doctest.h>

#include "support/fixtures.hpp"
#include "twk/cohomology.hpp"
#include "twk/gen.hpp"

using namespace twk;

namespace {

RingPtr QQ() { return RingDesc::rationals(); }

std::map<std::pair<int, int>, Scalar> p1_units(const CoverPtr& p1, int n) {
    RingPtr Ru = p1->ring_of_tuple({0, 1});
    return {{{0, 1}, Scalar::monomial(Ru, {n}, Scalar::one(QQ()))}};
}

}  // namespace

TEST_CASE("cover weights for the standard two-chart cover") {
    CoverPtr p1 = fixtures::p1_cover();
    CoverWeights cw = compute_cover_weights(*p1);
    REQUIRE(cw.ok);
    CHECK(cw.rank == 1);
    CHECK(cw.weight_of({0}, {3}) == ExpVec{3});
    CHECK(cw.weight_of({1}, {2}) == ExpVec{-2});
    // exponent recovery honours the polynomial bounds
    CHECK(cw.exponent_of(*p1, {0}, {2}) == ExpVec{2});
    CHECK_FALSE(cw.exponent_of(*p1, {0}, {-1}).has_value());
    CHECK(cw.exponent_of(*p1, {1}, {-2}) == ExpVec{2});
    CHECK_FALSE(cw.exponent_of(*p1, {1}, {1}).has_value());
    CHECK(cw.exponent_of(*p1, {0, 1}, {-5}) == ExpVec{-5});
}

TEST_CASE("classical Cech oracle on the projective-line cover") {
    CoverPtr p1 = fixtures::p1_cover();
    // O(n), n >= 0: h0 = n+1, h1 = 0; O(-n), n >= 2: h0 = 0, h1 = n-1
    for (int n = 0; n <= 5; ++n) {
        CohomologyReport rep = cech_oracle(p1, p1_units(p1, n), 8);
        CHECK(rep.dim_at(0) == n + 1);
        CHECK(rep.dim_at(1) == 0);
    }
    for (int n = 2; n <= 5; ++n) {
        CohomologyReport rep = cech_oracle(p1, p1_units(p1, -n), 8);
        CHECK(rep.dim_at(0) == 0);
        CHECK(rep.dim_at(1) == n - 1);
    }
    // O(-1) has no cohomology at all
    CohomologyReport rep = cech_oracle(p1, p1_units(p1, -1), 8);
    CHECK(rep.dim_at(0) == 0);
    CHECK(rep.dim_at(1) == 0);
    // per-weight profile of O(2): one dimension in each weight 0,1,2
    CohomologyReport r2 = cech_oracle(p1, p1_units(p1, 2), 8);
    for (int w = 0; w <= 2; ++w) CHECK(r2.dim_at(0, {w}) == 1);
    CHECK(r2.dim_at(0, {3}) == 0);
    CHECK(r2.dim_at(0, {-1}) == 0);
}

TEST_CASE("trivial bundle on a two-open field cover: H^0 is one-dimensional") {
    CoverPtr c2 = std::make_shared<RingedCover>(RingedCover::full_nerve(2, QQ()));
    std::map<std::pair<int, int>, Scalar> units{{{0, 1}, Scalar::one(QQ())}};
    CohomologyReport rep = cech_oracle(c2, units, 0);
    CHECK(rep.dim_at(0) == 1);
    CHECK(rep.dim_at(1) == 0);
}

TEST_CASE("one-open cover: Hom cohomology is the local endomorphism cohomology") {
    CoverPtr c1 = std::make_shared<RingedCover>(RingedCover::full_nerve(1, QQ()));
    gen::Rng rng(501);
    for (int trial = 0; trial < 8; ++trial) {
        TwPerfComplex t = gen::random_twisted(rng, c1, {});
        REQUIRE(mc_check_tw(t).pass());
        AssembledComplex c = assemble_hom(t, t, {});
        CHECK(c.d2_ok);
        CohomologyReport rep = cohomology_dims(c);

        // independent route: the endomorphism complex of (E, d) built from
        // elementary maps and the plain hom differential
        ComplexObj E = t.local_complex(0);
        struct HomSlot { int d, r, cpos; };
        std::map<int, std::vector<HomSlot>> slots;
        for (int m = c.deg_lo - 1; m <= c.deg_hi + 1; ++m)
            for (const auto& [d, cols] : E.module.ranks()) {
                int rows = E.module.rank(d + m);
                for (int r = 0; r < rows; ++r)
                    for (int cc = 0; cc < cols; ++cc) slots[m].push_back({d, r, cc});
            }
        auto rank_of_d = [&](int m) {
            const auto& src = slots[m];
            const auto& tgt = slots[m + 1];
            Matrix dm(QQ(), static_cast<int>(tgt.size()), static_cast<int>(src.size()));
            for (std::size_t j = 0; j < src.size(); ++j) {
                GradedMap f = GradedMap::zero(E.module, E.module, m, QQ());
                Matrix blk(QQ(), E.module.rank(src[j].d + m), E.module.rank(src[j].d));
                blk.set(src[j].r, src[j].cpos, Scalar::one(QQ()));
                f.set_block(src[j].d, blk);
                GradedMap df = hom_differential(f, E.diff, E.diff);
                for (std::size_t i = 0; i < tgt.size(); ++i)
                    dm.set(static_cast<int>(i), static_cast<int>(j),
                           df.block(tgt[i].d).rows() > 0 && !df.block(tgt[i].d).is_zero()
                               ? df.block(tgt[i].d).at(tgt[i].r, tgt[i].cpos)
                               : Scalar::zero(QQ()));
            }
            return field_rank(dm);
        };
        for (int m = c.deg_lo; m <= c.deg_hi; ++m) {
            int dim = static_cast<int>(slots[m].size());
            int h = dim - rank_of_d(m) - rank_of_d(m - 1);
            CHECK(rep.dim_at(m) == h);
        }
    }
}

TEST_CASE("P^1 gluing: twisted Hom cohomology equals the oracle per weight") {
    CoverPtr p1 = fixtures::p1_cover();
    TwPerfComplex O0 = fixtures::p1_line_bundle(p1, 0);
    for (int n = -4; n <= 4; ++n) {
        TwPerfComplex On = fixtures::p1_line_bundle(p1, n);
        AssembleOptions opt;
        opt.weight_window = 8;
        AssembledComplex c = assemble_hom(O0, On, opt);
        CHECK(c.weighted);
        CHECK(c.window_exact);
        CHECK(c.d2_ok);
        CohomologyReport tw = cohomology_dims(c);
        CohomologyReport oracle = cech_oracle(p1, p1_units(p1, n), 8);
        for (int deg = 0; deg <= 1; ++deg)
            for (int w = -8; w <= 8; ++w) {
                INFO("n=", n, " deg=", deg, " w=", w);
                CHECK(tw.dim_at(deg, {w}) == oracle.dim_at(deg, {w}));
            }
        // no cohomology outside degrees 0..1
        for (const auto& row : tw.rows) CHECK((row.degree >= 0 && row.degree <= 1));
    }
}

TEST_CASE("Hom(O, O(2)) degree-0 slots include locals plus the overlap slot") {
    CoverPtr p1 = fixtures::p1_cover();
    TwPerfComplex O0 = fixtures::p1_line_bundle(p1, 0);
    TwPerfComplex O2 = fixtures::p1_line_bundle(p1, 2);
    AssembleOptions opt;
    opt.weight_window = 3;
    AssembledComplex c = assemble_hom(O0, O2, opt);
    // degree 0: the two local sections per admissible weight; degree 1:
    // four tuple slots (0,0),(0,1),(1,0),(1,1) with ring-bounded weights
    int deg0 = 0, deg1 = 0;
    for (const auto& [kw, n] : c.dims) {
        if (kw.first == 0) deg0 += n;
        if (kw.first == 1) deg1 += n;
    }
    // weight window 3, adjusted weights: f_0 slot allows w in [0,3] (4),
    // f_1 slot allows w = 2 - v in [-1,2] wait bounds: v >= 0, so w <= 2, and w >= -3 (7-... )
    CHECK(deg0 > 0);
    CHECK(deg1 > deg0);  // the overlap slots dominate
}

TEST_CASE("acyclic local summands do not change Hom cohomology") {
    CoverPtr p1 = fixtures::p1_cover();
    TwPerfComplex O0 = fixtures::p1_line_bundle(p1, 0);
    TwPerfComplex O2 = fixtures::p1_line_bundle(p1, 2);

    // add the identity cone K -> K on each chart, glued by identity blocks
    auto locals = std::make_shared<TwLocals>();
    GradedModule bigger(std::map<int, int>{{0, 2}, {1, 1}});
    locals->modules.assign(2, bigger);
    TwCochain a(p1, locals, locals, 1);
    for (int i = 0; i < 2; ++i) {
        RingPtr r = p1->ring_of_tuple({i});
        GradedMap d(bigger, bigger, 1, r);
        Matrix blk(r, 1, 2);
        blk.set(0, 1, Scalar::one(r));  // second degree-0 generator maps to degree 1
        d.set_block(0, blk);
        a.set_component({i}, d);
    }
    for (const auto& I : nerve_level(*p1, 1)) {
        RingPtr r = p1->ring_of_tuple(I);
        Scalar g = O2.a.component(I).block(0).at(0, 0);
        GradedMap m(bigger, bigger, 0, r);
        Matrix b0(r, 2, 2);
        b0.set(0, 0, g);  // the line-bundle part
        b0.set(1, 1, Scalar::one(r));  // acyclic part glued trivially
        m.set_block(0, b0);
        Matrix b1(r, 1, 1);
        b1.set(0, 0, Scalar::one(r));
        m.set_block(1, b1);
        a.set_component(I, m);
    }
    TwPerfComplex padded{p1, locals, a};
    REQUIRE(mc_check_tw(padded).pass());

    AssembleOptions opt;
    opt.weight_window = 8;
    CohomologyReport plain = cohomology_dims(assemble_hom(O0, O2, opt));
    CohomologyReport fat = cohomology_dims(assemble_hom(O0, padded, opt));
    for (int deg = 0; deg <= 1; ++deg) {
        CHECK(plain.dim_at(deg) == fat.dim_at(deg));
        for (int w = -8; w <= 8; ++w) CHECK(plain.dim_at(deg, {w}) == fat.dim_at(deg, {w}));
    }
}

TEST_CASE("dimension report is independent of slot enumeration order") {
    CoverPtr p1 = fixtures::p1_cover();
    TwPerfComplex O0 = fixtures::p1_line_bundle(p1, 0);
    TwPerfComplex O3 = fixtures::p1_line_bundle(p1, 3);
    AssembleOptions opt;
    opt.weight_window = 6;
    CohomologyReport base = cohomology_dims(assemble_hom(O0, O3, opt));
    for (unsigned seed : {1u, 2u, 77u}) {
        AssembleOptions p = opt;
        p.perm_seed = seed;
        CohomologyReport rep = cohomology_dims(assemble_hom(O0, O3, p));
        CHECK(rep.rows.size() == base.rows.size());
        for (std::size_t i = 0; i < base.rows.size(); ++i) {
            CHECK(rep.rows[i].degree == base.rows[i].degree);
            CHECK(rep.rows[i].weight == base.rows[i].weight);
            CHECK(rep.rows[i].dim == base.rows[i].dim);
        }
    }
}

TEST_CASE("field-backend Hom cohomology against a hand-checked gluing") {
    // two-open field cover, rank-1 locals, transition 1: global sections
    // one-dimensional in degree 0
    CoverPtr c2 = std::make_shared<RingedCover>(RingedCover::full_nerve(2, QQ()));
    TwPerfComplex triv = line_bundle(c2, {{{0, 1}, Scalar::one(QQ())}});
    AssembledComplex c = assemble_hom(triv, triv, {});
    CHECK(c.d2_ok);
    CohomologyReport rep = cohomology_dims(c);
    CHECK(rep.dim_at(0) == 1);
    CHECK(rep.dim_at(1) == 0);
    // cross-checked by the oracle
    CohomologyReport oracle = cech_oracle(c2, {{{0, 1}, Scalar::one(QQ())}}, 0);
    CHECK(oracle.dim_at(0) == 1);
    CHECK(oracle.dim_at(1) == 0);
}

TEST_CASE("window-approximate marking for non-monomial twisting data") {
    // a gauged object over a genuine Laurent cover has non-monomial
    // entries; the assembled complex falls back to the filtration mode
    RingPtr L = RingDesc::laurent(QQ(), {{"t", true}});
    CoverPtr c2 = std::make_shared<RingedCover>(RingedCover::full_nerve(2, L));
    gen::Rng rng(503);
    for (int trial = 0; trial < 8; ++trial) {
        gen::RandomTwistedOptions o;
        o.min_deg = 0;
        o.max_deg = 1;
        TwPerfComplex t = gen::random_twisted(rng, c2, o);
        REQUIRE(mc_check_tw(t).pass());
        bool monomial = true;
        for (const auto& [I, g] : t.a.components())
            for (const auto& [d, blk] : g.blocks())
                for (int r = 0; r < blk.rows(); ++r)
                    for (int col = 0; col < blk.cols(); ++col)
                        if (!blk.at(r, col).is_zero() && !blk.at(r, col).is_monomial())
                            monomial = false;
        AssembleOptions opt;
        opt.weight_window = 4;
        AssembledComplex c = assemble_hom(t, t, opt);
        if (!monomial) {
            CHECK_FALSE(c.weighted);
        }
    }
}
