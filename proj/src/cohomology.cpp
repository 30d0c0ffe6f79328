#include "twk/cohomology.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace twk {

int CohomologyReport::dim_at(int degree) const {
    int acc = 0;
    for (const auto& r : rows)
        if (r.degree == degree) acc += r.dim;
    return acc;
}

int CohomologyReport::dim_at(int degree, const ExpVec& weight) const {
    for (const auto& r : rows)
        if (r.degree == degree && r.weight == weight) return r.dim;
    return 0;
}

// ---------------------------------------------------------------------------
// global weight structure

ExpVec CoverWeights::weight_of(const std::set<int>& s, const ExpVec& exponents) const {
    const auto& vw = var_weights.at(s);
    ExpVec w(rank, 0);
    for (std::size_t i = 0; i < exponents.size(); ++i)
        for (int j = 0; j < rank; ++j) w[j] += exponents[i] * vw.at(i)[j];
    return w;
}

std::optional<ExpVec> CoverWeights::exponent_of(const RingedCover& c,
                                                const std::set<int>& s,
                                                const ExpVec& weight) const {
    const auto& vw = var_weights.at(s);
    int v = static_cast<int>(vw.size());
    // solve sum_i e_i vw[i] = weight over the integers, requiring uniqueness
    // (full column rank); rational elimination at desk scale
    std::vector<std::vector<Rat>> m(rank, std::vector<Rat>(v + 1));
    for (int r = 0; r < rank; ++r) {
        for (int i = 0; i < v; ++i) m[r][i] = vw[i][r];
        m[r][v] = weight[r];
    }
    int row = 0;
    std::vector<int> pivots;
    for (int col = 0; col < v && row < rank; ++col) {
        int p = -1;
        for (int r = row; r < rank; ++r)
            if (m[r][col] != 0) { p = r; break; }
        if (p < 0) return std::nullopt;  // rank-deficient: no unique solution
        std::swap(m[row], m[p]);
        Rat inv = Rat(1) / m[row][col];
        for (int j = col; j <= v; ++j) m[row][j] *= inv;
        for (int r = 0; r < rank; ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (int j = col; j <= v; ++j) m[r][j] -= f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    for (int r = row; r < rank; ++r)
        if (m[r][v] != 0) return std::nullopt;  // inconsistent
    ExpVec e(v, 0);
    for (int i = 0; i < v; ++i) {
        const Rat& val = m[i][v];
        if (denominator(val) != 1) return std::nullopt;
        Int n = numerator(val);
        e[i] = static_cast<std::int64_t>(n);
    }
    const RingPtr& ring = c.ring_of(s);
    for (int i = 0; i < v; ++i)
        if (!ring->vars[i].invertible && e[i] < 0) return std::nullopt;
    return e;
}

CoverWeights compute_cover_weights(const RingedCover& c) {
    CoverWeights cw;
    // unique maximal nerve set containing every other set
    std::set<int> maximal;
    for (const auto& s : c.nerve())
        if (s.size() > maximal.size()) maximal = s;
    for (const auto& s : c.nerve())
        if (!std::includes(maximal.begin(), maximal.end(), s.begin(), s.end())) {
            cw.why_not = "nerve has no unique maximal set";
            return cw;
        }
    const RingPtr& top = c.ring_of(maximal);
    if (top->kind != RingKind::Laurent) {
        // purely field-valued covers carry the trivial weight structure
        for (const auto& s : c.nerve()) {
            if (c.ring_of(s)->kind == RingKind::Laurent) {
                cw.why_not = "mixed field/Laurent rings";
                return cw;
            }
            cw.var_weights[s] = {};
        }
        cw.ok = true;
        cw.rank = 0;
        return cw;
    }
    cw.rank = static_cast<int>(top->nvars());
    for (const auto& s : c.nerve()) {
        const RingPtr& ring = c.ring_of(s);
        std::vector<ExpVec> vw;
        if (ring->kind == RingKind::Laurent) {
            RingHom res = c.restriction(s, maximal);
            for (const auto& var : ring->vars) {
                Scalar img = res.images().at(var.name);
                if (!img.is_monomial() || !img.terms().begin()->second.is_unit()) {
                    cw.why_not = "restriction image of " + var.name +
                                 " is not a unit monomial";
                    return cw;
                }
                vw.push_back(img.monomial_exponent());
            }
        }
        cw.var_weights[s] = std::move(vw);
    }
    cw.ok = true;
    return cw;
}

// ---------------------------------------------------------------------------
// slot machinery shared by the assembled complex and the oracle

namespace {

struct SlotKey {
    MultiIndex tuple;
    int block_deg = 0;
    int row = 0, col = 0;
    ExpVec mono;

    bool operator<(const SlotKey& o) const {
        return std::tie(tuple, block_deg, row, col, mono) <
               std::tie(o.tuple, o.block_deg, o.row, o.col, o.mono);
    }
};

struct SlotTable {
    // per (degree, weight): ordered slots; lookup by key
    std::map<std::pair<int, ExpVec>, std::vector<SlotKey>> buckets;
    std::map<int, std::map<SlotKey, std::pair<ExpVec, int>>> lookup;

    void add(int degree, const ExpVec& weight, SlotKey key) {
        auto& vec = buckets[{degree, weight}];
        lookup[degree][key] = {weight, static_cast<int>(vec.size())};
        vec.push_back(std::move(key));
    }
    void shuffle(unsigned seed) {
        if (seed == 0) return;
        std::mt19937 rng(seed);
        for (auto& [kw, vec] : buckets) {
            std::shuffle(vec.begin(), vec.end(), rng);
            for (std::size_t i = 0; i < vec.size(); ++i)
                lookup[kw.first][vec[i]] = {kw.second, static_cast<int>(i)};
        }
    }
};

std::vector<ExpVec> weight_box(int rank, int window) {
    std::vector<ExpVec> out;
    ExpVec w(rank, -window);
    if (rank == 0) { out.push_back({}); return out; }
    for (;;) {
        out.push_back(w);
        int j = rank - 1;
        while (j >= 0 && w[j] == window) --j;
        if (j < 0) break;
        ++w[j];
        for (int i = j + 1; i < rank; ++i) w[i] = -window;
    }
    return out;
}

std::vector<ExpVec> exponent_box(const RingPtr& ring, int window) {
    int v = static_cast<int>(ring->nvars());
    std::vector<ExpVec> out;
    ExpVec e(v);
    for (int i = 0; i < v; ++i) e[i] = ring->vars[i].invertible ? -window : 0;
    if (v == 0) { out.push_back({}); return out; }
    for (;;) {
        out.push_back(e);
        int j = v - 1;
        while (j >= 0 && e[j] == window) --j;
        if (j < 0) break;
        ++e[j];
        for (int i = j + 1; i < v; ++i)
            e[i] = ring->vars[i].invertible ? -window : 0;
    }
    return out;
}

// generator slots of the locals: (cover index, degree, basis position)
struct GenSlot {
    int index, degree, pos;
    bool operator<(const GenSlot& o) const {
        return std::tie(index, degree, pos) < std::tie(o.index, o.degree, o.pos);
    }
};

using SlotOffsets = std::map<GenSlot, ExpVec>;

// one weight per generator making every stored component of the MC
// element weight-homogeneous:
//   weight(entry at block d, row r, col c of a_{i_0..i_k})
//     = mu(i_k, d, c) - mu(i_0, d + deg, r)
// solved by propagation over the generator graph; direct sums of
// differently twisted summands need this granularity
std::optional<SlotOffsets> solve_offsets(const TwPerfComplex& t, const CoverWeights& cw) {
    struct Constraint {
        GenSlot src, tgt;
        ExpVec w;  // mu(src) - mu(tgt)
    };
    std::vector<Constraint> cons;
    for (const auto& [I, g] : t.a.components()) {
        std::set<int> s = index_set(I);
        for (const auto& [d, blk] : g.blocks())
            for (int r = 0; r < blk.rows(); ++r)
                for (int c = 0; c < blk.cols(); ++c) {
                    const Scalar& e = blk.at(r, c);
                    if (e.is_zero()) continue;
                    ExpVec gw(cw.rank, 0);
                    if (e.ring()->kind == RingKind::Laurent) {
                        if (!e.is_monomial()) return std::nullopt;
                        gw = cw.weight_of(s, e.monomial_exponent());
                    }
                    cons.push_back({GenSlot{I.back(), d, c},
                                    GenSlot{I.front(), d + g.degree(), r}, gw});
                }
    }
    SlotOffsets mu;
    ExpVec zero(cw.rank, 0);
    auto sub2 = [&](const ExpVec& a, const ExpVec& b) {
        ExpVec v(cw.rank);
        for (int j = 0; j < cw.rank; ++j) v[j] = a[j] - b[j];
        return v;
    };
    auto add2 = [&](const ExpVec& a, const ExpVec& b) {
        ExpVec v(cw.rank);
        for (int j = 0; j < cw.rank; ++j) v[j] = a[j] + b[j];
        return v;
    };
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& c : cons) {
            auto si = mu.find(c.src), ti = mu.find(c.tgt);
            if (si != mu.end() && ti == mu.end()) {
                mu[c.tgt] = sub2(si->second, c.w);
                progress = true;
            } else if (ti != mu.end() && si == mu.end()) {
                mu[c.src] = add2(ti->second, c.w);
                progress = true;
            } else if (si == mu.end() && ti == mu.end()) {
                mu[c.src] = c.w;
                mu[c.tgt] = zero;
                progress = true;
            }
        }
    }
    for (const auto& c : cons)
        if (sub2(mu.at(c.src), mu.at(c.tgt)) != c.w) return std::nullopt;
    // untouched generators default to zero lazily via lookup below
    return mu;
}

ExpVec slot_offset(const SlotOffsets& mu, int rank, int index, int degree, int pos) {
    auto it = mu.find(GenSlot{index, degree, pos});
    return it == mu.end() ? ExpVec(rank, 0) : it->second;
}

int max_abs_exponent(const TwPerfComplex& t) {
    std::int64_t m = 0;
    for (const auto& [I, g] : t.a.components())
        for (const auto& [d, blk] : g.blocks())
            for (int r = 0; r < blk.rows(); ++r)
                for (int c = 0; c < blk.cols(); ++c) {
                    const Scalar& e = blk.at(r, c);
                    if (e.is_zero() || e.ring()->kind != RingKind::Laurent) continue;
                    for (const auto& [ev, coeff] : e.terms())
                        for (std::int64_t x : ev) m = std::max(m, std::abs(x));
                }
    return static_cast<int>(m);
}

struct LocalsRange {
    int min_deg = 0, max_deg = 0;
    bool any = false;
};

LocalsRange locals_range(const TwLocals& l) {
    LocalsRange r;
    for (const auto& m : l.modules) {
        if (m.is_zero()) continue;
        if (!r.any) { r.min_deg = m.min_degree(); r.max_deg = m.max_degree(); r.any = true; }
        r.min_deg = std::min(r.min_deg, m.min_degree());
        r.max_deg = std::max(r.max_deg, m.max_degree());
    }
    return r;
}

}  // namespace

AssembledComplex assemble_hom(const TwPerfComplex& a, const TwPerfComplex& b,
                              const AssembleOptions& opt) {
    if (a.cover.get() != b.cover.get() &&
        (a.cover->names() != b.cover->names() || a.cover->nerve() != b.cover->nerve()))
        throw std::invalid_argument("assemble_hom: objects over different covers");
    const RingedCover& cov = *a.cover;
    AssembledComplex out;

    bool laurent = false;
    for (const auto& s : cov.nerve())
        if (cov.ring_of(s)->kind == RingKind::Laurent) laurent = true;
    out.base = base_field_of(cov.ring_of_tuple({0}));

    int window = opt.weight_window;
    if (window < 0) window = 2 * std::max(max_abs_exponent(a), max_abs_exponent(b)) + 4;
    out.window = window;

    CoverWeights cw = compute_cover_weights(cov);
    std::optional<SlotOffsets> muE, muF;
    if (laurent && cw.ok) {
        muE = solve_offsets(a, cw);
        muF = solve_offsets(b, cw);
    }
    out.weighted = laurent ? (cw.ok && muE && muF) : true;
    if (!laurent) { cw.ok = true; cw.rank = 0; }
    if (laurent && !out.weighted)
        out.note = "window-approximate: " +
                   (cw.ok ? std::string("non-monomial twisting data") : cw.why_not);

    LocalsRange re = locals_range(*a.locals);
    LocalsRange rf = locals_range(*b.locals);
    int q_lo = (re.any && rf.any) ? rf.min_deg - re.max_deg : 0;
    int q_hi = (re.any && rf.any) ? rf.max_deg - re.min_deg : 0;
    int lo = opt.deg_lo == std::numeric_limits<int>::min() ? q_lo : opt.deg_lo;
    int hi = opt.deg_hi == std::numeric_limits<int>::max() ? q_hi + 1 : opt.deg_hi;
    out.deg_lo = lo;
    out.deg_hi = hi;

    // slot tables for degrees lo-1 .. hi+1
    SlotTable table;
    ExpVec trivial_w;
    for (int m = lo - 1; m <= hi + 1; ++m) {
        int kmax = m - q_lo;  // beyond this the block spaces vanish
        for (int k = 0; k <= std::max(-1, kmax); ++k) {
            for (const auto& I : nerve_level(cov, k)) {
                const GradedModule& srcm = a.locals->at(I.back());
                const GradedModule& tgtm = b.locals->at(I.front());
                int q = m - k;
                std::set<int> s = index_set(I);
                const RingPtr& ring = cov.ring_of(s);
                for (const auto& [d, cols] : srcm.ranks()) {
                    int rows = tgtm.rank(d + q);
                    if (rows == 0 || cols == 0) continue;
                    for (int r = 0; r < rows; ++r)
                        for (int c = 0; c < cols; ++c) {
                            ExpVec adjust(cw.rank, 0);
                            if (out.weighted && cw.rank > 0) {
                                ExpVec of = slot_offset(*muF, cw.rank, I.front(), d + q, r);
                                ExpVec oe = slot_offset(*muE, cw.rank, I.back(), d, c);
                                for (int j = 0; j < cw.rank; ++j)
                                    adjust[j] = of[j] - oe[j];
                            }
                            if (ring->kind != RingKind::Laurent) {
                                ExpVec w = trivial_w;
                                if (out.weighted && cw.rank > 0) {
                                    bool in_window = true;
                                    for (int j = 0; j < cw.rank; ++j)
                                        if (std::abs(adjust[j]) > window) in_window = false;
                                    if (!in_window) continue;
                                    w = adjust;
                                }
                                table.add(m, w, SlotKey{I, d, r, c, {}});
                            } else if (out.weighted) {
                                for (const auto& w : weight_box(cw.rank, window)) {
                                    ExpVec target = w;
                                    for (int j = 0; j < cw.rank; ++j)
                                        target[j] -= adjust[j];
                                    auto e = cw.exponent_of(cov, s, target);
                                    if (!e) continue;
                                    table.add(m, w, SlotKey{I, d, r, c, *e});
                                }
                            } else {
                                for (const auto& e : exponent_box(ring, window))
                                    table.add(m, trivial_w, SlotKey{I, d, r, c, e});
                            }
                        }
                }
            }
        }
    }
    table.shuffle(opt.perm_seed);

    for (const auto& [kw, vec] : table.buckets) {
        out.dims[kw] = static_cast<int>(vec.size());
        if (std::find(out.weights.begin(), out.weights.end(), kw.second) ==
            out.weights.end())
            out.weights.push_back(kw.second);
    }

    // differential matrices: evaluate tw_mor_diff on every basis slot
    for (int m = lo - 1; m <= hi; ++m) {
        // collect source buckets of this degree
        for (const auto& [kw, vec] : table.buckets) {
            if (kw.first != m) continue;
            const ExpVec& w = kw.second;
            auto tgt_it = table.buckets.find({m + 1, w});
            int tgt_dim = tgt_it == table.buckets.end()
                              ? 0
                              : static_cast<int>(tgt_it->second.size());
            Matrix dm(out.base, tgt_dim, static_cast<int>(vec.size()));
            for (std::size_t sidx = 0; sidx < vec.size(); ++sidx) {
                const SlotKey& sk = vec[sidx];
                // elementary morphism for this slot
                TwCochain u(a.cover, a.locals, b.locals, m);
                std::set<int> s = index_set(sk.tuple);
                const RingPtr& ring = cov.ring_of(s);
                GradedMap g(a.locals->at(sk.tuple.back()), b.locals->at(sk.tuple.front()),
                            m - (static_cast<int>(sk.tuple.size()) - 1), ring);
                Matrix blk(ring, g.target().rank(sk.block_deg + g.degree()),
                           g.source().rank(sk.block_deg));
                Scalar val = ring->kind == RingKind::Laurent
                                 ? Scalar::monomial(ring, sk.mono, Scalar::one(out.base))
                                 : Scalar::one(ring);
                blk.set(sk.row, sk.col, val);
                g.set_block(sk.block_deg, blk);
                u.set_component(sk.tuple, g);
                TwMorphism img = tw_mor_diff(TwMorphism{u}, a, b);
                // expand the image in target slots
                for (const auto& [J, gm] : img.u.components()) {
                    for (const auto& [d, mtx] : gm.blocks())
                        for (int r = 0; r < mtx.rows(); ++r)
                            for (int c = 0; c < mtx.cols(); ++c) {
                                const Scalar& e = mtx.at(r, c);
                                if (e.is_zero()) continue;
                                auto add_term = [&](const ExpVec& mono, const Scalar& coeff) {
                                    SlotKey tk{J, d, r, c, mono};
                                    auto& lk = table.lookup[m + 1];
                                    auto it = lk.find(tk);
                                    if (it == lk.end()) {
                                        if (out.weighted)
                                            throw std::logic_error(
                                                "assemble_hom: image slot missing in "
                                                "weighted mode");
                                        out.window_exact = false;
                                        return;
                                    }
                                    if (it->second.first != w)
                                        throw std::logic_error(
                                            "assemble_hom: weight not preserved");
                                    int tidx = it->second.second;
                                    dm.set(tidx, static_cast<int>(sidx),
                                           dm.at(tidx, static_cast<int>(sidx)) + coeff);
                                };
                                if (e.ring()->kind == RingKind::Laurent) {
                                    for (const auto& [mono, coeff] : e.terms())
                                        add_term(mono, coeff);
                                } else {
                                    add_term({}, e);
                                }
                            }
                }
            }
            out.diffs[{m, w}] = std::move(dm);
        }
    }

    // d o d = 0 as matrices whenever the window lost nothing
    if (out.window_exact) {
        for (const auto& [kw, dm] : out.diffs) {
            auto next = out.diffs.find({kw.first + 1, kw.second});
            if (next == out.diffs.end()) continue;
            if (next->second.cols() != dm.rows()) continue;
            if (!(next->second * dm).is_zero()) out.d2_ok = false;
        }
    }
    return out;
}

CohomologyReport cohomology_dims(const AssembledComplex& c) {
    CohomologyReport rep;
    rep.weighted = c.weighted;
    rep.window_exact = c.window_exact;
    rep.note = c.note;
    if (!c.d2_ok) {
        rep.note += (rep.note.empty() ? "" : "; ") + std::string("d^2 != 0 in window");
    }
    for (int m = c.deg_lo; m <= c.deg_hi; ++m) {
        for (const auto& w : c.weights) {
            auto dit = c.dims.find({m, w});
            int n = dit == c.dims.end() ? 0 : dit->second;
            if (n == 0) continue;
            auto dout = c.diffs.find({m, w});
            int r_out = dout == c.diffs.end() ? 0 : field_rank(dout->second);
            auto din = c.diffs.find({m - 1, w});
            int r_in = din == c.diffs.end() ? 0 : field_rank(din->second);
            int h = n - r_out - r_in;
            if (h < 0) throw std::logic_error("cohomology_dims: negative dimension");
            if (h > 0) rep.rows.push_back({m, w, h});
        }
    }
    std::sort(rep.rows.begin(), rep.rows.end(), [](const CohomRow& a, const CohomRow& b) {
        return std::tie(a.degree, a.weight) < std::tie(b.degree, b.weight);
    });
    return rep;
}

CohomologyReport cech_oracle(const CoverPtr& cover,
                             const std::map<std::pair<int, int>, Scalar>& units,
                             int weight_window) {
    const RingedCover& cov = *cover;
    // validate units and complete inverses/diagonals through the
    // line-bundle constructor, then read the completed table back
    TwPerfComplex lb = line_bundle(cover, units);
    std::map<std::pair<int, int>, Scalar> g;
    for (const auto& [I, gm] : lb.a.components())
        if (I.size() == 2) g[{I[0], I[1]}] = gm.block(0).at(0, 0);

    CoverWeights cw = compute_cover_weights(cov);
    if (!cw.ok)
        throw std::invalid_argument("cech_oracle: no monomial weight structure (" +
                                    cw.why_not + ")");
    int n = cov.size();
    // trivialization offsets nu: nu_j - nu_i = weight(g_ij)
    std::vector<ExpVec> nu(n, ExpVec(cw.rank, 0));
    std::vector<bool> have(n, false);
    have[0] = true;
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& [key, val] : g) {
            auto [i, j] = key;
            ExpVec wg(cw.rank, 0);
            if (val.ring()->kind == RingKind::Laurent)
                wg = cw.weight_of(index_set({i, j}), val.monomial_exponent());
            if (have[i] && !have[j]) {
                nu[j] = nu[i];
                for (int t = 0; t < cw.rank; ++t) nu[j][t] += wg[t];
                have[j] = true;
                progress = true;
            } else if (have[j] && !have[i]) {
                nu[i] = nu[j];
                for (int t = 0; t < cw.rank; ++t) nu[i][t] -= wg[t];
                have[i] = true;
                progress = true;
            }
        }
    }

    // strictly increasing tuples per degree
    std::vector<std::vector<MultiIndex>> tuples(n + 1);
    for (int mask = 1; mask < (1 << n); ++mask) {
        MultiIndex I;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) I.push_back(i);
        if (!cov.tuple_in_nerve(I)) continue;
        tuples[I.size() - 1].push_back(I);
    }
    for (auto& v : tuples) std::sort(v.begin(), v.end());

    SlotTable table;
    for (int p = 0; p < n; ++p)
        for (const auto& I : tuples[p]) {
            std::set<int> s = index_set(I);
            for (const auto& w : weight_box(cw.rank, weight_window)) {
                ExpVec target = w;
                for (int t = 0; t < cw.rank; ++t) target[t] -= nu[I.front()][t];
                auto e = cw.exponent_of(cov, s, target);
                if (!e) continue;
                table.add(p, w, SlotKey{I, 0, 0, 0, *e});
            }
        }

    RingPtr base = base_field_of(cov.ring_of_tuple({0}));
    std::map<std::pair<int, ExpVec>, Matrix> diffs;
    for (const auto& [kw, vec] : table.buckets) {
        auto [p, w] = kw;
        auto tgt_it = table.buckets.find({p + 1, w});
        int tgt_dim = tgt_it == table.buckets.end() ? 0
                                                    : static_cast<int>(tgt_it->second.size());
        Matrix dm(base, tgt_dim, static_cast<int>(vec.size()));
        for (std::size_t sidx = 0; sidx < vec.size(); ++sidx) {
            const SlotKey& sk = vec[sidx];
            std::set<int> s = index_set(sk.tuple);
            const RingPtr& ring = cov.ring_of(s);
            Scalar val = ring->kind == RingKind::Laurent
                             ? Scalar::monomial(ring, sk.mono, Scalar::one(base))
                             : Scalar::one(ring);
            // all one-index insertions keeping the tuple strictly increasing
            for (int v = 0; v < n; ++v) {
                if (std::binary_search(sk.tuple.begin(), sk.tuple.end(), v)) continue;
                MultiIndex J;
                int pos = 0;
                for (std::size_t t = 0; t < sk.tuple.size() && sk.tuple[t] < v; ++t) ++pos;
                J.assign(sk.tuple.begin(), sk.tuple.begin() + pos);
                J.push_back(v);
                J.insert(J.end(), sk.tuple.begin() + pos, sk.tuple.end());
                if (!cov.tuple_in_nerve(J)) continue;
                std::set<int> sj = index_set(J);
                Scalar img = cov.restriction(s, sj).apply(val);
                if (pos == 0) {
                    // 0th face: retrivialize through g_{v, old first index}
                    RingHom r2 = cov.restriction(index_set({v, sk.tuple.front()}), sj);
                    img = r2.apply(g.at({v, sk.tuple.front()})) * img;
                }
                if (pos % 2 == 1) img = -img;
                // expand img into target slots over ring(sj)
                auto add_term = [&](const ExpVec& mono, const Scalar& coeff) {
                    SlotKey tk{J, 0, 0, 0, mono};
                    auto& lk = table.lookup[p + 1];
                    auto it = lk.find(tk);
                    if (it == lk.end())
                        throw std::logic_error("cech_oracle: slot out of window");
                    dm.set(it->second.second, static_cast<int>(sidx),
                           dm.at(it->second.second, static_cast<int>(sidx)) + coeff);
                };
                if (img.is_zero()) continue;
                if (img.ring()->kind == RingKind::Laurent) {
                    for (const auto& [mono, coeff] : img.terms()) add_term(mono, coeff);
                } else {
                    add_term({}, img);
                }
            }
        }
        diffs[{p, w}] = std::move(dm);
    }

    CohomologyReport rep;
    rep.weighted = true;
    rep.window_exact = true;
    for (int p = 0; p < n; ++p)
        for (const auto& w : weight_box(cw.rank, weight_window)) {
            auto dit = table.buckets.find({p, w});
            int dim = dit == table.buckets.end() ? 0
                                                 : static_cast<int>(dit->second.size());
            if (dim == 0) continue;
            auto dout = diffs.find({p, w});
            int r_out = dout == diffs.end() ? 0 : field_rank(dout->second);
            auto din = diffs.find({p - 1, w});
            int r_in = din == diffs.end() ? 0 : field_rank(din->second);
            int h = dim - r_out - r_in;
            if (h < 0) throw std::logic_error("cech_oracle: negative dimension");
            if (h > 0) rep.rows.push_back({p, w, h});
        }
    std::sort(rep.rows.begin(), rep.rows.end(), [](const CohomRow& a, const CohomRow& b) {
        return std::tie(a.degree, a.weight) < std::tie(b.degree, b.weight);
    });
    return rep;
}

}  // namespace twk
