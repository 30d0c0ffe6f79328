#include "twk/graded.hpp"

#include <sstream>

namespace twk {

GradedModule::GradedModule(std::map<int, int> ranks) : ranks_(std::move(ranks)) {
    for (auto it = ranks_.begin(); it != ranks_.end();) {
        if (it->second < 0) throw std::invalid_argument("GradedModule: negative rank");
        it = it->second == 0 ? ranks_.erase(it) : std::next(it);
    }
}

int GradedModule::rank(int degree) const {
    auto it = ranks_.find(degree);
    return it == ranks_.end() ? 0 : it->second;
}

int GradedModule::min_degree() const {
    if (ranks_.empty()) throw std::logic_error("GradedModule::min_degree: zero module");
    return ranks_.begin()->first;
}

int GradedModule::max_degree() const {
    if (ranks_.empty()) throw std::logic_error("GradedModule::max_degree: zero module");
    return ranks_.rbegin()->first;
}

GradedModule GradedModule::shifted(int by) const {
    std::map<int, int> r;
    for (const auto& [d, k] : ranks_) r[d + by] = k;
    return GradedModule(std::move(r));
}

GradedModule GradedModule::direct_sum(const GradedModule& o) const {
    std::map<int, int> r = ranks_;
    for (const auto& [d, k] : o.ranks_) r[d] += k;
    return GradedModule(std::move(r));
}

GradedMap::GradedMap(GradedModule source, GradedModule target, int degree, RingPtr ring)
    : src_(std::move(source)), tgt_(std::move(target)), deg_(degree),
      ring_(std::move(ring)) {
    if (!ring_) throw std::invalid_argument("GradedMap: null ring");
}

GradedMap GradedMap::identity(const GradedModule& m, RingPtr ring) {
    GradedMap f(m, m, 0, ring);
    for (const auto& [d, k] : m.ranks()) f.set_block(d, Matrix::identity(ring, k));
    return f;
}

GradedMap GradedMap::zero(GradedModule source, GradedModule target, int degree,
                          RingPtr ring) {
    return GradedMap(std::move(source), std::move(target), degree, std::move(ring));
}

Matrix GradedMap::block(int d) const {
    auto it = blocks_.find(d);
    if (it != blocks_.end()) return it->second;
    return Matrix(ring_, tgt_.rank(d + deg_), src_.rank(d));
}

void GradedMap::set_block(int d, Matrix m) {
    if (m.rows() != tgt_.rank(d + deg_) || m.cols() != src_.rank(d))
        throw std::invalid_argument("GradedMap::set_block: shape mismatch");
    if (!(*m.ring() == *ring_))
        throw std::invalid_argument("GradedMap::set_block: ring mismatch");
    if (m.is_zero()) blocks_.erase(d);
    else blocks_[d] = std::move(m);
}

void GradedMap::prune() {
    for (auto it = blocks_.begin(); it != blocks_.end();)
        it = it->second.is_zero() ? blocks_.erase(it) : std::next(it);
}

bool GradedMap::is_zero() const {
    for (const auto& [d, m] : blocks_)
        if (!m.is_zero()) return false;
    return true;
}

bool GradedMap::operator==(const GradedMap& o) const {
    if (!(src_ == o.src_) || !(tgt_ == o.tgt_) || deg_ != o.deg_) return false;
    if (!(*ring_ == *o.ring_)) return false;
    for (const auto& [d, m] : blocks_)
        if (!(o.block(d) == m)) return false;
    for (const auto& [d, m] : o.blocks_)
        if (!(block(d) == m)) return false;
    return true;
}

static void check_parallel(const GradedMap& a, const GradedMap& b) {
    if (!(a.source() == b.source()) || !(a.target() == b.target()) ||
        a.degree() != b.degree() || !(*a.ring() == *b.ring()))
        throw std::invalid_argument("GradedMap: sum shape mismatch");
}

GradedMap GradedMap::operator+(const GradedMap& o) const {
    check_parallel(*this, o);
    GradedMap f(src_, tgt_, deg_, ring_);
    f.blocks_ = blocks_;
    for (const auto& [d, m] : o.blocks_) {
        auto it = f.blocks_.find(d);
        if (it == f.blocks_.end()) f.blocks_[d] = m;
        else it->second = it->second + m;
    }
    f.prune();
    return f;
}

GradedMap GradedMap::operator-() const {
    GradedMap f(src_, tgt_, deg_, ring_);
    for (const auto& [d, m] : blocks_) f.blocks_[d] = -m;
    return f;
}

GradedMap GradedMap::operator-(const GradedMap& o) const { return *this + (-o); }

GradedMap GradedMap::scaled(const Scalar& c) const {
    GradedMap f(src_, tgt_, deg_, ring_);
    for (const auto& [d, m] : blocks_) f.blocks_[d] = m.scaled(c);
    f.prune();
    return f;
}

std::string GradedMap::str() const {
    std::ostringstream os;
    os << "deg " << deg_ << " {";
    bool first = true;
    for (const auto& [d, m] : blocks_) {
        if (!first) os << ", ";
        first = false;
        os << d << ": " << m.str();
    }
    os << "}";
    return os.str();
}

GradedMap graded_compose(const GradedMap& f, const GradedMap& g) {
    if (!(g.target() == f.source()))
        throw std::invalid_argument("graded_compose: middle module mismatch");
    if (!(*f.ring() == *g.ring()))
        throw std::invalid_argument("graded_compose: ring mismatch");
    GradedMap h(g.source(), f.target(), f.degree() + g.degree(), f.ring());
    for (const auto& [d, gm] : g.blocks()) {
        Matrix fm = f.block(d + g.degree());
        if (fm.rows() == 0 || fm.is_zero()) continue;
        Matrix prod = fm * gm;
        if (!prod.is_zero()) h.set_block(d, h.block(d) + prod);
    }
    return h;
}

GradedMap apply_hom(const RingHom& h, const GradedMap& f) {
    if (h.is_identity()) return f;
    GradedMap out(f.source(), f.target(), f.degree(), h.target());
    for (const auto& [d, m] : f.blocks()) out.set_block(d, apply_hom(h, m));
    return out;
}

GradedMap hom_differential(const GradedMap& f, const GradedMap& d_target,
                           const GradedMap& d_source) {
    GradedMap a = graded_compose(d_target, f);
    GradedMap b = graded_compose(f, d_source);
    return (f.degree() % 2 == 0) ? a - b : a + b;
}

GradedMap weight_component(const GradedMap& f, const ExpVec& w) {
    if (f.ring()->kind != RingKind::Laurent)
        throw std::invalid_argument("weight_component: ring is not Laurent");
    GradedMap out(f.source(), f.target(), f.degree(), base_field_of(f.ring()));
    for (const auto& [d, m] : f.blocks()) out.set_block(d, weight_component(m, w));
    return out;
}

bool hom_degree_possible(const GradedModule& source, const GradedModule& target,
                         int degree) {
    for (const auto& [d, k] : source.ranks())
        if (target.rank(d + degree) > 0) return true;
    return false;
}

}  // namespace twk
