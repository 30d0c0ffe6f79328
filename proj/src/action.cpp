#include "twk/action.hpp"

#include <stdexcept>

namespace twk {

int FiniteGroup::inverse(int g) const {
    for (int h = 0; h < order(); ++h)
        if (mul(g, h) == identity()) return h;
    throw std::invalid_argument("FiniteGroup: no inverse, table is not a group");
}

void FiniteGroup::validate() const {
    int n = order();
    if (n == 0) throw std::invalid_argument("FiniteGroup: empty");
    for (int g = 0; g < n; ++g) {
        if (static_cast<int>(table[g].size()) != n)
            throw std::invalid_argument("FiniteGroup: ragged table");
        if (mul(0, g) != g || mul(g, 0) != g)
            throw std::invalid_argument("FiniteGroup: element 0 is not an identity");
    }
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            if (mul(g, h) < 0 || mul(g, h) >= n)
                throw std::invalid_argument("FiniteGroup: value out of range");
            for (int k = 0; k < n; ++k)
                if (mul(mul(g, h), k) != mul(g, mul(h, k)))
                    throw std::invalid_argument("FiniteGroup: not associative");
        }
    for (int g = 0; g < n; ++g) inverse(g);
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup{{{0}}}; }

FiniteGroup FiniteGroup::cyclic(int n) {
    FiniteGroup g;
    g.table.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.table[a][b] = (a + b) % n;
    return g;
}

void GroupAction::validate() const {
    group.validate();
    if (carrier_size <= 0) throw std::invalid_argument("GroupAction: empty carrier");
    if (static_cast<int>(act.size()) != carrier_size)
        throw std::invalid_argument("GroupAction: table size mismatch");
    for (int x = 0; x < carrier_size; ++x) {
        if (static_cast<int>(act[x].size()) != group.order())
            throw std::invalid_argument("GroupAction: ragged table");
        if (apply(x, group.identity()) != x)
            throw std::invalid_argument("GroupAction: x.e != x");
        for (int g = 0; g < group.order(); ++g) {
            if (apply(x, g) < 0 || apply(x, g) >= carrier_size)
                throw std::invalid_argument("GroupAction: value out of range");
            for (int h = 0; h < group.order(); ++h)
                if (apply(apply(x, g), h) != apply(x, group.mul(g, h)))
                    throw std::invalid_argument("GroupAction: not a right action");
        }
    }
}

GroupAction GroupAction::trivial(FiniteGroup g, int carrier_size) {
    GroupAction a;
    a.carrier_size = carrier_size;
    a.act.assign(carrier_size, std::vector<int>(g.order()));
    for (int x = 0; x < carrier_size; ++x)
        for (int h = 0; h < g.order(); ++h) a.act[x][h] = x;
    a.group = std::move(g);
    return a;
}

GroupAction GroupAction::regular(FiniteGroup g) {
    GroupAction a;
    a.carrier_size = g.order();
    a.act = g.table;
    a.group = std::move(g);
    return a;
}

std::vector<QuotientCell> quotient_level(const GroupAction& a, int k) {
    if (k < 0) throw std::invalid_argument("quotient_level: negative level");
    std::vector<QuotientCell> out;
    QuotientCell c(static_cast<std::size_t>(k) + 1, 0);
    for (;;) {
        out.push_back(c);
        int j = k;
        while (j >= 0) {
            int limit = (j == 0 ? a.carrier_size : a.group.order()) - 1;
            if (c[j] < limit) break;
            --j;
        }
        if (j < 0) break;
        ++c[j];
        for (int i = j + 1; i <= k; ++i) c[i] = 0;
    }
    return out;
}

static void check_cell(const GroupAction& a, const QuotientCell& c) {
    if (c.empty()) throw std::invalid_argument("quotient cell: empty");
    if (c[0] < 0 || c[0] >= a.carrier_size)
        throw std::invalid_argument("quotient cell: carrier point out of range");
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] < 0 || c[i] >= a.group.order())
            throw std::invalid_argument("quotient cell: group element out of range");
}

QuotientCell quotient_face(const GroupAction& a, int i, const QuotientCell& c) {
    check_cell(a, c);
    int k = static_cast<int>(c.size()) - 1;
    if (k == 0) throw std::invalid_argument("quotient_face: no faces at level 0");
    if (i < 0 || i > k) throw std::invalid_argument("quotient_face: index out of range");
    QuotientCell out;
    if (i == 0) {
        out.push_back(a.apply(c[0], c[1]));
        for (int j = 2; j <= k; ++j) out.push_back(c[j]);
    } else if (i == k) {
        out.assign(c.begin(), c.end() - 1);
    } else {
        out.assign(c.begin(), c.begin() + i);  // x, g_1..g_{i-1}
        out.push_back(a.group.mul(c[i], c[i + 1]));
        for (int j = i + 2; j <= k; ++j) out.push_back(c[j]);
    }
    return out;
}

QuotientCell quotient_degeneracy(const GroupAction& a, int i, const QuotientCell& c) {
    check_cell(a, c);
    int k = static_cast<int>(c.size()) - 1;
    if (i < 0 || i > k)
        throw std::invalid_argument("quotient_degeneracy: index out of range");
    QuotientCell out(c.begin(), c.begin() + i + 1);  // x, g_1..g_i
    out.push_back(a.group.identity());
    for (int j = i + 1; j <= k; ++j) out.push_back(c[j]);
    return out;
}

QuotientCell front_face(const GroupAction& a, int p, const QuotientCell& c) {
    check_cell(a, c);
    int k = static_cast<int>(c.size()) - 1;
    if (p < 0 || p > k) throw std::invalid_argument("front_face: p out of range");
    return QuotientCell(c.begin(), c.begin() + p + 1);
}

QuotientCell back_face(const GroupAction& a, int p, const QuotientCell& c) {
    check_cell(a, c);
    int k = static_cast<int>(c.size()) - 1;
    if (p < 0 || p > k) throw std::invalid_argument("back_face: p out of range");
    int x = c[0];
    for (int j = 1; j <= k - p; ++j) x = a.apply(x, c[j]);
    QuotientCell out{x};
    for (int j = k - p + 1; j <= k; ++j) out.push_back(c[j]);
    return out;
}

QuotientCell quotient_structure_map(const GroupAction& a, const OrdinalMap& sigma,
                                    const QuotientCell& c) {
    check_cell(a, c);
    sigma.validate();
    int m = static_cast<int>(c.size()) - 1;
    if (sigma.target_size != m)
        throw std::invalid_argument("quotient_structure_map: level mismatch");
    // (x, g) corresponds to the path x, x.g1, ...; sigma reindexes the path
    int x = c[0];
    for (int j = 1; j <= sigma(0); ++j) x = a.apply(x, c[j]);
    QuotientCell out{x};
    for (int i = 1; i <= sigma.source_size; ++i) {
        int h = a.group.identity();
        for (int j = sigma(i - 1) + 1; j <= sigma(i); ++j) h = a.group.mul(h, c[j]);
        out.push_back(h);
    }
    return out;
}

}  // namespace twk
