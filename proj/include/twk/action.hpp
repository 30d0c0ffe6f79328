#pragma once

#include "twk/ordinal.hpp"

#include <string>
#include <vector>

namespace twk {

/// Finite group given by its multiplication table; element 0 is the
/// identity.
struct FiniteGroup {
    std::vector<std::vector<int>> table;  // table[g][h] = g*h

    int order() const { return static_cast<int>(table.size()); }
    int mul(int g, int h) const { return table.at(g).at(h); }
    int identity() const { return 0; }
    int inverse(int g) const;
    void validate() const;  // associativity, identity, inverses

    static FiniteGroup trivial();
    static FiniteGroup cyclic(int n);
};

/// Right action of a finite group on a finite set {0..n-1}.
struct GroupAction {
    FiniteGroup group;
    int carrier_size = 0;
    std::vector<std::vector<int>> act;  // act[x][g] = x.g

    int apply(int x, int g) const { return act.at(x).at(g); }
    void validate() const;  // x.e = x and (x.g).h = x.(gh)

    static GroupAction trivial(FiniteGroup g, int carrier_size);
    static GroupAction regular(FiniteGroup g);  // G acting on itself
};

/// Element of [X/G]_k = X x G^k: first entry the carrier point, then k
/// group elements.
using QuotientCell = std::vector<int>;

/// All cells of [X/G]_k in lexicographic order.
std::vector<QuotientCell> quotient_level(const GroupAction& a, int k);

/// Face map d_i : [X/G]_k -> [X/G]_{k-1}.
QuotientCell quotient_face(const GroupAction& a, int i, const QuotientCell& c);

/// Degeneracy s_i : [X/G]_k -> [X/G]_{k+1} (inserts the identity).
QuotientCell quotient_degeneracy(const GroupAction& a, int i, const QuotientCell& c);

/// Front face rho_{k,p} keeps (x, g_1..g_p).
QuotientCell front_face(const GroupAction& a, int p, const QuotientCell& c);

/// Back face tau_{k,p} sends (x, g_1..g_k) to (x.g_1...g_{k-p}, g_{k-p+1}..g_k).
QuotientCell back_face(const GroupAction& a, int p, const QuotientCell& c);

/// Image of a cell of [X/G]_m under the simplicial structure map
/// induced by a monotone sigma : [n] -> [m].
QuotientCell quotient_structure_map(const GroupAction& a, const OrdinalMap& sigma,
                                    const QuotientCell& c);

}  // namespace twk
