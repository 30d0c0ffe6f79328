#pragma once

#include "twk/cover.hpp"
#include "twk/twisted.hpp"

#include <memory>

namespace twk::fixtures {

// Standard two-chart cover: polynomial sections on the pieces, Laurent
// sections on the overlap, restrictions t -> u and s -> 1/u.
inline CoverPtr p1_cover() {
    RingPtr Q = RingDesc::rationals();
    RingPtr Rt = RingDesc::laurent(Q, {{"t", false}});
    RingPtr Rs = RingDesc::laurent(Q, {{"s", false}});
    RingPtr Ru = RingDesc::laurent(Q, {{"u", true}});
    auto mono = [&](const RingPtr& r, std::int64_t e) {
        return Scalar::monomial(r, {e}, Scalar::one(Q));
    };
    std::vector<std::set<int>> nerve = {{0}, {1}, {0, 1}};
    std::map<std::set<int>, RingPtr> rings = {{{0}, Rt}, {{1}, Rs}, {{0, 1}, Ru}};
    std::map<std::pair<std::set<int>, std::set<int>>, RingHom> res;
    res.emplace(std::make_pair(std::set<int>{0}, std::set<int>{0}), RingHom::identity(Rt));
    res.emplace(std::make_pair(std::set<int>{1}, std::set<int>{1}), RingHom::identity(Rs));
    res.emplace(std::make_pair(std::set<int>{0, 1}, std::set<int>{0, 1}),
                RingHom::identity(Ru));
    res.emplace(std::make_pair(std::set<int>{0}, std::set<int>{0, 1}),
                RingHom(Rt, Ru, {{"t", mono(Ru, 1)}}));
    res.emplace(std::make_pair(std::set<int>{1}, std::set<int>{0, 1}),
                RingHom(Rs, Ru, {{"s", mono(Ru, -1)}}));
    return std::make_shared<RingedCover>(std::vector<std::string>{"U0", "U1"}, nerve,
                                         rings, res);
}

// O(n) on the cover above: transition unit u^n from chart 1 to chart 0.
inline TwPerfComplex p1_line_bundle(const CoverPtr& cover, int n) {
    RingPtr Ru = cover->ring_of_tuple({0, 1});
    Scalar g01 = Scalar::monomial(Ru, {n}, Scalar::one(RingDesc::rationals()));
    return line_bundle(cover, {{{0, 1}, g01}});
}

}  // namespace twk::fixtures
