#pragma once

#include <map>

#include "beckdiff/torsor.hpp"

namespace beckdiff {

/* Result of testing the canonical map Hom(B, Z) -> Hom(B, Y) along a torsor
 * or Beck module: injectivity always, surjectivity for Beck modules (where
 * the unit section provides the lift). */
struct LiftReport {
    std::size_t homs_total = 0;  // |Hom(B, Z)|
    std::size_t homs_base = 0;   // |Hom(B, Y)|
    bool injective = false;
    // a colliding pair of image vectors, when not injective
    std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> collision;
    std::optional<bool> surjective;  // Beck-module targets only
    std::optional<bool> bijective;
};

namespace detail {

inline LiftReport lift_check_impl(const AlgebraPtr& B, const RingTablePtr& Z,
                                  const RingTablePtr& Y, const std::vector<std::size_t>& qmap,
                                  const std::vector<std::size_t>* unit_section,
                                  const Limits& lim) {
    HomSet HZ = enumerate_homs(B, Z, lim);
    HomSet HY = enumerate_homs(B, Y, lim);
    LiftReport report;
    report.homs_total = HZ.size();
    report.homs_base = HY.size();

    report.injective = true;
    std::map<std::vector<std::size_t>, std::size_t> seen;
    for (std::size_t i = 0; i < HZ.size(); ++i) {
        std::vector<std::size_t> composite;
        composite.reserve(HZ.images[i].size());
        for (std::size_t v : HZ.images[i]) composite.push_back(qmap[v]);
        auto [it, inserted] = seen.emplace(std::move(composite), i);
        if (!inserted && report.injective) {
            report.injective = false;
            report.collision = std::make_pair(HZ.images[it->second], HZ.images[i]);
        }
    }

    if (unit_section != nullptr) {
        bool onto = true;
        for (const auto& beta : HY.images) {
            std::vector<std::size_t> lift;
            lift.reserve(beta.size());
            for (std::size_t v : beta) lift.push_back((*unit_section)[v]);
            if (!HZ.find(lift).has_value()) onto = false;  // cannot happen for a verified module
        }
        report.surjective = onto;
        report.bijective = onto && report.injective;
    }
    return report;
}

}  // namespace detail

/* Injectivity of Hom(B, Z) -> Hom(B, Y) for a verified torsor. For a split
 * torsor the section also provides the surjectivity direction. */
inline LiftReport lift_check(const AlgebraPtr& B, const TorsorCandidate& T,
                             const Limits& lim = Limits{}) {
    const std::vector<std::size_t>* section =
        T.section.has_value() ? &*T.section : nullptr;
    return detail::lift_check_impl(B, T.total(), T.base(), T.map.map, section, lim);
}

/* Bijectivity of Hom(B, C + M) -> Hom(B, C) for a Beck module: injectivity as
 * for any torsor, surjectivity via the unit-section lift of each base hom. */
inline LiftReport lift_check(const AlgebraPtr& B, const BeckModule& M,
                             const Limits& lim = Limits{}) {
    return detail::lift_check_impl(B, M.total, M.base, M.projection, &M.unit_section, lim);
}

}  // namespace beckdiff
