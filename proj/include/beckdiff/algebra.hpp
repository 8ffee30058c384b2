#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "beckdiff/groebner.hpp"

namespace beckdiff {

/* A finitely presented A-algebra B = A[x_1..x_n]/(f_1..f_m), where A is the
 * base scalar domain. Base Z is admitted for finite-table workflows only. */
struct AlgebraPresentation {
    ScalarKind base;
    VarList generators;
    std::vector<Polynomial> relations;
};

/* Presentation plus the cached data every other operation needs: the reduced
 * Groebner basis of the relation ideal (field bases) and the standard-monomial
 * basis of the quotient when it is finite. Immutable after validation. */
class ValidatedAlgebra {
  public:
    static std::shared_ptr<const ValidatedAlgebra> validate(AlgebraPresentation pres,
                                                            const Limits& lim = Limits{}) {
        auto out = std::shared_ptr<ValidatedAlgebra>(new ValidatedAlgebra());
        std::set<std::string> seen;
        for (const auto& g : pres.generators)
            if (!seen.insert(g).second) fail(ErrorCode::DuplicateGenerator, "'" + g + "'");
        out->vars_ = make_vars(pres.generators);
        for (const auto& r : pres.relations) {
            if (!(r.base() == pres.base))
                fail(ErrorCode::MixedContext, "relation base differs from presentation base");
            if (!(r.vars() == pres.generators))
                fail(ErrorCode::UnknownVariableInRelation,
                     "relation uses a variable list other than the declared generators");
        }
        out->pres_ = std::move(pres);
        if (out->pres_.base.is_field()) {
            out->gb_ = buchberger(out->pres_.relations, MonomialOrder::degrevlex(), out->vars_,
                                  out->pres_.base, lim);
            out->qbasis_ = beckdiff::quotient_basis(*out->gb_, out->vars_->size());
        }
        return out;
    }

    const AlgebraPresentation& presentation() const { return pres_; }
    const ScalarKind& base() const { return pres_.base; }
    const VarList& generators() const { return pres_.generators; }
    const VarListPtr& vars_ptr() const { return vars_; }
    const std::vector<Polynomial>& relations() const { return pres_.relations; }
    bool field_base() const { return pres_.base.is_field(); }

    const GroebnerBasis& groebner() const {
        if (!gb_) fail(ErrorCode::NonFieldBase, "no Groebner basis over base " + pres_.base.str());
        return *gb_;
    }

    /* Canonical representative of f in B (field bases). */
    Polynomial reduce(const Polynomial& f, const Limits& lim = Limits{}) const {
        return normal_form(f, groebner(), lim);
    }

    /* Standard monomials when the quotient is finite-dimensional; nullopt
     * when it is not (or the base is not a field). */
    const std::optional<std::vector<Monomial>>& quotient_basis() const { return qbasis_; }

    bool zero_dimensional() const { return qbasis_.has_value(); }

    Polynomial parse(std::string_view text) const { return parse_poly(text, vars_, pres_.base); }

    std::string str() const {
        std::string out = pres_.base.str() + "[";
        for (std::size_t i = 0; i < pres_.generators.size(); ++i)
            out += (i ? "," : "") + pres_.generators[i];
        out += "]";
        if (!pres_.relations.empty()) {
            out += "/(";
            for (std::size_t i = 0; i < pres_.relations.size(); ++i)
                out += (i ? ", " : "") + pres_.relations[i].str();
            out += ")";
        }
        return out;
    }

  private:
    ValidatedAlgebra() = default;

    AlgebraPresentation pres_;
    VarListPtr vars_;
    std::optional<GroebnerBasis> gb_;
    std::optional<std::vector<Monomial>> qbasis_;
};

using AlgebraPtr = std::shared_ptr<const ValidatedAlgebra>;

inline AlgebraPtr validate_presentation(AlgebraPresentation pres, const Limits& lim = Limits{}) {
    return ValidatedAlgebra::validate(std::move(pres), lim);
}

}  // namespace beckdiff
