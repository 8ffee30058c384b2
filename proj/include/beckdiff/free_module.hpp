#pragma once

#include <optional>
#include <string>
#include <vector>

#include "beckdiff/polynomial.hpp"

namespace beckdiff {

/* A term of a free-module element: coefficient * monomial * e_pos. */
struct ModuleTerm {
    std::size_t pos = 0;
    Monomial mono;
    Scalar coeff;
};

/* Element of a free module k[x]^rank, stored as one polynomial per
 * coordinate. All coordinates share the ambient variable list and base. */
class FreeModuleElement {
  public:
    FreeModuleElement() = default;

    FreeModuleElement(std::size_t rank, VarListPtr vars, ScalarKind base)
        : coords_(rank, Polynomial::zero(vars, base)), vars_(std::move(vars)), base_(base) {}

    explicit FreeModuleElement(std::vector<Polynomial> coords) {
        if (coords.empty()) fail(ErrorCode::RankMismatch, "rank must be positive");
        vars_ = coords.front().vars_ptr();
        base_ = coords.front().base();
        for (const auto& c : coords) coords.front().require_context(c);
        coords_ = std::move(coords);
    }

    static FreeModuleElement basis_vector(std::size_t rank, std::size_t i, VarListPtr vars,
                                          ScalarKind base) {
        FreeModuleElement v(rank, vars, base);
        v.coords_[i] = Polynomial::one(vars, base);
        return v;
    }

    std::size_t rank() const { return coords_.size(); }
    const VarListPtr& vars_ptr() const { return vars_; }
    const ScalarKind& base() const { return base_; }
    const Polynomial& coord(std::size_t i) const { return coords_[i]; }
    const std::vector<Polynomial>& coords() const { return coords_; }

    bool is_zero() const {
        for (const auto& c : coords_)
            if (!c.is_zero()) return false;
        return true;
    }

    std::size_t term_count() const {
        std::size_t n = 0;
        for (const auto& c : coords_) n += c.term_count();
        return n;
    }

    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (const auto& c : coords_)
            if (!c.is_zero() && c.total_degree() > d) d = c.total_degree();
        return d;
    }

    void require_compatible(const FreeModuleElement& o) const {
        if (rank() != o.rank()) fail(ErrorCode::RankMismatch, "free-module ranks differ");
        if (!(base_ == o.base_ && (vars_ == o.vars_ || *vars_ == *o.vars_)))
            fail(ErrorCode::MixedContext, "module elements live over different contexts");
    }

    bool operator==(const FreeModuleElement& o) const {
        return coords_ == o.coords_;
    }
    bool operator!=(const FreeModuleElement& o) const { return !(*this == o); }

    FreeModuleElement operator+(const FreeModuleElement& o) const {
        require_compatible(o);
        FreeModuleElement r(*this);
        for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] = r.coords_[i] + o.coords_[i];
        return r;
    }

    FreeModuleElement operator-(const FreeModuleElement& o) const {
        require_compatible(o);
        FreeModuleElement r(*this);
        for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] = r.coords_[i] - o.coords_[i];
        return r;
    }

    FreeModuleElement scaled(const Scalar& c) const {
        FreeModuleElement r(*this);
        for (auto& p : r.coords_) p = p.scaled(c);
        return r;
    }

    /* (c * mono) * this, the monomial-multiple used by division steps. */
    FreeModuleElement mul_term(const Monomial& mono, const Scalar& c) const {
        FreeModuleElement r(*this);
        for (auto& p : r.coords_) p = p.mul_term(mono, c);
        return r;
    }

    FreeModuleElement mul_poly(const Polynomial& f) const {
        FreeModuleElement r(*this);
        for (auto& p : r.coords_) p = p * f;
        return r;
    }

    /* Greatest module term with respect to the order; element must be nonzero. */
    ModuleTerm leading_term(const MonomialOrder& ord) const {
        std::optional<ModuleTerm> best;
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (coords_[i].is_zero()) continue;
            auto [m, c] = coords_[i].leading_term(ord);
            if (!best || ord.compare(i, m, best->pos, best->mono) > 0) best = ModuleTerm{i, m, c};
        }
        return *best;
    }

    std::string str() const {
        std::string out = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) out += ", ";
            out += coords_[i].str();
        }
        return out + ")";
    }

  private:
    std::vector<Polynomial> coords_;
    VarListPtr vars_;
    ScalarKind base_;
};

}  // namespace beckdiff
