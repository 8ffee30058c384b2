#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "beckdiff/error.hpp"

namespace beckdiff {

/* A power product in a fixed ambient variable list: exponent vector whose
 * length always equals the ambient variable count. */
class Monomial {
  public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

    static Monomial variable(std::size_t nvars, std::size_t i) {
        Monomial m(nvars);
        m.exps_[i] = 1;
        return m;
    }

    std::size_t nvars() const { return exps_.size(); }
    std::uint32_t exp(std::size_t i) const { return exps_[i]; }
    const std::vector<std::uint32_t>& exps() const { return exps_; }

    std::uint64_t total_degree() const {
        return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
    }

    bool is_one() const {
        for (auto e : exps_)
            if (e != 0) return false;
        return true;
    }

    bool divides(const Monomial& m) const {
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] > m.exps_[i]) return false;
        return true;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += o.exps_[i];
        return r;
    }

    /* Quotient this/m; caller must ensure m divides this. */
    Monomial quotient(const Monomial& m) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= m.exps_[i];
        return r;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a);
        for (std::size_t i = 0; i < r.exps_.size(); ++i)
            if (b.exps_[i] > r.exps_[i]) r.exps_[i] = b.exps_[i];
        return r;
    }

    bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

    /* Storage order for term maps; not a monomial order (1 is not minimal). */
    bool operator<(const Monomial& o) const { return exps_ < o.exps_; }

    std::string str(const std::vector<std::string>& vars) const {
        std::string out;
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            if (exps_[i] == 0) continue;
            if (!out.empty()) out += "*";
            out += vars[i];
            if (exps_[i] > 1) out += "^" + std::to_string(exps_[i]);
        }
        return out.empty() ? "1" : out;
    }

  private:
    std::vector<std::uint32_t> exps_;
};

/* Admissible term orders. PositionOverTerm is the module order: free-module
 * positions compared first (ascending generator index ranks higher), inner
 * order breaking ties on the monomial part. */
struct MonomialOrder {
    enum class Kind { DegRevLex, Lex, PositionOverTerm };

    Kind kind = Kind::DegRevLex;
    Kind inner = Kind::DegRevLex;  // PositionOverTerm only; must not itself be POT

    static MonomialOrder degrevlex() { return {Kind::DegRevLex, Kind::DegRevLex}; }
    static MonomialOrder lex() { return {Kind::Lex, Kind::Lex}; }
    static MonomialOrder position_over_term(Kind inner_kind = Kind::DegRevLex) {
        if (inner_kind == Kind::PositionOverTerm)
            fail(ErrorCode::InvalidInput, "PositionOverTerm cannot nest");
        return {Kind::PositionOverTerm, inner_kind};
    }

    bool operator==(const MonomialOrder& o) const { return kind == o.kind && inner == o.inner; }
    bool operator!=(const MonomialOrder& o) const { return !(*this == o); }

    /* -1, 0, +1 for a < b, a == b, a > b. */
    int compare(const Monomial& a, const Monomial& b) const {
        Kind k = (kind == Kind::PositionOverTerm) ? inner : kind;
        return k == Kind::Lex ? lex_cmp(a, b) : degrevlex_cmp(a, b);
    }

    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

    /* Module monomials (position, monomial). */
    int compare(std::size_t pos_a, const Monomial& a, std::size_t pos_b, const Monomial& b) const {
        if (pos_a != pos_b) return pos_a < pos_b ? 1 : -1;
        return compare(a, b);
    }

    std::string str() const {
        switch (kind) {
            case Kind::DegRevLex: return "degrevlex";
            case Kind::Lex: return "lex";
            case Kind::PositionOverTerm:
                return std::string("position-over-") + (inner == Kind::Lex ? "lex" : "degrevlex");
        }
        return "?";
    }

  private:
    static int lex_cmp(const Monomial& a, const Monomial& b) {
        for (std::size_t i = 0; i < a.nvars(); ++i) {
            if (a.exp(i) != b.exp(i)) return a.exp(i) > b.exp(i) ? 1 : -1;
        }
        return 0;
    }

    static int degrevlex_cmp(const Monomial& a, const Monomial& b) {
        std::uint64_t da = a.total_degree(), db = b.total_degree();
        if (da != db) return da > db ? 1 : -1;
        // equal degree: the last variable with differing exponent decides,
        // and the larger exponent there makes the monomial smaller
        for (std::size_t i = a.nvars(); i-- > 0;) {
            if (a.exp(i) != b.exp(i)) return a.exp(i) > b.exp(i) ? -1 : 1;
        }
        return 0;
    }
};

}  // namespace beckdiff
