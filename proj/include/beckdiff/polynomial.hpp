#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "beckdiff/monomial.hpp"
#include "beckdiff/scalar.hpp"

namespace beckdiff {

using VarList = std::vector<std::string>;
using VarListPtr = std::shared_ptr<const VarList>;

inline VarListPtr make_vars(VarList names) {
    return std::make_shared<const VarList>(std::move(names));
}

/* Immutable multivariate polynomial over a fixed variable list and scalar
 * kind. Terms are stored in a canonical map keyed by exponent vector, with no
 * zero coefficients; the zero polynomial has an empty term map. Leading terms
 * with respect to a monomial order are computed on demand. */
class Polynomial {
  public:
    using TermMap = std::map<Monomial, Scalar>;

    Polynomial() : vars_(make_vars({})), base_(ScalarKind::rationals()) {}

    Polynomial(VarListPtr vars, ScalarKind base) : vars_(std::move(vars)), base_(base) {}

    static Polynomial zero(VarListPtr vars, ScalarKind base) { return Polynomial(std::move(vars), base); }

    static Polynomial constant(VarListPtr vars, Scalar c) {
        Polynomial p(vars, c.kind());
        if (!c.is_zero()) p.terms_.emplace(Monomial(vars->size()), std::move(c));
        return p;
    }

    static Polynomial one(VarListPtr vars, ScalarKind base) {
        return constant(std::move(vars), Scalar::one(base));
    }

    static Polynomial variable(VarListPtr vars, ScalarKind base, std::size_t i) {
        Polynomial p(vars, base);
        p.terms_.emplace(Monomial::variable(vars->size(), i), Scalar::one(base));
        return p;
    }

    static Polynomial term(VarListPtr vars, Monomial m, Scalar c) {
        Polynomial p(vars, c.kind());
        if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
        return p;
    }

    const VarListPtr& vars_ptr() const { return vars_; }
    const VarList& vars() const { return *vars_; }
    std::size_t nvars() const { return vars_->size(); }
    const ScalarKind& base() const { return base_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }

    /* Coefficient of m (zero scalar if absent). */
    Scalar coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar::zero(base_) : it->second;
    }

    std::uint64_t total_degree() const {  // degree of 0 reported as 0
        std::uint64_t d = 0;
        for (const auto& [m, c] : terms_)
            if (m.total_degree() > d) d = m.total_degree();
        return d;
    }

    bool same_context(const Polynomial& o) const {
        return base_ == o.base_ && (vars_ == o.vars_ || *vars_ == *o.vars_);
    }

    void require_context(const Polynomial& o) const {
        if (!same_context(o))
            fail(ErrorCode::MixedContext, "polynomials live over different variable lists or bases");
    }

    bool operator==(const Polynomial& o) const {
        return same_context(o) && terms_ == o.terms_;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial operator+(const Polynomial& o) const {
        require_context(o);
        Polynomial r(*this);
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }

    Polynomial operator-(const Polynomial& o) const {
        require_context(o);
        Polynomial r(*this);
        for (const auto& [m, c] : o.terms_) r.add_term(m, c.neg());
        return r;
    }

    Polynomial operator-() const {
        Polynomial r(vars_, base_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, c.neg());
        return r;
    }

    Polynomial operator*(const Polynomial& o) const {
        require_context(o);
        Polynomial r(vars_, base_);
        for (const auto& [m1, c1] : terms_)
            for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
        return r;
    }

    Polynomial scaled(const Scalar& c) const {
        Polynomial r(vars_, base_);
        if (c.is_zero()) return r;
        for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
        return r;
    }

    /* c * mono * this */
    Polynomial mul_term(const Monomial& mono, const Scalar& c) const {
        Polynomial r(vars_, base_);
        if (c.is_zero()) return r;
        for (const auto& [m, k] : terms_) r.terms_.emplace(m * mono, k * c);
        return r;
    }

    Polynomial pow(std::uint64_t n) const {
        Polynomial r = one(vars_, base_);
        Polynomial b(*this);
        while (n > 0) {
            if (n & 1) r = r * b;
            b = (n >>= 1) ? b * b : b;
        }
        return r;
    }

    /* Leading term with respect to an order; polynomial must be nonzero. */
    std::pair<Monomial, Scalar> leading_term(const MonomialOrder& ord) const {
        auto it = terms_.begin();
        auto best = it;
        for (++it; it != terms_.end(); ++it)
            if (ord.compare(it->first, best->first) > 0) best = it;
        return {best->first, best->second};
    }

    Polynomial monic(const MonomialOrder& ord) const {
        if (is_zero()) return *this;
        return scaled(leading_term(ord).second.inv());
    }

    /* Formal partial derivative with respect to variable i. */
    Polynomial derivative(std::size_t i) const {
        Polynomial r(vars_, base_);
        for (const auto& [m, c] : terms_) {
            std::uint32_t e = m.exp(i);
            if (e == 0) continue;
            std::vector<std::uint32_t> exps = m.exps();
            exps[i] -= 1;
            r.add_term(Monomial(std::move(exps)), c * Scalar::of_int(base_, static_cast<long>(e)));
        }
        return r;
    }

    /* Canonical text form: terms in descending degrevlex. parse(str()) == *this. */
    std::string str() const {
        if (terms_.empty()) return "0";
        MonomialOrder ord = MonomialOrder::degrevlex();
        std::vector<const std::pair<const Monomial, Scalar>*> sorted;
        sorted.reserve(terms_.size());
        for (const auto& t : terms_) sorted.push_back(&t);
        std::sort(sorted.begin(), sorted.end(),
                  [&](auto* a, auto* b) { return ord.compare(a->first, b->first) > 0; });
        std::string out;
        for (auto* t : sorted) {
            const auto& [m, c] = *t;
            std::string cs = c.str();
            bool neg = !cs.empty() && cs[0] == '-';
            if (out.empty()) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            if (neg) cs = cs.substr(1);
            if (m.is_one()) {
                out += cs;
            } else if (cs == "1") {
                out += m.str(*vars_);
            } else {
                out += cs + "*" + m.str(*vars_);
            }
        }
        return out;
    }

  private:
    void add_term(const Monomial& m, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            Scalar s = it->second + c;
            if (s.is_zero())
                terms_.erase(it);
            else
                it->second = std::move(s);
        }
    }

    VarListPtr vars_;
    ScalarKind base_;
    TermMap terms_;
};

inline Polynomial poly_mul(const Polynomial& f, const Polynomial& g) { return f * g; }

/* Recursive-descent parser for the polynomial grammar:
 *   poly      ::= ["-"] term (("+" | "-") ["-"] term)*
 *   term      ::= coeff | coeff "*" powerprod | powerprod
 *   powerprod ::= var ("^" nat)? ("*" var ("^" nat)?)*
 *   coeff     ::= nat | nat "/" nat
 * Whitespace is insignificant; there is no implicit multiplication. */
class PolyParser {
  public:
    PolyParser(std::string_view text, VarListPtr vars, ScalarKind base)
        : text_(text), vars_(std::move(vars)), base_(base) {}

    Polynomial parse() {
        Polynomial acc = Polynomial::zero(vars_, base_);
        skip_ws();
        bool neg = accept('-');
        skip_ws();
        acc = acc + parse_term(neg);
        skip_ws();
        while (pos_ < text_.size()) {
            char op = text_[pos_];
            if (op != '+' && op != '-')
                throw Error(ErrorCode::SyntaxError, "expected '+' or '-'", pos_);
            ++pos_;
            skip_ws();
            bool sign = (op == '-');
            if (accept('-')) {  // unary minus at term head
                sign = !sign;
                skip_ws();
            }
            acc = acc + parse_term(sign);
            skip_ws();
        }
        return acc;
    }

  private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool at_digit() const {
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    bool at_ident() const {
        if (pos_ >= text_.size()) return false;
        char c = text_[pos_];
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }

    mpz_class parse_nat() {
        if (!at_digit()) throw Error(ErrorCode::SyntaxError, "expected a number", pos_);
        std::size_t start = pos_;
        while (at_digit()) ++pos_;
        return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
    }

    std::string parse_ident() {
        std::size_t start = pos_;
        ++pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
                ++pos_;
            else
                break;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    std::size_t var_index(const std::string& name, std::size_t at) {
        for (std::size_t i = 0; i < vars_->size(); ++i)
            if ((*vars_)[i] == name) return i;
        throw Error(ErrorCode::UnknownVariable, "'" + name + "'", at);
    }

    std::uint32_t parse_exponent() {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '-')
            throw Error(ErrorCode::NegativeExponent, "exponents must be nonnegative", pos_);
        mpz_class e = parse_nat();
        if (!e.fits_uint_p() || e.get_ui() > (1u << 24))
            throw Error(ErrorCode::ResourceLimit, "exponent too large", pos_);
        return static_cast<std::uint32_t>(e.get_ui());
    }

    /* var ("^" nat)? */
    Monomial parse_factor() {
        std::size_t at = pos_;
        std::string name = parse_ident();
        std::size_t i = var_index(name, at);
        std::uint32_t e = 1;
        skip_ws();
        if (accept('^')) e = parse_exponent();
        Monomial m(vars_->size());
        std::vector<std::uint32_t> exps = m.exps();
        exps[i] = e;
        return Monomial(std::move(exps));
    }

    Scalar make_coeff(const mpz_class& num, const mpz_class& den, bool neg, std::size_t at) {
        mpz_class n = neg ? mpz_class(-num) : num;
        switch (base_.kind) {
            case BaseKind::Rat:
                return Scalar::rational(n, den);
            case BaseKind::Fp: {
                Scalar s = Scalar::fp(base_.p, n);
                if (den != 1) {
                    Scalar d = Scalar::fp(base_.p, den);
                    if (d.is_zero())
                        throw Error(ErrorCode::NotInvertible, "denominator vanishes mod p", at);
                    s = s * d.inv();
                }
                return s;
            }
            case BaseKind::Int:
                if (den != 1) {
                    Scalar q = Scalar::rational(n, den);
                    if (q.den() != 1)
                        throw Error(ErrorCode::InvalidCoefficient,
                                    "fractional coefficient over Z", at);
                    return Scalar::integer(q.num());
                }
                return Scalar::integer(n);
        }
        throw Error(ErrorCode::InvalidInput, "bad scalar kind", at);
    }

    Polynomial parse_term(bool neg) {
        skip_ws();
        if (at_digit()) {
            std::size_t at = pos_;
            mpz_class num = parse_nat();
            mpz_class den = 1;
            skip_ws();
            std::size_t save = pos_;
            if (accept('/')) {
                skip_ws();
                if (!at_digit()) {  // not a fraction after all
                    pos_ = save;
                } else {
                    den = parse_nat();
                    if (den == 0) throw Error(ErrorCode::ZeroDenominator, "coefficient n/0", at);
                }
            }
            Scalar c = make_coeff(num, den, neg, at);
            skip_ws();
            if (accept('*')) {
                skip_ws();
                if (!at_ident()) throw Error(ErrorCode::SyntaxError, "expected a variable", pos_);
                Monomial m = parse_powerprod();
                return Polynomial::term(vars_, std::move(m), std::move(c));
            }
            return Polynomial::constant(vars_, std::move(c));
        }
        if (at_ident()) {
            Monomial m = parse_powerprod();
            Scalar c = Scalar::one(base_);
            if (neg) c = c.neg();
            return Polynomial::term(vars_, std::move(m), std::move(c));
        }
        throw Error(ErrorCode::SyntaxError, "expected a term", pos_);
    }

    Monomial parse_powerprod() {
        Monomial m = parse_factor();
        skip_ws();
        while (true) {
            std::size_t save = pos_;
            if (!accept('*')) break;
            skip_ws();
            if (!at_ident()) {  // '*' belongs to something else? grammar says no: error unless digit*var handled above
                pos_ = save;
                break;
            }
            m = m * parse_factor();
            skip_ws();
        }
        return m;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    VarListPtr vars_;
    ScalarKind base_;
};

inline Polynomial parse_poly(std::string_view text, VarListPtr vars, ScalarKind base) {
    return PolyParser(text, std::move(vars), base).parse();
}

inline Polynomial parse_poly(std::string_view text, const VarList& vars, ScalarKind base) {
    return parse_poly(text, make_vars(vars), base);
}

/* Jacobian of a relation list: n rows (variables) x m columns (relations),
 * entry (i, j) = d f_j / d x_i by formal differentiation. */
inline std::vector<std::vector<Polynomial>> jacobian(const std::vector<Polynomial>& relations,
                                                     VarListPtr vars, ScalarKind base) {
    std::size_t n = vars->size(), m = relations.size();
    std::vector<std::vector<Polynomial>> J(n, std::vector<Polynomial>(m, Polynomial::zero(vars, base)));
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < n; ++i) J[i][j] = relations[j].derivative(i);
    }
    return J;
}

}  // namespace beckdiff
