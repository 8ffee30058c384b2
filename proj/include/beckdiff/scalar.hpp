#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "beckdiff/error.hpp"

namespace beckdiff {

enum class BaseKind : std::uint8_t { Int, Rat, Fp };

/* The coefficient domain a computation runs over: Z, Q or a prime field F_p.
 * Z is admitted for finite-ring-table workflows only; Groebner computations
 * insist on a field. */
struct ScalarKind {
    BaseKind kind = BaseKind::Int;
    std::uint32_t p = 0;  // modulus, Fp only

    static ScalarKind integers() { return {BaseKind::Int, 0}; }
    static ScalarKind rationals() { return {BaseKind::Rat, 0}; }

    static ScalarKind prime_field(std::uint32_t p) {
        if (p < 2 || p >= (1u << 16))
            fail(ErrorCode::InvalidModulus, "modulus must satisfy 2 <= p < 2^16, got " + std::to_string(p));
        for (std::uint32_t d = 2; d * d <= p; ++d)
            if (p % d == 0)
                fail(ErrorCode::InvalidModulus, std::to_string(p) + " is not prime");
        return {BaseKind::Fp, p};
    }

    bool is_field() const { return kind == BaseKind::Rat || kind == BaseKind::Fp; }

    bool operator==(const ScalarKind& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const ScalarKind& o) const { return !(*this == o); }

    std::string str() const {
        switch (kind) {
            case BaseKind::Int: return "Z";
            case BaseKind::Rat: return "Q";
            case BaseKind::Fp: return "F" + std::to_string(p);
        }
        return "?";
    }
};

/* An exact scalar: arbitrary-precision integer, reduced rational with positive
 * denominator, or residue in [0, p). Values are immutable after construction;
 * every operation returns a fresh value and no rounding ever occurs. */
class Scalar {
  public:
    Scalar() : kind_(ScalarKind::integers()), num_(0), den_(1) {}

    static Scalar zero(ScalarKind k) { return Scalar(k, 0, 1); }

    static Scalar one(ScalarKind k) {
        Scalar s(k, 1, 1);
        if (k.kind == BaseKind::Fp && k.p == 1) s.num_ = 0;  // unreachable: p >= 2
        return s;
    }

    static Scalar integer(mpz_class v) {
        Scalar s;
        s.kind_ = ScalarKind::integers();
        s.num_ = std::move(v);
        return s;
    }

    /* Reduced representative with positive denominator. */
    static Scalar rational(mpz_class num, mpz_class den) {
        if (den == 0) fail(ErrorCode::ZeroDenominator, "denominator is zero");
        Scalar s;
        s.kind_ = ScalarKind::rationals();
        if (den < 0) {
            num = -num;
            den = -den;
        }
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (g != 0) {
            num /= g;
            den /= g;
        } else {
            den = 1;  // num == 0
        }
        s.num_ = std::move(num);
        s.den_ = std::move(den);
        return s;
    }

    static Scalar fp(std::uint32_t p, mpz_class v) {
        ScalarKind k = ScalarKind::prime_field(p);
        Scalar s;
        s.kind_ = k;
        mpz_class m(p);
        mpz_mod(s.num_.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());  // mpz_mod yields [0, p)
        return s;
    }

    /* Canonical image of an integer in the given domain. */
    static Scalar of_int(ScalarKind k, const mpz_class& v) {
        switch (k.kind) {
            case BaseKind::Int: return integer(v);
            case BaseKind::Rat: return rational(v, 1);
            case BaseKind::Fp: return fp(k.p, v);
        }
        fail(ErrorCode::InvalidInput, "bad scalar kind");
    }

    static Scalar of_int(ScalarKind k, long v) { return of_int(k, mpz_class(v)); }

    const ScalarKind& kind() const { return kind_; }
    const mpz_class& num() const { return num_; }
    const mpz_class& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return den_ == 1 && num_ == 1; }

    bool operator==(const Scalar& o) const {
        return kind_ == o.kind_ && num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar operator+(const Scalar& o) const {
        require_same(o);
        switch (kind_.kind) {
            case BaseKind::Int: return integer(num_ + o.num_);
            case BaseKind::Rat: return rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
            case BaseKind::Fp: return fp_raw(kind_.p, num_ + o.num_);
        }
        fail(ErrorCode::InvalidInput, "bad scalar kind");
    }

    Scalar operator-(const Scalar& o) const { return *this + o.neg(); }

    Scalar operator*(const Scalar& o) const {
        require_same(o);
        switch (kind_.kind) {
            case BaseKind::Int: return integer(num_ * o.num_);
            case BaseKind::Rat: return rational(num_ * o.num_, den_ * o.den_);
            case BaseKind::Fp: return fp_raw(kind_.p, num_ * o.num_);
        }
        fail(ErrorCode::InvalidInput, "bad scalar kind");
    }

    Scalar neg() const {
        Scalar s(*this);
        if (kind_.kind == BaseKind::Fp) {
            if (s.num_ != 0) s.num_ = kind_.p - s.num_;
        } else {
            s.num_ = -s.num_;
        }
        return s;
    }

    /* Multiplicative inverse; defined on the field kinds only. */
    Scalar inv() const {
        if (is_zero()) fail(ErrorCode::NotInvertible, "zero has no inverse");
        switch (kind_.kind) {
            case BaseKind::Int:
                if (num_ == 1 || num_ == -1) return *this;
                fail(ErrorCode::NonFieldBase, "integer " + num_.get_str() + " is not a unit in Z");
            case BaseKind::Rat:
                return rational(den_, num_);
            case BaseKind::Fp: {
                mpz_class r, m(kind_.p);
                if (mpz_invert(r.get_mpz_t(), num_.get_mpz_t(), m.get_mpz_t()) == 0)
                    fail(ErrorCode::NotInvertible, num_.get_str() + " mod " + std::to_string(kind_.p));
                return fp_raw(kind_.p, r);
            }
        }
        fail(ErrorCode::InvalidInput, "bad scalar kind");
    }

    Scalar operator/(const Scalar& o) const { return *this * o.inv(); }

    std::string str() const {
        if (kind_.kind == BaseKind::Rat && den_ != 1) return num_.get_str() + "/" + den_.get_str();
        return num_.get_str();
    }

  private:
    Scalar(ScalarKind k, long n, long d) : kind_(k), num_(n), den_(d) {}

    static Scalar fp_raw(std::uint32_t p, mpz_class v) {
        Scalar s;
        s.kind_ = ScalarKind{BaseKind::Fp, p};
        mpz_class m(p);
        mpz_mod(s.num_.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
        return s;
    }

    void require_same(const Scalar& o) const {
        if (kind_ != o.kind_)
            fail(ErrorCode::MixedContext,
                 "scalar kinds differ: " + kind_.str() + " vs " + o.kind_.str());
    }

    ScalarKind kind_;
    mpz_class num_;  // Int value, Fp residue in [0, p), or Rat numerator
    mpz_class den_;  // Rat denominator (> 0, coprime to num); 1 otherwise

    friend Scalar rat_normalize(const mpz_class&, const mpz_class&);
};

/* The unique reduced representative of num/den with positive denominator. */
inline Scalar rat_normalize(const mpz_class& num, const mpz_class& den) {
    return Scalar::rational(num, den);
}

inline Scalar rat_normalize(long num, long den) {
    return rat_normalize(mpz_class(num), mpz_class(den));
}

/* Inverse in F_p; errors with NotInvertible on the zero residue. */
inline Scalar fp_inv(const Scalar& a) {
    if (a.kind().kind != BaseKind::Fp) fail(ErrorCode::MixedContext, "fp_inv expects an Fp scalar");
    return a.inv();
}

}  // namespace beckdiff
