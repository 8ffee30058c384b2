#pragma once

#include <optional>
#include <string>
#include <vector>

#include "beckdiff/module_presentation.hpp"

namespace beckdiff {

/* The module of Kaehler differentials of B = k[x]/(f_1..f_m): generators
 * dx_1..dx_n, one relation per Jacobian column, together with the universal
 * derivation d(g) = sum (dg/dx_i) dx_i reduced to normal form. */
class KahlerModule {
  public:
    KahlerModule(AlgebraPtr B, const Limits& lim = Limits{})
        : algebra_(std::move(B)),
          presentation_(cokernel_presentation(
              jacobian(algebra_->relations(), algebra_->vars_ptr(), algebra_->base()), algebra_)),
          zero_cert_(is_zero_module(presentation_, lim)) {
        if (!algebra_->field_base())
            fail(ErrorCode::NonFieldBase, "Kaehler differentials require a field base");
        std::vector<CombinedGenOrigin> origins;
        reduction_basis_ = module_buchberger(combined_generators(presentation_, &origins),
                                             MonomialOrder::position_over_term(),
                                             presentation_.rank(), algebra_->vars_ptr(),
                                             algebra_->base(), lim);
    }

    const AlgebraPtr& algebra() const { return algebra_; }
    const FpModulePresentation& presentation() const { return presentation_; }
    const ZeroModuleCertificate& zero_certificate() const { return zero_cert_; }
    bool is_zero() const { return zero_cert_.is_zero; }

    /* d(g), reduced modulo the relations and I * e_i. */
    FreeModuleElement derive(const Polynomial& g, const Limits& lim = Limits{}) const {
        std::size_t n = presentation_.rank();
        if (n == 0) return FreeModuleElement(0, algebra_->vars_ptr(), algebra_->base());
        std::vector<Polynomial> coords;
        coords.reserve(n);
        for (std::size_t i = 0; i < n; ++i) coords.push_back(g.derivative(i));
        return module_normal_form(FreeModuleElement(std::move(coords)), reduction_basis_, lim);
    }

    /* Canonical class of a raw differential vector. */
    FreeModuleElement reduce(const FreeModuleElement& v, const Limits& lim = Limits{}) const {
        return module_normal_form(v, reduction_basis_, lim);
    }

  private:
    AlgebraPtr algebra_;
    FpModulePresentation presentation_;
    ZeroModuleCertificate zero_cert_;
    ModuleGroebnerBasis reduction_basis_;
};

inline KahlerModule kahler(const AlgebraPtr& B, const Limits& lim = Limits{}) {
    return KahlerModule(B, lim);
}

/* An element of the square-zero extension B + Omega, in reduced form. */
struct ExtensionElement {
    Polynomial ring_part;
    FreeModuleElement module_part;
};

/* Exact arithmetic in B + Omega; every result is reduced. */
class SymbolicExtension {
  public:
    explicit SymbolicExtension(const KahlerModule& omega) : omega_(&omega) {}

    ExtensionElement make(const Polynomial& b, const FreeModuleElement& m) const {
        return {omega_->algebra()->reduce(b), omega_->reduce(m)};
    }

    ExtensionElement zero() const {
        const auto& B = omega_->algebra();
        return {Polynomial::zero(B->vars_ptr(), B->base()),
                FreeModuleElement(omega_->presentation().rank(), B->vars_ptr(), B->base())};
    }

    ExtensionElement one() const {
        const auto& B = omega_->algebra();
        return {Polynomial::one(B->vars_ptr(), B->base()),
                FreeModuleElement(omega_->presentation().rank(), B->vars_ptr(), B->base())};
    }

    ExtensionElement add(const ExtensionElement& a, const ExtensionElement& b) const {
        return make(a.ring_part + b.ring_part, a.module_part + b.module_part);
    }

    ExtensionElement mul(const ExtensionElement& a, const ExtensionElement& b) const {
        return make(a.ring_part * b.ring_part,
                    b.module_part.mul_poly(a.ring_part) + a.module_part.mul_poly(b.ring_part));
    }

    ExtensionElement scale(const Scalar& c, const ExtensionElement& a) const {
        return {a.ring_part.scaled(c), a.module_part.scaled(c)};
    }

    bool is_zero(const ExtensionElement& a) const {
        return a.ring_part.is_zero() && a.module_part.is_zero();
    }

    /* Evaluate a polynomial at an assignment of extension elements. */
    ExtensionElement eval(const Polynomial& f, const std::vector<ExtensionElement>& images) const {
        ExtensionElement acc = zero();
        for (const auto& [mono, c] : f.terms()) {
            ExtensionElement term = one();
            for (std::size_t i = 0; i < images.size(); ++i)
                for (std::uint32_t e = 0; e < mono.exp(i); ++e) term = mul(term, images[i]);
            acc = add(acc, scale(c, term));
        }
        return acc;
    }

  private:
    const KahlerModule* omega_;
};

/* The failed-injectivity witness when Omega != 0: two distinct lifts of
 * id_B along B + Omega -> B, namely the unit section and the graph of the
 * universal derivation, both verified as A-algebra homomorphisms. */
struct UnramifiedWitness {
    std::vector<ExtensionElement> unit_images;   // x_i -> (x_i, 0)
    std::vector<ExtensionElement> graph_images;  // x_i -> (x_i, dx_i)
    std::size_t distinct_at = 0;                 // index with dx_i != 0 in Omega
};

struct UnramifiedReport {
    bool unramified = false;
    std::optional<UnramifiedWitness> witness;
    bool witness_unavailable = false;  // Omega != 0 but B is not finite-dimensional
};

/* Main decision procedure: B is formally unramified iff Omega_B = 0. When the
 * verdict is negative and B is finite-dimensional, a verified pair of
 * distinct lifts over id_B is produced. */
inline UnramifiedReport unramified_check(const KahlerModule& omega, const Limits& lim = Limits{}) {
    UnramifiedReport report;
    report.unramified = omega.is_zero();
    if (report.unramified) return report;

    const AlgebraPtr& B = omega.algebra();
    if (!B->zero_dimensional()) {
        report.witness_unavailable = true;
        return report;
    }

    SymbolicExtension ext(omega);
    UnramifiedWitness w;
    std::size_t n = B->generators().size();
    VarListPtr vars = B->vars_ptr();
    ScalarKind base = B->base();
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial xi = Polynomial::variable(vars, base, i);
        FreeModuleElement zero_m(n, vars, base);
        w.unit_images.push_back(ext.make(xi, zero_m));
        w.graph_images.push_back(
            ext.make(xi, FreeModuleElement::basis_vector(n, i, vars, base)));
    }

    // both assignments must kill every relation of B
    for (const auto& f : B->relations()) {
        if (!ext.is_zero(ext.eval(f, w.unit_images)))
            fail(ErrorCode::InvalidInput, "internal: unit section violates a relation");
        if (!ext.is_zero(ext.eval(f, w.graph_images)))
            fail(ErrorCode::InvalidInput, "internal: derivation graph violates a relation");
    }

    // distinct because some dx_i is nonzero in Omega
    w.distinct_at = omega.zero_certificate().witness_index;
    if (w.graph_images[w.distinct_at].module_part.is_zero())
        fail(ErrorCode::InvalidInput, "internal: witness generators coincide");
    report.witness = std::move(w);
    (void)lim;
    return report;
}

inline UnramifiedReport unramified_check(const AlgebraPtr& B, const Limits& lim = Limits{}) {
    KahlerModule omega(B, lim);
    return unramified_check(omega, lim);
}

}  // namespace beckdiff
