#pragma once

#include <memory>
#include <string>
#include <vector>

#include "beckdiff/algebra.hpp"

namespace beckdiff {

/* A finitely presented module over B = k[x]/I: named generators and relation
 * vectors with entries in k[x]. Computations happen in the free module over
 * the polynomial ring with the relations I*e_i adjoined. */
struct FpModulePresentation {
    AlgebraPtr ambient;
    std::vector<std::string> generators;
    std::vector<FreeModuleElement> relations;  // rank == generators.size()

    std::size_t rank() const { return generators.size(); }
};

inline FpModulePresentation make_module_presentation(AlgebraPtr ambient,
                                                     std::vector<std::string> generators,
                                                     std::vector<FreeModuleElement> relations) {
    FpModulePresentation p{std::move(ambient), std::move(generators), std::move(relations)};
    for (const auto& r : p.relations) {
        if (r.rank() != p.rank()) fail(ErrorCode::RankMismatch, "relation rank mismatch");
        if (!(r.base() == p.ambient->base()))
            fail(ErrorCode::MixedContext, "relation base differs from ambient base");
    }
    return p;
}

/* Packaging step for the Jacobian: generators dx_1..dx_n, one relation vector
 * per matrix column. */
inline FpModulePresentation cokernel_presentation(const std::vector<std::vector<Polynomial>>& J,
                                                  AlgebraPtr ambient) {
    std::size_t n = ambient->generators().size();
    if (J.size() != n) fail(ErrorCode::ShapeMismatch, "matrix row count differs from generator count");
    std::size_t m = J.empty() ? 0 : J.front().size();
    for (const auto& row : J)
        if (row.size() != m) fail(ErrorCode::ShapeMismatch, "ragged matrix");

    std::vector<std::string> gens;
    gens.reserve(n);
    for (const auto& x : ambient->generators()) gens.push_back("d" + x);

    std::vector<FreeModuleElement> rels;
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<Polynomial> coords;
        coords.reserve(n);
        for (std::size_t i = 0; i < n; ++i) coords.push_back(J[i][j]);
        rels.emplace_back(std::move(coords));
    }
    return make_module_presentation(std::move(ambient), std::move(gens), std::move(rels));
}

/* Where a combined generator of the membership computation came from: a
 * module relation, or f*e_pos for a relation f of the ambient ideal. */
struct CombinedGenOrigin {
    enum class Kind { Relation, IdealMultiple };
    Kind kind;
    std::size_t index;     // relation index (module or ideal, per kind)
    std::size_t position;  // IdealMultiple only: which basis vector was multiplied
};

/* The combined generator list used for submodule membership over B:
 * module relations first, then f_t * e_i for each ideal relation f_t. */
inline std::vector<FreeModuleElement> combined_generators(const FpModulePresentation& P,
                                                          std::vector<CombinedGenOrigin>* origins) {
    std::size_t n = P.rank();
    VarListPtr vars = P.ambient->vars_ptr();
    ScalarKind base = P.ambient->base();
    std::vector<FreeModuleElement> gens = P.relations;
    if (origins) {
        origins->clear();
        for (std::size_t r = 0; r < P.relations.size(); ++r)
            origins->push_back({CombinedGenOrigin::Kind::Relation, r, 0});
    }
    for (std::size_t t = 0; t < P.ambient->relations().size(); ++t) {
        const Polynomial& f = P.ambient->relations()[t];
        for (std::size_t i = 0; i < n; ++i) {
            gens.push_back(FreeModuleElement::basis_vector(n, i, vars, base).mul_poly(f));
            if (origins) origins->push_back({CombinedGenOrigin::Kind::IdealMultiple, t, i});
        }
    }
    return gens;
}

/* Zero-module verdict plus the data that makes it checkable without trusting
 * the basis computation. For a zero module, cofactors[i] expresses e_i as a
 * combination of the combined generators; for a nonzero module, the witness
 * generator and its irreducible normal form are reported. */
struct ZeroModuleCertificate {
    bool is_zero = true;
    std::vector<CombinedGenOrigin> origins;
    std::vector<std::vector<Polynomial>> cofactors;  // [generator i][combined gen j]
    std::size_t witness_index = 0;
    FreeModuleElement witness_normal_form;
};

/* Re-derive the certified identity by direct multiplication. */
inline bool verify_zero_certificate(const FpModulePresentation& P,
                                    const ZeroModuleCertificate& cert) {
    if (!cert.is_zero) return true;
    std::size_t n = P.rank();
    VarListPtr vars = P.ambient->vars_ptr();
    ScalarKind base = P.ambient->base();
    std::vector<FreeModuleElement> gens = combined_generators(P, nullptr);
    if (cert.cofactors.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i) {
        if (cert.cofactors[i].size() != gens.size()) return false;
        FreeModuleElement acc(n, vars, base);
        for (std::size_t j = 0; j < gens.size(); ++j)
            acc = acc + gens[j].mul_poly(cert.cofactors[i][j]);
        if (!(acc == FreeModuleElement::basis_vector(n, i, vars, base))) return false;
    }
    return true;
}

/* Decides whether B^n / (relations) is the zero module: every e_i must lie in
 * the submodule of k[x]^n generated by the relations together with I*e_i. */
inline ZeroModuleCertificate is_zero_module(const FpModulePresentation& P,
                                            const Limits& lim = Limits{}) {
    if (!P.ambient->field_base())
        fail(ErrorCode::NonFieldBase, "zero-module test requires a field base");
    ZeroModuleCertificate cert;
    std::size_t n = P.rank();
    if (n == 0) return cert;  // no generators: the zero module

    VarListPtr vars = P.ambient->vars_ptr();
    ScalarKind base = P.ambient->base();
    std::vector<FreeModuleElement> gens = combined_generators(P, &cert.origins);
    MonomialOrder ord = MonomialOrder::position_over_term();
    ModuleGroebnerBasis gb = module_buchberger(gens, ord, n, vars, base, lim);

    for (std::size_t i = 0; i < n; ++i) {
        FreeModuleElement ei = FreeModuleElement::basis_vector(n, i, vars, base);
        ModuleReduction red = module_normal_form_with_cofactors(ei, gb, lim);
        if (!red.remainder.is_zero()) {
            cert.is_zero = false;
            cert.witness_index = i;
            cert.witness_normal_form = red.remainder;
            cert.cofactors.clear();
            return cert;
        }
        cert.cofactors.push_back(cofactors_over_generators(red, gb));
    }
    cert.is_zero = true;
    if (!verify_zero_certificate(P, cert))
        fail(ErrorCode::InvalidInput, "internal: zero-module certificate failed re-verification");
    return cert;
}

}  // namespace beckdiff
