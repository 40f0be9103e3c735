#pragma once

#include <optional>
#include <set>

#include "limitop/algebra.hpp"

namespace limitop {

/// A bounded operator fibre section: one matrix over each source fibre.
struct OperatorSection {
    GroupoidPtr g;
    std::vector<Matrix> fibre_ops;  // indexed by unit, dims match fibres
};

/// The section x -> lambda_x(f). Always equivariant.
OperatorSection lambda_section(const AlgebraElement& f);

/// max over arrows gamma of || phi(r(gamma)) - R* phi(s(gamma)) R ||,
/// where R maps delta_alpha to delta_{alpha gamma}. Zero iff the section
/// is equivariant. Arrows are processed in parallel; limitop::serial
/// holds the reference loop.
double equivariance_defect(const OperatorSection& s);

/// Minimal arrow set K such that every nonzero fibre entry (g'', g')
/// has g'' g'^{-1} in K.
std::set<int> propagation(const OperatorSection& s);

/// An invariant open/boundary split of the unit space.
struct BoundaryDecomposition {
    std::vector<int> interior;  // X
    std::vector<int> boundary;  // complement of X

    static BoundaryDecomposition from_boundary(const FiniteGroupoid& g,
                                               std::vector<int> boundary);
};

/// Restriction to the boundary reduction: a *-homomorphism onto the
/// boundary convolution algebra whose kernel is supported in the interior.
/// Returns the restricted element together with the reduction it lives on.
struct QuotientElement {
    Reduction red;
    AlgebraElement elem;
};
QuotientElement quotient_restrict(const AlgebraElement& f,
                                  const BoundaryDecomposition& d);

/// The symbol morphism: the lambda-section of the boundary restriction,
/// i.e. the family of limit operators omega -> lambda_omega(f) over the
/// boundary units.
OperatorSection symbol(const AlgebraElement& f,
                       const BoundaryDecomposition& d);

struct UnitVerdict {
    int unit;
    double sigma_min;
    bool invertible;
};

struct ExelReport {
    std::vector<UnitVerdict> per_unit;
    bool invertible;
    double sup_inverse_norm;  // finite max over fibres, 0 if not invertible
    std::optional<AlgebraElement> inverse;
    double residual;  // ||F * inverse - 1||_I, 0 when no inverse
};

enum class ExelMode { Plain, Unitized };

inline constexpr double kSingularCut = 1e-10;

/// Per-fibre invertibility of lambda_x(f) (or of 1 + lambda_x(f)), with
/// the global verdict and the algebra inverse read back from the faithful
/// representation when it exists.
ExelReport exel_invertibility(const AlgebraElement& f,
                              ExelMode mode = ExelMode::Plain);

/// Inverse in the convolution algebra; throws SingularFibre listing the
/// offending units when some fibre is not invertible.
AlgebraElement algebra_inverse(const AlgebraElement& F);

struct MainTheoremReport {
    bool c1;  // invertible modulo the interior ideal, with certificate
    bool c2;  // the symbol section is invertible
    bool c3;  // all limit operators invertible, uniform inverse bound
    bool c4;  // all limit operators invertible
    bool degenerate_boundary;  // empty boundary: all conditions vacuous
    double sup_inverse_norm;   // condition (3); a finite max at this scale
    std::optional<AlgebraElement> certificate;  // h with f*h = 1 mod interior
    std::vector<UnitVerdict> boundary_fibres;
};

/// Evaluates the four equivalent Fredholm-type conditions independently
/// and reports them side by side. The inverse-norm supremum in (3) is a
/// finite maximum here, so (3) and (4) carry the same content.
MainTheoremReport main_theorem_check(const AlgebraElement& f,
                                     const BoundaryDecomposition& d);

/// Crossed-product representation at a point: the |G| x |G| matrix with
/// entry (g, h) = F(g.omega, g h^{-1}).
Matrix crossed_product_rep(const TransformationGroupoid& tg,
                           const AlgebraElement& F, int omega);

namespace serial {
double equivariance_defect(const OperatorSection& s);
}

}  // namespace limitop
