#pragma once

#include <vector>

#include "limitop/groupoid.hpp"
#include "limitop/linalg.hpp"

namespace limitop {

/// An element of the convolution algebra: a finitely supported complex
/// function on the arrows of a fixed groupoid.
struct AlgebraElement {
    GroupoidPtr g;
    std::vector<cplx> coeff;  // dense over arrows

    AlgebraElement() = default;
    explicit AlgebraElement(GroupoidPtr gp)
        : g(std::move(gp)), coeff(g->num_arrows(), cplx(0)) {}

    cplx at(int arrow) const { return coeff[arrow]; }
    std::vector<int> support() const;
};

/// Indicator of the unit arrows: the multiplicative identity.
AlgebraElement unit_element(const GroupoidPtr& g);
AlgebraElement delta(const GroupoidPtr& g, int arrow, cplx value = cplx(1));

AlgebraElement add(const AlgebraElement& f, const AlgebraElement& h);
AlgebraElement subtract(const AlgebraElement& f, const AlgebraElement& h);
AlgebraElement scale(const AlgebraElement& f, cplx c);

/// (f * h)(gamma) = sum over alpha in the source fibre of s(gamma) of
/// f(gamma alpha^{-1}) h(alpha), summed in fibre listing order.
AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& h);

/// f*(gamma) = conj(f(gamma^{-1})).
AlgebraElement involution(const AlgebraElement& f);

/// max of the sup over units of the fibre l1-sums of f and of f*.
double i_norm(const AlgebraElement& f);

/// The value of the regular representation at one unit.
struct FibreMatrix {
    int unit;
    std::vector<int> fibre;  // arrows of s^{-1}(unit), listing order
    Matrix m;                // entry (row gamma'', col gamma') = f(gamma'' gamma'^{-1})
};

FibreMatrix regular_representation(const AlgebraElement& f, int unit);

/// sup over units of the operator norm of the fibre matrices.
/// Fibres are processed in parallel; the serial twin lives in
/// limitop::serial and the two must agree bit for bit.
double reduced_norm(const AlgebraElement& f);

namespace serial {
double reduced_norm(const AlgebraElement& f);
}

}  // namespace limitop
