#pragma once

#include <functional>
#include <map>
#include <variant>
#include <vector>

#include "limitop/linalg.hpp"

namespace limitop {

/// One diagonal coefficient sequence n -> d(n). The first three kinds are
/// exact (their tails are declared, so limits are computed symbolically);
/// Sampled is a black box probed numerically.
class CoefficientSequence {
public:
    struct FiniteSupport {
        std::map<long, cplx> table;
    };
    struct Periodic {
        long period;
        std::vector<cplx> values;  // values[(n mod p + p) mod p]
    };
    struct EventuallyConstant {
        long window;               // table covers exactly [-window, window]
        std::vector<cplx> values;  // length 2*window + 1
        cplx left;
        cplx right;
    };
    struct Sampled {
        std::function<cplx(long)> eval;
        long window_bound;  // caller asserts nothing beyond |n| > bound
    };

    static CoefficientSequence constant(cplx c);
    static CoefficientSequence finite(std::map<long, cplx> table);
    static CoefficientSequence periodic(std::vector<cplx> values);
    static CoefficientSequence eventually_constant(long window,
                                                   std::vector<cplx> values,
                                                   cplx left, cplx right);
    static CoefficientSequence sampled(std::function<cplx(long)> eval,
                                       long window_bound);

    cplx at(long n) const;

    /// d'(n) = d(n + g); exact classes stay in their class.
    CoefficientSequence shifted(long g) const;

    /// n -> conj(d(n)).
    CoefficientSequence conjugated() const;

    bool is_exact() const;

    const std::variant<FiniteSupport, Periodic, EventuallyConstant, Sampled>&
    data() const {
        return data_;
    }

private:
    std::variant<FiniteSupport, Periodic, EventuallyConstant, Sampled> data_;
};

/// Banded operator on l2(Z): diagonal m holds d_m(n) = T_{n+m, n}.
struct BandOperatorZ {
    int width = 0;
    std::map<int, CoefficientSequence> diagonals;

    cplx entry(long x, long y) const;
};

/// Entrywise (g+x, g+y) relabelling: the diagonals translate by g.
BandOperatorZ shift_conjugate(const BandOperatorZ& t, long g);

/// T*: diagonal m becomes n -> conj(d_{-m}(n + m)).
BandOperatorZ adjoint(const BandOperatorZ& t);

/// Translation-invariant band operator: constant diagonals.
struct LaurentOperator {
    int width = 0;
    std::vector<cplx> c;  // c[m + width]

    cplx coeff(int m) const {
        return (m < -width || m > width) ? cplx(0) : c[m + width];
    }
};

/// Trigonometric polynomial theta -> sum c_m e^{i m theta}.
struct LaurentSymbol {
    int width = 0;
    std::vector<cplx> c;  // c[m + width]

    cplx coeff(int m) const {
        return (m < -width || m > width) ? cplx(0) : c[m + width];
    }
    cplx eval(double theta) const;
};

/// A declared convergent direction to the boundary; the desk-scale
/// surrogate for a boundary point. Subsequence generators must be
/// strictly monotone in |.|.
struct DirectionSpec {
    enum class Kind { PlusInfinity, MinusInfinity, Subsequence };
    Kind kind = Kind::PlusInfinity;
    std::function<long(long)> generator;  // k -> n_k, Subsequence only

    static DirectionSpec plus_infinity() { return {Kind::PlusInfinity, {}}; }
    static DirectionSpec minus_infinity() { return {Kind::MinusInfinity, {}}; }
    static DirectionSpec subsequence(std::function<long(long)> gen) {
        return {Kind::Subsequence, std::move(gen)};
    }
};

struct LimitConfig {
    double tolerance = 1e-9;
    std::vector<long> probe_depths;  // default geometric 2^4 .. 2^14

    static LimitConfig defaults();
};

/// Entrywise limit of the shift conjugates along the direction. Exact
/// diagonal classes produce exact limits at +-infinity; Sampled diagonals
/// (and any class along a subsequence) are accepted through a three-probe
/// Cauchy test. Throws NotConvergent with the probe trace otherwise.
LaurentOperator limit_operator(const BandOperatorZ& t, const DirectionSpec& dir,
                               const LimitConfig& cfg = LimitConfig::defaults());

LaurentSymbol laurent_symbol(const LaurentOperator& l);

/// Dense submatrix over [-n, n].
Matrix finite_section(const BandOperatorZ& t, long n);

BandOperatorZ laurent_band(const LaurentOperator& l);

}  // namespace limitop
