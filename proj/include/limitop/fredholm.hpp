#pragma once

#include <optional>

#include "limitop/bandz.hpp"

namespace limitop {

struct MinModulusReport {
    double value;        // refined sampled minimum of |s(theta)|
    double theta;        // where it was attained
    double lipschitz;    // sum |m c_m|, a derivative bound for the symbol
    double lower_bound;  // value - lipschitz * half step: a certificate
};

/// Minimum modulus of the symbol over N >= 16 uniform samples, refined by
/// one bisection pass around the minimizing sample.
MinModulusReport symbol_min_modulus(const LaurentSymbol& s, int n_samples);

/// Accumulated argument over one counterclockwise circuit, divided by
/// 2 pi. Requires the symbol bounded away from zero (NearZeroSymbol) and
/// the sampling fine enough that no step jumps by pi/2 (StepTooCoarse).
int winding_number(const LaurentSymbol& s, int n_samples, double eps = 1e-6);

/// Index of the Toeplitz operator on l2(N) with this symbol.
int toeplitz_index(const LaurentSymbol& s, int n_samples = 1 << 14);

enum class Certification { Certified, Refuted, Inconclusive };

struct FredholmConfig {
    int samples = 1 << 14;
    double eps = 1e-6;  // certification threshold on the symbol modulus
    std::vector<long> sizes{50, 100, 200};
    LimitConfig limits = LimitConfig::defaults();
};

struct FredholmReport {
    LaurentSymbol plus;   // symbol of the limit operator at +infinity
    LaurentSymbol minus;  // at -infinity
    MinModulusReport plus_min;
    MinModulusReport minus_min;
    Certification plus_cert;
    Certification minus_cert;
    bool fredholm;  // both symbols certified nonvanishing
    std::optional<int> winding_plus;
    std::optional<int> winding_minus;
    // Index(T) = wind(f^{-inf}) - wind(f^{+inf}), i.e. the -infinity
    // symbol is traversed clockwise. The orientation is pinned by
    // requiring the bilateral shift to get index 0.
    std::optional<int> index;
    std::vector<std::pair<long, double>> section_sigma_min;  // evidence only
};

/// Fredholm certification via the two limit symbols, with finite-section
/// smallest singular values attached as corroborating evidence. A symbol
/// too close to zero yields a refusal (fredholm = false), never a crash;
/// NotConvergent from the limit extraction propagates.
FredholmReport fredholm_report(const BandOperatorZ& t,
                               const FredholmConfig& cfg = {});

struct KernelCounts {
    int kernel;
    int cokernel;
};

/// Kernel/cokernel dimension estimates from singular values of one-sided
/// truncations (columns [-n, n], all band rows) below rank_tol relative
/// to the largest singular value. An estimate; stable for the structured
/// operators with well-separated symbols used in the test corpus.
KernelCounts truncation_kernel_oracle(const BandOperatorZ& t, long n,
                                      double rank_tol = 1e-8);

/// Same estimate for the Toeplitz operator on l2(N) with the given symbol
/// (columns [0, n), rows clipped at 0).
KernelCounts toeplitz_kernel_oracle(const LaurentSymbol& s, long n,
                                    double rank_tol = 1e-8);

struct SymbolSample {
    double theta;
    cplx value;
};

/// Uniform trace of the symbol for CSV emission. Sampled in parallel;
/// the serial twin must agree bit for bit.
std::vector<SymbolSample> symbol_trace(const LaurentSymbol& s, int n_samples);

namespace serial {
MinModulusReport symbol_min_modulus(const LaurentSymbol& s, int n_samples);
}

}  // namespace limitop
