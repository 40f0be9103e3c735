#include "limitop/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "limitop/errors.hpp"

namespace limitop {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double lipschitz_bound(const LaurentSymbol& s) {
    double l = 0.0;
    for (int m = -s.width; m <= s.width; ++m)
        l += std::abs(m) * std::abs(s.coeff(m));
    return l;
}

MinModulusReport min_modulus_from_samples(const LaurentSymbol& s,
                                          const std::vector<double>& mods,
                                          int n) {
    int best = 0;
    for (int j = 1; j < n; ++j)
        if (mods[j] < mods[best]) best = j;
    const double step = kTwoPi / n;
    const double sampled = mods[best];

    // One bisection pass over the bracketing interval around the
    // minimizing sample.
    double lo = (best - 1) * step, hi = (best + 1) * step;
    double vlo = std::abs(s.eval(lo)), vhi = std::abs(s.eval(hi));
    double mid = best * step, vmid = sampled;
    for (int it = 0; it < 60; ++it) {
        double l2 = 0.5 * (lo + mid), r2 = 0.5 * (mid + hi);
        double vl2 = std::abs(s.eval(l2)), vr2 = std::abs(s.eval(r2));
        if (vl2 < vmid && vl2 <= vr2) {
            hi = mid; vhi = vmid; mid = l2; vmid = vl2;
        } else if (vr2 < vmid) {
            lo = mid; vlo = vr2; mid = r2; vmid = vr2;
        } else {
            lo = l2; vlo = vl2; hi = r2; vhi = vr2;
        }
    }
    (void)vlo; (void)vhi;

    MinModulusReport rep;
    rep.value = std::min(vmid, sampled);
    rep.theta = mid;
    rep.lipschitz = lipschitz_bound(s);
    rep.lower_bound = sampled - rep.lipschitz * (std::numbers::pi / n);
    return rep;
}

}  // namespace

MinModulusReport symbol_min_modulus(const LaurentSymbol& s, int n_samples) {
    if (n_samples < 16)
        throw std::invalid_argument("need at least 16 symbol samples");
    std::vector<double> mods(n_samples);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n_samples; ++j)
        mods[j] = std::abs(s.eval(kTwoPi * j / n_samples));
    return min_modulus_from_samples(s, mods, n_samples);
}

namespace serial {
MinModulusReport symbol_min_modulus(const LaurentSymbol& s, int n_samples) {
    if (n_samples < 16)
        throw std::invalid_argument("need at least 16 symbol samples");
    std::vector<double> mods(n_samples);
    for (int j = 0; j < n_samples; ++j)
        mods[j] = std::abs(s.eval(kTwoPi * j / n_samples));
    return min_modulus_from_samples(s, mods, n_samples);
}
}  // namespace serial

int winding_number(const LaurentSymbol& s, int n_samples, double eps) {
    auto mm = symbol_min_modulus(s, n_samples);
    if (mm.value <= eps) throw NearZeroSymbol(mm.value);
    double total = 0.0;
    cplx prev = s.eval(0.0);
    for (int j = 1; j <= n_samples; ++j) {
        cplx cur = s.eval(kTwoPi * j / n_samples);
        double jump = std::arg(cur / prev);
        if (std::abs(jump) >= std::numbers::pi / 2) throw StepTooCoarse(jump);
        total += jump;
        prev = cur;
    }
    double w = total / kTwoPi;
    long r = std::lround(w);
    if (std::abs(w - static_cast<double>(r)) > 0.1)
        throw StepTooCoarse(std::abs(w - static_cast<double>(r)));
    return static_cast<int>(r);
}

int toeplitz_index(const LaurentSymbol& s, int n_samples) {
    return -winding_number(s, n_samples);
}

namespace {

Certification certify(const MinModulusReport& mm, double eps) {
    if (mm.value <= eps) return Certification::Refuted;
    if (mm.lower_bound > eps) return Certification::Certified;
    return Certification::Inconclusive;
}

double section_sigma_min(const BandOperatorZ& t, long n) {
    const int ncols = static_cast<int>(2 * n + 1);
    return banded_sigma_min(ncols, t.width, [&](int col, int d) -> cplx {
        long y = col - n;
        long x = y + d;
        if (x < -n || x > n) return cplx(0);
        return t.entry(x, y);
    });
}

}  // namespace

FredholmReport fredholm_report(const BandOperatorZ& t,
                               const FredholmConfig& cfg) {
    FredholmReport rep;
    rep.plus = laurent_symbol(
        limit_operator(t, DirectionSpec::plus_infinity(), cfg.limits));
    rep.minus = laurent_symbol(
        limit_operator(t, DirectionSpec::minus_infinity(), cfg.limits));
    rep.plus_min = symbol_min_modulus(rep.plus, cfg.samples);
    rep.minus_min = symbol_min_modulus(rep.minus, cfg.samples);
    rep.plus_cert = certify(rep.plus_min, cfg.eps);
    rep.minus_cert = certify(rep.minus_min, cfg.eps);
    rep.fredholm = rep.plus_cert == Certification::Certified &&
                   rep.minus_cert == Certification::Certified;
    if (rep.fredholm) {
        rep.winding_plus = winding_number(rep.plus, cfg.samples, cfg.eps);
        rep.winding_minus = winding_number(rep.minus, cfg.samples, cfg.eps);
        rep.index = *rep.winding_minus - *rep.winding_plus;
    }
    for (long n : cfg.sizes)
        rep.section_sigma_min.emplace_back(n, section_sigma_min(t, n));
    return rep;
}

KernelCounts truncation_kernel_oracle(const BandOperatorZ& t, long n,
                                      double rank_tol) {
    if (n > 2000) throw std::invalid_argument("truncation size capped at 2000");
    const int ncols = static_cast<int>(2 * n + 1);
    auto count = [&](const BandOperatorZ& op) {
        return banded_small_singular_count(
            ncols, op.width,
            [&](int col, int d) -> cplx {
                long y = col - n;
                return op.entry(y + d, y);
            },
            rank_tol);
    };
    return {count(t), count(adjoint(t))};
}

KernelCounts toeplitz_kernel_oracle(const LaurentSymbol& s, long n,
                                    double rank_tol) {
    if (n > 2000) throw std::invalid_argument("truncation size capped at 2000");
    auto count = [&](auto coeff_fn) {
        return banded_small_singular_count(
            static_cast<int>(n), s.width,
            [&](int col, int d) -> cplx {
                if (col + d < 0) return cplx(0);
                return coeff_fn(d);
            },
            rank_tol);
    };
    return {count([&](int d) { return s.coeff(d); }),
            count([&](int d) { return std::conj(s.coeff(-d)); })};
}

std::vector<SymbolSample> symbol_trace(const LaurentSymbol& s, int n_samples) {
    std::vector<SymbolSample> out(n_samples);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n_samples; ++j) {
        double theta = kTwoPi * j / n_samples;
        out[j] = {theta, s.eval(theta)};
    }
    return out;
}

}  // namespace limitop
