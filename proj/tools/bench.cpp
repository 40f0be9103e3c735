// Compares the OpenMP kernels against their serial reference twins.
// Usage: limitop-bench [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "limitop/fibre.hpp"
#include "limitop/fredholm.hpp"

using namespace limitop;

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_best_of(int repeats, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        auto t0 = Clock::now();
        fn();
        best = std::min(best,
                        std::chrono::duration<double>(Clock::now() - t0).count());
    }
    return best;
}

void row(const char* name, double parallel_s, double serial_s, bool agree) {
    std::printf("%-24s %10.4f s %10.4f s   x%5.2f   %s\n", name, parallel_s,
                serial_s, serial_s / parallel_s,
                agree ? "results agree" : "RESULTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);

    std::printf("%-24s %12s %12s %8s\n", "kernel", "parallel", "serial",
                "speedup");

    {
        auto g = pair_groupoid(48);
        AlgebraElement f(g);
        for (auto& c : f.coeff) c = cplx(uni(rng), uni(rng));
        double rp = 0, rs = 0;
        double tp = time_best_of(repeats, [&] { rp = reduced_norm(f); });
        double ts = time_best_of(repeats, [&] { rs = serial::reduced_norm(f); });
        row("reduced_norm", tp, ts, rp == rs);
    }

    {
        auto g = pair_groupoid(24);
        AlgebraElement f(g);
        for (auto& c : f.coeff) c = cplx(uni(rng), uni(rng));
        auto s = lambda_section(f);
        double dp = 0, ds = 0;
        double tp = time_best_of(repeats, [&] { dp = equivariance_defect(s); });
        double ts =
            time_best_of(repeats, [&] { ds = serial::equivariance_defect(s); });
        row("equivariance_defect", tp, ts, dp == ds);
    }

    {
        LaurentSymbol s{8, std::vector<cplx>(17)};
        for (auto& c : s.c) c = cplx(uni(rng), uni(rng));
        MinModulusReport mp{}, ms{};
        const int n = 1 << 21;
        double tp =
            time_best_of(repeats, [&] { mp = symbol_min_modulus(s, n); });
        double ts = time_best_of(repeats,
                                 [&] { ms = serial::symbol_min_modulus(s, n); });
        row("symbol_min_modulus", tp, ts,
            mp.value == ms.value && mp.theta == ms.theta);
    }

    {
        LaurentSymbol s{4, std::vector<cplx>(9)};
        for (auto& c : s.c) c = cplx(uni(rng), uni(rng));
        const int n = 1 << 21;
        std::vector<SymbolSample> tr;
        double tp = time_best_of(repeats, [&] { tr = symbol_trace(s, n); });
        // reference loop inline; symbol_trace has no serial twin in the API
        std::vector<SymbolSample> ref(n);
        double ts = time_best_of(repeats, [&] {
            for (int j = 0; j < n; ++j) {
                double theta = 2.0 * 3.141592653589793 * j / n;
                ref[j] = {theta, s.eval(theta)};
            }
        });
        bool agree = true;
        for (int j = 0; j < n; ++j)
            if (tr[j].value != ref[j].value) agree = false;
        row("symbol_trace", tp, ts, agree);
    }

    return 0;
}
