#include "limitop/bandz.hpp"

#include <cmath>
#include <stdexcept>

#include "limitop/errors.hpp"

namespace limitop {

CoefficientSequence CoefficientSequence::constant(cplx c) {
    return periodic({c});
}

CoefficientSequence CoefficientSequence::finite(std::map<long, cplx> table) {
    CoefficientSequence s;
    s.data_ = FiniteSupport{std::move(table)};
    return s;
}

CoefficientSequence CoefficientSequence::periodic(std::vector<cplx> values) {
    if (values.empty())
        throw std::invalid_argument("periodic sequence needs period >= 1");
    CoefficientSequence s;
    s.data_ = Periodic{static_cast<long>(values.size()), std::move(values)};
    return s;
}

CoefficientSequence CoefficientSequence::eventually_constant(
    long window, std::vector<cplx> values, cplx left, cplx right) {
    if (window < 0 || static_cast<long>(values.size()) != 2 * window + 1)
        throw std::invalid_argument(
            "eventually-constant table must cover exactly [-N, N]");
    CoefficientSequence s;
    s.data_ = EventuallyConstant{window, std::move(values), left, right};
    return s;
}

CoefficientSequence CoefficientSequence::sampled(std::function<cplx(long)> eval,
                                                 long window_bound) {
    CoefficientSequence s;
    s.data_ = Sampled{std::move(eval), window_bound};
    return s;
}

cplx CoefficientSequence::at(long n) const {
    return std::visit(
        [n](const auto& d) -> cplx {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, FiniteSupport>) {
                auto it = d.table.find(n);
                return it == d.table.end() ? cplx(0) : it->second;
            } else if constexpr (std::is_same_v<T, Periodic>) {
                long r = n % d.period;
                if (r < 0) r += d.period;
                return d.values[r];
            } else if constexpr (std::is_same_v<T, EventuallyConstant>) {
                if (n < -d.window) return d.left;
                if (n > d.window) return d.right;
                return d.values[n + d.window];
            } else {
                return d.eval(n);
            }
        },
        data_);
}

CoefficientSequence CoefficientSequence::shifted(long g) const {
    return std::visit(
        [this, g](const auto& d) -> CoefficientSequence {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, FiniteSupport>) {
                std::map<long, cplx> t;
                for (const auto& [n, v] : d.table) t[n - g] = v;
                return finite(std::move(t));
            } else if constexpr (std::is_same_v<T, Periodic>) {
                std::vector<cplx> vals(d.values.size());
                for (long i = 0; i < d.period; ++i)
                    vals[i] = at(i + g);
                return periodic(std::move(vals));
            } else if constexpr (std::is_same_v<T, EventuallyConstant>) {
                long w = d.window + std::abs(g);
                std::vector<cplx> vals(2 * w + 1);
                for (long n = -w; n <= w; ++n) vals[n + w] = at(n + g);
                return eventually_constant(w, std::move(vals), d.left, d.right);
            } else {
                auto f = d.eval;
                return sampled([f, g](long n) { return f(n + g); },
                               d.window_bound + std::abs(g));
            }
        },
        data_);
}

CoefficientSequence CoefficientSequence::conjugated() const {
    return std::visit(
        [](const auto& d) -> CoefficientSequence {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, FiniteSupport>) {
                std::map<long, cplx> t;
                for (const auto& [n, v] : d.table) t[n] = std::conj(v);
                return finite(std::move(t));
            } else if constexpr (std::is_same_v<T, Periodic>) {
                std::vector<cplx> vals;
                for (cplx v : d.values) vals.push_back(std::conj(v));
                return periodic(std::move(vals));
            } else if constexpr (std::is_same_v<T, EventuallyConstant>) {
                std::vector<cplx> vals;
                for (cplx v : d.values) vals.push_back(std::conj(v));
                return eventually_constant(d.window, std::move(vals),
                                           std::conj(d.left),
                                           std::conj(d.right));
            } else {
                auto f = d.eval;
                return sampled([f](long n) { return std::conj(f(n)); },
                               d.window_bound);
            }
        },
        data_);
}

bool CoefficientSequence::is_exact() const {
    return !std::holds_alternative<Sampled>(data_);
}

cplx BandOperatorZ::entry(long x, long y) const {
    long m = x - y;
    if (m < -width || m > width) return cplx(0);
    auto it = diagonals.find(static_cast<int>(m));
    return it == diagonals.end() ? cplx(0) : it->second.at(y);
}

BandOperatorZ shift_conjugate(const BandOperatorZ& t, long g) {
    BandOperatorZ out;
    out.width = t.width;
    for (const auto& [m, d] : t.diagonals) out.diagonals.emplace(m, d.shifted(g));
    return out;
}

BandOperatorZ adjoint(const BandOperatorZ& t) {
    BandOperatorZ out;
    out.width = t.width;
    for (const auto& [m, d] : t.diagonals)
        out.diagonals.emplace(-m, d.shifted(-m).conjugated());
    return out;
}

cplx LaurentSymbol::eval(double theta) const {
    cplx v(0);
    for (int m = -width; m <= width; ++m)
        v += coeff(m) * std::polar(1.0, m * theta);
    return v;
}

LimitConfig LimitConfig::defaults() {
    LimitConfig cfg;
    for (long d = 16; d <= 16384; d *= 2) cfg.probe_depths.push_back(d);
    return cfg;
}

namespace {

using Probes = std::vector<std::pair<long, cplx>>;

cplx accept_probes(int m, const Probes& probes, double tol) {
    if (probes.size() < 3)
        throw NotConvergent(m, probes);
    const auto& [p1, v1] = probes[probes.size() - 3];
    const auto& [p2, v2] = probes[probes.size() - 2];
    const auto& [p3, v3] = probes[probes.size() - 1];
    (void)p1; (void)p2; (void)p3;
    if (std::abs(v1 - v2) <= tol && std::abs(v2 - v3) <= tol &&
        std::abs(v1 - v3) <= tol)
        return v3;
    throw NotConvergent(m, probes);
}

cplx diagonal_limit(int m, const CoefficientSequence& d,
                    const DirectionSpec& dir, const LimitConfig& cfg) {
    if (dir.kind != DirectionSpec::Kind::Subsequence) {
        const bool plus = dir.kind == DirectionSpec::Kind::PlusInfinity;
        if (const auto* fs = std::get_if<CoefficientSequence::FiniteSupport>(
                &d.data())) {
            (void)fs;
            return cplx(0);
        }
        if (const auto* p =
                std::get_if<CoefficientSequence::Periodic>(&d.data())) {
            for (const cplx& v : p->values)
                if (v != p->values[0]) {
                    Probes probes;
                    for (long k : cfg.probe_depths)
                        probes.emplace_back(plus ? k : -k,
                                            d.at(plus ? k : -k));
                    throw NotConvergent(m, probes);
                }
            return p->values[0];
        }
        if (const auto* e = std::get_if<CoefficientSequence::EventuallyConstant>(
                &d.data()))
            return plus ? e->right : e->left;
        Probes probes;
        for (long k : cfg.probe_depths)
            probes.emplace_back(plus ? k : -k, d.at(plus ? k : -k));
        return accept_probes(m, probes, cfg.tolerance);
    }

    // Along a declared subsequence every class is probed; exact classes
    // must agree exactly on the final probes, Sampled within tolerance.
    Probes probes;
    long prev_abs = -1;
    for (long k = 0; k < static_cast<long>(cfg.probe_depths.size()); ++k) {
        long n = dir.generator(cfg.probe_depths[k]);
        if (std::abs(n) <= prev_abs)
            throw std::invalid_argument(
                "subsequence generator must be strictly monotone in |n|");
        prev_abs = std::abs(n);
        probes.emplace_back(n, d.at(n));
    }
    return accept_probes(m, probes, d.is_exact() ? 0.0 : cfg.tolerance);
}

}  // namespace

LaurentOperator limit_operator(const BandOperatorZ& t, const DirectionSpec& dir,
                               const LimitConfig& cfg) {
    LaurentOperator l;
    l.width = t.width;
    l.c.assign(2 * t.width + 1, cplx(0));
    for (const auto& [m, d] : t.diagonals)
        l.c[m + t.width] = diagonal_limit(m, d, dir, cfg);
    return l;
}

LaurentSymbol laurent_symbol(const LaurentOperator& l) {
    return LaurentSymbol{l.width, l.c};
}

Matrix finite_section(const BandOperatorZ& t, long n) {
    const long dim = 2 * n + 1;
    Matrix m(dim, dim);
    for (long x = -n; x <= n; ++x)
        for (long y = -n; y <= n; ++y) m(x + n, y + n) = t.entry(x, y);
    return m;
}

BandOperatorZ laurent_band(const LaurentOperator& l) {
    BandOperatorZ t;
    t.width = l.width;
    for (int m = -l.width; m <= l.width; ++m)
        t.diagonals.emplace(m, CoefficientSequence::constant(l.coeff(m)));
    return t;
}

}  // namespace limitop
