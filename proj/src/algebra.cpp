#include "limitop/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "limitop/errors.hpp"

namespace limitop {

std::vector<int> AlgebraElement::support() const {
    std::vector<int> s;
    for (int a = 0; a < static_cast<int>(coeff.size()); ++a)
        if (coeff[a] != cplx(0)) s.push_back(a);
    return s;
}

AlgebraElement unit_element(const GroupoidPtr& g) {
    AlgebraElement f(g);
    for (int e : g->unit_arrows) f.coeff[e] = cplx(1);
    return f;
}

AlgebraElement delta(const GroupoidPtr& g, int arrow, cplx value) {
    AlgebraElement f(g);
    f.coeff.at(arrow) = value;
    return f;
}

namespace {
void require_same(const AlgebraElement& f, const AlgebraElement& h) {
    if (f.g != h.g) throw GroupoidMismatch{};
}
}  // namespace

AlgebraElement add(const AlgebraElement& f, const AlgebraElement& h) {
    require_same(f, h);
    AlgebraElement out(f.g);
    for (size_t a = 0; a < out.coeff.size(); ++a)
        out.coeff[a] = f.coeff[a] + h.coeff[a];
    return out;
}

AlgebraElement subtract(const AlgebraElement& f, const AlgebraElement& h) {
    require_same(f, h);
    AlgebraElement out(f.g);
    for (size_t a = 0; a < out.coeff.size(); ++a)
        out.coeff[a] = f.coeff[a] - h.coeff[a];
    return out;
}

AlgebraElement scale(const AlgebraElement& f, cplx c) {
    AlgebraElement out(f.g);
    for (size_t a = 0; a < out.coeff.size(); ++a) out.coeff[a] = c * f.coeff[a];
    return out;
}

AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& h) {
    require_same(f, h);
    const auto& g = *f.g;
    AlgebraElement out(f.g);
    for (int gam = 0; gam < g.num_arrows(); ++gam) {
        cplx sum(0);
        for (int alpha : g.fibres[g.src[gam]]) {
            // gamma alpha^{-1} is composable since s(gamma) = s(alpha).
            int ga = *g.compose(gam, g.inv[alpha]);
            sum += f.coeff[ga] * h.coeff[alpha];
        }
        out.coeff[gam] = sum;
    }
    return out;
}

AlgebraElement involution(const AlgebraElement& f) {
    AlgebraElement out(f.g);
    for (int a = 0; a < f.g->num_arrows(); ++a)
        out.coeff[a] = std::conj(f.coeff[f.g->inv[a]]);
    return out;
}

double i_norm(const AlgebraElement& f) {
    const auto& g = *f.g;
    double norm = 0.0;
    for (int u = 0; u < g.num_units(); ++u) {
        double fs = 0.0, fstar = 0.0;
        for (int a : g.fibres[u]) {
            fs += std::abs(f.coeff[a]);
            fstar += std::abs(f.coeff[g.inv[a]]);
        }
        norm = std::max({norm, fs, fstar});
    }
    return norm;
}

FibreMatrix regular_representation(const AlgebraElement& f, int unit) {
    const auto& g = *f.g;
    if (unit < 0 || unit >= g.num_units())
        throw UnknownUnit(std::to_string(unit));
    const auto& fibre = g.fibres[unit];
    const int n = static_cast<int>(fibre.size());
    Matrix m(n, n);
    for (int col = 0; col < n; ++col)
        for (int row = 0; row < n; ++row)
            m(row, col) = f.coeff[*g.compose(fibre[row], g.inv[fibre[col]])];
    return {unit, fibre, std::move(m)};
}

double reduced_norm(const AlgebraElement& f) {
    const int nu = f.g->num_units();
    std::vector<double> norms(nu);
#pragma omp parallel for schedule(dynamic)
    for (int u = 0; u < nu; ++u)
        norms[u] = spectral_norm(regular_representation(f, u).m);
    double best = 0.0;
    for (double v : norms) best = std::max(best, v);
    return best;
}

namespace serial {
double reduced_norm(const AlgebraElement& f) {
    double best = 0.0;
    for (int u = 0; u < f.g->num_units(); ++u)
        best = std::max(best, spectral_norm(regular_representation(f, u).m));
    return best;
}
}  // namespace serial

}  // namespace limitop
