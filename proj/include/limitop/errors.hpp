#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace limitop {

struct GroupoidMismatch : std::runtime_error {
    GroupoidMismatch() : std::runtime_error("elements live over different groupoids") {}
};

struct UnknownUnit : std::runtime_error {
    explicit UnknownUnit(const std::string& u)
        : std::runtime_error("unknown unit: " + u) {}
};

struct UnknownPoint : std::runtime_error {
    explicit UnknownPoint(const std::string& p)
        : std::runtime_error("unknown point: " + p) {}
};

struct NotInvariant : std::runtime_error {
    int witness_arrow;
    explicit NotInvariant(int arrow)
        : std::runtime_error("unit subset is not invariant (witness arrow " +
                             std::to_string(arrow) + ")"),
          witness_arrow(arrow) {}
};

struct SupportViolation : std::runtime_error {
    int unit;
    int arrow;
    SupportViolation(int u, int a)
        : std::runtime_error("mean at unit " + std::to_string(u) +
                             " charges arrow " + std::to_string(a) +
                             " outside its source fibre"),
          unit(u), arrow(a) {}
};

struct SingularFibre : std::runtime_error {
    std::vector<int> units;
    explicit SingularFibre(std::vector<int> us)
        : std::runtime_error("inverse requested but some fibres are singular"),
          units(std::move(us)) {}
};

struct NonSquare : std::runtime_error {
    NonSquare() : std::runtime_error("matrix is not square") {}
};

struct NoConvergence : std::runtime_error {
    explicit NoConvergence(long iterations)
        : std::runtime_error("power iteration did not converge within " +
                             std::to_string(iterations) + " iterations") {}
};

// A declared diagonal fails to converge along the requested direction;
// corresponds to membership failure in the two-point-compactification algebra.
struct NotConvergent : std::runtime_error {
    int diagonal;
    std::vector<std::pair<long, std::complex<double>>> probes;
    NotConvergent(int m, std::vector<std::pair<long, std::complex<double>>> p)
        : std::runtime_error("diagonal " + std::to_string(m) +
                             " does not converge along the requested direction"),
          diagonal(m), probes(std::move(p)) {}
};

struct NearZeroSymbol : std::runtime_error {
    double min_modulus;
    explicit NearZeroSymbol(double m)
        : std::runtime_error("symbol modulus " + std::to_string(m) +
                             " is below the certification threshold"),
          min_modulus(m) {}
};

struct StepTooCoarse : std::runtime_error {
    explicit StepTooCoarse(double jump)
        : std::runtime_error("argument jump " + std::to_string(jump) +
                             " per sample step is too large; raise N"),
          jump(jump) {}
    double jump;
};

}  // namespace limitop
