#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "glct/random.hpp"

namespace glct {

/// Numeric gate between the b != 0 and b == 0 constructions.
inline constexpr double kB0Threshold = 1e-8;
/// Tolerance on |ad - bc - 1| accepted at construction.
inline constexpr double kUnimodularTolerance = 1e-9;

/// Unimodular 2x2 parameter matrix (a b; c d) with ad - bc = 1.
class ParamMatrix {
public:
    /// Validating constructor; throws Error{NotUnimodular}.
    static ParamMatrix make(double a, double b, double c, double d);
    static ParamMatrix identity() { return {1.0, 0.0, 0.0, 1.0}; }

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double c() const noexcept { return c_; }
    double d() const noexcept { return d_; }
    double det() const noexcept { return a_ * d_ - b_ * c_; }

    bool operator==(const ParamMatrix&) const = default;

private:
    ParamMatrix(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {}

    friend ParamMatrix multiply(const ParamMatrix&, const ParamMatrix&);
    friend ParamMatrix inverse(const ParamMatrix&);
    friend ParamMatrix sample_random(Rng&, double, double, double);

    double a_, b_, c_, d_;
};

inline ParamMatrix make_param_matrix(double a, double b, double c, double d) {
    return ParamMatrix::make(a, b, c, d);
}

/// Rotation (cos t, sin t; -sin t, cos t).
ParamMatrix rotation(double angle);

/// Chirp multiplication (1, 0; xi, 1), scaling (s, 0; 0, 1/s) and the
/// shear (1, b; 0, 1); convenient building blocks for tests and tools.
ParamMatrix chirp_matrix(double xi);
ParamMatrix scaling_matrix(double s);
ParamMatrix shear_matrix(double b);

/// Standard product m2 * m1: the transform for m1 is applied first.
ParamMatrix multiply(const ParamMatrix& m2, const ParamMatrix& m1);

/// (d, -b, -c, a).
ParamMatrix inverse(const ParamMatrix& m);

/// Chirp x scaling x rotation factorization parameters.
struct IwasawaParams {
    double xi;     ///< chirp rate
    double delta;  ///< scaling factor, > 0
    double alpha;  ///< rotation angle in (-pi, pi]
};

/// Exponents of C(xi1) F^-1 C(xi2) F C(xi3).
struct CmCcCmParams {
    double xi1, xi2, xi3;
};

enum class B0Kind { Eta, Mu };

struct B0Params {
    B0Kind kind;
    double p1, p2, p3;
};

IwasawaParams decompose_iwasawa(const ParamMatrix& m);

/// Requires |b| >= kB0Threshold, otherwise Error{BZero}.
CmCcCmParams decompose_cmccm(const ParamMatrix& m);

/// Requires |b| < kB0Threshold, otherwise Error{NotB0Case}.
B0Params decompose_b0(const ParamMatrix& m, B0Kind kind);

/// xi1 + xi2 + xi3 = (a + d - 2 - b^2) / b.  Error{BZero} when b vanishes.
double chirp_exponent_sum(const ParamMatrix& m);

/// Draws a, b, c uniformly from [lo, hi), sets d = (1 + bc) / a, and redraws
/// while |a| or |b| falls below `min_abs`.
ParamMatrix sample_random(Rng& rng, double lo, double hi, double min_abs = 0.05);
ParamMatrix sample_random(std::uint64_t seed, double lo = -2.0, double hi = 2.0);

std::string to_string(B0Kind kind);

void to_json(nlohmann::json& j, const ParamMatrix& m);
/// Reads {a, b, c, d}; validates unimodularity.
ParamMatrix param_matrix_from_json(const nlohmann::json& j);
void to_json(nlohmann::json& j, const IwasawaParams& p);
void to_json(nlohmann::json& j, const CmCcCmParams& p);
void to_json(nlohmann::json& j, const B0Params& p);

}  // namespace glct
