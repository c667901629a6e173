#include "glct/sl2.hpp"

#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "glct/errors.hpp"

namespace glct {

ParamMatrix ParamMatrix::make(double a, double b, double c, double d) {
    const double det = a * d - b * c;
    if (!std::isfinite(det) || std::abs(det - 1.0) > kUnimodularTolerance) {
        throw Error(ErrorKind::NotUnimodular,
                    "ad - bc = " + std::to_string(det) + " for (" + std::to_string(a) + ", " +
                        std::to_string(b) + ", " + std::to_string(c) + ", " + std::to_string(d) +
                        ")");
    }
    return {a, b, c, d};
}

ParamMatrix rotation(double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return ParamMatrix::make(c, s, -s, c);
}

ParamMatrix chirp_matrix(double xi) { return ParamMatrix::make(1.0, 0.0, xi, 1.0); }

ParamMatrix scaling_matrix(double s) {
    if (!(s != 0.0) || !std::isfinite(s)) {
        throw Error(ErrorKind::InvalidDelta, "scaling factor must be finite and nonzero");
    }
    return ParamMatrix::make(s, 0.0, 0.0, 1.0 / s);
}

ParamMatrix shear_matrix(double b) { return ParamMatrix::make(1.0, b, 0.0, 1.0); }

ParamMatrix multiply(const ParamMatrix& m2, const ParamMatrix& m1) {
    return {m2.a_ * m1.a_ + m2.b_ * m1.c_, m2.a_ * m1.b_ + m2.b_ * m1.d_,
            m2.c_ * m1.a_ + m2.d_ * m1.c_, m2.c_ * m1.b_ + m2.d_ * m1.d_};
}

ParamMatrix inverse(const ParamMatrix& m) { return {m.d_, -m.b_, -m.c_, m.a_}; }

IwasawaParams decompose_iwasawa(const ParamMatrix& m) {
    const double a = m.a(), b = m.b(), c = m.c(), d = m.d();
    const double r2 = a * a + b * b;
    return {(a * c + b * d) / r2, std::sqrt(r2), std::atan2(b, a)};
}

CmCcCmParams decompose_cmccm(const ParamMatrix& m) {
    const double b = m.b();
    if (std::abs(b) < kB0Threshold) {
        throw Error(ErrorKind::BZero, "b = " + std::to_string(b) + "; use the b = 0 construction");
    }
    return {(m.d() - 1.0) / b, -b, (m.a() - 1.0) / b};
}

B0Params decompose_b0(const ParamMatrix& m, B0Kind kind) {
    if (std::abs(m.b()) >= kB0Threshold) {
        throw Error(ErrorKind::NotB0Case, "b = " + std::to_string(m.b()) + " is not zero");
    }
    if (kind == B0Kind::Eta) {
        const double d = m.d();
        return {kind, 1.0 / d, d, (m.c() + 1.0) / d};
    }
    const double a = m.a();
    return {kind, (m.c() - 1.0) / a, -a, -1.0 / a};
}

double chirp_exponent_sum(const ParamMatrix& m) {
    const double b = m.b();
    if (std::abs(b) < kB0Threshold) {
        throw Error(ErrorKind::BZero, "exponent sum undefined for b = 0");
    }
    return (m.a() + m.d() - 2.0 - b * b) / b;
}

ParamMatrix sample_random(Rng& rng, double lo, double hi, double min_abs) {
    if (!(lo < hi)) {
        throw Error(ErrorKind::InvalidSpec, "empty sampling range");
    }
    if (std::max(std::abs(lo), std::abs(hi)) <= min_abs) {
        throw Error(ErrorKind::InvalidSpec, "sampling range lies inside the rejection band");
    }
    for (;;) {
        const double a = uniform(rng, lo, hi);
        const double b = uniform(rng, lo, hi);
        const double c = uniform(rng, lo, hi);
        if (std::abs(a) < min_abs || std::abs(b) < min_abs) continue;
        return {a, b, c, (1.0 + b * c) / a};
    }
}

ParamMatrix sample_random(std::uint64_t seed, double lo, double hi) {
    Rng rng(seed);
    return sample_random(rng, lo, hi);
}

std::string to_string(B0Kind kind) { return kind == B0Kind::Eta ? "eta" : "mu"; }

void to_json(nlohmann::json& j, const ParamMatrix& m) {
    j = nlohmann::json{{"a", m.a()}, {"b", m.b()}, {"c", m.c()}, {"d", m.d()}};
}

ParamMatrix param_matrix_from_json(const nlohmann::json& j) {
    try {
        return ParamMatrix::make(j.at("a").get<double>(), j.at("b").get<double>(),
                                 j.at("c").get<double>(), j.at("d").get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("parameter matrix: ") + e.what());
    }
}

void to_json(nlohmann::json& j, const IwasawaParams& p) {
    j = nlohmann::json{{"xi", p.xi}, {"delta", p.delta}, {"alpha", p.alpha}};
}

void to_json(nlohmann::json& j, const CmCcCmParams& p) {
    j = nlohmann::json{{"xi1", p.xi1}, {"xi2", p.xi2}, {"xi3", p.xi3}};
}

void to_json(nlohmann::json& j, const B0Params& p) {
    j = nlohmann::json{{"kind", to_string(p.kind)}, {"p1", p.p1}, {"p2", p.p2}, {"p3", p.p3}};
}

}  // namespace glct
