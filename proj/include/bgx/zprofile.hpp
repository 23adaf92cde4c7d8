#pragma once

#include <map>
#include <utility>
#include <vector>

#include "bgx/special.hpp"

namespace bgx {

// Finite sum of c z^k (1+z^2)^e, closed under d/dz.
class PowProfile {
public:
    PowProfile() = default;
    static PowProfile term(double c, int k, double e);

    double operator()(double z) const;
    PowProfile derivative() const;

    PowProfile& operator+=(const PowProfile& o);
    PowProfile& operator*=(double s);
    const std::map<std::pair<int, double>, double>& terms() const { return t_; }

private:
    std::map<std::pair<int, double>, double> t_;
};

PowProfile operator+(PowProfile a, const PowProfile& b);
PowProfile operator*(double s, PowProfile a);

// Closed-form profiles with the f_R factors stripped; v_IV vanishes identically.
struct ProfileSet {
    ModelParams params;
    PowProfile v1, v2, v3, v4;
    static ProfileSet closed_form(const ModelParams& m);
};

// c z^k 2F1(alpha, beta; gamma; -z^m) with m = 2 or -2, with exact first and second
// derivatives from d/dx 2F1 = (alpha beta / gamma) 2F1(alpha+1, beta+1; gamma+1).
struct HypTerm {
    double c = 1.0;
    double k = 0.0;  // non-integer k requires z > 0
    int m = 2;
    double alpha = 0.0, beta = 0.0, gamma = 1.0;
    // value, first and second derivative (z = 0 allowed for m = 2, k = 0 or 1)
    void eval(double z, double& v, double& d1, double& d2) const;
};

// Sum of hypergeometric terms, used for the rejected solution branches.
struct HypProfile {
    std::vector<HypTerm> terms;
    double operator()(double z) const;
    void eval(double z, double& v, double& d1, double& d2) const;
};

}  // namespace bgx
