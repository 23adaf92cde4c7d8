#pragma once

#include <array>
#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace bgx {

using cplx = std::complex<double>;

constexpr int kMaxVars = 8;

// Exponent vector. Negative entries are allowed so that weights like x_n^beta can be
// differentiated symbolically (Laurent monomials).
struct Mono {
    std::array<std::int8_t, kMaxVars> e{};
    auto operator<=>(const Mono&) const = default;
    int total() const;
    bool laurent() const;
};

// Polynomial (or Laurent polynomial) in nvars real variables with complex coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(int nvars) : n_(nvars) {}

    static Poly constant(int nvars, cplx c);
    static Poly variable(int nvars, int j);  // x_j, 1-based
    static Poly monomial(int nvars, const Mono& m, cplx c);

    int nvars() const { return n_; }
    const std::map<Mono, cplx>& terms() const { return t_; }
    bool empty() const { return t_.empty(); }
    int degree() const;
    bool laurent() const;
    double max_abs() const;

    void add_term(const Mono& m, cplx c);
    void prune(double tol);

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(cplx s);

    cplx eval(const double* x) const;

    Poly derivative(int j) const;
    // multiply by x_j^k (k may be negative)
    Poly mul_var(int j, int k = 1) const;
    // q(A x + b), A is nvars x nvars row-major
    Poly affine(const std::vector<double>& A, const std::vector<double>& b) const;
    // substitute x_j = 0 and drop variable j (j must be the last variable)
    Poly drop_last_at_zero() const;

private:
    int n_ = 0;
    std::map<Mono, cplx> t_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(cplx s, Poly a);

}  // namespace bgx
