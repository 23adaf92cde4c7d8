#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <vector>

namespace bgx {

using cplx = std::complex<double>;

// Basis element e_{i1} ^ ... ^ e_{ip} with 1 <= i1 < ... < ip, stored as a bitmask
// (bit i-1 set for index i).
class Blade {
public:
    Blade() = default;
    explicit Blade(std::uint32_t mask) : mask_(mask) {}

    static Blade from_indices(const std::vector<int>& idx);
    static Blade from_indices(std::initializer_list<int> idx) {
        return from_indices(std::vector<int>(idx));
    }

    std::uint32_t mask() const { return mask_; }
    int degree() const;
    bool contains(int i) const { return (mask_ >> (i - 1)) & 1u; }
    int max_index() const;
    std::vector<int> indices() const;

    auto operator<=>(const Blade&) const = default;

private:
    std::uint32_t mask_ = 0;
};

// All degree-p blades of C^n, in lexicographic order of their index lists.
// Empty for p < 0 or p > n.
std::vector<Blade> basis_blades(int n, int p);

// Position of each blade in basis_blades(n, p), indexed by mask; -1 elsewhere.
class BladeIndex {
public:
    BladeIndex() = default;
    BladeIndex(int n, int p);
    int n() const { return n_; }
    int degree() const { return p_; }
    int size() const { return static_cast<int>(blades_.size()); }
    const std::vector<Blade>& blades() const { return blades_; }
    int operator[](std::uint32_t mask) const { return pos_[mask]; }

private:
    int n_ = 0, p_ = 0;
    std::vector<Blade> blades_;
    std::vector<int> pos_;
};

// Element of Lambda^p C^n. Degrees -1 and n+1 are admitted as the zero space so
// that d, delta and the interior/exterior operators compose without special cases.
class Multivector {
public:
    Multivector() = default;
    Multivector(int n, int degree);

    static Multivector scalar(int n, cplx c);
    static Multivector basis(int n, int i);  // e_i
    static Multivector from_blade(int n, Blade b, cplx c = 1.0);

    int dim() const { return n_; }
    int degree() const { return p_; }
    const std::map<Blade, cplx>& coeffs() const { return c_; }

    cplx coeff(Blade b) const;
    void add(Blade b, cplx c);
    void prune(double tol = 0.0);
    bool is_zero(double tol = 0.0) const;

    double norm() const;
    double max_abs() const;

    Multivector& operator+=(const Multivector& o);
    Multivector& operator-=(const Multivector& o);
    Multivector& operator*=(cplx s);

    std::vector<cplx> to_dense() const;
    static Multivector from_dense(int n, int p, const std::vector<cplx>& v);

private:
    int n_ = 0, p_ = 0;
    std::map<Blade, cplx> c_;
};

Multivector operator+(Multivector a, const Multivector& b);
Multivector operator-(Multivector a, const Multivector& b);
Multivector operator-(Multivector a);
Multivector operator*(cplx s, Multivector a);
Multivector operator*(Multivector a, cplx s);

// <u, v>, linear in u and conjugate-linear in v; distinct blades are orthonormal.
cplx inner(const Multivector& u, const Multivector& v);

Multivector wedge(const Multivector& u, const Multivector& v);

// Exterior multiplication by x (identified with the 1-form sum x_i e_i).
Multivector eps(const std::vector<cplx>& x, const Multivector& w);
Multivector eps(const std::vector<double>& x, const Multivector& w);
// Interior multiplication; un-conjugated coefficients, so iota(x) is the adjoint of eps(conj x).
Multivector iota(const std::vector<cplx>& x, const Multivector& w);
Multivector iota(const std::vector<double>& x, const Multivector& w);

Multivector eps_e(int j, const Multivector& w);
Multivector iota_e(int j, const Multivector& w);

// (i_y eps_y - eps_y i_y) w
Multivector comm_op(const std::vector<double>& y, const Multivector& w);

// Infinitesimal rotation in the (e_j, e_k) plane acting on Lambda^p:
// eps_{e_j} i_{e_k} - eps_{e_k} i_{e_j}. Requires j < k.
Multivector rot_gen(int j, int k, const Multivector& w);
// Same operator for any ordered pair, with rot_gen_any(k, j) = -rot_gen_any(j, k)
// and rot_gen_any(j, j) = 0.
Multivector rot_gen_any(int j, int k, const Multivector& w);

// Sign-and-target action of eps_{e_j} / i_{e_j} on a single blade. Returns 0 when
// the result vanishes, otherwise +-1 with the target blade written to out.
int eps_e_blade(int j, Blade b, Blade& out);
int iota_e_blade(int j, Blade b, Blade& out);

// Dense matrix of a linear map Lambda^p C^n -> Lambda^q C^n in the basis_blades order.
struct DenseOp {
    int n = 0, p = 0, q = 0;
    int rows = 0, cols = 0;
    std::vector<cplx> m;  // row-major, rows = dim Lambda^q, cols = dim Lambda^p

    cplx& at(int r, int c) { return m[static_cast<std::size_t>(r) * cols + c]; }
    cplx at(int r, int c) const { return m[static_cast<std::size_t>(r) * cols + c]; }
    void apply(const cplx* in, cplx* out) const;
    void apply_add(const cplx* in, cplx* out, cplx scale) const;
};

template <class F>
DenseOp dense_op(int n, int p, int q, F&& op) {
    DenseOp d;
    d.n = n;
    d.p = p;
    d.q = q;
    const auto in = basis_blades(n, p);
    const BladeIndex out_idx(n, q);
    d.rows = out_idx.size();
    d.cols = static_cast<int>(in.size());
    d.m.assign(static_cast<std::size_t>(d.rows) * d.cols, 0.0);
    for (int c = 0; c < d.cols; ++c) {
        const Multivector img = op(Multivector::from_blade(n, in[c]));
        for (const auto& [b, v] : img.coeffs()) d.at(out_idx[b.mask()], c) += v;
    }
    return d;
}

}  // namespace bgx
