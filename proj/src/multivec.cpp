#include "bgx/multivec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bgx {

namespace {

constexpr int kMaxDim = 16;

void check_dim(int n) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("ambient dimension out of range");
}

void check_same(const Multivector& a, const Multivector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
}

int bits_below(std::uint32_t mask, int j) {
    return std::popcount(mask & ((1u << (j - 1)) - 1u));
}

}  // namespace

Blade Blade::from_indices(const std::vector<int>& idx) {
    std::uint32_t m = 0;
    int prev = 0;
    for (int i : idx) {
        if (i <= prev || i > kMaxDim)
            throw std::invalid_argument("blade indices must be strictly increasing in 1..16");
        m |= 1u << (i - 1);
        prev = i;
    }
    return Blade(m);
}

int Blade::degree() const { return std::popcount(mask_); }

int Blade::max_index() const { return mask_ == 0 ? 0 : 32 - std::countl_zero(mask_); }

std::vector<int> Blade::indices() const {
    std::vector<int> out;
    for (int i = 1; i <= 32; ++i)
        if (contains(i)) out.push_back(i);
    return out;
}

std::vector<Blade> basis_blades(int n, int p) {
    std::vector<Blade> out;
    if (p < 0 || p > n) return out;
    std::vector<int> idx(p);
    for (int i = 0; i < p; ++i) idx[i] = i + 1;
    while (true) {
        out.push_back(Blade::from_indices(idx));
        int k = p - 1;
        while (k >= 0 && idx[k] == n - p + k + 1) --k;
        if (k < 0) break;
        ++idx[k];
        for (int i = k + 1; i < p; ++i) idx[i] = idx[i - 1] + 1;
    }
    return out;
}

BladeIndex::BladeIndex(int n, int p) : n_(n), p_(p), blades_(basis_blades(n, p)) {
    check_dim(n);
    pos_.assign(std::size_t{1} << n, -1);
    for (std::size_t i = 0; i < blades_.size(); ++i) pos_[blades_[i].mask()] = static_cast<int>(i);
}

Multivector::Multivector(int n, int degree) : n_(n), p_(degree) {
    check_dim(n);
    if (degree < -1 || degree > n + 1) throw std::invalid_argument("degree out of range");
}

Multivector Multivector::scalar(int n, cplx c) {
    Multivector m(n, 0);
    m.add(Blade(0), c);
    return m;
}

Multivector Multivector::basis(int n, int i) {
    if (i < 1 || i > n) throw std::invalid_argument("basis index out of range");
    return from_blade(n, Blade(1u << (i - 1)));
}

Multivector Multivector::from_blade(int n, Blade b, cplx c) {
    if (b.max_index() > n) throw std::invalid_argument("blade index exceeds dimension");
    Multivector m(n, b.degree());
    m.add(b, c);
    return m;
}

cplx Multivector::coeff(Blade b) const {
    auto it = c_.find(b);
    return it == c_.end() ? cplx{} : it->second;
}

void Multivector::add(Blade b, cplx c) {
    if (b.degree() != p_ || b.max_index() > n_)
        throw std::invalid_argument("blade does not belong to Lambda^" + std::to_string(p_));
    if (c == cplx{}) return;
    auto [it, fresh] = c_.emplace(b, c);
    if (!fresh) {
        it->second += c;
        if (it->second == cplx{}) c_.erase(it);
    }
}

void Multivector::prune(double tol) {
    std::erase_if(c_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

bool Multivector::is_zero(double tol) const {
    return std::all_of(c_.begin(), c_.end(),
                       [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

double Multivector::norm() const { return std::sqrt(std::real(inner(*this, *this))); }

double Multivector::max_abs() const {
    double m = 0.0;
    for (const auto& kv : c_) m = std::max(m, std::abs(kv.second));
    return m;
}

Multivector& Multivector::operator+=(const Multivector& o) {
    check_same(*this, o);
    if (o.p_ != p_) {
        if (o.c_.empty()) return *this;
        if (c_.empty()) return *this = o;
        throw std::invalid_argument("degree mismatch in sum");
    }
    for (const auto& [b, v] : o.c_) add(b, v);
    return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) { return *this += -o; }

Multivector& Multivector::operator*=(cplx s) {
    if (s == cplx{}) {
        c_.clear();
        return *this;
    }
    for (auto& kv : c_) kv.second *= s;
    return *this;
}

std::vector<cplx> Multivector::to_dense() const {
    const BladeIndex idx(n_, p_);
    std::vector<cplx> v(idx.size());
    for (const auto& [b, c] : c_) v[idx[b.mask()]] = c;
    return v;
}

Multivector Multivector::from_dense(int n, int p, const std::vector<cplx>& v) {
    Multivector m(n, p);
    const auto bl = basis_blades(n, p);
    if (v.size() != bl.size()) throw std::invalid_argument("dense size mismatch");
    for (std::size_t i = 0; i < bl.size(); ++i) m.add(bl[i], v[i]);
    return m;
}

Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
Multivector operator-(Multivector a) { return a *= -1.0; }
Multivector operator*(cplx s, Multivector a) { return a *= s; }
Multivector operator*(Multivector a, cplx s) { return a *= s; }

cplx inner(const Multivector& u, const Multivector& v) {
    check_same(u, v);
    if (u.degree() != v.degree()) return 0.0;
    cplx s = 0.0;
    for (const auto& [b, c] : u.coeffs()) s += c * std::conj(v.coeff(b));
    return s;
}

Multivector wedge(const Multivector& u, const Multivector& v) {
    check_same(u, v);
    const int n = u.dim();
    if (u.degree() < 0 || v.degree() < 0 || u.degree() + v.degree() > n)
        throw std::invalid_argument("wedge degree exceeds ambient dimension");
    Multivector out(n, u.degree() + v.degree());
    for (const auto& [a, ca] : u.coeffs()) {
        for (const auto& [b, cb] : v.coeffs()) {
            if (a.mask() & b.mask()) continue;
            int swaps = 0;
            for (int j : b.indices()) swaps += std::popcount(a.mask() >> j);
            out.add(Blade(a.mask() | b.mask()), (swaps & 1 ? -1.0 : 1.0) * ca * cb);
        }
    }
    return out;
}

int eps_e_blade(int j, Blade b, Blade& out) {
    if (b.contains(j)) return 0;
    out = Blade(b.mask() | (1u << (j - 1)));
    return bits_below(b.mask(), j) & 1 ? -1 : 1;
}

int iota_e_blade(int j, Blade b, Blade& out) {
    if (!b.contains(j)) return 0;
    out = Blade(b.mask() & ~(1u << (j - 1)));
    return bits_below(b.mask(), j) & 1 ? -1 : 1;
}

Multivector eps_e(int j, const Multivector& w) {
    const int n = w.dim();
    if (j < 1 || j > n) throw std::invalid_argument("basis index out of range");
    if (w.degree() > n) throw std::invalid_argument("degree overflow");
    Multivector out(n, w.degree() + 1);
    for (const auto& [b, c] : w.coeffs()) {
        Blade t;
        if (int s = eps_e_blade(j, b, t)) out.add(t, double(s) * c);
    }
    return out;
}

Multivector iota_e(int j, const Multivector& w) {
    const int n = w.dim();
    if (j < 1 || j > n) throw std::invalid_argument("basis index out of range");
    if (w.degree() < 0) throw std::invalid_argument("degree underflow");
    Multivector out(n, w.degree() - 1);
    for (const auto& [b, c] : w.coeffs()) {
        Blade t;
        if (int s = iota_e_blade(j, b, t)) out.add(t, double(s) * c);
    }
    return out;
}

template <class V>
static Multivector eps_impl(const V& x, const Multivector& w) {
    if (static_cast<int>(x.size()) != w.dim()) throw std::invalid_argument("dimension mismatch");
    Multivector out(w.dim(), w.degree() + 1);
    for (int j = 1; j <= w.dim(); ++j)
        if (x[j - 1] != 0.0) out += cplx(x[j - 1]) * eps_e(j, w);
    return out;
}

template <class V>
static Multivector iota_impl(const V& x, const Multivector& w) {
    if (static_cast<int>(x.size()) != w.dim()) throw std::invalid_argument("dimension mismatch");
    Multivector out(w.dim(), w.degree() - 1);
    for (int j = 1; j <= w.dim(); ++j)
        if (x[j - 1] != 0.0) out += cplx(x[j - 1]) * iota_e(j, w);
    return out;
}

Multivector eps(const std::vector<cplx>& x, const Multivector& w) { return eps_impl(x, w); }
Multivector eps(const std::vector<double>& x, const Multivector& w) { return eps_impl(x, w); }
Multivector iota(const std::vector<cplx>& x, const Multivector& w) { return iota_impl(x, w); }
Multivector iota(const std::vector<double>& x, const Multivector& w) { return iota_impl(x, w); }

Multivector comm_op(const std::vector<double>& y, const Multivector& w) {
    return iota(y, eps(y, w)) - eps(y, iota(y, w));
}

Multivector rot_gen(int j, int k, const Multivector& w) {
    if (j >= k) throw std::invalid_argument("rot_gen requires j < k");
    return eps_e(j, iota_e(k, w)) - eps_e(k, iota_e(j, w));
}

Multivector rot_gen_any(int j, int k, const Multivector& w) {
    if (j == k) return Multivector(w.dim(), w.degree());
    return j < k ? rot_gen(j, k, w) : -rot_gen(k, j, w);
}

void DenseOp::apply(const cplx* in, cplx* out) const {
    for (int r = 0; r < rows; ++r) {
        cplx s = 0.0;
        for (int c = 0; c < cols; ++c) s += at(r, c) * in[c];
        out[r] = s;
    }
}

void DenseOp::apply_add(const cplx* in, cplx* out, cplx scale) const {
    for (int r = 0; r < rows; ++r) {
        cplx s = 0.0;
        for (int c = 0; c < cols; ++c) s += at(r, c) * in[c];
        out[r] += scale * s;
    }
}

}  // namespace bgx
