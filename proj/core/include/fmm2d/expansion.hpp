#pragma once

#include <complex>
#include <span>
#include <vector>

namespace fmm2d {

// Complex-variable conventions for the 2D logarithmic kernel. Positions and
// field values are complex numbers z = x + iy.
//
//   potential  phi(z) = sum_j q_j log(z - z_j), physical potential = Re phi
//   field      w(z)   = dphi/dz = sum_j q_j / (z - z_j)
//
// Multipole about zM:  phi(z) ~ a0 log(z - zM) + sum_{k>=1} a_k (z - zM)^-k
//   with a0 = sum q_j,  a_k = -sum q_j (z_j - zM)^k / k.
// Local about zL:      phi(z) ~ sum_{l>=0} b_l (z - zL)^l.
//
// Translations (t is always old center minus new center for M2M/M2L; new
// minus old for L2L):
//   M2M  b_l = -a0 t^l / l + sum_{k=1..l} a_k t^{l-k} C(l-1, k-1)
//   M2L  b_0 = a0 log(-t) + sum_k a_k (-t)^-k
//        b_l = -a0 / (l t^l) + t^-l sum_k a_k (-t)^-k C(l+k-1, k-1)
//   L2L  c_l = sum_{k=l..p} b_k C(k, l) t^{k-l}   (exact)
//
// The principal log branch is used throughout; only Re phi and the field w
// are branch-independent, and all accuracy guarantees are stated on those.

using Complex = std::complex<double>;

struct Charge {
    Complex z;  // position
    Complex q;  // strength (real for potentials, Gamma/(2*pi*i) for vortices)
};

enum class ExpansionKind { multipole, local };
enum class Mode { potential, field };

// Truncation order. p+1 coefficients are retained; the cap keeps every
// binomial used by the translations, up to C(2p, p), finite in doubles.
class Order {
public:
    static constexpr int kMax = 40;

    explicit Order(int p);
    int value() const { return p_; }

private:
    int p_;
};

// Pascal-triangle binomial table, rows 0..max_n, built in floating point.
class BinomialTable {
public:
    explicit BinomialTable(int max_n);
    double operator()(int n, int k) const {
        return (k < 0 || k > n) ? 0.0 : rows_[n][k];
    }
    int max_n() const { return static_cast<int>(rows_.size()) - 1; }

private:
    std::vector<std::vector<double>> rows_;
};

class Expansion {
public:
    Expansion(ExpansionKind kind, Complex center, Order p)
        : kind_(kind), center_(center), coeffs_(static_cast<std::size_t>(p.value()) + 1) {}

    ExpansionKind kind() const { return kind_; }
    Complex center() const { return center_; }
    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const Complex> coeffs() const { return coeffs_; }
    std::span<Complex> coeffs() { return coeffs_; }
    Complex operator[](std::size_t k) const { return coeffs_[k]; }
    Complex& operator[](std::size_t k) { return coeffs_[k]; }

private:
    ExpansionKind kind_;
    Complex center_;
    std::vector<Complex> coeffs_;
};

// Accumulating span kernels; the Expansion-level operations and the tree
// evaluator are both built on these. All of them add into dst.
void p2m_add(std::span<Complex> a, Complex center, std::span<const Charge> charges);
void m2m_add(std::span<Complex> dst, Complex dst_center,
             std::span<const Complex> src, Complex src_center, const BinomialTable& binom);
void m2l_add(std::span<Complex> dst, Complex dst_center,
             std::span<const Complex> src, Complex src_center, const BinomialTable& binom);
void l2l_add(std::span<Complex> dst, Complex dst_center,
             std::span<const Complex> src, Complex src_center, const BinomialTable& binom);
Complex multipole_eval(std::span<const Complex> a, Complex center, Complex z, Mode mode);
Complex local_eval(std::span<const Complex> b, Complex center, Complex z, Mode mode);

Expansion p2m(std::span<const Charge> charges, Complex center, Order p);
Expansion m2m(const Expansion& src, Complex new_center);
Expansion m2l(const Expansion& src, Complex local_center);
Expansion l2l(const Expansion& src, Complex new_center);
Complex evaluate_multipole(const Expansion& e, Complex z, Mode mode);
Complex evaluate_local(const Expansion& e, Complex z, Mode mode);

// Direct sum over sources for each target. Self and exactly coincident
// source/target pairs are skipped.
std::vector<Complex> p2p_direct(std::span<const Charge> targets,
                                std::span<const Charge> sources, Mode mode);

}  // namespace fmm2d
