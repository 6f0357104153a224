#include "fmm2d/expansion.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fmm2d {

Order::Order(int p) : p_(p) {
    if (p < 0 || p > kMax) {
        throw std::domain_error("Order: p = " + std::to_string(p) + " outside [0, " +
                                std::to_string(kMax) + "]");
    }
}

BinomialTable::BinomialTable(int max_n) {
    rows_.resize(max_n + 1);
    for (int n = 0; n <= max_n; ++n) {
        rows_[n].resize(n + 1);
        rows_[n][0] = rows_[n][n] = 1.0;
        for (int k = 1; k < n; ++k) {
            rows_[n][k] = rows_[n - 1][k - 1] + rows_[n - 1][k];
        }
    }
}

void p2m_add(std::span<Complex> a, Complex center, std::span<const Charge> charges) {
    const int p = static_cast<int>(a.size()) - 1;
    for (const Charge& c : charges) {
        const Complex d = c.z - center;
        a[0] += c.q;
        Complex dk = d;  // d^k
        for (int k = 1; k <= p; ++k) {
            a[k] -= c.q * dk / static_cast<double>(k);
            dk *= d;
        }
    }
}

void m2m_add(std::span<Complex> dst, Complex dst_center,
             std::span<const Complex> src, Complex src_center, const BinomialTable& binom) {
    const int p = static_cast<int>(src.size()) - 1;
    const Complex t = src_center - dst_center;
    std::vector<Complex> tpow(p + 1);
    tpow[0] = 1.0;
    for (int j = 1; j <= p; ++j) tpow[j] = tpow[j - 1] * t;

    dst[0] += src[0];
    for (int l = 1; l <= p; ++l) {
        Complex b = -src[0] * tpow[l] / static_cast<double>(l);
        for (int k = 1; k <= l; ++k) {
            b += src[k] * tpow[l - k] * binom(l - 1, k - 1);
        }
        dst[l] += b;
    }
}

void m2l_add(std::span<Complex> dst, Complex dst_center,
             std::span<const Complex> src, Complex src_center, const BinomialTable& binom) {
    const int p = static_cast<int>(src.size()) - 1;
    const Complex t = src_center - dst_center;
    if (t == Complex{0.0, 0.0}) {
        throw std::domain_error("m2l: coincident multipole and local centers");
    }
    // g_k = a_k (-t)^-k; -t points from the multipole to the local center.
    const Complex mt_inv = 1.0 / (-t);
    std::vector<Complex> g(p + 1);
    Complex mtk = mt_inv;
    for (int k = 1; k <= p; ++k) {
        g[k] = src[k] * mtk;
        mtk *= mt_inv;
    }

    Complex b0 = src[0] * std::log(-t);
    for (int k = 1; k <= p; ++k) b0 += g[k];
    dst[0] += b0;

    const Complex t_inv = 1.0 / t;
    Complex tl_inv = t_inv;  // t^-l
    for (int l = 1; l <= p; ++l) {
        Complex s = -src[0] / static_cast<double>(l);
        for (int k = 1; k <= p; ++k) {
            s += g[k] * binom(l + k - 1, k - 1);
        }
        dst[l] += s * tl_inv;
        tl_inv *= t_inv;
    }
}

void l2l_add(std::span<Complex> dst, Complex dst_center,
             std::span<const Complex> src, Complex src_center, const BinomialTable& binom) {
    const int p = static_cast<int>(src.size()) - 1;
    const Complex t = dst_center - src_center;
    std::vector<Complex> tpow(p + 1);
    tpow[0] = 1.0;
    for (int j = 1; j <= p; ++j) tpow[j] = tpow[j - 1] * t;

    for (int l = 0; l <= p; ++l) {
        Complex c = 0.0;
        for (int k = l; k <= p; ++k) {
            c += src[k] * binom(k, l) * tpow[k - l];
        }
        dst[l] += c;
    }
}

Complex multipole_eval(std::span<const Complex> a, Complex center, Complex z, Mode mode) {
    const int p = static_cast<int>(a.size()) - 1;
    const Complex u = z - center;
    if (u == Complex{0.0, 0.0}) {
        throw std::domain_error("evaluate_multipole: z coincides with the expansion center");
    }
    const Complex v = 1.0 / u;
    if (mode == Mode::potential) {
        // Horner in v over a_p .. a_1, then the monopole log term.
        Complex s = 0.0;
        for (int k = p; k >= 1; --k) s = (s + a[k]) * v;
        return a[0] * std::log(u) + s;
    }
    Complex s = 0.0;
    for (int k = p; k >= 1; --k) s = (s + static_cast<double>(k) * a[k]) * v;
    return (a[0] - s) * v;
}

Complex local_eval(std::span<const Complex> b, Complex center, Complex z, Mode mode) {
    const int p = static_cast<int>(b.size()) - 1;
    const Complex u = z - center;
    Complex s = 0.0;
    if (mode == Mode::potential) {
        for (int l = p; l >= 0; --l) s = s * u + b[l];
        return s;
    }
    for (int l = p; l >= 1; --l) s = s * u + static_cast<double>(l) * b[l];
    return s;
}

namespace {

BinomialTable table_for(int p) { return BinomialTable(2 * p + 1); }

void require_kind(const Expansion& e, ExpansionKind kind, const char* op) {
    if (e.kind() != kind) {
        throw std::domain_error(std::string(op) + ": wrong expansion kind");
    }
}

}  // namespace

Expansion p2m(std::span<const Charge> charges, Complex center, Order p) {
    Expansion e(ExpansionKind::multipole, center, p);
    p2m_add(e.coeffs(), center, charges);
    return e;
}

Expansion m2m(const Expansion& src, Complex new_center) {
    require_kind(src, ExpansionKind::multipole, "m2m");
    Expansion e(ExpansionKind::multipole, new_center, Order(src.order()));
    m2m_add(e.coeffs(), new_center, src.coeffs(), src.center(), table_for(src.order()));
    return e;
}

Expansion m2l(const Expansion& src, Complex local_center) {
    require_kind(src, ExpansionKind::multipole, "m2l");
    Expansion e(ExpansionKind::local, local_center, Order(src.order()));
    m2l_add(e.coeffs(), local_center, src.coeffs(), src.center(), table_for(src.order()));
    return e;
}

Expansion l2l(const Expansion& src, Complex new_center) {
    require_kind(src, ExpansionKind::local, "l2l");
    Expansion e(ExpansionKind::local, new_center, Order(src.order()));
    l2l_add(e.coeffs(), new_center, src.coeffs(), src.center(), table_for(src.order()));
    return e;
}

Complex evaluate_multipole(const Expansion& e, Complex z, Mode mode) {
    require_kind(e, ExpansionKind::multipole, "evaluate_multipole");
    return multipole_eval(e.coeffs(), e.center(), z, mode);
}

Complex evaluate_local(const Expansion& e, Complex z, Mode mode) {
    require_kind(e, ExpansionKind::local, "evaluate_local");
    return local_eval(e.coeffs(), e.center(), z, mode);
}

std::vector<Complex> p2p_direct(std::span<const Charge> targets,
                                std::span<const Charge> sources, Mode mode) {
    std::vector<Complex> out(targets.size(), Complex{0.0, 0.0});
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const Complex zt = targets[i].z;
        Complex acc = 0.0;
        for (const Charge& s : sources) {
            const Complex d = zt - s.z;
            if (d == Complex{0.0, 0.0}) continue;
            acc += (mode == Mode::potential) ? s.q * std::log(d) : s.q / d;
        }
        out[i] = acc;
    }
    return out;
}

}  // namespace fmm2d
