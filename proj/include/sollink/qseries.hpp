#pragma once

// Generating series of boundary linking numbers and the boundary theta
// function of the boundary component attached to C_1:
//
//   W(tau) = (1/sqrt(2 disc)) sum_{l l' > 0} min(|l|, |l'|) q^{l l'}
//            - sqrt(2/(disc v)) sum_l beta(pi v (l - l')^2) q^{l l'},
//
// with q^{x} = exp(2 pi i x tau) and v = Im(tau). The min-sum coefficients are
// proportional to Lk(dC_n, dC_1); the ratio is measured, not assumed.

#include "sollink/cycles.hpp"
#include "sollink/special_fn.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

namespace sollink {

struct QExpansion {
    std::int64_t d = 0;
    int m = 1;
    int weight = 2;
    int nmax = 0;
    std::string description;
    std::map<int, Rational> coeffs;
};

struct InteriorTable {
    int m = 1;
    std::map<int, Rational> entries;
    std::string provenance;
};

struct WEvalParams {
    std::complex<double> tau{0, 1};
    int k_range = 60;
    int box = 40;
    int n_cut = 0; // 0: chosen from Im(tau) so that |q|^n_cut < 1e-20
};

struct WEvalResult {
    std::complex<double> holomorphic_sum;
    std::complex<double> beta_sum;
    double holomorphic_tail = 0;
    double beta_tail = 0;
    int n_cut = 0;
};

struct SeriesRow {
    int n = 0;
    double value = 0;
    double tail_estimate = 0;
};

struct RatioReport {
    std::vector<std::pair<int, double>> ratios;
    std::vector<int> omitted;      // zero linking number and zero min-series value
    std::vector<int> inconsistent; // zero linking number but nonzero min-series value
    double mean = 0;
    double relative_spread = 0;    // max |ratio - mean| / |mean|
};

inline QExpansion lk_qexpansion(const FieldData& field, int m, int nmax)
{
    if (m < 1 || nmax < 1) throw InputError("lk_qexpansion: m and nmax must be >= 1");
    QExpansion q;
    q.d = field.d;
    q.m = m;
    q.nmax = nmax;
    q.description = "boundary linking numbers Lk(dC_n, dC_" + std::to_string(m) + ")";
    for (int n = 1; n <= nmax; ++n) q.coeffs[n] = link_boundary(field, n, m);
    return q;
}

namespace detail {

struct MinSeriesTerm {
    double value = 0;
    double tail = 0; // bound on the omitted |k| > k_range terms
};

inline MinSeriesTerm min_series_term(const FieldData& field, int n, int k_range)
{
    if (n < 1 || k_range < 1) throw InputError("min_series_coeff: n and k_range must be >= 1");
    const double eps = field.eps.to_double();
    const double pref = 1.0 / std::sqrt(2.0 * double(field.disc));
    MinSeriesTerm out;
    for (const auto& cls : enumerate_norm_classes(field, n)) {
        const double mu = cls.rep.to_double();
        const double mu_c = cls.rep.conj().to_double();
        for (int s : {1, -1}) {
            for (int k = -k_range; k <= k_range; ++k) {
                const double x = std::fabs(s * mu * std::pow(eps, k));
                const double xc = std::fabs(s * mu_c * std::pow(eps, -k));
                out.value += std::min(x, xc);
            }
            out.tail += (mu + mu_c) * std::pow(eps, -k_range) / (eps - 1.0);
        }
    }
    out.value *= pref;
    out.tail *= pref;
    return out;
}

} // namespace detail

/// (1/sqrt(2 disc)) sum over l with l l' = n, l = +-mu eps^k, |k| <= k_range, of min(|l|, |l'|).
inline double min_series_coeff(const FieldData& field, int n, int k_range)
{
    return detail::min_series_term(field, n, k_range).value;
}

inline std::vector<SeriesRow> min_series(const FieldData& field, int nmax, int k_range)
{
    std::vector<SeriesRow> rows;
    for (int n = 1; n <= nmax; ++n) {
        auto t = detail::min_series_term(field, n, k_range);
        rows.push_back({n, t.value, t.tail + 64 * std::numeric_limits<double>::epsilon() * t.value});
    }
    return rows;
}

inline RatioReport holomorphic_ratio_test(const FieldData& field, int nmax, int k_range)
{
    if (nmax < 1) throw InputError("holomorphic_ratio_test: nmax must be >= 1");
    RatioReport rep;
    for (int n = 1; n <= nmax; ++n) {
        const Rational lk = link_boundary(field, n, 1);
        const double w = min_series_coeff(field, n, k_range);
        if (lk == 0) {
            (w != 0 ? rep.inconsistent : rep.omitted).push_back(n);
            continue;
        }
        rep.ratios.emplace_back(n, w / to_double(lk));
    }
    if (!rep.ratios.empty()) {
        double sum = 0;
        for (auto& [n, r] : rep.ratios) sum += r;
        rep.mean = sum / double(rep.ratios.size());
        for (auto& [n, r] : rep.ratios) rep.relative_spread = std::max(rep.relative_spread, std::fabs(r - rep.mean) / std::fabs(rep.mean));
    }
    return rep;
}

inline int default_n_cut(double v) { return int(std::ceil(20.0 * std::log(10.0) / (2.0 * detail::pi * v))) + 1; }

inline WEvalResult eval_W(const FieldData& field, const WEvalParams& params)
{
    const double u = params.tau.real();
    const double v = params.tau.imag();
    if (!(v > 0)) throw InputError("eval_W: Im(tau) must be positive");
    if (params.k_range < 1 || params.box < 1 || params.n_cut < 0) throw InputError("eval_W: truncation parameters must be >= 1");
    const double two_pi = 2.0 * detail::pi;
    WEvalResult res;
    res.n_cut = params.n_cut > 0 ? params.n_cut : default_n_cut(v);

    auto q_power = [&](double x) { return std::exp(-two_pi * x * v) * std::complex<double>(std::cos(two_pi * x * u), std::sin(two_pi * x * u)); };

    // holomorphic part
    double rounding = 0;
    for (int n = 1; n <= res.n_cut; ++n) {
        auto t = detail::min_series_term(field, n, params.k_range);
        res.holomorphic_sum += t.value * q_power(n);
        res.holomorphic_tail += t.tail * std::exp(-two_pi * n * v);
        rounding += std::fabs(t.value) * std::exp(-two_pi * n * v);
    }
    {
        // coefficients beyond n_cut: at most d(n) <= 2 sqrt(n) classes, each contributing
        // at most 2 * 2 sqrt(n) eps / (eps - 1) before normalisation
        const double eps = field.eps.to_double();
        const double c = 8.0 * eps / ((eps - 1.0) * std::sqrt(2.0 * double(field.disc)));
        for (int n = res.n_cut + 1;; ++n) {
            double term = c * n * std::exp(-two_pi * n * v);
            res.holomorphic_tail += term;
            if (term < 1e-30 * (1.0 + rounding) || n > res.n_cut + 100000) break;
        }
    }
    res.holomorphic_tail += 64 * std::numeric_limits<double>::epsilon() * rounding;

    // beta part over the box |a|, |b| <= box
    const double w = field.omega().to_double();
    const double wc = field.omega().conj().to_double();
    const double pref = -std::sqrt(2.0 / (double(field.disc) * v));
    const double inv16pi = 1.0 / (16.0 * detail::pi);
    const auto nw = field.one().omega_norm();
    const auto tw = field.one().omega_trace();
    double beta_rounding = 0;
    for (int a = -params.box; a <= params.box; ++a) {
        for (int b = -params.box; b <= params.box; ++b) {
            const double l = a + b * w, lc = a + b * wc;
            const double s = detail::pi * v * double(b) * double(b) * double(field.disc);
            const double norm = double(std::int64_t(a) * a + std::int64_t(a) * b * tw + std::int64_t(b) * b * nw);
            // beta(s) |q^{l l'}| = beta_scaled(s)/(16 pi) * exp(-pi v (l^2 + l'^2))
            const double mag = beta_scaled(s) * inv16pi * std::exp(-detail::pi * v * (l * l + lc * lc));
            const std::complex<double> phase(std::cos(two_pi * norm * u), std::sin(two_pi * norm * u));
            res.beta_sum += mag * phase;
            beta_rounding += mag;
        }
    }
    res.beta_sum *= pref;
    {
        // l^2 + l'^2 = Q(a, b) >= c_min (a^2 + b^2); beta_scaled <= 2
        const double q11 = 2.0, q12 = double(tw), q22 = double(tw * tw - 2 * nw);
        const double c_min = 0.5 * (q11 + q22) - std::sqrt(0.25 * (q11 - q22) * (q11 - q22) + q12 * q12);
        for (int r = params.box + 1;; ++r) {
            double term = std::fabs(pref) * 2.0 * inv16pi * 8.0 * r * std::exp(-detail::pi * v * c_min * double(r) * r);
            res.beta_tail += term;
            if (term < 1e-30 || r > params.box + 1000000) break;
        }
    }
    res.beta_tail += 64 * std::numeric_limits<double>::epsilon() * std::fabs(pref) * beta_rounding;
    return res;
}

/// coeffs[n] = interior(n, m) - Lk(dC_n, dC_m): intersection numbers of the capped cycles.
inline QExpansion combine_interior(const InteriorTable& interior, const FieldData& field, int nmax)
{
    if (nmax < 1) throw InputError("combine_interior: nmax must be >= 1");
    std::string missing;
    for (int n = 1; n <= nmax; ++n) {
        if (!interior.entries.count(n)) missing += (missing.empty() ? "" : ", ") + ("(" + std::to_string(n) + "," + std::to_string(interior.m) + ")");
    }
    if (!missing.empty()) throw InputError("interior table is missing entries " + missing);
    QExpansion q;
    q.d = field.d;
    q.m = interior.m;
    q.nmax = nmax;
    q.description = "capped intersection numbers C^c_n . C_" + std::to_string(interior.m) + " (interior: " + interior.provenance + ")";
    for (int n = 1; n <= nmax; ++n) q.coeffs[n] = interior.entries.at(n) - link_boundary(field, n, interior.m);
    return q;
}

} // namespace sollink
