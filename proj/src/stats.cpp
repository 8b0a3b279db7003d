#include "cflab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cflab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

}  // namespace

std::vector<double> fracs_of(const RealSeq& seq) {
    std::vector<double> out;
    out.reserve(seq.values.size());
    for (const DD& v : seq.values) out.push_back(frac01(v));
    return out;
}

double weyl_sum(const std::vector<double>& fracs, int k) {
    if (k == 0) throw std::domain_error("weyl_sum: k must be nonzero");
    if (fracs.empty()) throw std::domain_error("weyl_sum: empty sequence");
    KahanSum re, im;
    for (double f : fracs) {
        double ang = kTwoPi * k * f;
        re.add(std::cos(ang));
        im.add(std::sin(ang));
    }
    double n = static_cast<double>(fracs.size());
    return std::hypot(re.s, im.s) / n;
}

double weyl_sum(const RealSeq& seq, int k) { return weyl_sum(fracs_of(seq), k); }

double star_discrepancy(std::vector<double> fracs) {
    if (fracs.empty()) throw std::domain_error("star_discrepancy: empty sequence");
    std::sort(fracs.begin(), fracs.end());
    const double n = static_cast<double>(fracs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < fracs.size(); ++i) {
        double up = static_cast<double>(i + 1) / n - fracs[i];
        double dn = fracs[i] - static_cast<double>(i) / n;
        d = std::max(d, std::max(up, dn));
    }
    return d;
}

double star_discrepancy(const RealSeq& seq) { return star_discrepancy(fracs_of(seq)); }

int leading_digit(const BigInt& v) {
    if (v.sign() <= 0) throw std::domain_error("leading_digit: value must be positive");
    // decimal magnitude estimate from the bit length, then exact correction
    double est = static_cast<double>(v.bit_length() - 1) * 0.30102999566398119521;
    std::size_t d = est < 1.0 ? 0 : static_cast<std::size_t>(est);
    BigInt p = BigInt::pow10(d);
    while (p > v) {
        BigInt q, r;
        BigInt::divmod(p, BigInt{10}, q, r);
        p = std::move(q);
    }
    while (v >= p * 10u) p *= 10u;
    return static_cast<int>((v / p).to_u64());
}

namespace {

BenfordStats finalize_benford(const std::array<long long, 9>& counts, long long total) {
    BenfordStats out;
    double linf = 0.0;
    for (int d = 1; d <= 9; ++d) {
        double freq = static_cast<double>(counts[static_cast<std::size_t>(d - 1)]) /
                      static_cast<double>(total);
        out.digit_freqs[static_cast<std::size_t>(d - 1)] = freq;
        double ref = std::log10(1.0 + 1.0 / d);
        linf = std::max(linf, std::fabs(freq - ref));
    }
    out.benford_linf = linf;
    return out;
}

// walks a nondecreasing-ish list keeping the power of ten bracket current
struct DigitWalker {
    BigInt p{1}, p10{10};
    std::array<long long, 9> counts{};
    long long total = 0;

    void add(const BigInt& v) {
        if (v.sign() <= 0) throw std::domain_error("benford_stats: values must be positive");
        while (v >= p10) {
            p = p10;
            p10 *= 10u;
        }
        while (v < p) {
            p10 = p;
            BigInt q, r;
            BigInt::divmod(p, BigInt{10}, q, r);
            p = std::move(q);
        }
        int d = static_cast<int>((v / p).to_u64());
        ++counts[static_cast<std::size_t>(d - 1)];
        ++total;
    }
};

}  // namespace

BenfordStats benford_stats(const std::vector<BigInt>& values) {
    if (values.empty()) throw std::domain_error("benford_stats: empty list");
    DigitWalker w;
    for (const BigInt& v : values) w.add(v);
    return finalize_benford(w.counts, w.total);
}

BenfordStats benford_stats_q(const CFExpansion& cf, int N) {
    if (N < 1 || N > cf.certified_depth) throw std::out_of_range("benford_stats_q: bad depth");
    DigitWalker w;
    for (int n = 1; n <= N; ++n) w.add(cf.qden(n));
    return finalize_benford(w.counts, w.total);
}

double bjw_cdf(double z) {
    if (z < 0.0 || z > 1.0) throw std::domain_error("bjw_cdf: z outside [0,1]");
    if (z == 0.0) return 0.0;
    return (std::log1p(z) - z / (1.0 + z) * std::log(z)) / 0.69314718055994530942;
}

double cdf_sup_distance(std::vector<double> samples) {
    if (samples.empty()) throw std::domain_error("cdf_sup_distance: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double f = bjw_cdf(samples[i]);
        d = std::max(d, std::fabs(f - static_cast<double>(i + 1) / n));
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    }
    return d;
}

StatReport make_report(const RealSeq& seq, int kmax) {
    StatReport rep;
    rep.n_points = seq.size();
    std::vector<double> fr = fracs_of(seq);
    rep.weyl.reserve(static_cast<std::size_t>(kmax));
    for (int k = 1; k <= kmax; ++k) rep.weyl.push_back(weyl_sum(fr, k));
    rep.star_discrepancy = star_discrepancy(std::move(fr));
    return rep;
}

}  // namespace cflab
