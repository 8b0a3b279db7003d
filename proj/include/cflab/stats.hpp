#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cflab/bigint.hpp"
#include "cflab/sequences.hpp"

namespace cflab {

/// Equidistribution and first-digit statistics of one sequence.
struct StatReport {
    int n_points = 0;
    std::vector<double> weyl;  // |1/N sum e^{2 pi i k v_n}| for k = 1..K
    double star_discrepancy = 0.0;
    std::array<double, 9> digit_freqs{};  // first digits 1..9
    double benford_linf = 0.0;            // max_d |freq(d) - lg(1 + 1/d)|
    std::optional<double> cdf_sup_dist;
};

/// |1/N sum_n e^{2 pi i k v_n}| with compensated accumulation. k != 0.
double weyl_sum(const RealSeq& seq, int k);
double weyl_sum(const std::vector<double>& fracs, int k);

/// Exact star discrepancy of the fractional parts via sorting:
/// max_i max(i/N - u_(i), u_(i) - (i-1)/N).
double star_discrepancy(const RealSeq& seq);
double star_discrepancy(std::vector<double> fracs);

std::vector<double> fracs_of(const RealSeq& seq);

/// Exact decimal leading digit (1..9) of a positive integer; never goes
/// through floating point.
int leading_digit(const BigInt& v);

struct BenfordStats {
    std::array<double, 9> digit_freqs{};
    double benford_linf = 0.0;
};

/// First-digit frequencies of a list of positive integers, leading digits
/// read from exact decimal arithmetic.
BenfordStats benford_stats(const std::vector<BigInt>& values);
/// Same over the convergent denominators q_1..q_N of an expansion.
BenfordStats benford_stats_q(const CFExpansion& cf, int N);

/// Limit distribution of t_n = T^n x q_{n-1}/q_n:
/// F(z) = (log(1+z) - z/(1+z) log z) / log 2 on [0,1], F(0) = 0.
double bjw_cdf(double z);

/// One-sample sup distance of the empirical CDF against bjw_cdf.
double cdf_sup_distance(std::vector<double> samples);

/// Weyl magnitudes k = 1..kmax plus the star discrepancy of one sequence.
StatReport make_report(const RealSeq& seq, int kmax = 10);

}  // namespace cflab
