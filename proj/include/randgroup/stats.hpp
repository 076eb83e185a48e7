#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <randgroup/automata.hpp>
#include <randgroup/errors.hpp>
#include <randgroup/numeric.hpp>
#include <randgroup/rng.hpp>
#include <randgroup/sampler.hpp>
#include <randgroup/words.hpp>

namespace randgroup {

/// Parameters of the hit-count model: `draws` entries are drawn uniformly and
/// independently from a population of size `population`, of which `marked`
/// are distinguished.  The observable is the number of draws that land in the
/// marked part, and `epsilon` is the relative half-width of the window around
/// its mean used by the concentration experiments.
struct HitModelParams {
    BigInt population;  // c > 0
    BigInt marked;      // a, with 0 < a <= c
    BigInt draws;       // b > 0
    BigRat epsilon{1, 2};
};

inline void validate(const HitModelParams& params) {
    if (params.population <= 0)
        throw std::invalid_argument("hit model: population must be positive");
    if (params.marked <= 0 || params.marked > params.population)
        throw std::invalid_argument("hit model: need 0 < marked <= population");
    if (params.draws <= 0)
        throw std::invalid_argument("hit model: draws must be positive");
    if (params.epsilon <= 0)
        throw std::invalid_argument("hit model: epsilon must be positive");
}

struct Moments {
    BigRat mean;
    BigRat variance;
};

/// Exact mean a*b/c and variance (a*b/c)(1 - a/c) of the hit count.
inline Moments moments(const HitModelParams& params) {
    validate(params);
    BigRat mean = BigRat(params.marked * params.draws, params.population);
    BigRat variance = mean * (BigRat(1) - BigRat(params.marked, params.population));
    return {std::move(mean), std::move(variance)};
}

/// Tail bound P(|X - E X| >= alpha) <= variance / alpha^2, clamped to 1.
inline BigRat chebyshev_tail(const BigRat& variance, const BigRat& alpha) {
    if (alpha <= 0) throw std::invalid_argument("chebyshev_tail: alpha must be positive");
    if (variance < 0) throw std::invalid_argument("chebyshev_tail: variance must be nonnegative");
    BigRat bound = variance / (alpha * alpha);
    return bound > 1 ? BigRat(1) : bound;
}

struct DistinctnessBound {
    BigRat exact;            // prod_{j=0}^{b-1} (1 - j/c)
    BigRat bernoulli_lower;  // 1 - b(b-1)/c, may be negative
};

/// Probability that `draws` uniform picks from a `population`-element set are
/// pairwise distinct, together with its Bernoulli-inequality lower bound.
inline DistinctnessBound distinctness_probability(const BigInt& draws, const BigInt& population) {
    if (draws < 1) throw std::invalid_argument("distinctness_probability: draws must be >= 1");
    if (population < 1)
        throw std::invalid_argument("distinctness_probability: population must be >= 1");
    BigRat lower = BigRat(1) - BigRat(draws * (draws - 1), population);
    if (draws > population) return {BigRat(0), std::move(lower)};
    if (draws > 50'000)
        throw BudgetError("distinctness_probability: exact product over more than 5e4 draws");
    // falling factorial over c^{b-1}, normalized once at the end
    BigInt num = 1;
    for (BigInt j = 1; j < draws; ++j) num *= population - j;
    BigInt den = pow(population, static_cast<unsigned>(draws - 1));
    return {BigRat(std::move(num), std::move(den)), std::move(lower)};
}

/// Summary of a simulated hit-count experiment next to the exact quantities
/// it is supposed to concentrate around.
struct ConcentrationReport {
    HitModelParams params;
    int trials = 0;
    double empirical_in_window = 0.0;  // fraction with |hits - mean| <= eps*mean
    BigRat mean_exact;
    BigRat var_exact;
    BigRat chebyshev_bound;  // var / (eps*mean)^2, deliberately unclamped
    BigRat q_exact;          // all-draws-distinct probability
    BigRat q_bernoulli;
    double empirical_mean = 0.0;
    double empirical_variance = 0.0;
    double hits_distinct_mean = 0.0;        // mean count of distinct marked values hit
    double all_distinct_fraction = 0.0;     // fraction of trials with no repeated draw
    double nonempty_fraction = 0.0;         // fraction of trials with at least one hit
};

namespace detail {

// Shared tally for both the urn simulation and the word-sampling experiment.
// Everything is a sum or a count, so aggregation order never matters.
class TrialTally {
  public:
    explicit TrialTally(const HitModelParams& params) : params_(params) {
        // |hits*c - a*b| * eps_den <= eps_num * a*b, kept in integers for exactness
        window_rhs_ = numerator(params.epsilon) * params.marked * params.draws;
        eps_den_ = denominator(params.epsilon);
    }

    void add(std::uint64_t hits, std::uint64_t distinct_hits, bool all_draws_distinct) {
        ++trials_;
        hit_sum_ += hits;
        hit_sq_sum_ += hits * hits;
        distinct_sum_ += distinct_hits;
        BigInt gap = BigInt(hits) * params_.population - params_.marked * params_.draws;
        if (gap < 0) gap = -gap;
        if (gap * eps_den_ <= window_rhs_) ++in_window_;
        if (all_draws_distinct) ++all_distinct_;
        if (hits > 0) ++nonempty_;
    }

    ConcentrationReport finish() const {
        if (trials_ == 0) throw std::logic_error("TrialTally: no trials recorded");
        ConcentrationReport r;
        r.params = params_;
        r.trials = static_cast<int>(trials_);
        auto m = moments(params_);
        r.mean_exact = std::move(m.mean);
        r.var_exact = std::move(m.variance);
        BigRat half_width = params_.epsilon * r.mean_exact;
        r.chebyshev_bound = r.var_exact / (half_width * half_width);
        auto q = distinctness_probability(params_.draws, params_.population);
        r.q_exact = std::move(q.exact);
        r.q_bernoulli = std::move(q.bernoulli_lower);
        double t = static_cast<double>(trials_);
        r.empirical_in_window = static_cast<double>(in_window_) / t;
        r.empirical_mean = static_cast<double>(hit_sum_) / t;
        r.empirical_variance =
            static_cast<double>(hit_sq_sum_) / t - r.empirical_mean * r.empirical_mean;
        r.hits_distinct_mean = static_cast<double>(distinct_sum_) / t;
        r.all_distinct_fraction = static_cast<double>(all_distinct_) / t;
        r.nonempty_fraction = static_cast<double>(nonempty_) / t;
        return r;
    }

  private:
    HitModelParams params_;
    BigInt window_rhs_;
    BigInt eps_den_;
    std::uint64_t trials_ = 0;
    std::uint64_t hit_sum_ = 0;
    std::uint64_t hit_sq_sum_ = 0;
    std::uint64_t distinct_sum_ = 0;
    std::uint64_t in_window_ = 0;
    std::uint64_t all_distinct_ = 0;
    std::uint64_t nonempty_ = 0;
};

}  // namespace detail

/// Simulate the hit-count model directly: per trial, `draws` uniform integer
/// draws from the population, hits being the draws below `marked`.
/// Deterministic in `seed`; trial i uses the derived stream for index i.
inline ConcentrationReport run_concentration_experiment(const HitModelParams& params, int trials,
                                                        std::uint64_t seed) {
    validate(params);
    if (trials < 1) throw std::invalid_argument("concentration experiment: trials must be >= 1");
    if (params.population > BigInt(std::uint64_t(1) << 63))
        throw BudgetError("concentration experiment: population exceeds simulable range");
    if (params.draws * trials > 1'000'000'000)
        throw BudgetError("concentration experiment: more than 1e9 total draws");
    auto population = static_cast<std::uint64_t>(params.population);
    auto marked = static_cast<std::uint64_t>(params.marked);
    auto draws = static_cast<std::uint64_t>(params.draws);

    detail::TrialTally tally(params);
    std::vector<std::uint64_t> sample(draws);
    for (int t = 0; t < trials; ++t) {
        SplitMix64 rng(derive_subseed(seed, static_cast<std::uint64_t>(t)));
        for (auto& v : sample) v = rng.below(population);
        std::sort(sample.begin(), sample.end());
        std::uint64_t hits = 0;
        std::uint64_t distinct_hits = 0;
        bool all_distinct = true;
        for (std::size_t i = 0; i < sample.size(); ++i) {
            bool repeat = i > 0 && sample[i] == sample[i - 1];
            if (repeat) all_distinct = false;
            if (sample[i] < marked) {
                ++hits;
                if (!repeat) ++distinct_hits;
            }
        }
        tally.add(hits, distinct_hits, all_distinct);
    }
    return tally.finish();
}

struct IntersectionConfig {
    int generators = 2;
    double density = 0.5;
    std::vector<int> lengths;
    int trials = 100;
    std::uint64_t seed = 0;
    Fraction epsilon{1, 2};
};

struct IntersectionRow {
    int length = 0;
    ConcentrationReport report;
    double envelope_ratio = 0.0;  // hits_distinct_mean / (2n-1)^{(d+d'-1)L}
};

struct IntersectionReport {
    double d_prime = 0.0;  // growth density of the fixed language, from exact counts
    bool meets_growth_hypothesis = false;    // d + d' > 1
    bool meets_distinct_hypothesis = false;  // d < 1/2
    std::vector<IntersectionRow> rows;       // one per requested length, in input order
};

/// Sample relator sets at density `d` for each requested length and count how
/// many entries (with and without multiplicity) land in the fixed language.
/// The language's own density d' is measured from its exact counts at the two
/// largest requested lengths, never assumed.  A sweep outside the hypothesis
/// d + d' > 1 is still run; the report just flags it.
inline IntersectionReport run_intersection_experiment(const BAutomaton& fixed_set,
                                                      const IntersectionConfig& config) {
    if (fixed_set.n != config.generators)
        throw std::invalid_argument("intersection experiment: automaton alphabet mismatch");
    if (config.lengths.empty())
        throw std::invalid_argument("intersection experiment: need at least one length");
    if (config.trials < 1)
        throw std::invalid_argument("intersection experiment: trials must be >= 1");
    for (int L : config.lengths)
        if (L < 1) throw std::invalid_argument("intersection experiment: lengths must be >= 1");
    Alphabet alphabet(config.generators);

    IntersectionReport out;
    double log_base = std::log(static_cast<double>(2 * config.generators - 1));
    {
        std::vector<int> sorted = config.lengths;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        int hi = sorted.back();
        BigInt count_hi = count_language_reduced(fixed_set, hi);
        if (count_hi == 0 || log_base == 0.0) {
            out.d_prime = -std::numeric_limits<double>::infinity();
        } else if (sorted.size() >= 2) {
            int lo = sorted[sorted.size() - 2];
            BigInt count_lo = count_language_reduced(fixed_set, lo);
            out.d_prime = count_lo == 0
                              ? std::numeric_limits<double>::infinity()
                              : std::log(to_double(BigRat(count_hi, count_lo))) /
                                    ((hi - lo) * log_base);
        } else {
            out.d_prime = std::log(to_double(BigRat(count_hi))) / (hi * log_base);
        }
    }
    out.meets_growth_hypothesis = config.density + out.d_prime > 1.0;
    out.meets_distinct_hypothesis = config.density < 0.5;

    BigRat epsilon(config.epsilon.num, config.epsilon.den);
    for (std::size_t row_index = 0; row_index < config.lengths.size(); ++row_index) {
        int L = config.lengths[row_index];
        HitModelParams params;
        params.population = count_reduced(alphabet, L);
        params.marked = count_language_reduced(fixed_set, L);
        params.draws = compute_relator_count(config.generators, config.density, L);
        params.epsilon = epsilon;
        if (params.marked == 0)
            throw std::invalid_argument(
                "intersection experiment: fixed language is empty at a requested length");

        detail::TrialTally tally(params);
        std::uint64_t row_seed = derive_subseed(config.seed, static_cast<std::uint64_t>(L));
        auto draws = static_cast<std::uint64_t>(params.draws);
        for (int t = 0; t < config.trials; ++t) {
            auto relators = sample_words(alphabet, L, draws,
                                         derive_subseed(row_seed, static_cast<std::uint64_t>(t)));
            std::uint64_t hits = 0;
            std::vector<const Word*> members;
            for (const Word& w : relators)
                if (accepts(fixed_set, w)) {
                    ++hits;
                    members.push_back(&w);
                }
            auto word_less = [](const Word* x, const Word* y) { return *x < *y; };
            auto word_eq = [](const Word* x, const Word* y) { return *x == *y; };
            std::sort(members.begin(), members.end(), word_less);
            std::uint64_t distinct_hits = static_cast<std::uint64_t>(
                std::unique(members.begin(), members.end(), word_eq) - members.begin());
            std::sort(relators.begin(), relators.end(),
                      [](const Word& x, const Word& y) { return x < y; });
            bool all_distinct =
                std::adjacent_find(relators.begin(), relators.end()) == relators.end();
            tally.add(hits, distinct_hits, all_distinct);
        }

        IntersectionRow row;
        row.length = L;
        row.report = tally.finish();
        double exponent = (config.density + out.d_prime - 1.0) * L;
        row.envelope_ratio = row.report.hits_distinct_mean / std::exp(exponent * log_base);
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace randgroup
