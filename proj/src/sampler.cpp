#include "prodgin/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "prodgin/specfun.hpp"
#include "prodgin/util.hpp"

namespace prodgin::sampler {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

// Marsaglia-Tsang, O(1) expected cost per draw for any shape >= 1. The log of
// the variate comes out of the accepted proposal for free: log(d v) =
// log d + 3 log(1 + c x), which is what the decoupled sampler actually sums.
struct GammaShape {
    double d, c, log_d;

    explicit GammaShape(double shape)
        : d(shape - 1.0 / 3.0), c(1.0 / std::sqrt(9.0 * d)), log_d(std::log(d)) {}

    double draw_log(rng::RngStream& r, double* value) const {
        for (;;) {
            double x, t;
            do {
                x = r.next_normal();
                t = 1.0 + c * x;
            } while (t <= 0.0);
            const double v = t * t * t;
            const double u = r.next_uniform();
            const double x2 = x * x;
            const double lv = 3.0 * std::log1p(c * x);
            if (u < 1.0 - 0.0331 * x2 * x2 ||
                std::log(u) < 0.5 * x2 + d * (1.0 - v + lv)) {
                if (value) *value = d * v;
                return log_d + lv;
            }
        }
    }
};

}  // namespace

double gamma_variate(double shape, rng::RngStream& rngstream) {
    require(std::isfinite(shape) && shape >= 1.0, "gamma_variate: shape must be >= 1");
    double value = 0.0;
    GammaShape(shape).draw_log(rngstream, &value);
    return value;
}

SampleBatch sample_xn(const scaling::Ensemble& e, const scaling::ScalingConstants& sc,
                      std::int64_t count, const SeedSpec& seed, unsigned threads,
                      double draw_budget) {
    require(count >= 1, "sample_xn: count must be >= 1");
    const double total_draws =
        static_cast<double>(e.n) * static_cast<double>(e.k) * static_cast<double>(count);
    if (total_draws > draw_budget) {
        throw BudgetExceeded("sample_xn: n*k*count = " + std::to_string(total_draws) +
                             " exceeds draw budget " + std::to_string(draw_budget));
    }

    std::vector<GammaShape> shapes;
    shapes.reserve(static_cast<std::size_t>(e.n));
    for (std::int64_t j = 1; j <= e.n; ++j) shapes.emplace_back(static_cast<double>(j));

    SampleBatch batch;
    batch.e = e;
    batch.sc = sc;
    batch.seed = seed;
    batch.values.resize(static_cast<std::size_t>(count));

    const std::uint64_t nchunks =
        (static_cast<std::uint64_t>(count) + kChunkSamples - 1) / kChunkSamples;
    parallel_for_index(nchunks, threads, [&](std::uint64_t ci) {
        rng::RngStream r(seed.root_seed, seed.stream + ci);
        const std::int64_t begin = static_cast<std::int64_t>(ci) * kChunkSamples;
        const std::int64_t end = std::min<std::int64_t>(begin + kChunkSamples, count);
        for (std::int64_t i = begin; i < end; ++i) {
            double best = -std::numeric_limits<double>::infinity();
            for (std::int64_t j = 0; j < e.n; ++j) {
                double log_y = 0.0;
                for (std::int64_t rr = 0; rr < e.k; ++rr) {
                    log_y += shapes[static_cast<std::size_t>(j)].draw_log(r, nullptr);
                }
                if (log_y > best) best = log_y;
            }
            batch.values[static_cast<std::size_t>(i)] = scaling::rescale_max(best, e, sc);
        }
    });
    return batch;
}

namespace {

// Chernoff-certified m-cutoff: smallest mu with mu^2/16 + mu s / 4 >= 41.5,
// so the dropped factors (geometric with margin) total below 1e-15.
std::int64_t chernoff_cutoff(const scaling::Ensemble& e, const scaling::ScalingConstants& sc,
                             double s) {
    const double mu = -2.0 * s + std::sqrt(4.0 * s * s + 664.0);
    const double m0 = std::ceil(std::sqrt(sc.alpha_n) * mu);
    return std::min<std::int64_t>(e.n - 1, static_cast<std::int64_t>(m0));
}

double chernoff_tail(const scaling::ScalingConstants& sc, double s, std::int64_t m_cut) {
    const double sqa = std::sqrt(sc.alpha_n);
    const double m1 = static_cast<double>(m_cut) + 1.0;
    const double first = std::exp(-m1 * m1 / (16.0 * sc.alpha_n) - m1 * s / (4.0 * sqa));
    const double ratio = std::exp(-(2.0 * m1 + 1.0) / (16.0 * sc.alpha_n) - s / (4.0 * sqa));
    if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
    return first / (1.0 - ratio);
}

}  // namespace

double exact_cdf_k1(const scaling::Ensemble& e, const scaling::ScalingConstants& sc, double x) {
    require(e.k == 1, "exact_cdf_k1: requires k = 1");
    require(e.n <= 10000000, "exact_cdf_k1: requires n <= 1e7");
    require(std::isfinite(x), "exact_cdf_k1: x must be finite");
    const double s = sc.a_n + sc.b_n * x;
    if (s >= 13.0) return 1.0;  // 1 - CDF below the certified truncation level
    if (s <= -5.5) {
        // Deep lower tail: the leading factor P(Gamma(n) <= e^t) already
        // bounds the CDF by ~Phi(s) < 2e-8 and dominates the additive noise
        // a 1e4-step recurrence would accumulate. Returned as an upper floor.
        const double t = scaling::unscale(x, e, sc);
        return specfun::reg_gamma_p(static_cast<double>(e.n), std::exp(t));
    }

    std::int64_t m_cut = chernoff_cutoff(e, sc, s);
    if (m_cut < e.n - 1) {
        while (chernoff_tail(sc, s, m_cut) > 0.5e-15 && m_cut < e.n - 1) {
            m_cut = std::min<std::int64_t>(e.n - 1, m_cut + m_cut / 4 + 16);
        }
    }

    const double t = scaling::unscale(x, e, sc);
    const double big_x = std::exp(t);
    const double j0 = static_cast<double>(e.n - m_cut);

    double q = specfun::reg_gamma_q(j0, big_x);
    // d = X^j e^{-X} / j!, advanced alongside Q(j+1) = Q(j) + d.
    double d = std::exp(specfun::log_gamma_term(j0 + 1.0, big_x) - t);
    KahanSum log_sum;
    for (std::int64_t j = e.n - m_cut; j <= e.n; ++j) {
        // Floor at log(1e-300): keeps the accumulator NaN-free when a factor
        // rounds to zero; the product is already ~0 at that point.
        const double lf = q < 1.0 ? std::max(std::log1p(-q), -691.0) : -691.0;
        log_sum.add(lf);
        if (j < e.n) {
            q = std::min(q + d, 1.0);
            d *= big_x / (static_cast<double>(j) + 1.0);
        }
    }
    return std::exp(log_sum.value());
}

void write_batch_csv(const SampleBatch& batch, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("write_batch_csv: cannot open " + path);
    std::fputs("index,x_value\n", f);
    for (std::size_t i = 0; i < batch.values.size(); ++i) {
        std::fprintf(f, "%zu,%.17g\n", i, batch.values[i]);
    }
    std::fclose(f);
}

std::string batch_sidecar_json(const SampleBatch& batch) {
    nlohmann::json j;
    j["n"] = batch.e.n;
    j["k"] = batch.e.k;
    j["alpha_n"] = batch.sc.alpha_n;
    j["a_n"] = batch.sc.a_n;
    j["b_n"] = batch.sc.b_n;
    j["count"] = batch.count();
    j["root_seed"] = batch.seed.root_seed;
    j["generator"] = batch.generator;
    return j.dump(2);
}

}  // namespace prodgin::sampler
