#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prodgin/philox.hpp"
#include "prodgin/scaling.hpp"

namespace prodgin::sampler {

struct SeedSpec {
    std::uint64_t root_seed = 0;
    std::uint64_t stream = 0;  // chunk index within the batch
};

struct SampleBatch {
    std::vector<double> values;  // X_n coordinates, chunk order
    scaling::Ensemble e;
    scaling::ScalingConstants sc;
    SeedSpec seed;
    std::string generator = rng::kGeneratorId;
    std::int64_t count() const { return static_cast<std::int64_t>(values.size()); }
};

// Samples are produced in fixed chunks of this many values; chunk i draws
// from stream (seed.stream + i), so any thread count yields identical output.
inline constexpr std::int64_t kChunkSamples = 16384;

// Default cap on n * k * count total Gamma draws per batch.
inline constexpr double kDefaultDrawBudget = 1e11;

// One draw from Gamma(shape, 1), shape >= 1 (Marsaglia-Tsang).
double gamma_variate(double shape, rng::RngStream& rngstream);

// Reproducibly seeded batch of X_n values. Exceeds of the draw budget refuse
// with BudgetExceeded before any work happens.
SampleBatch sample_xn(const scaling::Ensemble& e, const scaling::ScalingConstants& sc,
                      std::int64_t count, const SeedSpec& seed, unsigned threads = 0,
                      double draw_budget = kDefaultDrawBudget);

// Deterministic P(X_n <= x) for k = 1 as a product of incomplete-gamma
// factors, truncated under a certified bound of 1e-15 on the dropped part.
double exact_cdf_k1(const scaling::Ensemble& e, const scaling::ScalingConstants& sc, double x);

// CSV ("index,x_value") plus JSON sidecar with the batch metadata.
void write_batch_csv(const SampleBatch& batch, const std::string& path);
std::string batch_sidecar_json(const SampleBatch& batch);

}  // namespace prodgin::sampler
