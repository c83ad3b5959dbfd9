#ifndef ABCLAB_RANDOM_HPP
#define ABCLAB_RANDOM_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace abclab {

// Splittable deterministic random stream.  A stream is identified by a
// (root_seed, path) descriptor; deriving a substream appends one index to the
// path and reseeds from a hash of the full descriptor, so substreams can be
// created in any order and on any thread with identical results.  Drawing
// advances a private cursor: one stream per task, never shared.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t root_seed);

    // Substream for the given path index; independent of this stream's cursor.
    RandomStream derive(std::uint64_t index) const;

    std::uint64_t next_u64();
    double next_double();  // uniform in [0, 1)

    std::uint64_t root_seed() const { return root_seed_; }
    const std::vector<std::uint64_t>& stream_path() const { return path_; }

    // Box-Muller spare, used by sample_normal.
    bool has_spare_normal = false;
    double spare_normal = 0.0;

private:
    RandomStream(std::uint64_t root_seed, std::vector<std::uint64_t> path);
    void reseed();

    std::uint64_t root_seed_;
    std::vector<std::uint64_t> path_;
    std::array<std::uint64_t, 4> state_{};  // xoshiro256++
};

// Sampling primitives.  All throw std::domain_error on invalid parameters.
std::int64_t sample_poisson(RandomStream& stream, double lambda);
// Support {0,1,2,...} with pmf p(1-p)^y, so a sum of n draws is NegBin(n,p).
std::int64_t sample_geometric(RandomStream& stream, double p);
double sample_normal(RandomStream& stream, double mu, double sigma);
double sample_exponential(RandomStream& stream, double rate);
double sample_uniform(RandomStream& stream, double a, double b);
std::size_t sample_categorical(RandomStream& stream, std::span<const double> weights);

}  // namespace abclab

#endif
