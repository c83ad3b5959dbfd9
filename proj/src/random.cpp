#include "abclab/random.hpp"

#include <cmath>
#include <stdexcept>

namespace abclab {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t root_seed)
    : root_seed_(root_seed) {
    reseed();
}

RandomStream::RandomStream(std::uint64_t root_seed, std::vector<std::uint64_t> path)
    : root_seed_(root_seed), path_(std::move(path)) {
    reseed();
}

void RandomStream::reseed() {
    // Hash the full (root_seed, path) descriptor into the xoshiro state.
    std::uint64_t h = root_seed_;
    std::uint64_t acc = splitmix64(h);
    for (std::uint64_t p : path_) {
        h = acc ^ (p + 0x9e3779b97f4a7c15ULL + (acc << 6) + (acc >> 2));
        acc = splitmix64(h);
    }
    std::uint64_t s = acc;
    for (auto& w : state_) w = splitmix64(s);
}

RandomStream RandomStream::derive(std::uint64_t index) const {
    std::vector<std::uint64_t> path = path_;
    path.push_back(index);
    return RandomStream(root_seed_, std::move(path));
}

std::uint64_t RandomStream::next_u64() {
    // xoshiro256++
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RandomStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::int64_t sample_poisson(RandomStream& stream, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("sample_poisson: lambda must be > 0");
    if (lambda > 400.0) {
        // Split so the inversion loop stays short and exp(-lambda) stays normal.
        const double half = lambda / 2.0;
        return sample_poisson(stream, half) + sample_poisson(stream, lambda - half);
    }
    const double u = stream.next_double();
    double p = std::exp(-lambda);
    double cum = p;
    std::int64_t k = 0;
    while (u > cum && k < 100000) {
        ++k;
        p *= lambda / static_cast<double>(k);
        cum += p;
    }
    return k;
}

std::int64_t sample_geometric(RandomStream& stream, double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("sample_geometric: p must be in (0,1)");
    const double u = stream.next_double();
    // P(Y >= k) = (1-p)^k on support {0,1,2,...}
    return static_cast<std::int64_t>(std::floor(std::log1p(-u) / std::log1p(-p)));
}

double sample_normal(RandomStream& stream, double mu, double sigma) {
    if (!(sigma > 0.0)) throw std::domain_error("sample_normal: sigma must be > 0");
    if (stream.has_spare_normal) {
        stream.has_spare_normal = false;
        return mu + sigma * stream.spare_normal;
    }
    double u1 = stream.next_double();
    while (u1 <= 0.0) u1 = stream.next_double();
    const double u2 = stream.next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double z0 = r * std::cos(2.0 * M_PI * u2);
    stream.spare_normal = r * std::sin(2.0 * M_PI * u2);
    stream.has_spare_normal = true;
    return mu + sigma * z0;
}

double sample_exponential(RandomStream& stream, double rate) {
    if (!(rate > 0.0)) throw std::domain_error("sample_exponential: rate must be > 0");
    return -std::log1p(-stream.next_double()) / rate;
}

double sample_uniform(RandomStream& stream, double a, double b) {
    if (!(a < b)) throw std::domain_error("sample_uniform: need a < b");
    return a + (b - a) * stream.next_double();
}

std::size_t sample_categorical(RandomStream& stream, std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0 || !std::isfinite(w))
            throw std::domain_error("sample_categorical: weights must be finite and nonnegative");
        total += w;
    }
    if (!(total > 0.0)) throw std::domain_error("sample_categorical: weights sum to zero");
    const double u = stream.next_double() * total;
    double cum = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        cum += weights[i];
        if (u < cum) return i;
    }
    return weights.size() - 1;
}

}  // namespace abclab
