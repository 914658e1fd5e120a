#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace gexplore {

// Deterministic random source. mt19937_64 is bit-stable across platforms,
// but the std distributions are not, so the draw helpers are implemented
// here directly.
class Rng {
public:
    Rng() : eng_(0) {}
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform integer in [0, n). n must be > 0.
    std::uint64_t uniform(std::uint64_t n) {
        // rejection sampling to avoid modulo bias
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = eng_();
        while (v >= limit) v = eng_();
        return v % n;
    }

    // Uniform double in [0, 1) with 53 bits of precision.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return items[static_cast<std::size_t>(uniform(items.size()))];
    }

    // Derive an independent stream, e.g. one per repetition.
    Rng split(std::uint64_t salt) {
        std::uint64_t s = next() ^ (salt * 0x9E3779B97F4A7C15ULL);
        return Rng(s);
    }

    std::string state_text() const {
        std::ostringstream os;
        os << eng_;
        return os.str();
    }

    void restore_state(const std::string& text) {
        std::istringstream is(text);
        is >> eng_;
    }

    bool operator==(const Rng& other) const { return eng_ == other.eng_; }

private:
    std::mt19937_64 eng_;
};

// FNV-1a, used for abstract state ids; stable across platforms.
inline std::uint64_t fnv1a(const std::string& data, std::uint64_t seed = 0xCBF29CE484222325ULL) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

} // namespace gexplore
