#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace bdpr {

// splitmix64 finalizer; used to decorrelate derived seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Deterministic seed derivation: every randomized component draws from an
// engine seeded by (base seed, stream indices), so parallel and serial
// execution produce identical results.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    std::uint64_t s = mix64(base);
    s = mix64(s ^ (a + 0x517CC1B727220A95ULL));
    s = mix64(s ^ (b + 0x6366F1A4E21C65D1ULL));
    s = mix64(s ^ (c + 0x2B990FAA5C1D913FULL));
    return s;
}

inline std::mt19937_64 make_engine(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Eigen::VectorXd gaussian_vector(int n, std::mt19937_64& eng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = dist(eng);
    return v;
}

// CN(0,1): real and imaginary parts each N(0, 1/2).
inline Eigen::VectorXcd complex_gaussian_vector(int n, std::mt19937_64& eng) {
    std::normal_distribution<double> dist(0.0, std::sqrt(0.5));
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) {
        double re = dist(eng);
        double im = dist(eng);
        v(i) = std::complex<double>(re, im);
    }
    return v;
}

inline Eigen::MatrixXd gaussian_matrix(int rows, int cols, std::mt19937_64& eng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = dist(eng);
    return m;
}

template <class S>
Eigen::Vector<S, Eigen::Dynamic> gaussian_factor(int n, std::mt19937_64& eng) {
    if constexpr (std::is_same_v<S, std::complex<double>>) {
        return complex_gaussian_vector(n, eng);
    } else {
        return gaussian_vector(n, eng);
    }
}

}  // namespace bdpr
