#pragma once

#include <bdpr/rng.hpp>
#include <bdpr/tensor.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace bdpr {

enum class EnsembleKind { gaussian, structured };

struct MeasurementSet {
    Eigen::VectorXd y;
    double gamma = 0.0;
    std::optional<std::uint64_t> noise_seed;
    int m() const { return static_cast<int>(y.size()); }
};

struct TripEstimate {
    int r = 0;
    double delta_hat = 0.0;
    int probes = 0;
    std::uint64_t seed = 0;
};

// A sensing ensemble holds m tensors of shape N x N x K, stacked as the rows
// of a single m x (N^2 K) matrix in the Dense3Tensor entry layout. The
// structured kind additionally carries the physical-model components
// (masks g_i, scalers P_i, basis B, DFT F) used by forward_physical.
template <class S>
struct SensingEnsemble {
    EnsembleKind kind = EnsembleKind::gaussian;
    int N = 0, K = 0, m = 0;
    std::uint64_t seed = 0;

    Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows;

    // structured kind only
    int I = 0;
    std::vector<Eigen::VectorXcd> masks;
    std::vector<Eigen::MatrixXd> scalers;
    Eigen::MatrixXd basis;
    Eigen::MatrixXcd dft;

    Dense3Tensor<S> tensor(int i) const {
        return Dense3Tensor<S>(N, N, K, rows.row(i).transpose());
    }
};

inline SensingEnsemble<double> gaussian_ensemble(int N, int K, int m, std::uint64_t seed) {
    if (N < 1 || K < 1 || m < 1) throw std::invalid_argument("gaussian_ensemble: N, K, m must be >= 1");
    SensingEnsemble<double> ens;
    ens.kind = EnsembleKind::gaussian;
    ens.N = N;
    ens.K = K;
    ens.m = m;
    ens.seed = seed;
    ens.rows.resize(m, static_cast<Eigen::Index>(N) * N * K);
    auto eng = make_engine(derive_seed(seed, 1));
    std::normal_distribution<double> dist(0.0, 1.0);
    for (int i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < ens.rows.cols(); ++j) ens.rows(i, j) = dist(eng);
    return ens;
}

// Unnormalized DFT matrix, F(n1,n2) = exp(-j 2 pi n1 n2 / N) with 0-based
// indices. The 1/N of the sensing-tensor definition is kept out of F.
inline Eigen::MatrixXcd dft_matrix(int N) {
    Eigen::MatrixXcd F(N, N);
    const double w = -2.0 * M_PI / N;
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) {
            long long e = static_cast<long long>(r) * c % N;
            F(r, c) = std::polar(1.0, w * static_cast<double>(e));
        }
    return F;
}

// Structured BDPR sensing tensors. For detector i and output index n, the
// (n1,n2,k) entry reduces to
//   A_{i,n}(n1,n2,k) = g_i(n1) conj(g_i(n2)) * sum_l w^(l*(n1-n2)) C_i((n-l) mod N, k)
// with w = exp(-j 2 pi / N) and C_i = P_i B; the 1/N prefactor cancels the
// N that arises from collapsing F^H diag(F(:,n)) F^* to a cyclic-shift
// selector. Measurement index layout: row i*N + n.
inline SensingEnsemble<std::complex<double>> structured_ensemble(int N, int K, int I,
                                                                 std::uint64_t seed) {
    using C = std::complex<double>;
    if (N < 1 || K < 1 || I < 1) throw std::invalid_argument("structured_ensemble: N, K, I must be >= 1");
    SensingEnsemble<C> ens;
    ens.kind = EnsembleKind::structured;
    ens.N = N;
    ens.K = K;
    ens.I = I;
    ens.m = N * I;
    ens.seed = seed;
    ens.dft = dft_matrix(N);

    auto eng = make_engine(derive_seed(seed, 2));
    ens.basis = gaussian_matrix(N, K, eng);
    ens.masks.reserve(I);
    ens.scalers.reserve(I);
    for (int i = 0; i < I; ++i) {
        ens.scalers.push_back(gaussian_matrix(N, N, eng));
        ens.masks.push_back(complex_gaussian_vector(N, eng));
    }

    Eigen::VectorXcd roots(N);
    for (int j = 0; j < N; ++j) roots(j) = std::polar(1.0, -2.0 * M_PI * j / N);

    ens.rows.resize(ens.m, static_cast<Eigen::Index>(N) * N * K);
    Eigen::MatrixXcd shift_sum(N, K);  // d -> sum_l w^(l d) C_i((n-l) mod N, :)
    for (int i = 0; i < I; ++i) {
        const Eigen::MatrixXd Ci = ens.scalers[i] * ens.basis;
        const Eigen::VectorXcd& g = ens.masks[i];
        for (int n = 0; n < N; ++n) {
            shift_sum.setZero();
            for (int d = 0; d < N; ++d)
                for (int l = 0; l < N; ++l)
                    shift_sum.row(d) += roots((static_cast<long long>(l) * d) % N) *
                                        Ci.row(((n - l) % N + N) % N);
            auto row = ens.rows.row(static_cast<Eigen::Index>(i) * N + n);
            Eigen::Index idx = 0;
            for (int n1 = 0; n1 < N; ++n1)
                for (int n2 = 0; n2 < N; ++n2) {
                    const C gg = g(n1) * std::conj(g(n2));
                    const int d = ((n1 - n2) % N + N) % N;
                    for (int k = 0; k < K; ++k) row(idx++) = gg * shift_sum(d, k);
                }
        }
    }
    return ens;
}

// Exact-isometry design: m = N^2 K tensors sqrt(m) E_i, so (1/m) A* A = id.
// Test/reference construction; not reachable from the JSON ensemble spec.
inline SensingEnsemble<double> isometric_ensemble(int N, int K) {
    SensingEnsemble<double> ens;
    ens.kind = EnsembleKind::gaussian;
    ens.N = N;
    ens.K = K;
    ens.m = N * N * K;
    ens.seed = 0;
    ens.rows = std::sqrt(static_cast<double>(ens.m)) *
               Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>::Identity(ens.m, ens.m);
    return ens;
}

// y(i) = <A_i, T). For the structured complex path the measurements are real
// up to roundoff; the imaginary residue is checked against the invariant and
// discarded.
template <class S>
MeasurementSet apply(const SensingEnsemble<S>& ens, const Dense3Tensor<S>& T) {
    if (T.d1() != ens.N || T.d2() != ens.N || T.d3() != ens.K)
        throw std::invalid_argument("apply: tensor dims do not match ensemble");
    MeasurementSet out;
    if constexpr (is_complex_v<S>) {
        Eigen::VectorXcd raw = ens.rows * T.vec().conjugate();
        const double scale = raw.cwiseAbs().maxCoeff();
        const double residue = raw.imag().cwiseAbs().maxCoeff();
        if (residue > 1e-10 * std::max(scale, 1e-300))
            throw std::runtime_error("apply: structured measurement has non-negligible imaginary part");
        out.y = raw.real();
    } else {
        out.y = ens.rows * T.vec();
    }
    return out;
}

// A*(y) = sum_i y(i) A_i
template <class S>
Dense3Tensor<S> adjoint(const SensingEnsemble<S>& ens, const Eigen::VectorXd& y) {
    if (y.size() != ens.m) throw std::invalid_argument("adjoint: measurement length mismatch");
    VecX<S> g;
    if constexpr (is_complex_v<S>) {
        g = ens.rows.transpose() * y.cast<S>();
    } else {
        g = ens.rows.transpose() * y;
    }
    return Dense3Tensor<S>(ens.N, ens.N, ens.K, std::move(g));
}

// Physical forward model: per detector position i,
//   y_i = |F(x .* g_i)|^2 (cyclic conv) (P_i B h),
// with (u conv v)(n) = sum_l u(l) v((n-l) mod N). Blocks concatenated over i.
inline MeasurementSet forward_physical(const Eigen::VectorXcd& x, const Eigen::VectorXd& h,
                                       const SensingEnsemble<std::complex<double>>& ens) {
    if (ens.kind != EnsembleKind::structured)
        throw std::invalid_argument("forward_physical: ensemble must be structured");
    if (x.size() != ens.N || h.size() != ens.K)
        throw std::invalid_argument("forward_physical: dimension mismatch");
    const int N = ens.N;
    MeasurementSet out;
    out.y.resize(ens.m);
    const Eigen::VectorXd s = ens.basis * h;
    for (int i = 0; i < ens.I; ++i) {
        Eigen::VectorXcd fw = ens.dft * x.cwiseProduct(ens.masks[i]);
        Eigen::VectorXd u = fw.cwiseAbs2();
        Eigen::VectorXd v = ens.scalers[i] * s;
        for (int n = 0; n < N; ++n) {
            double acc = 0.0;
            for (int l = 0; l < N; ++l) acc += u(l) * v(((n - l) % N + N) % N);
            out.y(static_cast<Eigen::Index>(i) * N + n) = acc;
        }
    }
    return out;
}

inline MeasurementSet add_noise(const MeasurementSet& clean, double gamma, std::uint64_t seed) {
    if (gamma < 0) throw std::invalid_argument("add_noise: gamma must be nonnegative");
    MeasurementSet out = clean;
    out.gamma = gamma;
    out.noise_seed = seed;
    if (gamma == 0.0) return out;
    auto eng = make_engine(derive_seed(seed, 3));
    std::normal_distribution<double> dist(0.0, gamma);
    for (Eigen::Index i = 0; i < out.y.size(); ++i) out.y(i) += dist(eng);
    return out;
}

namespace detail {

// Random CP tensor of rank <= r. Even probes draw r independent rank-one
// terms; odd probes draw partial-symmetric terms x (x) x (x) h, which are the
// model-relevant class. Complex ensembles use Hermitian-lifted terms
// conj(x) o x o h with real h so the measurements stay real.
template <class S>
Dense3Tensor<S> random_cp_probe(int N, int K, int r, bool partial_symmetric, std::mt19937_64& eng) {
    Dense3Tensor<S> T(N, N, K);
    for (int j = 0; j < r; ++j) {
        if (partial_symmetric) {
            VecX<S> x = gaussian_factor<S>(N, eng);
            VecX<S> h;
            if constexpr (is_complex_v<S>) {
                h = gaussian_vector(K, eng).template cast<S>();
            } else {
                h = gaussian_vector(K, eng);
            }
            T += lifted<S>(x, h, is_complex_v<S>);
        } else {
            VecX<S> a = gaussian_factor<S>(N, eng);
            VecX<S> b = gaussian_factor<S>(N, eng);
            VecX<S> c = gaussian_factor<S>(K, eng);
            T += outer3<S>(a, b, c);
        }
    }
    return T;
}

}  // namespace detail

// Empirical TRIP constant over random rank-<=r probes:
//   delta_hat = max_probes | ||A(T)||^2 / (m ||T||_F^2) - 1 |.
// A probe-based maximum, hence always a lower bound on the true delta_r.
template <class S>
TripEstimate estimate_trip(const SensingEnsemble<S>& ens, int r, int probes, std::uint64_t seed) {
    if (r < 1 || probes < 1) throw std::invalid_argument("estimate_trip: r and probes must be >= 1");
    TripEstimate est;
    est.r = r;
    est.probes = probes;
    est.seed = seed;
    for (int p = 0; p < probes; ++p) {
        auto eng = make_engine(derive_seed(seed, 4, static_cast<std::uint64_t>(p)));
        const bool partial = is_complex_v<S> || (p % 2 == 1);
        auto T = detail::random_cp_probe<S>(ens.N, ens.K, r, partial, eng);
        const double tn2 = T.vec().squaredNorm();
        if (tn2 == 0.0) continue;
        const double ratio = bdpr::apply(ens, T).y.squaredNorm() / (ens.m * tn2);
        est.delta_hat = std::max(est.delta_hat, std::abs(ratio - 1.0));
    }
    return est;
}

}  // namespace bdpr
