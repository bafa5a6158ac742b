#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bdpr/rng.hpp>
#include <bdpr/tensor.hpp>

#include <complex>

using namespace bdpr;
using C = std::complex<double>;

namespace {

// Independent Kronecker product oracle: (u ⊗ v)(i*|v|+j) = u(i) v(j).
template <class S>
VecX<S> kron_oracle(const VecX<S>& u, const VecX<S>& v) {
    VecX<S> out(u.size() * v.size());
    for (Eigen::Index i = 0; i < u.size(); ++i)
        for (Eigen::Index j = 0; j < v.size(); ++j) out(i * v.size() + j) = u(i) * v(j);
    return out;
}

template <class S>
Dense3Tensor<S> random_tensor(int n1, int n2, int n3, std::mt19937_64& eng) {
    Dense3Tensor<S> t(n1, n2, n3);
    t.vec() = gaussian_factor<S>(static_cast<int>(t.size()), eng);
    return t;
}

}  // namespace

TEST_CASE("outer3 basis case") {
    VecX<double> e1(2);
    e1 << 1, 0;
    auto t = outer3<double>(e1, e1, e1);
    CHECK(t(0, 0, 0) == 1.0);
    double rest = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                if (i + j + k > 0) rest += std::abs(t(i, j, k));
    CHECK(rest == 0.0);
}

TEST_CASE("outer3 hand-enumerated entries") {
    VecX<double> a(2), b(1), c(2);
    a << 1, 2;
    b << 3;
    c << 4, 5;
    auto t = outer3<double>(a, b, c);
    CHECK(t.d1() == 2);
    CHECK(t.d2() == 1);
    CHECK(t.d3() == 2);
    CHECK(t(0, 0, 0) == 12.0);
    CHECK(t(0, 0, 1) == 15.0);
    CHECK(t(1, 0, 0) == 24.0);
    CHECK(t(1, 0, 1) == 30.0);
}

TEST_CASE("outer3 annihilation by zero factor") {
    auto eng = make_engine(7);
    auto a = gaussian_vector(3, eng);
    auto b = gaussian_vector(4, eng);
    VecX<double> c = VecX<double>::Zero(2);
    auto t = outer3<double>(a, b, c);
    CHECK(t.vec().lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("mode_unfold basis case") {
    VecX<double> e1(2);
    e1 << 1, 0;
    auto t = outer3<double>(e1, e1, e1);
    auto m = mode_unfold(t, 1);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 4);
    // single 1 in row 1 at the column for (c-index 1, b-index 1)
    CHECK(m(0, 0) == 1.0);
    CHECK(m.cwiseAbs().sum() == 1.0);
}

TEST_CASE("mode_unfold row oracle from hand Kronecker expansion") {
    VecX<double> a(2), b(2), c(2);
    a << 1, 2;
    b << 3, 4;
    c << 5, 6;
    auto m = mode_unfold(outer3<double>(a, b, c), 1);
    Eigen::RowVector4d want(15, 20, 18, 24);  // 1 * (c⊗b)^T
    CHECK((m.row(0) - want).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("mode_unfold matches per-mode rank-one closed forms") {
    auto eng = make_engine(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = complex_gaussian_vector(3, eng);
        auto b = complex_gaussian_vector(2, eng);
        auto c = complex_gaussian_vector(4, eng);
        auto t = outer3<C>(a, b, c);
        MatX<C> m1 = mode_unfold(t, 1);
        MatX<C> m2 = mode_unfold(t, 2);
        MatX<C> m3 = mode_unfold(t, 3);
        MatX<C> w1 = a * kron_oracle<C>(c, b).transpose();
        MatX<C> w2 = b * kron_oracle<C>(a, c).transpose();
        MatX<C> w3 = c * kron_oracle<C>(b, a).transpose();
        CHECK((m1 - w1).cwiseAbs().maxCoeff() <= 1e-14 * w1.cwiseAbs().maxCoeff());
        CHECK((m2 - w2).cwiseAbs().maxCoeff() <= 1e-14 * w2.cwiseAbs().maxCoeff());
        CHECK((m3 - w3).cwiseAbs().maxCoeff() <= 1e-14 * w3.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("unfold/refold round-trips bit-exactly") {
    auto eng = make_engine(3);
    for (int trial = 0; trial < 10; ++trial) {
        auto t = random_tensor<C>(2 + trial % 3, 2, 2 + trial % 2, eng);
        for (int mode = 1; mode <= 3; ++mode) {
            auto back = refold(mode_unfold(t, mode), mode, t.d1(), t.d2(), t.d3());
            CHECK((back.vec() - t.vec()).lpNorm<Eigen::Infinity>() == 0.0);
        }
    }
}

TEST_CASE("mode_unfold rejects invalid mode") {
    Dense3Tensor<double> t(2, 2, 2);
    CHECK_THROWS_AS(mode_unfold(t, 0), std::invalid_argument);
    CHECK_THROWS_AS(mode_unfold(t, 4), std::invalid_argument);
}

TEST_CASE("inner definition identities") {
    auto eng = make_engine(5);
    auto t = random_tensor<C>(3, 2, 4, eng);
    auto s = random_tensor<C>(3, 2, 4, eng);

    // inner(T,T) = fro_norm(T)^2, real and nonnegative
    C tt = inner(t, t);
    CHECK(std::abs(tt.imag()) <= 1e-14 * std::abs(tt.real()));
    CHECK(tt.real() == doctest::Approx(fro_norm(t) * fro_norm(t)).epsilon(1e-13));

    // Hermitian symmetry
    C ts = inner(t, s);
    C st = inner(s, t);
    CHECK(std::abs(ts - std::conj(st)) <= 1e-13 * std::abs(ts));

    // inner(T, 0) = 0
    Dense3Tensor<C> z(3, 2, 4);
    CHECK(std::abs(inner(t, z)) == 0.0);

    CHECK_THROWS_AS(inner(t, random_tensor<C>(2, 2, 4, eng)), std::invalid_argument);
}

TEST_CASE("inner separability over rank-one tensors") {
    auto eng = make_engine(17);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = complex_gaussian_vector(3, eng), a2 = complex_gaussian_vector(3, eng);
        auto b = complex_gaussian_vector(2, eng), b2 = complex_gaussian_vector(2, eng);
        auto c = complex_gaussian_vector(4, eng), c2 = complex_gaussian_vector(4, eng);
        C got = inner(outer3<C>(a, b, c), outer3<C>(a2, b2, c2));
        // direct summation oracle, conjugation on the second argument
        C want = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 4; ++k)
                    want += a(i) * b(j) * c(k) * std::conj(a2(i) * b2(j) * c2(k));
        CHECK(std::abs(got - want) <= 1e-13 * std::abs(want));
        // separable closed form
        C sep = a2.dot(a) * b2.dot(b) * c2.dot(c);
        CHECK(std::abs(got - sep) <= 1e-12 * std::max(1.0, std::abs(sep)));
    }
}

TEST_CASE("fro_norm basics") {
    Dense3Tensor<double> z(2, 3, 2);
    CHECK(fro_norm(z) == 0.0);

    Dense3Tensor<double> one(1, 1, 1);
    one(0, 0, 0) = 3.0;
    CHECK(fro_norm(one) == 3.0);

    auto eng = make_engine(23);
    auto x = gaussian_vector(5, eng);
    x.normalize();
    auto h = gaussian_vector(3, eng);
    CHECK(fro_norm(outer3<double>(x, x, h)) == doctest::Approx(h.norm()).epsilon(1e-13));
}

TEST_CASE("fro_norm homogeneity under complex scaling") {
    auto eng = make_engine(29);
    auto t = random_tensor<C>(2, 3, 2, eng);
    std::normal_distribution<double> d(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        C alpha(d(eng), d(eng));
        auto scaled = t;
        scaled *= alpha;
        CHECK(fro_norm(scaled) == doctest::Approx(std::abs(alpha) * fro_norm(t)).epsilon(1e-13));
    }
}

TEST_CASE("lifted real and complex cases") {
    VecX<double> xr(2), hr(1);
    xr << 1, 0;
    hr << 2;
    auto tr = lifted<double>(xr, hr, false);
    CHECK(tr(0, 0, 0) == 2.0);
    CHECK(tr.vec().cwiseAbs().sum() == 2.0);

    VecX<C> xc(2), hc(1);
    xc << C(0, 1), C(0, 0);
    hc << C(1, 0);
    auto tc = lifted<C>(xc, hc, true);
    CHECK(tc(0, 0, 0) == C(1, 0));  // conj(i) * i = 1

    auto eng = make_engine(31);
    for (int trial = 0; trial < 10; ++trial) {
        auto x = complex_gaussian_vector(4, eng);
        auto h = complex_gaussian_vector(3, eng);
        double want = x.squaredNorm() * h.norm();
        CHECK(fro_norm(lifted<C>(x, h, true)) == doctest::Approx(want).epsilon(1e-13));
        CHECK(fro_norm(lifted<C>(x, h, false)) == doctest::Approx(want).epsilon(1e-13));
    }
}
