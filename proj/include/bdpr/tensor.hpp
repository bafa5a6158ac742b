#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <type_traits>

namespace bdpr {

template <class S>
inline constexpr bool is_complex_v = false;
template <class R>
inline constexpr bool is_complex_v<std::complex<R>> = true;

// Conjugation that is the identity on real scalars.
template <class S>
inline S conj_s(const S& v) {
    if constexpr (is_complex_v<S>)
        return std::conj(v);
    else
        return v;
}

template <class S>
using VecX = Eigen::Vector<S, Eigen::Dynamic>;
template <class S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

// Dense third-order tensor, row-major: entry (n1,n2,n3) lives at
// flat index (n1*N2 + n2)*N3 + n3. The scalar field (real or complex)
// is fixed by the template parameter; mixing fields does not compile.
template <class S>
class Dense3Tensor {
public:
    Dense3Tensor() : dims_{0, 0, 0} {}
    Dense3Tensor(int n1, int n2, int n3)
        : dims_{n1, n2, n3}, data_(VecX<S>::Zero(static_cast<Eigen::Index>(n1) * n2 * n3)) {
        if (n1 < 1 || n2 < 1 || n3 < 1) throw std::invalid_argument("Dense3Tensor: dims must be positive");
    }
    Dense3Tensor(int n1, int n2, int n3, VecX<S> entries) : dims_{n1, n2, n3}, data_(std::move(entries)) {
        if (data_.size() != static_cast<Eigen::Index>(n1) * n2 * n3)
            throw std::invalid_argument("Dense3Tensor: entry count does not match dims");
    }

    int d1() const { return dims_[0]; }
    int d2() const { return dims_[1]; }
    int d3() const { return dims_[2]; }
    std::array<int, 3> dims() const { return dims_; }
    Eigen::Index size() const { return data_.size(); }

    S operator()(int i, int j, int k) const { return data_(flat(i, j, k)); }
    S& operator()(int i, int j, int k) { return data_(flat(i, j, k)); }

    const VecX<S>& vec() const { return data_; }
    VecX<S>& vec() { return data_; }

    Dense3Tensor& operator+=(const Dense3Tensor& o) {
        check_same_dims(o);
        data_ += o.data_;
        return *this;
    }
    Dense3Tensor& operator-=(const Dense3Tensor& o) {
        check_same_dims(o);
        data_ -= o.data_;
        return *this;
    }
    Dense3Tensor& operator*=(const S& a) {
        data_ *= a;
        return *this;
    }
    friend Dense3Tensor operator+(Dense3Tensor a, const Dense3Tensor& b) { return a += b; }
    friend Dense3Tensor operator-(Dense3Tensor a, const Dense3Tensor& b) { return a -= b; }
    friend Dense3Tensor operator*(const S& a, Dense3Tensor t) { return t *= a; }

    void check_same_dims(const Dense3Tensor& o) const {
        if (dims_ != o.dims_) throw std::invalid_argument("Dense3Tensor: dimension mismatch");
    }

private:
    Eigen::Index flat(int i, int j, int k) const {
        return (static_cast<Eigen::Index>(i) * dims_[1] + j) * dims_[2] + k;
    }
    std::array<int, 3> dims_;
    VecX<S> data_;
};

// a ∘ b ∘ c
template <class S>
Dense3Tensor<S> outer3(const VecX<S>& a, const VecX<S>& b, const VecX<S>& c) {
    if (a.size() == 0 || b.size() == 0 || c.size() == 0)
        throw std::invalid_argument("outer3: factors must be nonempty");
    Dense3Tensor<S> t(static_cast<int>(a.size()), static_cast<int>(b.size()), static_cast<int>(c.size()));
    Eigen::Index idx = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (Eigen::Index j = 0; j < b.size(); ++j) {
            const S ab = a(i) * b(j);
            for (Eigen::Index k = 0; k < c.size(); ++k) t.vec()(idx++) = ab * c(k);
        }
    return t;
}

// Mode-n matricization of a third-order tensor. The column orderings match
// the rank-one identities
//   M1(a∘b∘c) = a (c⊗b)^T,  M2(a∘b∘c) = b (a⊗c)^T,  M3(a∘b∘c) = c (b⊗a)^T,
// which differ per mode; a single uniform convention would permute columns.
template <class S>
MatX<S> mode_unfold(const Dense3Tensor<S>& t, int mode) {
    const int N1 = t.d1(), N2 = t.d2(), N3 = t.d3();
    switch (mode) {
        case 1: {
            MatX<S> m(N1, static_cast<Eigen::Index>(N2) * N3);
            for (int i = 0; i < N1; ++i)
                for (int j = 0; j < N2; ++j)
                    for (int k = 0; k < N3; ++k) m(i, static_cast<Eigen::Index>(k) * N2 + j) = t(i, j, k);
            return m;
        }
        case 2: {
            MatX<S> m(N2, static_cast<Eigen::Index>(N3) * N1);
            for (int i = 0; i < N1; ++i)
                for (int j = 0; j < N2; ++j)
                    for (int k = 0; k < N3; ++k) m(j, static_cast<Eigen::Index>(i) * N3 + k) = t(i, j, k);
            return m;
        }
        case 3: {
            MatX<S> m(N3, static_cast<Eigen::Index>(N2) * N1);
            for (int i = 0; i < N1; ++i)
                for (int j = 0; j < N2; ++j)
                    for (int k = 0; k < N3; ++k) m(k, static_cast<Eigen::Index>(j) * N1 + i) = t(i, j, k);
            return m;
        }
        default:
            throw std::invalid_argument("mode_unfold: mode must be 1, 2 or 3");
    }
}

// Inverse of mode_unfold for the given target dims.
template <class S>
Dense3Tensor<S> refold(const MatX<S>& m, int mode, int N1, int N2, int N3) {
    Dense3Tensor<S> t(N1, N2, N3);
    switch (mode) {
        case 1:
            if (m.rows() != N1 || m.cols() != static_cast<Eigen::Index>(N2) * N3)
                throw std::invalid_argument("refold: shape mismatch for mode 1");
            for (int i = 0; i < N1; ++i)
                for (int j = 0; j < N2; ++j)
                    for (int k = 0; k < N3; ++k) t(i, j, k) = m(i, static_cast<Eigen::Index>(k) * N2 + j);
            return t;
        case 2:
            if (m.rows() != N2 || m.cols() != static_cast<Eigen::Index>(N3) * N1)
                throw std::invalid_argument("refold: shape mismatch for mode 2");
            for (int i = 0; i < N1; ++i)
                for (int j = 0; j < N2; ++j)
                    for (int k = 0; k < N3; ++k) t(i, j, k) = m(j, static_cast<Eigen::Index>(i) * N3 + k);
            return t;
        case 3:
            if (m.rows() != N3 || m.cols() != static_cast<Eigen::Index>(N2) * N1)
                throw std::invalid_argument("refold: shape mismatch for mode 3");
            for (int i = 0; i < N1; ++i)
                for (int j = 0; j < N2; ++j)
                    for (int k = 0; k < N3; ++k) t(i, j, k) = m(k, static_cast<Eigen::Index>(j) * N1 + i);
            return t;
        default:
            throw std::invalid_argument("refold: mode must be 1, 2 or 3");
    }
}

// <T1, T2> = sum T1 .* conj(T2); conjugation acts on the second argument.
// (Eigen's dot conjugates its first argument, hence the swap.)
template <class S>
S inner(const Dense3Tensor<S>& t1, const Dense3Tensor<S>& t2) {
    t1.check_same_dims(t2);
    return t2.vec().dot(t1.vec());
}

template <class S>
double fro_norm(const Dense3Tensor<S>& t) {
    return t.vec().norm();
}

// Lifted rank-one tensor of the measurement model: conj(x) ∘ x ∘ h when
// conjugate_first is set (the complex analysis path), else x ∘ x ∘ h.
// Both coincide over the reals.
template <class S>
Dense3Tensor<S> lifted(const VecX<S>& x, const VecX<S>& h, bool conjugate_first) {
    if (conjugate_first)
        return outer3<S>(x.conjugate(), x, h);
    return outer3<S>(x, x, h);
}

}  // namespace bdpr
