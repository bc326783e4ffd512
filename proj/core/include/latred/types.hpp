#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace latred {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using BigInt = boost::multiprecision::cpp_int;

struct InvalidInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotUnitaryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IterationCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Element of Z + jZ with arbitrary-precision components.
struct GaussianInt {
    BigInt re{0};
    BigInt im{0};

    GaussianInt() = default;
    GaussianInt(long long r, long long i = 0) : re(r), im(i) {}
    GaussianInt(BigInt r, BigInt i) : re(std::move(r)), im(std::move(i)) {}

    friend GaussianInt operator+(const GaussianInt& a, const GaussianInt& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianInt operator-(const GaussianInt& a, const GaussianInt& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    GaussianInt operator-() const { return {-re, -im}; }
    GaussianInt& operator+=(const GaussianInt& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianInt& operator-=(const GaussianInt& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }

    GaussianInt conj() const { return {re, -im}; }
    BigInt norm_sq() const { return re * re + im * im; }
    bool is_zero() const { return re == 0 && im == 0; }
    // Units of Z + jZ are exactly {1, -1, j, -j}.
    bool is_unit() const { return norm_sq() == 1; }

    Complex to_complex() const {
        return {re.convert_to<double>(), im.convert_to<double>()};
    }

    bool operator==(const GaussianInt&) const = default;
};

// Exact quotient a/b in Z + jZ; the division must be exact (used by the
// fraction-free elimination, where it is by construction).
GaussianInt gaussian_div_exact(const GaussianInt& a, const GaussianInt& b);

// Dense square matrix over the Gaussian integers.
class GaussianIntMatrix {
  public:
    GaussianIntMatrix() = default;
    explicit GaussianIntMatrix(int n)
        : n_(n), e_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {}

    static GaussianIntMatrix identity(int n) {
        GaussianIntMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = GaussianInt(1);
        return m;
    }

    int n() const { return n_; }

    GaussianInt& operator()(int r, int c) {
        return e_[static_cast<std::size_t>(r) * n_ + c];
    }
    const GaussianInt& operator()(int r, int c) const {
        return e_[static_cast<std::size_t>(r) * n_ + c];
    }

    GaussianIntMatrix operator*(const GaussianIntMatrix& o) const;

    ComplexMatrix to_complex() const;

    bool operator==(const GaussianIntMatrix&) const = default;

  private:
    int n_ = 0;
    std::vector<GaussianInt> e_;
};

}  // namespace latred
