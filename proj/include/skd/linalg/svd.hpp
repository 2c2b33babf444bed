#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "skd/linalg/matrix.hpp"

namespace skd {

// W = U * diag(sigma) * V^T with p = min(m, n) columns in U and V.
template <class T>
struct SvdResult {
    BasicMatrix<T> u;          // m x p
    std::vector<T> sigma;      // p, descending
    BasicMatrix<T> v;          // n x p
};

// Rank-r stand-in for an m x n matrix: W ~= A * B.
template <class T>
struct FactoredLinear {
    BasicMatrix<T> a;  // m x r
    BasicMatrix<T> b;  // r x n

    std::size_t rows() const noexcept { return a.rows(); }
    std::size_t cols() const noexcept { return b.cols(); }
    std::size_t rank() const noexcept { return a.cols(); }
    std::size_t param_count() const noexcept { return rank() * (rows() + cols()); }

    friend bool operator==(const FactoredLinear&, const FactoredLinear&) = default;
};

struct SpectrumDiagnostic {
    std::vector<double> sigma;
    std::vector<double> ratios;  // sigma_i / sigma_1
    std::vector<double> energy;  // cumulative squared-sigma fraction
};

inline constexpr int kMaxJacobiSweeps = 60;

// One-sided Jacobi SVD. Rotations run in double regardless of T.
// Throws InvalidMatrix on non-finite or empty input, NumericalFailure if the
// sweep limit is reached without convergence.
template <class T>
SvdResult<T> svd(const BasicMatrix<T>& w);

// Smallest r whose leading squared singular values hold at least `tau` of the
// total energy.
template <class T>
std::size_t rank_for_energy(std::span<const T> sigma, double tau);

template <class T>
FactoredLinear<T> truncate(const SvdResult<T>& s, std::size_t r);

template <class T>
BasicMatrix<T> materialize(const FactoredLinear<T>& f);

template <class T>
SpectrumDiagnostic spectrum_report(const BasicMatrix<T>& w);

}  // namespace skd
