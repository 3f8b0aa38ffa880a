// Copyright 2026 The Cascade Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace cascade::qmath {

using cdouble = std::complex<double>;

// Dense row-major complex matrix. Everything in this project lives on
// tensor products of a handful of small subsystems, so the storage is a
// flat std::vector and the kernels are plain loops.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }
    bool square() const { return rows_ == cols_; }

    cdouble& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cdouble& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    cdouble* row(std::size_t i) { return data_.data() + i * cols_; }
    const cdouble* row(std::size_t i) const { return data_.data() + i * cols_; }

    const std::vector<cdouble>& data() const { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;

    cdouble trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    bool is_hermitian(double tol) const;
    bool is_unitary(double tol) const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cdouble scale);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cdouble scale, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cdouble scale);

// max |a - b| over entries; matrices must have equal shape
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// (x + x†)/2
ComplexMatrix hermitize(const ComplexMatrix& x);

// [a, b] = ab - ba
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

// Ordered list of subsystem dimensions with labels. Fixes the global tensor
// convention: leftmost factor varies slowest, carriers left-to-right with an
// attached sub-environment always rightmost.
struct SpaceLayout {
    std::vector<std::size_t> factor_dims;
    std::vector<std::string> labels;

    std::size_t total_dim() const;
};

// Kronecker product; the left factor varies slowest.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Reduced matrix on the kept factors (original relative order). `keep` holds
// 0-based factor indices, must be non-empty and strictly increasing.
ComplexMatrix partial_trace(const ComplexMatrix& x, const SpaceLayout& layout,
                            const std::vector<std::size_t>& keep);

// I ⊗ ... ⊗ op ⊗ ... ⊗ I with op at position `factor` of the layout.
ComplexMatrix embed(const ComplexMatrix& op, const SpaceLayout& layout, std::size_t factor);

// exp(-i * theta * h) for Hermitian h, via the spectral decomposition.
// Exact up to eigensolver accuracy; throws on non-Hermitian input.
ComplexMatrix expm_unitary(const ComplexMatrix& h, double theta);

struct Eigensystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // orthonormal columns, vectors.col(k) <-> values[k]
};

// Cyclic Jacobi for Hermitian matrices. Converges when the off-diagonal
// Frobenius norm drops below 1e-13 (relative floor for large-norm inputs).
Eigensystem eig_hermitian(const ComplexMatrix& h);

// (1/2) * sum |eigenvalues of (a - b)|
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

double min_eigenvalue(const ComplexMatrix& h);

// Common operator builders (basis convention: |e> = e_0, |g> = e_1 for
// qubits, so sigma_z |e> = +|e> and the lowering operator is |g><e|).
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix basis_projector(std::size_t dim, std::size_t k);
ComplexMatrix annihilation_op(std::size_t dim);

}  // namespace cascade::qmath
