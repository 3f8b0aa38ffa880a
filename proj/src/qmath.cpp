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

#include "cascade/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cascade::qmath {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = std::conj(data_[k]);
    return out;
}

cdouble ComplexMatrix::trace() const {
    cdouble t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double acc = 0.0;
    for (const cdouble& v : data_) acc += std::norm(v);
    return std::sqrt(acc);
}

double ComplexMatrix::max_abs() const {
    double acc = 0.0;
    for (const cdouble& v : data_) acc = std::max(acc, std::abs(v));
    return acc;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
    if (!square()) return false;
    const ComplexMatrix prod = adjoint() * (*this);
    return max_abs_diff(prod, identity(rows_)) <= tol;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require(rows_ == other.rows_ && cols_ == other.cols_, "matrix addition: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require(rows_ == other.rows_ && cols_ == other.cols_, "matrix subtraction: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cdouble scale) {
    for (cdouble& v : data_) v *= scale;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.cols() == b.rows(), "matrix product: inner dimension mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    const std::size_t n = a.cols(), w = b.cols();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const cdouble* arow = a.row(i);
        cdouble* crow = c.row(i);
        for (std::size_t k = 0; k < n; ++k) {
            const cdouble aik = arow[k];
            if (aik.real() == 0.0 && aik.imag() == 0.0) continue;  // embedded ops are sparse
            const cdouble* brow = b.row(k);
            for (std::size_t j = 0; j < w; ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

ComplexMatrix operator*(cdouble scale, ComplexMatrix a) { return a *= scale; }
ComplexMatrix operator*(ComplexMatrix a, cdouble scale) { return a *= scale; }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "max_abs_diff: shape mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            acc = std::max(acc, std::abs(a(i, j) - b(i, j)));
    return acc;
}

ComplexMatrix hermitize(const ComplexMatrix& x) {
    require(x.square(), "hermitize: matrix must be square");
    ComplexMatrix out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            out(i, j) = 0.5 * (x(i, j) + std::conj(x(j, i)));
    return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b - b * a;
}

std::size_t SpaceLayout::total_dim() const {
    std::size_t d = 1;
    for (std::size_t f : factor_dims) d *= f;
    return d;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cdouble aij = a(i, j);
            if (aij.real() == 0.0 && aij.imag() == 0.0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k) {
                cdouble* crow = c.row(i * b.rows() + k) + j * b.cols();
                const cdouble* brow = b.row(k);
                for (std::size_t l = 0; l < b.cols(); ++l) crow[l] += aij * brow[l];
            }
        }
    return c;
}

ComplexMatrix partial_trace(const ComplexMatrix& x, const SpaceLayout& layout,
                            const std::vector<std::size_t>& keep) {
    require(x.square(), "partial_trace: matrix must be square");
    require(x.rows() == layout.total_dim(), "partial_trace: layout does not match matrix dimension");
    require(!keep.empty(), "partial_trace: keep set must be non-empty");
    const std::size_t nfac = layout.factor_dims.size();
    for (std::size_t i = 0; i < keep.size(); ++i) {
        require(keep[i] < nfac, "partial_trace: keep index out of range");
        require(i == 0 || keep[i] > keep[i - 1], "partial_trace: keep indices must be strictly increasing");
    }

    std::vector<std::size_t> stride(nfac, 1);
    for (std::size_t k = nfac; k-- > 1;) stride[k - 1] = stride[k] * layout.factor_dims[k];

    std::vector<std::size_t> traced;
    for (std::size_t k = 0; k < nfac; ++k)
        if (std::find(keep.begin(), keep.end(), k) == keep.end()) traced.push_back(k);

    auto offsets = [&](const std::vector<std::size_t>& factors) {
        std::size_t count = 1;
        for (std::size_t f : factors) count *= layout.factor_dims[f];
        std::vector<std::size_t> out(count, 0);
        for (std::size_t idx = 0; idx < count; ++idx) {
            std::size_t rem = idx, off = 0;
            for (std::size_t k = factors.size(); k-- > 0;) {
                const std::size_t d = layout.factor_dims[factors[k]];
                off += (rem % d) * stride[factors[k]];
                rem /= d;
            }
            out[idx] = off;
        }
        return out;
    };

    const std::vector<std::size_t> kept_off = offsets(keep);
    const std::vector<std::size_t> traced_off = offsets(traced);

    ComplexMatrix out(kept_off.size(), kept_off.size());
    for (std::size_t r = 0; r < kept_off.size(); ++r)
        for (std::size_t c = 0; c < kept_off.size(); ++c) {
            cdouble acc = 0.0;
            for (std::size_t t : traced_off) acc += x(kept_off[r] + t, kept_off[c] + t);
            out(r, c) = acc;
        }
    return out;
}

ComplexMatrix embed(const ComplexMatrix& op, const SpaceLayout& layout, std::size_t factor) {
    require(factor < layout.factor_dims.size(), "embed: factor index out of range");
    require(op.square() && op.rows() == layout.factor_dims[factor],
            "embed: operator does not match the factor dimension");
    std::size_t pre = 1, post = 1;
    for (std::size_t k = 0; k < factor; ++k) pre *= layout.factor_dims[k];
    for (std::size_t k = factor + 1; k < layout.factor_dims.size(); ++k) post *= layout.factor_dims[k];
    return kron(kron(ComplexMatrix::identity(pre), op), ComplexMatrix::identity(post));
}

Eigensystem eig_hermitian(const ComplexMatrix& h) {
    require(h.square(), "eig_hermitian: matrix must be square");
    require(h.is_hermitian(1e-10), "eig_hermitian: input is not Hermitian");
    const std::size_t n = h.rows();

    ComplexMatrix a = hermitize(h);
    ComplexMatrix v = ComplexMatrix::identity(n);

    auto off_norm = [&]() {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) acc += std::norm(a(i, j));
        return std::sqrt(acc);
    };

    const double tol = std::max(1e-13, 1e-15 * a.frobenius_norm());
    const int max_sweeps = 100;
    int sweep = 0;
    while (n > 1 && off_norm() > tol) {
        if (++sweep > max_sweeps)
            throw std::runtime_error("eig_hermitian: Jacobi sweeps failed to converge");
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const cdouble apq = a(p, q);
                const double r = std::abs(apq);
                if (r < 1e-300) continue;
                const cdouble phase = apq / r;  // a(p,q) = r * phase
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                double c, s;
                if (app == aqq) {
                    c = std::sqrt(0.5);
                    s = std::sqrt(0.5);
                } else {
                    const double tau = (app - aqq) / (2.0 * r);
                    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                    c = 1.0 / std::sqrt(1.0 + t * t);
                    s = t * c;
                }
                const cdouble s_fwd = s * phase;              // rotation J = [[c, -s_fwd], [conj(s_fwd)... ]]
                // columns: col_p' = c*col_p + conj(s_fwd)*col_q ; col_q' = -s_fwd*col_p + c*col_q
                for (std::size_t k = 0; k < n; ++k) {
                    const cdouble akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp + std::conj(s_fwd) * akq;
                    a(k, q) = -s_fwd * akp + c * akq;
                    const cdouble vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp + std::conj(s_fwd) * vkq;
                    v(k, q) = -s_fwd * vkp + c * vkq;
                }
                // rows: row_p' = c*row_p + s_fwd*row_q ; row_q' = -conj(s_fwd)*row_p + c*row_q
                for (std::size_t k = 0; k < n; ++k) {
                    const cdouble apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + s_fwd * aqk;
                    a(q, k) = -std::conj(s_fwd) * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    Eigensystem out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

ComplexMatrix expm_unitary(const ComplexMatrix& h, double theta) {
    require(h.is_hermitian(1e-10), "expm_unitary: input is not Hermitian");
    const Eigensystem eig = eig_hermitian(h);
    const std::size_t n = h.rows();
    // V * diag(exp(-i*theta*lambda)) * V^dagger
    ComplexMatrix scaled(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const cdouble phase = std::exp(cdouble(0.0, -theta * eig.values[k]));
        for (std::size_t i = 0; i < n; ++i) scaled(i, k) = eig.vectors(i, k) * phase;
    }
    return scaled * eig.vectors.adjoint();
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "trace_distance: dimension mismatch");
    const Eigensystem eig = eig_hermitian(hermitize(a - b));
    double acc = 0.0;
    for (double v : eig.values) acc += std::abs(v);
    return 0.5 * acc;
}

double min_eigenvalue(const ComplexMatrix& h) {
    return eig_hermitian(h).values.front();
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m(0, 1) = cdouble(0.0, -1.0);
    m(1, 0) = cdouble(0.0, 1.0);
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

ComplexMatrix basis_projector(std::size_t dim, std::size_t k) {
    require(k < dim, "basis_projector: index out of range");
    ComplexMatrix m(dim, dim);
    m(k, k) = 1.0;
    return m;
}

ComplexMatrix annihilation_op(std::size_t dim) {
    ComplexMatrix m(dim, dim);
    for (std::size_t k = 1; k < dim; ++k) m(k - 1, k) = std::sqrt(static_cast<double>(k));
    return m;
}

}  // namespace cascade::qmath
