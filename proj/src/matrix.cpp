// Copyright 2026 The dfsnet Authors
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

#include "matrix.hpp"

#include <cmath>
#include <numbers>

#include "error.hpp"

namespace dfsnet {

Matrix Matrix::identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const int n = static_cast<int>(rows.size());
    Matrix m(n);
    int r = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n) {
            throw_invalid("matrix rows must form a square matrix");
        }
        int c = 0;
        for (const auto& v : row) m.at(r, c++) = v;
        ++r;
    }
    return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (n_ != rhs.n_) throw_invalid("matrix size mismatch in product");
    Matrix out(n_);
    for (int r = 0; r < n_; ++r) {
        for (int k = 0; k < n_; ++k) {
            const Complex v = at(r, k);
            if (v == Complex{}) continue;
            for (int c = 0; c < n_; ++c) {
                out.at(r, c) += v * rhs.at(k, c);
            }
        }
    }
    return out;
}

std::vector<Complex> Matrix::apply(const std::vector<Complex>& v) const {
    if (static_cast<int>(v.size()) != n_) {
        throw_invalid("matrix/vector size mismatch");
    }
    std::vector<Complex> out(v.size());
    for (int r = 0; r < n_; ++r) {
        Complex acc{};
        for (int c = 0; c < n_; ++c) acc += at(r, c) * v[c];
        out[static_cast<std::size_t>(r)] = acc;
    }
    return out;
}

Matrix Matrix::adjoint() const {
    Matrix out(n_);
    for (int r = 0; r < n_; ++r) {
        for (int c = 0; c < n_; ++c) out.at(c, r) = std::conj(at(r, c));
    }
    return out;
}

double Matrix::max_abs_diff(const Matrix& rhs) const {
    if (n_ != rhs.n_) throw_invalid("matrix size mismatch in comparison");
    double worst = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i) {
        worst = std::max(worst, std::abs(a_[i] - rhs.a_[i]));
    }
    return worst;
}

bool Matrix::is_unitary(double tol) const {
    return (adjoint() * *this).max_abs_diff(identity(n_)) <= tol;
}

namespace gates {

Matrix identity2() { return Matrix::identity(2); }

Matrix pauli_x() {
    return Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
}

Matrix pauli_z() {
    return Matrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
}

Matrix hadamard() {
    const double s = 1.0 / std::numbers::sqrt2;
    return Matrix::from_rows({{s, s}, {s, -s}});
}

Matrix cnot() {
    return Matrix::from_rows({{1, 0, 0, 0},
                              {0, 1, 0, 0},
                              {0, 0, 0, 1},
                              {0, 0, 1, 0}});
}

Matrix swap2() {
    return Matrix::from_rows({{1, 0, 0, 0},
                              {0, 0, 1, 0},
                              {0, 1, 0, 0},
                              {0, 0, 0, 1}});
}

}  // namespace gates

}  // namespace dfsnet
