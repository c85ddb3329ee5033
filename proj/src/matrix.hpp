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

#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace dfsnet {

using Complex = std::complex<double>;

// Dense square complex matrix. Sized for gate construction and the
// full-matrix cross-check oracle (dimension <= 256), not for bulk math.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}

    static Matrix identity(int n);
    static Matrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    int size() const { return n_; }
    Complex& at(int r, int c) { return a_[static_cast<std::size_t>(r) * n_ + c]; }
    const Complex& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * n_ + c]; }

    Matrix operator*(const Matrix& rhs) const;
    std::vector<Complex> apply(const std::vector<Complex>& v) const;
    Matrix adjoint() const;
    double max_abs_diff(const Matrix& rhs) const;
    bool is_unitary(double tol) const;

private:
    int n_ = 0;
    std::vector<Complex> a_;
};

namespace gates {

Matrix identity2();
Matrix pauli_x();
Matrix pauli_z();
Matrix hadamard();
// Two-qubit controlled-NOT with the control on bit 1 and the target on
// bit 0 of the small-matrix index.
Matrix cnot();
Matrix swap2();

}  // namespace gates

}  // namespace dfsnet
