// SPDX-License-Identifier: Apache-2.0
//
// bdris: beyond-diagonal RIS configuration and channel analysis library
// Copyright (C) 2026 The bdris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "bdris/numeric.hpp"

#include "bdris/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bdris {

bool all_finite(const ComplexVec& v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) {
            return false;
        }
    }
    return true;
}

bool all_finite(const RealMatrix& m)
{
    return m.allFinite();
}

LsSolution min_norm_least_squares(const RealMatrix& a, const RealVec& b, double rank_rtol)
{
    if (a.rows() != b.size()) {
        throw InputError("min_norm_least_squares: A has " + std::to_string(a.rows())
                         + " rows but b has " + std::to_string(b.size()) + " entries");
    }
    if (a.rows() == 0 || a.cols() == 0) {
        throw InputError("min_norm_least_squares: empty system");
    }
    if (!(rank_rtol > 0.0 && rank_rtol < 1.0)) {
        throw InputError("min_norm_least_squares: rank_rtol must lie in (0, 1)");
    }
    if (!a.allFinite() || !b.allFinite()) {
        throw InputError("min_norm_least_squares: non-finite entries");
    }

    // One-sided Jacobi: BDCSVD in Eigen 3.4.0 loses accuracy on the rank-deficient stacked systems.
    Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) {
        throw NumericalError("min_norm_least_squares: SVD did not converge");
    }

    const RealVec& sigma = svd.singularValues(); // sorted, nonincreasing
    const double sigma_max = sigma.size() > 0 ? sigma[0] : 0.0;
    const double cutoff = std::max(rank_rtol * sigma_max, kTinyScale);

    int rank = 0;
    while (rank < sigma.size() && sigma[rank] > cutoff) {
        ++rank;
    }

    LsSolution out;
    out.numerical_rank = rank;
    if (rank == 0) {
        out.x = RealVec::Zero(a.cols());
    } else {
        RealVec coeffs = svd.matrixU().leftCols(rank).transpose() * b;
        coeffs.array() /= sigma.head(rank).array();
        out.x = svd.matrixV().leftCols(rank) * coeffs;
    }
    if (!out.x.allFinite()) {
        throw NumericalError("min_norm_least_squares: non-finite solution");
    }
    out.residual_norm = (a * out.x - b).norm();
    return out;
}

SymmetricUnitaryCheck check_symmetric_unitary(const ComplexMat& m, double tol)
{
    return check_symmetric_unitary(m, tol, tol);
}

SymmetricUnitaryCheck check_symmetric_unitary(const ComplexMat& m, double symmetry_tol,
                                              double unitarity_tol)
{
    if (m.rows() != m.cols()) {
        throw InputError("check_symmetric_unitary: matrix is " + std::to_string(m.rows()) + "x"
                         + std::to_string(m.cols()) + ", expected square");
    }
    SymmetricUnitaryCheck out;
    if (m.size() == 0) {
        out.passed = true;
        return out;
    }
    out.symmetry_defect = (m - m.transpose()).cwiseAbs().maxCoeff();
    const ComplexMat gram = m.adjoint() * m;
    out.unitarity_defect = (gram - ComplexMat::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
    out.passed = out.symmetry_defect <= symmetry_tol && out.unitarity_defect <= unitarity_tol;
    return out;
}

} // namespace bdris
