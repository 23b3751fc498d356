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

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace bdris {

using Complex = std::complex<double>;
using ComplexVec = Eigen::VectorXcd;
using ComplexMat = Eigen::MatrixXcd;
using RealVec = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Singular values at or below `kDefaultRankRtol * sigma_max` count as zero.
inline constexpr double kDefaultRankRtol = 1e-10;

/// Absolute floor used wherever a relative tolerance meets an exact zero.
inline constexpr double kTinyScale = 1e-300;

struct LsSolution {
    RealVec x;
    double residual_norm = 0.0;
    int numerical_rank = 0;
};

/**
 * Minimum-norm least-squares solution of `a * x ~= b` via a thin SVD.
 *
 * Singular values sigma <= rank_rtol * sigma_max are dropped, so rank-deficient
 * systems return the minimizer of smallest Euclidean norm. `residual_norm` is
 * recomputed from the returned x, not taken from the factorization.
 *
 * Throws InputError on dimension mismatch, non-finite input or rank_rtol outside
 * (0, 1); NumericalError if the SVD fails to converge.
 */
LsSolution min_norm_least_squares(const RealMatrix& a, const RealVec& b,
                                  double rank_rtol = kDefaultRankRtol);

struct SymmetricUnitaryCheck {
    double symmetry_defect = 0.0;  // max |M - M^T|
    double unitarity_defect = 0.0; // max |M^H M - I|
    bool passed = false;
};

/// Max-norm defects of `m` against symmetry and unitarity; `passed` when both <= tol.
SymmetricUnitaryCheck check_symmetric_unitary(const ComplexMat& m, double tol);

/// Same check with separate symmetry and unitarity tolerances.
SymmetricUnitaryCheck check_symmetric_unitary(const ComplexMat& m, double symmetry_tol,
                                              double unitarity_tol);

bool all_finite(const ComplexVec& v);
bool all_finite(const RealMatrix& m);

} // namespace bdris
