// SPDX-License-Identifier: Apache-2.0
//
// iacsi: interference alignment performance analysis under quantized CSI
// Copyright (C) 2026 The iacsi authors
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

#ifndef IACSI_IA_SOLVER_HPP
#define IACSI_IA_SOLVER_HPP

#include "channel.hpp"
#include "error.hpp"
#include "rng.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace iacsi
{

struct IASolution
{
    std::vector<cmat> W; // per pair, Nt x d_k, orthonormal columns w_{k,l}
    std::vector<cmat> V; // per pair, Nr x d_k, orthonormal columns v_{k,j}
    double leakage = 0.0;          // sum over k != i of ||V_k^H H_ki W_i||_F^2
    double relative_leakage = 0.0; // leakage / sum_k ||V_k^H H_kk W_k||_F^2
    int iterations = 0;
    bool converged = false;
    std::vector<double> history; // leakage after each iteration
};

struct SolverOptions
{
    int max_iter = 500;
    double tol = 1.0e-10;
};

namespace ia_detail
{

// Eigenvectors of the d smallest eigenvalues of a Hermitian matrix.
inline cmat min_eigvecs(const cmat &Q, int d)
{
    Eigen::SelfAdjointEigenSolver<cmat> es(Q);
    return es.eigenvectors().leftCols(d);
}

inline cmat random_orthonormal(Eigen::Index rows, int cols, Rng &rng)
{
    const cmat G = complex_gaussian(rng, rows, cols);
    Eigen::HouseholderQR<cmat> qr(G);
    return qr.householderQ() * cmat::Identity(rows, cols);
}

} // namespace ia_detail

// Interference leakage of (W, V) on the given channels.
inline double ia_leakage(const std::vector<cmat> &H, int K, const std::vector<cmat> &W, const std::vector<cmat> &V)
{
    double leak = 0.0;
    for (int k = 0; k < K; ++k)
        for (int i = 0; i < K; ++i)
            if (i != k)
                leak += (V[k].adjoint() * H[static_cast<std::size_t>(k * K + i)] * W[i]).squaredNorm();
    return leak;
}

inline double ia_signal_power(const std::vector<cmat> &H, int K, const std::vector<cmat> &W, const std::vector<cmat> &V)
{
    double s = 0.0;
    for (int k = 0; k < K; ++k)
        s += (V[k].adjoint() * H[static_cast<std::size_t>(k * K + k)] * W[k]).squaredNorm();
    return s;
}

/// Alternating leakage minimization. Each receiver takes the least-interfered
/// d_k-dimensional subspace given the precoders; each transmitter then does the
/// same on the reciprocal network. A final per-pair SVD rotation makes
/// V_k^H H_kk W_k diagonal, which removes inter-stream interference.
inline IASolution ia_solve(const std::vector<cmat> &H, int K, const std::vector<int> &d, std::vector<cmat> W0,
                           const SolverOptions &opt = {})
{
    if (H.size() != static_cast<std::size_t>(K * K) || d.size() != static_cast<std::size_t>(K) ||
        W0.size() != static_cast<std::size_t>(K))
        throw ConfigError("ia_solve: inconsistent dimensions");
    const Eigen::Index nr = H[0].rows();
    const Eigen::Index nt = H[0].cols();
    auto Hat = [&](int k, int i) -> const cmat & { return H[static_cast<std::size_t>(k * K + i)]; };

    IASolution sol;
    sol.W = std::move(W0);
    sol.V.assign(static_cast<std::size_t>(K), cmat());

    auto update_receivers = [&]() {
        for (int k = 0; k < K; ++k)
        {
            cmat Q = cmat::Zero(nr, nr);
            for (int i = 0; i < K; ++i)
                if (i != k)
                {
                    const cmat A = Hat(k, i) * sol.W[i];
                    Q.noalias() += A * A.adjoint();
                }
            sol.V[k] = ia_detail::min_eigvecs(Q, d[k]);
        }
    };
    auto update_transmitters = [&]() {
        for (int i = 0; i < K; ++i)
        {
            cmat Q = cmat::Zero(nt, nt);
            for (int k = 0; k < K; ++k)
                if (k != i)
                {
                    const cmat A = Hat(k, i).adjoint() * sol.V[k];
                    Q.noalias() += A * A.adjoint();
                }
            sol.W[i] = ia_detail::min_eigvecs(Q, d[i]);
        }
    };

    update_receivers();
    for (int it = 1; it <= opt.max_iter; ++it)
    {
        update_transmitters();
        update_receivers();
        sol.iterations = it;
        sol.leakage = ia_leakage(H, K, sol.W, sol.V);
        sol.history.push_back(sol.leakage);
        const double signal = ia_signal_power(H, K, sol.W, sol.V);
        sol.relative_leakage = signal > 0.0 ? sol.leakage / signal : sol.leakage;
        if (sol.relative_leakage <= opt.tol)
        {
            sol.converged = true;
            break;
        }
    }

    for (int k = 0; k < K; ++k)
    {
        if (d[k] < 2)
            continue;
        Eigen::JacobiSVD<cmat> svd(sol.V[k].adjoint() * Hat(k, k) * sol.W[k], Eigen::ComputeFullU | Eigen::ComputeFullV);
        sol.V[k] = sol.V[k] * svd.matrixU();
        sol.W[k] = sol.W[k] * svd.matrixV();
    }
    return sol;
}

// As above with random orthonormal initial precoders drawn from rng.
inline IASolution ia_solve(const std::vector<cmat> &H, int K, const std::vector<int> &d, Rng &rng,
                           const SolverOptions &opt = {})
{
    if (H.empty())
        throw ConfigError("ia_solve: no channels");
    std::vector<cmat> W0;
    for (int i = 0; i < K; ++i)
        W0.push_back(ia_detail::random_orthonormal(H[0].cols(), d[static_cast<std::size_t>(i)], rng));
    return ia_solve(H, K, d, std::move(W0), opt);
}

} // namespace iacsi

#endif
