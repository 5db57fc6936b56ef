#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flipgraphs/bigint.hpp"
#include "flipgraphs/graph.hpp"
#include "flipgraphs/parallel.hpp"
#include "flipgraphs/signed_perms.hpp"

namespace flipgraphs {

struct IntegerPartition {
    std::vector<int> parts;  // weakly decreasing positive integers

    int n() const {
        int s = 0;
        for (int p : parts) s += p;
        return s;
    }
    bool operator==(const IntegerPartition&) const = default;
};

// All partitions of n in descending lexicographic order.
inline std::vector<IntegerPartition> enumerate_partitions(int n) {
    if (n < 1) throw std::invalid_argument("enumerate_partitions: n must be >= 1");
    std::vector<IntegerPartition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            out.push_back(IntegerPartition{cur});
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

// beta_lambda = sum_j lambda_j (lambda_j - j), 1-based j.
inline long long beta_eigenvalue(const IntegerPartition& lambda) {
    long long b = 0;
    for (std::size_t j = 0; j < lambda.parts.size(); ++j)
        b += static_cast<long long>(lambda.parts[j]) *
             (lambda.parts[j] - static_cast<long long>(j) - 1);
    return b;
}

// Hook-length multiplicity: (2n)! / prod of hooks of the diagram mu = 2*lambda,
// h(i,j) = mu_i + mu'_j - i - j + 1. The division must come out exact.
inline BigInt eigenvalue_multiplicity(const IntegerPartition& lambda) {
    std::vector<int> mu;
    for (int p : lambda.parts) mu.push_back(2 * p);
    const int rows = static_cast<int>(mu.size());
    const int cols = mu.empty() ? 0 : mu[0];
    std::vector<int> mu_t(cols, 0);  // transposed diagram: column lengths
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            if (mu[i] > j) ++mu_t[j];
    BigInt hooks = 1;
    for (int i = 1; i <= rows; ++i)
        for (int j = 1; j <= mu[i - 1]; ++j) hooks *= mu[i - 1] + mu_t[j - 1] - i - j + 1;
    const BigInt numer = factorial(2 * lambda.n());
    if (numer % hooks != 0)
        throw std::logic_error("eigenvalue_multiplicity: hook product does not divide (2n)!");
    return numer / hooks;
}

struct SpectrumEntry {
    long long eigenvalue = 0;
    BigInt multiplicity;
    std::vector<IntegerPartition> sources;  // partitions producing this eigenvalue
};

// Full spectrum of M(K_{2n}); coinciding beta values are merged with their
// multiplicities summed. Sorted by eigenvalue, descending.
inline std::vector<SpectrumEntry> flip_spectrum(int n) {
    std::map<long long, SpectrumEntry, std::greater<>> merged;
    for (const auto& lambda : enumerate_partitions(n)) {
        const long long beta = beta_eigenvalue(lambda);
        auto& entry = merged[beta];
        entry.eigenvalue = beta;
        entry.multiplicity += eigenvalue_multiplicity(lambda);
        entry.sources.push_back(lambda);
    }
    std::vector<SpectrumEntry> out;
    out.reserve(merged.size());
    for (auto& [beta, entry] : merged) out.push_back(std::move(entry));
    return out;
}

struct SpectrumVerification {
    bool ok = false;
    std::string failure;           // "MomentMismatch" or "AnnihilationFailed"
    int first_failing_moment = -1; // for MomentMismatch
    long long witness_vertex = -1; // for AnnihilationFailed
};

// Exact integer check that the claimed spectrum is the spectrum of g:
// (a) trace(A^m) = sum mult * beta^m for m = 0..(#distinct-1), which pins the
//     multiplicities through a nonsingular Vandermonde system, and
// (b) prod over distinct beta of (A - beta I) = 0, which pins the eigenvalue
//     support. Both run column-by-column with big-integer mat-vec products.
inline SpectrumVerification verify_spectrum_exact(const Graph& g,
                                                  const std::vector<SpectrumEntry>& spec,
                                                  unsigned threads = 1) {
    const long long nv = g.num_vertices();
    const int terms = static_cast<int>(spec.size());
    SpectrumVerification res;

    BigInt mult_sum = 0;
    for (const auto& e : spec) mult_sum += e.multiplicity;
    if (mult_sum != nv) {
        res.failure = "MomentMismatch";
        res.first_failing_moment = 0;
        return res;
    }

    // expected moments: sum mult * beta^m
    std::vector<BigInt> expected(terms);
    for (const auto& e : spec) {
        BigInt pw = 1;
        for (int m = 0; m < terms; ++m) {
            expected[m] += e.multiplicity * pw;
            pw *= e.eigenvalue;
        }
    }

    auto matvec = [&](const std::vector<BigInt>& x, std::vector<BigInt>& y) {
        for (long long v = 0; v < nv; ++v) {
            BigInt acc = 0;
            for (int w : g.neighbors(static_cast<int>(v))) acc += x[w];
            y[v] = std::move(acc);
        }
    };

    const unsigned workers = std::max(1u, threads);
    std::vector<std::vector<BigInt>> moment_parts(workers, std::vector<BigInt>(terms, 0));
    std::vector<long long> annihilation_witness(workers, -1);

    parallel_chunks(nv, workers, [&](long long begin, long long end, unsigned slot) {
        std::vector<BigInt> x(nv), y(nv);
        for (long long s = begin; s < end; ++s) {
            // moments: diagonal entries of A^m
            std::fill(x.begin(), x.end(), 0);
            x[s] = 1;
            moment_parts[slot][0] += 1;
            for (int m = 1; m < terms; ++m) {
                matvec(x, y);
                std::swap(x, y);
                moment_parts[slot][m] += x[s];
            }
            // annihilation: column s of prod (A - beta I)
            std::fill(x.begin(), x.end(), 0);
            x[s] = 1;
            for (const auto& e : spec) {
                matvec(x, y);
                for (long long v = 0; v < nv; ++v) y[v] -= e.eigenvalue * x[v];
                std::swap(x, y);
            }
            for (long long v = 0; v < nv; ++v) {
                if (x[v] != 0) {
                    if (annihilation_witness[slot] < 0) annihilation_witness[slot] = s;
                    break;
                }
            }
        }
    });

    std::vector<BigInt> moments(terms, 0);
    for (const auto& part : moment_parts)
        for (int m = 0; m < terms; ++m) moments[m] += part[m];
    for (int m = 0; m < terms; ++m) {
        if (moments[m] != expected[m]) {
            res.failure = "MomentMismatch";
            res.first_failing_moment = m;
            return res;
        }
    }
    long long witness = -1;
    for (long long w : annihilation_witness)
        if (w >= 0 && (witness < 0 || w < witness)) witness = w;
    if (witness >= 0) {
        res.failure = "AnnihilationFailed";
        res.witness_vertex = witness;
        return res;
    }
    res.ok = true;
    return res;
}

// X[i][j] = min(i, j, n-i+1, n-j+1) (1-based); D makes every row of D+X sum
// to x; the closed-form eigenvalues are mu_k = x - floor(k/2) n + 2 C(floor(k/2), 2).
struct ChungTobinSystem {
    int n = 0;
    long long x = 0;
    std::vector<std::vector<long long>> X;
    std::vector<long long> D;  // diagonal
    std::vector<long long> formula_eigenvalues;
};

inline ChungTobinSystem chung_tobin_system(int n, long long x) {
    if (n < 1) throw std::invalid_argument("chung_tobin_system: n must be >= 1");
    ChungTobinSystem sys;
    sys.n = n;
    sys.x = x;
    sys.X.assign(n, std::vector<long long>(n));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            sys.X[i - 1][j - 1] = std::min(std::min<long long>(i, j),
                                           std::min<long long>(n - i + 1, n - j + 1));
    sys.D.resize(n);
    for (int i = 0; i < n; ++i) {
        long long row = 0;
        for (int j = 0; j < n; ++j) row += sys.X[i][j];
        sys.D[i] = x - row;
    }
    for (int k = 1; k <= n; ++k) {
        const long long h = k / 2;
        sys.formula_eigenvalues.push_back(x - h * n + 2 * binomial2(h));
    }
    return sys;
}

// Equitable partition of SR_n into U_j(+) = {sigma : sigma_j = +n} and
// U_j(-), ordered U_1(+)..U_n(+), U_1(-)..U_n(-); quotient [[D',X],[X,D']]
// with D' + X rows summing to C(n+1,2).
struct SrBlockQuotient {
    int n = 0;
    std::vector<std::vector<long long>> matrix;  // 2n x 2n
    CellPartition partition;
};

inline SrBlockQuotient sr_block_quotient(int n) {
    if (n < 1) throw std::invalid_argument("sr_block_quotient: n must be >= 1");
    SrBlockQuotient res;
    res.n = n;
    const ChungTobinSystem ct = chung_tobin_system(n, binomial2(n + 1));
    res.matrix.assign(2 * n, std::vector<long long>(2 * n, 0));
    for (int i = 0; i < n; ++i) {
        res.matrix[i][i] = ct.D[i];
        res.matrix[n + i][n + i] = ct.D[i];
        for (int j = 0; j < n; ++j) {
            res.matrix[i][n + j] = ct.X[i][j];
            res.matrix[n + i][j] = ct.X[i][j];
        }
    }
    const long long nv = sr_vertex_count(n);
    std::vector<int> cell_of(nv);
    for (long long v = 0; v < nv; ++v) {
        const SignedPermutation s = sr_vertex(n, v);
        for (int j = 0; j < n; ++j) {
            if (s.entries[j] == n) {
                cell_of[v] = j;
                break;
            }
            if (s.entries[j] == -n) {
                cell_of[v] = n + j;
                break;
            }
        }
    }
    res.partition = CellPartition::from_cell_of(cell_of, 2 * n);
    return res;
}

// Dense symmetric eigenvalues, descending. Input must be symmetric to 1e-12.
inline std::vector<double> symmetric_eigenvalues(const std::vector<std::vector<long long>>& m) {
    const int n = static_cast<int>(m.size());
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(m[i].size()) != n)
            throw std::invalid_argument("symmetric_eigenvalues: matrix not square");
        for (int j = 0; j < n; ++j) a(i, j) = static_cast<double>(m[i][j]);
    }
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("symmetric_eigenvalues: matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(ev.rbegin(), ev.rend());
    return ev;
}

inline std::vector<std::vector<long long>> adjacency_matrix(const Graph& g) {
    std::vector<std::vector<long long>> a(g.num_vertices(),
                                          std::vector<long long>(g.num_vertices(), 0));
    for (int v = 0; v < g.num_vertices(); ++v)
        for (int w : g.neighbors(v)) a[v][w] = 1;
    return a;
}

struct HoffmanBounds {
    long long chromatic_lower = 0;   // ceil(1 + d/|theta_min|)
    BigInt independence_upper = 0;   // floor(N |theta_min| / (d + |theta_min|))
};

inline HoffmanBounds hoffman_bounds(long long degree, long long min_eig,
                                    const BigInt& num_vertices) {
    if (min_eig >= 0) throw std::invalid_argument("hoffman_bounds: need min_eig < 0");
    HoffmanBounds hb;
    const long long t = -min_eig;
    hb.chromatic_lower = (degree + t + t - 1) / t;  // ceil((d + t)/t)
    hb.independence_upper = num_vertices * t / (degree + t);
    return hb;
}

}  // namespace flipgraphs
