#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "pathsum/matrix.hpp"
#include "pathsum/types.hpp"

namespace pathsum {

/// Brute-force exponential: scaling and squaring around a truncated Taylor
/// series. Elimination- and series-based on purpose; nothing here touches
/// the path-sum machinery, so it can serve as an independent oracle.
inline MatF ref_exp(const MatF& m, std::complex<double> t = 1.0) {
    MatF a = t * m;
    double norm = 0.0;  // infinity norm
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        double row = 0.0;
        for (Eigen::Index j = 0; j < a.cols(); ++j) row += std::abs(a(i, j));
        norm = std::max(norm, row);
    }
    int squarings = 0;
    while (norm > 0.5) {
        norm /= 2.0;
        ++squarings;
    }
    a /= std::pow(2.0, squarings);

    MatF sum = MatF::Identity(a.rows(), a.cols());
    MatF term = MatF::Identity(a.rows(), a.cols());
    for (int k = 1; k < 200; ++k) {
        term = MatF(term * a) / static_cast<double>(k);
        sum += term;
        if (max_abs(term) < 1e-18) break;
    }
    for (int i = 0; i < squarings; ++i) sum = MatF(sum * sum);
    return sum;
}

/// Integer matrix power by repeated squaring; negative exponents go
/// through dense_inverse.
template <class S>
Mat<S> ref_power_int(const Mat<S>& m, long k) {
    if (m.rows() != m.cols()) throw NonSquare("ref_power_int: matrix is not square");
    Mat<S> base = k < 0 ? dense_inverse(m) : m;
    unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    Mat<S> acc = Mat<S>::Identity(m.rows(), m.cols());
    while (e > 0) {
        if (e & 1u) acc = Mat<S>(acc * base);
        base = Mat<S>(base * base);
        e >>= 1;
    }
    return acc;
}

/// Named residuals of functional identities (lhs vs rhs), for tests and
/// the acceptance run.
struct IdentityReport {
    struct Entry {
        std::string name;
        double residual;
    };
    std::vector<Entry> entries;

    void add(const std::string& name, const MatF& lhs, const MatF& rhs) {
        entries.push_back({name, max_abs_diff(lhs, rhs)});
    }
    void add_exact(const std::string& name, const MatX& lhs, const MatX& rhs) {
        entries.push_back({name, exact_equal(lhs, rhs) ? 0.0 : max_abs_diff(to_float(lhs), to_float(rhs))});
    }
    double max_residual() const {
        double r = 0.0;
        for (const auto& e : entries) r = std::max(r, e.residual);
        return r;
    }
    bool all_below(double tol) const { return max_residual() <= tol; }
};

}  // namespace pathsum
