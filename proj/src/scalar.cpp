#include "pathsum/scalar.hpp"
#include "pathsum/types.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace pathsum {

namespace {

std::string rat_str(const mpq_class& q) {
    std::string s = q.get_num().get_str();
    if (q.get_den() != 1) s += "/" + q.get_den().get_str();
    return s;
}

}  // namespace

std::string GaussianRational::str() const {
    if (sgn(im_) == 0) return rat_str(re_);
    std::string s = rat_str(re_);
    if (sgn(im_) > 0) {
        s += "+" + rat_str(im_) + "i";
    } else {
        s += "-" + rat_str(mpq_class(-im_)) + "i";
    }
    return s;
}

mpq_class rationalize(double x, double tol) {
    if (!std::isfinite(x)) throw Error("cannot rationalize a non-finite value");
    if (x == 0.0) return mpq_class(0);

    // Continued-fraction convergents p/q of |x|; the first one within tol wins.
    bool neg = x < 0.0;
    double target = std::fabs(x);
    double a = target;
    mpz_class p0(0), q0(1), p1(1), q1(0);
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(a);
        if (fl > 9.0e18) break;
        mpz_class ai(static_cast<long>(fl));
        mpz_class p2 = ai * p1 + p0;
        mpz_class q2 = ai * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        mpq_class cand(p1, q1);
        cand.canonicalize();
        if (std::fabs(cand.get_d() - target) <= tol) {
            if (neg) cand = -cand;
            return cand;
        }
        double frac = a - fl;
        if (frac < std::numeric_limits<double>::epsilon() * std::fabs(a)) break;
        a = 1.0 / frac;
    }
    // Fallback: exact binary representation of the double.
    mpq_class exact(x);
    return exact;
}

GaussianRational rationalize(const std::complex<double>& z, double tol) {
    return GaussianRational(rationalize(z.real(), tol), rationalize(z.imag(), tol));
}

MatX rationalize(const MatF& a, double tol) {
    MatX r(a.rows(), a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) r(i, j) = rationalize(a(i, j), tol);
    return r;
}

}  // namespace pathsum
