#pragma once

#include <vector>

#include "cpic/cluster.hpp"

namespace cpic {

struct LambdaResult {
    Rational eight_v_lambda;
    Rational v_lambda;
    bool integral = false;  // v(lambda) is an integer
};

// 8*v(lambda) in closed form:
//   4g*v(c_f)
//   + sum over even proper S != R of delta_S (|S|-2)|S|
//   + sum over odd  proper S != R of delta_S (|S|-1)^2
//   + d_R * ((|R|-2)|R| if |R| = 2g+2, else (|R|-1)^2).
// Requires genus >= 2.
Rational lambda8(const ClusterPicture& pic);

LambdaResult lambda_result(const ClusterPicture& pic);

// The reduced form (no v(c_f) or d_R terms), valid when v(c_f) = 0,
// d_R = 0 and |R| = 2g+2; those three are enforced. Further applicability
// conditions are reported by kausz_applicability, not enforced.
Rational kausz_lambda8(const ClusterPicture& pic);

// Unmet conditions for the reduced formula to carry its full meaning:
// integrality of the picture and, when roots are present, root integrality
// and at least three distinct residues.
std::vector<std::string> kausz_applicability(const ClusterPicture& pic);

struct DiscResult {
    Rational v_disc;
    Rational hyperdisc_order;
};

// v(discriminant) from the picture:
//   (4g+2)*v(c_f) + d_R|R|(|R|-1) + sum over proper S != R of delta_S |S|(|S|-1).
Rational disc_valuation_from_picture(const ClusterPicture& pic);

// Direct form (4g+2)*v(c_f) + 2 * sum_{i<j} v(r_i - r_j); oracle for the above.
Rational disc_valuation_from_roots(const std::vector<Rational>& roots,
                                   const Rational& leading_coeff, const mpz_class& p);

// ord(Lambda) = g*v(disc) - (8g+4)*v(lambda); an equation invariant.
Rational hyperdisc_order(const ClusterPicture& pic);

DiscResult disc_result(const ClusterPicture& pic);

} // namespace cpic
