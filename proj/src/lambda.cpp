#include "cpic/lambda.hpp"

namespace cpic {

namespace {

void require_genus(const ClusterPicture& pic) {
    if (pic.genus() < 2)
        throw ValidationError("genus < 2: got " + std::to_string(pic.root_count()) +
                              " roots");
}

// d_R coefficient: (|R|-2)|R| for 2g+2 roots, (|R|-1)^2 for 2g+1.
Rational top_depth_coefficient(int nroots) {
    if (nroots % 2 == 0)
        return Rational((nroots - 2) * nroots);
    return Rational((nroots - 1) * (nroots - 1));
}

Rational proper_cluster_sum(const ClusterPicture& pic) {
    Rational acc(0);
    for (NodeId s : pic.proper_clusters()) {
        if (s == pic.top())
            continue;
        const int k = pic.size(s);
        const Rational delta = pic.rel_depth(s);
        if (k % 2 == 0)
            acc += delta * Rational((k - 2) * k);
        else
            acc += delta * Rational((k - 1) * (k - 1));
    }
    return acc;
}

} // namespace

Rational lambda8(const ClusterPicture& pic) {
    require_genus(pic);
    Rational acc = Rational(4 * pic.genus()) * pic.vcf();
    acc += proper_cluster_sum(pic);
    acc += pic.depth(pic.top()) * top_depth_coefficient(pic.root_count());
    return acc;
}

LambdaResult lambda_result(const ClusterPicture& pic) {
    LambdaResult r;
    r.eight_v_lambda = lambda8(pic);
    r.v_lambda = r.eight_v_lambda / Rational(8);
    r.integral = r.v_lambda.is_integer();
    return r;
}

Rational kausz_lambda8(const ClusterPicture& pic) {
    require_genus(pic);
    if (!pic.vcf().is_zero())
        throw ValidationError("reduced lambda formula requires v(c_f) = 0, got " +
                              pic.vcf().str());
    if (!pic.depth(pic.top()).is_zero())
        throw ValidationError("reduced lambda formula requires d_R = 0, got " +
                              pic.depth(pic.top()).str());
    if (pic.root_count() % 2 != 0)
        throw ValidationError("reduced lambda formula requires |R| = 2g+2, got " +
                              std::to_string(pic.root_count()) + " roots");
    return proper_cluster_sum(pic);
}

std::vector<std::string> kausz_applicability(const ClusterPicture& pic) {
    std::vector<std::string> unmet;
    IntegralityReport rep = validate_integrality(pic);
    unmet.insert(unmet.end(), rep.issues.begin(), rep.issues.end());
    if (pic.root_values()) {
        for (const Rational& r : *pic.root_values())
            if (val_p(r, *pic.prime()) < Valuation(Rational(0))) {
                unmet.push_back("root " + r.str() + " is not integral");
                break;
            }
        // distinct residues = children of a depth-0 top
        if (pic.depth(pic.top()).is_zero() &&
            pic.children(pic.top()).size() < 3)
            unmet.push_back("fewer than three distinct root residues");
    }
    return unmet;
}

Rational disc_valuation_from_picture(const ClusterPicture& pic) {
    require_genus(pic);
    const int n = pic.root_count();
    Rational acc = Rational(4 * pic.genus() + 2) * pic.vcf();
    acc += pic.depth(pic.top()) * Rational(n * (n - 1));
    for (NodeId s : pic.proper_clusters()) {
        if (s == pic.top())
            continue;
        const int k = pic.size(s);
        acc += pic.rel_depth(s) * Rational(k * (k - 1));
    }
    return acc;
}

Rational disc_valuation_from_roots(const std::vector<Rational>& roots,
                                   const Rational& leading_coeff, const mpz_class& p) {
    // The discriminant carries a 2^{4g} factor; v(2) = 0 because p is odd,
    // so it never contributes here.
    require_odd_prime(p);
    if (leading_coeff.is_zero())
        throw InputError("leading coefficient must be nonzero");
    const size_t n = roots.size();
    const int g = (static_cast<int>(n) - 1) / 2;
    Rational acc = Rational(4 * g + 2) * val_p(leading_coeff, p).finite();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Rational d = roots[i] - roots[j];
            if (d.is_zero())
                throw InputError("inseparable polynomial: duplicate root " +
                                 roots[i].str());
            acc += Rational(2) * val_p(d, p).finite();
        }
    return acc;
}

Rational hyperdisc_order(const ClusterPicture& pic) {
    const int g = pic.genus();
    return Rational(g) * disc_valuation_from_picture(pic) -
           Rational(8 * g + 4) * (lambda8(pic) / Rational(8));
}

DiscResult disc_result(const ClusterPicture& pic) {
    DiscResult r;
    r.v_disc = disc_valuation_from_picture(pic);
    r.hyperdisc_order = hyperdisc_order(pic);
    return r;
}

} // namespace cpic
