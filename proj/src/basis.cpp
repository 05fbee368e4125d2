#include "cpic/basis.hpp"

#include <algorithm>
#include <random>

namespace cpic {

std::string Differential::render() const {
    std::string s;
    if (exponent != Rational(0)) {
        if (exponent == Rational(1))
            s = "p";
        else if (exponent.is_integer() && exponent.sign() > 0)
            s = "p^" + exponent.str();
        else
            s = "p^(" + exponent.str() + ")";
        s += " * ";
    }
    for (const Centre& c : factors)
        s += c.factor() + " * ";
    return s + "dx/2y";
}

Rational BasisResult::sum_e() const {
    Rational acc(0);
    for (const BasisStep& st : steps)
        acc += st.exponent;
    return acc;
}

BasisResult basis_sequence(const ClusterPicture& pic) {
    return basis_sequence(pic, TieBreak::Canonical, 0);
}

BasisResult basis_sequence(const ClusterPicture& pic, TieBreak tie, uint64_t seed) {
    const int g = pic.genus();
    if (g < 2)
        throw ValidationError("genus < 2: got " + std::to_string(pic.root_count()) +
                              " roots");
    for (NodeId s : pic.proper_clusters())
        if (pic.depth(s).sign() < 0)
            throw ValidationError("non-integral equation: depth of " +
                                  pic.path_label(s) + " is negative");
    if (pic.vcf().sign() < 0)
        throw ValidationError("non-integral equation: v(c_f) is negative");

    BasisResult res;
    IntegralityReport rep = validate_integrality(pic);
    res.warnings = rep.issues;

    const std::vector<NodeId> clusters = pic.proper_clusters();
    const size_t m = clusters.size();
    std::vector<Rational> base(m);  // nu_S/2 - d_S
    for (size_t k = 0; k < m; ++k)
        base[k] = pic.nu(clusters[k]) / Rational(2) - pic.depth(clusters[k]);
    std::vector<Rational> acc(m, Rational(0));  // sum_{j<i} d_{s_j ^ S}

    std::mt19937_64 rng(seed);
    for (int i = 0; i < g; ++i) {
        BasisTraceStep tr;
        std::vector<Rational> value(m);
        size_t best = 0;
        for (size_t k = 0; k < m; ++k) {
            value[k] = base[k] - acc[k];
            tr.values.emplace_back(clusters[k], value[k]);
            if (value[k] > value[best])
                best = k;
        }
        std::vector<size_t> maximisers;
        for (size_t k = 0; k < m; ++k)
            if (value[k] == value[best])
                maximisers.push_back(k);
        // keep only maximisers not properly contained in another maximiser
        std::vector<size_t> outer;
        for (size_t k : maximisers) {
            bool nested = false;
            for (size_t o : maximisers)
                if (o != k && pic.contains(clusters[o], clusters[k]))
                    nested = true;
            if (!nested)
                outer.push_back(k);
        }
        size_t chosen;
        if (tie == TieBreak::Randomized && outer.size() > 1) {
            chosen = outer[std::uniform_int_distribution<size_t>(0, outer.size() - 1)(rng)];
        } else {
            chosen = outer.front();
            for (size_t k : outer) {
                const int sk = pic.size(clusters[k]);
                const int sc = pic.size(clusters[chosen]);
                if (sk > sc ||
                    (sk == sc && pic.min_leaf_index(clusters[k]) <
                                     pic.min_leaf_index(clusters[chosen])))
                    chosen = k;
            }
        }

        BasisStep step;
        step.index = i;
        step.cluster = clusters[chosen];
        step.exponent = value[chosen];
        step.centre = pic.centre(clusters[chosen]);
        if (!step.exponent.is_integer())
            res.warnings.push_back("e_" + std::to_string(i) + " = " +
                                   step.exponent.str() +
                                   " is not an integer (non-semistable or "
                                   "non-integral equation)");
        tr.chosen = clusters[chosen];
        res.trace.push_back(std::move(tr));
        res.steps.push_back(std::move(step));

        for (size_t k = 0; k < m; ++k)
            acc[k] += pic.depth(pic.meet(clusters[chosen], clusters[k]));
    }

    for (int i = 0; i < g; ++i) {
        Differential d;
        d.exponent = res.steps[static_cast<size_t>(i)].exponent;
        for (int j = 0; j < i; ++j)
            d.factors.push_back(res.steps[static_cast<size_t>(j)].centre);
        res.differentials.push_back(std::move(d));
    }
    return res;
}

std::map<NodeId, int> gamma_counts(const ClusterPicture& pic, const BasisResult& basis) {
    std::map<NodeId, int> counts;
    for (NodeId s : pic.proper_clusters())
        counts[s] = 0;
    for (const BasisStep& st : basis.steps)
        for (NodeId cur = st.cluster; cur != -1; cur = pic.parent(cur))
            ++counts[cur];
    return counts;
}

Rational vanishing_bound(const ClusterPicture& pic, NodeId principal, int step,
                         const BasisResult& basis) {
    if (!pic.is_principal(principal))
        throw ValidationError("vanishing bound requires a principal cluster");
    if (step < 0 || step >= static_cast<int>(basis.steps.size()))
        throw ValidationError("step index out of range");
    Rational v = pic.nu(principal) / Rational(2) - pic.depth(principal);
    for (int j = 0; j < step; ++j)
        v -= pic.depth(pic.meet(basis.steps[static_cast<size_t>(j)].cluster, principal));
    if (basis.steps[static_cast<size_t>(step)].exponent < v)
        throw ValidationError("maximality violated at step " + std::to_string(step));
    return v;
}

} // namespace cpic
