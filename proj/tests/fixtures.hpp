#pragma once

#include <string>
#include <vector>

#include "cpic/cluster.hpp"
#include "cpic/pexpr.hpp"

namespace cpic::testing {

// Genus-5 curve over Q_p with nested clusters of depths 0/4/6/8.
inline std::vector<Rational> golden_roots(const mpz_class& p) {
    std::vector<Rational> roots;
    for (const char* e : {"0", "p^6", "2*p^6", "p^4", "2*p^4", "3*p^4", "1", "1+p^8",
                          "1+2*p^8", "1+3*p^8", "2", "3"})
        roots.push_back(PExpr::parse(e).eval(p));
    return roots;
}

inline ClusterPicture golden_picture() {
    return build_picture_from_roots(golden_roots(5), Rational(1), 5);
}

inline std::string golden_json() {
    return R"({"p": 5, "leading_coeff": "1",
               "roots": ["0", "p^6", "2*p^6", "p^4", "2*p^4", "3*p^4",
                         "1", "1+p^8", "1+2*p^8", "1+3*p^8", "2", "3"]})";
}

// Unique proper cluster with the given size and depth.
inline NodeId find_cluster(const ClusterPicture& pic, int size, const Rational& depth) {
    NodeId found = -1;
    for (NodeId s : pic.proper_clusters())
        if (pic.size(s) == size && pic.depth(s) == depth) {
            if (found != -1)
                throw std::runtime_error("cluster (size, depth) not unique");
            found = s;
        }
    if (found == -1)
        throw std::runtime_error("no cluster with the requested size and depth");
    return found;
}

// Hand-written notation corpus, rational and multi-digit depths included.
inline const std::vector<std::string>& notation_corpus() {
    static const std::vector<std::string> corpus = {
        "(* * * * *)_0",
        "(* * * * * *)_2",
        "(* * * * * * *)_-1",
        "((* *)_1 * * *)_0",
        "((* * *)_1 * *)_0",
        "((* *)_3/2 * * *)_1",
        "((* *)_1 (* *)_1 * *)_0",
        "((* *)_2 (* * *)_1 * *)_0",
        "(((* *)_1 *)_2 * *)_0",
        "(((* * *)_2 * * *)_4 (* * * *)_8 * *)_0",
        "((* * * *)_1 (* *)_5)_3",
        "((* * * * *)_7/3 * * * *)_1/2",
        "(((* *)_1/2 (* *)_1/2)_1 * * *)_0",
        "((((* *)_1 *)_1 *)_1 *)_0",
        "((* *)_10 * * * * * * * *)_5",
        "((* * *)_2 (* * *)_2)_0",
        "(* (* *)_4 * (* *)_2 *)_1",
        "((* (* *)_1 *)_2 (* *)_3 * *)_0",
        "((* * * * * * * * *)_1 *)_0",
        "((* *)_1 ((* *)_1 *)_2 * * *)_0",
    };
    return corpus;
}

} // namespace cpic::testing
