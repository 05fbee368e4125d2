#pragma once

#include <string>
#include <string_view>

#include "cpic/cluster.hpp"

namespace cpic {

// One cluster-picture manipulation, each paired with a predicted change of
// lambda8 so transforms can be consistency-checked against recomputation.
struct TransformSpec {
    enum class Kind { Deepen, AddRoot, Redistribute, ScaleLeading, Rescale, Shift };

    Kind kind = Kind::Deepen;
    long long t = 0;   // deepen / redistribute / rescale
    long long s = 0;   // rescale
    long long m = 0;   // scale-leading
    Rational z;        // shift
    std::string path;  // redistribute target, a child of the top cluster

    // "deepen:t" | "add-root" | "redistribute:<path>:t" | "scale-leading:m"
    // | "rescale:t,s" | "shift:z"
    static TransformSpec parse(std::string_view text);
    std::string str() const;
};

// Every absolute depth += t; relative depths and vcf unchanged.
ClusterPicture deepen(const ClusterPicture& pic, long long t);

// One new singleton attached to the top; requires |R| odd and d_R integral.
ClusterPicture add_root(const ClusterPicture& pic);

// Depth moved between a proper child S of the top and its complement:
// S's subtree -= t, the complement's subtree += t (materialised as a new
// cluster when absent). A relative depth hitting 0 dissolves the cluster;
// going negative is an error. Requires |R| even.
ClusterPicture redistribute(const ClusterPicture& pic, NodeId child_of_top, long long t);

// vcf += 2m; models scaling the leading coefficient by the square pi^{2m}.
ClusterPicture scale_leading(const ClusterPicture& pic, long long m);

// Substitution x = pi^t x', y = pi^s y' on a root-backed picture:
// roots /= p^t, depths -= t, vcf += t|R| - 2s.
ClusterPicture rescale_equation(const ClusterPicture& pic, long long t, long long s);

// x -> x - z on a root-backed picture: roots += z, everything else identical.
ClusterPicture shift(const ClusterPicture& pic, const Rational& z);

ClusterPicture apply_transform(const ClusterPicture& pic, const TransformSpec& spec);

// Exact predicted lambda8(transformed) - lambda8(pic); zero for shift.
Rational predicted_lambda8_delta(const ClusterPicture& pic, const TransformSpec& spec);

} // namespace cpic
