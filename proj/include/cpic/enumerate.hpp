#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cpic/cluster.hpp"

namespace cpic {

struct EnumSpec {
    int max_roots = 8;
    std::vector<long long> rel_depths = {1, 2, 3};  // positive integers
    std::vector<long long> top_depths = {0, 1};     // non-negative integers
    std::vector<long long> vcfs = {0, 2};           // non-negative even integers
    std::optional<uint64_t> seed;
    std::optional<size_t> sample;  // explicit sample size
    size_t cap = 100000;           // exhaustive below, uniform sample of cap above

    void validate() const;
};

struct CheckFailure {
    std::string picture;   // canonical text
    std::string identity;  // name of the failed identity
    std::string expected;
    std::string got;
};

struct CheckReport {
    size_t pictures_checked = 0;
    std::vector<CheckFailure> failures;

    bool ok() const { return failures.empty(); }
};

// Streams every decorated picture over the grid: all tree shapes with
// 5..max_roots leaves (internal nodes have >= 2 items), all combinations of
// relative depths, top depths and vcf values. Duplicate-free under canonical
// printing. A uniform sample is drawn when the grid exceeds the cap or an
// explicit sample size is set.
void enumerate_pictures(const EnumSpec& spec,
                        const std::function<void(const ClusterPicture&)>& fn);

// The (canonical text, vcf) stream behind enumerate_pictures.
std::vector<std::pair<std::string, long long>> enumerate_texts(const EnumSpec& spec);

// All cross-module identities on one picture and its applicable transforms;
// exact comparisons, failures returned as data.
std::vector<CheckFailure> cross_validate(const ClusterPicture& pic, uint64_t seed);

CheckReport run_check(const EnumSpec& spec, int jobs);

} // namespace cpic
